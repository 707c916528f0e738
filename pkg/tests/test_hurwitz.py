"""Hurwitz numbers: pinned values, the oracle triangle, and the
symmetry that justifies the sorted memo key."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from tqftools.hurwitz import (
    HurwitzError,
    HurwitzTable,
    Profile,
    calH,
    factorization_count,
    hurwitz_H,
    hurwitz_rows,
    jpt_01,
    jpt_02,
    partitions,
    tree_count,
)


# ----------------------------------------------------------------------
# pinned values
# ----------------------------------------------------------------------

def test_two_orbifold_two_parts():
    assert calH(2, 0, [3, 1]) == Fraction(9, 2)
    assert hurwitz_H(2, 0, [3, 1]) == Fraction(3, 2)


def test_simple_one_part_series():
    expected = [Fraction(1), Fraction(1), Fraction(3, 2), Fraction(8, 3),
                Fraction(125, 24), Fraction(54, 5)]
    assert [calH(1, 0, [d]) for d in range(1, 7)] == expected


def test_base_cases():
    for r in (1, 2, 3, 5):
        assert calH(r, 0, [r]) == 1
        assert hurwitz_H(r, 0, [r]) == Fraction(1, r)
    assert hurwitz_H(1, 0, [1]) == 1


def test_support_vanishing():
    assert calH(3, 0, [2]) == 0
    assert calH(2, 1, [3]) == 0
    assert calH(1, -1, [2]) == 0
    assert calH(2, 0, [0, 4]) == 0
    assert calH(2, 0, []) == 0


def test_profile_arithmetic():
    p = Profile(2, 1, (4, 2))
    assert (p.d, p.n, p.s) == (6, 2, Fraction(5))
    assert p.admissible
    assert not Profile(2, 0, (1,)).admissible     # s = -1/2 < 0
    assert not Profile(4, 0, (2, 4)).admissible   # r does not divide d
    with pytest.raises(ValueError):
        Profile(0, 0, (1,))


def test_partitions():
    assert list(partitions(1)) == [(1,)]
    assert list(partitions(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(list(partitions(6))) == 11
    for mu in partitions(7):
        assert sum(mu) == 7
        assert list(mu) == sorted(mu, reverse=True)


# ----------------------------------------------------------------------
# symmetry (justifies the sorted memo key)
# ----------------------------------------------------------------------

def ordered_calH(r, g, mu, memo):
    # same recursion as the library, but sub-profiles keep their given
    # order and the memo key is the ordered tuple: agreement across all
    # orderings is exactly the symmetry claim
    mu = tuple(mu)
    if g < 0 or not mu or min(mu) < 1 or sum(mu) % r:
        return Fraction(0)
    s = 2 * g - 2 + sum(mu) // r + len(mu)
    if s < 0:
        return Fraction(0)
    if s == 0:
        return Fraction(1)
    key = (r, g, mu)
    if key in memo:
        return memo[key]
    n = len(mu)
    total = Fraction(0)
    for i, j in itertools.combinations(range(n), 2):
        joined = mu[:i] + (mu[i] + mu[j],) + mu[i + 1:j] + mu[j + 1:]
        total += mu[i] * mu[j] * ordered_calH(r, g, joined, memo)
    for i in range(n):
        mi = mu[i]
        rest = mu[:i] + mu[i + 1:]
        for alpha in range(1, mi):
            beta = mi - alpha
            piece = ordered_calH(r, g - 1, rest + (alpha, beta), memo)
            for g1 in range(g + 1):
                for mask in range(1 << len(rest)):
                    left = tuple(m for k, m in enumerate(rest)
                                 if mask >> k & 1)
                    right = tuple(m for k, m in enumerate(rest)
                                  if not mask >> k & 1)
                    piece += (ordered_calH(r, g1, (alpha,) + left, memo)
                              * ordered_calH(r, g - g1, (beta,) + right, memo))
            total += Fraction(mi, 2) * piece
    memo[key] = total / s
    return memo[key]


def test_symmetric_in_mu():
    memo = {}
    for r in (1, 2):
        for d in range(1, 6):
            for mu in partitions(d):
                for g in range(3):
                    p = Profile(r, g, mu)
                    if not p.admissible or p.s > 4:
                        continue
                    want = calH(r, g, mu)
                    for perm in set(itertools.permutations(mu)):
                        assert ordered_calH(r, g, perm, memo) == want


# ----------------------------------------------------------------------
# specializations of the recursion
# ----------------------------------------------------------------------

def test_one_part_convolution():
    # for a single part the recursion collapses to a self-convolution
    for r in (1, 2, 3):
        for d in range(r, 10 * r + 1, r):
            lhs = (Fraction(d, r) - 1) * calH(r, 0, [d])
            rhs = Fraction(d, 2) * sum(
                calH(r, 0, [a]) * calH(r, 0, [d - a]) for a in range(1, d))
            assert lhs == rhs


def test_two_part_specialization():
    # with two parts the general recursion reduces to one join term
    # plus split terms pairing a one-part factor with a two-part factor
    for r in (1, 2, 3):
        for m1 in range(1, 7):
            for m2 in range(1, 7):
                if (m1 + m2) % r:
                    continue
                lhs = Fraction(m1 + m2, r) * calH(r, 0, [m1, m2])
                rhs = m1 * m2 * calH(r, 0, [m1 + m2])
                for mi, other in ((m1, m2), (m2, m1)):
                    rhs += Fraction(mi, 2) * sum(
                        calH(r, 0, [a, other]) * calH(r, 0, [mi - a])
                        + calH(r, 0, [a]) * calH(r, 0, [mi - a, other])
                        for a in range(1, mi))
                assert lhs == rhs


# ----------------------------------------------------------------------
# closed-form oracles
# ----------------------------------------------------------------------

def test_jpt_examples():
    assert jpt_01(1, 3) == Fraction(1, 2)
    assert jpt_01(2, 2) == Fraction(1, 2)
    assert jpt_01(2, 3) == 0
    assert jpt_02(2, 3, 1) == Fraction(3, 2)
    assert jpt_02(2, 1, 2) == 0
    assert jpt_02(1, 1, 1) == Fraction(1, 2)


def test_jpt_triangle():
    for r in (1, 2, 3):
        for d in range(1, 7):
            assert hurwitz_H(r, 0, [d]) == jpt_01(r, d)
        for m1 in range(1, 7):
            for m2 in range(1, 7):
                assert hurwitz_H(r, 0, [m1, m2]) == jpt_02(r, m1, m2)


def test_tree_counts():
    assert [tree_count(d) for d in range(1, 7)] == [1, 1, 3, 16, 125, 1296]
    assert tree_count(7) == 7 ** 5
    for d in range(2, 9):
        assert tree_count(d) == d ** (d - 2)
        assert tree_count(d) == math.factorial(d - 1) * calH(1, 0, [d])
    with pytest.raises(ValueError):
        tree_count(0)


# ----------------------------------------------------------------------
# symmetric-group oracle
# ----------------------------------------------------------------------

def test_factorization_base_cases():
    assert factorization_count(2, 0, [2]) == Fraction(1, 2)
    assert factorization_count(1, 0, [2]) == Fraction(1, 2)
    assert factorization_count(2, 0, [3, 1]) == Fraction(3, 2)
    assert factorization_count(3, 0, [2]) == 0


def test_factorization_matches_recursion():
    for r in (1, 2):
        for d in range(1, 6):
            for mu in partitions(d):
                for g in range(3):
                    p = Profile(r, g, mu)
                    if not p.admissible or p.s > 3:
                        continue
                    assert factorization_count(r, g, mu) == hurwitz_H(r, g, mu)


def test_factorization_cap():
    with pytest.raises(HurwitzError):
        factorization_count(1, 0, [9])
    with pytest.raises(HurwitzError):
        factorization_count(1, 3, [1])


# ----------------------------------------------------------------------
# tables
# ----------------------------------------------------------------------

def test_fresh_table_is_independent():
    table = HurwitzTable()
    assert len(table) == 0
    assert table.value(2, 0, (3, 1)) == Fraction(9, 2)
    assert len(table) > 0


def test_hurwitz_rows():
    rows = hurwitz_rows(2, [0, 1], 4)
    keyed = {(row["g"], row["mu"]): row for row in rows}
    assert keyed[(0, (3, 1))]["calH"] == Fraction(9, 2)
    assert keyed[(0, (3, 1))]["s"] == 2
    for row in rows:
        assert row["d"] % 2 == 0
        assert Profile(row["r"], row["g"], row["mu"]).admissible
