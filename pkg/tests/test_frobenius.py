"""Tests for tqftools.frobenius."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from tqftools.frobenius import (
    AlgebraError,
    algebra_from_json,
    algebra_to_json,
    center_of_group_algebra,
    check_identities,
    close_group,
    dual_numbers,
    from_structure_constants,
    named_algebra,
    permutation_from_cycles,
    trivial_algebra,
)

F = Fraction


def _all_named():
    return [
        named_algebra("trivial"),
        named_algebra("dual-numbers"),
        named_algebra("center:Z2"),
        named_algebra("center:S3"),
    ]


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def test_trivial_algebra():
    a = trivial_algebra()
    assert a.dim == 1
    assert a.eta == ((F(1),),)
    assert a.euler.coords == (F(1),)
    assert a.unit == (F(1),)


def test_dual_numbers_pairing_matrix():
    a = dual_numbers()
    assert a.eta == ((F(0), F(1)), (F(1), F(0)))
    assert a.unit == (F(1), F(0))
    x = a.basis(1)
    assert a.multiply(x, x).coords == (F(0), F(0))


def test_zero_counit_is_singular():
    mult = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]  # group algebra of Z2
    with pytest.raises(AlgebraError, match="singular"):
        from_structure_constants(2, mult, [0, 0])


def test_non_commutative_reported():
    mult = [[[1, 0], [1, 0]], [[0, 1], [0, 1]]]
    with pytest.raises(AlgebraError, match="commutative"):
        from_structure_constants(2, mult, [1, 0])


def test_non_associative_reported():
    # basis 1, x, y with x^2 = 1, y^2 = 1, xy = 1: (xy)y = y but x(yy) = x
    e0, e1, e2 = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    mult = [
        [e0, e1, e2],
        [e1, e0, e0],
        [e2, e0, e0],
    ]
    with pytest.raises(AlgebraError, match="associative"):
        from_structure_constants(3, mult, [1, 0, 0])


def test_no_unit_reported():
    with pytest.raises(AlgebraError, match="unit"):
        from_structure_constants(1, [[[0]]], [1])


def test_json_round_trip():
    for a in _all_named():
        b = algebra_from_json(algebra_to_json(a))
        assert b.mult == a.mult
        assert b.counit_vector == a.counit_vector


# ---------------------------------------------------------------------------
# group-algebra centers
# ---------------------------------------------------------------------------

def test_center_z2():
    a = named_algebra("center:Z2")
    assert a.dim == 2
    assert a.eta == ((F(1), F(0)), (F(0), F(1)))
    assert a.euler.coords == (F(2), F(0))


def test_center_s3_structure():
    a = named_algebra("center:S3")
    assert a.dim == 3
    z2sq = a.multiply(a.basis(1), a.basis(1))
    assert z2sq.coords == (F(3), F(0), F(3))
    z3sq = a.multiply(a.basis(2), a.basis(2))
    assert z3sq.coords == (F(2), F(0), F(1))
    assert a.eta == ((F(1), F(0), F(0)),
                     (F(0), F(3), F(0)),
                     (F(0), F(0), F(2)))
    assert a.euler.coords == (F(3), F(0), F(3, 2))


def test_center_trivial_group():
    a = center_of_group_algebra([(0,)])
    assert a.dim == 1
    assert a.eta == ((F(1),),)


def test_center_from_cycles_matches_builtin():
    a = named_algebra("center:S3")
    b = named_algebra("center:(1 2);(1 2 3)")
    assert a.mult == b.mult and a.counit_vector == b.counit_vector


def test_center_cap():
    with pytest.raises(AlgebraError, match="cap"):
        center_of_group_algebra([permutation_from_cycles("(1 2 3 4 5 6 7 8)"),
                                 permutation_from_cycles("(1 2)", 8)], cap=100)


def test_unknown_key():
    with pytest.raises(AlgebraError):
        named_algebra("nope")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def test_unit_law_random():
    rng = random.Random(5)
    for a in _all_named():
        one = a.identity()
        for _ in range(10):
            v = a.element([rng.randint(-4, 4) for _ in range(a.dim)])
            assert a.multiply(one, v).coords == v.coords


def test_s3_pairing_values():
    a = named_algebra("center:S3")
    assert a.pairing(a.basis(1), a.basis(1)) == 3
    assert a.pairing(a.basis(1), a.basis(2)) == 0


def test_pairing_is_counit_of_product():
    rng = random.Random(9)
    for a in _all_named():
        for _ in range(10):
            u = a.element([rng.randint(-3, 3) for _ in range(a.dim)])
            v = a.element([rng.randint(-3, 3) for _ in range(a.dim)])
            assert a.pairing(u, v) == a.counit(a.multiply(u, v))


def test_comultiply_values():
    t = trivial_algebra()
    assert t.comultiply(t.identity()).matrix == ((F(1),),)

    z2 = named_algebra("center:Z2")
    assert z2.comultiply(z2.identity()).matrix == ((F(1), F(0)), (F(0), F(1)))

    d = dual_numbers()
    assert d.comultiply(d.identity()).matrix == ((F(0), F(1)), (F(1), F(0)))


def test_euler_values():
    assert trivial_algebra().euler.coords == (F(1),)
    assert named_algebra("center:Z2").euler.coords == (F(2), F(0))
    assert named_algebra("center:S3").euler.coords == (F(3), F(0), F(3, 2))
    assert dual_numbers().euler.coords == (F(0), F(2))


def test_omega_closed_small_cases():
    z2 = named_algebra("center:Z2")
    assert z2.omega_closed(1, [z2.identity()]) == 2

    d = dual_numbers()
    assert d.omega_closed(2, [d.identity()]) == 0

    s3 = named_algebra("center:S3")
    rng = random.Random(21)
    for _ in range(20):
        v1 = s3.element([rng.randint(-4, 4) for _ in range(3)])
        v2 = s3.element([rng.randint(-4, 4) for _ in range(3)])
        assert s3.omega_closed(0, [s3.identity(), v1, v2]) == s3.pairing(v1, v2)
        assert s3.omega_closed(0, [v1]) == s3.counit(v1)


def test_z_invariant_values():
    assert all(trivial_algebra().z_invariant(g) == 1 for g in range(6))
    z2 = named_algebra("center:Z2")
    assert [z2.z_invariant(g) for g in range(6)] == [2 ** g for g in range(6)]
    d = dual_numbers()
    assert d.z_invariant(1) == 2
    assert d.z_invariant(2) == 0 and d.z_invariant(3) == 0


def test_z_invariant_s3_commuting_pairs_oracle():
    # Independent oracle: the genus-one value equals
    # #{(a, b) : ab = ba} / |G| = number of conjugacy classes.
    group = close_group([(1, 0, 2), (1, 2, 0)])
    assert len(group) == 6
    commuting = sum(
        1 for a in group for b in group
        if tuple(a[b[i]] for i in range(3)) == tuple(b[a[i]] for i in range(3))
    )
    assert named_algebra("center:S3").z_invariant(1) == F(commuting, len(group)) == 3


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

def test_identity_suite_all_algebras():
    for a in _all_named():
        assert check_identities(a, trials=100, seed=7) == []


def test_counit_symmetry_exhaustive():
    # eps(e_i1 ... e_in) invariant under permutations, dims <= 3
    for a in _all_named():
        for n in (3, 4):
            for idx in itertools.product(range(a.dim), repeat=n):
                base = a.identity()
                for i in idx:
                    base = a.multiply(base, a.basis(i))
                val = a.counit(base)
                for p in itertools.permutations(idx):
                    acc = a.identity()
                    for i in p:
                        acc = a.multiply(acc, a.basis(i))
                    assert a.counit(acc) == val


def test_element_algebra_mismatch():
    a = trivial_algebra()
    b = trivial_algebra()
    with pytest.raises(AlgebraError, match="different algebra"):
        a.multiply(a.identity(), b.identity())
