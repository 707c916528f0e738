"""Simple and orbifold Hurwitz numbers, computed by cutting one simple
branch point at a time.

``hurwitz_H(r, g, mu)`` is the automorphism-weighted count of degree-d
covers of the sphere by a connected genus-g surface whose branching is:
one point with every cycle of length r, one point with labeled profile
(mu_1, ..., mu_n), and s = 2g - 2 + d/r + n further simple branch
points.  Equivalently it counts, up to a d!*s! normalization, the ways
to write a permutation with cycle type mu as a product of s
transpositions and a fixed-point-free power-of-r permutation generating
a transitive subgroup.  ``calH`` is the same number rescaled by
mu_1*...*mu_n, which is the quantity the recursion naturally produces.

The recursion removes one transposition: s * calH equals a sum of
"join" terms (two labeled parts merge into one) and "cut" terms (one
part splits in two, either lowering the genus or disconnecting the
cover into an ordered pair of smaller ones).  The base case is the
degree-r cover of the sphere by itself, with value 1.

Three closed-form cross-checks live alongside the recursion: the
one-part and two-part genus-0 formulas (``jpt_01``/``jpt_02``), Cayley's
tree count reached through its own recursion (``tree_count``), and a
direct symmetric-group enumeration (``factorization_count``).
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class HurwitzError(ValueError):
    """Raised when an enumeration request exceeds the desk-scale caps."""


# ----------------------------------------------------------------------
# profiles
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Profile:
    """Branching data (r, g, mu) with its derived quantities.

    >>> p = Profile(2, 0, (3, 1))
    >>> p.d, p.s, p.admissible
    (4, Fraction(2, 1), True)
    >>> Profile(3, 0, (2,)).admissible
    False
    """

    r: int
    g: int
    mu: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        object.__setattr__(self, "mu", tuple(int(m) for m in self.mu))

    @property
    def d(self) -> int:
        return sum(self.mu)

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def s(self) -> Fraction:
        """Simple branch point count 2g - 2 + d/r + n (integral iff r | d)."""
        return Fraction(2 * self.g - 2) + Fraction(self.d, self.r) + self.n

    @property
    def admissible(self) -> bool:
        return (self.g >= 0 and self.n >= 1 and min(self.mu) >= 1
                and self.d % self.r == 0 and self.s >= 0)


def partitions(d: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing positive tuples summing to d.

    >>> list(partitions(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    return rec(d, d)


# ----------------------------------------------------------------------
# the recursion
# ----------------------------------------------------------------------

class HurwitzTable:
    """Memoized values of calH keyed by (r, g, sorted mu).

    Sorting the key is sound because the value is symmetric in mu; the
    test suite checks that against an order-preserving rerun of the
    recursion rather than assuming it.
    """

    def __init__(self):
        self._memo: dict[tuple[int, int, tuple[int, ...]], Fraction] = {}

    def __len__(self) -> int:
        return len(self._memo)

    def value(self, r: int, g: int, mu: Sequence[int]) -> Fraction:
        p = Profile(r, g, tuple(mu))
        if not p.admissible:
            return Fraction(0)
        s = int(p.s)
        if s == 0:
            # forces g=0 and mu=(r,): the degree-r cover of the sphere
            # by itself, branched over two points
            return Fraction(1)
        key = (r, g, tuple(sorted(p.mu)))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        mu_s = key[2]
        n = len(mu_s)
        total = Fraction(0)
        # join: parts i and j merge
        for i, j in itertools.combinations(range(n), 2):
            rest = mu_s[:i] + mu_s[i + 1:j] + mu_s[j + 1:]
            total += mu_s[i] * mu_s[j] * self.value(
                r, g, rest + (mu_s[i] + mu_s[j],))
        # cut: part i splits as alpha + beta, losing a handle or
        # disconnecting into an ordered pair of smaller covers
        for i in range(n):
            mi = mu_s[i]
            rest = mu_s[:i] + mu_s[i + 1:]
            for alpha in range(1, mi):
                beta = mi - alpha
                piece = self.value(r, g - 1, rest + (alpha, beta))
                for g1 in range(g + 1):
                    for mask in range(1 << len(rest)):
                        left = tuple(m for k, m in enumerate(rest)
                                     if mask >> k & 1)
                        right = tuple(m for k, m in enumerate(rest)
                                      if not mask >> k & 1)
                        piece += (self.value(r, g1, (alpha,) + left)
                                  * self.value(r, g - g1, (beta,) + right))
                total += Fraction(mi, 2) * piece
        result = total / s
        self._memo[key] = result
        return result


_TABLE = HurwitzTable()


def calH(r: int, g: int, mu: Sequence[int]) -> Fraction:
    """The mu-rescaled orbifold Hurwitz number (see the module notes).

    Inadmissible input (negative genus, a nonpositive part, or degree
    not divisible by r) gives 0.

    >>> calH(2, 0, [3, 1])
    Fraction(9, 2)
    >>> [calH(1, 0, [d]) for d in range(1, 5)]
    [Fraction(1, 1), Fraction(1, 1), Fraction(3, 2), Fraction(8, 3)]
    >>> calH(3, 0, [2])
    Fraction(0, 1)
    """
    return _TABLE.value(r, g, mu)


def hurwitz_H(r: int, g: int, mu: Sequence[int]) -> Fraction:
    """The Hurwitz number itself: calH divided by the product of parts.

    >>> hurwitz_H(2, 0, [3, 1])
    Fraction(3, 2)
    >>> hurwitz_H(2, 0, [2])
    Fraction(1, 2)
    """
    scale = math.prod(int(m) for m in mu)
    if scale < 1:
        return Fraction(0)
    return calH(r, g, mu) / scale


# ----------------------------------------------------------------------
# genus-0 closed forms
# ----------------------------------------------------------------------

def jpt_01(r: int, d: int) -> Fraction:
    """One-part genus-0 value d^(d/r - 2) / (d/r)!, or 0 when r does
    not divide d.

    >>> jpt_01(1, 3)
    Fraction(1, 2)
    >>> jpt_01(2, 2)
    Fraction(1, 2)
    """
    if d < 1 or d % r:
        return Fraction(0)
    m = d // r
    return Fraction(d) ** (m - 2) / math.factorial(m)


def jpt_02(r: int, mu1: int, mu2: int) -> Fraction:
    """Two-part genus-0 closed form.

    The prefactor is r to the power <mu1/r> + <mu2/r> (fractional
    parts), which is 0 or 1 whenever r divides mu1 + mu2, divided by
    mu1 + mu2; each part then contributes mu_i^floor(mu_i/r) over
    floor(mu_i/r) factorial.

    >>> jpt_02(2, 3, 1)
    Fraction(3, 2)
    >>> jpt_02(2, 1, 2)
    Fraction(0, 1)
    """
    if mu1 < 1 or mu2 < 1 or (mu1 + mu2) % r:
        return Fraction(0)
    frac_exp = (mu1 % r + mu2 % r) // r
    out = Fraction(r) ** frac_exp / (mu1 + mu2)
    for m in (mu1, mu2):
        out *= Fraction(m) ** (m // r) / math.factorial(m // r)
    return out


# ----------------------------------------------------------------------
# tree counts
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def tree_count(d: int) -> int:
    """Labeled trees on d vertices, via the splitting recursion
    (d-1) T_d = (1/2) * sum over alpha+beta=d of
    alpha*beta*C(d,alpha)*T_alpha*T_beta, from T_1 = 1.  Cayley's
    closed form d^(d-2) is asserted against this in the tests, not
    used here.

    >>> [tree_count(d) for d in range(1, 7)]
    [1, 1, 3, 16, 125, 1296]
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d == 1:
        return 1
    total = sum(a * b * math.comb(d, a) * tree_count(a) * tree_count(b)
                for a in range(1, d) for b in (d - a,))
    value = Fraction(total, 2 * (d - 1))
    if value.denominator != 1:
        raise ArithmeticError("tree recursion produced a non-integer")
    return int(value)


# ----------------------------------------------------------------------
# symmetric-group oracle
# ----------------------------------------------------------------------

_MAX_ORACLE_D = 8
_MAX_ORACLE_S = 5


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def _transitive_type_counts(r: int, d: int, s: int) -> dict:
    """For the fixed base permutation with d/r cycles of length r:
    the number of s-tuples of transpositions whose product with it has
    each cycle type, restricted to tuples generating (together with the
    base) a transitive subgroup of S_d."""
    m = d // r
    sigma0 = [0] * d
    for block in range(m):
        for k in range(r):
            sigma0[block * r + k] = block * r + (k + 1) % r
    pairs = list(itertools.combinations(range(d), 2))
    counts: dict[tuple[int, ...], int] = {}
    block_of = [k // r for k in range(d)]
    for taus in itertools.product(pairs, repeat=s):
        # product tau_s ... tau_1 sigma0, applied left to right on values
        perm = list(sigma0)
        for a, b in taus:
            for k in range(d):
                if perm[k] == a:
                    perm[k] = b
                elif perm[k] == b:
                    perm[k] = a
        # transitive iff the base blocks get connected by the taus
        parent = list(range(m))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        components = m
        for a, b in taus:
            ra, rb = find(block_of[a]), find(block_of[b])
            if ra != rb:
                parent[ra] = rb
                components -= 1
        if components != 1:
            continue
        t = _cycle_type(perm)
        counts[t] = counts.get(t, 0) + 1
    return counts


def factorization_count(r: int, g: int, mu: Sequence[int]) -> Fraction:
    """Hurwitz number by direct enumeration in the symmetric group.

    Counts tuples (sigma_0, tau_1, ..., tau_s, labeling) where sigma_0
    has every cycle of length r, each tau is a transposition, the
    product tau_s*...*tau_1*sigma_0 has cycle type mu together with a
    length-matching assignment of its cycles to the labels 1..n, and
    the whole tuple acts transitively; the result is that count over
    d! * s!.  Must equal hurwitz_H — that agreement is the point.

    Only one sigma_0 is enumerated: conjugation moves any other choice
    onto it without changing anything counted, so the total is the
    fixed-sigma_0 count times the size of the conjugacy class,
    d! / (r^(d/r) * (d/r)!).

    >>> factorization_count(2, 0, [2])
    Fraction(1, 2)
    >>> factorization_count(2, 0, [3, 1])
    Fraction(3, 2)
    """
    p = Profile(r, g, tuple(mu))
    if not p.admissible:
        return Fraction(0)
    d, s = p.d, int(p.s)
    if d > _MAX_ORACLE_D or s > _MAX_ORACLE_S:
        raise HurwitzError(
            f"oracle capped at d <= {_MAX_ORACLE_D}, s <= {_MAX_ORACLE_S}")
    counts = _transitive_type_counts(r, d, s)
    fixed = counts.get(tuple(sorted(p.mu, reverse=True)), 0)
    labelings = math.prod(
        math.factorial(k)
        for k in (list(p.mu).count(length) for length in set(p.mu)))
    m = d // r
    class_size = math.factorial(d) // (r ** m * math.factorial(m))
    n_total = class_size * fixed * labelings
    return Fraction(n_total, math.factorial(d) * math.factorial(s))


# ----------------------------------------------------------------------
# tables
# ----------------------------------------------------------------------

def hurwitz_rows(r: int, g_values: Sequence[int], d_max: int) -> list[dict]:
    """All admissible profiles with the given genera and total degree
    at most d_max, each as a dict of exact values (for reports)."""
    rows = []
    for g in g_values:
        for d in range(r, d_max + 1, r):
            for mu in partitions(d):
                p = Profile(r, g, mu)
                if not p.admissible:
                    continue
                rows.append({
                    "r": r, "g": g, "mu": mu, "d": d, "s": int(p.s),
                    "calH": calH(r, g, mu), "H": hurwitz_H(r, g, mu),
                })
    return rows
