"""Commutative Frobenius algebras over the rationals.

An algebra is given by structure constants ``c[i][j][k]`` (meaning
``e_i e_j = sum_k c[i][j][k] e_k``) together with a counit vector
``eps(e_i)``.  Construction validates commutativity, associativity,
existence of a unit (by exact linear solve), and non-degeneracy of the
pairing ``eta[i][j] = eps(e_i e_j)``; the derived data — unit
coordinates, eta and its inverse, the comultiplication tensors and the
Euler element — are computed once and cached on the instance.

The Euler element is computed both as ``m(delta(1))`` and as
``sum_ab eta^{ab} e_a e_b``; construction asserts the two agree.  The
closed-form surface/graph values live here too:
``omega_closed(g, vs) = eps(v_1 ... v_n e^g)`` and
``z_invariant(g) = eps(e^g)`` where ``e`` is the Euler element.

Group-algebra centers: ``center_of_group_algebra`` builds the basis of
conjugacy-class sums from permutation generators.  The counit takes the
coefficient of the identity element (no 1/|G| factor), which makes
``z_invariant(A, 1)`` the number of conjugacy classes.

Algebra JSON wire format:
``{"dim": r, "mult": [[[c_ijk ...]]], "counit": [...]}`` with rationals
as "p/q" strings.  Named CLI keys: ``trivial``, ``dual-numbers``,
``center:Z2``, ``center:S3``, and ``center:<cycles>`` where the cycle
spec looks like ``(1 2)(3 4);(1 2 3)`` — generators separated by
semicolons, 1-based points.
"""

from __future__ import annotations

import dataclasses
import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .series import ZERO, as_fraction, format_fraction

Perm = tuple[int, ...]

GROUP_CLOSURE_CAP = 5040


class AlgebraError(ValueError):
    """A structure-constant package failed validation."""


# ----------------------------------------------------------------------
# exact linear algebra (small dense systems)
# ----------------------------------------------------------------------

def _solve_unique(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve an (possibly overdetermined) exact linear system.

    Returns the unique solution, or None if the system is inconsistent.
    Raises AlgebraError if the system is consistent but underdetermined.
    """
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    nrows, ncols = len(m), len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            return None  # inconsistent
    if len(pivots) < ncols:
        raise AlgebraError("linear system is underdetermined")
    out = [ZERO] * ncols
    for i, col in enumerate(pivots):
        out[col] = m[i][ncols]
    return out


def _invert_matrix(mat: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Exact matrix inverse, or None when singular."""
    n = len(mat)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


# ----------------------------------------------------------------------
# elements and tensors
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class AlgebraElement:
    """A vector in a fixed algebra basis."""

    algebra: "FrobeniusAlgebra"
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise AlgebraError("coordinate length does not match algebra dimension")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.algebra.require_same(other.algebra)
        return AlgebraElement(self.algebra,
                              tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.algebra.require_same(other.algebra)
        return AlgebraElement(self.algebra,
                              tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        scalar = as_fraction(other)
        return AlgebraElement(self.algebra, tuple(c * scalar for c in self.coords))

    __rmul__ = __mul__

    def __repr__(self):
        return "Element(" + ", ".join(format_fraction(c) for c in self.coords) + ")"


@dataclasses.dataclass(frozen=True)
class TensorElement:
    """An element of A (x) A as a dim-by-dim coefficient matrix."""

    algebra: "FrobeniusAlgebra"
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        d = self.algebra.dim
        if len(self.matrix) != d or any(len(row) != d for row in self.matrix):
            raise AlgebraError("tensor matrix must be dim x dim")


class FrobeniusAlgebra:
    """A validated commutative Frobenius algebra with cached derived data.

    Elements carry a reference to their algebra; operations mixing
    elements of two different instances raise, even when the instances
    are structurally equal.
    """

    def __init__(self, mult, counit):
        dim = len(counit)
        self.dim = dim
        self.mult: tuple[tuple[tuple[Fraction, ...], ...], ...] = tuple(
            tuple(tuple(as_fraction(c) for c in row) for row in plane)
            for plane in mult
        )
        self.counit_vector: tuple[Fraction, ...] = tuple(as_fraction(c) for c in counit)
        if len(self.mult) != dim or any(
            len(plane) != dim or any(len(row) != dim for row in plane)
            for plane in self.mult
        ):
            raise AlgebraError("structure constants must be dim x dim x dim")
        self._validate_ring()
        self.unit = self._solve_unit()
        self.eta = tuple(
            tuple(sum((self.mult[i][j][k] * self.counit_vector[k]
                       for k in range(dim)), ZERO) for j in range(dim))
            for i in range(dim)
        )
        eta_inv = _invert_matrix(self.eta)
        if eta_inv is None:
            raise AlgebraError("pairing matrix is singular")
        self.eta_inv = tuple(tuple(row) for row in eta_inv)
        self._delta_basis = tuple(self._comultiply_basis(t) for t in range(dim))
        self.euler = self._euler_checked()

    # -- construction helpers -----------------------------------------

    def _validate_ring(self) -> None:
        d = self.dim
        for i in range(d):
            for j in range(i, d):
                if self.mult[i][j] != self.mult[j][i]:
                    raise AlgebraError("multiplication is not commutative")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = [sum((self.mult[i][j][t] * self.mult[t][k][s]
                                 for t in range(d)), ZERO) for s in range(d)]
                    right = [sum((self.mult[j][k][t] * self.mult[i][t][s]
                                  for t in range(d)), ZERO) for s in range(d)]
                    if left != right:
                        raise AlgebraError("multiplication is not associative")

    def _solve_unit(self) -> tuple[Fraction, ...]:
        d = self.dim
        rows, rhs = [], []
        for i in range(d):
            for k in range(d):
                rows.append([self.mult[a][i][k] for a in range(d)])
                rhs.append(Fraction(int(i == k)))
        sol = _solve_unique(rows, rhs)
        if sol is None:
            raise AlgebraError("algebra has no unit")
        return tuple(sol)

    def _comultiply_basis(self, t: int) -> tuple[tuple[Fraction, ...], ...]:
        d = self.dim
        # w[i][j] = eps(e_t e_i e_j), the pairing of e_t against e_i e_j
        w = [[sum((self.mult[i][j][k] * self.eta[t][k] for k in range(d)), ZERO)
              for j in range(d)] for i in range(d)]
        out = [[ZERO] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                if not w[i][j]:
                    continue
                for a in range(d):
                    ia = self.eta_inv[i][a]
                    if not ia:
                        continue
                    for b in range(d):
                        jb = self.eta_inv[j][b]
                        if jb:
                            out[a][b] += w[i][j] * ia * jb
        return tuple(tuple(row) for row in out)

    def _euler_checked(self) -> AlgebraElement:
        d = self.dim
        via_eta = [sum((self.eta_inv[a][b] * self.mult[a][b][t]
                        for a in range(d) for b in range(d)), ZERO)
                   for t in range(d)]
        one = self.identity()
        delta_one = self.comultiply(one)
        via_delta = [sum((delta_one.matrix[a][b] * self.mult[a][b][t]
                          for a in range(d) for b in range(d)), ZERO)
                     for t in range(d)]
        if via_eta != via_delta:
            raise AlgebraError("Euler element computed two ways disagrees")
        return AlgebraElement(self, tuple(via_eta))

    # -- basic API -----------------------------------------------------

    def require_same(self, other: "FrobeniusAlgebra") -> None:
        if self is not other:
            raise AlgebraError("elements belong to different algebra instances")

    def element(self, coords: Iterable) -> AlgebraElement:
        return AlgebraElement(self, tuple(as_fraction(c) for c in coords))

    def basis(self, i: int) -> AlgebraElement:
        return self.element([int(i == k) for k in range(self.dim)])

    def identity(self) -> AlgebraElement:
        return AlgebraElement(self, self.unit)

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        self.require_same(u.algebra)
        self.require_same(v.algebra)
        d = self.dim
        out = [ZERO] * d
        for i, ci in enumerate(u.coords):
            if not ci:
                continue
            for j, cj in enumerate(v.coords):
                if not cj:
                    continue
                f = ci * cj
                row = self.mult[i][j]
                for k in range(d):
                    if row[k]:
                        out[k] += f * row[k]
        return AlgebraElement(self, tuple(out))

    def counit(self, v: AlgebraElement) -> Fraction:
        self.require_same(v.algebra)
        return sum((c * e for c, e in zip(v.coords, self.counit_vector)), ZERO)

    def pairing(self, u: AlgebraElement, v: AlgebraElement) -> Fraction:
        return self.counit(self.multiply(u, v))

    def delta_basis(self, t: int) -> tuple[tuple[Fraction, ...], ...]:
        """Coefficient matrix of the comultiplication on basis vector t:
        entry (a, b) is the e_a (x) e_b coordinate."""
        return self._delta_basis[t]

    def comultiply(self, v: AlgebraElement) -> TensorElement:
        self.require_same(v.algebra)
        d = self.dim
        out = [[ZERO] * d for _ in range(d)]
        for t, c in enumerate(v.coords):
            if not c:
                continue
            dt = self._delta_basis[t]
            for a in range(d):
                for b in range(d):
                    if dt[a][b]:
                        out[a][b] += c * dt[a][b]
        return TensorElement(self, tuple(tuple(row) for row in out))

    def euler_element(self) -> AlgebraElement:
        return self.euler

    def euler_power(self, g: int) -> AlgebraElement:
        out = self.identity()
        for _ in range(g):
            out = self.multiply(out, self.euler)
        return out

    def omega_closed(self, g: int, vs: Sequence[AlgebraElement]) -> Fraction:
        """eps(v_1 ... v_n e^g) — the closed-form value for genus g with
        the given per-vertex elements."""
        if g < 0:
            raise AlgebraError("genus must be non-negative")
        if not vs:
            raise AlgebraError("omega_closed needs at least one element")
        acc = self.euler_power(g)
        for v in vs:
            acc = self.multiply(acc, v)
        return self.counit(acc)

    def z_invariant(self, g: int) -> Fraction:
        """eps(e^g): the closed-surface invariant of genus g."""
        if g < 0:
            raise AlgebraError("genus must be non-negative")
        return self.counit(self.euler_power(g))


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def from_structure_constants(dim: int, mult, counit) -> FrobeniusAlgebra:
    """Validate and build an algebra from raw structure constants."""
    if dim != len(counit):
        raise AlgebraError("dim does not match counit length")
    return FrobeniusAlgebra(mult, counit)


def trivial_algebra() -> FrobeniusAlgebra:
    return FrobeniusAlgebra([[[1]]], [1])


def dual_numbers() -> FrobeniusAlgebra:
    """Q[x]/(x^2) with basis {1, x} and counit eps(a + bx) = b."""
    mult = [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ]
    return FrobeniusAlgebra(mult, [0, 1])


def _compose(p: Perm, q: Perm) -> Perm:
    """(p q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def close_group(generators: Sequence[Perm], cap: int = GROUP_CLOSURE_CAP) -> list[Perm]:
    """BFS closure of the generated permutation group (cap guards size)."""
    if not generators:
        raise AlgebraError("need at least one generator")
    k = len(generators[0])
    if any(len(g) != k or sorted(g) != list(range(k)) for g in generators):
        raise AlgebraError("generators must be permutations of the same set")
    identity = tuple(range(k))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = _compose(g, p)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        raise AlgebraError(f"group closure exceeds cap {cap}")
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def center_of_group_algebra(generators: Sequence[Sequence[int]],
                            cap: int = GROUP_CLOSURE_CAP) -> FrobeniusAlgebra:
    """The center of the group algebra of the generated finite group.

    Basis: conjugacy-class sums, ordered by each class's lexicographically
    least permutation (so the identity class always comes first).  The
    counit reads off the coefficient of the identity element.
    """
    gens = [tuple(g) for g in generators]
    group = close_group(gens, cap)
    classes: list[list[Perm]] = []
    placed: set[Perm] = set()
    for p in group:
        if p in placed:
            continue
        orbit = sorted({_compose(_compose(h, p), _inverse(h)) for h in group})
        placed.update(orbit)
        classes.append(orbit)
    classes.sort(key=lambda c: c[0])
    index_of = {p: t for t, cls in enumerate(classes) for p in cls}
    dim = len(classes)
    reps = [cls[0] for cls in classes]
    mult = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, ci in enumerate(classes):
        for j in range(dim):
            # c_ijk = #{(a,b) in C_i x C_j : ab = rep_k}; counting against a
            # fixed representative is enough since the product of class sums
            # is a class function
            for k, rep in enumerate(reps):
                n = 0
                for a in ci:
                    if index_of[_compose(_inverse(a), rep)] == j:
                        n += 1
                mult[i][j][k] = n
    counit = [int(len(cls) == 1 and cls[0] == tuple(range(len(cls[0]))))
              for cls in classes]
    return FrobeniusAlgebra(mult, counit)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def permutation_from_cycles(text: str, size: int | None = None) -> Perm:
    """Parse 1-based cycle notation like "(1 2)(3 4)" into a 0-based tuple.

    >>> permutation_from_cycles("(1 2 3)", 4)
    (1, 2, 0, 3)
    """
    cycles = []
    rest = text.replace(",", " ").strip()
    if _CYCLE_RE.sub("", rest).strip():
        raise AlgebraError(f"cannot parse cycle notation: {text!r}")
    points: list[int] = []
    for body in _CYCLE_RE.findall(rest):
        cyc = [int(tok) for tok in body.split()]
        if any(v < 1 for v in cyc) or len(set(cyc)) != len(cyc):
            raise AlgebraError(f"bad cycle {body!r}")
        cycles.append(cyc)
        points.extend(cyc)
    k = size if size is not None else (max(points) if points else 1)
    out = list(range(k))
    for cyc in cycles:
        for pos, v in enumerate(cyc):
            out[v - 1] = cyc[(pos + 1) % len(cyc)] - 1
    return tuple(out)


def named_algebra(key: str, cap: int = GROUP_CLOSURE_CAP) -> FrobeniusAlgebra:
    """Resolve a CLI algebra key to an algebra instance."""
    if key == "trivial":
        return trivial_algebra()
    if key == "dual-numbers":
        return dual_numbers()
    if key.startswith("center:"):
        spec = key[len("center:"):]
        if spec == "Z2":
            return center_of_group_algebra([(1, 0)], cap)
        if spec == "S3":
            return center_of_group_algebra([(1, 0, 2), (1, 2, 0)], cap)
        gens_text = [part for part in spec.split(";") if part.strip()]
        if not gens_text:
            raise AlgebraError(f"no generators in algebra key {key!r}")
        parsed = [permutation_from_cycles(part) for part in gens_text]
        k = max(len(p) for p in parsed)
        gens = [permutation_from_cycles(part, k) for part in gens_text]
        return center_of_group_algebra(gens, cap)
    raise AlgebraError(f"unknown algebra key {key!r}")


# ----------------------------------------------------------------------
# wire format
# ----------------------------------------------------------------------

def algebra_to_json(a: FrobeniusAlgebra) -> dict:
    return {
        "dim": a.dim,
        "mult": [[[format_fraction(c) for c in row] for row in plane]
                 for plane in a.mult],
        "counit": [format_fraction(c) for c in a.counit_vector],
    }


def algebra_from_json(data: Mapping) -> FrobeniusAlgebra:
    return from_structure_constants(int(data["dim"]), data["mult"], data["counit"])


# ----------------------------------------------------------------------
# identity suite (shared by tests and `verify-all`)
# ----------------------------------------------------------------------

def check_identities(a: FrobeniusAlgebra, trials: int = 100, seed: int = 0) -> list[str]:
    """Run the structural identity suite on random elements.

    Returns a list of violation descriptions (empty means all pass):
    coproduct/product compatibility, the complete-set expansion, full
    symmetry of the counit on basis products, and the genus/splitting
    rules for the closed-form values.
    """
    import random

    rng = random.Random(seed)
    d = a.dim
    problems: list[str] = []

    def rand_elt() -> AlgebraElement:
        return a.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                          for _ in range(d)])

    one = a.identity()

    for trial in range(trials):
        v1, v2 = rand_elt(), rand_elt()

        # delta(v1 v2) = (id (x) m)(delta(v1) (x) v2)
        lhs = a.comultiply(a.multiply(v1, v2))
        dv1 = a.comultiply(v1)
        rhs_rows = [[ZERO] * d for _ in range(d)]
        for x in range(d):
            for y in range(d):
                if not dv1.matrix[x][y]:
                    continue
                prod = a.multiply(a.basis(y), v2)
                for k in range(d):
                    if prod.coords[k]:
                        rhs_rows[x][k] += dv1.matrix[x][y] * prod.coords[k]
        if lhs.matrix != tuple(tuple(r) for r in rhs_rows):
            problems.append(f"coproduct of a product failed on trial {trial}")

        # (lambda(v1) (x) id) delta(v2) = v1 v2
        dv2 = a.comultiply(v2)
        contracted = [ZERO] * d
        for x in range(d):
            lam = a.pairing(v1, a.basis(x))
            if not lam:
                continue
            for y in range(d):
                if dv2.matrix[x][y]:
                    contracted[y] += lam * dv2.matrix[x][y]
        if tuple(contracted) != a.multiply(v1, v2).coords:
            problems.append(f"pairing-contracted coproduct failed on trial {trial}")

        # complete set: v = sum_ab eps(v e_a) eta^{ab} e_b
        recon = [ZERO] * d
        for x in range(d):
            lam = a.pairing(v1, a.basis(x))
            if not lam:
                continue
            for b in range(d):
                if a.eta_inv[x][b]:
                    recon[b] += lam * a.eta_inv[x][b]
        if tuple(recon) != v1.coords:
            problems.append(f"complete-set expansion failed on trial {trial}")

        # genus reduction: sum_ab eta^{ab} omega(g-1; v, e_a, e_b) = omega(g; v)
        g = rng.randint(1, 3)
        total = ZERO
        for x in range(d):
            for y in range(d):
                if a.eta_inv[x][y]:
                    total += a.eta_inv[x][y] * a.omega_closed(
                        g - 1, [v1, a.basis(x), a.basis(y)])
        if total != a.omega_closed(g, [v1]):
            problems.append(f"genus splitting failed on trial {trial}")

        # separating splitting: sum_ab eta^{ab} omega(g1; I, e_a) omega(g2; J, e_b)
        vs = [rand_elt() for _ in range(rng.randint(2, 4))]
        g1 = rng.randint(0, 2)
        g2 = rng.randint(0, 2)
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        total = ZERO
        for x in range(d):
            for y in range(d):
                if a.eta_inv[x][y]:
                    total += a.eta_inv[x][y] * (
                        a.omega_closed(g1, left + [a.basis(x)])
                        * a.omega_closed(g2, right + [a.basis(y)]))
        if total != a.omega_closed(g1 + g2, vs):
            problems.append(f"separating splitting failed on trial {trial}")

        # unit slot drop: omega(g; vs, 1) = omega(g; vs)
        if a.omega_closed(g, vs + [one]) != a.omega_closed(g, vs):
            problems.append(f"unit slot drop failed on trial {trial}")

        # genus-zero pairing: omega(0; 1, v1, v2) = eta(v1, v2)
        if a.omega_closed(0, [one, v1, v2]) != a.pairing(v1, v2):
            problems.append(f"three-point pairing failed on trial {trial}")

    # full symmetry of eps on basis products (triples and quadruples)
    if d <= 3:
        for idx in itertools.product(range(d), repeat=3):
            vals = {a.counit(_product(a, p)) for p in itertools.permutations(idx)}
            if len(vals) != 1:
                problems.append(f"counit symmetry failed on triple {idx}")
        for idx in itertools.product(range(d), repeat=4):
            vals = {a.counit(_product(a, p)) for p in itertools.permutations(idx)}
            if len(vals) != 1:
                problems.append(f"counit symmetry failed on quadruple {idx}")

    return problems


def _product(a: FrobeniusAlgebra, indices: Sequence[int]) -> AlgebraElement:
    out = a.identity()
    for i in indices:
        out = a.multiply(out, a.basis(i))
    return out
