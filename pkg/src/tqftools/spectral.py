"""The r-Lambert curve and the genus-zero free energies of Hurwitz
theory, verified symbolically in exact arithmetic.

The generating function y(x) of the one-part, genus-zero Hurwitz
numbers satisfies x^r = y e^{-ry} (the r-Lambert curve; r = 1 is the
classical Lambert curve of tree enumeration).  :func:`spectral_y`
computes y two independent ways — summing the recursion-computed
numbers, and Lagrange inversion of w = y e^{-ry} in the variable
w = x^r — and insists the results agree, which ties the join-cut
recursion of :mod:`tqftools.hurwitz` to the curve with no shared code
path.

The curve is rational, with global coordinate z: x(z) = z e^{-z^r},
y(z) = z^r.  Pulled back to this chart, the free energies

    F_{g,n}(x_1,...,x_n) = sum H(mu)/(mu_1...mu_n) x_1^{mu_1}...x_n^{mu_n}

collapse to closed forms in genus zero:

    F_{0,1}(x(z))          = z^r/r - z^{2r}/2,
    F_{0,2}(x(z_1),x(z_2)) = log((z_1 - z_2)/(x(z_1) - x(z_2)))
                             - z_1^r - z_2^r.

The first is a sharp termination statement — the composed series is an
infinite sum of positive terms that must cancel to a two-term
polynomial — and the second is checked both against the log form
(through a divided difference, which keeps everything a bona fide power
series) and against the first-order PDE

    (z_1 d/dz_1 + z_2 d/dz_2) F_{0,2} / r
        = (x_1 z_1^r - x_2 z_2^r)/(x_1 - x_2) - z_1^r - z_2^r,

whose right side again hides a divided difference.  Every comparison
is coefficient-exact; a failed check names the first offending
coefficient.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .hurwitz import calH
from .series import (
    Series,
    divided_difference,
    compose_each,
    format_fraction,
    lagrange_invert,
    series_compose,
    series_exp,
    series_log1p,
)

DEFAULT_ORDER = 20
DEFAULT_ORDER_2 = 12
_MAX_ORDER_2 = 14


class MethodMismatchError(AssertionError):
    """The two independent routes to y(x) disagreed (must never fire)."""


# ----------------------------------------------------------------------
# the curve
# ----------------------------------------------------------------------

def x_of_z(r: int, order: int) -> Series:
    """The chart map x(z) = z e^{-z^r} as a truncated series.

    >>> x_of_z(1, 3).items()
    [((1,), Fraction(1, 1)), ((2,), Fraction(-1, 1)), ((3,), Fraction(1, 2))]
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    z = Series.variable(order)
    return z * series_exp(-(z ** r))


@dataclasses.dataclass(frozen=True)
class SpectralCurve:
    """The r-Lambert curve x^r = y e^{-ry}, truncated at ``order``.

    ``y_of_x`` is the inverse branch through the origin, supported on
    exponents divisible by r; ``x_of_z`` is the rational chart.
    """

    r: int
    order: int
    x_of_z: Series
    y_of_x: Series

    def residual(self) -> Series:
        """y e^{-ry} - x^r after substituting y = y(x); zero iff the
        series really lies on the curve."""
        y = Series.variable(self.order)
        curve = y * series_exp(-self.r * y)
        return series_compose(curve, self.y_of_x) - Series.variable(
            self.order) ** self.r


def spectral_y(r: int, order: int = DEFAULT_ORDER) -> SpectralCurve:
    """The curve together with y(x), computed two ways and reconciled.

    Route one reads the coefficients straight from the Hurwitz
    recursion; route two inverts w = y e^{-ry} by the Lagrange formula
    with w = x^r.  The routes share no code, so their agreement checks
    the recursion's one-part values against the curve.

    >>> spectral_y(1, 4).y_of_x.items()
    [((1,), Fraction(1, 1)), ((2,), Fraction(1, 1)), ((3,), Fraction(3, 2)), ((4,), Fraction(8, 3))]
    >>> [spectral_y(2, 12).y_of_x.coeff((2 * k,)) for k in (1, 2, 3)]
    [Fraction(1, 1), Fraction(2, 1), Fraction(6, 1)]
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if order < r:
        raise ValueError(f"order {order} cannot resolve the leading "
                         f"coefficient at x^{r}")
    direct = Series(1, order, {(d,): calH(r, 0, [d])
                               for d in range(1, order + 1)})

    m = order // r
    y = Series.variable(m)
    inverted = lagrange_invert(series_exp(r * y), m)
    by_inversion = Series(1, order,
                          {(r * k,): c for (k,), c in inverted.items()})
    if direct != by_inversion:
        raise MethodMismatchError(
            "recursion and Lagrange inversion disagree on y(x): "
            f"{direct!r} vs {by_inversion!r}")
    return SpectralCurve(r, order, x_of_z(r, order), direct)


# ----------------------------------------------------------------------
# free energies
# ----------------------------------------------------------------------

def f01_series(r: int, order: int) -> Series:
    """The one-point genus-zero free energy sum H(d)/d x^d."""
    return Series(1, order, {(d,): calH(r, 0, [d]) / d
                             for d in range(1, order + 1)})


def f02_series(r: int, order: int) -> Series:
    """The two-point genus-zero free energy, truncated at total degree
    ``order``: sum over mu1, mu2 >= 1 of H(mu1, mu2)/(mu1 mu2)
    x1^mu1 x2^mu2."""
    coeffs = {}
    for m1 in range(1, order):
        for m2 in range(1, order + 1 - m1):
            value = calH(r, 0, [m1, m2])
            if value:
                coeffs[(m1, m2)] = value / (m1 * m2)
    return Series(2, order, coeffs)


# ----------------------------------------------------------------------
# identity verification
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class VerifyReport:
    """Outcome of one symbolic identity check; ``failures`` holds one
    line per broken sub-check, first mismatching coefficient included."""

    name: str
    r: int
    order: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def _mismatch_lines(what: str, got: Series, want: Series) -> list[str]:
    if got == want:
        return []
    exps = sorted(set(dict(got.items())) | set(dict(want.items())))
    for e in exps:
        if got.coeff(e) != want.coeff(e):
            return [f"{what}: coefficient {e} is "
                    f"{format_fraction(got.coeff(e))}, expected "
                    f"{format_fraction(want.coeff(e))}"]
    return [f"{what}: series differ only in truncation order"]


def verify_f01(r: int, order: int = DEFAULT_ORDER) -> VerifyReport:
    """Check F_{0,1}(x(z)) = z^r/r - z^{2r}/2 coefficient by
    coefficient.

    The left side is an order-long sum built from the recursion; the
    identity says every coefficient above degree 2r cancels, so the
    comparison is run to the full truncation order, not just to 2r.

    >>> verify_f01(1, 12).ok
    True
    """
    if order < 2 * r:
        raise ValueError(f"order must be at least 2r = {2 * r} to see "
                         "both surviving terms")
    composed = series_compose(f01_series(r, order), x_of_z(r, order))
    target = Series(1, order, {(r,): Fraction(1, r), (2 * r,): Fraction(-1, 2)})
    return VerifyReport("f01", r, order,
                        tuple(_mismatch_lines("F01 in the z chart",
                                              composed, target)))


def verify_f02(r: int, order: int = DEFAULT_ORDER_2) -> VerifyReport:
    """Check the closed form and the defining PDE for F_{0,2} in the z
    chart, to total degree ``order``.

    Four sub-checks: equality with log((z1-z2)/(x(z1)-x(z2))) - z1^r
    - z2^r; symmetry in (z1, z2); vanishing of every pure-z1 and
    pure-z2 coefficient (the boundary condition F_{0,2}(x, 0) = 0);
    and the Euler-operator PDE, cross-multiplied so the divided
    difference in its right side stays polynomial.

    >>> verify_f02(1, 8).ok
    True
    """
    if order < 2 * r:
        raise ValueError(f"order must be at least 2r = {2 * r} to see "
                         "the first mixed terms")
    if order > _MAX_ORDER_2:
        raise ValueError(f"bivariate order capped at {_MAX_ORDER_2}")
    failures: list[str] = []
    composed = compose_each(f02_series(r, order), x_of_z(r, order))

    x_fine = x_of_z(r, order + 1)
    delta_x = divided_difference(x_fine, order)
    z_r = Series(2, order, {(r, 0): 1, (0, r): 1})
    target = -series_log1p(delta_x - 1) - z_r
    failures += _mismatch_lines("F02 vs the log form", composed, target)

    swapped = Series(2, order, {(j, i): c for (i, j), c in composed.items()})
    failures += _mismatch_lines("F02 symmetry", composed, swapped)

    boundary = Series(2, order, {e: c for e, c in composed.items()
                                 if 0 in e})
    failures += _mismatch_lines("F02 boundary values",
                                boundary, Series.zero(2, order))

    # PDE: (z1 d1 + z2 d2) F / r + z1^r + z2^r multiplied by the
    # divided difference of x equals the divided difference of x z^r
    euler = (composed.grade(0) + composed.grade(1)) * Fraction(1, r)
    z = Series.variable(order + 1)
    g_fine = x_fine * z ** r
    lhs = delta_x * (euler + z_r)
    rhs = divided_difference(g_fine, order)
    failures += _mismatch_lines("F02 flow equation", lhs, rhs)

    return VerifyReport("f02", r, order, tuple(failures))
