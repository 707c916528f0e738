"""Truncated formal power series over exact rationals.

A :class:`Series` is a polynomial-style approximation of a formal power
series in one or two variables: a sparse map from exponents to
``fractions.Fraction``, truncated at a stated total degree ``order``
(inclusive — coefficients of total degree <= order are kept).  All
arithmetic is exact; nothing here ever touches a float.

Exponents are tuples, ``(k,)`` for one variable and ``(i, j)`` for two,
and zero coefficients are never stored.  Binary operations truncate the
result at the smaller of the two input orders.  ``==`` is structural
(same variable count, same order, same coefficients); use
:meth:`Series.agrees_with` to compare two series up to the smaller of
their truncation orders.

Wire format (JSON): ``{"vars": 1|2, "N": order,
"coeffs": [[exponent(s)..., "p/q"], ...]}`` with rationals rendered as
decimal strings ``"p/q"`` (or ``"p"`` when the denominator is one).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: Scalar) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction.

    >>> as_fraction("9/2")
    Fraction(9, 2)
    >>> as_fraction(3)
    Fraction(3, 1)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction in the wire format: "p/q", or "p" if integral.

    >>> format_fraction(Fraction(9, 2))
    '9/2'
    >>> format_fraction(Fraction(-4, 1))
    '-4'
    """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Series:
    """A truncated formal power series in one or two variables."""

    __slots__ = ("nvars", "order", "_coeffs")

    def __init__(self, nvars: int, order: int,
                 coeffs: Mapping[tuple[int, ...], Scalar] | Iterable = ()):
        if nvars not in (1, 2):
            raise ValueError("only one- and two-variable series are supported")
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.nvars = nvars
        self.order = order
        clean: dict[tuple[int, ...], Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exps, value in items:
            exps = tuple(exps) if not isinstance(exps, tuple) else exps
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent {exps!r} for {nvars} variable(s)")
            if sum(exps) > order:
                continue
            value = as_fraction(value)
            if value:
                clean[exps] = clean.get(exps, ZERO) + value
                if not clean[exps]:
                    del clean[exps]
        self._coeffs = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int, order: int) -> "Series":
        return Series(nvars, order)

    @staticmethod
    def constant(value: Scalar, nvars: int, order: int) -> "Series":
        return Series(nvars, order, {(0,) * nvars: as_fraction(value)})

    @staticmethod
    def variable(order: int, nvars: int = 1, index: int = 0) -> "Series":
        """The coordinate series x (or z1/z2 for two variables).

        >>> Series.variable(5).coeff((1,))
        Fraction(1, 1)
        """
        exps = tuple(1 if k == index else 0 for k in range(nvars))
        return Series(nvars, order, {exps: ONE})

    # -- basic queries ------------------------------------------------

    def coeff(self, exps: tuple[int, ...] | int) -> Fraction:
        if isinstance(exps, int):
            exps = (exps,)
        return self._coeffs.get(tuple(exps), ZERO)

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Sorted (exponent, coefficient) pairs — deterministic order."""
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def constant_term(self) -> Fraction:
        return self._coeffs.get((0,) * self.nvars, ZERO)

    def degree(self) -> int:
        """Largest total degree with a nonzero coefficient (-1 if zero)."""
        if not self._coeffs:
            return -1
        return max(sum(e) for e in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.nvars == other.nvars and self.order == other.order
                and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        return hash((self.nvars, self.order, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {format_fraction(c)}" for e, c in self.items())
        return f"Series({self.nvars} var, N={self.order}, {{{body}}})"

    def agrees_with(self, other: "Series") -> bool:
        """Equality of all coefficients up to the smaller truncation order."""
        if self.nvars != other.nvars:
            return False
        n = min(self.order, other.order)
        return self.truncate(n)._coeffs == other.truncate(n)._coeffs

    # -- ring operations ----------------------------------------------

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return Series(self.nvars, order, self._coeffs)
        return Series(self.nvars, order,
                      {e: c for e, c in self._coeffs.items() if sum(e) <= order})

    def __neg__(self) -> "Series":
        return Series(self.nvars, self.order,
                      {e: -c for e, c in self._coeffs.items()})

    def __add__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.nvars, self.order)
        self._check_compatible(other)
        order = min(self.order, other.order)
        out = dict(self.truncate(order)._coeffs)
        for e, c in other._coeffs.items():
            if sum(e) <= order:
                out[e] = out.get(e, ZERO) + c
        return Series(self.nvars, order, out)

    __radd__ = __add__

    def __sub__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            other = Series.constant(other, self.nvars, self.order)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Series":
        return Series.constant(other, self.nvars, self.order) + (-self)

    def __mul__(self, other: "Series | Scalar") -> "Series":
        if not isinstance(other, Series):
            scalar = as_fraction(other)
            return Series(self.nvars, self.order,
                          {e: c * scalar for e, c in self._coeffs.items()})
        self._check_compatible(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative powers: use reciprocal() explicitly")
        out = Series.constant(1, self.nvars, self.order)
        for _ in range(n):
            out = out * self
        return out

    def reciprocal(self) -> "Series":
        """Multiplicative inverse 1/f for f with nonzero constant term."""
        c = self.constant_term()
        if not c:
            raise ValueError("series with zero constant term has no reciprocal")
        u = self * (1 / c) - 1          # valuation >= 1
        out = Series.constant(1, self.nvars, self.order)
        term = Series.constant(1, self.nvars, self.order)
        sign = 1
        for _ in range(self.order):
            term = term * u
            sign = -sign
            if term.is_zero():
                break
            out = out + term * sign
        return out * (1 / c)

    def derivative(self, index: int = 0) -> "Series":
        """Partial derivative with respect to the index-th variable.

        The result is truncated at order-1 (the top-degree information is
        consumed by differentiation).
        """
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self._coeffs.items():
            k = e[index]
            if k == 0:
                continue
            e2 = tuple(v - 1 if i == index else v for i, v in enumerate(e))
            out[e2] = out.get(e2, ZERO) + c * k
        return Series(self.nvars, max(self.order - 1, 0), out)

    def grade(self, index: int = 0) -> "Series":
        """The operator x d/dx in the index-th variable: scale each
        coefficient by its exponent.  Truncation order is unchanged."""
        return Series(self.nvars, self.order,
                      {e: c * e[index] for e, c in self._coeffs.items()})

    def _check_compatible(self, other: "Series") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")


# ----------------------------------------------------------------------
# free-function operations (the methods above delegate to these)
# ----------------------------------------------------------------------

def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product, truncated at the smaller input order.

    >>> x = Series.variable(2)
    >>> ((1 + x) * (1 - x)).items()
    [((0,), Fraction(1, 1)), ((2,), Fraction(-1, 1))]
    >>> (x * x).truncate(1).is_zero()
    True
    """
    if a.nvars != b.nvars:
        raise ValueError("variable-count mismatch")
    order = min(a.order, b.order)
    small, large = (a, b) if len(a._coeffs) <= len(b._coeffs) else (b, a)
    out: dict[tuple[int, ...], Fraction] = {}
    litems = list(large._coeffs.items())
    for es, cs in small._coeffs.items():
        ds = sum(es)
        for el, cl in litems:
            if ds + sum(el) > order:
                continue
            e = tuple(p + q for p, q in zip(es, el))
            prev = out.get(e)
            out[e] = cs * cl if prev is None else prev + cs * cl
    return Series(a.nvars, order, out)


def series_compose(f: Series, g: Series) -> Series:
    """Substitute g into the univariate series f (g must have no
    constant term; g may be uni- or bivariate).  Result is truncated at
    g's order.

    >>> x = Series.variable(3)
    >>> f = x + x * x
    >>> series_compose(f, 2 * x).items()
    [((1,), Fraction(2, 1)), ((2,), Fraction(4, 1))]
    """
    if f.nvars != 1:
        raise ValueError("outer series must be univariate")
    if g.constant_term():
        raise ValueError("inner series must have zero constant term")
    # Horner evaluation from the top coefficient down.
    top = f.degree()
    out = Series.zero(g.nvars, g.order)
    for k in range(top, -1, -1):
        out = out * g + f.coeff((k,))
    return out


def series_exp(f: Series) -> Series:
    """exp(f) for a series with zero constant term.

    >>> z = Series.variable(4)
    >>> series_exp(-(z * z)).coeff((4,))
    Fraction(1, 2)
    """
    if f.constant_term():
        raise ValueError("exp needs zero constant term")
    out = Series.constant(1, f.nvars, f.order)
    term = Series.constant(1, f.nvars, f.order)
    for k in range(1, f.order + 1):
        term = term * f * Fraction(1, k)
        if term.is_zero():
            break
        out = out + term
    return out


def series_log1p(f: Series) -> Series:
    """log(1 + f) for a series with zero constant term.

    >>> x = Series.variable(3)
    >>> series_log1p(x).items()
    [((1,), Fraction(1, 1)), ((2,), Fraction(-1, 2)), ((3,), Fraction(1, 3))]
    """
    if f.constant_term():
        raise ValueError("log1p needs zero constant term")
    out = Series.zero(f.nvars, f.order)
    power = Series.constant(1, f.nvars, f.order)
    for k in range(1, f.order + 1):
        power = power * f
        if power.is_zero():
            break
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def lagrange_invert(f: Series, order: int) -> Series:
    """Solve x = y/f(y) for y(x), with f(0) != 0, up to the given order.

    Two independent routes — the classical coefficient formula
    ``[x^k] y = ([y^(k-1)] f^k) / k`` and fixed-point iteration of
    ``y <- x f(y)`` — are both computed and must agree; a mismatch would
    mean a series bug and raises.

    >>> x = Series.variable(6)
    >>> geom = sum((x ** k for k in range(1, 7)), Series.constant(1, 1, 6))
    >>> [lagrange_invert(geom, 5).coeff((k,)) for k in range(1, 6)]
    [Fraction(1, 1), Fraction(1, 1), Fraction(2, 1), Fraction(5, 1), Fraction(14, 1)]
    """
    if f.nvars != 1:
        raise ValueError("lagrange_invert needs a univariate series")
    if not f.constant_term():
        raise ValueError("f(0) must be nonzero")
    if f.order < order:
        raise ValueError("f is not accurate enough for the requested order")

    # Route one: coefficient formula.
    coeffs: dict[tuple[int, ...], Fraction] = {}
    power = Series.constant(1, 1, order)
    f_cut = f.truncate(order)
    for k in range(1, order + 1):
        power = power * f_cut
        c = power.coeff((k - 1,)) / k
        if c:
            coeffs[(k,)] = c
    result = Series(1, order, coeffs)

    # Route two: iterate y <- x f(y); the m-th iterate is exact to degree m.
    x = Series.variable(order)
    y = Series.zero(1, order)
    for _ in range(order):
        y = x * series_compose(f_cut, y)
    if y != result:
        raise AssertionError("Lagrange inversion self-check failed")
    return result


def divided_difference(f: Series, order: int) -> Series:
    """The symmetric bivariate series g with (z1 - z2) g = f(z1) - f(z2).

    f must be univariate with order >= order + 1; the result is bivariate,
    truncated at the given total degree.

    >>> z = Series.variable(3)
    >>> divided_difference(z * z, 1).items()
    [((0, 1), Fraction(1, 1)), ((1, 0), Fraction(1, 1))]
    """
    if f.nvars != 1:
        raise ValueError("divided_difference needs a univariate series")
    if f.order < order + 1:
        raise ValueError("f is not accurate enough for the requested order")
    out: dict[tuple[int, ...], Fraction] = {}
    for (k,), c in f._coeffs.items():
        if k == 0 or k > order + 1:
            continue
        for p in range(k):          # z1^p z2^(k-1-p)
            e = (p, k - 1 - p)
            out[e] = out.get(e, ZERO) + c
    return Series(2, order, out)


def compose_each(f: Series, g: Series) -> Series:
    """Substitute the univariate series g for each variable of the
    bivariate series f: returns f(g(z1), g(z2)) truncated at g's order.

    Exploits that powers of g(z1) live on exponents (p, 0) and powers of
    g(z2) on (0, q), so cross terms combine without collisions.
    """
    if f.nvars != 2 or g.nvars != 1:
        raise ValueError("compose_each wants bivariate f and univariate g")
    if g.constant_term():
        raise ValueError("inner series must have zero constant term")
    order = g.order
    max_i = max((e[0] for e in f._coeffs), default=0)
    max_j = max((e[1] for e in f._coeffs), default=0)
    powers: list[Series] = [Series.constant(1, 1, order)]
    for _ in range(max(max_i, max_j)):
        powers.append(powers[-1] * g)
    out: dict[tuple[int, ...], Fraction] = {}
    for (i, j), c in f._coeffs.items():
        gi, gj = powers[i], powers[j]
        for (p,), cp in gi._coeffs.items():
            for (q,), cq in gj._coeffs.items():
                if p + q > order:
                    continue
                e = (p, q)
                prev = out.get(e)
                val = c * cp * cq
                out[e] = val if prev is None else prev + val
    return Series(2, order, out)


# ----------------------------------------------------------------------
# wire format
# ----------------------------------------------------------------------

def series_to_json(s: Series) -> dict:
    """JSON-ready dict in the documented wire format."""
    return {
        "vars": s.nvars,
        "N": s.order,
        "coeffs": [[*e, format_fraction(c)] for e, c in s.items()],
    }


def series_from_json(data: Mapping) -> Series:
    nvars = data["vars"]
    coeffs = {}
    for row in data["coeffs"]:
        *exps, value = row
        coeffs[tuple(int(e) for e in exps)] = as_fraction(value)
    return Series(int(nvars), int(data["N"]), coeffs)
