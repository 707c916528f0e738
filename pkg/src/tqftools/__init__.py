"""tqftools: exact 2D TQFT values on cell graphs and orbifold Hurwitz
numbers, all over the rationals.

The package is organized by what each part does:

* :mod:`tqftools.series` — truncated power series over ``Fraction``.
* :mod:`tqftools.frobenius` — commutative Frobenius algebras and the
  closed-form surface invariants.
* :mod:`tqftools.cellgraph` — cell graphs (dart rotation systems),
  contractions, connected sums, canonical forms, Hom sets.
* :mod:`tqftools.tqft` — recursive evaluation of the contraction rules
  and the graph-independence checks.
* :mod:`tqftools.hurwitz` — the branched-cover counts, their recursion,
  and three independent oracles.
* :mod:`tqftools.dotgraph` — dotted/arrowed decorated graphs and the
  weighted enumeration oracle.
* :mod:`tqftools.spectral` — the mirror curve x^r = y e^{-ry} and the
  closed-form generating-function identities.
* :mod:`tqftools.cli` — the ``tqftools`` command-line interface.
"""

from __future__ import annotations

__version__ = "0.1.0"
