"""Evaluation of the surface invariant of a Frobenius algebra on a cell
graph by repeated edge contraction.

Given a graph with vertices 1..n and one algebra element per vertex, the
value is computed one edge at a time: a straight edge multiplies the two
end slots into one, a loop comultiplies its vertex's slot and spreads
the two output legs over the split vertices (and over both components
when the split disconnects the graph), and a graph with no edges left
contributes the product of the counits of its slots.  A pluggable
strategy chooses which edge to contract next; the computed value does
not depend on that choice, and it always equals the closed form

    counit(v_1 * ... * v_n * e^g)

where e is the algebra's Euler element and g the genus.  Both facts are
checked by :func:`verify_independence`.

The recursion works on whole basis tensors rather than on slot values:
the invariant is multilinear, so it is determined by its values on basis
tuples, and pulling a sparse tensor back through one contraction only
touches nonzero entries.  For the algebras of interest the counit
vanishes on most basis vectors, which keeps the tensors very sparse.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
import weakref
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .cellgraph import CellGraph, Edge, GraphError, GraphType
from .frobenius import AlgebraElement, FrobeniusAlgebra

Tensor = Mapping[tuple[int, ...], Fraction]


class EvaluationError(ValueError):
    """Raised for slot/graph mismatches and malformed requests."""


class IndependenceError(AssertionError):
    """Raised when two evaluation routes disagree.  Must never fire."""


# ----------------------------------------------------------------------
# slot assignments
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SlotAssignment:
    """One algebra element per vertex label of a target graph."""

    algebra: FrobeniusAlgebra
    elements: tuple[AlgebraElement, ...]

    def __post_init__(self):
        for v in self.elements:
            self.algebra.require_same(v.algebra)

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def identities(algebra: FrobeniusAlgebra, n: int) -> "SlotAssignment":
        one = algebra.identity()
        return SlotAssignment(algebra, (one,) * n)

    @staticmethod
    def random(algebra: FrobeniusAlgebra, n: int,
               rng: random.Random) -> "SlotAssignment":
        els = tuple(
            algebra.element([rng.randint(-3, 3) for _ in range(algebra.dim)])
            for _ in range(n)
        )
        return SlotAssignment(algebra, els)

    def permuted(self, order: Sequence[int]) -> "SlotAssignment":
        """Reorder slots: entry k of the result is elements[order[k]]."""
        return SlotAssignment(self.algebra,
                              tuple(self.elements[i] for i in order))


# ----------------------------------------------------------------------
# strategies
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Strategy:
    """A deterministic rule choosing the next edge to contract.

    The rule must be a function of the graph alone so that evaluation
    can memoize per-stage tensors within a run.
    """

    name: str
    pick: Callable[[CellGraph], Edge]

    def __call__(self, graph: CellGraph) -> Edge:
        return self.pick(graph)


def _pick_loops_first(graph: CellGraph) -> Edge:
    for e in graph.edges:
        if graph.is_loop(e):
            return e
    return graph.edges[0]


MIN_EDGE = Strategy("min-edge", lambda g: g.edges[0])
MAX_EDGE = Strategy("max-edge", lambda g: g.edges[-1])
LOOPS_FIRST = Strategy("loops-first", _pick_loops_first)


def random_strategy(seed: int) -> Strategy:
    def pick(graph: CellGraph) -> Edge:
        rng = random.Random(repr((seed, graph.vertices, graph.edges)))
        return rng.choice(graph.edges)
    return Strategy(f"random:{seed}", pick)


def get_strategy(spec: str) -> Strategy:
    """Resolve 'min-edge', 'max-edge', 'loops-first', or 'random:<seed>'."""
    fixed = {s.name: s for s in (MIN_EDGE, MAX_EDGE, LOOPS_FIRST)}
    if spec in fixed:
        return fixed[spec]
    if spec.startswith("random:"):
        return random_strategy(int(spec.split(":", 1)[1]))
    raise EvaluationError(f"unknown strategy {spec!r}")


DEFAULT_STRATEGIES = (MIN_EDGE, MAX_EDGE, LOOPS_FIRST)


# ----------------------------------------------------------------------
# sparse basis tensors
# ----------------------------------------------------------------------

_TABLES: "weakref.WeakKeyDictionary[FrobeniusAlgebra, tuple]" = \
    weakref.WeakKeyDictionary()


def _tables(a: FrobeniusAlgebra):
    """Per-algebra pullback tables: nonzero structure constants grouped
    by the surviving index, and nonzero comultiplication coefficients
    grouped by the output pair."""
    cached = _TABLES.get(a)
    if cached is not None:
        return cached
    d = a.dim
    by_result: list[list[tuple[int, int, Fraction]]] = [[] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            for t in range(d):
                c = a.mult[i][j][t]
                if c:
                    by_result[t].append((i, j, c))
    by_pair: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for t in range(d):
        dt = a.delta_basis(t)
        for x in range(d):
            for y in range(d):
                if dt[x][y]:
                    by_pair.setdefault((x, y), []).append((t, dt[x][y]))
    counit_support = [(k, c) for k, c in enumerate(a.counit_vector) if c]
    tables = (tuple(by_result), by_pair, counit_support)
    _TABLES[a] = tables
    return tables


def _bare_tensor(a: FrobeniusAlgebra, n: int) -> dict:
    support = _tables(a)[2]
    out = {}
    for combo in itertools.product(support, repeat=n):
        key = tuple(k for k, _ in combo)
        val = Fraction(1)
        for _, c in combo:
            val *= c
        out[key] = val
    return out


def _straight_combine(a: FrobeniusAlgebra, n: int, kept: int, removed: int,
                      child: Tensor) -> dict:
    by_result = _tables(a)[0]
    out: dict = defaultdict(Fraction)
    for ckey, val in child.items():
        t = ckey[kept - 1]
        for ki, kj, c in by_result[t]:
            pkey = tuple(
                ki if lab == kept else
                kj if lab == removed else
                ckey[lab - 1] if lab < removed else ckey[lab - 2]
                for lab in range(1, n + 1)
            )
            out[pkey] += c * val
    return {k: v for k, v in out.items() if v}


def _loop_combine(a: FrobeniusAlgebra, n: int, base: int,
                  tokens: Sequence[Sequence[object]],
                  parts: Sequence[Tensor]) -> dict:
    by_pair = _tables(a)[1]
    out: dict = defaultdict(Fraction)
    for combo in itertools.product(*[t.items() for t in parts]):
        val = Fraction(1)
        for _, v in combo:
            val *= v
        x = y = None
        fixed: dict[int, int] = {}
        for (pkey, _), toks in zip(combo, tokens):
            for slot, tok in enumerate(toks):
                if tok == "A":
                    x = pkey[slot]
                elif tok == "B":
                    y = pkey[slot]
                else:
                    fixed[tok] = pkey[slot]
        for t, c in by_pair.get((x, y), ()):
            key = tuple(t if lab == base else fixed[lab]
                        for lab in range(1, n + 1))
            out[key] += c * val
    return {k: v for k, v in out.items() if v}


def _pullback(a: FrobeniusAlgebra, graph: CellGraph, edge: Edge,
              tensor_of: Callable[[CellGraph], Tensor]) -> dict:
    """Tensor of `graph` from the tensors of its one-step contraction."""
    if graph.is_loop(edge):
        lc = graph.contract_loop(edge)
        parts = [tensor_of(p) for p in lc.parts]
        return _loop_combine(a, graph.n, lc.base_label, lc.part_tokens, parts)
    ec = graph.contract_edge(edge)
    return _straight_combine(a, graph.n, ec.kept_label, ec.removed_label,
                             tensor_of(ec.graph))


def graph_tensor(a: FrobeniusAlgebra, graph: CellGraph,
                 strategy: Strategy = MIN_EDGE,
                 memo: dict | None = None) -> Tensor:
    """Values on all basis tuples: entry (k_1,..,k_n) is the invariant
    with basis vector k_i in slot i.  Disconnected graphs factor.

    A shared `memo` dict (keyed by exact graph data) may be passed to
    reuse stage tensors across calls with the same algebra/strategy.
    """
    if memo is None:
        memo = {}

    def rec(g: CellGraph) -> Tensor:
        key = (g.vertices, g.edges)
        found = memo.get(key)
        if found is not None:
            return found
        if not g.edges:
            out = _bare_tensor(a, g.n)
        elif not g.is_connected():
            out = {}
            comps = g.components()
            for combo in itertools.product(
                    *[rec(part).items() for part, _ in comps]):
                key_full = [0] * g.n
                val = Fraction(1)
                for (pkey, v), (_, labels) in zip(combo, comps):
                    val *= v
                    for slot, lab in enumerate(labels):
                        key_full[lab - 1] = pkey[slot]
                out[tuple(key_full)] = out.get(tuple(key_full), 0) + val
            out = {k: v for k, v in out.items() if v}
        else:
            out = _pullback(a, g, strategy(g), rec)
        memo[key] = out
        return out

    return rec(graph)


def tensor_forced(a: FrobeniusAlgebra, graph: CellGraph,
                  forced: Sequence[Edge], strategy: Strategy = MIN_EDGE,
                  memo: dict | None = None) -> Tensor:
    """Like :func:`graph_tensor`, but contract the listed edges first,
    in order.  Edges are tracked by their dart pairs, which contraction
    preserves; after a disconnecting loop split each remaining forced
    edge applies to whichever part contains it.  The strategy (with the
    shared memo, if given) takes over once the list is exhausted.
    """
    if memo is None:
        memo = {}
    order = [tuple(sorted(e)) for e in forced]
    if not order:
        return graph_tensor(a, graph, strategy, memo)
    head, rest = order[0], order[1:]
    if not graph.has_edge(head):
        raise EvaluationError(f"forced edge {head} is not in the graph")

    def tensor_of(child: CellGraph) -> Tensor:
        kept = [e for e in rest if child.has_edge(e)]
        return tensor_forced(a, child, kept, strategy, memo)

    return _pullback(a, graph, head, tensor_of)


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------

def evaluate(graph: CellGraph, slots: SlotAssignment,
             strategy: Strategy = MIN_EDGE,
             memo: dict | None = None) -> Fraction:
    """The invariant of a connected graph with the given slot vectors."""
    if not graph.is_connected():
        raise EvaluationError("evaluate needs a connected graph")
    if len(slots) != graph.n:
        raise EvaluationError(
            f"{len(slots)} slot vectors for a graph with {graph.n} vertices")
    tensor = graph_tensor(slots.algebra, graph, strategy, memo)
    total = Fraction(0)
    for key, val in tensor.items():
        coeff = val
        for lab, k in enumerate(key):
            coeff *= slots.elements[lab].coords[k]
            if not coeff:
                break
        total += coeff
    return total


def closed_value(graph: CellGraph, slots: SlotAssignment) -> Fraction:
    """The closed form counit(v_1 ... v_n e^g) for the graph's type."""
    g = graph.graph_type().g
    return slots.algebra.omega_closed(g, slots.elements)


@dataclasses.dataclass(frozen=True)
class IndependenceReport:
    graph_type: GraphType
    strategies: tuple[str, ...]
    assignments: int
    values: tuple[Fraction, ...]


def verify_independence(graph: CellGraph, algebra: FrobeniusAlgebra,
                        trials: int = 3, seed: int = 0,
                        strategies: Iterable[Strategy] = (),
                        ) -> IndependenceReport:
    """Evaluate with several strategies and slot assignments, insisting
    every route gives one number that also matches the closed form."""
    strats = tuple(strategies) or DEFAULT_STRATEGIES + (
        random_strategy(seed), random_strategy(seed + 1))
    rng = random.Random(seed)
    assigns = [SlotAssignment.identities(algebra, graph.n)]
    assigns += [SlotAssignment.random(algebra, graph.n, rng)
                for _ in range(trials)]
    values = []
    for vs in assigns:
        expected = closed_value(graph, vs)
        for s in strats:
            got = evaluate(graph, vs, s)
            if got != expected:
                raise IndependenceError(
                    f"strategy {s.name} gave {got}, closed form {expected} "
                    f"on {graph!r}")
        values.append(expected)
    return IndependenceReport(graph.graph_type(),
                              tuple(s.name for s in strats),
                              len(assigns), tuple(values))
