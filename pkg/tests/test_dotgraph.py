"""Decorated cell graphs: validity, the weighted count against the
Hurwitz recursion, and exact invertibility of the contraction moves."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from tqftools.cellgraph import CellGraph
from tqftools.dotgraph import (
    DecoratedGraph,
    DotError,
    class_weights,
    decorated_graphs,
    eco1,
    eco2,
    enumerate_weighted,
    undo,
    validate,
)
from tqftools.hurwitz import calH, partitions


BARE = CellGraph([()], [])
# one vertex, one disc-bounding loop: faces (0,) and (1,)
ONE_LOOP = CellGraph([(0, 1)], [(0, 1)])
# two vertices joined by an edge
PATH2 = CellGraph([(0,), (1,)], [(0, 1)])
# genus-1 bouquet: loops (0,1) and (2,3) interleaved, a single face
BOUQUET_11 = CellGraph([(0, 2, 1, 3)], [(0, 1), (2, 3)])


# ----------------------------------------------------------------------
# validity
# ----------------------------------------------------------------------

def test_bare_graph_validity():
    assert validate(DecoratedGraph(BARE, 3, (), (), free_dots=3)) == []
    bad = validate(DecoratedGraph(BARE, 3, (), (), free_dots=1))
    assert any("exactly 3" in v for v in bad)
    stored = validate(DecoratedGraph(BARE, 1, (), ((1, 0, 0),), free_dots=1))
    assert any("implicit" in v for v in stored)


def test_face_totals_and_arrows():
    h = DecoratedGraph(ONE_LOOP, 2, ((0, 2), (1, 2)), ((1, 0, 1),))
    assert validate(h) == []
    assert h.mu() == (4,)
    lop = validate(DecoratedGraph(ONE_LOOP, 2, ((0, 2), (1, 1)), ((1, 0, 0),)))
    assert any("carries 1 dots" in v for v in lop)
    foreign = validate(DecoratedGraph(PATH2, 1, ((0, 1), (1, 1)),
                                      ((1, 1, 0), (2, 0, 0))))
    assert any("foreign corner" in v for v in foreign)
    missing = validate(DecoratedGraph(PATH2, 1, ((0, 1), (1, 1)),
                                      ((1, 0, 3), (2, 1, 0))))
    assert any("missing dot" in v for v in missing)


def test_doubled_edge_needs_separating_dots():
    # both loops of the genus-1 bouquet traverse the single face twice,
    # so at r = 1 no decoration of it is valid
    for dart in range(4):
        h = DecoratedGraph(BOUQUET_11, 1, ((dart, 1),), ((1, dart, 0),))
        assert any("twice" in v for v in validate(h))
    # at r = 2, dots on opposite sides of each loop do work
    h = DecoratedGraph(BOUQUET_11, 2, ((0, 1), (1, 1)), ((1, 0, 0),))
    assert validate(h) == []


def test_enumerated_graphs_are_valid():
    seen = 0
    for r, g, mu in [(1, 0, (2,)), (2, 0, (3, 1)), (1, 1, (1,)),
                     (3, 0, (2, 1))]:
        for h in decorated_graphs(r, g, mu):
            assert validate(h) == []
            assert h.mu() == mu
            seen += 1
    assert seen > 0


# ----------------------------------------------------------------------
# the weighted count
# ----------------------------------------------------------------------

def test_pinned_counts():
    for r in (1, 2, 3):
        assert enumerate_weighted(r, 0, [r]) == 1
    assert enumerate_weighted(1, 0, [1, 1]) == Fraction(1, 2)
    assert enumerate_weighted(1, 0, [3]) == Fraction(3, 2)
    assert enumerate_weighted(2, 0, [3, 1]) == Fraction(9, 2)


def test_two_orbifold_class_split():
    # the 9/2 above splits as 3/2 from the two-vertex class whose extra
    # edge is straight and 3 from the class carrying a loop
    split = {}
    for base, w in class_weights(2, 0, [3, 1]):
        key = any(base.is_loop(e) for e in base.edges)
        split[key] = split.get(key, Fraction(0)) + w
    assert split == {False: Fraction(3, 2), True: Fraction(3)}


def test_matches_recursion():
    checked = 0
    for r in (1, 2, 3, 4):
        for d in range(1, 5):
            if d % r:
                continue
            for g in (0, 1):
                for mu in partitions(d):
                    s = 2 * g - 2 + d // r + len(mu)
                    if not 0 <= s <= 4:
                        continue
                    assert enumerate_weighted(r, g, mu) == calH(r, g, mu), \
                        (r, g, mu)
                    checked += 1
    assert checked >= 25


def test_enumeration_caps():
    with pytest.raises(DotError):
        enumerate_weighted(1, 0, [9])
    with pytest.raises(DotError):
        list(decorated_graphs(1, 3, [4]))        # s = 8 edges


# ----------------------------------------------------------------------
# contraction moves
# ----------------------------------------------------------------------

PROFILES = [(1, 0, (2,)), (1, 0, (1, 1)), (1, 0, (3,)), (1, 0, (2, 1)),
            (1, 1, (1,)), (2, 0, (3, 1)), (2, 0, (2, 2)), (2, 0, (4,)),
            (2, 1, (2,)), (2, 1, (4,)), (3, 0, (2, 1)), (2, 0, (2, 1, 1))]


def test_moves_preserve_validity_and_invert():
    moves = 0
    for r, g, mu in PROFILES:
        for h in decorated_graphs(r, g, mu):
            for edge in h.base.edges:
                if h.base.is_loop(edge):
                    parts, trace = eco2(h, edge)
                    for part in parts:
                        assert validate(part) == []
                    assert sum(p.s for p in parts) == h.s - 1
                    assert sum(p.total_dots for p in parts) == h.total_dots
                    restored = undo(trace, parts)
                else:
                    result, trace = eco1(h, edge)
                    assert validate(result) == []
                    assert result.s == h.s - 1
                    assert result.total_dots == h.total_dots
                    restored = undo(trace, result)
                assert restored == h, (h, edge)
                moves += 1
    assert moves > 500


def test_arrow_marks_last_transported_dot():
    # whenever the primary rule fires, the arrow index equals the count
    # of dots sitting before the kept-side block plus the block's size
    for h in decorated_graphs(2, 0, (3, 1)):
        for edge in h.base.edges:
            if h.base.is_loop(edge):
                continue
            result, trace = eco1(h, edge)
            a, _ = trace.darts
            for target, entries in trace.runs:
                before = 0
                for rd, c in entries:
                    if rd == a and c:
                        kept = trace.labels[0]
                        assert (kept, target, before + c - 1) in result.arrows
                    before += c


def test_greedy_chain_terminates_at_bare_vertices():
    for r, g, mu in [(1, 0, (3,)), (2, 0, (2, 2)), (2, 1, (2,))]:
        for h in itertools.islice(decorated_graphs(r, g, mu), 12):
            frontier, steps = [h], 0
            while any(p.s for p in frontier):
                nxt = []
                for p in frontier:
                    if not p.base.edges:
                        nxt.append(p)
                        continue
                    edge = p.base.edges[0]
                    if p.base.is_loop(edge):
                        nxt.extend(eco2(p, edge)[0])
                    else:
                        nxt.append(eco1(p, edge)[0])
                frontier, steps = nxt, steps + 1
            assert steps == h.s
            for p in frontier:
                assert (p.base.n, p.free_dots) == (1, r)


def test_wrong_edge_kind_raises():
    h = next(iter(decorated_graphs(2, 0, (2, 2))))
    loops = [e for e in h.base.edges if h.base.is_loop(e)]
    straights = [e for e in h.base.edges if not h.base.is_loop(e)]
    for e in loops:
        with pytest.raises(DotError):
            eco1(h, e)
    for e in straights:
        with pytest.raises(DotError):
            eco2(h, e)
    with pytest.raises(DotError):
        eco1(h, (97, 98))
