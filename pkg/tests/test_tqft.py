"""Edge-contraction evaluation: worked values, strategy independence,
agreement with the closed form, and the small removal lemmas."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from tqftools.cellgraph import CellGraph, enumerate_graphs, random_graph
from tqftools.frobenius import named_algebra
from tqftools.tqft import (
    DEFAULT_STRATEGIES,
    EvaluationError,
    LOOPS_FIRST,
    MAX_EDGE,
    MIN_EDGE,
    SlotAssignment,
    Strategy,
    closed_value,
    evaluate,
    get_strategy,
    graph_tensor,
    random_strategy,
    tensor_forced,
    verify_independence,
)

ALGEBRA_NAMES = ("trivial", "dual-numbers", "center:Z2", "center:S3")

BARE = CellGraph([()], [])
ONE_LOOP = CellGraph([(0, 1)], [(0, 1)])
# interleaved pair of loops on one vertex: the smallest genus-1 graph
BOUQUET_11 = CellGraph([(0, 2, 1, 3)], [(0, 1), (2, 3)])
PATH2 = CellGraph([(0,), (1,)], [(0, 1)])


def random_slots(algebra, n, rng):
    return SlotAssignment.random(algebra, n, rng)


# ----------------------------------------------------------------------
# worked values
# ----------------------------------------------------------------------

def test_bare_vertex_is_counit():
    rng = random.Random(1)
    for name in ALGEBRA_NAMES:
        a = named_algebra(name)
        for _ in range(10):
            vs = random_slots(a, 1, rng)
            assert evaluate(BARE, vs) == a.counit(vs.elements[0])


def test_single_loop_is_counit():
    # the loop bounds a disc on either side, so removing it costs nothing
    rng = random.Random(2)
    for name in ALGEBRA_NAMES:
        a = named_algebra(name)
        for _ in range(10):
            vs = random_slots(a, 1, rng)
            assert evaluate(ONE_LOOP, vs) == a.counit(vs.elements[0])


def test_interleaved_loops_z2_identity_gives_two():
    a = named_algebra("center:Z2")
    vs = SlotAssignment.identities(a, 1)
    assert evaluate(BOUQUET_11, vs) == 2


def test_trivial_algebra_always_one():
    a = named_algebra("trivial")
    for g in enumerate_graphs(3):
        assert evaluate(g, SlotAssignment.identities(a, g.n)) == 1


def test_straight_edge_multiplies():
    rng = random.Random(3)
    for name in ALGEBRA_NAMES:
        a = named_algebra(name)
        for _ in range(10):
            vs = random_slots(a, 2, rng)
            v, w = vs.elements
            assert evaluate(PATH2, vs) == a.counit(v * w)


# ----------------------------------------------------------------------
# strategies
# ----------------------------------------------------------------------

def test_get_strategy_round_trip():
    for s in DEFAULT_STRATEGIES:
        assert get_strategy(s.name) is s
    r = get_strategy("random:17")
    assert r.name == "random:17"
    with pytest.raises(EvaluationError):
        get_strategy("by-vibes")


def test_strategies_pick_existing_edges():
    rng = random.Random(4)
    strategies = DEFAULT_STRATEGIES + (random_strategy(9),)
    for _ in range(20):
        g = random_graph(rng.randint(1, 5), seed=rng.randint(0, 10**6))
        for s in strategies:
            assert s(g) in g.edges


def test_random_strategy_is_deterministic():
    g = random_graph(5, seed=11)
    assert random_strategy(3)(g) == random_strategy(3)(g)


def test_loops_first_prefers_loops():
    g = CellGraph([(0, 2, 3), (1,)], [(0, 1), (2, 3)])
    assert LOOPS_FIRST(g) == (2, 3)
    assert MIN_EDGE(g) == (0, 1)
    assert MAX_EDGE(g) == (2, 3)


# ----------------------------------------------------------------------
# independence and closed form
# ----------------------------------------------------------------------

def test_independence_small_exhaustive():
    for g in enumerate_graphs(3):
        for name in ALGEBRA_NAMES:
            report = verify_independence(g, named_algebra(name),
                                         trials=2, seed=5)
            assert report.assignments == 3
            assert report.graph_type == g.graph_type()


def test_independence_random_graphs():
    rng = random.Random(6)
    a = named_algebra("center:S3")
    for _ in range(25):
        g = random_graph(rng.randint(1, 5), seed=rng.randint(0, 10**6))
        verify_independence(g, a, trials=1, seed=rng.randint(0, 99))


def test_closed_value_matches_genus_only():
    # the closed form depends on the slots and the genus, nothing else:
    # two graphs of the same type must evaluate identically
    rng = random.Random(7)
    by_type = {}
    for g in enumerate_graphs(3):
        by_type.setdefault(g.graph_type(), []).append(g)
    a = named_algebra("center:S3")
    for gtype, graphs in by_type.items():
        vs = random_slots(a, gtype.n, rng)
        values = {evaluate(g, vs) for g in graphs}
        assert len(values) == 1
        assert values == {closed_value(graphs[0], vs)}


def test_genus_shifts_multiply_by_euler():
    # each extra handle multiplies the all-identities value by epsilon(e)
    a = named_algebra("center:Z2")
    vs = SlotAssignment.identities(a, 1)
    # chain of interleaved loop pairs: genus g needs 2g loops
    for g in range(4):
        rot = []
        edges = []
        for h in range(g):
            base = 4 * h
            rot += [base, base + 2, base + 1, base + 3]
            edges += [(base, base + 1), (base + 2, base + 3)]
        graph = CellGraph([tuple(rot)], edges)
        assert graph.graph_type().g == g
        assert evaluate(graph, vs) == Fraction(2) ** g


# ----------------------------------------------------------------------
# symmetry and linearity
# ----------------------------------------------------------------------

def test_symmetric_under_label_permutation():
    rng = random.Random(8)
    a = named_algebra("center:S3")
    for _ in range(20):
        g = random_graph(rng.randint(1, 5), seed=rng.randint(0, 10**6))
        vs = random_slots(a, g.n, rng)
        base = evaluate(g, vs)
        order = list(range(g.n))
        rng.shuffle(order)
        permuted = CellGraph([g.vertices[i] for i in order], g.edges)
        assert evaluate(permuted, vs.permuted(order)) == base


def test_multilinear_in_each_slot():
    rng = random.Random(9)
    a = named_algebra("center:S3")
    g = random_graph(4, seed=21)
    for slot in range(g.n):
        vs = random_slots(a, g.n, rng)
        v = a.element([rng.randint(-3, 3) for _ in range(a.dim)])
        w = a.element([rng.randint(-3, 3) for _ in range(a.dim)])
        def with_slot(x):
            els = list(vs.elements)
            els[slot] = x
            return SlotAssignment(a, tuple(els))
        lhs = evaluate(g, with_slot(2 * v + 3 * w))
        rhs = 2 * evaluate(g, with_slot(v)) + 3 * evaluate(g, with_slot(w))
        assert lhs == rhs


# ----------------------------------------------------------------------
# removal lemmas
# ----------------------------------------------------------------------

def check_deletion_neutral(graph, edge):
    rng = random.Random(10)
    smaller = graph.delete_edge(edge)
    for name in ALGEBRA_NAMES:
        a = named_algebra(name)
        for _ in range(5):
            vs = random_slots(a, graph.n, rng)
            assert evaluate(graph, vs) == evaluate(smaller, vs)


def test_delete_disc_bounding_loop():
    # loop darts adjacent in the rotation: one face is the loop's own disc
    g = CellGraph([(0, 1, 2), (3,)], [(0, 1), (2, 3)])
    check_deletion_neutral(g, (0, 1))


def test_delete_one_bigon_edge():
    # two parallel edges bounding a disc between them
    g = CellGraph([(0, 2, 4), (1, 3), (5,)], [(0, 1), (2, 3), (4, 5)])
    assert g.graph_type().g == 0
    check_deletion_neutral(g, (2, 3))


def test_delete_one_of_two_nested_loops():
    # loops (4,5) and (6,7) are nested, hence parallel on the surface;
    # the ambient interleaved pair keeps the genus at 1 so the check is
    # not just a genus-0 tautology
    g = CellGraph([(0, 2, 1, 3, 4, 6, 7, 5)],
                  [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert g.graph_type().g == 1
    check_deletion_neutral(g, (6, 7))
    check_deletion_neutral(g, (4, 5))


# ----------------------------------------------------------------------
# tensors
# ----------------------------------------------------------------------

def test_graph_tensor_matches_basis_evaluations():
    a = named_algebra("center:S3")
    for g in (BOUQUET_11, PATH2, CellGraph([(0, 2), (1, 3)],
                                           [(0, 1), (2, 3)])):
        tensor = graph_tensor(a, g)
        for key in itertools.product(range(a.dim), repeat=g.n):
            vs = SlotAssignment(a, tuple(a.basis(k) for k in key))
            assert evaluate(g, vs) == tensor.get(key, Fraction(0))


def test_graph_tensor_factors_over_components():
    a = named_algebra("dual-numbers")
    two_bares = CellGraph([(), ()], [])
    expected = {}
    base = graph_tensor(a, BARE)
    for (k1, v1), (k2, v2) in itertools.product(base.items(), repeat=2):
        expected[k1 + k2] = v1 * v2
    assert graph_tensor(a, two_bares) == expected


def test_tensor_forced_orders_agree():
    a = named_algebra("center:S3")
    for g in enumerate_graphs(2):
        free = graph_tensor(a, g)
        memo = {}
        for e1, e2 in itertools.combinations(g.edges, 2):
            assert tensor_forced(a, g, [e1, e2], memo=memo) == free
            assert tensor_forced(a, g, [e2, e1], memo=memo) == free


def test_tensor_memo_is_shared():
    a = named_algebra("center:Z2")
    memo = {}
    graph_tensor(a, BOUQUET_11, memo=memo)
    key = (BOUQUET_11.vertices, BOUQUET_11.edges)
    assert key in memo
    before = len(memo)
    graph_tensor(a, BOUQUET_11, memo=memo)
    assert len(memo) == before


# ----------------------------------------------------------------------
# errors
# ----------------------------------------------------------------------

def test_evaluate_rejects_disconnected():
    a = named_algebra("trivial")
    two_bares = CellGraph([(), ()], [])
    with pytest.raises(EvaluationError):
        evaluate(two_bares, SlotAssignment.identities(a, 2))


def test_evaluate_rejects_slot_mismatch():
    a = named_algebra("center:Z2")
    with pytest.raises(EvaluationError):
        evaluate(PATH2, SlotAssignment.identities(a, 1))


def test_slots_reject_mixed_algebras():
    a = named_algebra("center:Z2")
    b = named_algebra("center:S3")
    with pytest.raises(Exception):
        SlotAssignment(a, (a.identity(), b.identity()))


def test_tensor_forced_rejects_missing_edge():
    a = named_algebra("trivial")
    with pytest.raises(EvaluationError):
        tensor_forced(a, PATH2, [(7, 8)])
