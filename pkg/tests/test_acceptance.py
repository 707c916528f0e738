"""Acceptance suite: ten exact checks, one per criterion.

Every equality is exact rational equality (tolerance zero), and every
test asserts its own wall-clock budget.  The checks deliberately cross
module boundaries: recursion against closed forms, closed forms
against brute-force counting, graph evaluation against algebra, and
series identities against both.
"""

from __future__ import annotations

import itertools
import time
from fractions import Fraction

from tqftools.cellgraph import (
    CellGraph,
    cylinder,
    enumerate_graphs,
    hom_set,
    random_graph,
)
from tqftools.dotgraph import enumerate_weighted
from tqftools.frobenius import check_identities, named_algebra
from tqftools.hurwitz import (
    Profile,
    calH,
    factorization_count,
    hurwitz_H,
    jpt_01,
    jpt_02,
    partitions,
    tree_count,
)
from tqftools.spectral import spectral_y, verify_f01, verify_f02
from tqftools.tqft import tensor_forced, verify_independence

ALGEBRA_KEYS = ("trivial", "dual-numbers", "center:Z2", "center:S3")


def _budget(seconds: float, started: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < seconds, f"{elapsed:.1f}s exceeds the {seconds}s budget"


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_01_orbifold_example_four_ways():
    started = time.perf_counter()
    target = Fraction(9, 2)
    assert calH(2, 0, [3, 1]) == target                    # recursion
    assert jpt_02(2, 3, 1) * 3 == target                   # closed form
    raw_h = factorization_count(2, 0, [3, 1])              # brute force
    assert raw_h * 3 == target
    assert raw_h * _factorial(4) * _factorial(2) == 72     # raw tuple count
    assert enumerate_weighted(2, 0, [3, 1]) == target      # graph count
    _budget(10, started)


def test_02_tree_counts():
    started = time.perf_counter()
    assert [tree_count(d) for d in range(1, 7)] == [1, 1, 3, 16, 125, 1296]
    for d in range(1, 9):
        assert tree_count(d) == Fraction(d) ** (d - 2)
        assert tree_count(d) == _factorial(d - 1) * calH(1, 0, [d])
    _budget(1, started)


def test_03_jpt_closed_forms():
    started = time.perf_counter()
    checked = 0
    for r in (1, 2, 3):
        for d in range(r, 8 * r + 1):
            assert hurwitz_H(r, 0, [d]) == jpt_01(r, d), (r, d)
            checked += 1
        for m1 in range(1, 7):
            for m2 in range(1, m1 + 1):
                if (m1 + m2) % r:
                    continue
                assert hurwitz_H(r, 0, [m1, m2]) == jpt_02(r, m1, m2), \
                    (r, m1, m2)
                checked += 1
    assert checked == 85
    _budget(30, started)


def test_04_factorization_oracle():
    started = time.perf_counter()
    checked = 0
    for r in (1, 2):
        for d in range(r, 7, r):
            for mu in partitions(d):
                for genus in range(4):
                    profile = Profile(r, genus, mu)
                    if not profile.admissible or profile.s > 4:
                        continue
                    assert hurwitz_H(r, genus, mu) == \
                        factorization_count(r, genus, mu), (r, genus, mu)
                    checked += 1
    assert checked == 36      # every admissible profile in the stated box
    _budget(300, started)


def test_05_graph_independence():
    started = time.perf_counter()
    algebras = [named_algebra(key) for key in ALGEBRA_KEYS]
    exhaustive = [g for g in enumerate_graphs(4) if g.is_connected()]
    assert len(exhaustive) == 825
    for graph in exhaustive:
        for algebra in algebras:
            verify_independence(graph, algebra, trials=3, seed=17)
    for t in range(200):
        graph = random_graph(1 + t % 6, seed=900_000 + t)
        for algebra in algebras:
            verify_independence(graph, algebra, trials=3, seed=t)
    _budget(300, started)


def test_06_closed_surface_invariants():
    started = time.perf_counter()
    # independent oracle: commuting pairs in the permutation group on
    # three letters, divided by the group order
    perms = list(itertools.permutations(range(3)))
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    commuting = sum(compose(p, q) == compose(q, p)
                    for p in perms for q in perms)
    assert commuting == 18
    assert named_algebra("center:S3").z_invariant(1) == commuting // 6 == 3
    z2 = named_algebra("center:Z2")
    for genus in range(6):
        assert z2.z_invariant(genus) == 2 ** genus
    dual = named_algebra("dual-numbers")
    assert dual.z_invariant(1) == 2
    for genus in range(2, 6):
        assert dual.z_invariant(genus) == 0
    _budget(1, started)


def test_07_algebra_identity_suite():
    started = time.perf_counter()
    for key in ALGEBRA_KEYS:
        problems = check_identities(named_algebra(key), trials=100, seed=23)
        assert not problems, (key, problems)
    _budget(10, started)


def test_08_hom_set_examples():
    started = time.perf_counter()
    path3 = CellGraph([(0,), (1, 2), (3,)], [(0, 1), (2, 3)])
    loop = CellGraph([(0, 1)], [(0, 1)])
    bare = CellGraph([()], [])
    two_bare = CellGraph([(), ()], [])
    assert sorted(hom_set(path3, cylinder(1))) == [[(0, 1)], [(2, 3)]]
    assert hom_set(path3, bare) == [[(0, 1), (2, 3)]]
    assert len(hom_set(cylinder(2), loop)) == 1
    assert hom_set(cylinder(2), two_bare) == [[(0, 2), (1, 3)]]
    _budget(1, started)


def test_09_mirror_identities():
    started = time.perf_counter()
    for r in (1, 2, 3, 4):
        curve = spectral_y(r, 20)          # raises if the routes disagree
        assert curve.residual().is_zero(), r
    for r in (1, 2, 3):
        report = verify_f01(r, 20)
        assert report.ok, (r, report.failures)
    for r in (1, 2):
        report = verify_f02(r, 12)
        assert report.ok, (r, report.failures)
    _budget(120, started)


def _branches(graph, edge):
    if graph.is_loop(edge):
        return graph.contract_loop(edge).parts
    return (graph.contract_edge(edge).graph,)


def _two_step_keys(graph, first, second):
    out = []
    for mid in _branches(graph, first):
        if mid.has_edge(second):
            out.extend(p.unlabeled_key() for p in _branches(mid, second))
        else:
            out.append(mid.unlabeled_key())
    return sorted(out)


def test_10_contraction_commutativity():
    started = time.perf_counter()
    graphs = [g for g in enumerate_graphs(5) if g.is_connected()]
    algebra = named_algebra("center:Z2")
    memo: dict = {}
    pairs = 0
    for graph in graphs:
        for e1, e2 in itertools.combinations(graph.edges, 2):
            assert _two_step_keys(graph, e1, e2) == \
                _two_step_keys(graph, e2, e1), (graph, e1, e2)
            assert tensor_forced(algebra, graph, [e1, e2], memo=memo) == \
                tensor_forced(algebra, graph, [e2, e1], memo=memo), \
                (graph, e1, e2)
            pairs += 1
    assert pairs == 139012
    _budget(120, started)
