"""Command-line surface for the package.

Subcommands
-----------
``tqft eval``      evaluate a graph against a Frobenius algebra
``tqft verify``    evaluation-order independence on random graphs
``hurwitz``        one Hurwitz value, with optional oracle cross-checks
``hurwitz table``  admissible profiles as CSV/JSON, optional figure
``hgraph count``   decorated-graph count with per-class weights
``mirror spectral`` the curve series y(x) and the chart map x(z)
``mirror verify``  the genus-zero free-energy identities
``graph canon``    canonical, byte-stable graph JSON
``verify-all``     the full desk-scale verification suite

Exit codes: 0 on success and on PASS, 1 when a verification fails,
2 on usage errors.  Every rational is printed exactly as "p/q"
("p" when the denominator is one).  Randomized commands accept
``--seed`` and are deterministic given it.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import plotting
from .cellgraph import (
    CellGraph,
    GraphError,
    canonical_json,
    cylinder,
    enumerate_graphs,
    graph_from_json,
    hom_set,
    random_graph,
)
from .dotgraph import DotError, class_weights, enumerate_weighted
from .frobenius import (
    AlgebraError,
    algebra_from_json,
    check_identities,
    named_algebra,
)
from .hurwitz import (
    HurwitzError,
    Profile,
    calH,
    factorization_count,
    hurwitz_H,
    hurwitz_rows,
    jpt_01,
    jpt_02,
    partitions,
    tree_count,
)
from .series import as_fraction, format_fraction, series_to_json
from .spectral import (
    DEFAULT_ORDER,
    DEFAULT_ORDER_2,
    spectral_y,
    verify_f01,
    verify_f02,
)
from .tqft import (
    IndependenceError,
    SlotAssignment,
    evaluate,
    get_strategy,
    tensor_forced,
    verify_independence,
)

ALGEBRA_KEYS = ("trivial", "dual-numbers", "center:Z2", "center:S3")


# ----------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tqftools",
        description="Exact TQFT evaluation on cell graphs and "
                    "Hurwitz numbers by edge contraction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tqft = sub.add_parser("tqft", help="Frobenius-algebra evaluation")
    tqft_sub = p_tqft.add_subparsers(dest="action", required=True)
    p_eval = tqft_sub.add_parser(
        "eval", help="evaluate one graph on given algebra elements")
    p_eval.add_argument("--algebra", required=True,
                        help="algebra key (trivial, dual-numbers, "
                             "center:Z2, center:S3, center:<cycles>) "
                             "or a JSON file")
    p_eval.add_argument("--graph", required=True, help="graph JSON file")
    p_eval.add_argument("--vectors", required=True,
                        help="JSON array: one coordinate list per vertex, "
                             'rationals as "p/q"')
    p_eval.add_argument("--strategy", default="min-edge",
                        help="min-edge | max-edge | loops-first | "
                             "random:<seed>")
    p_vrf = tqft_sub.add_parser(
        "verify", help="check evaluation equals the closed form on "
                       "random graphs")
    p_vrf.add_argument("--algebra", required=True)
    p_vrf.add_argument("--max-edges", type=int, default=6)
    p_vrf.add_argument("--trials", type=int, default=200)
    p_vrf.add_argument("--seed", type=int, default=0)

    p_hur = sub.add_parser("hurwitz", help="Hurwitz numbers")
    p_hur.add_argument("mode", nargs="?", choices=["table"],
                       help="omit for a single value")
    p_hur.add_argument("--r", type=int, required=True)
    p_hur.add_argument("--g", required=True,
                       help="genus; a..b range for tables")
    p_hur.add_argument("--mu", help="comma-separated positive parts")
    p_hur.add_argument("--oracle", choices=["jpt", "factorization", "all"],
                       help="cross-check the value independently")
    p_hur.add_argument("--d-max", type=int, dest="d_max",
                       help="largest total degree in the table")
    p_hur.add_argument("--format", choices=["csv", "json"], default="csv")
    p_hur.add_argument("--figure",
                       help="also render the table to this image file")

    p_hg = sub.add_parser("hgraph", help="decorated-graph counts")
    hg_sub = p_hg.add_subparsers(dest="action", required=True)
    p_cnt = hg_sub.add_parser("count",
                              help="per-class weights and their total")
    p_cnt.add_argument("--r", type=int, required=True)
    p_cnt.add_argument("--g", type=int, required=True)
    p_cnt.add_argument("--mu", required=True)

    p_mir = sub.add_parser("mirror", help="spectral-curve identities")
    mir_sub = p_mir.add_subparsers(dest="action", required=True)
    p_spec = mir_sub.add_parser("spectral", help="the series y(x), x(z)")
    p_spec.add_argument("--r", type=int, required=True)
    p_spec.add_argument("--N", type=int, default=DEFAULT_ORDER)
    p_mvrf = mir_sub.add_parser("verify",
                                help="free-energy identity checks")
    p_mvrf.add_argument("--r", required=True,
                        help="comma-separated list of r values")
    p_mvrf.add_argument("--N", type=int, default=DEFAULT_ORDER)

    p_gr = sub.add_parser("graph", help="cell-graph utilities")
    gr_sub = p_gr.add_subparsers(dest="action", required=True)
    p_can = gr_sub.add_parser("canon", help="canonical JSON form")
    p_can.add_argument("--graph", required=True, help="graph JSON file")

    p_all = sub.add_parser("verify-all",
                           help="run the whole verification suite")
    p_all.add_argument("--level", choices=["desk"], default="desk")
    p_all.add_argument("--seed", type=int, default=0)
    return parser


def _load_algebra(spec: str):
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return algebra_from_json(json.load(fh))
    return named_algebra(spec)


def _load_graph(path: str) -> CellGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))


def _parse_mu(text: str | None) -> tuple[int, ...]:
    if not text:
        raise ValueError("--mu is required here (e.g. --mu 3,1)")
    try:
        mu = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"--mu wants comma-separated integers, got {text!r}")
    return mu


def _parse_genus_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


# ----------------------------------------------------------------------
# command handlers
# ----------------------------------------------------------------------

def _cmd_tqft_eval(args) -> int:
    algebra = _load_algebra(args.algebra)
    graph = _load_graph(args.graph)
    coords = json.loads(args.vectors)
    if not isinstance(coords, list) or not all(
            isinstance(v, list) for v in coords):
        raise ValueError("--vectors wants a JSON array of coordinate lists")
    elements = tuple(algebra.element([as_fraction(c) for c in vec])
                     for vec in coords)
    value = evaluate(graph, SlotAssignment(algebra, elements),
                     strategy=get_strategy(args.strategy))
    kind = graph.graph_type()
    _emit({"value": format_fraction(value),
           "type": {"g": kind.g, "n": kind.n}})
    return 0


def _cmd_tqft_verify(args) -> int:
    algebra = _load_algebra(args.algebra)
    failures = 0
    for t in range(args.trials):
        graph = random_graph(1 + t % args.max_edges,
                             seed=args.seed + 7919 * t)
        try:
            verify_independence(graph, algebra, trials=3,
                                seed=args.seed + t)
        except IndependenceError as exc:
            failures += 1
            print(f"FAIL {canonical_json(graph).strip()}: {exc}")
    status = "FAIL" if failures else "PASS"
    print(f"{status}: {args.trials - failures}/{args.trials} random graphs "
          f"(E <= {args.max_edges}) match the closed form "
          f"on {args.algebra}")
    return 1 if failures else 0


def _cmd_hurwitz(args) -> int:
    if args.mode == "table":
        return _cmd_hurwitz_table(args)
    genus = int(args.g)
    mu = _parse_mu(args.mu)
    value = calH(args.r, genus, mu)
    h_value = hurwitz_H(args.r, genus, mu)
    out = {"r": args.r, "g": genus, "mu": list(mu),
           "calH": format_fraction(value), "H": format_fraction(h_value)}
    bad = 0
    if args.oracle:
        checks: dict[str, dict] = {}
        names = (("jpt", "factorization") if args.oracle == "all"
                 else (args.oracle,))
        for name in names:
            oracle_value = _oracle_value(name, args.r, genus, mu)
            if oracle_value is None:
                checks[name] = {"applicable": False}
                continue
            match = oracle_value == h_value
            bad += not match
            checks[name] = {"H": format_fraction(oracle_value),
                            "match": match}
        out["checks"] = checks
    _emit(out)
    return 1 if bad else 0


def _oracle_value(name: str, r: int, genus: int,
                  mu: tuple[int, ...]) -> Fraction | None:
    """The oracle's H value, or None when it does not apply."""
    if name == "jpt":
        if genus != 0 or len(mu) not in (1, 2):
            return None
        if len(mu) == 1:
            return jpt_01(r, mu[0])
        return jpt_02(r, mu[0], mu[1])
    try:
        return factorization_count(r, genus, mu)
    except HurwitzError:
        return None                      # out of the oracle's caps


def _cmd_hurwitz_table(args) -> int:
    if args.d_max is None:
        raise ValueError("hurwitz table needs --d-max")
    rows = hurwitz_rows(args.r, _parse_genus_range(args.g), args.d_max)
    rows.sort(key=lambda row: (row["g"], len(row["mu"]), row["mu"]))
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["r", "g", "n", "mu", "d", "s", "calH", "H"])
        for row in rows:
            writer.writerow([row["r"], row["g"], len(row["mu"]),
                             ",".join(str(m) for m in row["mu"]),
                             row["d"], row["s"],
                             format_fraction(row["calH"]),
                             format_fraction(row["H"])])
    else:
        _emit([{"r": row["r"], "g": row["g"], "n": len(row["mu"]),
                "mu": list(row["mu"]), "d": row["d"], "s": row["s"],
                "calH": format_fraction(row["calH"]),
                "H": format_fraction(row["H"])} for row in rows])
    if args.figure:
        path = plotting.save_hurwitz_figure(rows, args.figure)
        print(f"figure written to {path}", file=sys.stderr)
    return 0


def _cmd_hgraph_count(args) -> int:
    mu = _parse_mu(args.mu)
    weights = class_weights(args.r, args.g, mu)
    _emit({"r": args.r, "g": args.g, "mu": list(mu),
           "classes": [{"graph": json.loads(canonical_json(base)),
                        "weight": format_fraction(weight)}
                       for base, weight in weights],
           "total": format_fraction(sum((w for _, w in weights),
                                        Fraction(0)))})
    return 0


def _cmd_mirror_spectral(args) -> int:
    curve = spectral_y(args.r, args.N)
    _emit({"r": curve.r, "N": curve.order,
           "y_of_x": series_to_json(curve.y_of_x),
           "x_of_z": series_to_json(curve.x_of_z)})
    return 0


def _cmd_mirror_verify(args) -> int:
    try:
        r_values = [int(p) for p in args.r.split(",")]
    except ValueError:
        raise ValueError(f"--r wants comma-separated integers, got {args.r!r}")
    failed = 0
    for r in r_values:
        curve = spectral_y(r, max(args.N, r))
        residual = curve.residual()
        if residual.is_zero():
            print(f"PASS r={r} curve (two routes agree, residual 0, "
                  f"N={curve.order})")
        else:
            failed += 1
            exps, coeff = residual.items()[0]
            print(f"FAIL r={r} curve: residual coefficient {exps} = "
                  f"{format_fraction(coeff)}")
        for report in (verify_f01(r, max(args.N, 2 * r)),
                       verify_f02(r, max(min(args.N, DEFAULT_ORDER_2),
                                         2 * r))):
            if report.ok:
                print(f"PASS r={r} {report.name} (N={report.order})")
            else:
                failed += 1
                print(f"FAIL r={r} {report.name}: {report.failures[0]}")
    print(("FAIL" if failed else "PASS")
          + f": {failed} mismatching identities for r in {r_values}")
    return 1 if failed else 0


def _cmd_graph_canon(args) -> int:
    sys.stdout.write(canonical_json(_load_graph(args.graph)))
    return 0


# ----------------------------------------------------------------------
# the desk suite
# ----------------------------------------------------------------------

def _check_orbifold_example(seed: int) -> str:
    target = Fraction(9, 2)
    assert calH(2, 0, [3, 1]) == target
    assert jpt_02(2, 3, 1) * 3 == target
    assert factorization_count(2, 0, [3, 1]) * 3 == target
    assert enumerate_weighted(2, 0, [3, 1]) == target
    return "recursion = closed form = factorizations = graph count = 9/2"


def _check_tree_counts(seed: int) -> str:
    assert [tree_count(d) for d in range(1, 7)] == [1, 1, 3, 16, 125, 1296]
    for d in range(1, 9):
        assert tree_count(d) == Fraction(d) ** (d - 2)
        assert tree_count(d) == _factorial(d - 1) * calH(1, 0, [d])
    return "d^(d-2) and (d-1)! x recursion for d <= 8"


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _check_jpt(seed: int) -> str:
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
    return f"{checked} one- and two-part profiles, r <= 3"


def _check_factorizations(seed: int) -> str:
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
    return f"{checked} admissible profiles, r <= 2, d <= 6, s <= 4"


def _check_independence(seed: int) -> str:
    algebras = [named_algebra(key) for key in ALGEBRA_KEYS]
    small = [g for g in enumerate_graphs(4) if g.is_connected()]
    for graph in small:
        for algebra in algebras:
            verify_independence(graph, algebra, trials=3, seed=seed)
    for t in range(200):
        graph = random_graph(1 + t % 6, seed=seed + 100003 * t)
        for algebra in algebras:
            verify_independence(graph, algebra, trials=3, seed=seed + t)
    return f"{len(small)} exhaustive (E <= 4) + 200 random (E <= 6) " \
           f"graphs x {len(algebras)} algebras"


def _check_closed_invariants(seed: int) -> str:
    assert named_algebra("center:S3").z_invariant(1) == 3
    z2 = named_algebra("center:Z2")
    for genus in range(6):
        assert z2.z_invariant(genus) == 2 ** genus
    dual = named_algebra("dual-numbers")
    assert dual.z_invariant(1) == 2
    for genus in range(2, 6):
        assert dual.z_invariant(genus) == 0
    return "genus series for center:S3, center:Z2, dual numbers"


def _check_algebra_identities(seed: int) -> str:
    for key in ALGEBRA_KEYS:
        problems = check_identities(named_algebra(key), trials=100,
                                    seed=seed)
        assert not problems, (key, problems)
    return f"100 random instances per identity x {len(ALGEBRA_KEYS)} algebras"


def _check_hom_sets(seed: int) -> str:
    path3 = CellGraph([(0,), (1, 2), (3,)], [(0, 1), (2, 3)])
    loop = CellGraph([(0, 1)], [(0, 1)])
    counts = [len(hom_set(path3, cylinder(1))),
              len(hom_set(path3, CellGraph([()], []))),
              len(hom_set(cylinder(2), loop)),
              len(hom_set(cylinder(2), CellGraph([(), ()], [])))]
    assert counts == [2, 1, 1, 1], counts
    assert sorted(hom_set(path3, cylinder(1))) == [[(0, 1)], [(2, 3)]]
    assert hom_set(cylinder(2),
                   CellGraph([(), ()], [])) == [[(0, 2), (1, 3)]]
    return "contraction-class counts 2, 1, 1, 1 with representatives"


def _check_mirror(seed: int) -> str:
    for r in (1, 2, 3, 4):
        assert spectral_y(r, 20).residual().is_zero(), r
    for r in (1, 2, 3):
        report = verify_f01(r, 20)
        assert report.ok, report.failures
    for r in (1, 2):
        report = verify_f02(r, 12)
        assert report.ok, report.failures
    return "curve r <= 4, one-point r <= 3, two-point r <= 2"


def _branches(graph: CellGraph, edge):
    if graph.is_loop(edge):
        return graph.contract_loop(edge).parts
    return (graph.contract_edge(edge).graph,)


def _two_step_keys(graph: CellGraph, first, second) -> list:
    out = []
    for mid in _branches(graph, first):
        if mid.has_edge(second):
            out.extend(p.unlabeled_key() for p in _branches(mid, second))
        else:
            out.append(mid.unlabeled_key())
    return sorted(out)


def _check_commutativity(seed: int) -> str:
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
    return f"{pairs} edge pairs on {len(graphs)} graphs (E <= 5)"


DESK_CHECKS = (
    ("orbifold-example", _check_orbifold_example),
    ("tree-counts", _check_tree_counts),
    ("jpt-closed-forms", _check_jpt),
    ("factorization-oracle", _check_factorizations),
    ("graph-independence", _check_independence),
    ("closed-surface-invariants", _check_closed_invariants),
    ("algebra-identities", _check_algebra_identities),
    ("hom-sets", _check_hom_sets),
    ("mirror-identities", _check_mirror),
    ("contraction-commutativity", _check_commutativity),
)


def _cmd_verify_all(args) -> int:
    failed = 0
    for name, check in DESK_CHECKS:
        started = time.perf_counter()
        try:
            detail = check(args.seed)
        except AssertionError as exc:
            failed += 1
            print(f"FAIL {name}: {exc}")
            continue
        elapsed = time.perf_counter() - started
        print(f"PASS {name} [{elapsed:.1f}s] {detail}")
    total = len(DESK_CHECKS)
    print(("FAIL" if failed else "PASS")
          + f": {total - failed}/{total} desk checks")
    return 1 if failed else 0


# ----------------------------------------------------------------------
# entry points
# ----------------------------------------------------------------------

def _dispatch(args) -> int:
    if args.command == "tqft":
        return (_cmd_tqft_eval if args.action == "eval"
                else _cmd_tqft_verify)(args)
    if args.command == "hurwitz":
        return _cmd_hurwitz(args)
    if args.command == "hgraph":
        return _cmd_hgraph_count(args)
    if args.command == "mirror":
        return (_cmd_mirror_spectral if args.action == "spectral"
                else _cmd_mirror_verify)(args)
    if args.command == "graph":
        return _cmd_graph_canon(args)
    return _cmd_verify_all(args)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse and execute; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (GraphError, AlgebraError, HurwitzError, DotError, ValueError,
            KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
