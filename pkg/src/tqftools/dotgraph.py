"""Dotted cell graphs: the combinatorial model whose weighted count
reproduces the Hurwitz numbers of module :mod:`tqftools.hurwitz`.

A decorated graph is a cell graph together with r dots on every face
and one marked dot (an "arrow") per vertex.  Dots live at corners: the
corner crossed by a face walk just before it leaves along dart d is
keyed by d, so a dot configuration is a map from darts to counts, with
each face's corners summing to r.  Dots are indistinguishable; within
one corner they are ordered by the walk.  An edgeless graph has a
single vertex and no corners, so its dots are recorded as a bare count
(``free_dots``) and its arrow is left implicit — rotating the dots is
an automorphism, so there is only one marked configuration.

Contracting an edge of the underlying graph transports the decoration:
corners keyed by the two removed darts disappear and their dots slide
forward to the next surviving corner of the same face (``eco1`` for a
straight edge, ``eco2`` for a loop, which may split the graph in two).
A face whose walk uses only the removed darts is pinched away
entirely; its dots become the free dots of the bare vertex this
produces.  The contraction installs a fresh arrow on each vertex it
touches: the arrow marks the last dot that slid across the vanished
edge, recording where the graph was fused — or, when nothing slid,
the first dot found walking the vertex's corners in rotation order
from the fusion point (the documented tie-break for that underspecified
case).  Both operations return an undo record; ``undo`` inverts them
exactly, which is the test that the transport loses nothing.

The count :func:`enumerate_weighted` does not go through the
contraction machinery.  It sums, over isomorphism classes of base
graphs, the number of rigid structures divided by the automorphism
count, where a rigid structure is a dot configuration plus a bijective
labeling of the s edges such that along every face walk the labels
between consecutive dots strictly increase, plus an arrow choice.
Divided by s!, that total equals ``calH`` — checked against the
recursion, the closed forms, and the factorization oracle in the
tests.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .cellgraph import CellGraph, Edge, GraphError, graphs_of_type

Arrow = tuple[int, int, int]          # (vertex label, corner dart, dot index)


class DotError(ValueError):
    """Raised for wrong edge kinds and out-of-cap enumeration requests."""


# ----------------------------------------------------------------------
# the decorated structure
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class DecoratedGraph:
    """A cell graph with r dots per face and one marked dot per vertex."""

    base: CellGraph
    r: int
    dots: tuple[tuple[int, int], ...]
    arrows: tuple[Arrow, ...]
    free_dots: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise DotError("r must be a positive integer")
        counts = tuple(sorted((d, c) for d, c in dict(self.dots).items() if c))
        object.__setattr__(self, "dots", counts)
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    def dot_count(self, dart: int) -> int:
        return dict(self.dots).get(dart, 0)

    @property
    def total_dots(self) -> int:
        return sum(c for _, c in self.dots) + self.free_dots

    def mu(self) -> tuple[int, ...]:
        """Dots per vertex, in label order."""
        totals = [0] * self.base.n
        for dart, c in self.dots:
            totals[self.base.vertex_of(dart)] += c
        if not self.base.darts():
            totals[0] += self.free_dots
        return tuple(totals)

    @property
    def s(self) -> int:
        return self.base.edge_count


def validate(h: DecoratedGraph) -> list[str]:
    """All ways ``h`` fails to be a well-formed decorated graph.

    Checked: the base is connected; dot corners exist; every face
    carries exactly r dots; every vertex carries at least one; there is
    exactly one arrow per vertex, each pointing at a dot of that vertex;
    and for every edge bounding a single face twice, each of the two
    boundary arcs between its occurrences carries at least one dot (so
    in particular no such edge can exist at r = 1).
    """
    out = []
    base, r = h.base, h.r
    if not base.is_connected():
        out.append("base graph is disconnected")
        return out
    counts = dict(h.dots)
    darts = set(base.darts())
    for dart in counts:
        if dart not in darts:
            out.append(f"dot corner {dart} is not a dart of the base")
            return out
    if not darts:
        if h.free_dots != r:
            out.append(f"edgeless graph must carry exactly {r} dots, "
                       f"has {h.free_dots}")
        if h.arrows:
            out.append("edgeless graph carries an implicit arrow, none "
                       "may be stored")
        return out
    if h.free_dots:
        out.append("free dots are only meaningful on an edgeless graph")
    for cycle in base.faces():
        total = sum(counts.get(d, 0) for d in cycle)
        if total != r:
            out.append(f"face {cycle} carries {total} dots, wants {r}")
    for label, total in enumerate(h.mu(), start=1):
        if total < 1:
            out.append(f"vertex {label} carries no dots")
    by_label = [a for a, _, _ in h.arrows]
    if by_label != list(range(1, base.n + 1)):
        out.append(f"need one arrow per vertex 1..{base.n}, "
                   f"found labels {by_label}")
    else:
        for label, dart, index in h.arrows:
            if dart not in darts or base.vertex_of(dart) + 1 != label:
                out.append(f"arrow of vertex {label} sits at foreign "
                           f"corner {dart}")
            elif not 0 <= index < counts.get(dart, 0):
                out.append(f"arrow of vertex {label} points at missing "
                           f"dot {index} of corner {dart}")
    out.extend(_doubled_edge_violations(base, r, counts))
    return out


def _doubled_edge_violations(base: CellGraph, r: int,
                             counts: Mapping[int, int]) -> list[str]:
    """Edges bounding one face twice must have dots on both sides."""
    out = []
    pos = {d: (fi, t) for fi, cycle in enumerate(base.faces())
           for t, d in enumerate(cycle)}
    for a, b in base.edges:
        (fa, ta), (fb, tb) = pos[a], pos[b]
        if fa != fb:
            continue
        cycle = base.faces()[fa]
        k = len(cycle)
        arc = [cycle[(ta + 1 + t) % k] for t in range((tb - ta) % k)]
        between = sum(counts.get(d, 0) for d in arc)
        if not 0 < between < r:
            out.append(f"edge {(a, b)} bounds face {fa} twice with "
                       f"{between} of {r} dots on one side")
    return out


# ----------------------------------------------------------------------
# contraction
# ----------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class EcoTrace:
    """Undo record for one contraction step.

    ``darts`` is the removed pair ordered (kept side, removed side) for
    an edge and (lesser, greater) for a loop; ``arcs`` are the two
    rotation arcs that follow those darts in the original rotations;
    ``runs`` lists, per surviving target corner, the removed corners
    whose dots slid onto it (in walk order, with their dot counts);
    ``orphans`` are pinched-away face cycles with their dot counts; and
    ``removed_arrows`` are the arrows of the touched vertices.
    """

    kind: str
    darts: tuple[int, int]
    labels: tuple[int, ...]
    arcs: tuple[tuple[int, ...], tuple[int, ...]]
    runs: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    orphans: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    removed_arrows: tuple[Arrow, ...]
    part_labels: tuple[tuple[int, ...], ...] = ()


def _flow(base: CellGraph, removed: frozenset, counts: Mapping[int, int]):
    """Slide the dots of removed corners forward within each face."""
    new = {d: c for d, c in counts.items() if d not in removed}
    runs = []
    orphans = []
    for cycle in base.faces():
        if all(d in removed for d in cycle):
            orphans.append((cycle, tuple(counts.get(d, 0) for d in cycle)))
            continue
        k = len(cycle)
        for idx, d in enumerate(cycle):
            if d in removed:
                continue
            run = []
            t = (idx - 1) % k
            while cycle[t] in removed:
                run.append(cycle[t])
                t = (t - 1) % k
            if run:
                run.reverse()
                entries = tuple((rd, counts.get(rd, 0)) for rd in run)
                runs.append((d, entries))
                new[d] = new.get(d, 0) + sum(c for _, c in entries)
    return new, tuple(runs), tuple(orphans)


def _block_end(runs, target: int, removed_dart: int) -> int | None:
    """Walk-order index of the last dot that slid from removed_dart
    onto target, or None when that block is empty."""
    for dart, entries in runs:
        if dart != target:
            continue
        before = 0
        for rd, c in entries:
            if rd == removed_dart:
                return before + c - 1 if c else None
            before += c
    return None


def _rotation_fallback(rotation: Sequence[int], start_dart: int,
                       counts: Mapping[int, int]) -> tuple[int, int]:
    """First dot met walking the vertex's corners from the fusion
    point, in rotation order; the vertex always has one."""
    k = rotation.index(start_dart)
    for step in range(len(rotation)):
        dart = rotation[(k + step) % len(rotation)]
        if counts.get(dart, 0):
            return dart, 0
    raise AssertionError("vertex with no dots — invalid input decoration")


def _successor(base: CellGraph, removed: frozenset, dart: int) -> int | None:
    """Next surviving dart after ``dart`` in its face cycle."""
    nxt = base.sigma(base.iota(dart))
    while nxt in removed:
        if nxt == dart:
            return None
        nxt = base.sigma(base.iota(nxt))
    return nxt


def eco1(h: DecoratedGraph, edge: Edge) -> tuple[DecoratedGraph, EcoTrace]:
    """Contract a straight edge, transporting dots and re-arrowing the
    merged vertex (see the module notes for the conventions)."""
    base = h.base
    a, b = sorted(edge)
    if not base.has_edge((a, b)) or base.is_loop((a, b)):
        raise DotError(f"eco1 needs a straight edge of the graph, not {edge}")
    if base.vertex_of(a) > base.vertex_of(b):
        a, b = b, a
    va, vb = base.vertex_of(a), base.vertex_of(b)
    rot_i, rot_j = base.vertices[va], base.vertices[vb]
    ri, rj = rot_i.index(a), rot_j.index(b)
    arc_i = rot_i[ri + 1:] + rot_i[:ri]
    arc_j = rot_j[rj + 1:] + rot_j[:rj]
    ec = base.contract_edge((a, b))
    kept, removed_label = ec.kept_label, ec.removed_label
    counts = dict(h.dots)
    new_counts, runs, orphans = _flow(base, frozenset((a, b)), counts)
    removed_arrows = tuple(ar for ar in h.arrows
                           if ar[0] in (kept, removed_label))
    trace = EcoTrace("edge", (a, b), (kept, removed_label), (arc_i, arc_j),
                     runs, orphans, removed_arrows)
    if not ec.graph.edges:
        # the whole graph was one edge: result is the bare vertex and
        # every dot it carried becomes free
        free = sum(c for _, cs in orphans for c in cs)
        return DecoratedGraph(ec.graph, h.r, (), (), free), trace
    arrows = [ar for ar in h.arrows if ar[0] not in (kept, removed_label)]
    arrows = [(lab if lab < removed_label else lab - 1, d, i)
              for lab, d, i in arrows]
    target = _successor(base, frozenset((a, b)), a)
    index = _block_end(runs, target, a)
    if index is None:
        target, index = _rotation_fallback(ec.graph.vertices[kept - 1],
                                           target, new_counts)
    arrows.append((kept, target, index))
    out = DecoratedGraph(ec.graph, h.r, tuple(new_counts.items()),
                         tuple(arrows))
    return out, trace


def eco2(h: DecoratedGraph, edge: Edge
         ) -> tuple[tuple[DecoratedGraph, ...], EcoTrace]:
    """Contract a loop, splitting its vertex (and possibly the graph).

    Returns the resulting decorated parts — one graph, or two when the
    loop separates — and the undo record.
    """
    base = h.base
    a, b = sorted(edge)
    if not base.has_edge((a, b)) or not base.is_loop((a, b)):
        raise DotError(f"eco2 needs a loop of the graph, not {edge}")
    label = base.vertex_of(a) + 1
    rot = base.vertices[label - 1]
    k = rot.index(a)
    rot = rot[k:] + rot[:k]
    split = rot.index(b)
    arc_a, arc_b = rot[1:split], rot[split + 1:]
    lc = base.contract_loop((a, b))
    counts = dict(h.dots)
    new_counts, runs, orphans = _flow(base, frozenset((a, b)), counts)
    # a pinched face lies on the side of the loop whose arc is empty
    free = {"A": 0, "B": 0}
    for cycle, cs in orphans:
        free["B" if set(cycle) == {a} else "A"] += sum(cs)

    def new_arrow(part_rot, loop_dart):
        target = _successor(base, frozenset((a, b)), loop_dart)
        index = _block_end(runs, target, loop_dart)
        if index is None:
            target, index = _rotation_fallback(part_rot, target, new_counts)
        return target, index

    removed_arrow = tuple(ar for ar in h.arrows if ar[0] == label)
    part_label_sets = []
    parts = []
    for part, tokens in zip(lc.parts, lc.part_tokens):
        union_labels = tuple(
            label if t == "A" else label + 1 if t == "B" else
            t if t < label else t + 1
            for t in tokens)
        part_label_sets.append(union_labels)
        part_counts = {d: new_counts[d] for rot_ in part.vertices
                       for d in rot_ if new_counts.get(d, 0)}
        arrows = []
        part_free = 0
        for pos, u in enumerate(union_labels, start=1):
            rot_here = part.vertices[pos - 1]
            if u == label:
                if rot_here:
                    arrows.append((pos,) + new_arrow(rot_here, b))
                else:
                    part_free = free["A"]
            elif u == label + 1:
                if rot_here:
                    arrows.append((pos,) + new_arrow(rot_here, a))
                else:
                    part_free = free["B"]
            else:
                orig = u if u < label else u - 1
                lab, d, i = next(ar for ar in h.arrows if ar[0] == orig)
                arrows.append((pos, d, i))
        parts.append(DecoratedGraph(part, h.r, tuple(part_counts.items()),
                                    tuple(arrows), part_free))
    trace = EcoTrace("loop", (a, b), (label,), (arc_a, arc_b), runs,
                     orphans, removed_arrow, tuple(part_label_sets))
    return tuple(parts), trace


def undo(trace: EcoTrace, result) -> DecoratedGraph:
    """Exact inverse of eco1/eco2 from its trace.  ``result`` is the
    decorated graph (eco1) or the tuple of parts (eco2)."""
    if trace.kind == "edge":
        return _undo_edge(trace, result)
    return _undo_loop(trace, tuple(result))


def _restore_counts(counts: dict, trace: EcoTrace) -> dict:
    for target, entries in trace.runs:
        counts[target] = counts.get(target, 0) - sum(c for _, c in entries)
        for rd, c in entries:
            counts[rd] = c
    for cycle, cs in trace.orphans:
        for d, c in zip(cycle, cs):
            counts[d] = c
    return {d: c for d, c in counts.items() if c}


def _undo_edge(trace: EcoTrace, result: DecoratedGraph) -> DecoratedGraph:
    a, b = trace.darts
    kept, removed = trace.labels
    arc_i, arc_j = trace.arcs
    verts = list(result.base.vertices)
    verts[kept - 1] = (a,) + arc_i
    verts.insert(removed - 1, (b,) + arc_j)
    edges = list(result.base.edges) + [(min(a, b), max(a, b))]
    base = CellGraph(verts, edges)
    counts = _restore_counts(dict(result.dots), trace)
    arrows = [(lab if lab < removed else lab + 1, d, i)
              for lab, d, i in result.arrows if lab != kept]
    arrows += list(trace.removed_arrows)
    return DecoratedGraph(base, result.r, tuple(counts.items()),
                          tuple(arrows))


def _undo_loop(trace: EcoTrace,
               parts: tuple[DecoratedGraph, ...]) -> DecoratedGraph:
    a, b = trace.darts
    (label,) = trace.labels
    arc_a, arc_b = trace.arcs
    n_union = sum(p.base.n for p in parts)
    union_rots: list[tuple[int, ...] | None] = [None] * n_union
    counts: dict[int, int] = {}
    arrows: list[Arrow] = []
    r = parts[0].r
    for part, union_labels in zip(parts, trace.part_labels):
        for pos, u in enumerate(union_labels, start=1):
            union_rots[u - 1] = part.base.vertices[pos - 1]
        counts.update(dict(part.dots))
        for lab, d, i in part.arrows:
            u = union_labels[lab - 1]
            if u not in (label, label + 1):
                orig = u if u < label else u - 1
                arrows.append((orig, d, i))
    verts = (union_rots[:label - 1]
             + [(a,) + arc_a + (b,) + arc_b]
             + union_rots[label + 1:])
    edges = sorted({e for p in parts for e in p.base.edges}
                   | {(min(a, b), max(a, b))})
    base = CellGraph(verts, edges)
    counts = _restore_counts(counts, trace)
    arrows += list(trace.removed_arrows)
    return DecoratedGraph(base, r, tuple(counts.items()), tuple(arrows))


# ----------------------------------------------------------------------
# weighted enumeration
# ----------------------------------------------------------------------

_MAX_DOTS = 8
_MAX_EDGES = 4


def _dot_configs(base: CellGraph, r: int,
                 mu: Sequence[int]) -> Iterator[dict[int, int]]:
    """Corner counts with r dots per face and mu_i at vertex i."""
    faces = base.faces()
    need = list(mu)

    def rec(fi: int, config: dict):
        if fi == len(faces):
            if all(v == 0 for v in need):
                yield dict(config)
            return
        cycle = faces[fi]
        owners = [base.vertex_of(d) for d in cycle]

        def place(t: int, left: int):
            if t == len(cycle):
                if left == 0:
                    yield from rec(fi + 1, config)
                return
            cap = min(left, need[owners[t]])
            for c in range(cap + 1):
                if c:
                    config[cycle[t]] = c
                    need[owners[t]] -= c
                yield from place(t + 1, left - c)
                if c:
                    del config[cycle[t]]
                    need[owners[t]] += c

        yield from place(0, r)

    yield from rec(0, {})


def _labeling_count(base: CellGraph, config: Mapping[int, int]) -> int:
    """Edge labelings 1..s whose labels strictly increase along every
    dot-free stretch of every face walk."""
    edge_index = {}
    for idx, (x, y) in enumerate(base.edges):
        edge_index[x] = edge_index[y] = idx
    stretches = []
    for cycle in base.faces():
        k = len(cycle)
        start = next(t for t, d in enumerate(cycle) if config.get(d, 0))
        run: list[int] = []
        for step in range(k):
            d = cycle[(start + step) % k]
            if config.get(d, 0) and run:
                stretches.append(run)
                run = []
            run.append(edge_index[d])
        stretches.append(run)
    total = 0
    for perm in itertools.permutations(range(len(base.edges))):
        if all(all(perm[x] < perm[y] for x, y in zip(run, run[1:]))
               for run in stretches):
            total += 1
    return total


def class_weights(r: int, g: int, mu: Sequence[int]
                  ) -> list[tuple[CellGraph, Fraction]]:
    """Per-isomorphism-class contributions to the weighted count: the
    number of rigid structures over s! times the automorphism count."""
    mu = tuple(int(m) for m in mu)
    if g < 0 or not mu or min(mu) < 1:
        return []
    d = sum(mu)
    if d % r:
        return []
    s = 2 * g - 2 + d // r + len(mu)
    if s < 0:
        return []
    if d > _MAX_DOTS or s > _MAX_EDGES:
        raise DotError(f"enumeration capped at {_MAX_DOTS} dots "
                       f"and {_MAX_EDGES} edges")
    if s == 0:
        # the edgeless graph: one dot configuration, arrow implicit
        return [(CellGraph([()], []), Fraction(1))] if mu == (r,) else []
    arrow_choices = math.prod(mu)
    out = []
    for base in graphs_of_type(g, len(mu), s):
        structures = sum(_labeling_count(base, config)
                         for config in _dot_configs(base, r, mu))
        if structures:
            weight = Fraction(structures * arrow_choices,
                              math.factorial(s) * base.automorphism_count())
            out.append((base, weight))
    return out


def enumerate_weighted(r: int, g: int, mu: Sequence[int]) -> Fraction:
    """Total mass of decorated graphs for the profile; agrees with
    ``calH`` (the tests pin this on every in-cap profile)."""
    return sum((w for _, w in class_weights(r, g, mu)), Fraction(0))


def decorated_graphs(r: int, g: int, mu: Sequence[int]
                     ) -> Iterator[DecoratedGraph]:
    """Every genuine decorated graph for the profile, one per
    (base class, dot configuration, arrow choice).

    Genuine means the dot configuration admits at least one rigid edge
    labeling.  That is stricter than passing :func:`validate`: a
    configuration can satisfy all the local conditions yet support no
    labeling, and on such strays the contraction operations may leave a
    vertex dotless — the closure guarantee belongs to the model, not to
    the local conditions (the counting anchors pin the model as the
    authoritative reading).
    """
    mu = tuple(int(m) for m in mu)
    if g < 0 or not mu or min(mu) < 1 or sum(mu) % r:
        return
    d = sum(mu)
    s = 2 * g - 2 + d // r + len(mu)
    if s < 0:
        return
    if d > _MAX_DOTS or s > _MAX_EDGES:
        raise DotError(f"enumeration capped at {_MAX_DOTS} dots "
                       f"and {_MAX_EDGES} edges")
    if s == 0:
        if mu == (r,):
            yield DecoratedGraph(CellGraph([()], []), r, (), (), r)
        return
    for base in graphs_of_type(g, len(mu), s):
        for config in _dot_configs(base, r, mu):
            if not _labeling_count(base, config):
                continue
            corners = [[] for _ in range(base.n)]
            for dart, c in config.items():
                vi = base.vertex_of(dart)
                corners[vi] += [(dart, i) for i in range(c)]
            for combo in itertools.product(*corners):
                arrows = tuple((lab, d, i)
                               for lab, (d, i) in enumerate(combo, start=1))
                yield DecoratedGraph(base, r, tuple(config.items()), arrows)
