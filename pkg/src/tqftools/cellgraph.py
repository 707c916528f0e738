"""Cell graphs: vertex-labeled graphs embedded in closed oriented surfaces.

A graph is stored as a rotation system: every edge contributes two darts
(half-edges, arbitrary distinct non-negative integers), each vertex is
the counter-clockwise cyclic sequence of its darts, and the edge list
pairs the darts up.  Vertex labels are positions: ``vertices[k]`` is the
rotation of the vertex labeled ``k + 1``.  Vertices with empty rotations
are legal (they arise as contraction results).

Conventions used throughout:

* Faces are the cycles of sigma∘iota, where sigma maps a dart to the
  next dart counter-clockwise at its vertex and iota swaps the two darts
  of an edge.  Under this convention a planar loop has two faces.
* Contracting a straight edge between labels i < j merges the two
  rotations (i-side arc first) into the vertex labeled i; labels above j
  shift down.
* Contracting a loop at label i splits the vertex in two: the arc
  following the loop's smaller dart keeps label i, the other arc becomes
  a new vertex inserted immediately after (label i + 1); higher labels
  shift up.  The result may be disconnected, in which case both the
  single "union" view and the two relabeled components are returned.
* Isomorphisms preserve vertex labels.  The canonical form relabels
  darts by a breadth-first traversal (over sigma and iota) seeded at
  each dart of vertex 1 and takes the lexicographically least encoding;
  the number of seeds attaining the minimum is the automorphism count,
  since an automorphism is determined by the image of a single dart.

Wire format (JSON): ``{"vertices": [[dart ids ccw], ...],
"edges": [[d1, d2], ...]}``.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import json
import random
from collections import deque
from typing import Iterable, Mapping, Sequence

Dart = int
Edge = tuple[Dart, Dart]


class GraphError(ValueError):
    """Malformed graph data or an operation's precondition failed."""


def _rotate_to_min(rot: tuple[int, ...]) -> tuple[int, ...]:
    if not rot:
        return rot
    k = rot.index(min(rot))
    return rot[k:] + rot[:k]


@dataclasses.dataclass(frozen=True)
class GraphType:
    """Topological type of a connected cell graph."""

    g: int
    n: int
    faces: int

    @property
    def m(self) -> int:
        """Complexity 2g - 2 + n; drops by one under any contraction."""
        return 2 * self.g - 2 + self.n


class CellGraph:
    """An immutable vertex-labeled rotation system."""

    __slots__ = ("vertices", "edges", "_dart_vertex", "_iota", "_sigma",
                 "_faces", "_canon", "_ukey")

    def __init__(self, vertices: Iterable[Iterable[int]],
                 edges: Iterable[Iterable[int]]):
        vlist = tuple(_rotate_to_min(tuple(int(d) for d in rot))
                      for rot in vertices)
        elist = []
        for e in edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise GraphError("an edge needs two distinct darts")
            elist.append((min(a, b), max(a, b)))
        self.vertices = vlist
        self.edges = tuple(sorted(elist))

        dart_vertex: dict[int, int] = {}
        sigma: dict[int, int] = {}
        for vi, rot in enumerate(vlist):
            for k, d in enumerate(rot):
                if d in dart_vertex:
                    raise GraphError(f"dart {d} appears twice")
                dart_vertex[d] = vi
                sigma[d] = rot[(k + 1) % len(rot)]
        iota: dict[int, int] = {}
        for a, b in self.edges:
            for d in (a, b):
                if d not in dart_vertex:
                    raise GraphError(f"edge dart {d} not attached to a vertex")
                if d in iota:
                    raise GraphError(f"dart {d} used by two edges")
            iota[a] = b
            iota[b] = a
        if len(iota) != len(dart_vertex):
            raise GraphError("every dart must belong to exactly one edge")
        self._dart_vertex = dart_vertex
        self._sigma = sigma
        self._iota = iota
        self._faces = None
        self._canon = None
        self._ukey = None

    # -- read access ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def darts(self) -> list[int]:
        return sorted(self._dart_vertex)

    def vertex_of(self, dart: int) -> int:
        """0-based vertex index of a dart (label minus one)."""
        return self._dart_vertex[dart]

    def iota(self, dart: int) -> int:
        return self._iota[dart]

    def sigma(self, dart: int) -> int:
        return self._sigma[dart]

    def degree(self, label: int) -> int:
        return len(self.vertices[label - 1])

    def has_edge(self, edge: Sequence[int]) -> bool:
        a, b = sorted(edge)
        return (a, b) in set(self.edges)

    def is_loop(self, edge: Sequence[int]) -> bool:
        a, b = edge
        return self._dart_vertex[a] == self._dart_vertex[b]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"CellGraph(vertices={self.vertices}, edges={self.edges})"

    # -- topology ------------------------------------------------------

    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Cycles of sigma∘iota, each starting at its least dart, sorted."""
        if self._faces is None:
            remaining = set(self._dart_vertex)
            cycles = []
            while remaining:
                start = min(remaining)
                walk = [start]
                remaining.discard(start)
                d = self._sigma[self._iota[start]]
                while d != start:
                    walk.append(d)
                    remaining.discard(d)
                    d = self._sigma[self._iota[d]]
                cycles.append(tuple(walk))
            self._faces = tuple(sorted(cycles))
        return self._faces

    def face_of_dart(self) -> dict[int, int]:
        out = {}
        for fi, walk in enumerate(self.faces()):
            for d in walk:
                out[d] = fi
        return out

    def is_connected(self) -> bool:
        return len(self._component_indices()) == 1

    def _component_indices(self) -> list[list[int]]:
        adj: dict[int, set[int]] = {vi: set() for vi in range(self.n)}
        for a, b in self.edges:
            va, vb = self._dart_vertex[a], self._dart_vertex[b]
            adj[va].add(vb)
            adj[vb].add(va)
        seen: set[int] = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in sorted(adj[v]):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def components(self) -> list[tuple["CellGraph", tuple[int, ...]]]:
        """Connected components as (relabeled graph, original labels).

        Component vertex order preserves the global label order, and the
        components themselves are listed by least global label.
        """
        out = []
        for comp in self._component_indices():
            vertex_set = set(comp)
            verts = [self.vertices[vi] for vi in comp]
            edges = [e for e in self.edges
                     if self._dart_vertex[e[0]] in vertex_set]
            out.append((CellGraph(verts, edges),
                        tuple(vi + 1 for vi in comp)))
        return out

    def graph_type(self) -> GraphType:
        """(g, n, faces) of a connected graph; raises when disconnected."""
        if not self.is_connected():
            raise GraphError("graph_type needs a connected graph; "
                             "use components() first")
        # a bare vertex is a sphere with one 0-cell and one 2-cell
        nfaces = len(self.faces()) if self._dart_vertex else 1
        chi = self.n - self.edge_count + nfaces
        if (2 - chi) % 2:
            raise GraphError("odd Euler characteristic — not a rotation system?")
        g = (2 - chi) // 2
        if g < 0:
            raise GraphError("negative genus — malformed graph")
        return GraphType(g, self.n, nfaces)

    def component_types(self) -> list[GraphType]:
        return [part.graph_type() for part, _ in self.components()]

    # -- canonical form ------------------------------------------------

    def _bfs_positions(self, seed: int) -> dict[int, int]:
        pos = {seed: 0}
        queue = deque([seed])
        while queue:
            d = queue.popleft()
            for nxt in (self._sigma[d], self._iota[d]):
                if nxt not in pos:
                    pos[nxt] = len(pos)
                    queue.append(nxt)
        return pos

    def _encode(self, pos: Mapping[int, int]) -> tuple:
        rots = tuple(_rotate_to_min(tuple(pos[d] for d in rot))
                     for rot in self.vertices)
        edges = tuple(sorted(tuple(sorted((pos[a], pos[b])))
                             for a, b in self.edges))
        return (self.n, rots, edges)

    def _connected_canon(self) -> tuple[tuple, int, list[dict[int, int]]]:
        """(least encoding, automorphism count, dart maps) — connected only."""
        if not self._dart_vertex:
            return ((self.n, ((),) * self.n, ()), 1, [{}])
        seeds = self.vertices[0]
        best = None
        best_pos = []
        for seed in seeds:
            pos = self._bfs_positions(seed)
            enc = self._encode(pos)
            if best is None or enc < best:
                best = enc
                best_pos = [pos]
            elif enc == best:
                best_pos.append(pos)
        ref = best_pos[0]
        inv_ref = {v: k for k, v in ref.items()}
        autos = []
        for pos in best_pos:
            inv = {v: k for k, v in pos.items()}
            autos.append({d: inv[ref[d]] for d in ref})
        return best, len(best_pos), autos

    def _canonical_data(self):
        if self._canon is None:
            comps = self.components()
            if len(comps) == 1:
                self._canon = self._connected_canon()
            else:
                offset = 0
                rot_by_label: dict[int, tuple[int, ...]] = {}
                all_edges: list[tuple[int, int]] = []
                count = 1
                auto_lists: list[list[dict[int, int]]] = []
                for part, labels in comps:
                    enc, c, autos = part._connected_canon()
                    _, rots, edges = enc
                    for label, rot in zip(labels, rots):
                        rot_by_label[label] = tuple(d + offset for d in rot)
                    all_edges.extend((a + offset, b + offset) for a, b in edges)
                    count *= c
                    auto_lists.append(autos)
                    offset += sum(len(r) for r in rots)
                enc = (self.n,
                       tuple(rot_by_label.get(l, ())
                             for l in range(1, self.n + 1)),
                       tuple(sorted(all_edges)))
                merged_autos = []
                for combo in itertools.product(*auto_lists):
                    m: dict[int, int] = {}
                    for a in combo:
                        m.update(a)
                    merged_autos.append(m)
                self._canon = (enc, count, merged_autos)
        return self._canon

    def canonical_key(self) -> tuple:
        """A hashable total invariant of labeled isomorphism."""
        return self._canonical_data()[0]

    def canonical_form(self) -> "CellGraph":
        """The canonically dart-relabeled representative of this graph."""
        n, rots, edges = self.canonical_key()
        return CellGraph(rots, edges)

    def automorphism_count(self) -> int:
        return self._canonical_data()[1]

    def automorphisms(self) -> list[dict[int, int]]:
        """All label-preserving automorphisms as dart maps."""
        return self._canonical_data()[2]

    def unlabeled_key(self) -> tuple:
        """Isomorphism invariant that forgets vertex labels.

        Contracting two edges in either order gives identical unlabeled
        keys, whereas the strict labeled canonical forms can differ by
        a transposition of the labels handed to split vertices (which
        label a loop contraction's halves receive depends on how many
        splits happened before it).
        """
        if self._ukey is None:
            comps = self.components()
            keys = []
            for part, _ in comps:
                if not part._dart_vertex:
                    keys.append(((), ()))
                    continue
                best = None
                for seed in part._dart_vertex:
                    pos = part._bfs_positions(seed)
                    rots = tuple(sorted(
                        _rotate_to_min(tuple(pos[d] for d in rot))
                        for rot in part.vertices))
                    edges = tuple(sorted(tuple(sorted((pos[a], pos[b])))
                                         for a, b in part.edges))
                    enc = (rots, edges)
                    if best is None or enc < best:
                        best = enc
                keys.append(best)
            self._ukey = tuple(sorted(keys))
        return self._ukey

    # -- contractions --------------------------------------------------

    def contract_edge(self, edge: Sequence[int]) -> "EdgeContraction":
        """Contract a straight edge; the merged vertex keeps the smaller
        label and larger labels close the gap."""
        a, b = sorted(edge)
        if self._iota.get(a) != b:
            raise GraphError(f"edge {(a, b)} is not in the graph")
        va, vb = self._dart_vertex[a], self._dart_vertex[b]
        if va == vb:
            raise GraphError("contract_edge needs a straight edge, not a loop")
        if va > vb:
            a, b = b, a
            va, vb = vb, va
        rot_i = self.vertices[va]
        rot_j = self.vertices[vb]
        ri = rot_i.index(a)
        rj = rot_j.index(b)
        arc_i = rot_i[ri + 1:] + rot_i[:ri]
        arc_j = rot_j[rj + 1:] + rot_j[:rj]
        verts = list(self.vertices)
        verts[va] = arc_i + arc_j
        del verts[vb]
        edges = [e for e in self.edges if e != (min(a, b), max(a, b))]
        return EdgeContraction(CellGraph(verts, edges), va + 1, vb + 1)

    def contract_loop(self, edge: Sequence[int]) -> "LoopContraction":
        """Contract a loop, splitting its vertex in two (see module doc)."""
        a, b = sorted(edge)
        if self._iota.get(a) != b:
            raise GraphError(f"edge {(a, b)} is not in the graph")
        vi = self._dart_vertex[a]
        if vi != self._dart_vertex[b]:
            raise GraphError("contract_loop needs a loop")
        label = vi + 1
        rot = self.vertices[vi]
        k = rot.index(a)
        rot = rot[k:] + rot[:k]          # starts with the smaller dart a
        split = rot.index(b)
        arc_a = rot[1:split]             # keeps the label
        arc_b = rot[split + 1:]          # becomes label + 1
        verts = list(self.vertices)
        verts[vi:vi + 1] = [arc_a, arc_b]
        edges = [e for e in self.edges if e != (a, b)]
        union = CellGraph(verts, edges)

        def token(union_label: int):
            if union_label < label:
                return union_label
            if union_label == label:
                return "A"
            if union_label == label + 1:
                return "B"
            return union_label - 1

        comps = union.components()
        if len(comps) == 1:
            parts = (union,)
            tokens = (tuple(token(l) for l in range(1, union.n + 1)),)
        else:
            decorated = [(part, tuple(token(l) for l in labels))
                         for part, labels in comps]
            decorated.sort(key=lambda pt: "A" not in pt[1])
            parts = tuple(p for p, _ in decorated)
            tokens = tuple(t for _, t in decorated)
        return LoopContraction(len(comps) == 1, union, parts, tokens, label)

    def contract_any(self, edge: Sequence[int]) -> "CellGraph":
        """Contract either kind of edge, returning the single (possibly
        disconnected) result graph."""
        if self.is_loop(edge):
            return self.contract_loop(edge).union
        return self.contract_edge(edge).graph

    def delete_edge(self, edge: Sequence[int]) -> "CellGraph":
        """Remove an edge and its two darts, keeping all vertices."""
        a, b = sorted(edge)
        if self._iota.get(a) != b:
            raise GraphError(f"edge {(a, b)} is not in the graph")
        verts = [tuple(d for d in rot if d not in (a, b))
                 for rot in self.vertices]
        return CellGraph(verts, [e for e in self.edges if e != (a, b)])


@dataclasses.dataclass(frozen=True)
class EdgeContraction:
    """Result of contracting a straight edge between labels i < j."""

    graph: CellGraph
    kept_label: int
    removed_label: int


@dataclasses.dataclass(frozen=True)
class LoopContraction:
    """Result of contracting a loop at ``base_label``.

    ``union`` is the single result graph (possibly disconnected) whose
    labels follow the i/i+1 insertion rule.  ``parts`` are its connected
    components relabeled 1..k, listed with the component containing the
    first split vertex ("A") first; ``part_tokens`` gives, per part, the
    original label of each vertex — with the two split halves marked by
    the strings "A" and "B".
    """

    connected: bool
    union: CellGraph
    parts: tuple[CellGraph, ...]
    part_tokens: tuple[tuple[object, ...], ...]
    base_label: int


# ----------------------------------------------------------------------
# connected sum
# ----------------------------------------------------------------------

def connected_sum(g1: CellGraph, p: int, g2: CellGraph, q: int) -> CellGraph:
    """Join g1 and g2 by deleting vertex p of g1 and vertex q of g2 and
    welding the dangling darts, q-side in the opposite cyclic order.

    Preconditions: deg(p) = deg(q) = d >= 1; no loops at q and the d
    corners of q lie in d distinct faces.  Loops at p are allowed and
    resolve to an edge joining their two weld partners.  The result's
    vertex order splices g2's labels (minus q) in at p's position.
    """
    d = g1.degree(p)
    if d != g2.degree(q):
        raise GraphError("connected_sum needs vertices of equal degree")
    if d == 0:
        raise GraphError("cannot weld at an isolated vertex")
    rot_q = g2.vertices[q - 1]
    if any(g2.vertex_of(g2.iota(y)) == q - 1 for y in rot_q):
        raise GraphError("the second graph may not have loops at the weld vertex")
    face_of = g2.face_of_dart()
    incident = {face_of[g2.iota(y)] for y in rot_q}
    if len(incident) != d:
        raise GraphError("the weld vertex must meet d distinct faces")

    offset = max(g1.darts(), default=-1) + 1
    rot_p = g1.vertices[p - 1]
    x = list(rot_p)
    y = list(rot_q)
    partners = [y[0]] + y[:0:-1]               # opposite cyclic order
    endpoint = [g2.iota(t) + offset for t in partners]

    edges: list[tuple[int, int]] = []
    for e in g1.edges:
        at_p = [g1.vertex_of(e[0]) == p - 1, g1.vertex_of(e[1]) == p - 1]
        if not any(at_p):
            edges.append(e)
    for e in g2.edges:
        if g2.vertex_of(e[0]) != q - 1 and g2.vertex_of(e[1]) != q - 1:
            edges.append((e[0] + offset, e[1] + offset))
    handled: set[int] = set()
    for k, xk in enumerate(x):
        if xk in handled:
            continue
        partner = g1.iota(xk)
        if g1.vertex_of(partner) == p - 1:     # a loop at p: one-hop chain
            k2 = x.index(partner)
            edges.append((endpoint[k], endpoint[k2]))
            handled.update((xk, partner))
        else:
            edges.append((partner, endpoint[k]))
            handled.add(xk)

    verts = ([rot for i, rot in enumerate(g1.vertices) if i != p - 1])
    spliced = [tuple(d2 + offset for d2 in rot)
               for i, rot in enumerate(g2.vertices) if i != q - 1]
    verts[p - 1:p - 1] = spliced
    return CellGraph(verts, edges)


def cylinder(d: int) -> CellGraph:
    """Two vertices joined by d parallel planar edges (type (0, 2) with
    d faces).  Welding a graph with a cylinder at either end is a no-op
    up to isomorphism, which makes this the basic sanity fixture for
    connected_sum.
    """
    if d < 1:
        raise GraphError("need degree >= 1")
    top = tuple(range(d))
    bottom = tuple(2 * d - 1 - k for k in range(d))
    edges = [(k, k + d) for k in range(d)]
    return CellGraph([top, bottom], edges)


def weld_inverse_piece(d: int, p: int) -> CellGraph:
    """The planar three-vertex piece that undoes a straight-edge
    contraction.

    Vertex 1 carries dart 0 plus the first p stubs, vertex 2 carries
    dart 1 plus the remaining d - p stubs, and vertex 3 is a degree-d
    weld vertex.  For a graph gamma with a degree-d vertex v whose
    stored rotation is split after position p, ``connected_sum(gamma,
    v, weld_inverse_piece(d, p), 3)`` followed by contracting the
    created edge (the two smallest fresh darts) returns a graph equal
    to gamma up to canonical form.
    """
    if not 0 <= p <= d or d < 1:
        raise GraphError("need d >= 1 and 0 <= p <= d")
    stubs = list(range(2, 2 + d))
    weld = list(range(2 + d, 2 + 2 * d))
    v1 = (0,) + tuple(stubs[:p])
    v2 = (1,) + tuple(stubs[p:])
    edges = [(0, 1)] + [(weld[j], stubs[-j % d]) for j in range(d)]
    return CellGraph([v1, v2, weld], edges)


# ----------------------------------------------------------------------
# generation
# ----------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _graphs_with_edges(e: int) -> tuple[CellGraph, ...]:
    if e == 0:
        return (CellGraph([()], []),)
    out: dict[tuple, CellGraph] = {}
    for base in _graphs_with_edges(e - 1):
        mx = max(base.darts(), default=-1) + 1
        x, y = mx, mx + 1
        verts = base.vertices
        n = len(verts)

        def emit(new_verts, extra_edge):
            cand = CellGraph(new_verts, list(base.edges) + [extra_edge])
            key = cand.canonical_key()
            if key not in out:
                out[key] = cand.canonical_form()

        # (a) both darts at existing vertices
        for v1 in range(n):
            rot1 = verts[v1]
            k1 = len(rot1)
            # same vertex: insert x, then y into the enlarged rotation
            for t1 in range(max(1, k1)):
                with_x = rot1[:t1] + (x,) + rot1[t1:]
                for t2 in range(len(with_x)):
                    rot2 = with_x[:t2] + (y,) + with_x[t2:]
                    nv = list(verts)
                    nv[v1] = rot2
                    emit(nv, (x, y))
            # two different vertices (the x/y swap is an isomorphism,
            # so ordered pairs would only duplicate work)
            for v2 in range(v1 + 1, n):
                rot2 = verts[v2]
                for t1 in range(max(1, k1)):
                    for t2 in range(max(1, len(rot2))):
                        nv = list(verts)
                        nv[v1] = rot1[:t1] + (x,) + rot1[t1:]
                        nv[v2] = rot2[:t2] + (y,) + rot2[t2:]
                        emit(nv, (x, y))
        # (b) pendant: y on a fresh vertex, inserted at every label position
        for v1 in range(n):
            rot1 = verts[v1]
            for t1 in range(max(1, len(rot1))):
                for pos in range(n + 1):
                    nv = list(verts)
                    nv[v1] = rot1[:t1] + (x,) + rot1[t1:]
                    nv[pos:pos] = [(y,)]
                    emit(nv, (x, y))
    return tuple(out[k] for k in sorted(out))


def enumerate_graphs(max_edges: int) -> list[CellGraph]:
    """All connected cell graphs with at most max_edges edges, one
    canonical representative per labeled-isomorphism class."""
    if max_edges > 8:
        raise GraphError("enumeration capped at 8 edges")
    out: list[CellGraph] = []
    for e in range(max_edges + 1):
        out.extend(_graphs_with_edges(e))
    return out


def graphs_of_type(g: int, n: int, edges: int) -> list[CellGraph]:
    """Connected graphs with the exact edge count and type (g, n)."""
    return [gr for gr in _graphs_with_edges(edges)
            if (lambda t: t.g == g and t.n == n)(gr.graph_type())]


def random_graph(edge_count: int, g: int | None = None, n: int | None = None,
                 seed: int = 0, max_tries: int = 50000) -> CellGraph:
    """Rejection-sample a connected graph (optionally of a given type)."""
    rng = random.Random(seed)
    if edge_count == 0:
        if (n not in (None, 1)) or g not in (None, 0):
            raise GraphError("the only edgeless connected graph is the bare vertex")
        return CellGraph([()], [])
    for _ in range(max_tries):
        nv = n if n is not None else rng.randint(1, max(1, edge_count))
        darts = list(range(2 * edge_count))
        rng.shuffle(darts)
        cuts = sorted(rng.sample(range(1, 2 * edge_count), nv - 1)) \
            if nv > 1 else []
        verts = []
        prev = 0
        for c in cuts + [2 * edge_count]:
            verts.append(tuple(darts[prev:c]))
            prev = c
        pair_pool = list(range(2 * edge_count))
        rng.shuffle(pair_pool)
        edges = [(pair_pool[2 * i], pair_pool[2 * i + 1])
                 for i in range(edge_count)]
        try:
            cand = CellGraph(verts, edges)
        except GraphError:
            continue
        if not cand.is_connected():
            continue
        if g is not None or n is not None:
            t = cand.graph_type()
            if (g is not None and t.g != g) or (n is not None and t.n != n):
                continue
        return cand
    raise GraphError("random_graph: constraints unsatisfied after retry cap")


# ----------------------------------------------------------------------
# Hom sets
# ----------------------------------------------------------------------

def hom_set(g1: CellGraph, g2: CellGraph, cap: int = 8) -> list[list[Edge]]:
    """Equivalence classes of contraction sequences from g1 onto g2.

    A sequence is a word of edges of g1 (surviving edges keep their dart
    pairs through contractions) whose successive contraction lands on a
    graph with g2's canonical form.  Words are identified under (i)
    automorphism images applied at any intermediate stage and (ii)
    adjacent transpositions of the word — every adjacent pair of
    distinct edges at a stage sits in one of the sanctioned
    configurations (sharing one vertex, two loops, loop plus edge,
    parallel pair, or fully disjoint), so each swap whose reversed order
    is also a valid word is an identification.  Class counts on graphs
    beyond the small worked examples are relative to this relation
    list.  Returns the lexicographically least word of each class.
    """
    if g1.edge_count > cap or g2.edge_count > cap:
        raise GraphError(f"hom_set capped at {cap} edges")
    steps = g1.edge_count - g2.edge_count
    target = g2.canonical_key()
    if steps < 0:
        return []
    if steps == 0:
        return [[]] if g1.canonical_key() == target else []

    stage: dict[tuple[Edge, ...], CellGraph] = {}
    valid: list[tuple[Edge, ...]] = []

    def extend(word: tuple[Edge, ...], path: list[CellGraph]) -> None:
        graph = path[-1]
        if len(word) == steps:
            if graph.canonical_key() == target:
                valid.append(word)
                for t, g in enumerate(path):
                    stage.setdefault(word[:t], g)
            return
        for edge in graph.edges:
            extend(word + (edge,), path + [graph.contract_any(edge)])

    extend((), [g1])
    valid_set = set(valid)

    parent: dict[tuple[Edge, ...], tuple[Edge, ...]] = {w: w for w in valid}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for w in valid:
        for t in range(len(w)):
            graph = stage[w[:t]]
            for auto in graph.automorphisms():
                tail = tuple(tuple(sorted((auto[a], auto[b])))
                             for a, b in w[t:])
                w2 = w[:t] + tail
                if w2 in valid_set:
                    union(w, w2)
            if t + 1 < len(w):
                w2 = w[:t] + (w[t + 1], w[t]) + w[t + 2:]
                if w2 in valid_set:
                    union(w, w2)

    classes: dict[tuple[Edge, ...], list[tuple[Edge, ...]]] = {}
    for w in valid:
        classes.setdefault(find(w), []).append(w)
    return [list(min(members)) for _, members in sorted(classes.items())]


# ----------------------------------------------------------------------
# wire format
# ----------------------------------------------------------------------

def graph_to_json(g: CellGraph) -> dict:
    return {
        "vertices": [list(rot) for rot in g.vertices],
        "edges": [list(e) for e in g.edges],
    }


def graph_from_json(data: Mapping) -> CellGraph:
    return CellGraph(data["vertices"], data["edges"])


def canonical_json(g: CellGraph) -> str:
    """Byte-stable canonical serialization (ends with a newline)."""
    payload = graph_to_json(g.canonical_form())
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
