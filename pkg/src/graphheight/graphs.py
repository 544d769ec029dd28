"""Finite topological graphs as combinatorial data.

A graph here is the skeleton of a compact connected space glued from finitely
many arcs: named vertices and named edges, with loops and parallel edges
allowed. Height computations run on the reduced form, in which every
suppressible degree-2 vertex has been removed; a bare cycle collapses all the
way to one vertex carrying one loop and is flagged as a circle, because the
circle's transformation group is not shadowed by any finite cell family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


from .errors import GraphInputError


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, w: str) -> str:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise ValueError(f"{w!r} is not an endpoint of edge {self.id!r}")


@dataclass(frozen=True)
class TopoGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GraphInputError("graph has no vertices")
        if not self.edges:
            raise GraphInputError("graph has no edges")
        seen_v = set()
        for v in self.vertices:
            if v in seen_v:
                raise GraphInputError(f"duplicate vertex id {v!r}")
            seen_v.add(v)
        seen_e = set()
        for e in self.edges:
            if e.id in seen_e:
                raise GraphInputError(f"duplicate edge id {e.id!r}")
            seen_e.add(e.id)
            for w in (e.u, e.v):
                if w not in seen_v:
                    raise GraphInputError(
                        f"edge {e.id!r} references unknown vertex {w!r}"
                    )
        self._check_connected()

    def _check_connected(self):
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
        roots = {find(v) for v in self.vertices}
        if len(roots) > 1:
            raise GraphInputError("graph is not connected")

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphInputError(f"unknown edge id {eid!r}")

    def degree(self, v: str) -> int:
        # a loop contributes 2 to its vertex
        d = 0
        for e in self.edges:
            if e.u == v:
                d += 1
            if e.v == v:
                d += 1
        return d

    def degree_map(self) -> dict[str, int]:
        d = {v: 0 for v in self.vertices}
        for e in self.edges:
            d[e.u] += 1
            d[e.v] += 1
        return d


def parse_graph(data) -> TopoGraph:
    """Build a TopoGraph from JSON text or an already-decoded mapping.

    Wire format: {"vertices": [id, ...], "edges": [[edgeId, u, v], ...]}.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphInputError(
                f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    if not isinstance(data, dict):
        raise GraphInputError("graph document must be a JSON object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise GraphInputError(f"graph document is missing {key!r}")
    vertices = data["vertices"]
    edges = data["edges"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphInputError("'vertices' must be a list of string ids")
    if not isinstance(edges, list):
        raise GraphInputError("'edges' must be a list of [edgeId, u, v] triples")
    built = []
    for i, item in enumerate(edges):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 3
            or not all(isinstance(x, str) for x in item)
        ):
            raise GraphInputError(f"edges[{i}] must be a [edgeId, u, v] string triple")
        built.append(Edge(item[0], item[1], item[2]))
    return TopoGraph(tuple(vertices), tuple(built))


def graph_to_json(g: TopoGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[e.id, e.u, e.v] for e in g.edges],
    }


@dataclass(frozen=True)
class ReducedGraph:
    """A graph with no suppressible degree-2 vertices, plus bookkeeping.

    ``suppression_map`` sends every original edge id to the id of the reduced
    edge that absorbed it. ``is_circle`` marks the one shape (a bare cycle)
    whose symmetry group escapes the finite cell model.
    """

    graph: TopoGraph
    is_circle: bool
    suppression_pairs: tuple[tuple[str, str], ...]

    @property
    def suppression_map(self) -> dict[str, str]:
        return dict(self.suppression_pairs)


def reduce_graph(g: TopoGraph, protected: frozenset[str] = frozenset()) -> ReducedGraph:
    """Suppress unprotected degree-2 vertices until none remain.

    Each suppression merges the two incident arcs; merged edge ids are the
    original ids joined by "+" in traversal order. |V| - |E| is invariant.
    A pure cycle stabilises as one vertex with one loop and is flagged.
    """
    unknown = protected - set(g.vertices)
    if unknown:
        raise GraphInputError(f"protected vertices not in graph: {sorted(unknown)}")

    verts = list(g.vertices)
    # working edge: wid -> (u, v, chain of original ids oriented u -> v)
    work: dict[int, tuple[str, str, tuple[str, ...]]] = {}
    for i, e in enumerate(g.edges):
        work[i] = (e.u, e.v, (e.id,))
    next_wid = len(g.edges)
    is_circle = False

    while True:
        deg: dict[str, int] = {v: 0 for v in verts}
        for u, v, _ in work.values():
            deg[u] += 1
            deg[v] += 1
        candidate = None
        for v in verts:
            if deg[v] == 2 and v not in protected:
                candidate = v
                break
        if candidate is None:
            break
        incident = [wid for wid, (u, v, _) in sorted(work.items()) if candidate in (u, v)]
        if len(incident) == 1:
            # the candidate's two incidences are one loop: the component has
            # fully collapsed, which connectivity only allows for a bare cycle
            assert len(verts) == 1 and len(work) == 1
            is_circle = True
            break
        w1, w2 = incident
        u1, v1, ch1 = work[w1]
        if v1 != candidate:
            u1, v1, ch1 = v1, u1, tuple(reversed(ch1))
        u2, v2, ch2 = work[w2]
        if u2 != candidate:
            u2, v2, ch2 = v2, u2, tuple(reversed(ch2))
        del work[w1]
        del work[w2]
        work[next_wid] = (u1, v2, ch1 + ch2)
        next_wid += 1
        verts.remove(candidate)

    edge_pos = {e.id: i for i, e in enumerate(g.edges)}
    final = sorted(work.values(), key=lambda t: min(edge_pos[x] for x in t[2]))
    new_edges = []
    pairs = []
    for u, v, chain in final:
        flipped = tuple(reversed(chain))
        if flipped < chain:
            chain, u, v = flipped, v, u
        eid = "+".join(chain)
        new_edges.append(Edge(eid, u, v))
        for orig in chain:
            pairs.append((orig, eid))
    pairs.sort()
    graph = TopoGraph(tuple(verts), tuple(new_edges))
    return ReducedGraph(graph=graph, is_circle=is_circle, suppression_pairs=tuple(pairs))


FAMILY_KINDS = ("interval", "circle", "star", "xn", "yn", "zn", "wn", "lollipop")


@dataclass(frozen=True)
class FamilyId:
    """Names one graph from the built-in catalogue, e.g. star:5 or xn:4."""

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise GraphInputError(
                f"unknown family {self.kind!r}; expected one of {', '.join(FAMILY_KINDS)}"
            )
        if self.kind in ("interval", "circle", "lollipop"):
            if self.n is not None:
                raise GraphInputError(f"family {self.kind!r} takes no parameter")
        else:
            if self.n is None:
                raise GraphInputError(f"family {self.kind!r} needs a parameter, e.g. {self.kind}:4")
            floor = {"star": 3, "xn": 3, "yn": 3, "zn": 3, "wn": 4}[self.kind]
            if self.n < floor:
                raise GraphInputError(f"family {self.kind!r} requires n >= {floor}")

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        if ":" in text:
            kind, _, raw = text.partition(":")
            try:
                n = int(raw)
            except ValueError:
                raise GraphInputError(f"bad family parameter {raw!r} in {text!r}") from None
            return cls(kind, n)
        return cls(text, None)

    def label(self) -> str:
        return self.kind if self.n is None else f"{self.kind}:{self.n}"


def _xn_parts(n: int):
    vertices = [str(i) for i in range(3, n + 1)]
    edges = [Edge(f"p{i}", str(i), str(i + 1)) for i in range(3, n)]
    for i in range(3, n + 1):
        for j in range(1, i + 1):
            vertices.append(f"a{i}_{j}")
            edges.append(Edge(f"l{i}_{j}", str(i), f"a{i}_{j}"))
    return vertices, edges


def make_family(fid: FamilyId) -> TopoGraph:
    """Construct a catalogue graph.

    interval: one arc. circle: one vertex with one loop. star:n: n arcs from a
    hub. xn:n: a path on vertices 3..n where vertex i carries i pendant leaves.
    yn:n adds a loop at vertex 3; zn:n attaches a new vertex by an arc plus a
    loop at it; wn:n adds loops at vertices 3 and 4. lollipop: a loop plus a
    pendant arc.
    """
    kind, n = fid.kind, fid.n
    if kind == "interval":
        return TopoGraph(("0", "1"), (Edge("e1", "0", "1"),))
    if kind == "circle":
        return TopoGraph(("v",), (Edge("l", "v", "v"),))
    if kind == "star":
        vertices = ["0"] + [str(i) for i in range(1, n + 1)]
        edges = [Edge(f"e{i}", "0", str(i)) for i in range(1, n + 1)]
        return TopoGraph(tuple(vertices), tuple(edges))
    if kind == "xn":
        vertices, edges = _xn_parts(n)
        return TopoGraph(tuple(vertices), tuple(edges))
    if kind == "yn":
        vertices, edges = _xn_parts(n)
        edges.append(Edge("loop3", "3", "3"))
        return TopoGraph(tuple(vertices), tuple(edges))
    if kind == "zn":
        vertices, edges = _xn_parts(n)
        vertices.append("c")
        edges.append(Edge("zc", "3", "c"))
        edges.append(Edge("loopc", "c", "c"))
        return TopoGraph(tuple(vertices), tuple(edges))
    if kind == "wn":
        vertices, edges = _xn_parts(n)
        edges.append(Edge("loop3", "3", "3"))
        edges.append(Edge("loop4", "4", "4"))
        return TopoGraph(tuple(vertices), tuple(edges))
    if kind == "lollipop":
        return TopoGraph(("v", "u"), (Edge("loop", "v", "v"), Edge("stick", "v", "u")))
    raise GraphInputError(f"unknown family {kind!r}")


def subdivide_edges(
    g: TopoGraph, plan: dict[str, tuple[str, int]]
) -> tuple[TopoGraph, dict[str, list[str]], dict[str, list[str]]]:
    """Split selected edges into equal chains of sub-edges.

    plan maps an edge id to (start endpoint, part count m). Returns the new
    graph plus, per subdivided edge, the interior mark vertices (in order from
    the start endpoint) and the sub-edge ids (same orientation). m = 1 keeps
    the edge untouched but still reports it as its own single sub-edge.
    """
    vertices = list(g.vertices)
    existing_v = set(vertices)
    existing_e = {e.id for e in g.edges}
    edges: list[Edge] = []
    marks: dict[str, list[str]] = {}
    subs: dict[str, list[str]] = {}
    for e in g.edges:
        if e.id not in plan:
            edges.append(e)
            continue
        start, m = plan[e.id]
        if start not in (e.u, e.v):
            raise GraphInputError(f"{start!r} is not an endpoint of edge {e.id!r}")
        if m < 1:
            raise GraphInputError("subdivision count must be >= 1")
        if m == 1:
            edges.append(e)
            marks[e.id] = []
            subs[e.id] = [e.id]
            continue
        end = e.v if start == e.u else e.u
        mids = [f"{e.id}#k{j}" for j in range(1, m)]
        for w in mids:
            if w in existing_v:
                raise GraphInputError(f"subdivision vertex id {w!r} already in use")
            existing_v.add(w)
        vertices.extend(mids)
        chain = [start] + mids + [end]
        sub_ids = []
        for i in range(1, m + 1):
            sid = f"{e.id}#s{i}"
            if sid in existing_e:
                raise GraphInputError(f"subdivision edge id {sid!r} already in use")
            existing_e.add(sid)
            edges.append(Edge(sid, chain[i - 1], chain[i]))
            sub_ids.append(sid)
        marks[e.id] = mids
        subs[e.id] = sub_ids
    return TopoGraph(tuple(vertices), tuple(edges)), marks, subs
