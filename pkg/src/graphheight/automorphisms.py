"""Automorphism engine for colored reduced multigraphs.

Symmetries of the underlying space show up combinatorially as triples
(vertex permutation, edge permutation, palette permutation): incidence is
preserved, every vertex/edge color is carried to its palette image, and
decorations (marked point sequences riding on an edge) are transported with
their host. Behaviour inside an edge is invisible at this level, so parallel
edges of equal effective color can be permuted freely.

The engine computes generators and the exact group order without enumerating
elements: an equitable-refinement/individualization search yields the
palette-trivial vertex-level group by orbit-stabilizer recursion, each
nontrivial palette element is tested for realizability by one isomorphism
search, and free parallel-edge permutations contribute a product of
factorials. An independent brute-force enumeration lives in the oracle module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .errors import CircleInputError, GraphInputError
from .graphs import ReducedGraph

DEFAULT_COLOR = "_"

_PALETTE_CAP = 4096


@dataclass(frozen=True)
class Decoration:
    """A convergent marked sequence living on (the interior of) one edge."""

    edge: str
    label: str


@dataclass(frozen=True)
class ColoredGraph:
    reduced: ReducedGraph
    vertex_color: dict[str, str]
    edge_color: dict[str, str]
    palette: tuple[dict[str, str], ...] = ()
    decorations: tuple[Decoration, ...] = ()

    def __post_init__(self):
        g = self.reduced.graph
        vs, es = set(g.vertices), {e.id for e in g.edges}
        if set(self.vertex_color) != vs:
            raise GraphInputError("vertex_color must assign every vertex exactly")
        if set(self.edge_color) != es:
            raise GraphInputError("edge_color must assign every edge exactly")
        seen = set()
        for d in self.decorations:
            if d.edge not in es:
                raise GraphInputError(f"decoration references unknown edge {d.edge!r}")
            if (d.edge, d.label) in seen:
                raise GraphInputError(
                    f"duplicate decoration {d.label!r} on edge {d.edge!r}"
                )
            seen.add((d.edge, d.label))
        if not self.reduced.is_circle:
            for v in g.vertices:
                if self.vertex_color[v] == DEFAULT_COLOR and g.degree(v) == 2:
                    raise GraphInputError(
                        f"vertex {v!r} has degree 2 but no distinguishing color; "
                        "suppress it (reduce the graph) or color it"
                    )
        universe = self.palette_universe()
        for gen in self.palette:
            img = [gen.get(cid, cid) for cid in sorted(universe)]
            if len(set(img)) != len(universe):
                raise GraphInputError("palette generator is not a bijection")

    def palette_universe(self) -> set[str]:
        used = set(self.vertex_color.values()) | set(self.edge_color.values())
        used.update(d.label for d in self.decorations)
        for gen in self.palette:
            used.update(gen.keys())
            used.update(gen.values())
        return used

    def palette_elements(self) -> list[dict[str, str]]:
        """The full palette symmetry group, identity first, canonically ordered."""
        universe = sorted(self.palette_universe())
        ident = {cid: cid for cid in universe}
        gens = [dict(ident, **g) for g in self.palette]
        elems = {_perm_key(ident, universe): ident}
        frontier = [ident]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = {cid: g[cur[cid]] for cid in universe}
                key = _perm_key(nxt, universe)
                if key not in elems:
                    if len(elems) >= _PALETTE_CAP:
                        raise GraphInputError("palette symmetry group is too large")
                    elems[key] = nxt
                    frontier.append(nxt)
        return [elems[k] for k in sorted(elems)]

    def edge_labels(self, eid: str) -> tuple[str, ...]:
        return tuple(sorted(d.label for d in self.decorations if d.edge == eid))


def _perm_key(p: dict[str, str], universe: list[str]) -> tuple[str, ...]:
    return tuple(p[cid] for cid in universe)


def colored(
    reduced: ReducedGraph,
    vertex_colors: dict[str, str] | None = None,
    edge_colors: dict[str, str] | None = None,
    palette: tuple[dict[str, str], ...] = (),
    decorations: tuple[Decoration, ...] = (),
) -> ColoredGraph:
    """Build a ColoredGraph, filling unmentioned vertices/edges with the
    neutral color."""
    g = reduced.graph
    vc = {v: DEFAULT_COLOR for v in g.vertices}
    vc.update(vertex_colors or {})
    ec = {e.id: DEFAULT_COLOR for e in g.edges}
    ec.update(edge_colors or {})
    return ColoredGraph(reduced, vc, ec, tuple(palette), tuple(decorations))


@dataclass(frozen=True)
class AutTriple:
    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    color_map: dict[str, str]


@dataclass(frozen=True)
class AutGroup:
    generators: tuple[AutTriple, ...]
    order: int


def check_triple(c: ColoredGraph, t: AutTriple) -> bool:
    """Validity predicate: incidence, color transport, decoration transport."""
    g = c.reduced.graph
    vs = list(g.vertices)
    if sorted(t.vertex_map) != sorted(vs) or sorted(t.vertex_map.values()) != sorted(vs):
        return False
    eids = sorted(e.id for e in g.edges)
    if sorted(t.edge_map) != eids or sorted(t.edge_map.values()) != eids:
        return False
    by_id = {e.id: e for e in g.edges}
    for e in g.edges:
        img = by_id[t.edge_map[e.id]]
        if {t.vertex_map[e.u], t.vertex_map[e.v]} != {img.u, img.v}:
            return False
        if e.is_loop != img.is_loop:
            return False
    cm = t.color_map
    for v in vs:
        if c.vertex_color[t.vertex_map[v]] != cm.get(c.vertex_color[v], c.vertex_color[v]):
            return False
    for e in g.edges:
        if c.edge_color[t.edge_map[e.id]] != cm.get(c.edge_color[e.id], c.edge_color[e.id]):
            return False
    decos = {(d.edge, d.label) for d in c.decorations}
    mapped = {(t.edge_map[e], cm.get(l, l)) for (e, l) in decos}
    return mapped == decos


class _Inst:
    """Indexed snapshot of a colored multigraph, optionally with all colors
    pushed through one palette permutation (the source side of an
    isomorphism test)."""

    def __init__(self, c: ColoredGraph, sigma: dict[str, str]):
        g = c.reduced.graph
        self.verts = list(g.vertices)
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.n = len(self.verts)
        self.vcol = [("c", sigma.get(c.vertex_color[v], c.vertex_color[v])) for v in self.verts]

        def eff(eid: str) -> tuple:
            ec = c.edge_color[eid]
            labels = tuple(sorted(sigma.get(l, l) for l in c.edge_labels(eid)))
            return (sigma.get(ec, ec), labels)

        # classes[(i, j)] with i <= j: effective color -> multiplicity
        # groups[(i, j)]: effective color -> sorted member edge ids
        self.classes: dict[tuple[int, int], dict[tuple, int]] = {}
        self.groups: dict[tuple[int, int], dict[tuple, list[str]]] = {}
        for e in g.edges:
            i, j = self.index[e.u], self.index[e.v]
            if i > j:
                i, j = j, i
            cls = self.classes.setdefault((i, j), {})
            grp = self.groups.setdefault((i, j), {})
            col = eff(e.id)
            cls[col] = cls.get(col, 0) + 1
            grp.setdefault(col, []).append(e.id)
        for grp in self.groups.values():
            for members in grp.values():
                members.sort()

        def cls_key(pair) -> tuple:
            return ("cls", tuple(sorted(self.classes[pair].items())))

        self.nbrs: list[list[tuple[int, tuple]]] = [[] for _ in range(self.n)]
        self.loopkey: list[tuple] = [("cls", ())] * self.n
        for (i, j) in self.classes:
            if i == j:
                self.loopkey[i] = cls_key((i, j))
            else:
                self.nbrs[i].append((j, cls_key((i, j))))
                self.nbrs[j].append((i, cls_key((i, j))))


def _signatures(inst: _Inst, colors: list) -> list:
    sigs = []
    for v in range(inst.n):
        around = sorted((colors[u], k) for (u, k) in inst.nbrs[v])
        sigs.append((colors[v], tuple(around), inst.loopkey[v]))
    return sigs


def _partition_of(colors: list) -> tuple:
    cells: dict = {}
    for v, key in enumerate(colors):
        cells.setdefault(key, []).append(v)
    return tuple(sorted(tuple(m) for m in cells.values()))


def _joint_refine(inst_s: _Inst, inst_d: _Inst, cs: list, cd: list) -> tuple[list, list]:
    """Refine both colorings in lockstep with shared signature ranks, so the
    resulting keys are comparable across the two sides."""
    while True:
        sig_s = _signatures(inst_s, cs)
        sig_d = _signatures(inst_d, cd)
        rank = {k: ("r", i) for i, k in enumerate(sorted(set(sig_s) | set(sig_d)))}
        ns = [rank[s] for s in sig_s]
        nd = [rank[s] for s in sig_d]
        if _partition_of(ns) == _partition_of(cs) and _partition_of(nd) == _partition_of(cd):
            return ns, nd
        cs, cd = ns, nd


def _cells_by_key(colors: list) -> dict:
    cells: dict = {}
    for v, key in enumerate(colors):
        cells.setdefault(key, []).append(v)
    return cells


def _compatible(inst_s: _Inst, inst_d: _Inst, perm: list[int]) -> bool:
    for v in range(inst_s.n):
        if inst_d.vcol[perm[v]] != inst_s.vcol[v]:
            return False
    for (i, j), cls in inst_s.classes.items():
        a, b = perm[i], perm[j]
        if a > b:
            a, b = b, a
        if inst_d.classes.get((a, b)) != cls:
            return False
    return len(inst_s.classes) == len(inst_d.classes)


def _find_iso(inst_s: _Inst, inst_d: _Inst, cs: list, cd: list, depth: int = 0):
    """Search for a vertex bijection carrying the source coloring onto the
    destination one; returns an index permutation or None."""
    cs, cd = _joint_refine(inst_s, inst_d, cs, cd)
    cells_s = _cells_by_key(cs)
    cells_d = _cells_by_key(cd)
    if set(cells_s) != set(cells_d):
        return None
    for key in cells_s:
        if len(cells_s[key]) != len(cells_d[key]):
            return None
    split_key = None
    for key in sorted(cells_s):
        if len(cells_s[key]) > 1:
            split_key = key
            break
    if split_key is None:
        perm = [0] * inst_s.n
        for key, members in cells_s.items():
            perm[members[0]] = cells_d[key][0]
        return perm if _compatible(inst_s, inst_d, perm) else None
    x = cells_s[split_key][0]
    mark = ("i", depth)
    for y in cells_d[split_key]:
        ns = list(cs)
        nd = list(cd)
        ns[x] = mark
        nd[y] = mark
        res = _find_iso(inst_s, inst_d, ns, nd, depth + 1)
        if res is not None:
            return res
    return None


def _close_orbit(seed: int, gens: list[list[int]]) -> set[int]:
    orbit = {seed}
    frontier = [seed]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def _vertex_group(inst: _Inst, colors: list, depth: int = 0) -> tuple[list[list[int]], int]:
    """Generators and exact order of the palette-trivial vertex-level group,
    by individualization with orbit-stabilizer counting."""
    colors, _ = _joint_refine(inst, inst, list(colors), list(colors))
    cells = _cells_by_key(colors)
    split_key = None
    for key in sorted(cells):
        if len(cells[key]) > 1:
            split_key = key
            break
    if split_key is None:
        return [], 1
    cell = cells[split_key]
    x = cell[0]
    mark = ("i", depth)
    sub_colors = list(colors)
    sub_colors[x] = mark
    gens, sub_order = _vertex_group(inst, sub_colors, depth + 1)
    gens = list(gens)
    orbit = _close_orbit(x, gens)
    for y in cell[1:]:
        if y in orbit:
            continue
        src = list(colors)
        dst = list(colors)
        src[x] = mark
        dst[y] = mark
        perm = _find_iso(inst, inst, src, dst, depth + 1)
        if perm is not None:
            gens.append(perm)
            orbit = _close_orbit(x, gens)
    return gens, len(orbit) * sub_order


def _induced_triple(
    c: ColoredGraph, base: _Inst, perm: list[int], sigma: dict[str, str]
) -> AutTriple:
    """Extend a vertex permutation (realizing palette element sigma) to a full
    triple, matching edge groups of equal effective color in sorted order."""
    vm = {base.verts[i]: base.verts[perm[i]] for i in range(base.n)}
    em: dict[str, str] = {}
    for (i, j), grp in base.groups.items():
        a, b = perm[i], perm[j]
        if a > b:
            a, b = b, a
        target = base.groups[(a, b)]
        for col, members in grp.items():
            tcol = (sigma.get(col[0], col[0]), tuple(sorted(sigma.get(l, l) for l in col[1])))
            for src, dst in zip(members, target[tcol]):
                em[src] = dst
    cm = {cid: sigma.get(cid, cid) for cid in sorted(c.palette_universe())}
    return AutTriple(vm, em, cm)


def automorphisms(c: ColoredGraph) -> AutGroup:
    """Generators and exact order of the triple group of a colored graph."""
    if c.reduced.is_circle:
        raise CircleInputError(
            "the circle's transformation group has no finite cell shadow; "
            "handle it before calling the automorphism engine"
        )
    base = _Inst(c, {})
    base_colors = list(base.vcol)
    v_gens, v_order = _vertex_group(base, base_colors)

    elements = c.palette_elements()
    universe = sorted(c.palette_universe())
    ident = {cid: cid for cid in universe}
    realized: list[tuple[dict[str, str], list[int]]] = []
    for sigma in elements:
        if sigma == ident:
            continue
        inst_s = _Inst(c, sigma)
        perm = _find_iso(inst_s, base, list(inst_s.vcol), list(base_colors))
        if perm is not None:
            realized.append((sigma, perm))

    parallel_factor = 1
    for cls in base.classes.values():
        for mult in cls.values():
            parallel_factor *= factorial(mult)

    order = v_order * (1 + len(realized)) * parallel_factor

    triples: list[AutTriple] = []
    for perm in v_gens:
        triples.append(_induced_triple(c, base, perm, {}))
    for sigma, perm in realized:
        triples.append(_induced_triple(c, base, perm, sigma))
    cm_id = {cid: cid for cid in universe}
    for pair in sorted(base.groups):
        grp = base.groups[pair]
        for col in sorted(grp):
            members = grp[col]
            for k in range(len(members) - 1):
                vm = {v: v for v in base.verts}
                em = {e.id: e.id for e in c.reduced.graph.edges}
                em[members[k]] = members[k + 1]
                em[members[k + 1]] = members[k]
                triples.append(AutTriple(vm, em, dict(cm_id)))

    for t in triples:
        assert check_triple(c, t), "engine produced an invalid generator"
    return AutGroup(tuple(triples), order)


def _orbit_partition(items: list, gens_images) -> tuple[tuple, ...]:
    """Union-find orbit partition; items keep their given order inside and
    across orbits."""
    pos = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for images in gens_images:
        for x, y in images:
            ri, rj = find(pos[x]), find(pos[y])
            if ri != rj:
                parent[ri] = rj
    orbits: dict[int, list] = {}
    for i, x in enumerate(items):
        orbits.setdefault(find(i), []).append(x)
    return tuple(tuple(o) for o in sorted(orbits.values(), key=lambda o: pos[o[0]]))


def vertex_orbits(aut: AutGroup, c: ColoredGraph) -> tuple[tuple[str, ...], ...]:
    items = list(c.reduced.graph.vertices)
    gens = [[(v, t.vertex_map[v]) for v in items] for t in aut.generators]
    return _orbit_partition(items, gens)


def edge_orbits(aut: AutGroup, c: ColoredGraph) -> tuple[tuple[str, ...], ...]:
    items = [e.id for e in c.reduced.graph.edges]
    gens = [[(e, t.edge_map[e]) for e in items] for t in aut.generators]
    return _orbit_partition(items, gens)


def decoration_orbits(aut: AutGroup, c: ColoredGraph) -> tuple[tuple, ...]:
    items = [(d.edge, d.label) for d in c.decorations]
    gens = [
        [((e, l), (t.edge_map[e], t.color_map.get(l, l))) for (e, l) in items]
        for t in aut.generators
    ]
    return _orbit_partition(items, gens)
