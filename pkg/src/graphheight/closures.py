"""Orbit-closure cell families and heights.

For a colored reduced graph, the nonempty closed invariant subsets of the
underlying space form a finite lattice generated by cells: vertex orbits,
orbit closures of edges (the member arcs plus their endpoint orbits), and
orbit closures of decorations (the marked sequences plus their limit points).
Every closed invariant set is a union of cells, deletable one cell at a time,
so the maximal chain length, the height, is exactly one less than the number
of cells. The bare circle is the single exception with no finite cell family;
its whole space is the only orbit closure, giving height 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automorphisms import (
    ColoredGraph,
    automorphisms,
    colored,
    decoration_orbits,
    edge_orbits,
    vertex_orbits,
    DEFAULT_COLOR,
)
from .errors import CircleInputError, DomainError
from .graphs import TopoGraph, reduce_graph


@dataclass(frozen=True, order=False)
class Height:
    """A chain length: a nonnegative integer or +inf (value None)."""

    value: int | None

    @classmethod
    def finite(cls, n: int) -> "Height":
        if n < 0:
            raise ValueError("heights are nonnegative")
        return cls(n)

    @classmethod
    def infinite(cls) -> "Height":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def plus(self, k: int) -> "Height":
        if self.is_infinite:
            return self
        return Height(self.value + k)

    def __lt__(self, other: "Height") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __le__(self, other: "Height") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Height") -> bool:
        return other < self

    def __ge__(self, other: "Height") -> bool:
        return other <= self

    def __str__(self) -> str:
        return "+inf" if self.is_infinite else str(self.value)

    def to_json(self):
        return "inf" if self.is_infinite else self.value

    @classmethod
    def from_json(cls, raw) -> "Height":
        if raw in ("inf", "+inf"):
            return cls.infinite()
        if isinstance(raw, int) and not isinstance(raw, bool):
            return cls.finite(raw)
        raise ValueError(f"not a height: {raw!r}")


@dataclass(frozen=True)
class PhSet:
    """The achievable-height set of a space: every integer from the base up,
    together with +inf."""

    base: int

    def contains(self, h: Height) -> bool:
        return h.is_infinite or h.value >= self.base

    def to_json(self) -> dict:
        return {"base": self.base, "includesInfinity": True}


KIND_VERTEX = "vertex-orbit"
KIND_DECORATION = "decoration-closure"
KIND_EDGE = "edge-orbit-closure"
KIND_CIRCLE = "whole-circle"


@dataclass(frozen=True)
class ClosureCell:
    kind: str
    members: tuple[str, ...]
    hull_vertices: tuple[str, ...]
    hull_edges: tuple[str, ...]
    hull_decorations: tuple[str, ...]

    def pointset(self) -> tuple[frozenset, frozenset, frozenset]:
        return (
            frozenset(self.hull_vertices),
            frozenset(self.hull_edges),
            frozenset(self.hull_decorations),
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "members": list(self.members),
        }


def deco_key(edge: str, label: str) -> str:
    return f"{edge}|{label}"


@dataclass(frozen=True)
class ClosureFamily:
    source: ColoredGraph
    cells: tuple[ClosureCell, ...]
    containment: tuple[tuple[int, int], ...]  # (i, j): cell i strictly inside cell j

    def cell_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for cell in self.cells:
            counts[cell.kind] = counts.get(cell.kind, 0) + 1
        return counts


def _is_plain(c: ColoredGraph) -> bool:
    return (
        all(v == DEFAULT_COLOR for v in c.vertex_color.values())
        and all(v == DEFAULT_COLOR for v in c.edge_color.values())
        and not c.decorations
    )


def closure_family(c: ColoredGraph) -> ClosureFamily:
    """Enumerate the orbit-closure cells of a colored graph and their
    containment order."""
    g = c.reduced.graph
    if c.reduced.is_circle:
        if not _is_plain(c):
            raise CircleInputError(
                "a marked circle has no finite cell family; model the marking "
                "by subdividing the loop into an explicit cycle"
            )
        loop = g.edges[0]
        cell = ClosureCell(
            kind=KIND_CIRCLE,
            members=(loop.id,),
            hull_vertices=tuple(g.vertices),
            hull_edges=(loop.id,),
            hull_decorations=(),
        )
        return ClosureFamily(source=c, cells=(cell,), containment=())

    aut = automorphisms(c)
    cells: list[ClosureCell] = []
    for orb in vertex_orbits(aut, c):
        cells.append(
            ClosureCell(
                kind=KIND_VERTEX,
                members=tuple(orb),
                hull_vertices=tuple(orb),
                hull_edges=(),
                hull_decorations=(),
            )
        )
    by_id = {e.id: e for e in g.edges}
    labels_of = {e.id: c.edge_labels(e.id) for e in g.edges}
    for orb in decoration_orbits(aut, c):
        # a marked sequence accumulates at the start endpoint of its host arc
        limits = []
        for (eid, _label) in orb:
            u = by_id[eid].u
            if u not in limits:
                limits.append(u)
        cells.append(
            ClosureCell(
                kind=KIND_DECORATION,
                members=tuple(deco_key(e, l) for (e, l) in orb),
                hull_vertices=tuple(limits),
                hull_edges=(),
                hull_decorations=tuple(deco_key(e, l) for (e, l) in orb),
            )
        )
    for orb in edge_orbits(aut, c):
        hull_v: list[str] = []
        hull_d: list[str] = []
        for eid in orb:
            e = by_id[eid]
            for w in (e.u, e.v):
                if w not in hull_v:
                    hull_v.append(w)
            for lab in labels_of[eid]:
                hull_d.append(deco_key(eid, lab))
        cells.append(
            ClosureCell(
                kind=KIND_EDGE,
                members=tuple(orb),
                hull_vertices=tuple(hull_v),
                hull_edges=tuple(orb),
                hull_decorations=tuple(hull_d),
            )
        )

    containment: list[tuple[int, int]] = []
    points = [cell.pointset() for cell in cells]
    for i, pi in enumerate(points):
        for j, pj in enumerate(points):
            if i == j:
                continue
            if pi[0] <= pj[0] and pi[1] <= pj[1] and pi[2] <= pj[2] and pi != pj:
                containment.append((i, j))
    return ClosureFamily(source=c, cells=tuple(cells), containment=tuple(containment))


def height_of(f: ClosureFamily) -> Height:
    """Maximal chain length of nonempty closed invariant sets: one less than
    the number of cells."""
    return Height.finite(len(f.cells) - 1)


def base_height(g: TopoGraph) -> Height:
    """Height of the full transformation group of the space."""
    r = reduce_graph(g)
    return height_of(closure_family(colored(r)))


def ph_set(g: TopoGraph) -> PhSet:
    b = base_height(g)
    assert not b.is_infinite
    return PhSet(base=b.value)


def require_in_ph(g: TopoGraph, target: Height) -> PhSet:
    """Validate that a target height is achievable on this space."""
    p = ph_set(g)
    if not p.contains(target):
        raise DomainError(
            f"target height {target} is below the base {p.base} for this space"
        )
    return p


def poset_dot(f: ClosureFamily) -> str:
    """Hasse diagram of the cell containment order, Graphviz DOT, subset
    pointing at superset."""
    contains = set(f.containment)
    hasse = []
    for (i, j) in sorted(contains):
        if any((i, k) in contains and (k, j) in contains for k in range(len(f.cells))):
            continue
        hasse.append((i, j))
    lines = ["digraph closure_poset {", "  rankdir=BT;"]
    for idx, cell in enumerate(f.cells):
        lines.append(f'  c{idx} [label="{cell.kind}({len(cell.members)})"];')
    for (i, j) in hasse:
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines)
