"""Subgroup schemes: recipes that pin a transformation group with a chosen
height on a given space.

Finite heights come from marking construction data onto the reduced graph:
FixMarks subdivides every edge of one orbit into m level-colored parts
(distinct endpoint orbits required), MarksWithSequence additionally rides a
convergent marked sequence on the first part, FlipMarks allows the level
order to reverse via a palette involution (equal endpoint orbits), CircleMarks
pins n marks on a circle with a reflection palette, and LeafRotation decorates
a star's arcs with a cyclic palette. Trivial (the one-element group) and
Rotation (irrational vs rational angle on the circle) are evaluated
symbolically: their heights are +inf, respectively +inf / 0, with no finite
cell shadow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automorphisms import ColoredGraph, Decoration, automorphisms, colored, edge_orbits, vertex_orbits
from .closures import Height, base_height, closure_family, height_of
from .errors import DomainError, GraphInputError
from .graphs import Edge, ReducedGraph, TopoGraph, reduce_graph, subdivide_edges

FULL_HOMEO = "FullHomeo"
TRIVIAL = "Trivial"
FIX_MARKS = "FixMarks"
FLIP_MARKS = "FlipMarks"
MARKS_WITH_SEQUENCE = "MarksWithSequence"
LEAF_ROTATION = "LeafRotation"
CIRCLE_MARKS = "CircleMarks"
ROTATION = "Rotation"

VARIANTS = (
    FULL_HOMEO,
    TRIVIAL,
    FIX_MARKS,
    FLIP_MARKS,
    MARKS_WITH_SEQUENCE,
    LEAF_ROTATION,
    CIRCLE_MARKS,
    ROTATION,
)

SEQUENCE_LABEL = "seq"


@dataclass(frozen=True)
class RotationAngle:
    """A rotation angle: an exact rational number of turns, or a named
    irrational (symbolic; only rationality matters)."""

    rational: Fraction | None = None
    irrational: str | None = None

    def __post_init__(self):
        if (self.rational is None) == (self.irrational is None):
            raise GraphInputError("angle must be rational p/q or a named irrational")

    @property
    def is_rational(self) -> bool:
        return self.rational is not None

    def to_json(self) -> dict:
        if self.is_rational:
            return {"rational": str(self.rational)}
        return {"irrational": self.irrational}

    @classmethod
    def from_json(cls, raw: dict) -> "RotationAngle":
        if not isinstance(raw, dict):
            raise GraphInputError("angle must be an object")
        if "rational" in raw:
            try:
                return cls(rational=Fraction(raw["rational"]))
            except (ValueError, ZeroDivisionError) as exc:
                raise GraphInputError(f"bad rational angle {raw['rational']!r}") from exc
        if "irrational" in raw:
            tag = raw["irrational"]
            if not isinstance(tag, str) or not tag:
                raise GraphInputError("irrational angle tag must be a nonempty string")
            return cls(irrational=tag)
        raise GraphInputError("angle needs a 'rational' or 'irrational' field")


@dataclass(frozen=True)
class Scheme:
    variant: str
    edge_orbit: str | None = None  # representative edge id of the marked orbit
    m: int | None = None
    n: int | None = None
    angle: RotationAngle | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise GraphInputError(f"unknown scheme variant {self.variant!r}")
        if self.variant in (FIX_MARKS, FLIP_MARKS, MARKS_WITH_SEQUENCE):
            if self.edge_orbit is None or self.m is None or self.m < 1:
                raise GraphInputError(
                    f"{self.variant} needs an edge orbit representative and m >= 1"
                )
        elif self.variant == CIRCLE_MARKS:
            if self.n is None or self.n < 1:
                raise GraphInputError("CircleMarks needs n >= 1")
        elif self.variant == ROTATION:
            if self.angle is None:
                raise GraphInputError("Rotation needs an angle")
        else:
            if any(x is not None for x in (self.edge_orbit, self.m, self.n, self.angle)):
                raise GraphInputError(f"{self.variant} takes no parameters")

    def to_json(self) -> dict:
        out: dict = {"variant": self.variant}
        if self.edge_orbit is not None:
            out["edgeOrbit"] = self.edge_orbit
        if self.m is not None:
            out["m"] = self.m
        if self.n is not None:
            out["n"] = self.n
        if self.angle is not None:
            out["angle"] = self.angle.to_json()
        return out

    @classmethod
    def from_json(cls, raw: dict) -> "Scheme":
        if not isinstance(raw, dict) or "variant" not in raw:
            raise GraphInputError("scheme document needs a 'variant' field")
        angle = raw.get("angle")
        for key in raw:
            if key not in ("variant", "edgeOrbit", "m", "n", "angle"):
                raise GraphInputError(f"unknown scheme field {key!r}")
        m = raw.get("m")
        n = raw.get("n")
        for name, val in (("m", m), ("n", n)):
            if val is not None and (isinstance(val, bool) or not isinstance(val, int)):
                raise GraphInputError(f"scheme field {name!r} must be an integer")
        return cls(
            variant=raw["variant"],
            edge_orbit=raw.get("edgeOrbit"),
            m=m,
            n=n,
            angle=RotationAngle.from_json(angle) if angle is not None else None,
        )


def _resolve_orbit(
    r: ReducedGraph, eorbs: tuple[tuple[str, ...], ...], ref: str
) -> tuple[str, ...]:
    smap = r.suppression_map
    if ref in smap:
        rid = smap[ref]
    elif any(e.id == ref for e in r.graph.edges):
        rid = ref
    else:
        raise GraphInputError(f"edge {ref!r} not found in the graph or its reduction")
    for orb in eorbs:
        if rid in orb:
            return orb
    raise GraphInputError(f"edge {rid!r} has no orbit")  # unreachable


def _mark_color(j: int) -> str:
    return f"mk{j}"


def _marked_graph(g: TopoGraph, s: Scheme) -> ColoredGraph:
    r = reduce_graph(g)
    if r.is_circle:
        raise GraphInputError(f"{s.variant} does not apply to the circle; use CircleMarks")
    base_c = colored(r)
    aut = automorphisms(base_c)
    eorbs = edge_orbits(aut, base_c)
    vorbs = vertex_orbits(aut, base_c)
    orbit = _resolve_orbit(r, eorbs, s.edge_orbit)
    owner = {}
    for i, orb in enumerate(vorbs):
        for v in orb:
            owner[v] = i
    rep = r.graph.edge(orbit[0])
    case1 = owner[rep.u] != owner[rep.v]
    if s.variant in (FIX_MARKS, MARKS_WITH_SEQUENCE) and not case1:
        raise GraphInputError(
            f"{s.variant} needs an edge orbit whose endpoint orbits differ; "
            "use FlipMarks on this orbit"
        )
    if s.variant == FLIP_MARKS and case1:
        raise GraphInputError(
            "FlipMarks needs an edge orbit with a single endpoint orbit; "
            "use FixMarks or MarksWithSequence on this orbit"
        )

    side_a: set[str] = set()
    if case1:
        for orb in vorbs:
            if rep.u in orb:
                side_a = set(orb)
                break
    plan: dict[str, tuple[str, int]] = {}
    for eid in orbit:
        e = r.graph.edge(eid)
        if case1:
            start = e.u if e.u in side_a else e.v
        else:
            start = e.u
        plan[eid] = (start, s.m)
    newg, marks, subs = subdivide_edges(r.graph, plan)
    vcolors: dict[str, str] = {}
    for eid in orbit:
        for j, w in enumerate(marks[eid], start=1):
            vcolors[w] = _mark_color(j)
    palette: tuple[dict[str, str], ...] = ()
    if s.variant == FLIP_MARKS and s.m >= 2:
        flip = {_mark_color(j): _mark_color(s.m - j) for j in range(1, s.m)}
        palette = (flip,)
    decorations: tuple[Decoration, ...] = ()
    if s.variant == MARKS_WITH_SEQUENCE:
        decorations = tuple(Decoration(subs[eid][0], SEQUENCE_LABEL) for eid in orbit)
    reduced = ReducedGraph(graph=newg, is_circle=False, suppression_pairs=())
    return ColoredGraph(
        reduced,
        {v: vcolors.get(v, "_") for v in newg.vertices},
        {e.id: "_" for e in newg.edges},
        palette,
        decorations,
    )


def _circle_marks_graph(n: int) -> ColoredGraph:
    verts = tuple(f"m{i}" for i in range(n))
    edges = tuple(Edge(f"c{i}", verts[i - 1], verts[i % n]) for i in range(1, n + 1))
    reduced = ReducedGraph(graph=TopoGraph(verts, edges), is_circle=False, suppression_pairs=())
    flip = {_mark_color(i): _mark_color((n - i) % n) for i in range(n)}
    return ColoredGraph(
        reduced,
        {verts[i]: _mark_color(i) for i in range(n)},
        {e.id: "_" for e in edges},
        (flip,),
        (),
    )


def _leaf_rotation_graph(r: ReducedGraph) -> ColoredGraph:
    g = r.graph
    degs = g.degree_map()
    hubs = [v for v in g.vertices if degs[v] >= 3]
    leaves = [v for v in g.vertices if degs[v] == 1]
    star_shaped = (
        len(hubs) == 1
        and len(leaves) == len(g.vertices) - 1
        and len(g.edges) == len(leaves)
        and not any(e.is_loop for e in g.edges)
    )
    if not star_shaped:
        raise GraphInputError("LeafRotation applies to stars only")
    k = len(leaves)
    rot = {f"rot{i}": f"rot{i % k + 1}" for i in range(1, k + 1)}
    decorations = tuple(Decoration(e.id, f"rot{i}") for i, e in enumerate(g.edges, start=1))
    return colored(r, palette=(rot,), decorations=decorations)


def apply_scheme(g: TopoGraph, s: Scheme) -> ColoredGraph:
    """Materialize a scheme as a colored graph whose cell family carries the
    scheme's height.

    Trivial returns an all-distinct marker coloring (its height, +inf, is
    evaluated symbolically by scheme_height, never from the marker). Rotation
    has no finite shadow at all and is rejected here.
    """
    if s.variant == ROTATION:
        raise GraphInputError(
            "Rotation is symbolic (irrational: height 0, rational: +inf); "
            "it has no finite cell family"
        )
    r = reduce_graph(g)
    if s.variant == FULL_HOMEO:
        return colored(r)
    if s.variant == TRIVIAL:
        return ColoredGraph(
            r,
            {v: f"id:{v}" for v in r.graph.vertices},
            {e.id: f"id:{e.id}" for e in r.graph.edges},
            (),
            (),
        )
    if s.variant == CIRCLE_MARKS:
        if not r.is_circle:
            raise GraphInputError("CircleMarks applies to the circle only")
        return _circle_marks_graph(s.n)
    if s.variant == LEAF_ROTATION:
        if r.is_circle:
            raise GraphInputError("LeafRotation applies to stars only")
        return _leaf_rotation_graph(r)
    return _marked_graph(g, s)


def closed_form_height(g: TopoGraph, s: Scheme) -> Height:
    """The predicted height of a scheme, by formula rather than by engine."""
    if s.variant == TRIVIAL:
        return Height.infinite()
    if s.variant == ROTATION:
        if not reduce_graph(g).is_circle:
            raise GraphInputError("Rotation applies to the circle only")
        return Height.infinite() if s.angle.is_rational else Height.finite(0)
    if s.variant == CIRCLE_MARKS:
        if not reduce_graph(g).is_circle:
            raise GraphInputError("CircleMarks applies to the circle only")
        return Height.finite(s.n)
    if s.variant == LEAF_ROTATION:
        return Height.finite(3)
    base = base_height(g)
    if s.variant == FULL_HOMEO:
        return base
    if s.variant == FIX_MARKS:
        return base.plus(2 * s.m - 2)
    if s.variant == MARKS_WITH_SEQUENCE:
        return base.plus(2 * s.m - 1)
    if s.variant == FLIP_MARKS:
        return base.plus(s.m - 1)
    raise GraphInputError(f"unknown scheme variant {s.variant!r}")


def scheme_height(g: TopoGraph, s: Scheme) -> Height:
    """Engine-computed height of the scheme's group on this space."""
    if s.variant == TRIVIAL:
        return Height.infinite()
    if s.variant == ROTATION:
        return closed_form_height(g, s)
    return height_of(closure_family(apply_scheme(g, s)))


def lift_to_circle(n: int) -> Scheme:
    """The n-marks circle pin: a group of height exactly n on the circle."""
    if n < 1:
        raise GraphInputError("lift_to_circle needs n >= 1; height 0 is FullHomeo")
    return Scheme(variant=CIRCLE_MARKS, n=n)


def plan(g: TopoGraph, target: Height) -> Scheme:
    """Choose a scheme reaching the target height on this space.

    Case 1 orbits (distinct endpoint orbits) are preferred: an even gap is met
    by FixMarks, an odd one by MarksWithSequence. Orbits with a single
    endpoint orbit fall back to FlipMarks, engine-verified because level
    reversal must actually be realized by a symmetry of the space.
    """
    if target.is_infinite:
        return Scheme(variant=TRIVIAL)
    r = reduce_graph(g)
    base = base_height(g)
    if target.value < base.value:
        raise DomainError(
            f"target height {target} is below the base {base} for this space"
        )
    if target == base:
        return Scheme(variant=FULL_HOMEO)
    if r.is_circle:
        return lift_to_circle(target.value)

    delta = target.value - base.value
    base_c = colored(r)
    aut = automorphisms(base_c)
    vorbs = vertex_orbits(aut, base_c)
    owner = {}
    for i, orb in enumerate(vorbs):
        for v in orb:
            owner[v] = i
    case1: list[tuple[str, ...]] = []
    case2: list[tuple[str, ...]] = []
    for orb in edge_orbits(aut, base_c):
        rep = r.graph.edge(orb[0])
        (case1 if owner[rep.u] != owner[rep.v] else case2).append(orb)
    case1.sort(key=min)
    case2.sort(key=min)

    for orb in case1:
        if delta % 2 == 0:
            return Scheme(variant=FIX_MARKS, edge_orbit=min(orb), m=(delta + 2) // 2)
        return Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit=min(orb), m=(delta + 1) // 2)
    for orb in case2:
        s = Scheme(variant=FLIP_MARKS, edge_orbit=min(orb), m=delta + 1)
        if scheme_height(g, s) == target:
            return s
    raise DomainError(f"no construction reaches height {target} on this space")
