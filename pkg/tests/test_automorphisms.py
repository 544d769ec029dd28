import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphheight.automorphisms import (
    AutTriple,
    Decoration,
    automorphisms,
    check_triple,
    colored,
    decoration_orbits,
    edge_orbits,
    vertex_orbits,
)
from graphheight.errors import CircleInputError, GraphInputError
from graphheight.graphs import Edge, FamilyId, TopoGraph, make_family, reduce_graph
from graphheight.oracle import enumerate_automorphisms


def plain(g: TopoGraph):
    return colored(reduce_graph(g))


def compose(c, s: AutTriple, t: AutTriple) -> AutTriple:
    return AutTriple(
        vertex_map={v: s.vertex_map[t.vertex_map[v]] for v in t.vertex_map},
        edge_map={e: s.edge_map[t.edge_map[e]] for e in t.edge_map},
        color_map={
            k: s.color_map.get(t.color_map[k], t.color_map[k]) for k in t.color_map
        },
    )


class TestOrders:
    def test_interval(self, interval):
        assert automorphisms(plain(interval)).order == 2

    def test_stars(self):
        for n, want in [(3, 6), (4, 24), (5, 120)]:
            g = make_family(FamilyId("star", n))
            assert automorphisms(plain(g)).order == want

    def test_theta(self, theta):
        # endpoint swap times the 3! permutations of the parallel arcs
        assert automorphisms(plain(theta)).order == 12

    def test_dumbbell(self, dumbbell):
        assert automorphisms(plain(dumbbell)).order == 2

    def test_lollipop_is_rigid(self, lollipop):
        assert automorphisms(plain(lollipop)).order == 1

    def test_xn4(self):
        g = make_family(FamilyId("xn", 4))
        assert automorphisms(plain(g)).order == 144

    def test_colors_break_symmetry(self, star3):
        c = colored(reduce_graph(star3), edge_colors={"e1": "red"})
        assert automorphisms(c).order == 2

    def test_palette_restores_symmetry(self, star3):
        c = colored(
            reduce_graph(star3),
            edge_colors={"e1": "red", "e2": "blue"},
            palette=({"red": "blue", "blue": "red"},),
        )
        # e3 fixed; red/blue swap rides the palette
        assert automorphisms(c).order == 2

    def test_decorations_break_symmetry(self, star3):
        c = colored(reduce_graph(star3), decorations=(Decoration("e1", "dot"),))
        assert automorphisms(c).order == 2

    def test_circle_not_accepted(self, circle):
        with pytest.raises(CircleInputError):
            automorphisms(plain(circle))


class TestValidation:
    def test_uncolored_degree_two_vertex_rejected(self):
        g = TopoGraph(("a", "b", "c"), (Edge("e1", "a", "b"), Edge("e2", "b", "c")))
        from graphheight.graphs import ReducedGraph

        r = ReducedGraph(graph=g, is_circle=False, suppression_pairs=())
        with pytest.raises(GraphInputError, match="degree 2"):
            colored(r)
        # a color on the offending vertex lifts the ban
        c = colored(r, vertex_colors={"b": "pin"})
        assert automorphisms(c).order == 2

    def test_decoration_unknown_edge(self, star3):
        with pytest.raises(GraphInputError, match="unknown edge"):
            colored(reduce_graph(star3), decorations=(Decoration("zz", "dot"),))

    def test_duplicate_decoration(self, star3):
        with pytest.raises(GraphInputError, match="duplicate decoration"):
            colored(
                reduce_graph(star3),
                decorations=(Decoration("e1", "dot"), Decoration("e1", "dot")),
            )

    def test_palette_must_be_bijective(self, star3):
        with pytest.raises(GraphInputError, match="bijection"):
            colored(
                reduce_graph(star3),
                edge_colors={"e1": "red", "e2": "blue"},
                palette=({"red": "blue"},),
            )

    def test_palette_elements_close_under_composition(self, star3):
        c = colored(
            reduce_graph(star3),
            edge_colors={"e1": "r", "e2": "g", "e3": "b"},
            palette=({"r": "g", "g": "b", "b": "r"},),
        )
        assert len(c.palette_elements()) == 3


class TestTriples:
    def test_generators_pass_checker(self, theta):
        c = plain(theta)
        aut = automorphisms(c)
        for t in aut.generators:
            assert check_triple(c, t)

    def test_generator_compositions_pass_checker(self, theta):
        c = plain(theta)
        gens = automorphisms(c).generators
        for s in gens:
            for t in gens:
                assert check_triple(c, compose(c, s, t))

    def test_wrong_incidence_fails(self, star3):
        c = plain(star3)
        vm = {"0": "0", "1": "2", "2": "1", "3": "3"}
        em = {"e1": "e1", "e2": "e2", "e3": "e3"}  # edges not moved with vertices
        cm = {"_": "_"}
        assert not check_triple(c, AutTriple(vm, em, cm))

    def test_color_transport_enforced(self, star3):
        c = colored(reduce_graph(star3), edge_colors={"e1": "red"})
        vm = {"0": "0", "1": "2", "2": "1", "3": "3"}
        em = {"e1": "e2", "e2": "e1", "e3": "e3"}
        assert not check_triple(c, AutTriple(vm, em, {"_": "_", "red": "red"}))

    def test_decoration_transport_enforced(self, star3):
        c = colored(reduce_graph(star3), decorations=(Decoration("e1", "dot"),))
        vm = {"0": "0", "1": "2", "2": "1", "3": "3"}
        em = {"e1": "e2", "e2": "e1", "e3": "e3"}
        assert not check_triple(c, AutTriple(vm, em, {"_": "_", "dot": "dot"}))


class TestOrbits:
    def test_star_orbits(self, star3):
        c = plain(star3)
        aut = automorphisms(c)
        vo = vertex_orbits(aut, c)
        assert ("0",) in vo
        assert tuple(sorted(("1", "2", "3"))) in tuple(tuple(sorted(o)) for o in vo)
        assert len(edge_orbits(aut, c)) == 1

    def test_colored_star_orbits(self, star3):
        c = colored(reduce_graph(star3), edge_colors={"e1": "red"})
        aut = automorphisms(c)
        eo = {tuple(sorted(o)) for o in edge_orbits(aut, c)}
        assert eo == {("e1",), ("e2", "e3")}

    def test_decoration_orbit_with_palette(self, star3):
        c = colored(
            reduce_graph(star3),
            edge_colors={"e1": "red", "e2": "blue"},
            palette=({"red": "blue", "blue": "red"},),
            decorations=(Decoration("e1", "red"), Decoration("e2", "blue")),
        )
        aut = automorphisms(c)
        dorbs = decoration_orbits(aut, c)
        assert len(dorbs) == 1 and len(dorbs[0]) == 2


# every pool graph is already reduced: no suppressible degree-2 vertices
GRAPH_POOL = [
    TopoGraph(("a",), (Edge("l1", "a", "a"), Edge("l2", "a", "a"))),
    TopoGraph(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b"), Edge("e3", "a", "b"))),
    TopoGraph(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b"), Edge("la", "a", "a"), Edge("lb", "b", "b"))),
    TopoGraph(("a", "b", "c"), (Edge("e1", "a", "b"), Edge("e2", "a", "c"), Edge("e3", "b", "c"), Edge("e4", "b", "c"), Edge("l", "a", "a"))),
    TopoGraph(("a", "b"), (Edge("la", "a", "a"), Edge("e", "a", "b"), Edge("lb", "b", "b"))),
    TopoGraph(("h", "x", "y", "z"), (Edge("e1", "h", "x"), Edge("e2", "h", "y"), Edge("e3", "h", "z"), Edge("l", "h", "h"))),
]


class TestAgainstEnumeration:
    @pytest.mark.parametrize("g", GRAPH_POOL, ids=lambda g: f"v{len(g.vertices)}e{len(g.edges)}")
    def test_plain_orders_match(self, g):
        c = plain(g)
        assert automorphisms(c).order == enumerate_automorphisms(c).order

    def test_with_palette(self):
        g = GRAPH_POOL[3]
        c = colored(
            reduce_graph(g),
            edge_colors={"e1": "r", "e2": "g"},
            palette=({"r": "g", "g": "r"},),
        )
        assert automorphisms(c).order == enumerate_automorphisms(c).order

    def test_with_decorations(self):
        g = GRAPH_POOL[1]
        c = colored(reduce_graph(g), decorations=(Decoration("e1", "dot"),))
        assert automorphisms(c).order == enumerate_automorphisms(c).order


@st.composite
def small_colored_graphs(draw):
    g = draw(st.sampled_from(GRAPH_POOL))
    r = reduce_graph(g)
    shades = ["_", "crimson", "teal"]
    vc = {v: draw(st.sampled_from(shades)) for v in g.vertices}
    ec = {e.id: draw(st.sampled_from(shades)) for e in g.edges}
    # keep any degree-2 vertex colored so the instance is valid
    for v in g.vertices:
        if g.degree(v) == 2 and vc[v] == "_":
            vc[v] = "pin"
    use_palette = draw(st.booleans())
    palette = ({"crimson": "teal", "teal": "crimson"},) if use_palette else ()
    return colored(r, vc, ec, palette)


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(small_colored_graphs())
    def test_engine_matches_enumeration(self, c):
        assert automorphisms(c).order == enumerate_automorphisms(c).order

    @settings(max_examples=40, deadline=None)
    @given(small_colored_graphs())
    def test_generators_always_valid(self, c):
        for t in automorphisms(c).generators:
            assert check_triple(c, t)

    @settings(max_examples=25, deadline=None)
    @given(small_colored_graphs(), st.integers(0, 2))
    def test_extra_color_never_adds_symmetry(self, c, idx):
        # pinning one more edge can only shrink the group
        before = automorphisms(c).order
        eids = sorted(e.id for e in c.reduced.graph.edges)
        ec = dict(c.edge_color)
        ec[eids[idx % len(eids)]] = "onlyone"
        after = automorphisms(
            colored(c.reduced, dict(c.vertex_color), ec, c.palette, c.decorations)
        ).order
        assert after <= before
