import json

import pytest

from graphheight.errors import GraphInputError
from graphheight.graphs import (
    Edge,
    FamilyId,
    TopoGraph,
    graph_to_json,
    make_family,
    parse_graph,
    reduce_graph,
    subdivide_edges,
)


class TestValidation:
    def test_empty_vertices_rejected(self):
        with pytest.raises(GraphInputError, match="no vertices"):
            TopoGraph((), (Edge("e", "a", "a"),))

    def test_empty_edges_rejected(self):
        with pytest.raises(GraphInputError, match="no edges"):
            TopoGraph(("a",), ())

    def test_duplicate_vertex(self):
        with pytest.raises(GraphInputError, match="duplicate vertex"):
            TopoGraph(("a", "a"), (Edge("e", "a", "a"),))

    def test_duplicate_edge(self):
        with pytest.raises(GraphInputError, match="duplicate edge"):
            TopoGraph(("a",), (Edge("e", "a", "a"), Edge("e", "a", "a")))

    def test_unknown_endpoint(self):
        with pytest.raises(GraphInputError, match="unknown vertex"):
            TopoGraph(("a",), (Edge("e", "a", "b"),))

    def test_disconnected(self):
        with pytest.raises(GraphInputError, match="not connected"):
            TopoGraph(("a", "b"), (Edge("e1", "a", "a"), Edge("e2", "b", "b")))

    def test_degrees_count_loops_twice(self):
        g = TopoGraph(("a", "b"), (Edge("l", "a", "a"), Edge("e", "a", "b")))
        assert g.degree("a") == 3
        assert g.degree("b") == 1
        assert g.degree_map() == {"a": 3, "b": 1}


class TestParsing:
    def test_round_trip(self):
        g = make_family(FamilyId("star", 3))
        assert parse_graph(graph_to_json(g)) == g

    def test_parses_text(self):
        text = json.dumps({"vertices": ["a", "b"], "edges": [["e", "a", "b"]]})
        g = parse_graph(text)
        assert g.edges[0] == Edge("e", "a", "b")

    def test_bad_json_reports_position(self):
        with pytest.raises(GraphInputError, match="line 1"):
            parse_graph("{nope")

    def test_missing_keys(self):
        with pytest.raises(GraphInputError, match="missing 'edges'"):
            parse_graph({"vertices": ["a"]})

    def test_edge_arity(self):
        with pytest.raises(GraphInputError, match=r"edges\[0\]"):
            parse_graph({"vertices": ["a"], "edges": [["e", "a"]]})

    def test_non_string_vertex(self):
        with pytest.raises(GraphInputError, match="list of string ids"):
            parse_graph({"vertices": [1], "edges": []})


class TestReduction:
    def test_no_suppressible_vertices_is_identity(self, star3):
        r = reduce_graph(star3)
        assert r.graph == star3
        assert not r.is_circle
        assert r.suppression_map == {"e1": "e1", "e2": "e2", "e3": "e3"}

    def test_path_collapses_to_one_arc(self):
        g = TopoGraph(
            ("a", "b", "c", "d"),
            (Edge("e1", "a", "b"), Edge("e2", "b", "c"), Edge("e3", "c", "d")),
        )
        r = reduce_graph(g)
        assert len(r.graph.edges) == 1
        merged = r.graph.edges[0]
        assert set(merged.id.split("+")) == {"e1", "e2", "e3"}
        assert {merged.u, merged.v} == {"a", "d"}
        assert r.suppression_map["e2"] == merged.id

    def test_cycle_collapses_to_circle(self):
        g = TopoGraph(
            ("a", "b", "c"),
            (Edge("e1", "a", "b"), Edge("e2", "b", "c"), Edge("e3", "c", "a")),
        )
        r = reduce_graph(g)
        assert r.is_circle
        assert len(r.graph.vertices) == 1
        assert len(r.graph.edges) == 1
        assert r.graph.edges[0].is_loop

    def test_single_loop_is_circle(self, circle):
        assert reduce_graph(circle).is_circle

    def test_lollipop_is_not_circle(self, lollipop):
        r = reduce_graph(lollipop)
        assert not r.is_circle
        assert r.graph == lollipop

    def test_protected_vertex_survives(self):
        g = TopoGraph(
            ("a", "b", "c"),
            (Edge("e1", "a", "b"), Edge("e2", "b", "c")),
        )
        r = reduce_graph(g, protected=frozenset({"b"}))
        assert len(r.graph.edges) == 2
        with pytest.raises(GraphInputError, match="protected vertices"):
            reduce_graph(g, protected=frozenset({"zz"}))

    def test_euler_invariant(self):
        g = TopoGraph(
            ("a", "b", "c", "d"),
            (
                Edge("e1", "a", "b"),
                Edge("e2", "b", "c"),
                Edge("e3", "c", "a"),
                Edge("e4", "c", "d"),
            ),
        )
        r = reduce_graph(g)
        assert len(g.vertices) - len(g.edges) == len(r.graph.vertices) - len(r.graph.edges)

    def test_merged_id_orientation_is_deterministic(self):
        # both traversal directions must normalise to the same merged id
        g1 = TopoGraph(("a", "b", "c"), (Edge("x", "a", "b"), Edge("y", "b", "c")))
        g2 = TopoGraph(("a", "b", "c"), (Edge("y", "c", "b"), Edge("x", "b", "a")))
        assert reduce_graph(g1).graph.edges[0].id == reduce_graph(g2).graph.edges[0].id


class TestFamilies:
    def test_labels_round_trip(self):
        for label in ["interval", "circle", "star:5", "xn:4", "yn:6", "zn:4", "wn:8", "lollipop"]:
            assert FamilyId.parse(label).label() == label

    def test_unknown_family(self):
        with pytest.raises(GraphInputError, match="unknown family"):
            FamilyId.parse("torus")

    def test_parameter_required(self):
        with pytest.raises(GraphInputError, match="needs a parameter"):
            FamilyId.parse("star")

    def test_parameter_forbidden(self):
        with pytest.raises(GraphInputError, match="takes no parameter"):
            FamilyId.parse("circle:3")

    def test_parameter_floor(self):
        with pytest.raises(GraphInputError, match="requires n >= 3"):
            FamilyId.parse("star:2")
        with pytest.raises(GraphInputError, match="requires n >= 4"):
            FamilyId.parse("wn:3")

    def test_star_shape(self):
        g = make_family(FamilyId("star", 5))
        assert len(g.vertices) == 6
        assert len(g.edges) == 5
        assert all(e.u == "0" for e in g.edges)

    def test_xn_shape(self):
        g = make_family(FamilyId("xn", 4))
        # path vertex i carries i leaves, for i in 3..4
        assert len(g.edges) == 1 + 3 + 4
        assert g.degree("3") == 4
        assert g.degree("4") == 5

    def test_yn_zn_wn_extend_xn(self):
        x = make_family(FamilyId("xn", 4))
        y = make_family(FamilyId("yn", 4))
        z = make_family(FamilyId("zn", 4))
        w = make_family(FamilyId("wn", 4))
        assert len(y.edges) == len(x.edges) + 1
        assert len(z.edges) == len(x.edges) + 2
        assert len(w.edges) == len(x.edges) + 2
        assert y.edge("loop3").is_loop
        assert z.edge("loopc").is_loop and not z.edge("zc").is_loop
        assert w.edge("loop3").is_loop and w.edge("loop4").is_loop


class TestSubdivision:
    def test_basic_split(self, interval):
        g, marks, subs = subdivide_edges(interval, {"e1": ("0", 3)})
        assert marks["e1"] == ["e1#k1", "e1#k2"]
        assert subs["e1"] == ["e1#s1", "e1#s2", "e1#s3"]
        assert len(g.edges) == 3
        assert g.edge("e1#s1").u == "0"
        assert g.edge("e1#s3").v == "1"

    def test_m_one_is_identity(self, interval):
        g, marks, subs = subdivide_edges(interval, {"e1": ("0", 1)})
        assert g == interval
        assert marks["e1"] == []
        assert subs["e1"] == ["e1"]

    def test_loop_split(self, circle):
        g, marks, subs = subdivide_edges(circle, {"l": ("v", 2)})
        assert len(g.edges) == 2
        assert not any(e.is_loop for e in g.edges)

    def test_orientation_respects_start(self, interval):
        g, _, subs = subdivide_edges(interval, {"e1": ("1", 2)})
        assert g.edge(subs["e1"][0]).u == "1"

    def test_bad_start(self, interval):
        with pytest.raises(GraphInputError, match="not an endpoint"):
            subdivide_edges(interval, {"e1": ("zz", 2)})

    def test_bad_count(self, interval):
        with pytest.raises(GraphInputError, match=">= 1"):
            subdivide_edges(interval, {"e1": ("0", 0)})
