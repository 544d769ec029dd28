from fractions import Fraction

import pytest

from graphheight.closures import Height, base_height
from graphheight.errors import DomainError, GraphInputError
from graphheight.graphs import Edge, FamilyId, TopoGraph, make_family
from graphheight.schemes import (
    CIRCLE_MARKS,
    FIX_MARKS,
    FLIP_MARKS,
    FULL_HOMEO,
    LEAF_ROTATION,
    MARKS_WITH_SEQUENCE,
    ROTATION,
    SEQUENCE_LABEL,
    TRIVIAL,
    RotationAngle,
    Scheme,
    apply_scheme,
    closed_form_height,
    lift_to_circle,
    plan,
    scheme_height,
)


def rational(p, q):
    return RotationAngle(rational=Fraction(p, q))


class TestSchemeValidation:
    def test_unknown_variant(self):
        with pytest.raises(GraphInputError, match="unknown scheme variant"):
            Scheme(variant="Banana")

    def test_marks_need_orbit_and_m(self):
        with pytest.raises(GraphInputError, match="m >= 1"):
            Scheme(variant=FIX_MARKS, edge_orbit="e1")
        with pytest.raises(GraphInputError, match="m >= 1"):
            Scheme(variant=FLIP_MARKS, m=2)
        with pytest.raises(GraphInputError, match="m >= 1"):
            Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e1", m=0)

    def test_circle_marks_needs_n(self):
        with pytest.raises(GraphInputError, match="n >= 1"):
            Scheme(variant=CIRCLE_MARKS)
        with pytest.raises(GraphInputError, match="n >= 1"):
            Scheme(variant=CIRCLE_MARKS, n=0)

    def test_rotation_needs_angle(self):
        with pytest.raises(GraphInputError, match="needs an angle"):
            Scheme(variant=ROTATION)

    def test_parameterless_variants_reject_params(self):
        with pytest.raises(GraphInputError, match="takes no parameters"):
            Scheme(variant=FULL_HOMEO, m=2)
        with pytest.raises(GraphInputError, match="takes no parameters"):
            Scheme(variant=TRIVIAL, edge_orbit="e1")

    def test_angle_exactly_one_kind(self):
        with pytest.raises(GraphInputError):
            RotationAngle()
        with pytest.raises(GraphInputError):
            RotationAngle(rational=Fraction(1, 2), irrational="sqrt2")


class TestSchemeJson:
    @pytest.mark.parametrize(
        "s",
        [
            Scheme(variant=FULL_HOMEO),
            Scheme(variant=TRIVIAL),
            Scheme(variant=FIX_MARKS, edge_orbit="e1", m=3),
            Scheme(variant=FLIP_MARKS, edge_orbit="loop", m=2),
            Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e2", m=1),
            Scheme(variant=CIRCLE_MARKS, n=5),
            Scheme(variant=ROTATION, angle=rational(2, 7)),
            Scheme(variant=ROTATION, angle=RotationAngle(irrational="sqrt2")),
            Scheme(variant=LEAF_ROTATION),
        ],
        ids=lambda s: s.variant + str(s.m or s.n or ""),
    )
    def test_round_trip(self, s):
        assert Scheme.from_json(s.to_json()) == s

    def test_unknown_field_rejected(self):
        with pytest.raises(GraphInputError, match="unknown scheme field"):
            Scheme.from_json({"variant": FULL_HOMEO, "extra": 1})

    def test_missing_variant(self):
        with pytest.raises(GraphInputError, match="'variant'"):
            Scheme.from_json({"m": 2})

    def test_bool_m_rejected(self):
        with pytest.raises(GraphInputError, match="must be an integer"):
            Scheme.from_json({"variant": FIX_MARKS, "edgeOrbit": "e1", "m": True})

    def test_bad_rational(self):
        with pytest.raises(GraphInputError, match="bad rational"):
            Scheme.from_json({"variant": ROTATION, "angle": {"rational": "x/y"}})

    def test_camel_case_key(self):
        s = Scheme.from_json({"variant": FIX_MARKS, "edgeOrbit": "e9", "m": 2})
        assert s.edge_orbit == "e9"


class TestApply:
    def test_rotation_has_no_cell_family(self, circle):
        with pytest.raises(GraphInputError, match="symbolic"):
            apply_scheme(circle, Scheme(variant=ROTATION, angle=rational(1, 2)))

    def test_circle_marks_rejects_non_circle(self, star3):
        with pytest.raises(GraphInputError, match="circle only"):
            apply_scheme(star3, Scheme(variant=CIRCLE_MARKS, n=2))

    def test_marks_reject_circle(self, circle):
        with pytest.raises(GraphInputError, match="use CircleMarks"):
            apply_scheme(circle, Scheme(variant=FIX_MARKS, edge_orbit="l", m=2))

    def test_leaf_rotation_rejects_non_star(self, lollipop):
        with pytest.raises(GraphInputError, match="stars only"):
            apply_scheme(lollipop, Scheme(variant=LEAF_ROTATION))

    def test_fix_marks_needs_distinct_endpoint_orbits(self, lollipop):
        with pytest.raises(GraphInputError, match="use FlipMarks"):
            apply_scheme(lollipop, Scheme(variant=FIX_MARKS, edge_orbit="loop", m=2))

    def test_flip_marks_needs_single_endpoint_orbit(self, star3):
        with pytest.raises(GraphInputError, match="use FixMarks"):
            apply_scheme(star3, Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=2))

    def test_unknown_orbit_reference(self, star3):
        with pytest.raises(GraphInputError, match="not found"):
            apply_scheme(star3, Scheme(variant=FIX_MARKS, edge_orbit="zz", m=2))

    def test_sequence_decoration_lands_on_first_part(self, star3):
        c = apply_scheme(star3, Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e1", m=2))
        decos = {(d.edge, d.label) for d in c.decorations}
        # one sequence per edge of the orbit, on the hub-side part
        assert decos == {(f"e{i}#s1", SEQUENCE_LABEL) for i in (1, 2, 3)}

    def test_trivial_marker_pins_everything(self, star3):
        from graphheight.automorphisms import automorphisms

        c = apply_scheme(star3, Scheme(variant=TRIVIAL))
        assert automorphisms(c).order == 1

    def test_original_edge_id_resolves_through_reduction(self):
        # a path a-b-c reduces to one arc; either original id names its orbit
        g = TopoGraph(("a", "b", "c"), (Edge("x", "a", "b"), Edge("y", "b", "c")))
        c = apply_scheme(g, Scheme(variant=FLIP_MARKS, edge_orbit="y", m=3))
        assert len(c.reduced.graph.edges) == 3


HEIGHT_TABLE = [
    ("star:3", Scheme(variant=FULL_HOMEO), 2),
    ("star:3", Scheme(variant=FIX_MARKS, edge_orbit="e1", m=1), 2),
    ("star:3", Scheme(variant=FIX_MARKS, edge_orbit="e1", m=2), 4),
    ("star:3", Scheme(variant=FIX_MARKS, edge_orbit="e1", m=4), 8),
    ("star:5", Scheme(variant=FIX_MARKS, edge_orbit="e1", m=2), 4),
    ("star:3", Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e1", m=1), 3),
    ("star:3", Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e1", m=3), 7),
    ("interval", Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=1), 1),
    ("interval", Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=2), 2),
    ("interval", Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=5), 5),
    ("lollipop", Scheme(variant=FLIP_MARKS, edge_orbit="loop", m=2), 4),
    ("lollipop", Scheme(variant=FLIP_MARKS, edge_orbit="loop", m=3), 5),
    ("lollipop", Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="stick", m=1), 4),
    ("xn:4", Scheme(variant=FIX_MARKS, edge_orbit="l4_1", m=2), 8),
]


class TestHeights:
    @pytest.mark.parametrize(
        "label,s,want", HEIGHT_TABLE, ids=[f"{l}-{s.variant}{s.m}" for l, s, _ in HEIGHT_TABLE]
    )
    def test_engine_equals_closed_form(self, label, s, want):
        g = make_family(FamilyId.parse(label))
        assert scheme_height(g, s) == Height.finite(want)
        assert closed_form_height(g, s) == Height.finite(want)

    def test_trivial_is_infinite_everywhere(self, star3, circle, lollipop):
        for g in (star3, circle, lollipop):
            assert scheme_height(g, Scheme(variant=TRIVIAL)).is_infinite

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_circle_marks(self, circle, n):
        s = Scheme(variant=CIRCLE_MARKS, n=n)
        assert scheme_height(circle, s) == Height.finite(n)
        assert closed_form_height(circle, s) == Height.finite(n)

    @pytest.mark.parametrize("k", [3, 4, 5, 7])
    def test_leaf_rotation_is_three(self, k):
        g = make_family(FamilyId("star", k))
        assert scheme_height(g, Scheme(variant=LEAF_ROTATION)) == Height.finite(3)

    def test_rotation_dichotomy(self, circle):
        for p, q in [(1, 2), (2, 7), (3, 5)]:
            s = Scheme(variant=ROTATION, angle=rational(p, q))
            assert scheme_height(circle, s).is_infinite
        for tag in ["sqrt2", "golden"]:
            s = Scheme(variant=ROTATION, angle=RotationAngle(irrational=tag))
            assert scheme_height(circle, s) == Height.finite(0)

    def test_rotation_rejects_non_circle(self, interval):
        s = Scheme(variant=ROTATION, angle=rational(1, 2))
        with pytest.raises(GraphInputError, match="circle only"):
            scheme_height(interval, s)


class TestLift:
    def test_lift_heights(self, circle):
        for n in (1, 2, 5):
            assert scheme_height(circle, lift_to_circle(n)) == Height.finite(n)

    def test_lift_floor(self):
        with pytest.raises(GraphInputError, match="n >= 1"):
            lift_to_circle(0)


class TestPlanner:
    def test_infinite_target(self, star3):
        assert plan(star3, Height.infinite()).variant == TRIVIAL

    def test_below_base(self, star3):
        with pytest.raises(DomainError, match="below the base"):
            plan(star3, Height.finite(1))

    def test_base_target_is_full_group(self, star3):
        assert plan(star3, Height.finite(2)).variant == FULL_HOMEO

    def test_circle_targets_use_marks(self, circle):
        s = plan(circle, Height.finite(4))
        assert s.variant == CIRCLE_MARKS and s.n == 4

    def test_even_gap_uses_fix_marks(self, star3):
        s = plan(star3, Height.finite(6))
        assert s.variant == FIX_MARKS and s.m == 3

    def test_odd_gap_uses_sequence(self, star3):
        s = plan(star3, Height.finite(5))
        assert s.variant == MARKS_WITH_SEQUENCE and s.m == 2

    def test_flip_fallback_when_no_distinct_orbits(self, dumbbell):
        s = plan(dumbbell, Height.finite(3))
        assert s.variant == FLIP_MARKS
        assert scheme_height(dumbbell, s) == Height.finite(3)

    @pytest.mark.parametrize("label", ["interval", "star:3", "lollipop", "xn:4"])
    def test_planned_schemes_hit_target(self, label):
        g = make_family(FamilyId.parse(label))
        b = base_height(g).value
        for t in range(b, b + 8):
            s = plan(g, Height.finite(t))
            assert scheme_height(g, s) == Height.finite(t), (label, t, s)

    def test_plan_is_deterministic(self, star3):
        a = plan(star3, Height.finite(9))
        b = plan(star3, Height.finite(9))
        assert a == b


class TestMonotonicity:
    # a finer marking never lowers the height
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_fix_marks_step(self, star3, m):
        lo = scheme_height(star3, Scheme(variant=FIX_MARKS, edge_orbit="e1", m=m))
        hi = scheme_height(star3, Scheme(variant=FIX_MARKS, edge_orbit="e1", m=m + 1))
        assert hi.value - lo.value == 2

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_flip_marks_step(self, interval, m):
        lo = scheme_height(interval, Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=m))
        hi = scheme_height(interval, Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=m + 1))
        assert hi.value - lo.value == 1

    def test_sequence_adds_one_over_fix(self, star3):
        fix = scheme_height(star3, Scheme(variant=FIX_MARKS, edge_orbit="e1", m=2))
        seq = scheme_height(star3, Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="e1", m=2))
        assert seq.value - fix.value == 1
