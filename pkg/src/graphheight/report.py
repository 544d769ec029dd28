"""Report assembly: the reference results table, verify-paper, and the JSON
payload shapes shared by the service and the CLI.

The reference table records published heights for the built-in families. Each
verify-paper row recomputes the value (engine route, plus the definitional
chain search on small families), compares it to the claim, and reports
"pass", "flagged-discrepancy" (claim disagrees with the computation but the
independent routes agree with each other), or "fail" (the routes disagree,
which the suite treats as a real defect). One discrepancy is expected and
kept: the lollipop's published base is 4, while every route here computes 3.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .automorphisms import automorphisms, colored
from .closures import (
    ClosureFamily,
    Height,
    base_height,
    closure_family,
    height_of,
    ph_set,
    poset_dot,
)
from .errors import GraphInputError
from .graphs import FamilyId, TopoGraph, graph_to_json, make_family, parse_graph, reduce_graph
from .oracle import (
    SearchResult,
    chain_height,
    cross_check,
    search_min_height,
    verify_chain_certificate,
)
from .schemes import (
    FIX_MARKS,
    FLIP_MARKS,
    FULL_HOMEO,
    MARKS_WITH_SEQUENCE,
    ROTATION,
    TRIVIAL,
    RotationAngle,
    Scheme,
    closed_form_height,
    plan,
    scheme_height,
)
from .automorphisms import edge_orbits, vertex_orbits

VERSION = "0.1.0"
TOOL = {"name": "graphheight", "version": VERSION}

# chain-search route is included in verify-paper rows only up to this size;
# the full <=18-cell sweep belongs to the oracle equivalence tests
CHAIN_ROW_CAP = 12

EXPECTED_FLAGS = ("lollipop",)


def reference_claims() -> list[tuple[str, Height]]:
    rows: list[tuple[str, Height]] = [
        ("interval", Height.finite(1)),
        ("circle", Height.finite(0)),
    ]
    rows += [(f"star:{n}", Height.finite(2)) for n in range(3, 11)]
    rows += [(f"xn:{n}", Height.finite(4 * n - 10)) for n in range(3, 9)]
    rows += [(f"yn:{n}", Height.finite(4 * n - 9)) for n in range(4, 9)]
    rows += [(f"zn:{n}", Height.finite(4 * n - 7)) for n in range(4, 9)]
    rows += [(f"wn:{n}", Height.finite(4 * n - 8)) for n in range(4, 9)]
    rows += [("lollipop", Height.finite(4))]
    return rows


def claimed_base(label: str | None) -> Height | None:
    if label is None:
        return None
    for key, h in reference_claims():
        if key == label:
            return h
    return None


ROTATION_RATIONALS = [
    Fraction(p, q)
    for (p, q) in (
        (1, 2), (1, 3), (2, 3), (1, 4), (3, 4),
        (1, 5), (2, 5), (3, 5), (4, 5), (1, 6),
        (5, 6), (1, 7), (2, 7), (3, 7), (1, 8),
        (3, 8), (5, 8), (1, 9), (2, 9), (7, 10),
    )
]

ROTATION_IRRATIONALS = ["sqrt2", "sqrt3", "golden"]


def _family_rows() -> list[dict]:
    rows = []
    for label, claimed in reference_claims():
        g = make_family(FamilyId.parse(label))
        fam = closure_family(colored(reduce_graph(g)))
        computed = height_of(fam)
        routes: dict = {"engine": computed.to_json()}
        internal_agree = True
        if len(fam.cells) <= CHAIN_ROW_CAP:
            ch, cert = chain_height(fam)
            routes["chainSearch"] = ch.to_json()
            internal_agree = ch == computed and verify_chain_certificate(fam, cert)
        if not internal_agree:
            status = "fail"
        elif computed == claimed:
            status = "pass"
        else:
            status = "flagged-discrepancy"
        row = {
            "claim": label,
            "claimed": claimed.to_json(),
            "computed": computed.to_json(),
            "routes": routes,
            "status": status,
        }
        if status == "flagged-discrepancy":
            row["expected"] = label in EXPECTED_FLAGS
            row["note"] = (
                "published value disagrees with both computation routes; "
                "kept as a known discrepancy"
                if label in EXPECTED_FLAGS
                else "unexpected discrepancy"
            )
        rows.append(row)
    return rows


def _rotation_rows() -> list[dict]:
    circle = make_family(FamilyId("circle"))
    rows = []
    for q in ROTATION_RATIONALS:
        s = Scheme(variant=ROTATION, angle=RotationAngle(rational=q))
        h = scheme_height(circle, s)
        rows.append(
            {
                "claim": f"rotation:{q}",
                "claimed": "inf",
                "computed": h.to_json(),
                "status": "pass" if h.is_infinite else "fail",
            }
        )
    for tag in ROTATION_IRRATIONALS:
        s = Scheme(variant=ROTATION, angle=RotationAngle(irrational=tag))
        h = scheme_height(circle, s)
        rows.append(
            {
                "claim": f"rotation:{tag}",
                "claimed": 0,
                "computed": h.to_json(),
                "status": "pass" if h == Height.finite(0) else "fail",
            }
        )
    return rows


def _trivial_rows() -> list[dict]:
    rows = []
    for label, _ in reference_claims():
        g = make_family(FamilyId.parse(label))
        h = scheme_height(g, Scheme(variant=TRIVIAL))
        rows.append(
            {
                "claim": f"trivial:{label}",
                "claimed": "inf",
                "computed": h.to_json(),
                "status": "pass" if h.is_infinite else "fail",
            }
        )
    return rows


def _monotone_rows() -> list[dict]:
    # shrinking the group never shrinks the height
    checks = [
        ("star:3", Scheme(variant=FULL_HOMEO), Scheme(variant=FIX_MARKS, edge_orbit="e1", m=2)),
        ("star:3", Scheme(variant=FIX_MARKS, edge_orbit="e1", m=2), Scheme(variant=FIX_MARKS, edge_orbit="e1", m=3)),
        ("interval", Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=2), Scheme(variant=FLIP_MARKS, edge_orbit="e1", m=3)),
        ("xn:4", Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="l3_1", m=1), Scheme(variant=MARKS_WITH_SEQUENCE, edge_orbit="l3_1", m=2)),
        ("lollipop", Scheme(variant=FULL_HOMEO), Scheme(variant=FLIP_MARKS, edge_orbit="loop", m=2)),
    ]
    rows = []
    for label, coarse, fine in checks:
        g = make_family(FamilyId.parse(label))
        hc = scheme_height(g, coarse)
        hf = scheme_height(g, fine)
        rows.append(
            {
                "claim": f"monotone:{label}:{coarse.variant}<= {fine.variant}(m={fine.m})",
                "claimed": "monotone",
                "computed": f"{hc} <= {hf}",
                "status": "pass" if hc <= hf else "fail",
            }
        )
    return rows


def _phset_rows() -> list[dict]:
    interval = make_family(FamilyId("interval"))
    circle = make_family(FamilyId("circle"))
    star3 = make_family(FamilyId("star", 3))
    checks = [
        ("phset:interval-contains-1", ph_set(interval).contains(Height.finite(1)), True),
        ("phset:star3-excludes-1", ph_set(star3).contains(Height.finite(1)), False),
        ("phset:circle-contains-0", ph_set(circle).contains(Height.finite(0)), True),
        ("phset:interval-excludes-0", ph_set(interval).contains(Height.finite(0)), False),
        ("phset:star3-contains-inf", ph_set(star3).contains(Height.infinite()), True),
    ]
    rows = []
    for claim, got, want in checks:
        rows.append(
            {
                "claim": claim,
                "claimed": want,
                "computed": got,
                "status": "pass" if got == want else "fail",
            }
        )
    return rows


def verify_paper() -> dict:
    """Recompute the reference results table and compare, row by row."""
    rows = _family_rows() + _rotation_rows() + _trivial_rows() + _monotone_rows() + _phset_rows()
    flagged = [r["claim"] for r in rows if r["status"] == "flagged-discrepancy"]
    failed = [r["claim"] for r in rows if r["status"] == "fail"]
    unexpected = [c for c in flagged if c not in EXPECTED_FLAGS]
    return {
        "rows": rows,
        "flagged": flagged,
        "failed": failed,
        "ok": not failed and not unexpected,
    }


def graph_from_spec(spec: dict) -> tuple[TopoGraph, str | None]:
    """Accept {"family": "star:6"} or {"vertices": [...], "edges": [...]}."""
    if not isinstance(spec, dict):
        raise GraphInputError("graph spec must be an object")
    fam = spec.get("family")
    if fam is not None:
        if spec.get("vertices") is not None or spec.get("edges") is not None:
            raise GraphInputError("give either a family or explicit vertices/edges, not both")
        fid = FamilyId.parse(fam)
        return make_family(fid), fid.label()
    if spec.get("vertices") is None or spec.get("edges") is None:
        raise GraphInputError("graph spec needs 'family' or both 'vertices' and 'edges'")
    return parse_graph({"vertices": spec["vertices"], "edges": spec["edges"]}), None


def _input_block(g: TopoGraph, label: str | None) -> dict:
    if label is not None:
        return {"family": label}
    return {"vertexCount": len(g.vertices), "edgeCount": len(g.edges)}


def height_report(g: TopoGraph, label: str | None = None) -> dict:
    r = reduce_graph(g)
    fam = closure_family(colored(r))
    h = height_of(fam)
    return {
        "input": _input_block(g, label),
        "reduced": {
            "vertexCount": len(r.graph.vertices),
            "edgeCount": len(r.graph.edges),
            "isCircle": r.is_circle,
        },
        "baseHeight": h.to_json(),
        "achievableHeights": ph_set(g).to_json(),
        "cells": {
            "count": len(fam.cells),
            "byKind": fam.cell_counts(),
            "list": [c.to_json() for c in fam.cells],
        },
    }


def construct_report(
    g: TopoGraph,
    label: str | None,
    target: Height | None = None,
    scheme: Scheme | None = None,
    with_oracle: bool = False,
) -> dict:
    if scheme is None:
        if target is None:
            raise GraphInputError("construct needs a target height or an explicit scheme")
        scheme = plan(g, target)
    engine = scheme_height(g, scheme)
    formula = closed_form_height(g, scheme)
    out = {
        "input": _input_block(g, label),
        "scheme": scheme.to_json(),
        "schemeHeight": engine.to_json(),
        "closedForm": formula.to_json(),
        "baseHeight": base_height(g).to_json(),
        "achievableHeights": ph_set(g).to_json(),
    }
    if target is not None:
        out["target"] = target.to_json()
    if with_oracle:
        claimed = claimed_base(label) if scheme.variant == FULL_HOMEO else None
        out["oracle"] = cross_check(g, scheme, claimed=claimed).to_json()
    return out


def orbits_report(g: TopoGraph, label: str | None = None, want_dot: bool = False) -> dict:
    r = reduce_graph(g)
    c = colored(r)
    fam = closure_family(c)
    out: dict = {
        "input": _input_block(g, label),
        "isCircle": r.is_circle,
        "cells": {
            "count": len(fam.cells),
            "byKind": fam.cell_counts(),
            "list": [cell.to_json() for cell in fam.cells],
        },
    }
    if not r.is_circle:
        aut = automorphisms(c)
        out["groupOrder"] = aut.order
        out["vertexOrbits"] = [list(o) for o in vertex_orbits(aut, c)]
        out["edgeOrbits"] = [list(o) for o in edge_orbits(aut, c)]
    if want_dot:
        out["dot"] = poset_dot(fam)
    return out


def oracle_report(g: TopoGraph, label: str | None, scheme: Scheme) -> dict:
    claimed = claimed_base(label) if scheme.variant == FULL_HOMEO else None
    return cross_check(g, scheme, claimed=claimed).to_json()


def search_report(res: SearchResult) -> dict:
    return {
        "target": res.target,
        "witness": graph_to_json(res.witness) if res.witness else None,
        "witnessFound": res.witness is not None,
        "classesExamined": res.classes_examined,
        "bounds": {"vmax": res.vmax, "emax": res.emax},
    }


def run_search(p: int, vmax: int, emax: int) -> dict:
    return search_report(search_min_height(p, vmax, emax))


def dynamics_report(f, n_points: int, depth: int) -> dict:
    from .dynamics import infinity_certificate, verify_certificate

    cert = infinity_certificate(f, n_points, depth)
    ok = verify_certificate(f, cert)
    return {
        "height": "inf",
        "verified": ok,
        "certificate": cert.to_json(),
    }


def finish(payload: dict, started: float, no_timing: bool = False) -> dict:
    out = dict(payload)
    out["tool"] = dict(TOOL)
    if not no_timing:
        out["timingMs"] = round((time.perf_counter() - started) * 1000, 3)
    return out
