"""FastAPI service exposing the height computations.

Every error surfaces as a JSON body {"error": ..., "exitCode": ...} so thin
clients can propagate a meaningful process exit code. Input problems map to
HTTP 400 (exit 2), domain refusals such as an unreachable target height to
HTTP 422 (exit 3), and oracle bound overruns to HTTP 400 (exit 4).
"""

from __future__ import annotations

import time

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..closures import Height
from ..dynamics import PLHomeo
from ..errors import DomainError, GraphHeightError, GraphInputError
from ..report import (
    TOOL,
    VERSION,
    construct_report,
    dynamics_report,
    finish,
    graph_from_spec,
    height_report,
    oracle_report,
    orbits_report,
    run_search,
    verify_paper,
)
from ..schemes import Scheme
from .models import (
    ConstructRequest,
    DynamicsRequest,
    HeightRequest,
    OracleRequest,
    OrbitsRequest,
    SearchRequest,
    VerifyPaperRequest,
)


def _parse_target(raw) -> Height | None:
    if raw is None:
        return None
    if raw == "inf":
        return Height.infinite()
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise GraphInputError(f"target must be a nonnegative integer or 'inf', got {raw!r}")
    if raw < 0:
        raise DomainError(f"target height {raw} is negative; heights are nonnegative")
    return Height.finite(raw)


def create_app() -> FastAPI:
    app = FastAPI(title="graphheight", version=VERSION)

    @app.exception_handler(GraphHeightError)
    async def _app_error(request, exc: GraphHeightError):
        status = {2: 400, 3: 422, 4: 400}.get(exc.exit_code, 500)
        return JSONResponse(
            status_code=status,
            content={"error": str(exc), "exitCode": exc.exit_code},
        )

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()))
        msg = first.get("msg", "invalid request")
        return JSONResponse(
            status_code=400,
            content={"error": f"invalid request at {loc}: {msg}", "exitCode": 2},
        )

    @app.get("/version")
    def version():
        return {"tool": dict(TOOL)}

    @app.post("/height")
    def height(req: HeightRequest):
        t0 = time.perf_counter()
        g, label = graph_from_spec(req.graph.to_spec())
        return finish(height_report(g, label), t0, req.no_timing)

    @app.post("/construct")
    def construct(req: ConstructRequest):
        t0 = time.perf_counter()
        g, label = graph_from_spec(req.graph.to_spec())
        target = _parse_target(req.target)
        scheme = Scheme.from_json(req.scheme.to_spec()) if req.scheme else None
        if target is None and scheme is None:
            raise GraphInputError("construct needs a target height or an explicit scheme")
        out = construct_report(g, label, target=target, scheme=scheme, with_oracle=req.with_oracle)
        return finish(out, t0, req.no_timing)

    @app.post("/orbits")
    def orbits(req: OrbitsRequest):
        t0 = time.perf_counter()
        g, label = graph_from_spec(req.graph.to_spec())
        return finish(orbits_report(g, label, want_dot=req.dot), t0, req.no_timing)

    @app.post("/oracle")
    def oracle(req: OracleRequest):
        t0 = time.perf_counter()
        g, label = graph_from_spec(req.graph.to_spec())
        scheme = Scheme.from_json(req.scheme.to_spec())
        return finish(oracle_report(g, label, scheme), t0, req.no_timing)

    @app.post("/search")
    def search(req: SearchRequest):
        t0 = time.perf_counter()
        return finish(run_search(req.p, req.vmax, req.emax), t0, req.no_timing)

    @app.post("/dynamics")
    def dynamics(req: DynamicsRequest):
        t0 = time.perf_counter()
        f = PLHomeo.from_json({"points": req.points})
        return finish(dynamics_report(f, req.n, req.depth), t0, req.no_timing)

    @app.post("/verify-paper")
    def verify(req: VerifyPaperRequest | None = None):
        t0 = time.perf_counter()
        no_timing = req.no_timing if req is not None else False
        return finish(verify_paper(), t0, no_timing)

    return app


app = create_app()
