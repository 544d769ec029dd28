"""Command-line client for the height service.

By default the CLI talks to an in-process copy of the HTTP service, so no
server needs to be running; pass --server URL to use a remote one instead.
Exit codes: 0 success, 1 unexpected reference-table mismatch or internal
error, 2 bad input, 3 unreachable target height, 4 oracle bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys


def _read_json_file(path: str, what: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {what} file {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: {what} file {path} is not valid JSON: {exc}", file=sys.stderr)
        raise SystemExit(2)
    if not isinstance(raw, dict):
        print(f"error: {what} file {path} must hold a JSON object", file=sys.stderr)
        raise SystemExit(2)
    return raw


def _graph_spec(args) -> dict:
    if args.family and args.graph:
        print("error: give --family or --graph, not both", file=sys.stderr)
        raise SystemExit(2)
    if args.family:
        return {"family": args.family}
    if args.graph:
        return _read_json_file(args.graph, "graph")
    print("error: a graph is required (--family NAME or --graph FILE)", file=sys.stderr)
    raise SystemExit(2)


def _parse_target_arg(raw: str):
    if raw == "inf":
        return "inf"
    try:
        return int(raw)
    except ValueError:
        print(f"error: target must be an integer or 'inf', got {raw!r}", file=sys.stderr)
        raise SystemExit(2)


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _post(args, path: str, payload: dict):
    payload = dict(payload)
    if args.json or getattr(args, "no_timing", False):
        payload["noTiming"] = True
    with _client(args.server) as client:
        resp = client.post(path, json=payload)
    try:
        body = resp.json()
    except ValueError:
        print(f"error: server returned non-JSON response ({resp.status_code})", file=sys.stderr)
        raise SystemExit(1)
    if resp.status_code != 200:
        msg = body.get("error", "request failed") if isinstance(body, dict) else "request failed"
        code = body.get("exitCode", 1) if isinstance(body, dict) else 1
        print(f"error: {msg}", file=sys.stderr)
        raise SystemExit(int(code))
    return body


def _emit_json(body: dict) -> None:
    body = {k: v for k, v in body.items() if k != "timingMs"}
    print(json.dumps(body, sort_keys=True, indent=2))


def _fmt_height(raw) -> str:
    return "+inf" if raw == "inf" else str(raw)


def _fmt_ph(raw: dict) -> str:
    return f"every integer >= {raw['base']}, plus +inf"


def _fmt_timing(body: dict) -> str:
    ms = body.get("timingMs")
    return "" if ms is None else f"  ({ms} ms)"


def _cmd_height(args) -> int:
    body = _post(args, "/height", {"graph": _graph_spec(args)})
    if args.json:
        _emit_json(body)
        return 0
    print(f"base height: {_fmt_height(body['baseHeight'])}{_fmt_timing(body)}")
    print(f"achievable heights: {_fmt_ph(body['achievableHeights'])}")
    red = body["reduced"]
    shape = "circle" if red["isCircle"] else f"{red['vertexCount']} vertices, {red['edgeCount']} edges"
    print(f"reduced form: {shape}")
    kinds = ", ".join(f"{k}={v}" for k, v in sorted(body["cells"]["byKind"].items()))
    print(f"orbit closures: {body['cells']['count']} ({kinds})")
    return 0


def _cmd_construct(args) -> int:
    payload: dict = {"graph": _graph_spec(args)}
    if args.target is not None:
        payload["target"] = _parse_target_arg(args.target)
    if args.scheme:
        payload["scheme"] = _read_json_file(args.scheme, "scheme")
    if args.oracle:
        payload["withOracle"] = True
    body = _post(args, "/construct", payload)
    if args.json:
        _emit_json(body)
        return 0
    s = body["scheme"]
    parts = [s["variant"]]
    for key in ("edgeOrbit", "m", "n"):
        if key in s:
            parts.append(f"{key}={s[key]}")
    print(f"scheme: {' '.join(parts)}{_fmt_timing(body)}")
    print(f"scheme height: {_fmt_height(body['schemeHeight'])} (closed form {_fmt_height(body['closedForm'])})")
    print(f"base height: {_fmt_height(body['baseHeight'])}")
    if "oracle" in body:
        ora = body["oracle"]
        print(f"oracle agreement: {ora['agree']}")
    return 0


def _cmd_orbits(args) -> int:
    payload = {"graph": _graph_spec(args)}
    if args.dot:
        payload["dot"] = True
    body = _post(args, "/orbits", payload)
    if args.json:
        _emit_json(body)
        return 0
    if args.dot:
        print(body["dot"])
        return 0
    if body["isCircle"]:
        print("reduced form is a circle; one closure cell, every point equivalent")
    else:
        print(f"automorphism count: {body['groupOrder']}{_fmt_timing(body)}")
        print(f"vertex orbits: {body['vertexOrbits']}")
        print(f"edge orbits: {body['edgeOrbits']}")
    kinds = ", ".join(f"{k}={v}" for k, v in sorted(body["cells"]["byKind"].items()))
    print(f"orbit closures: {body['cells']['count']} ({kinds})")
    return 0


def _cmd_oracle(args) -> int:
    payload = {
        "graph": _graph_spec(args),
        "scheme": _read_json_file(args.scheme, "scheme"),
    }
    body = _post(args, "/oracle", payload)
    if args.json:
        _emit_json(body)
        return 0
    print(f"engine: {_fmt_height(body['engine'])}{_fmt_timing(body)}")
    print(f"closed form: {_fmt_height(body['paperFormula'])}")
    if body.get("chainSearch") is not None:
        print(f"chain search: {_fmt_height(body['chainSearch'])}")
        print(f"certificate verified: {body['certificateVerified']}")
    print(f"agree: {body['agree']}")
    ref = body.get("reference")
    if ref:
        print(f"reference value {_fmt_height(ref['claimed'])}: {ref['status']}")
    return 0


def _cmd_search(args) -> int:
    payload = {"p": args.p, "vmax": args.vmax, "emax": args.emax}
    body = _post(args, "/search", payload)
    if args.json:
        _emit_json(body)
        return 0
    if body["witnessFound"]:
        w = body["witness"]
        print(
            f"smallest witness of height {args.p}: "
            f"{len(w['vertices'])} vertices, {len(w['edges'])} edges"
            f"{_fmt_timing(body)}"
        )
        print(json.dumps(w, sort_keys=True))
    else:
        print(f"no graph of height {args.p} within bounds{_fmt_timing(body)}")
    print(f"isomorphism classes examined: {body['classesExamined']}")
    return 0 if body["witnessFound"] else 1


def _cmd_dynamics(args) -> int:
    pl = _read_json_file(args.pl, "piecewise-linear map")
    payload = {"points": pl.get("points"), "n": args.n, "depth": args.depth}
    body = _post(args, "/dynamics", payload)
    if args.json:
        _emit_json(body)
        return 0
    cert = body["certificate"]
    print(f"height: {_fmt_height(body['height'])}{_fmt_timing(body)}")
    print(f"certificate mode: {cert['mode']}" + (" (degenerate)" if cert["degenerate"] else ""))
    print(f"invariant points exhibited: {len(cert['points'])}, orbit depth {cert['depth']}")
    print(f"verified: {body['verified']}")
    return 0 if body["verified"] else 1


def _cmd_verify_paper(args) -> int:
    body = _post(args, "/verify-paper", {})
    if args.json:
        _emit_json(body)
    else:
        for row in body["rows"]:
            status = row["status"].upper()
            line = f"{status:20s} {row['claim']}: claimed {row['claimed']}, computed {row['computed']}"
            print(line)
        print(f"rows: {len(body['rows'])}, flagged: {body['flagged'] or 'none'}{_fmt_timing(body)}")
        print("result: " + ("ok" if body["ok"] else "UNEXPECTED MISMATCH"))
    return 0 if body["ok"] else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="built-in family, e.g. interval, circle, star:5, xn:4")
    p.add_argument("--graph", help="path to a graph JSON file ('-' for stdin)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the raw JSON response")
    p.add_argument("--no-timing", dest="no_timing", action="store_true", help="omit timing from output")
    p.add_argument("--server", help="base URL of a running service (default: in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphheight",
        description="heights of transformation groups on finite topological graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("height", help="base height and achievable-height set of a graph")
    _add_graph_args(p)
    _add_common(p)
    p.set_defaults(func=_cmd_height)

    p = sub.add_parser("construct", help="build a subgroup scheme hitting a target height")
    _add_graph_args(p)
    p.add_argument("--target", help="target height: integer or 'inf'")
    p.add_argument("--scheme", help="path to an explicit scheme JSON file")
    p.add_argument("--oracle", action="store_true", help="cross-check the scheme height")
    _add_common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("orbits", help="orbit partitions and the closure poset")
    _add_graph_args(p)
    p.add_argument("--dot", action="store_true", help="emit the closure poset as Graphviz DOT")
    _add_common(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("oracle", help="cross-check a scheme height by independent routes")
    _add_graph_args(p)
    p.add_argument("--scheme", required=True, help="path to a scheme JSON file")
    _add_common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("search", help="smallest graph whose base height is p")
    p.add_argument("--p", type=int, required=True, help="target base height")
    p.add_argument("--vmax", type=int, default=6, help="vertex bound (default 6)")
    p.add_argument("--emax", type=int, default=8, help="edge bound (default 8)")
    _add_common(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("dynamics", help="infinite-height certificate for a circle homeomorphism")
    p.add_argument("--pl", required=True, help="path to a piecewise-linear map JSON file")
    p.add_argument("--n", type=int, default=50, help="invariant points to exhibit (default 50)")
    p.add_argument("--depth", type=int, default=50, help="orbit sample depth (default 50)")
    _add_common(p)
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("verify-paper", help="recompute the reference results table")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_paper)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    # accepted for interface compatibility; every computation here is exact,
    # so the seed changes nothing
    os.environ.get("GRAPHHEIGHT_SEED")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
