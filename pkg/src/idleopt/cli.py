"""Command-line client for the solver service.

Every subcommand builds a JSON request and sends it to the FastAPI app,
in-process by default or to a remote server via --server; the CLI holds
no solver logic of its own.  Exit codes: 0 success, 2 input problem,
3 solver refusal (budget, state space, violated assumptions).

Human-facing output renders item labels 1-based; files and JSON stay
0-based.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

import httpx

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3


class ServiceCall(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app)


def _call(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code == 200:
        return response.json()
    try:
        body = response.json()
    except ValueError:
        raise ServiceCall(EXIT_SOLVER, f"HTTP {response.status_code}")
    error = body.get("error")
    if error is None:  # schema-level rejection from FastAPI itself
        raise ServiceCall(EXIT_INPUT, json.dumps(body))
    code = error.get("code", "solver")
    exit_code = EXIT_INPUT if code == "input" else EXIT_SOLVER
    raise ServiceCall(exit_code, f"{code}: {error.get('message', '')}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ServiceCall(EXIT_INPUT, f"cannot read {path}: {e}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _fmt_cell(value) -> str:
    """Render a wire number: 12 significant digits, 'p/q' passed through."""
    if value is None:
        return "unreachable"
    if isinstance(value, str):
        return value
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _budget(args) -> Optional[int]:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("IDLEOPT_BUDGET")
    return int(env) if env else None


# ---------------------------------------------------------------------------


def cmd_solve(args, client) -> int:
    payload = {
        "instance": _load_json(args.instance),
        "method": args.method,
        "exact": args.exact,
        "check": args.validate,
        "seed": args.seed,
        "iterations": args.iterations,
        "budget": _budget(args),
        "inner": args.inner,
    }
    body = _call(client, "/solve", payload)
    out: dict = {"solution": body["solution"]}
    if args.stats and body.get("stats"):
        out["stats"] = body["stats"]
    if body.get("achieved_value") is not None:
        out["achieved_value"] = body["achieved_value"]
    _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_simulate(args, client) -> int:
    payload = {
        "instance": _load_json(args.instance),
        "strategy": _load_json(args.strategy),
        "exact": args.exact,
    }
    body = _call(client, "/simulate", payload)
    rate = None
    lines = [f"{'time':>16}  {'item':>4}  {'price':>16}  {'rate after':>16}"]
    instance = payload["instance"]
    rate_val = Fraction(str(instance.get("initial_rate", 1)))
    for row in body["purchases"]:
        gain = Fraction(str(instance["items"][row["item"]]["x"]))
        rate_val += gain
        lines.append(
            f"{_fmt_cell(row['time']):>16}  {row['item'] + 1:>4}  "
            f"{_fmt_cell(row['price']):>16}  {_fmt_cell(str(rate_val)):>16}"
        )
    lines.append(
        f"buying phase ends {_fmt_cell(body['buying_phase_end'])}; "
        f"total {_fmt_cell(body['total_time'])}; "
        f"final rate {_fmt_cell(body['final_rate'])}"
    )
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_analyze(args, client) -> int:
    body = _call(
        client,
        "/analyze",
        {"instance": _load_json(args.instance), "exact": args.exact},
    )
    _emit(json.dumps(body, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_sweep(args, client) -> int:
    payload = {
        "instance": _load_json(args.instance),
        "exact": args.exact,
        "r_max": args.r_max,
    }
    body = _call(client, "/sweep", payload)
    lines = ["r,total_time,rate_at_switch"]
    for row in body["rows"]:
        lines.append(
            f"{row['r']},{_fmt_cell(row['total_time'])},"
            f"{_fmt_cell(row['rate_at_switch'])}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    sys.stderr.write(
        f"argmin r={body['argmin_r']} rate={_fmt_cell(body['argmin_rate'])}\n"
    )
    return EXIT_OK


def cmd_compare(args, client) -> int:
    payload = {
        "instance": _load_json(args.instance),
        "methods": args.methods.split(","),
        "exact": args.exact,
        "seed": args.seed,
        "iterations": args.iterations,
        "budget": _budget(args),
    }
    body = _call(client, "/compare", payload)
    lines = [f"{'method':>12}  {'total_time':>18}  {'ratio':>10}"]
    for row in body["rows"]:
        if row.get("error"):
            lines.append(f"{row['method']:>12}  {row['error']}")
        else:
            lines.append(
                f"{row['method']:>12}  {_fmt_cell(row['total_time']):>18}  "
                f"{row['ratio']:>10.6f}"
            )
    lines.append(f"baseline: {body.get('baseline')}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_reduce(args, client) -> int:
    src = _load_json(args.infile)
    payload: dict = {"kind": args.kind}
    if args.kind == "m-to-r":
        payload["instance"] = src
    else:
        payload["values"] = src["values"]
        if args.kind == "3partition-to-discrete":
            payload["m"] = src.get("m", len(src["values"]) // 3)
    body = _call(client, "/reduce", payload)
    _emit(json.dumps(body, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_verify(args, client) -> int:
    body = _call(
        client,
        "/verify",
        {"certificate": _load_json(args.cert), "budget": _budget(args)},
    )
    _emit(json.dumps(body, indent=2, sort_keys=True), args.out)
    return EXIT_OK if body["agree"] else EXIT_SOLVER


def cmd_discrete(args, client) -> int:
    instance = _load_json(args.instance)
    if args.action == "decide":
        body = _call(
            client, "/discrete/decide", {"instance": instance, "budget": _budget(args)}
        )
    else:
        if not args.schedule:
            raise ServiceCall(EXIT_INPUT, "discrete simulate needs --schedule")
        body = _call(
            client,
            "/discrete/simulate",
            {"instance": instance, "schedule": _load_json(args.schedule)},
        )
    _emit(json.dumps(body, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_oracle(args, client) -> int:
    if args.action != "dump-fixtures":
        raise ServiceCall(EXIT_INPUT, f"unknown oracle action {args.action!r}")
    fixtures = {}
    for name, instance in _FIXTURE_INSTANCES.items():
        body = _call(
            client,
            "/solve",
            {"instance": instance, "method": "oracle", "exact": True},
        )
        fixtures[name] = {"instance": instance, "expected": body["solution"]}
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "oracle_fixtures.json")
    with open(path, "w") as fh:
        json.dump(fixtures, fh, indent=2, sort_keys=True)
    sys.stderr.write(f"wrote {path}\n")
    return EXIT_OK


_FIXTURE_INSTANCES = {
    "one_item_tie": {
        "initial_cookies": 0,
        "initial_rate": 1,
        "items": [{"x": 1, "y": 10, "alpha": 1}],
        "goal": {"type": "cookies", "value": 100},
    },
    "two_item_small": {
        "initial_cookies": 0,
        "initial_rate": 1,
        "items": [
            {"x": 10, "y": 72, "alpha": 1},
            {"x": 100, "y": 700, "alpha": 1},
        ],
        "goal": {"type": "cookies", "value": 600},
    },
    "rising_costs_small": {
        "initial_cookies": 0,
        "initial_rate": 1,
        "items": [
            {"x": 2, "y": 3, "alpha": "3/2"},
            {"x": 5, "y": 8, "alpha": 2},
        ],
        "goal": {"type": "cookies", "value": 120},
    },
}


def cmd_serve(args, client) -> int:
    import uvicorn

    uvicorn.run("idleopt.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idleopt", description="purchase-scheduling solver toolkit"
    )
    parser.add_argument("--server", help="remote service URL (default: in-process)")
    parser.add_argument("--exact", action="store_true", help="exact rational mode")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (or env IDLEOPT_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one solver on an instance file")
    p.add_argument("--method", default="tuple-dp")
    p.add_argument("--instance", required=True)
    p.add_argument("--validate", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--inner", default="tuple-dp", help="inner solver for time budgets")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="replay a strategy and print the timeline")
    p.add_argument("--instance", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="print every threshold for an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="switch-point curve for two fixed-cost items")
    p.add_argument("--instance", required=True)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="run several methods and tabulate ratios")
    p.add_argument("--instance", required=True)
    p.add_argument("--methods", required=True, help="comma-separated method names")
    p.add_argument("--iterations", type=int, default=2000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("reduce", help="generate a hardness instance")
    p.add_argument(
        "kind",
        choices=[
            "partition-to-rate",
            "partition-to-initial",
            "3partition-to-discrete",
            "m-to-r",
        ],
    )
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a reduction certificate both ways")
    p.add_argument("--cert", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("discrete", help="discrete-timestep decision/simulation")
    p.add_argument("action", choices=["decide", "simulate"])
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule")
    p.add_argument("--out")
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("oracle", help="oracle utilities")
    p.add_argument("action", choices=["dump-fixtures"])
    p.add_argument("--out", default="fixtures")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args, None)
        with _client(args.server) as client:
            return args.func(args, client)
    except ServiceCall as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except httpx.HTTPError as e:
        sys.stderr.write(f"error: cannot reach service: {e}\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
