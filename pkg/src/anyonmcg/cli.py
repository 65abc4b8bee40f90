"""Command-line client for the verification service.

Commands run one-shot: by default each invocation spins up the service
in-process and talks to it over an in-memory transport, so no server or
network is involved; pass --base-url to target a running instance
instead.  Every command prints the service's RunReport as JSON and exits
with its exit_status (0 all checks passed, 1 a check failed, 2 domain
error such as a parse failure or an exceeded bound).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

BUILTIN_NAMES = ("semion", "z3", "z4", "toric")


class _InProcessTransport(httpx.BaseTransport):
    """Synchronous bridge into an ASGI app, one event loop per request."""

    def __init__(self, app) -> None:
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        async def call() -> tuple[int, httpx.Headers, bytes]:
            response = await self._asgi.handle_async_request(request)
            try:
                content = await response.aread()
            finally:
                await response.aclose()
            return response.status_code, response.headers, content

        status_code, headers, content = asyncio.run(call())
        return httpx.Response(
            status_code=status_code,
            headers=headers,
            content=content,
            request=request,
        )


class ServiceClient:
    """Thin HTTP wrapper; in-process unless base_url names a server."""

    def __init__(self, base_url: str | None = None) -> None:
        if base_url:
            self._client = httpx.Client(base_url=base_url, timeout=120.0)
        else:
            from .service.app import create_app

            self._client = httpx.Client(
                transport=_InProcessTransport(create_app()),
                base_url="http://anyonmcg.local",
            )

    def get(self, path: str) -> dict:
        response = self._client.get(path)
        response.raise_for_status()
        return response.json()

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        response.raise_for_status()
        return response.json()

    def close(self) -> None:
        self._client.close()


def _model_argument(value: str) -> str:
    """A model argument is a file path if one exists, else a builtin name."""
    path = Path(value)
    if path.is_file():
        return path.read_text()
    return value


def _model_stem(value: str) -> str:
    path = Path(value)
    if path.is_file():
        return path.stem
    return value if value in BUILTIN_NAMES else "model"


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """The shared flags, attachable both before and after the subcommand."""
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--base-url",
        **({"default": None} if not suppress else kw),
        help="URL of a running service; default runs the service in-process",
    )
    parser.add_argument(
        "--tol",
        type=float,
        **({"default": 1e-9} if not suppress else kw),
        help="comparison tolerance",
    )
    parser.add_argument(
        "--dense-bound",
        type=int,
        **({"default": 4096} if not suppress else kw),
        help="largest dense matrix dimension any command may materialize",
    )
    parser.add_argument(
        "--seed",
        type=int,
        **({"default": 0} if not suppress else kw),
        help="seed for randomized commands",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anyonmcg",
        description="Validate abelian anyon models, emit and check their "
        "surface-twist gates, and simulate twist circuits.",
    )
    _global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _global_flags(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "model-validate", parents=[shared], help="check a model file or builtin name"
    )
    p.add_argument("model", help="model file path or builtin name")

    p = sub.add_parser(
        "rep-emit", parents=[shared], help="write twist gate matrices as JSON files"
    )
    p.add_argument("model")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--which", default="all", help="a twist index, or 'all'")
    p.add_argument(
        "--include-anchor",
        action="store_true",
        help="fold the anchor phase into the L and M gates",
    )
    p.add_argument("--out-dir", default=".", help="directory for the emitted files")

    p = sub.add_parser(
        "clifford-check", parents=[shared], help="verify every twist image is Clifford"
    )
    p.add_argument("model", nargs="?", default=None)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument(
        "--fib-torus",
        action="store_true",
        help="check the golden-ratio torus obstruction instead of a model",
    )

    p = sub.add_parser(
        "sim", parents=[shared], help="simulate a twist circuit on both backends"
    )
    p.add_argument("model")
    p.add_argument("circuit", nargs="?", default=None, help="circuit file path")
    p.add_argument("--random-gates", type=int, default=None, help="run a seeded random word")
    p.add_argument("--genus", type=int, default=1, help="genus for --random-gates")
    p.add_argument(
        "--backend",
        choices=("stabilizer", "dense", "both"),
        default="both",
    )

    p = sub.add_parser(
        "relations", parents=[shared], help="check commuting and braiding twist relations"
    )
    p.add_argument("model")
    p.add_argument("--genus", type=int, default=2)

    p = sub.add_parser(
        "image-order", parents=[shared], help="count the projective image by closure"
    )
    p.add_argument("model")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--bound", type=int, default=200000, help="element budget for the closure")

    sub.add_parser(
        "fib", parents=[shared], help="verify the golden-ratio torus Clifford obstruction"
    )

    return parser


def _dispatch(client: ServiceClient, args: argparse.Namespace) -> dict:
    if args.command == "model-validate":
        return client.post("/model/validate", {"model": _model_argument(args.model)})
    if args.command == "rep-emit":
        which = args.which if args.which == "all" else int(args.which)
        return client.post(
            "/rep/emit",
            {
                "model": _model_argument(args.model),
                "genus": args.genus,
                "which": which,
                "include_anchor": args.include_anchor,
                "tol": args.tol,
                "dense_bound": args.dense_bound,
            },
        )
    if args.command == "clifford-check":
        payload: dict = {
            "genus": args.genus,
            "fib_torus": args.fib_torus,
            "tol": args.tol,
            "dense_bound": args.dense_bound,
        }
        if args.model is not None:
            payload["model"] = _model_argument(args.model)
        return client.post("/clifford/check", payload)
    if args.command == "sim":
        payload = {
            "model": _model_argument(args.model),
            "seed": args.seed,
            "backend": args.backend,
            "tol": args.tol,
            "dense_bound": args.dense_bound,
        }
        if args.circuit is not None:
            payload["circuit"] = Path(args.circuit).read_text()
        if args.random_gates is not None:
            payload["random_gates"] = args.random_gates
            payload["genus"] = args.genus
        return client.post("/sim/run", payload)
    if args.command == "relations":
        return client.post(
            "/relations/check",
            {
                "model": _model_argument(args.model),
                "genus": args.genus,
                "tol": args.tol,
                "dense_bound": args.dense_bound,
            },
        )
    if args.command == "image-order":
        return client.post(
            "/image-order/search",
            {
                "model": _model_argument(args.model),
                "genus": args.genus,
                "bound": args.bound,
                "dense_bound": args.dense_bound,
            },
        )
    if args.command == "fib":
        return client.post("/fib/check", {"tol": args.tol})
    raise AssertionError(f"unhandled command {args.command!r}")


def _write_emitted_files(report: dict, args: argparse.Namespace) -> None:
    """One JSON file per emitted gate, named by model, genus, and twist."""
    results = report.get("results", {})
    gates = results.get("gates")
    if not gates:
        return
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _model_stem(args.model)
    files = []
    for gate in gates:
        name = f"{stem}_g{gate['genus']}_t{gate['twist']}_{gate['kind'].lower()}.json"
        path = out_dir / name
        path.write_text(json.dumps(gate, indent=2) + "\n")
        files.append(str(path))
    results["files"] = files


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.base_url)
    try:
        report = _dispatch(client, args)
    finally:
        client.close()
    if args.command == "rep-emit" and report.get("exit_status") == 0:
        _write_emitted_files(report, args)
    print(json.dumps(report, indent=2))
    return int(report.get("exit_status", 2))


if __name__ == "__main__":
    sys.exit(main())
