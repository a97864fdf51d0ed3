"""Command-line client for the measurement service.

All domain work happens behind the handlers in :mod:`dment.api`; this module
only parses flags, builds request models, and formats responses.  With
``--server URL`` the same requests travel over HTTP to a running service
instead of being executed in process.

Exit codes: 0 success, 2 validation failure, 3 unwritable output path.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path
from typing import Optional

import httpx

from . import api
from .errors import DmentError
from .states import w_state
from .sweep_io import CSV_COLUMNS, dump_json

_HTTP_TIMEOUT = 600.0


def _floats_arg(text: str, n: int, flag: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{flag} expects {n} comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc


def _range_arg(text: str, flag: str) -> api.AxisModel:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"{flag} expects start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{flag}: {exc}") from exc
    if step <= 0:
        raise argparse.ArgumentTypeError(f"{flag}: step must be > 0")
    if start > stop:
        raise argparse.ArgumentTypeError(f"{flag}: start must not exceed stop")
    return api.AxisModel(start=start, stop=stop, step=step)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--negativity-convention", choices=("doubled", "raw"),
                        default="doubled")
    parser.add_argument("--seed", type=int, default=None,
                        help="recorded in manifests for reproducibility")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes for grid evaluation (env DMENT_JOBS)")
    parser.add_argument("--server", default=None,
                        help="base URL of a running dment service; default runs in process")
    parser.add_argument("--format", choices=("csv", "json", "text"), default=None)


def _add_state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=("w", "ghz"), required=True)
    parser.add_argument("--w", type=lambda s: _floats_arg(s, 3, "--w"), default=None,
                        metavar="W0,W1,W2")
    parser.add_argument("--g", type=lambda s: _floats_arg(s, 2, "--g"), default=None,
                        metavar="G0,G1")
    parser.add_argument("--env", type=lambda s: _floats_arg(s, 4, "--env"),
                        default=(1.0, 0.0, 0.0, 0.0), metavar="C0RE,C0IM,C1RE,C1IM")
    parser.add_argument("--normalize", action="store_true",
                        help="renormalize state amplitudes instead of rejecting them")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dment",
                                     description="Tripartite entanglement under a DM coupling")
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="evolve one state and print its report")
    _add_state_flags(p_measure)
    p_measure.add_argument("--theta", type=float, default=0.0)
    _add_common(p_measure)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep and write CSV/JSON")
    _add_state_flags(p_sweep)
    p_sweep.add_argument("--theta", type=float, default=None)
    p_sweep.add_argument("--theta-range", type=lambda s: _range_arg(s, "--theta-range"),
                         default=None, metavar="START:STOP:STEP")
    p_sweep.add_argument("--w1-range", type=lambda s: _range_arg(s, "--w1-range"),
                         default=None, metavar="START:STOP:STEP")
    p_sweep.add_argument("--w2", type=float, default=None)
    p_sweep.add_argument("--w2-range", type=lambda s: _range_arg(s, "--w2-range"),
                         default=None, metavar="START:STOP:STEP")
    p_sweep.add_argument("--g0-range", type=lambda s: _range_arg(s, "--g0-range"),
                         default=None, metavar="START:STOP:STEP")
    p_sweep.add_argument("--esd-tolerance", type=float, default=None,
                         help="detect dead zones below this value; writes the JSON sidecar")
    p_sweep.add_argument("--cross-tolerance", type=float, default=None,
                         help="search for triple crossings at this agreement tolerance")
    p_sweep.add_argument("--out", type=Path, default=None)
    _add_common(p_sweep)

    p_repro = sub.add_parser("repro", help="emit a bundled reference exhibit")
    p_repro.add_argument("target")
    p_repro.add_argument("--out", type=Path, default=Path("."),
                         help="output directory (default: current directory)")
    _add_common(p_repro)

    p_version = sub.add_parser("version", help="print tool and schema versions")
    _add_common(p_version)

    return parser


class Client:
    """Dispatch requests either in process or to a remote service."""

    def __init__(self, server: Optional[str]):
        self.server = server.rstrip("/") if server else None

    def _post(self, path: str, payload: dict) -> dict:
        response = httpx.post(self.server + path, json=payload, timeout=_HTTP_TIMEOUT)
        if response.status_code == 422:
            raise DmentError(str(response.json().get("detail", response.text)))
        response.raise_for_status()
        return response.json()

    def measure(self, request: api.MeasureRequest) -> api.MeasureResponse:
        if self.server is None:
            return api.handle_measure(request)
        return api.MeasureResponse.model_validate(
            self._post("/measure", request.model_dump(mode="json")))

    def sweep(self, request: api.SweepRequest) -> api.SweepResponse:
        if self.server is None:
            return api.handle_sweep(request)
        return api.SweepResponse.model_validate(
            self._post("/sweep", request.model_dump(mode="json")))

    def repro(self, request: api.ReproRequest) -> api.ReproResponse:
        if self.server is None:
            return api.handle_repro(request)
        return api.ReproResponse.model_validate(
            self._post("/repro", request.model_dump(mode="json")))

    def version(self) -> api.VersionResponse:
        if self.server is None:
            return api.version_info()
        response = httpx.get(self.server + "/version", timeout=_HTTP_TIMEOUT)
        response.raise_for_status()
        return api.VersionResponse.model_validate(response.json())


def _resolve_jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    return max(1, int(os.environ.get("DMENT_JOBS", "1")))


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _cmd_measure(args, client: Client) -> int:
    request = api.MeasureRequest(
        family=args.family, w=args.w, g=args.g, env=tuple(args.env),
        theta=args.theta, normalize=args.normalize,
        negativity_convention=args.negativity_convention,
    )
    response = client.measure(request)
    if args.format == "json":
        print(response.model_dump_json(indent=2))
    else:
        for name, value in response.report.model_dump().items():
            print(f"{name} = {'' if value is None else repr(value)}")
    return 0


def _sweep_request(args) -> api.SweepRequest:
    if args.theta_range is not None and args.theta is not None:
        raise DmentError("--theta and --theta-range are mutually exclusive")
    theta = args.theta_range if args.theta_range is not None else \
        (args.theta if args.theta is not None else 0.0)

    w1 = w2 = g0 = None
    if args.family == "w":
        w1 = args.w1_range if args.w1_range is not None else (args.w[1] if args.w else None)
        if args.w2_range is not None:
            w2 = args.w2_range
        elif args.w2 is not None:
            w2 = args.w2
        elif args.w is not None:
            w2 = args.w[2]
        if w1 is None or w2 is None:
            raise DmentError("family 'w' sweeps need --w, --w1-range, --w2 or --w2-range")
        if args.w is not None and not args.normalize:
            # surface typos in fixed amplitudes early instead of per grid point
            w_state(*args.w)
    else:
        g0 = args.g0_range if args.g0_range is not None else (args.g[0] if args.g else None)
        if g0 is None:
            raise DmentError("family 'ghz' sweeps need --g or --g0-range")

    return api.SweepRequest(
        family=args.family, theta=theta, w1=w1, w2=w2, g0=g0,
        env=tuple(args.env),
        negativity_convention=args.negativity_convention,
        jobs=_resolve_jobs(args),
        esd_tolerance=args.esd_tolerance,
        crossings=args.cross_tolerance is not None,
        cross_tolerance=args.cross_tolerance if args.cross_tolerance is not None else 5e-3,
    )


def _cmd_sweep(args, client: Client) -> int:
    request = _sweep_request(args)
    response = client.sweep(request)

    if (args.format or "csv") == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in response.rows:
            dumped = row.model_dump()
            writer.writerow(["" if dumped[c] is None else repr(float(dumped[c]))
                             for c in CSV_COLUMNS])
        text = buf.getvalue()
    else:
        text = response.model_dump_json(indent=2) + "\n"

    sidecar_doc = None
    if response.esd_intervals is not None or response.crossings is not None:
        sidecar_doc = {"schema": 1}
        if response.esd_intervals is not None:
            sidecar_doc["esd_intervals"] = response.esd_intervals
        if response.crossings is not None:
            sidecar_doc["crossings"] = response.crossings

    if args.out is None:
        sys.stdout.write(text)
        if sidecar_doc is not None:
            raise DmentError("--esd-tolerance/--cross-tolerance sidecars need --out")
        return 0
    try:
        _write_text(args.out, text)
        if sidecar_doc is not None:
            _write_text(args.out.with_suffix(args.out.suffix + ".sidecar.json"),
                        dump_json(sidecar_doc))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


def _cmd_repro(args, client: Client) -> int:
    request = api.ReproRequest(target=args.target,
                               negativity_convention=args.negativity_convention,
                               jobs=_resolve_jobs(args))
    response = client.repro(request)
    doc = dict(response.manifest)
    if args.seed is not None:
        doc["seed"] = args.seed
    try:
        out_dir = args.out
        out_dir.mkdir(parents=True, exist_ok=True)
        for filename, text in response.files.items():
            _write_text(out_dir / filename, text)
        _write_text(out_dir / "MANIFEST.json", dump_json(doc))
    except OSError as exc:
        print(f"error: cannot write under {args.out}: {exc}", file=sys.stderr)
        return 3
    for filename in list(response.files) + ["MANIFEST.json"]:
        print(out_dir / filename)
    return 0


def _cmd_version(args, client: Client) -> int:
    info = client.version()
    if args.format == "json":
        print(info.model_dump_json(indent=2))
    else:
        print(f"dment {info.version} (negativity convention: "
              f"{info.default_negativity_convention}; targets: {', '.join(info.repro_targets)})")
    return 0


_COMMANDS = {
    "measure": _cmd_measure,
    "sweep": _cmd_sweep,
    "repro": _cmd_repro,
    "version": _cmd_version,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    client = Client(args.server)
    try:
        return _COMMANDS[args.command](args, client)
    except (DmentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
