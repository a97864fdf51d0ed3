"""Bundled reference exhibits: canned sweeps and scans emitted as CSV.

Each target produces one CSV plus a MANIFEST.json recording the parameters,
the negativity convention and the tool version.  Target names are part of
the CLI contract.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import sqrt
from pathlib import Path
from typing import Optional

import numpy as np

from .dynamics import evolve_and_reduce
from .errors import UnknownTargetError
from .measures import pairwise_negativity
from .scan import (Axis, CrossingPoint, SweepGrid, SweepResult, find_crossings, run_sweep)
from .states import env_qubit, w_state
from .sweep_io import CSV_COLUMNS, crossing_dict, manifest, sweep_csv_text, sweep_rows

SYMMETRIC_W = 1.0 / sqrt(3.0)

#: Panels (theta, w2) for the bipartite-negativity exhibits: the first set
#: spans the regime where the N_AC dead window sits inside w1 in [0.4, 0.5],
#: the second set brackets the revival regime around theta = pi/4.
FIG4_PANELS = ((0.2, 0.4), (0.35, 0.4), (0.5, 0.5), (0.55, 0.8))
FIG5_PANELS = ((0.6, 0.8), (0.8, 0.1), (0.9, 0.1), (1.0, 0.5))

#: (theta hint, w2) rows for the crossing exhibits.  The located theta of an
#: exact triple crossing sits within +-0.45 of each hint; the first two rows
#: share one hint and differ in w2.
CROSSING_ROWS = ((2.9, 0.4), (2.9, 0.8), (6.5, 0.4), (7.2, 0.5), (9.1, 0.7))
CROSSING_SCAN_HALFWIDTH = 0.45
CROSSING_SCAN_STEP = 0.0025


@dataclass(frozen=True)
class ReproBundle:
    """Files produced by one target: CSV text keyed by filename, plus manifest."""

    files: dict[str, str]
    manifest: dict


def _multi_sweep_csv(results: list[SweepResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for result in results:
        for row in sweep_rows(result):
            writer.writerow(["" if row[c] is None else repr(float(row[c])) for c in CSV_COLUMNS])
    return buf.getvalue()


def _spread_at_symmetric_radius(theta: float, w2: float, convention: str) -> float:
    # all three pairwise negativities can only coincide where the invariant
    # amplitude satisfies w0^2 = 1/3; probing that single w1 per theta makes
    # the theta scan cheap before the full w1 scan confirms the crossing
    w1 = sqrt(max(0.0, 2.0 / 3.0 - w2 * w2))
    w0 = sqrt(max(0.0, 1.0 - w1 * w1 - w2 * w2))
    reduced = evolve_and_reduce(w_state(w0, w1, w2, normalize=True),
                                env_qubit(1.0, 0.0), theta)
    la, lb, lc = reduced.labels
    ns = (pairwise_negativity(reduced, la, lb, convention),
          pairwise_negativity(reduced, la, lc, convention),
          pairwise_negativity(reduced, lb, lc, convention))
    return max(ns) - min(ns)


def locate_crossing(theta_hint: float, w2: float, convention: str = "doubled",
                    halfwidth: float = CROSSING_SCAN_HALFWIDTH,
                    step: float = CROSSING_SCAN_STEP,
                    cross_tolerance: float = 5e-3) -> tuple[float, list[CrossingPoint]]:
    """Find the theta near ``theta_hint`` hosting a genuine triple crossing.

    Scans theta over ``hint +- halfwidth``, then runs :func:`find_crossings`
    at the best theta.  Returns that theta and whatever crossings it hosts.
    """
    thetas = np.arange(theta_hint - halfwidth, theta_hint + halfwidth + 1e-12, step)
    thetas = thetas[thetas >= 0]
    spreads = [_spread_at_symmetric_radius(float(th), w2, convention) for th in thetas]
    theta_star = float(thetas[int(np.argmin(spreads))])
    return theta_star, find_crossings(theta_star, w2, cross_tolerance=cross_tolerance,
                                      w1_step=0.001, convention=convention)


def _target_table_symmetric_w(convention: str, jobs: int) -> ReproBundle:
    grid = SweepGrid(family="w", theta=Axis(0.0, 0.8, 0.1),
                     w1=Axis.fixed(SYMMETRIC_W), w2=Axis.fixed(SYMMETRIC_W),
                     convention=convention)
    result = run_sweep(grid, jobs=jobs)
    params = {"theta": [0.0, 0.8, 0.1], "w1": SYMMETRIC_W, "w2": SYMMETRIC_W,
              "family": "w", "env": [1.0, 0.0, 0.0, 0.0]}
    return ReproBundle(files={"table-symmetric-w.csv": sweep_csv_text(result)},
                       manifest=manifest(params, convention))


def _target_table_crossings(convention: str, jobs: int) -> ReproBundle:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta_hint", "theta", "w1", "w2", "common_value"])
    located = []
    for hint, w2 in CROSSING_ROWS:
        theta_star, crossings = locate_crossing(hint, w2, convention)
        for c in crossings:
            writer.writerow([repr(float(hint))] + [repr(float(v)) for v in
                                                   (c.theta, c.w1, c.w2, c.common_value)])
        located.append({"theta_hint": hint, "w2": w2, "theta_located": theta_star,
                        "crossings": [crossing_dict(c) for c in crossings]})
    params = {"rows": located,
              "scan": {"halfwidth": CROSSING_SCAN_HALFWIDTH, "step": CROSSING_SCAN_STEP}}
    return ReproBundle(files={"table-crossings.csv": buf.getvalue()},
                       manifest=manifest(params, convention))


def _target_fig2(convention: str, jobs: int) -> ReproBundle:
    results = []
    for theta in (0.0, 0.2, 0.5, 0.7):
        grid = SweepGrid(family="w", theta=Axis.fixed(theta),
                         w1=Axis(0.0, 1.0, 0.025), w2=Axis(0.0, 1.0, 0.025),
                         measures=("pi_a", "pi_b", "pi_c", "three_pi"),
                         convention=convention)
        results.append(run_sweep(grid, jobs=jobs))
    params = {"theta": [0.0, 0.2, 0.5, 0.7], "w1": [0.0, 1.0, 0.025],
              "w2": [0.0, 1.0, 0.025], "family": "w",
              "skipped": sum(r.skipped for r in results)}
    return ReproBundle(files={"fig2-threepi.csv": _multi_sweep_csv(results)},
                       manifest=manifest(params, convention))


def _bipartite_panels(panels, convention: str, jobs: int, filename: str) -> ReproBundle:
    results = []
    for theta, w2 in panels:
        grid = SweepGrid(family="w", theta=Axis.fixed(theta),
                         w1=Axis(0.0, sqrt(1.0 - w2 * w2), 0.005), w2=Axis.fixed(w2),
                         measures=("n_ab", "n_ac", "n_bc"),
                         convention=convention)
        results.append(run_sweep(grid, jobs=jobs))
    params = {"panels": [list(p) for p in panels], "w1_step": 0.005, "family": "w"}
    return ReproBundle(files={filename: _multi_sweep_csv(results)},
                       manifest=manifest(params, convention))


def _target_fig6(convention: str, jobs: int) -> ReproBundle:
    results, located = [], []
    for hint, w2 in ((2.9, 0.8), (6.5, 0.4), (7.2, 0.5), (9.1, 0.7)):
        theta_star, crossings = locate_crossing(hint, w2, convention)
        grid = SweepGrid(family="w", theta=Axis.fixed(theta_star),
                         w1=Axis(0.0, sqrt(1.0 - w2 * w2), 0.005), w2=Axis.fixed(w2),
                         measures=("n_ab", "n_ac", "n_bc"),
                         convention=convention)
        results.append(run_sweep(grid, jobs=jobs))
        located.append({"theta_hint": hint, "w2": w2, "theta_located": theta_star,
                        "crossings": [crossing_dict(c) for c in crossings]})
    params = {"rows": located, "w1_step": 0.005}
    return ReproBundle(files={"fig6-crossing.csv": _multi_sweep_csv(results)},
                       manifest=manifest(params, convention))


_TARGETS = {
    "table-symmetric-w": _target_table_symmetric_w,
    "table-crossings": _target_table_crossings,
    "fig2-threepi": _target_fig2,
    "fig4-bipartite": lambda convention, jobs: _bipartite_panels(
        FIG4_PANELS, convention, jobs, "fig4-bipartite.csv"),
    "fig5-bipartite": lambda convention, jobs: _bipartite_panels(
        FIG5_PANELS, convention, jobs, "fig5-bipartite.csv"),
    "fig6-crossing": _target_fig6,
}

TARGET_NAMES = tuple(sorted(_TARGETS))


def repro_target(name: str, convention: str = "doubled", jobs: int = 1) -> ReproBundle:
    """Build the named exhibit in memory."""
    if name not in _TARGETS:
        raise UnknownTargetError(f"unknown repro target {name!r}; choose from {TARGET_NAMES}")
    bundle = _TARGETS[name](convention, jobs)
    bundle.manifest["parameters"]["target"] = name
    return bundle


def write_repro(name: str, out_dir: Path, convention: str = "doubled",
                jobs: int = 1, seed: Optional[int] = None) -> list[Path]:
    """Write the named exhibit's CSV plus MANIFEST.json under ``out_dir``."""
    from .sweep_io import dump_json

    bundle = repro_target(name, convention=convention, jobs=jobs)
    if seed is not None:
        bundle.manifest["seed"] = seed
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for filename, text in bundle.files.items():
        path = out_dir / filename
        path.write_text(text)
        written.append(path)
    manifest_path = out_dir / "MANIFEST.json"
    manifest_path.write_text(dump_json(bundle.manifest))
    written.append(manifest_path)
    return written
