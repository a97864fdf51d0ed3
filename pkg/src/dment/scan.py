"""Parameter sweeps, dead-zone detection, crossings, and period finding.

Grid evaluation is embarrassingly parallel; ``run_sweep`` optionally fans the
points out to worker processes but always merges results in deterministic
grid order (theta outermost, then w1, then w2; the GHZ family sweeps g0 in
place of the w axes), so worker count never changes the output.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import sqrt
from typing import Optional

import numpy as np

from .dynamics import evolve_and_reduce
from .errors import EmptyGridError, NoPeriodError, UnknownMeasureError
from .measures import (MEASURE_NAMES, NEGATIVITY_MEASURES, EntanglementReport, full_report,
                       pairwise_negativity, snap_small)
from .states import PureState, env_qubit, ghz_state, w_state

#: Admissibility slack for w1^2 + w2^2 <= 1 on gridded decimals.
_ADMISSIBLE_EPS = 1e-12

DEFAULT_ESD_TOLERANCE = 1e-6
DEFAULT_CROSS_TOLERANCE = 5e-3


@dataclass(frozen=True)
class Axis:
    """Inclusive arithmetic progression ``start, start+step, ..., <= stop``."""

    start: float
    stop: float
    step: float = 1.0

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError(f"axis step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise ValueError(f"axis start {self.start} exceeds stop {self.stop}")

    @classmethod
    def fixed(cls, value: float) -> "Axis":
        return cls(start=value, stop=value, step=1.0)

    @property
    def is_fixed(self) -> bool:
        return self.start == self.stop

    def values(self) -> np.ndarray:
        n = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)


@dataclass(frozen=True)
class SweepGrid:
    """Description of one sweep: state family, axes, environment, measures."""

    family: str                      # "w" | "ghz"
    theta: Axis
    w1: Optional[Axis] = None
    w2: Optional[Axis] = None
    g0: Optional[Axis] = None
    env: tuple[complex, complex] = (1.0 + 0j, 0.0 + 0j)
    measures: tuple[str, ...] = NEGATIVITY_MEASURES
    convention: str = "doubled"

    def __post_init__(self):
        if self.family not in ("w", "ghz"):
            raise ValueError(f"unknown state family {self.family!r}")
        if self.family == "w" and (self.w1 is None or self.w2 is None):
            raise ValueError("W-family sweeps need w1 and w2 axes")
        if self.family == "ghz" and self.g0 is None:
            raise ValueError("GHZ-family sweeps need a g0 axis")
        unknown = [m for m in self.measures if m not in MEASURE_NAMES]
        if unknown:
            raise UnknownMeasureError(f"unknown measures requested: {unknown}")

    def axes(self) -> dict[str, Axis]:
        named = {"theta": self.theta}
        if self.family == "w":
            named["w1"] = self.w1
            named["w2"] = self.w2
        else:
            named["g0"] = self.g0
        return named

    def swept_parameters(self) -> list[str]:
        return [name for name, axis in self.axes().items() if not axis.is_fixed]


@dataclass(frozen=True)
class SweepPoint:
    """One admissible grid point and its measured report."""

    theta: float
    w1: Optional[float]
    w2: Optional[float]
    g0: Optional[float]
    report: EntanglementReport

    def value(self, measure: str) -> Optional[float]:
        return snap_small(self.report.as_dict()[measure])


@dataclass(frozen=True)
class SweepResult:
    grid: SweepGrid
    points: list[SweepPoint]
    skipped: int

    def series(self, measure: str) -> tuple[list[float], list[float]]:
        """(swept parameter values, measure values) for a single-parameter sweep."""
        swept = self.grid.swept_parameters()
        if len(swept) != 1:
            raise ValueError(f"series needs exactly one swept parameter, grid has {swept}")
        name = swept[0]
        xs = [getattr(p, name) for p in self.points]
        ys = [p.value(measure) for p in self.points]
        return xs, ys


@dataclass(frozen=True)
class ESDInterval:
    """Maximal run of grid points where a measure stays below tolerance."""

    measure: str
    parameter: str
    lo: float
    hi: float
    boundary: bool
    context: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CrossingPoint:
    """Point where all three pairwise negativities agree within tolerance."""

    theta: float
    w1: float
    w2: float
    common_value: float


@dataclass(frozen=True)
class PeriodResult:
    period: float
    constant: bool


def _admissible_w(w1: float, w2: float) -> bool:
    return w1 * w1 + w2 * w2 <= 1.0 + _ADMISSIBLE_EPS


def _point_payloads(grid: SweepGrid) -> tuple[list[tuple], int]:
    payloads, skipped = [], 0
    if grid.family == "w":
        for theta in grid.theta.values():
            for w1 in grid.w1.values():
                for w2 in grid.w2.values():
                    if not _admissible_w(w1, w2):
                        skipped += 1
                        continue
                    payloads.append((grid.family, float(theta), float(w1), float(w2), None,
                                     grid.env, grid.measures, grid.convention))
    else:
        for theta in grid.theta.values():
            for g0 in grid.g0.values():
                if not -1.0 - _ADMISSIBLE_EPS <= g0 <= 1.0 + _ADMISSIBLE_EPS:
                    skipped += 1
                    continue
                payloads.append((grid.family, float(theta), None, None, float(g0),
                                 grid.env, grid.measures, grid.convention))
    return payloads, skipped


def _evaluate_point(payload: tuple) -> SweepPoint:
    family, theta, w1, w2, g0, env, measures, convention = payload
    if family == "w":
        w0 = sqrt(max(0.0, 1.0 - w1 * w1 - w2 * w2))
        system = w_state(w0, w1, w2, normalize=True)
    else:
        g0c = min(1.0, max(-1.0, g0))
        system = ghz_state(g0c, sqrt(max(0.0, 1.0 - g0c * g0c)), normalize=True)
    env_state = env_qubit(env[0], env[1], normalize=True)
    reduced = evolve_and_reduce(system, env_state, theta)
    report = full_report(
        reduced,
        convention=convention,
        include_tangle="three_tangle" in measures,
        include_concurrence=any(m.startswith("concurrence") for m in measures),
    )
    return SweepPoint(theta=theta, w1=w1, w2=w2, g0=g0, report=report)


def run_sweep(grid: SweepGrid, jobs: int = 1) -> SweepResult:
    """Evaluate every admissible grid point, in deterministic row order."""
    payloads, skipped = _point_payloads(grid)
    if not payloads:
        raise EmptyGridError("sweep grid contains no admissible points")
    if jobs and jobs > 1:
        chunk = max(1, len(payloads) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_evaluate_point, payloads, chunksize=chunk))
    else:
        points = [_evaluate_point(p) for p in payloads]
    return SweepResult(grid=grid, points=points, skipped=skipped)


def detect_esd(result: SweepResult, measure: str,
               tolerance: float = DEFAULT_ESD_TOLERANCE) -> list[ESDInterval]:
    """Maximal contiguous sub-tolerance runs of ``measure`` along the swept parameter.

    Runs touching either end of the axis are flagged ``boundary=True``; the
    union of the reported intervals is exactly the sub-tolerance point set.
    """
    if measure not in MEASURE_NAMES:
        raise UnknownMeasureError(f"unknown measure {measure!r}")
    if measure not in result.grid.measures:
        raise UnknownMeasureError(f"measure {measure!r} was not requested in this sweep")
    xs, ys = result.series(measure)
    parameter = result.grid.swept_parameters()[0]
    context = {name: axis.start for name, axis in result.grid.axes().items()
               if axis.is_fixed}

    intervals: list[ESDInterval] = []
    run_start: Optional[int] = None
    for i, y in enumerate(ys + [None]):  # sentinel closes a trailing run
        below = y is not None and y < tolerance
        if below and run_start is None:
            run_start = i
        elif not below and run_start is not None:
            lo, hi = xs[run_start], xs[i - 1]
            boundary = run_start == 0 or i - 1 == len(xs) - 1
            intervals.append(ESDInterval(measure=measure, parameter=parameter,
                                         lo=lo, hi=hi, boundary=boundary, context=context))
            run_start = None
    return intervals


def find_crossings(theta: float, w2: float,
                   cross_tolerance: float = DEFAULT_CROSS_TOLERANCE,
                   w1_step: float = 0.001,
                   env: tuple[complex, complex] = (1.0 + 0j, 0.0 + 0j),
                   convention: str = "doubled") -> list[CrossingPoint]:
    """Scan w1 at fixed (theta, w2) for points where all three pairwise
    negativities agree within ``cross_tolerance``.

    Contiguous agreement runs collapse to their tightest point.  The returned
    common value is the mean of the three negativities there.  May be empty.
    """
    env_state = env_qubit(env[0], env[1], normalize=True)
    w1_max = sqrt(max(0.0, 1.0 - w2 * w2))
    w1_values = np.arange(0.0, w1_max + 1e-12, w1_step)

    spreads, means = [], []
    for w1 in w1_values:
        w0 = sqrt(max(0.0, 1.0 - w1 * w1 - w2 * w2))
        reduced = evolve_and_reduce(w_state(w0, float(w1), w2, normalize=True), env_state, theta)
        la, lb, lc = reduced.labels
        ns = (pairwise_negativity(reduced, la, lb, convention),
              pairwise_negativity(reduced, la, lc, convention),
              pairwise_negativity(reduced, lb, lc, convention))
        spreads.append(max(ns) - min(ns))
        means.append(sum(ns) / 3.0)

    crossings: list[CrossingPoint] = []
    i = 0
    while i < len(w1_values):
        if spreads[i] < cross_tolerance:
            j = i
            while j + 1 < len(w1_values) and spreads[j + 1] < cross_tolerance:
                j += 1
            best = min(range(i, j + 1), key=lambda k: spreads[k])
            crossings.append(CrossingPoint(theta=theta, w1=float(w1_values[best]),
                                           w2=w2, common_value=means[best]))
            i = j + 1
        else:
            i += 1
    return crossings


def find_period(state: PureState, measure: str, theta_max: float, tolerance: float,
                step: float = 0.001,
                env: tuple[complex, complex] = (1.0 + 0j, 0.0 + 0j),
                convention: str = "doubled") -> PeriodResult:
    """Smallest period of a measure along theta by direct shifted comparison.

    Samples the measure on ``[0, theta_max]`` with the given step and returns
    the smallest ``P = k * step`` such that ``|f(theta + P) - f(theta)| <
    tolerance`` for every available sample pair, requiring at least two full
    periods inside the window.  Shifts smaller than the point where the
    deviation profile first exceeds tolerance are indistinguishable from slow
    drift and do not count as periods.  A constant sequence reports
    ``period=step`` with ``constant=True``.  Raises :class:`NoPeriodError`
    otherwise.
    """
    if measure not in MEASURE_NAMES:
        raise UnknownMeasureError(f"unknown measure {measure!r}")
    env_state = env_qubit(env[0], env[1], normalize=True)
    thetas = np.arange(0.0, theta_max + 1e-12, step)
    want_tangle = measure == "three_tangle"
    want_conc = measure.startswith("concurrence")
    values = np.empty(len(thetas))
    for i, th in enumerate(thetas):
        reduced = evolve_and_reduce(state, env_state, float(th))
        report = full_report(reduced, convention=convention,
                             include_tangle=want_tangle, include_concurrence=want_conc)
        values[i] = report.as_dict()[measure]

    if np.abs(values - values[0]).max() < tolerance:
        return PeriodResult(period=step, constant=True)
    departed = False
    for k in range(1, len(values) // 2 + 1):
        deviation = np.abs(values[k:] - values[:-k]).max()
        if deviation >= tolerance:
            departed = True
        elif departed:
            return PeriodResult(period=k * step, constant=False)
    raise NoPeriodError(f"no period of {measure!r} below {theta_max / 2:.4g} found")
