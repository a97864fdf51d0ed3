"""Request/response models and handlers for the measurement service.

The FastAPI app and the command-line client both drive these handlers; the
CLI simply swaps the in-process call for an HTTP round trip when pointed at
a remote server, so the two surfaces cannot drift apart.
"""
from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from ._version import __version__
from .dynamics import evolve_and_reduce
from .measures import NEGATIVITY_MEASURES, EntanglementReport, full_report
from .repro import TARGET_NAMES, repro_target
from .scan import (Axis, DEFAULT_CROSS_TOLERANCE, SweepGrid, detect_esd, find_crossings,
                   run_sweep)
from .states import env_qubit, ghz_state, w_state
from .sweep_io import (CSV_COLUMNS, MANIFEST_SCHEMA, SIDECAR_SCHEMA, crossing_dict,
                       esd_interval_dict, sweep_rows)

Convention = Literal["doubled", "raw"]


class AxisModel(BaseModel):
    start: float
    stop: float
    step: float = Field(gt=0)


#: A sweep axis is either a fixed value or a start/stop/step progression.
AxisSpec = Union[float, AxisModel]


def _to_axis(spec: Optional[AxisSpec]) -> Optional[Axis]:
    if spec is None:
        return None
    if isinstance(spec, AxisModel):
        return Axis(start=spec.start, stop=spec.stop, step=spec.step)
    return Axis.fixed(float(spec))


class ReportModel(BaseModel):
    n_ab: float
    n_ac: float
    n_bc: float
    n_a_bc: float
    n_b_ac: float
    n_c_ab: float
    pi_a: float
    pi_b: float
    pi_c: float
    three_pi: float
    three_tangle: Optional[float] = None
    concurrence_ab: Optional[float] = None
    concurrence_ac: Optional[float] = None
    concurrence_bc: Optional[float] = None

    @classmethod
    def from_report(cls, report: EntanglementReport) -> "ReportModel":
        return cls(**report.as_dict())


class MeasureRequest(BaseModel):
    family: Literal["w", "ghz"]
    w: Optional[tuple[float, float, float]] = None
    g: Optional[tuple[float, float]] = None
    env: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)
    theta: float = Field(default=0.0, ge=0)
    normalize: bool = False
    negativity_convention: Convention = "doubled"

    @model_validator(mode="after")
    def _family_params(self):
        if self.family == "w" and self.w is None:
            raise ValueError("family 'w' requires the w amplitudes")
        if self.family == "ghz" and self.g is None:
            raise ValueError("family 'ghz' requires the g amplitudes")
        return self


class MeasureResponse(BaseModel):
    request: MeasureRequest
    report: ReportModel


class SweepRequest(BaseModel):
    family: Literal["w", "ghz"]
    theta: AxisSpec
    w1: Optional[AxisSpec] = None
    w2: Optional[AxisSpec] = None
    g0: Optional[AxisSpec] = None
    env: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)
    measures: Optional[list[str]] = None
    negativity_convention: Convention = "doubled"
    jobs: int = Field(default=1, ge=1, le=64)
    esd_tolerance: Optional[float] = Field(default=None, gt=0)
    crossings: bool = False
    cross_tolerance: float = Field(default=DEFAULT_CROSS_TOLERANCE, gt=0)


class SweepRowModel(BaseModel):
    theta: float
    w1: Optional[float] = None
    w2: Optional[float] = None
    g0: Optional[float] = None
    n_ab: Optional[float] = None
    n_ac: Optional[float] = None
    n_bc: Optional[float] = None
    n_a_bc: Optional[float] = None
    n_b_ac: Optional[float] = None
    n_c_ab: Optional[float] = None
    pi_a: Optional[float] = None
    pi_b: Optional[float] = None
    pi_c: Optional[float] = None
    three_pi: Optional[float] = None
    three_tangle: Optional[float] = None
    concurrence_ab: Optional[float] = None
    concurrence_ac: Optional[float] = None
    concurrence_bc: Optional[float] = None


class SweepResponse(BaseModel):
    columns: list[str]
    rows: list[SweepRowModel]
    skipped: int
    esd_intervals: Optional[list[dict]] = None
    crossings: Optional[list[dict]] = None


class ReproRequest(BaseModel):
    target: str
    negativity_convention: Convention = "doubled"
    jobs: int = Field(default=1, ge=1, le=64)


class ReproResponse(BaseModel):
    files: dict[str, str]
    manifest: dict


class VersionResponse(BaseModel):
    name: str = "dment"
    version: str = __version__
    default_negativity_convention: Convention = "doubled"
    csv_columns: list[str] = list(CSV_COLUMNS)
    sidecar_schema: int = SIDECAR_SCHEMA
    manifest_schema: int = MANIFEST_SCHEMA
    repro_targets: list[str] = list(TARGET_NAMES)


def handle_measure(request: MeasureRequest) -> MeasureResponse:
    if request.family == "w":
        system = w_state(*request.w, normalize=request.normalize)
    else:
        system = ghz_state(*request.g, normalize=request.normalize)
    c0 = complex(request.env[0], request.env[1])
    c1 = complex(request.env[2], request.env[3])
    env = env_qubit(c0, c1, normalize=request.normalize)
    reduced = evolve_and_reduce(system, env, request.theta)
    report = full_report(reduced, convention=request.negativity_convention,
                         include_tangle=True, include_concurrence=True)
    return MeasureResponse(request=request, report=ReportModel.from_report(report))


def build_grid(request: SweepRequest) -> SweepGrid:
    measures = tuple(request.measures) if request.measures else NEGATIVITY_MEASURES
    return SweepGrid(
        family=request.family,
        theta=_to_axis(request.theta),
        w1=_to_axis(request.w1),
        w2=_to_axis(request.w2),
        g0=_to_axis(request.g0),
        env=(complex(request.env[0], request.env[1]), complex(request.env[2], request.env[3])),
        measures=measures,
        convention=request.negativity_convention,
    )


def handle_sweep(request: SweepRequest) -> SweepResponse:
    grid = build_grid(request)
    result = run_sweep(grid, jobs=request.jobs)

    esd_docs = None
    if request.esd_tolerance is not None:
        esd_docs = []
        for measure in grid.measures:
            for interval in detect_esd(result, measure, tolerance=request.esd_tolerance):
                esd_docs.append(esd_interval_dict(interval))

    crossing_docs = None
    if request.crossings:
        if grid.family != "w" or not grid.theta.is_fixed or not grid.w2.is_fixed:
            raise ValueError("crossings need a W-family sweep with fixed theta and w2")
        found = find_crossings(grid.theta.start, grid.w2.start,
                               cross_tolerance=request.cross_tolerance,
                               env=grid.env, convention=grid.convention)
        crossing_docs = [crossing_dict(c) for c in found]

    rows = [SweepRowModel(**row) for row in sweep_rows(result)]
    return SweepResponse(columns=list(CSV_COLUMNS), rows=rows, skipped=result.skipped,
                         esd_intervals=esd_docs, crossings=crossing_docs)


def handle_repro(request: ReproRequest) -> ReproResponse:
    bundle = repro_target(request.target, convention=request.negativity_convention,
                          jobs=request.jobs)
    return ReproResponse(files=bundle.files, manifest=bundle.manifest)


def version_info() -> VersionResponse:
    return VersionResponse()
