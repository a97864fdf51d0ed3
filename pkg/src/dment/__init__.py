"""Tripartite entanglement dynamics under a Dzyaloshinskii-Moriya coupling.

Simulates generalized W and GHZ registers with an appended environment qubit,
evolves them under a DM exchange generator, and measures negativity-based and
concurrence-based entanglement monotones.  A sweep engine, a FastAPI service
(:mod:`dment.server`) and a CLI (``dment``) sit on top of the core.
"""
from ._version import __version__
from .dynamics import (DMCoupling, dm_hamiltonian, embed_coupling, evolve, evolve_and_reduce,
                       partial_trace, partial_transpose)
from .measures import (EntanglementReport, concurrence, full_report, negativity,
                       pairwise_negativity, residual_pi, three_pi, three_pi_w_closed_form,
                       three_tangle)
from .scan import (Axis, CrossingPoint, ESDInterval, PeriodResult, SweepGrid, SweepResult,
                   detect_esd, find_crossings, find_period, run_sweep)
from .states import (DensityMatrix, PureState, compose, env_qubit, ghz_state, purity,
                     to_density, validate_density, w_state)

__all__ = [
    "__version__",
    "Axis", "CrossingPoint", "DMCoupling", "DensityMatrix", "ESDInterval",
    "EntanglementReport", "PeriodResult", "PureState", "SweepGrid", "SweepResult",
    "compose", "concurrence", "detect_esd", "dm_hamiltonian", "embed_coupling",
    "env_qubit", "evolve", "evolve_and_reduce", "find_crossings", "find_period",
    "full_report", "ghz_state", "negativity", "pairwise_negativity", "partial_trace",
    "partial_transpose", "purity", "residual_pi", "run_sweep", "three_pi",
    "three_pi_w_closed_form", "three_tangle", "to_density", "validate_density", "w_state",
]
