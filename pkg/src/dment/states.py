"""Initial-state constructors: generalized W, generalized GHZ, environment qubit.

Register convention, frozen for the whole package: the first label is the
most significant bit of the computational-basis index, and composing a
system with an environment appends the environment labels at the low end.
For the default labels ``(A, B, C)`` plus environment ``D`` the basis index
of ``|abcd>`` is therefore ``8a + 4b + 2c + d``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, LabelCollisionError, NormalizationError
from .linalg import as_matrix, hermiticity_defect

#: Tolerance on |norm^2 - 1| accepted by the public constructors.  Kept loose
#: on purpose: hand-entered decimals such as 0.577 for 1/sqrt(3) miss by about
#: 1e-3 and must be rejected rather than silently renormalized; callers opt in
#: to renormalization with ``normalize=True``.
CONSTRUCTOR_NORM_TOL = 1e-9

#: Internal tolerances for state invariants (norm, Hermiticity, trace).
STATE_ATOL = 1e-12

#: Eigenvalues of a density matrix above this floor count as nonnegative.
POSITIVITY_FLOOR = -1e-10

SYSTEM_LABELS = ("A", "B", "C")
ENV_LABEL = "D"


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over a labeled qubit register."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size != 2 ** len(self.labels):
            raise DimensionMismatchError(
                f"{len(self.labels)} labels require {2 ** len(self.labels)} amplitudes, got {amps.size}"
            )
        if not np.isfinite(amps).all():
            raise ValueError("amplitudes contain NaN or Inf")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", tuple(self.labels))
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > STATE_ATOL:
            raise NormalizationError(f"|amplitudes|^2 = {norm_sq!r}, expected 1")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on a labeled register."""

    matrix: np.ndarray
    labels: tuple[str, ...]

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return 2 ** len(self.labels)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != 2 ** len(self.labels):
            raise DimensionMismatchError(
                f"{len(self.labels)} labels require dim {2 ** len(self.labels)}, got {m.shape[0]}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", tuple(self.labels))


def validate_density(rho: DensityMatrix) -> None:
    """Check the density-matrix invariants, raising on violation.

    Hermitian within 1e-12, unit trace within 1e-12, and minimum eigenvalue
    no lower than the positivity floor (-1e-10, roundoff allowance).
    """
    defect = hermiticity_defect(rho.matrix)
    if defect > STATE_ATOL:
        raise NormalizationError(f"density matrix not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(rho.matrix))
    if abs(tr - 1.0) > STATE_ATOL:
        raise NormalizationError(f"density matrix trace {tr!r}, expected 1")
    min_eig = float(np.linalg.eigvalsh(rho.matrix)[0])
    if min_eig < POSITIVITY_FLOOR:
        raise NormalizationError(f"density matrix has negative eigenvalue {min_eig:.3e}")


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2)."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def _checked_amplitudes(values, what: str, normalize: bool) -> np.ndarray:
    amps = np.asarray(values, dtype=complex)
    norm_sq = float(np.vdot(amps, amps).real)
    if not normalize and abs(norm_sq - 1.0) > CONSTRUCTOR_NORM_TOL:
        raise NormalizationError(
            f"{what}: squared norm is {norm_sq!r}; pass normalize=True to renormalize explicitly"
        )
    if norm_sq <= 0:
        raise NormalizationError(f"{what}: cannot normalize a zero vector")
    # canonicalize so stored states meet the tight internal norm invariant
    return amps / np.sqrt(norm_sq)


def w_state(w0: float, w1: float, w2: float, normalize: bool = False,
            labels: tuple[str, str, str] = SYSTEM_LABELS) -> PureState:
    """Generalized W state ``w0|001> + w1|010> + w2|100>``.

    The real parameters satisfy ``w0^2 + w1^2 + w2^2 = 1``; basis indices are
    big-endian so the three amplitudes land at indices 1, 2 and 4.
    """
    w = _checked_amplitudes([float(w0), float(w1), float(w2)], "w_state", normalize)
    amps = np.zeros(8, dtype=complex)
    amps[1], amps[2], amps[4] = w
    return PureState(amps, labels)


def ghz_state(g0: float, g1: float, normalize: bool = False,
              labels: tuple[str, str, str] = SYSTEM_LABELS) -> PureState:
    """Generalized GHZ state ``g0|000> + g1|111>`` with ``g0^2 + g1^2 = 1``."""
    g = _checked_amplitudes([float(g0), float(g1)], "ghz_state", normalize)
    amps = np.zeros(8, dtype=complex)
    amps[0], amps[7] = g
    return PureState(amps, labels)


def env_qubit(c0: complex, c1: complex, normalize: bool = False,
              label: str = ENV_LABEL) -> PureState:
    """Single environment qubit ``c0|0> + c1|1>``; complex amplitudes allowed."""
    c = _checked_amplitudes([complex(c0), complex(c1)], "env_qubit", normalize)
    return PureState(c, (label,))


def to_density(state: PureState) -> DensityMatrix:
    """Projector ``|psi><psi|`` onto a pure state."""
    rho = DensityMatrix(np.outer(state.amplitudes, state.amplitudes.conj()), state.labels)
    validate_density(rho)
    return rho


def compose(system: DensityMatrix, env: DensityMatrix) -> DensityMatrix:
    """Tensor product of two registers; system labels come first (high bits)."""
    shared = set(system.labels) & set(env.labels)
    if shared:
        raise LabelCollisionError(f"labels {sorted(shared)} appear in both registers")
    return DensityMatrix(np.kron(system.matrix, env.matrix), system.labels + env.labels)
