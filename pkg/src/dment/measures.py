"""Entanglement quantifiers: negativities, residual pi, three-pi, concurrence, tangle.

Negativity convention.  The package default is the *doubled* convention

    N = ||rho^{T_X}||_1 - 1 = 2 * sum(|negative eigenvalues|),

under which the balanced-GHZ three-pi equals 1 and the symmetric-W three-pi
equals 4(sqrt(5)-1)/9 = 0.549364, matching the closed-form expression below.
The undoubled sum of negative-eigenvalue magnitudes is available as
``convention="raw"`` and yields values scaled by 1/2 (pi terms by 1/4).
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from math import sqrt
from typing import Optional

import numpy as np

from .dynamics import partial_trace, partial_transpose
from .errors import DimensionMismatchError, NormalizationError
from .linalg import PAULI_Y, eig_hermitian, kron
from .states import DensityMatrix, PureState, purity

NEGATIVITY_CONVENTIONS = ("doubled", "raw")

#: Reported measure values with magnitude below this are published as exact 0,
#: which keeps dead-zone detection stable against roundoff-scale positives.
ZERO_SNAP = 1e-12


def _check_convention(convention: str) -> None:
    if convention not in NEGATIVITY_CONVENTIONS:
        raise ValueError(f"unknown negativity convention {convention!r}; choose from {NEGATIVITY_CONVENTIONS}")


def negativity(rho: DensityMatrix, subsystem: str, convention: str = "doubled") -> float:
    """Negativity of ``rho`` across the ``subsystem`` | rest bipartition."""
    _check_convention(convention)
    lam = eig_hermitian(partial_transpose(rho, subsystem)).eigenvalues
    total = float(-lam[lam < 0].sum())
    return 2.0 * total if convention == "doubled" else total


def pairwise_negativity(rho: DensityMatrix, a: str, b: str, convention: str = "doubled") -> float:
    """Negativity between qubits ``a`` and ``b`` after tracing out the rest."""
    return negativity(partial_trace(rho, [a, b]), a, convention)


def residual_pi(rho: DensityMatrix, nodal: str, convention: str = "doubled") -> float:
    """Residual entanglement seen from one nodal qubit of a three-qubit state.

    ``pi_X = N_{X|YZ}^2 - N_XY^2 - N_XZ^2``; may be negative for mixed states
    (only the three-qubit average is a monotone).
    """
    if rho.num_qubits != 3:
        raise DimensionMismatchError("residual_pi expects a 3-qubit state")
    others = [lab for lab in rho.labels if lab != nodal]
    n_rest = negativity(rho, nodal, convention)
    n1 = pairwise_negativity(rho, nodal, others[0], convention)
    n2 = pairwise_negativity(rho, nodal, others[1], convention)
    return n_rest ** 2 - n1 ** 2 - n2 ** 2


def three_pi(rho: DensityMatrix, convention: str = "doubled") -> float:
    """Average of the three residual entanglements; invariant under relabeling."""
    if rho.num_qubits != 3:
        raise DimensionMismatchError("three_pi expects a 3-qubit state")
    return sum(residual_pi(rho, lab, convention) for lab in rho.labels) / 3.0


def three_pi_w_closed_form(w0: float, w1: float, w2: float) -> float:
    """Closed-form three-pi of the generalized W family (doubled convention).

    Equals ``three_pi(to_density(w_state(w0, w1, w2)))``:

        4/3 [ w2^2 sqrt(w2^4 + 4 w1^2 w0^2)
            + w1^2 sqrt(w1^4 + 4 w2^2 w0^2)
            + w0^2 sqrt(w0^4 + 4 w2^2 w1^2)
            - w2^4 - w1^4 - w0^4 ]
    """
    a, b, c = w0 * w0, w1 * w1, w2 * w2
    if abs(a + b + c - 1.0) > 1e-9:
        raise NormalizationError(f"w amplitudes not normalized: sum of squares {a + b + c!r}")
    return (4.0 / 3.0) * (
        c * sqrt(c * c + 4.0 * b * a)
        + b * sqrt(b * b + 4.0 * c * a)
        + a * sqrt(a * a + 4.0 * c * b)
        - c * c - b * b - a * a
    )


def spin_flip(rho2: np.ndarray) -> np.ndarray:
    """Spin-flipped two-qubit operator ``(Y (x) Y) rho* (Y (x) Y)``."""
    yy = kron(PAULI_Y, PAULI_Y)
    return yy @ rho2.conj() @ yy


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit state.

    ``rho @ spin_flip(rho)`` is diagonalizable with nonnegative spectrum but is
    not Hermitian; its eigenvalues are obtained from the similarity-equivalent
    Hermitian form ``sqrt(rho) rho_s sqrt(rho)`` so that only the Hermitian
    eigensolver is ever used.  Roundoff negatives are clamped before the
    square roots.
    """
    if rho.num_qubits != 2:
        raise DimensionMismatchError("concurrence expects a 2-qubit state")
    dec = eig_hermitian(rho.matrix)
    sqrt_rho = (dec.eigenvectors * np.sqrt(np.clip(dec.eigenvalues, 0.0, None))) @ dec.eigenvectors.conj().T
    m = sqrt_rho @ spin_flip(rho.matrix) @ sqrt_rho
    lam = np.sqrt(np.clip(eig_hermitian(m).eigenvalues, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def three_tangle(psi: PureState) -> float:
    """Three-tangle of a pure three-qubit state from its amplitude quartic.

    With amplitudes ``x[i, j, k]`` the invariant is ``4 |d1 - 2 d2 + 4 d3|``
    built from the complementary-index quartics; it vanishes on the whole W
    family and equals ``4 |g0 g1|^2`` on the GHZ family.
    """
    if psi.num_qubits != 3:
        raise DimensionMismatchError("three_tangle expects a 3-qubit pure state")
    x = psi.amplitudes.reshape(2, 2, 2)
    d1 = (x[0, 0, 0] ** 2 * x[1, 1, 1] ** 2
          + x[0, 0, 1] ** 2 * x[1, 1, 0] ** 2
          + x[0, 1, 0] ** 2 * x[1, 0, 1] ** 2
          + x[1, 0, 0] ** 2 * x[0, 1, 1] ** 2)
    d2 = (x[0, 0, 0] * x[1, 1, 1] * x[0, 1, 1] * x[1, 0, 0]
          + x[0, 0, 0] * x[1, 1, 1] * x[1, 0, 1] * x[0, 1, 0]
          + x[0, 0, 0] * x[1, 1, 1] * x[1, 1, 0] * x[0, 0, 1]
          + x[0, 1, 1] * x[1, 0, 0] * x[1, 0, 1] * x[0, 1, 0]
          + x[0, 1, 1] * x[1, 0, 0] * x[1, 1, 0] * x[0, 0, 1]
          + x[1, 0, 1] * x[0, 1, 0] * x[1, 1, 0] * x[0, 0, 1])
    d3 = (x[0, 0, 0] * x[1, 1, 0] * x[1, 0, 1] * x[0, 1, 1]
          + x[1, 1, 1] * x[0, 0, 1] * x[0, 1, 0] * x[1, 0, 0])
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


@dataclass(frozen=True)
class EntanglementReport:
    """Every monotone at one parameter point.

    The identities ``pi_a = n_a_bc^2 - n_ab^2 - n_ac^2`` (and cyclic) and
    ``three_pi = (pi_a + pi_b + pi_c) / 3`` hold exactly as computed.
    Concurrences and the tangle are optional extras.
    """

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

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


MEASURE_NAMES = tuple(f.name for f in fields(EntanglementReport))
NEGATIVITY_MEASURES = ("n_ab", "n_ac", "n_bc", "n_a_bc", "n_b_ac", "n_c_ab",
                       "pi_a", "pi_b", "pi_c", "three_pi")

#: Purity threshold above which a state is treated as pure when a tangle is
#: requested without an explicit state vector.
_PURE_TOL = 1e-8


def _dominant_eigenvector(rho: DensityMatrix) -> PureState:
    dec = eig_hermitian(rho.matrix)
    vec = dec.eigenvectors[:, -1]
    pivot = int(np.argmax(np.abs(vec)))
    vec = vec * np.exp(-1j * np.angle(vec[pivot]))  # deterministic global phase
    return PureState(vec, rho.labels)


def full_report(rho: DensityMatrix, convention: str = "doubled",
                include_tangle: bool = False, psi: Optional[PureState] = None,
                include_concurrence: bool = False) -> EntanglementReport:
    """Populate an :class:`EntanglementReport` for a three-qubit state.

    Field names are positional: ``a``, ``b``, ``c`` refer to the first,
    second and third register label of ``rho``.  When ``include_tangle`` is
    set and no state vector is supplied, the tangle is computed from the
    dominant eigenvector provided the state is pure within 1e-8; otherwise it
    is left unset.
    """
    if rho.num_qubits != 3:
        raise DimensionMismatchError("full_report expects a 3-qubit state")
    la, lb, lc = rho.labels
    n_ab = pairwise_negativity(rho, la, lb, convention)
    n_ac = pairwise_negativity(rho, la, lc, convention)
    n_bc = pairwise_negativity(rho, lb, lc, convention)
    n_a_bc = negativity(rho, la, convention)
    n_b_ac = negativity(rho, lb, convention)
    n_c_ab = negativity(rho, lc, convention)
    pi_a = n_a_bc ** 2 - n_ab ** 2 - n_ac ** 2
    pi_b = n_b_ac ** 2 - n_ab ** 2 - n_bc ** 2
    pi_c = n_c_ab ** 2 - n_ac ** 2 - n_bc ** 2

    tangle = None
    if include_tangle:
        if psi is None and abs(purity(rho) - 1.0) < _PURE_TOL:
            psi = _dominant_eigenvector(rho)
        if psi is not None:
            tangle = three_tangle(psi)

    c_ab = c_ac = c_bc = None
    if include_concurrence:
        c_ab = concurrence(partial_trace(rho, [la, lb]))
        c_ac = concurrence(partial_trace(rho, [la, lc]))
        c_bc = concurrence(partial_trace(rho, [lb, lc]))

    return EntanglementReport(
        n_ab=n_ab, n_ac=n_ac, n_bc=n_bc,
        n_a_bc=n_a_bc, n_b_ac=n_b_ac, n_c_ab=n_c_ab,
        pi_a=pi_a, pi_b=pi_b, pi_c=pi_c,
        three_pi=(pi_a + pi_b + pi_c) / 3.0,
        three_tangle=tangle,
        concurrence_ab=c_ab, concurrence_ac=c_ac, concurrence_bc=c_bc,
    )


def snap_small(value: Optional[float], threshold: float = ZERO_SNAP) -> Optional[float]:
    """Publish sub-threshold magnitudes as exact zero (None passes through)."""
    if value is None:
        return None
    return 0.0 if abs(value) < threshold else float(value)
