"""DM coupling, unitary evolution of the four-qubit register, reductions.

Model implemented here: a three-qubit system ``(A, B, C)`` is prepared in a
W or GHZ state, an environment qubit ``D`` is appended at the low end of the
register, and the composite evolves unitarily under a Dzyaloshinskii-Moriya
exchange generator.  The two-qubit generator is embedded on the *leading*
register pair ``(A, B)``; qubits ``C`` and ``D`` are spectators of the
coupling.  Under this placement the reduced three-qubit state of a W input
stays inside the single-excitation subspace, its ``|010>``/``|100>``
amplitudes rotate by the angle ``2 * dz * t``, GHZ inputs are exactly
invariant, and the reduced state never depends on the environment amplitudes.
These are the dynamical facts the measurement suite asserts; the placement is
part of the package's frozen conventions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, UnknownLabelError
from .linalg import (EigenDecomposition, PAULI_X, PAULI_Y, as_matrix, eig_hermitian, kron,
                     matexp_from_eig)
from .states import DensityMatrix, PureState, compose, to_density, validate_density


@dataclass(frozen=True)
class DMCoupling:
    """Coupling strength ``dz`` and duration ``t``; only ``theta = dz * t`` matters."""

    dz: float
    t: float

    def __post_init__(self):
        if self.dz < 0 or self.t < 0:
            raise ValueError(f"dz and t must be nonnegative, got dz={self.dz}, t={self.t}")

    @property
    def theta(self) -> float:
        return self.dz * self.t

    @classmethod
    def from_theta(cls, theta: float) -> "DMCoupling":
        return cls(dz=float(theta), t=1.0)


def dm_hamiltonian(dz: float) -> np.ndarray:
    """Two-qubit DM exchange generator ``dz * (X (x) Y  -  Y (x) X)``.

    In the computational basis of the coupled pair the only nonzero entries
    are ``(1, 2) = 2i dz`` and ``(2, 1) = -2i dz``: the generator rotates the
    single-excitation amplitudes of the pair and annihilates ``|00>``/``|11>``.
    """
    return float(dz) * (kron(PAULI_X, PAULI_Y) - kron(PAULI_Y, PAULI_X))


def embed_coupling(h_pair: np.ndarray) -> np.ndarray:
    """Lift a two-qubit coupling onto the four-qubit register.

    The pair operator acts on the two most significant register bits (labels
    ``A`` and ``B`` under the package convention); the remaining two qubits,
    including the appended environment, are untouched.
    """
    h = as_matrix(h_pair)
    if h.shape != (4, 4):
        raise DimensionMismatchError(f"expected a 4x4 coupling, got {h.shape}")
    return kron(h, np.eye(4, dtype=complex))


@lru_cache(maxsize=1)
def _unit_generator_eig() -> EigenDecomposition:
    # H(dz) = dz * H(1), so exp(-i H(dz) t) = exp(-i H(1) * dz t); one
    # decomposition serves every (dz, t) pair.
    return eig_hermitian(embed_coupling(dm_hamiltonian(1.0)))


def propagator(coupling: DMCoupling) -> np.ndarray:
    """16x16 unitary ``exp(-i * H(dz) * t)`` on the four-qubit register."""
    return matexp_from_eig(_unit_generator_eig(), coupling.theta)


def evolve(rho0: DensityMatrix, coupling: DMCoupling) -> DensityMatrix:
    """Conjugate the composite state by the propagator: ``U rho0 U^dagger``."""
    if rho0.num_qubits != 4:
        raise DimensionMismatchError(
            f"evolve expects the 4-qubit composite register, got {rho0.num_qubits} qubits"
        )
    u = propagator(coupling)
    rho_t = DensityMatrix(u @ rho0.matrix @ u.conj().T, rho0.labels)
    validate_density(rho_t)
    return rho_t


def partial_trace(rho: DensityMatrix, keep: Sequence[str]) -> DensityMatrix:
    """Reduced density matrix over ``keep``, in the order given.

    Discarded qubits are summed over their computational basis.  ``keep`` may
    also reorder the surviving labels; the output axes follow ``keep``.
    """
    keep = list(keep)
    if not keep:
        raise UnknownLabelError("keep must name at least one qubit")
    missing = [k for k in keep if k not in rho.labels]
    if missing:
        raise UnknownLabelError(f"labels {missing} not in register {rho.labels}")
    if len(set(keep)) != len(keep):
        raise UnknownLabelError(f"duplicate labels in keep: {keep}")

    n = rho.num_qubits
    tensor = rho.matrix.reshape([2] * (2 * n))
    ket = [chr(ord('a') + q) for q in range(n)]
    bra = [chr(ord('a') + n + q) for q in range(n)]
    for q, label in enumerate(rho.labels):
        if label not in keep:
            bra[q] = ket[q]  # repeated index: trace over this qubit
    out_axes = [rho.labels.index(k) for k in keep]
    subscript = (
        "".join(ket) + "".join(bra)
        + "->"
        + "".join(ket[q] for q in out_axes) + "".join(bra[q] for q in out_axes)
    )
    d = 2 ** len(keep)
    reduced = np.einsum(subscript, tensor).reshape(d, d)
    out = DensityMatrix(reduced, tuple(keep))
    validate_density(out)
    return out


def partial_transpose(rho: DensityMatrix, subsystem: str) -> np.ndarray:
    """Transpose the indices of one qubit; Hermitian, trace one, possibly non-PSD."""
    if subsystem not in rho.labels:
        raise UnknownLabelError(f"label {subsystem!r} not in register {rho.labels}")
    n = rho.num_qubits
    q = rho.labels.index(subsystem)
    tensor = rho.matrix.reshape([2] * (2 * n))
    tensor = np.swapaxes(tensor, q, n + q)
    return tensor.reshape(rho.dim, rho.dim)


def evolve_and_reduce(system: PureState, env: PureState, theta: float) -> DensityMatrix:
    """Compose system and environment, evolve by ``theta``, trace the environment out.

    This is the pipeline behind every sweep: the returned state lives on the
    system labels only.
    """
    rho0 = compose(to_density(system), to_density(env))
    rho_t = evolve(rho0, DMCoupling.from_theta(theta))
    return partial_trace(rho_t, system.labels)
