"""Dense complex linear algebra for small Hermitian problems.

Everything in this package runs on matrices of dimension 16 or less, so the
routines here favour robustness and determinism over asymptotic speed.  All
matrices are plain ``numpy.ndarray`` objects of dtype complex128; this module
is the only place that talks to the eigensolver, so every spectral quantity
downstream is computed through a single, deterministic code path.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NoConvergenceError, NotHermitianError

HERMITICITY_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(a: np.ndarray) -> np.ndarray:
    """Coerce ``a`` to a square complex matrix, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with standard block ordering.

    Row/column index of the result is ``i_a * dim_b + i_b``, i.e. the first
    factor occupies the most significant digits of the composite index.
    """
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of ``a`` from its conjugate transpose."""
    a = as_matrix(a)
    return float(np.abs(a - a.conj().T).max())


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; column ``k`` of ``eigenvectors``
    is the orthonormal eigenvector paired with ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises :class:`NotHermitianError` when the input is asymmetric beyond
    ``tol`` and :class:`NoConvergenceError` when the iteration fails.  The
    output is deterministic for identical inputs.
    """
    a = as_matrix(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {defect:.3e} (tol {tol:.0e})")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise NoConvergenceError(str(exc)) from exc
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def matexp_from_eig(dec: EigenDecomposition, scale: float) -> np.ndarray:
    """Unitary ``V diag(exp(-i lambda scale)) V^dagger`` from a decomposition."""
    phases = np.exp(-1j * dec.eigenvalues * scale)
    return (dec.eigenvectors * phases) @ dec.eigenvectors.conj().T


def matexp_hermitian(h: np.ndarray, scale: float) -> np.ndarray:
    """Evaluate ``exp(-i * h * scale)`` for Hermitian ``h`` spectrally.

    The result is unitary to machine precision; no general (non-Hermitian)
    matrix exponential is provided or needed.
    """
    return matexp_from_eig(eig_hermitian(h), scale)
