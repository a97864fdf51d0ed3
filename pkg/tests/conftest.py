"""Shared fixtures and independent numerical oracles.

The oracles here deliberately avoid the package's own code paths: partial
traces are explicit bit loops, characteristic polynomials come from Newton's
identities plus companion-matrix roots, and the matrix exponential is a
scaled-and-squared Taylor series.  All randomized tests draw from one seeded
generator; override the seed with ``pytest --seed N``.
"""
from __future__ import annotations

import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", action="store", type=int, default=42,
                     help="seed for randomized property tests")


@pytest.fixture
def rng(request) -> np.random.Generator:
    return np.random.default_rng(request.config.getoption("--seed"))


# --- random inputs ---------------------------------------------------------

def random_pure(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    v = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, n_qubits: int, rank: int | None = None) -> np.ndarray:
    d = 2 ** n_qubits
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (g + g.conj().T) / 2


def random_w_params(rng: np.random.Generator) -> tuple[float, float, float]:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return float(v[0]), float(v[1]), float(v[2])


# --- independent oracles ---------------------------------------------------

def ptrace_loops(matrix: np.ndarray, n_qubits: int, keep: list[int]) -> np.ndarray:
    """Partial trace by explicit bit loops; positions count from the MSB."""
    drop = [q for q in range(n_qubits) if q not in keep]
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    out = np.zeros((dk, dk), dtype=complex)

    def full_index(kept_bits: int, dropped_bits: int) -> int:
        idx = 0
        for pos_rank, q in enumerate(keep):
            bit = (kept_bits >> (len(keep) - 1 - pos_rank)) & 1
            idx |= bit << (n_qubits - 1 - q)
        for pos_rank, q in enumerate(drop):
            bit = (dropped_bits >> (len(drop) - 1 - pos_rank)) & 1
            idx |= bit << (n_qubits - 1 - q)
        return idx

    for i in range(dk):
        for j in range(dk):
            acc = 0.0 + 0.0j
            for s in range(dd):
                acc += matrix[full_index(i, s), full_index(j, s)]
            out[i, j] = acc
    return out


def charpoly_eigvals(m: np.ndarray) -> np.ndarray:
    """Eigenvalues via Newton's identities and companion-matrix roots.

    Valid for matrices with a real spectrum (Hermitian inputs here); never
    touches the Hermitian eigensolver under test.
    """
    d = m.shape[0]
    powers = [np.eye(d, dtype=complex)]
    for _ in range(d):
        powers.append(powers[-1] @ m)
    p = [np.trace(powers[k]).real for k in range(d + 1)]
    e = [1.0]
    for k in range(1, d + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(d + 1)]
    return np.sort(np.roots(coeffs).real)


def taylor_expm(h: np.ndarray, scale: float, terms: int = 24) -> np.ndarray:
    """exp(-i h scale) by scaling-and-squaring of a truncated Taylor series."""
    a = -1j * np.asarray(h, dtype=complex) * scale
    squarings = max(0, int(np.ceil(np.log2(max(1e-30, np.linalg.norm(a, np.inf))))) + 2)
    a /= 2 ** squarings
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def wootters_concurrence_general(rho: np.ndarray) -> float:
    """Concurrence via the general (non-Hermitian) eigensolver, as a cross-check."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    lam = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    lam = np.sqrt(np.clip(np.sort(lam.real)[::-1], 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
