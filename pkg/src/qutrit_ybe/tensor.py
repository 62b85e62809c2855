"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the largest ones
here are 27x27 (three qutrits), so nothing is sparse and nothing is cached.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BadShape, NotHermitian

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal eigenvectors.

    ``vectors[:, i]`` is the eigenvector for ``values[i]``.
    """

    values: np.ndarray
    vectors: np.ndarray

    def vector(self, i: int) -> np.ndarray:
        return self.vectors[:, i]

    def __len__(self) -> int:
        return len(self.values)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise BadShape(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``kron(a, b)[i*br + k, j*bc + l] = a[i, j] * b[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> np.ndarray:
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def distance(a, b) -> float:
    """Frobenius distance; the only equality notion used for matrices."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def allclose(a, b, tol: float = DEFAULT_TOL) -> bool:
    return distance(a, b) <= tol


def hermiticity_residual(a) -> float:
    a = as_matrix(a)
    return distance(a, dagger(a))


def _check_hermitian(a: np.ndarray, tol: float) -> None:
    if a.shape[0] != a.shape[1]:
        raise BadShape(f"matrix is not square: {a.shape}")
    # scale-aware: Hamiltonians carry a factor hbar*omega
    res = hermiticity_residual(a)
    if res > tol * max(1.0, float(np.linalg.norm(a))):
        raise NotHermitian(f"||A - A^dagger|| = {res:.3e} exceeds {tol:.1e}")


def eig_hermitian(a, tol: float = DEFAULT_TOL) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix.

    Eigenvalues come back ascending. Inside a degenerate eigenspace the basis
    is whatever LAPACK returns; callers that need a particular basis there
    must fix it themselves.

    Raises
    ------
    NotHermitian
        If ``||a - a^dagger||`` exceeds ``tol`` (relative to ``||a||`` once
        that is above one).
    """
    a = as_matrix(a)
    _check_hermitian(a, tol)
    # symmetrize so the solver sees an exactly Hermitian input
    values, vectors = np.linalg.eigh(0.5 * (a + dagger(a)))
    return EigenSystem(values=values, vectors=vectors)


def eigvals_hermitian(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    return eig_hermitian(a, tol).values


def expm(a) -> np.ndarray:
    """Matrix exponential (scipy's Pade scaling-and-squaring)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise BadShape(f"matrix is not square: {a.shape}")
    return scipy.linalg.expm(a)


def partial_transpose(rho, subsystem: str = "A", dims: tuple[int, int] = (3, 3)) -> np.ndarray:
    """Partial transpose of a bipartite operator.

    With ``rho[(iA, iB), (jA, jB)]`` the A-transpose swaps ``iA`` and ``jA``;
    the B-transpose swaps ``iB`` and ``jB``. This is a pure index permutation,
    so trace and Hermiticity are preserved exactly.
    """
    rho = as_matrix(rho)
    da, db = dims
    n = da * db
    if rho.shape != (n, n):
        raise BadShape(f"expected a {n}x{n} bipartite operator, got {rho.shape}")
    t = rho.reshape(da, db, da, db)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return np.ascontiguousarray(t.reshape(n, n))


def trace_norm_hermitian(a, tol: float = DEFAULT_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eig_hermitian(a, tol).values)))


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    return np.outer(v, v.conj())


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (z + z.conj().T)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """exp(iH) for a random Hermitian H."""
    return expm(1j * random_hermitian(n, rng))
