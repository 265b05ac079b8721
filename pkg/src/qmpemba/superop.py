"""Pauli-basis bookkeeping and the 4x4 real Liouvillian of a qubit generator.

Conventions used everywhere in the package:

* qubit basis order is ``(|e>, |g>)``, so ``sigma_z = |e><e| - |g><g|``;
* operator basis order is ``(1, sigma_x, sigma_y, sigma_z)``;
* a state is carried as its coherence vector ``[1, x, y, z]`` with
  ``v[n] = tr(rho sigma_n^dagger)``.

Eigenvalue index ``n`` (``lambda_0`` steady, ``lambda_3`` fastest) always
refers to the sort order of :func:`spectral_decompose`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg as la

from .errors import (
    DefectiveLiouvillian,
    NonHermitianInput,
    NonlinearGenerator,
    NonRealEntry,
)

DIM = 2

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: ``(1, sx, sy, sz)``; read-only so it can be shared freely.
PAULI_BASIS = np.stack([IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z])
PAULI_BASIS.setflags(write=False)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_TOL = 1e-10
COMPLETENESS_TOL = 1e-6
MAX_EIGVEC_COND = 1e8

Generator = Callable[[np.ndarray], np.ndarray]


def check_density_matrix(rho, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Validate a 2x2 density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm >= HERMITIAN_TOL:
        raise NonHermitianInput(f"|rho - rho^dag| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1) >= TRACE_TOL:
        raise ValueError(f"trace {tr} differs from 1")
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if evals[0] < -psd_tol:
        raise ValueError(f"negative eigenvalue {evals[0]:.3e}")
    return rho


def to_coherence_vector(rho) -> np.ndarray:
    """``[tr(rho), tr(rho sx), tr(rho sy), tr(rho sz)]`` as a real 4-vector.

    Works on a single matrix or a stack ``(..., 2, 2)``. Only Hermiticity is
    enforced here; use :func:`check_density_matrix` for the full state check.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (2, 2):
        raise ValueError(f"expected 2x2 matrices, got shape {rho.shape}")
    herm = np.max(np.abs(rho - np.swapaxes(rho, -1, -2).conj()), initial=0.0)
    if herm >= HERMITIAN_TOL:
        raise NonHermitianInput(f"|rho - rho^dag| = {herm:.3e}")
    # tr(rho s^dag) = sum_ij rho_ij conj(s_ij)
    v = np.einsum("...ij,nij->...n", rho, PAULI_BASIS.conj())
    return v.real.copy()


def from_coherence_vector(v) -> np.ndarray:
    """Inverse of :func:`to_coherence_vector`; no physicality check."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 4:
        raise ValueError(f"coherence vectors have 4 components, got {v.shape}")
    return np.einsum("...n,nij->...ij", v, PAULI_BASIS) / DIM


def check_linear(gen: Generator, trials: int = 3, tol: float = 1e-10, seed: int = 12345) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        y = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        lhs = np.asarray(gen(a * x + b * y))
        rhs = a * np.asarray(gen(x)) + b * np.asarray(gen(y))
        scale = max(1.0, np.max(np.abs(rhs)))
        resid = np.max(np.abs(lhs - rhs)) / scale
        if not resid < tol:
            raise NonlinearGenerator(f"linearity residual {resid:.3e}")


def build_liouvillian(gen: Generator, check: bool = True) -> np.ndarray:
    """Matrix ``L[k, n] = tr(sigma_k^dag gen(sigma_n)) / 2`` of a linear generator.

    The result is real for any Hermiticity-preserving generator; an imaginary
    residue above ``1e-10`` raises :class:`NonRealEntry`.
    """
    if check:
        check_linear(gen)
    cols = [np.asarray(gen(s), dtype=complex) for s in PAULI_BASIS]
    images = np.stack(cols)  # images[n] = gen(sigma_n)
    mat = np.einsum("kij,nij->kn", PAULI_BASIS.conj(), images) / DIM
    imag = np.max(np.abs(mat.imag))
    if imag >= IMAG_TOL:
        raise NonRealEntry(f"Liouvillian entry has imaginary part {imag:.3e}")
    if not np.all(np.isfinite(mat.real)):
        raise NonRealEntry("Liouvillian has non-finite entries")
    return mat.real.copy()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Sorted eigenvalues with biorthonormal right/left eigenvectors.

    ``right[:, n]`` is ``|R_n>>`` and ``left[n, :]`` is ``<<L_n|`` so that
    ``left @ right == I`` and ``right @ diag(eigenvalues) @ left == L``.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    matrix: np.ndarray

    def completeness_residual(self) -> float:
        return float(np.max(np.abs(self.right @ self.left - np.eye(len(self.eigenvalues)))))

    def biorthogonality_residual(self) -> float:
        return float(np.max(np.abs(self.left @ self.right - np.eye(len(self.eigenvalues)))))

    def residuals(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-mode ``|L R_n - l_n R_n|`` and ``|L_n L - l_n L_n|``."""
        lam = self.eigenvalues
        r = np.linalg.norm(self.matrix @ self.right - self.right * lam, axis=0)
        l = np.linalg.norm(self.left @ self.matrix - lam[:, None] * self.left, axis=1)
        return r, l

    def propagator(self, t: float) -> np.ndarray:
        """``exp(L t)`` rebuilt from the modes (complex; real up to roundoff)."""
        return (self.right * np.exp(self.eigenvalues * t)) @ self.left


def _sort_order(w: np.ndarray) -> np.ndarray:
    # descending Re, then descending Im, then index; rounding keeps
    # roundoff-level differences from reordering degenerate modes
    re = np.round(w.real, 10)
    im = np.round(w.imag, 10)
    return np.lexsort((np.arange(len(w)), -im, -re))


def _polish(mat: np.ndarray, lam: complex, vec: np.ndarray) -> np.ndarray:
    # one shifted inverse-iteration step; undoes the accuracy lost to LAPACK
    # balancing when the trace row carries roundoff-level entries
    n = len(vec)
    shift = lam + 1e-10 * max(1.0, abs(lam))
    try:
        x = np.linalg.solve(mat - shift * np.eye(n), vec)
    except np.linalg.LinAlgError:
        return vec
    if not np.all(np.isfinite(x)):
        return vec
    x = x / np.linalg.norm(x)
    # keep the phase of the input so normalizations stay meaningful
    phase = np.vdot(x, vec)
    return x * (phase / abs(phase)) if abs(phase) > 0 else x


def spectral_decompose(liouvillian) -> SpectralDecomposition:
    """Biorthonormal eigen-decomposition of a (non-normal) Liouvillian.

    Right vectors get unit Euclidean norm, except a stationary mode
    (``|Re lambda| < 1e-8``) whose right vector is scaled to unit trace
    component so it *is* the steady-state coherence vector. The left vectors
    are the rows of the inverse right-vector matrix, which makes
    ``<<L_m|R_n>> = delta_mn`` hold even inside degenerate eigenspaces.

    Raises :class:`DefectiveLiouvillian` when the eigenvectors do not span the
    space (condition number above ``1e8``) or the completeness relation fails
    by more than ``1e-6``.
    """
    mat = np.array(liouvillian, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("Liouvillian has non-finite entries")
    w, vr = la.eig(mat)
    order = _sort_order(w)
    w, vr = w[order], vr[:, order]

    cond = np.linalg.cond(vr)
    if not cond < MAX_EIGVEC_COND:
        raise DefectiveLiouvillian(f"eigenvector matrix condition number {cond:.3e}")
    vr = np.column_stack([_polish(mat, lam, vr[:, n]) for n, lam in enumerate(w)])
    for n, lam in enumerate(w):
        if abs(lam.real) < 1e-8 and abs(vr[0, n]) > 1e-8:
            vr[:, n] = vr[:, n] / vr[0, n]
    cond = np.linalg.cond(vr)
    if not cond < MAX_EIGVEC_COND:
        raise DefectiveLiouvillian(f"eigenvector matrix condition number {cond:.3e}")
    left = np.linalg.inv(vr)
    # Rayleigh quotients with the biorthogonal partner
    w = np.einsum("ni,ij,jn->n", left, mat, vr)

    decomp = SpectralDecomposition(eigenvalues=w, right=vr, left=left, matrix=mat)
    resid = decomp.completeness_residual()
    if not resid < COMPLETENESS_TOL:
        raise DefectiveLiouvillian(f"completeness residual {resid:.3e}")
    for arr in (decomp.eigenvalues, decomp.right, decomp.left, decomp.matrix):
        arr.setflags(write=False)
    return decomp
