"""
Steady-state covariance matrix from the continuous Lyapunov equation

    M V + V M^T = -D

solved as a dense linear system on vec(V), plus symplectic spectra used to
check that the result is a bona fide quantum state.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .dynamics import DiffusionMatrix, DriftMatrix
from .errors import NotSymplecticSpectrum, SingularSystem, UnstableDrift
from .stability import is_stable

__all__ = [
    "CovarianceMatrix",
    "solve_lyapunov",
    "lyapunov_residual",
    "residual_tolerance",
    "symplectic_form",
    "symplectic_eigenvalues",
]

PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetrized second moments of the eight quadrature fluctuations."""

    v: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.v.shape[0] // 2


def _raw(x):
    for attr in ("m", "d", "v"):
        if hasattr(x, attr):
            return np.asarray(getattr(x, attr), dtype=float)
    return np.asarray(x, dtype=float)


def solve_lyapunov(m, d, check_stability=True) -> CovarianceMatrix:
    """Solve ``M V + V M^T = -D`` for the stationary covariance matrix.

    Uses the column-major vectorization vec(M V + V M^T) = (I kron M + M kron I) vec(V)
    and LU factorization with partial pivoting.

    Parameters
    ----------
    m : DriftMatrix or ndarray
    d : DiffusionMatrix or ndarray
    check_stability : bool
        Re-check that ``m`` is Hurwitz before solving.

    Raises
    ------
    UnstableDrift
        If ``m`` has an eigenvalue with nonnegative real part.
    SingularSystem
        If a pivot of the factorized Kronecker sum is numerically zero.
    """
    m, d = _raw(m), _raw(d)
    n = m.shape[0]
    if check_stability:
        report = is_stable(m)
        if not report.stable:
            raise UnstableDrift(f"drift matrix is not Hurwitz (margin {report.margin:.3e})")
    eye = np.eye(n)
    k = np.kron(eye, m) + np.kron(m, eye)
    with warnings.catch_warnings():
        # exact zero pivots are reported below as SingularSystem
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(k, check_finite=False)
    pivots = np.abs(np.diag(lu))
    scale = np.max(np.abs(k))
    if pivots.min() <= PIVOT_TOL * scale:
        raise SingularSystem(f"smallest pivot {pivots.min():.3e} at scale {scale:.3e}")
    vec = lu_solve((lu, piv), -d.reshape(-1, order="F"), check_finite=False)
    v = vec.reshape((n, n), order="F")
    v = 0.5 * (v + v.T)
    v.setflags(write=False)
    return CovarianceMatrix(v)


def lyapunov_residual(m, v, d) -> float:
    """Max-norm of ``M V + V M^T + D``."""
    m, v, d = _raw(m), _raw(v), _raw(d)
    return float(np.max(np.abs(m @ v + v @ m.T + d)))


def residual_tolerance(d) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(_raw(d)))))


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal form with [[0, 1], [-1, 0]] on each mode."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(v) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, ascending.

    They are the moduli of the purely imaginary eigenvalue pairs of Omega V.
    """
    v = _raw(v)
    n = v.shape[0] // 2
    ev = np.linalg.eigvals(symplectic_form(n) @ v)
    size = np.max(np.abs(ev)) if ev.size else 0.0
    if np.max(np.abs(ev.real)) > 1e-6 * max(size, 1e-300):
        raise NotSymplecticSpectrum(
            f"Omega V has eigenvalues off the imaginary axis (max |Re| = {np.max(np.abs(ev.real)):.3e})"
        )
    moduli = np.sort(np.abs(ev.imag))
    # each modulus appears twice, once per member of the conjugate pair
    return 0.5 * (moduli[0::2] + moduli[1::2])
