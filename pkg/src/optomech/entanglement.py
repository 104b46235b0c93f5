"""Mirror-mirror entanglement from the steady-state covariance matrix."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalCM

__all__ = [
    "MechanicalCM",
    "EntanglementResult",
    "CONVENTIONS",
    "reduce_mechanical",
    "log_negativity",
]

#: "ln2eta": E_N = max(0, -ln 2 eta) (vacuum variance 1/2);
#: "lneta": E_N = max(0, -ln eta), the unnormalized form
CONVENTIONS = ("ln2eta", "lneta")

_NEG_TOL = 1e-12

# momentum sign flip of mode 2
_PARTIAL_TRANSPOSE = np.outer([1.0, 1.0, 1.0, -1.0], [1.0, 1.0, 1.0, -1.0])
_OMEGA = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _smallest_symplectic(v):
    """Smallest symplectic eigenvalue as the smallest singular value of V^1/2 Omega V^1/2.

    Equals sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2) but stays Lipschitz in V
    where the two symplectic eigenvalues meet; the closed form loses half the
    digits there.
    """
    w, u = np.linalg.eigh(v)
    if w.min() < -_NEG_TOL * max(1.0, float(np.max(np.abs(v)))):
        raise UnphysicalCM(f"covariance matrix is not positive semidefinite (eigenvalue {w.min():.3e})")
    root = (u * np.sqrt(np.clip(w, 0.0, None))) @ u.T
    return float(np.linalg.svd(root @ _OMEGA @ root, compute_uv=False).min())


@dataclass(frozen=True)
class MechanicalCM:
    """Two-mode mechanical covariance matrix [[a, c], [c^T, b]]."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.a, self.c], [self.c.T, self.b]])

    @classmethod
    def from_matrix(cls, vm):
        vm = np.asarray(vm, dtype=float)
        return cls(a=vm[:2, :2].copy(), b=vm[2:4, 2:4].copy(), c=vm[:2, 2:4].copy())


@dataclass(frozen=True)
class EntanglementResult:
    eta_minus: float
    e_n: float
    entangled: bool
    sigma: float
    det_vm: float


def reduce_mechanical(v) -> MechanicalCM:
    """Keep the leading 4x4 (mirror) block of the full covariance matrix."""
    v = np.asarray(getattr(v, "v", v), dtype=float)
    return MechanicalCM.from_matrix(v[:4, :4])


def log_negativity(vm: MechanicalCM, convention: str = "ln2eta") -> EntanglementResult:
    """Logarithmic negativity of a two-mode Gaussian state.

    Parameters
    ----------
    vm : MechanicalCM
    convention : {"ln2eta", "lneta"}

    Returns
    -------
    EntanglementResult
        ``eta_minus`` is the smaller symplectic eigenvalue of the partial
        transpose; the state is entangled iff it is below 1/2. ``sigma`` and
        ``det_vm`` are the invariants of the closed-form expression.

    Raises
    ------
    UnphysicalCM
        If the invariants or the spectrum rule out a covariance matrix.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    if not isinstance(vm, MechanicalCM):
        vm = MechanicalCM.from_matrix(vm)
    det_a = np.linalg.det(vm.a)
    det_b = np.linalg.det(vm.b)
    det_c = np.linalg.det(vm.c)
    det_vm = float(np.linalg.det(vm.matrix))
    sigma = float(det_a + det_b - 2.0 * det_c)

    disc = sigma * sigma - 4.0 * det_vm
    # tolerances scale with the magnitudes involved (hot states have large determinants)
    scale = max(1.0, sigma * sigma)
    if det_vm < -_NEG_TOL * scale or disc < -_NEG_TOL * scale:
        raise UnphysicalCM(f"det V_m = {det_vm:.3e}, Sigma^2 - 4 det V_m = {disc:.3e}")
    eta = _smallest_symplectic(vm.matrix * _PARTIAL_TRANSPOSE)

    if eta == 0.0:
        e_n = math.inf
    elif convention == "ln2eta":
        e_n = max(0.0, -math.log(2.0 * eta))
    else:
        e_n = max(0.0, -math.log(eta))
    return EntanglementResult(
        eta_minus=eta,
        e_n=e_n,
        entangled=eta < 0.5 - _NEG_TOL,
        sigma=sigma,
        det_vm=det_vm,
    )
