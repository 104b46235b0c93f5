"""
Asymptotic stability of a real drift matrix.

The verdict comes from the eigenvalue real parts. A Routh-Hurwitz array built
on the characteristic polynomial is evaluated alongside as an independent
cross-check; disagreement is recorded, never acted upon.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, RouthDegenerate

__all__ = [
    "EPS_STAB",
    "StabilityReport",
    "eigenvalues",
    "characteristic_polynomial",
    "routh_array",
    "routh_hurwitz_stable",
    "is_stable",
]

#: margins within this distance of zero count as marginal, hence unstable
EPS_STAB = 1e-9

ROUTH_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    margin: float
    eigenvalues: np.ndarray
    routh_stable: bool | None = None  # None when the array degenerated
    routh_degenerate: bool = False

    @property
    def marginal(self) -> bool:
        return abs(self.margin) <= EPS_STAB

    @property
    def routh_agrees(self) -> bool | None:
        if self.routh_stable is None:
            return None
        return self.routh_stable == self.stable


def eigenvalues(m) -> np.ndarray:
    """Eigenvalues sorted by descending real part, ties by descending imaginary part."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.lexsort((-ev.imag, -ev.real))
    return ev[order]


def characteristic_polynomial(m) -> np.ndarray:
    """Coefficients [1, c1, ..., cn] of det(sI - m), highest degree first.

    Faddeev-LeVerrier trace recurrence.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    mk = np.zeros_like(m)
    eye = np.eye(n)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[k - 1] * eye)
        coeffs[k] = -np.trace(mk) / k
    return coeffs


def routh_array(coeffs) -> np.ndarray:
    """Routh table of a polynomial given highest-degree-first coefficients.

    Raises RouthDegenerate if a first-column pivot (relative to the size of
    the rows producing it) falls below 1e-12.
    """
    a = np.asarray(coeffs, dtype=float)
    n = len(a) - 1
    width = n // 2 + 1
    table = np.zeros((n + 1, width))
    table[0, : len(a[0::2])] = a[0::2]
    table[1, : len(a[1::2])] = a[1::2]
    for i in range(2, n + 1):
        prev, prev2 = table[i - 1], table[i - 2]
        scale = max(np.max(np.abs(prev)), np.max(np.abs(prev2)))
        if abs(prev[0]) <= ROUTH_PIVOT_TOL * scale:
            raise RouthDegenerate(f"pivot in row {i - 1} vanishes ({prev[0]:.3e})")
        table[i, :-1] = (prev[0] * prev2[1:] - prev2[0] * prev[1:]) / prev[0]
    return table


def routh_hurwitz_stable(m) -> bool:
    """All roots in the open left half-plane iff the first column never changes sign."""
    m = np.asarray(m, dtype=float)
    # positive rescaling leaves root signs alone and keeps coefficients O(1)
    norm = np.max(np.abs(m))
    if norm > 0:
        m = m / norm
    first = routh_array(characteristic_polynomial(m))[:, 0]
    return bool(np.all(first > 0))


def is_stable(m) -> StabilityReport:
    """Stability verdict of a drift matrix with eigenvalue margin and Routh cross-check."""
    ev = eigenvalues(m)
    margin = float(ev.real.max())
    try:
        routh = routh_hurwitz_stable(m)
        degenerate = False
    except RouthDegenerate:
        routh, degenerate = None, True
    return StabilityReport(
        stable=margin < -EPS_STAB,
        margin=margin,
        eigenvalues=ev,
        routh_stable=routh,
        routh_degenerate=degenerate,
    )
