"""
Full pipeline evaluation on single points and on 1-D/2-D parameter grids.

Unstable grid cells are ordinary data: they carry the stability margin and
no entanglement values.
"""

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import build_diffusion, build_drift
from .entanglement import log_negativity, reduce_mechanical
from .errors import InvalidParam, OptomechError, ResidualTooLarge
from .lyapunov import lyapunov_residual, residual_tolerance, solve_lyapunov
from .model import PhysicalParams, validate
from .stability import is_stable
from .steady_state import steady_state

__all__ = ["SWEEPABLE", "AxisSpec", "PointRecord", "SweepResult", "evaluate_point", "sweep"]

SWEEPABLE = (
    "opa_gain", "opa_phase", "drive_E", "lambda_hop", "delta_eff",
    "n_m", "n_a", "kappa", "gamma_m", "g",
)


@dataclass(frozen=True)
class AxisSpec:
    """Linearly spaced axis over one parameter, endpoints included."""

    param_name: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.param_name not in SWEEPABLE:
            raise InvalidParam("param_name", self.param_name, f"one of {SWEEPABLE}")
        if self.start == self.stop:
            raise InvalidParam("stop", self.stop, "!= start")
        if not (isinstance(self.count, int) and self.count >= 2):
            raise InvalidParam("count", self.count, "integer >= 2")
        if self.spacing != "linear":
            raise InvalidParam("spacing", self.spacing, "'linear'")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class PointRecord:
    stable: bool
    margin: float | None
    eta_minus: float | None = None
    e_n: float | None = None
    a_s_abs: float | None = None
    error: str | None = None


def evaluate_point(params: PhysicalParams, convention: str = "ln2eta") -> PointRecord:
    """Steady state, stability and (when stable) logarithmic negativity at one point.

    Numerical failures are raised; :func:`sweep` converts them to per-cell records.
    """
    validate(params)
    ss = steady_state(params)
    drift = build_drift(params, ss)
    report = is_stable(drift.m)
    a_abs = abs(ss.a_s)
    if not report.stable:
        return PointRecord(stable=False, margin=report.margin, a_s_abs=a_abs)

    diff = build_diffusion(params)
    cm = solve_lyapunov(drift, diff, check_stability=False)
    res = lyapunov_residual(drift, cm, diff)
    if res > residual_tolerance(diff):
        raise ResidualTooLarge(f"Lyapunov residual {res:.3e} exceeds {residual_tolerance(diff):.3e}")
    ent = log_negativity(reduce_mechanical(cm), convention)
    return PointRecord(stable=True, margin=report.margin, eta_minus=ent.eta_minus,
                       e_n=ent.e_n, a_s_abs=a_abs)


def _safe_eval(args):
    params, convention = args
    try:
        return evaluate_point(params, convention)
    except OptomechError as exc:
        return PointRecord(stable=False, margin=None, error=f"{type(exc).__name__}: {exc}")


@dataclass
class SweepResult:
    axes: tuple
    cells: np.ndarray  # object array of PointRecord, shape = axis counts
    base: PhysicalParams
    convention: str = "ln2eta"
    grid_points: list = field(default_factory=list, repr=False)

    @property
    def shape(self):
        return self.cells.shape

    def values(self, i=0) -> np.ndarray:
        return self.axes[i].values

    def field(self, name) -> np.ndarray:
        """Float array of one record field, NaN where absent."""
        out = np.full(self.cells.shape, np.nan)
        for idx, rec in np.ndenumerate(self.cells):
            value = getattr(rec, name)
            if value is not None:
                out[idx] = float(value)
        return out

    @property
    def stable(self) -> np.ndarray:
        return np.vectorize(lambda r: r.stable, otypes=[bool])(self.cells)

    def rows(self):
        """(axis values, record) in row-major order, first axis outermost."""
        for idx in itertools.product(*(range(n) for n in self.cells.shape)):
            coords = tuple(self.axes[k].values[i] for k, i in enumerate(idx))
            yield coords, self.cells[idx]


def _grid(base, axes):
    names = [a.param_name for a in axes]
    points = []
    for combo in itertools.product(*(a.values for a in axes)):
        points.append(base.replace(**{n: float(v) for n, v in zip(names, combo)}))
    return points


def sweep(base: PhysicalParams, axes, workers: int | None = 1,
          convention: str = "ln2eta") -> SweepResult:
    """Evaluate the pipeline on the Cartesian grid spanned by one or two axes.

    Parameters
    ----------
    base : PhysicalParams
        Values of every parameter not swept.
    axes : AxisSpec or sequence of AxisSpec
    workers : int or None
        Worker processes; 1 evaluates serially, None uses every CPU.
    """
    if isinstance(axes, AxisSpec):
        axes = (axes,)
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep takes one or two axes")
    if len({a.param_name for a in axes}) != len(axes):
        raise InvalidParam("axes", [a.param_name for a in axes], "distinct parameters")
    validate(base)
    points = _grid(base, axes)
    jobs = [(p, convention) for p in points]

    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        chunk = max(1, math.ceil(len(jobs) / (4 * workers)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_safe_eval, jobs, chunksize=chunk))
    else:
        records = [_safe_eval(j) for j in jobs]

    cells = np.empty(len(records), dtype=object)
    cells[:] = records
    return SweepResult(axes=axes, cells=cells.reshape(tuple(a.count for a in axes)),
                       base=base, convention=convention, grid_points=points)
