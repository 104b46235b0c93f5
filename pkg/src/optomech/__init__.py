"""
Steady-state entanglement of two distant mirrors in photon-hopping-coupled
optomechanical cavities with intracavity parametric amplifiers.

Pipeline: steady state -> drift/diffusion matrices -> stability ->
Lyapunov covariance matrix -> logarithmic negativity, on points or grids.
"""

from .dynamics import (
    DiffusionMatrix,
    DriftMatrix,
    build_diffusion,
    build_drift,
    mean_field_jacobian,
    mean_field_rhs,
    mean_field_trajectory,
)
from .entanglement import EntanglementResult, MechanicalCM, log_negativity, reduce_mechanical
from .errors import *  # noqa: F401,F403
from .lyapunov import CovarianceMatrix, solve_lyapunov, symplectic_eigenvalues
from .model import DetuningMode, PhysicalParams, thermal_occupancy, validate
from .stability import StabilityReport, characteristic_polynomial, eigenvalues, is_stable
from .steady_state import (
    SteadyState,
    steady_state,
    steady_state_given_delta,
    steady_state_given_delta0,
)
from .sweep import AxisSpec, PointRecord, SweepResult, evaluate_point, sweep

__version__ = "0.1.0"
