import math

import numpy as np
import pytest

from optomech import PhysicalParams
from optomech.presets import GAIN_DETUNING_BASE, NOMINAL_COUPLING, PHASE_SCAN_BASE


@pytest.fixture
def ref():
    """Phase-scan reference point (stable, entangled)."""
    return PHASE_SCAN_BASE


@pytest.fixture
def ref_lambda18():
    return GAIN_DETUNING_BASE


@pytest.fixture
def nominal():
    """Reference point with the nominal single-photon coupling."""
    return PHASE_SCAN_BASE.replace(g=NOMINAL_COUPLING)


@pytest.fixture
def damped():
    """Strongly damped point: converges within a few hundred mechanical periods."""
    return PhysicalParams(kappa=1.0, gamma_m=0.3, g=1e-3, lambda_hop=0.5, drive_E=300.0,
                          opa_gain=0.2, opa_phase=math.pi / 2, delta_eff=1.0)


def random_stable_points(n, seed=0):
    """Reproducible stable parameter points scattered around the reference scans."""
    from optomech import build_drift, is_stable, steady_state

    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = PhysicalParams(
            kappa=float(rng.uniform(0.005, 0.5)),
            gamma_m=float(rng.uniform(1e-3, 0.05)),
            g=float(rng.uniform(1e-6, 1e-5)),
            lambda_hop=float(rng.uniform(15.0, 30.0)),
            drive_E=float(rng.uniform(1e6, 2.5e7)),
            opa_gain=float(rng.uniform(0.0, 4.0)),
            opa_phase=float(rng.uniform(0.0, math.pi)),
            delta_eff=float(rng.uniform(-5.0, 6.0)),
            n_m=float(rng.uniform(0.0, 2.0)),
            n_a=float(rng.uniform(0.0, 0.5)),
        )
        try:
            ss = steady_state(p)
        except Exception:
            continue
        if is_stable(build_drift(p, ss).m).stable:
            out.append(p)
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
