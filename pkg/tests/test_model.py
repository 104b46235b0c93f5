import math

import pytest
from hypothesis import given, strategies as st

from optomech import InvalidParam, PhysicalParams, thermal_occupancy, validate
from optomech.model import DetuningMode
from scipy import constants


def test_reference_parameters_validate(ref):
    assert validate(ref) is ref


@pytest.mark.parametrize("field, value", [
    ("kappa", 0.0), ("kappa", -0.01), ("gamma_m", -1.0), ("gamma_m", 0.0),
    ("g", -1e-4), ("lambda_hop", -1.0), ("drive_E", -5.0), ("opa_gain", -0.1),
    ("n_a", -1.0), ("n_m", -0.5), ("kappa", math.nan), ("drive_E", math.inf),
])
def test_invalid_values_raise(ref, field, value):
    with pytest.raises(InvalidParam) as info:
        validate(ref.replace(**{field: value}))
    assert info.value.name == field
    assert info.value.value is value or math.isnan(info.value.value)


def test_every_violation_is_reported(ref):
    with pytest.raises(InvalidParam) as info:
        validate(ref.replace(kappa=0.0, gamma_m=-1.0, n_m=-2.0))
    names = [v[0] for v in info.value.violations]
    assert names == ["kappa", "gamma_m", "n_m"]


def test_detuning_exclusivity(ref):
    both = PhysicalParams(**{**ref.as_dict(), "delta0": 1.0})
    neither = PhysicalParams(**{**ref.as_dict(), "delta_eff": None})
    for p in (both, neither):
        with pytest.raises(InvalidParam):
            validate(p)


def test_replace_switches_detuning_mode(ref):
    bare = ref.replace(delta0=2.0)
    assert bare.delta_eff is None and bare.detuning_mode is DetuningMode.BARE
    assert bare.replace(delta_eff=1.0).detuning_mode is DetuningMode.EFFECTIVE


def test_phase_reduced_mod_two_pi(ref):
    p = ref.replace(opa_phase=2 * math.pi + 0.25)
    assert p.opa_phase == pytest.approx(0.25, abs=1e-15)
    assert ref.replace(opa_phase=-math.pi / 2).opa_phase == pytest.approx(1.5 * math.pi)
    assert ref.replace(opa_phase=2 * math.pi).opa_phase == 0.0


@given(kappa=st.floats(1e-6, 1e3), gamma=st.floats(1e-6, 1e3), gain=st.floats(0, 10),
       phase=st.floats(-20, 20), n=st.floats(0, 1e4))
def test_validate_idempotent(kappa, gamma, gain, phase, n):
    p = PhysicalParams(kappa=kappa, gamma_m=gamma, g=1e-4, lambda_hop=1.0, drive_E=1.0,
                       opa_gain=gain, opa_phase=phase, delta_eff=0.0, n_m=n)
    once = validate(p)
    assert validate(once) == once == p
    assert 0.0 <= p.opa_phase < 2 * math.pi


class TestThermalOccupancy:
    def test_zero_temperature(self):
        assert thermal_occupancy(1.0, 0.0) == 0.0
        assert thermal_occupancy(2 * math.pi * 5e9, 0.0) == 0.0

    def test_ln2_gives_one(self):
        temp = 0.05
        freq = math.log(2.0) * constants.k * temp / constants.hbar
        assert thermal_occupancy(freq, temp) == pytest.approx(1.0, rel=1e-12)

    def test_megahertz_millikelvin(self):
        # mpmath, 40 digits, exact SI h and k_B
        expected = 20.34061833903645059
        assert thermal_occupancy(2 * math.pi * 1e6, 1e-3) == pytest.approx(expected, rel=1e-12)

    def test_deep_quantum_limit_underflows_to_zero(self):
        assert thermal_occupancy(2 * math.pi * 1e15, 1e-3) == 0.0

    @pytest.mark.parametrize("freq, temp", [(0.0, 1.0), (-1.0, 1.0), (1.0, -1e-3)])
    def test_bad_arguments(self, freq, temp):
        with pytest.raises(InvalidParam):
            thermal_occupancy(freq, temp)

    @given(st.floats(1e3, 1e12), st.floats(1e-4, 10.0), st.floats(1.01, 3.0))
    def test_monotone(self, freq, temp, factor):
        assert thermal_occupancy(freq, temp * factor) >= thermal_occupancy(freq, temp)
        assert thermal_occupancy(freq * factor, temp) <= thermal_occupancy(freq, temp)
