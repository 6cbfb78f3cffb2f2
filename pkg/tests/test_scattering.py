import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavlink.constants import mhz
from cavlink.cqed import CavityRates
from cavlink.errors import DomainError, SingularityError
from cavlink.scattering import (
    Detunings,
    UnbalancedCavityWarning,
    apply_mode_mismatch,
    cpf_reflection,
    dit_transmission,
    mixed_reflectance,
    reflection_coeff,
    scatter_coeffs,
    transmission_coeff,
)

rate = st.floats(0.1, 100.0).map(mhz)
det = st.floats(-200.0, 200.0).map(mhz)


def _steady_state(r: CavityRates, d: Detunings):
    """Solve the driven steady state of the linear amplitude equations with numpy."""
    m = np.array([[1j * d.delta_c + r.kappa, 1j * r.g], [1j * r.g, 1j * d.delta_a + r.gamma]])
    a, _ = np.linalg.solve(m, np.array([math.sqrt(2 * r.kappa_L), 0.0]))
    return 1 - math.sqrt(2 * r.kappa_L) * a, math.sqrt(2 * r.kappa_R) * a


@settings(max_examples=80, deadline=None)
@given(rate, rate, rate, rate, rate, det, det)
def test_coefficients_match_linear_solve(g, kl, kr, kb, gm, da, dc):
    r = CavityRates(g, kl, kr, kb, gm)
    d = Detunings(da, dc)
    ref_r, ref_t = _steady_state(r, d)
    assert reflection_coeff(r, d) == pytest.approx(ref_r, abs=1e-10)
    assert transmission_coeff(r, d) == pytest.approx(ref_t, abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(rate, rate, rate, rate, rate, det)
def test_passivity(g, kl, kr, kb, gm, d):
    c = scatter_coeffs(CavityRates(g, kl, kr, kb, gm), Detunings(d, d))
    assert abs(c.r) ** 2 + abs(c.t) ** 2 <= 1 + 1e-12


def test_lossless_empty_cavity_conserves_energy():
    r = CavityRates(0.0, mhz(3), mhz(5), 0.0, mhz(1))
    for d in np.linspace(-50, 50, 11):
        c = scatter_coeffs(r, Detunings(0.0, mhz(d)))
        assert abs(c.r) ** 2 + abs(c.t) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_vectorized_detunings():
    r = CavityRates(mhz(10), mhz(5), mhz(5), 0, mhz(3))
    ds = mhz(np.linspace(-20, 20, 7))
    vec = reflection_coeff(r, Detunings(ds, ds))
    for d, v in zip(ds, vec):
        assert v == pytest.approx(reflection_coeff(r, Detunings(d, d)))


def test_singularity():
    with pytest.raises(SingularityError):
        reflection_coeff(CavityRates(0.0, 0.0, 0.0, 0.0, 1.0), Detunings())


def test_resonant_dit_and_cpf_forms():
    r = CavityRates(mhz(20), mhz(5), mhz(5), mhz(1), mhz(10))
    assert dit_transmission(r, True) == pytest.approx(transmission_coeff(r))
    assert dit_transmission(r, False) == pytest.approx(transmission_coeff(r.replace(g=0.0)))
    one = CavityRates(mhz(20), mhz(10), 0, mhz(1), mhz(10))
    assert cpf_reflection(one, True) == pytest.approx(reflection_coeff(one))
    assert cpf_reflection(one, False) == pytest.approx(reflection_coeff(one.replace(g=0.0)))


def test_unbalanced_warning():
    with pytest.warns(UnbalancedCavityWarning):
        dit_transmission(CavityRates(1.0, 2.0, 1.0, 0, 1.0), True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dit_transmission(CavityRates(1.0, 1.0, 1.0, 0, 1.0), True)


@settings(max_examples=40, deadline=None)
@given(rate, rate, st.floats(0.5001, 1.0), rate)
def test_exact_pi_phase_for_overcoupled_cavity(g, kappa, frac, gm):
    # 2κ_L > κ: the empty cavity reflects with phase π
    r = CavityRates(g, kappa * frac, 0.0, kappa * (1 - frac), gm)
    r_u = cpf_reflection(r, False)
    assert r_u.real < 0 and r_u.imag == 0.0
    assert abs(np.angle(r_u)) == pytest.approx(math.pi)


def test_mode_mismatch_and_mixture():
    c = scatter_coeffs(CavityRates(mhz(5), mhz(5), mhz(5), 0, mhz(3)))
    r2, t2 = apply_mode_mismatch(c, 0.7)
    assert r2 == pytest.approx(0.3 + 0.7 * abs(c.r) ** 2)
    assert t2 == pytest.approx(0.7 * abs(c.t) ** 2)
    with pytest.raises(DomainError):
        apply_mode_mismatch(c, 1.5)
    assert mixed_reflectance(-1.0, 1.0, 0.0) == -1.0
    assert mixed_reflectance(-1.0, math.sqrt(0.5), math.sqrt(0.5)) == pytest.approx(0.0)
    with pytest.raises(DomainError):
        mixed_reflectance(-1.0, 0.5, 0.5)
