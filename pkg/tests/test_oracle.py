import csv
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavlink.constants import mhz
from cavlink.cqed import CavityRates, collection_p1, emission_wavepacket
from cavlink.errors import ConfigurationError, DomainError
from cavlink.oracle import (
    BACKEND,
    IntegrationConfig,
    PulseSpec,
    emission_p_of_s,
    emission_trace,
    fourier_check,
    load_kernels,
    pulse_config,
    scatter_pulse,
    write_waveforms,
)
from cavlink.scattering import Detunings, reflection_coeff

rate = st.floats(1.0, 100.0).map(mhz)


def test_bench_emission(bench_rates):
    r = bench_rates
    assert emission_p_of_s(r, 12 / r.K) == pytest.approx(0.694, abs=1e-3)
    assert emission_p_of_s(r, 12 / r.K) == pytest.approx(collection_p1(r).p1, abs=1e-6)


def test_trivial_emission_limits(bench_rates):
    assert emission_p_of_s(bench_rates.replace(g=0.0), 1e-6) == 0.0
    no_port = bench_rates.replace(kappa_L=0.0, kappa_B=bench_rates.kappa_L)
    assert emission_p_of_s(no_port, 12 / no_port.K) == 0.0


def test_trace_matches_analytic_wavepacket(bench_rates):
    tr = emission_trace(bench_rates, 6 / bench_rates.K)
    phi = emission_wavepacket(bench_rates, tr.t)
    # φ = √(2κ_L)·c_g up to a global phase
    assert np.max(np.abs(np.abs(phi) - np.sqrt(2 * bench_rates.kappa_L) * np.abs(tr.c_g))) < 1e-6 * np.max(np.abs(phi))


def test_step_halving_converges(bench_rates):
    r = bench_rates
    coarse = IntegrationConfig.for_rates(r)
    fine = IntegrationConfig(coarse.dt / 2, coarse.horizon)
    assert abs(emission_p_of_s(r, 12 / r.K, coarse) - emission_p_of_s(r, 12 / r.K, fine)) < 1e-8


def test_policy_violations(bench_rates):
    with pytest.raises(ConfigurationError):
        emission_p_of_s(bench_rates, 1e-7, IntegrationConfig(dt=1e-9, horizon=1e-6))
    with pytest.raises(ConfigurationError):
        IntegrationConfig.for_rates(bench_rates, horizon=1 / bench_rates.K).validate(bench_rates)
    with pytest.raises(ConfigurationError):
        IntegrationConfig(dt=1e-12, horizon=1e-6, method="Euler")


@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernels not built")
def test_backends_agree(bench_rates):
    cy, py = load_kernels("cython"), load_kernels("python")
    r = bench_rates
    a = cy.emission_rk4(r.g, r.kappa, r.gamma, r.kappa_L, 1e-11, 3000)
    b = py.emission_rk4(r.g, r.kappa, r.gamma, r.kappa_L, 1e-11, 3000)
    assert np.allclose(np.asarray(a[0]), np.asarray(b[0]), rtol=0, atol=1e-14)
    drive = np.ascontiguousarray(PulseSpec(mhz(2)).amplitude(np.linspace(-1e-6, 1e-6, 4001)))
    a = cy.scatter_rk4(r.g, r.kappa, r.gamma, r.kappa_L, mhz(1), -mhz(2), 1e-9, drive)
    b = py.scatter_rk4(r.g, r.kappa, r.gamma, r.kappa_L, mhz(1), -mhz(2), 1e-9, drive)
    for x, y in zip(a, b):
        assert np.allclose(np.asarray(x), np.asarray(y), rtol=0, atol=1e-12)


def test_env_var_forces_python_backend():
    env = {**os.environ, "CAVLINK_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", "import cavlink.oracle as o; print(o.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=8, deadline=None)
@given(rate, rate, rate, st.floats(0.0, 1.0))
def test_energy_conservation_without_bad_loss(g, kappa, gamma, frac):
    r = CavityRates(g, kappa * max(frac, 0.05), kappa * (1 - max(frac, 0.05)), 0.0, gamma)
    res = scatter_pulse(r, PulseSpec(0.2 * r.kappa))
    assert abs(res.energy_balance) <= 1e-3
    assert res.input_energy == pytest.approx(1.0, abs=1e-9)


def test_bad_loss_channel_accounted():
    r = CavityRates(mhz(20), mhz(10), mhz(5), mhz(5), mhz(3))
    res = scatter_pulse(r, PulseSpec(0.1 * r.kappa))
    assert res.cavity_loss > 0.01
    assert abs(res.energy_balance) < 1e-6


@pytest.mark.parametrize("case,det", [
    (CavityRates(mhz(20), mhz(10), 0, 0, mhz(10)), Detunings()),
    (CavityRates(mhz(50), mhz(30), mhz(30), mhz(5), mhz(3)), Detunings(mhz(3), -mhz(2))),
    (CavityRates(0.0, mhz(10), mhz(2), 0, mhz(10)), Detunings(0.0, mhz(4))),
])
def test_fourier_extraction_matches_coefficients(case, det):
    fc = fourier_check(case, PulseSpec(0.05 * case.kappa), detunings=det)
    assert fc.max_deviation <= 1e-2
    assert fc.max_deviation <= 1e-6  # the integrator is far tighter than the acceptance bound


def test_narrowband_reflection_overlap_and_phase():
    # single-sided, strongly over-coupled empty cavity: reflected pulse ≈ −input
    r = CavityRates(0.0, mhz(20), 0.0, 0.0, mhz(5))
    res = scatter_pulse(r, PulseSpec(0.01 * r.kappa))
    assert abs(abs(res.phase) - np.pi) < 1e-3
    assert res.overlap > 0.999
    assert res.reflected_energy == pytest.approx(1.0, abs=1e-6)
    assert reflection_coeff(r) == pytest.approx(-1.0)


def test_insufficient_spectral_support():
    r = CavityRates(mhz(5), mhz(10), 0, 0, mhz(3))
    with pytest.raises(DomainError):
        fourier_check(r, PulseSpec(0.05 * r.kappa), band=10.0)


def test_horizon_must_cover_pulse():
    r = CavityRates(mhz(5), mhz(10), 0, 0, mhz(3))
    p = PulseSpec(0.05 * r.kappa)
    short = IntegrationConfig(pulse_config(r, p).dt, 1.0 * p.half_duration)
    with pytest.raises(ConfigurationError):
        scatter_pulse(r, p, short)


def test_waveform_dump(tmp_path):
    r = CavityRates(mhz(5), mhz(10), 0, 0, mhz(3))
    res = scatter_pulse(r, PulseSpec(0.2 * r.kappa))
    path = tmp_path / "w.csv"
    write_waveforms(res, path)
    rows = list(csv.reader(path.open()))
    assert rows[0][:3] == ["t_s", "in_re", "in_im"]
    assert len(rows) == len(res.t) + 1
    assert float(rows[1][3]) == pytest.approx(res.a_out_L[0].real)
