"""Time-domain single-excitation integration of the atom–cavity system.

Two problems are integrated with a fixed-step fourth-order Runge–Kutta scheme:

* **emission** from |e,0⟩: ċ_e = −γc_e − igc_g, ċ_g = −κc_g − igc_e, with the
  collected probability P(s) = 2κ_L∫₀ˢ|c_g|²dt accumulated alongside;
* **scattering** of a single-photon pulse a_in(t) incident on the collected port:
  ȧ = −(iΔ_c+κ)a − igσ + √(2κ_L)a_in,  σ̇ = −(iΔ_a+γ)σ − iga,
  with outputs a_out,L = a_in − √(2κ_L)a and a_out,R = √(2κ_R)a.

Fields carry an e^{+iνt} dependence for a component detuned by ν from the
frame, so the spectral transform ã(ν) = ∫a(t)e^{−iνt}dt of the outputs divided
by that of the input reproduces the analytic r and t at detunings
(Δ_a + ν, Δ_c + ν).

Every integration validates an explicit step policy, dt·max(rates) ≤ 0.02,
and a horizon of at least 10/K.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from ..cqed import CavityRates
from ..errors import ConfigurationError, DomainError
from ..scattering import Detunings, reflection_coeff, transmission_coeff
from . import _backend

__all__ = [
    "STEP_POLICY",
    "IntegrationConfig",
    "PulseSpec",
    "EmissionTrace",
    "ScatterResult",
    "FourierCheck",
    "emission_trace",
    "emission_p_of_s",
    "scatter_waveform",
    "scatter_pulse",
    "fourier_check",
    "write_waveforms",
]

#: Maximum allowed dt × (fastest rate in the problem).
STEP_POLICY = 0.02


def _kernels(backend):
    return _backend.kernels if backend is None else _backend.load_kernels(backend)


def _rate_scale(rates: CavityRates, detunings: Detunings = Detunings(), extra: float = 0.0) -> float:
    return max(rates.g, rates.kappa, rates.gamma, abs(detunings.delta_a), abs(detunings.delta_c), extra)


def _ring_down_rate(rates: CavityRates, detunings: Detunings = Detunings()) -> float:
    """Slowest decay rate of the driven linear system (the smallest Re of its eigenvalues)."""
    m = np.array([[1j * detunings.delta_c + rates.kappa, 1j * rates.g],
                  [1j * rates.g, 1j * detunings.delta_a + rates.gamma]])
    if rates.g == 0:
        return rates.kappa
    return float(np.min(np.linalg.eigvals(m).real))


@dataclass(frozen=True)
class IntegrationConfig:
    """Fixed-step integration settings.

    Attributes:
        dt: Step size in s.
        horizon: Total integration time in s.
        method: Integration scheme (only ``"RK4"``).
        tolerance: Acceptance threshold used by comparisons against analytic results.
    """

    dt: float
    horizon: float
    method: str = "RK4"
    tolerance: float = 1e-3

    def __post_init__(self):
        if self.method != "RK4":
            raise ConfigurationError(f"unsupported method {self.method!r}")
        if not (self.dt > 0 and self.horizon > 0):
            raise ConfigurationError("dt and horizon must be positive")

    def validate(self, rates: CavityRates, detunings: Detunings = Detunings(), extra_rate: float = 0.0):
        """Raise :class:`ConfigurationError` if the step policy or horizon rule is violated."""
        scale = _rate_scale(rates, detunings, extra_rate)
        if self.dt * scale > STEP_POLICY * (1 + 1e-12):
            raise ConfigurationError(
                f"step policy violated: dt·max rate = {self.dt * scale:.4g} > {STEP_POLICY}")
        if rates.K > 0 and self.horizon < 10.0 / rates.K * (1 - 1e-12):
            raise ConfigurationError(f"horizon {self.horizon:.4g} s shorter than 10/K = {10 / rates.K:.4g} s")

    @classmethod
    def for_rates(cls, rates: CavityRates, horizon: float | None = None, detunings: Detunings = Detunings(),
                  extra_rate: float = 0.0, step_fraction: float = STEP_POLICY, tolerance: float = 1e-3):
        """Largest policy-compliant step for ``rates``; horizon defaults to 12/K."""
        scale = _rate_scale(rates, detunings, extra_rate)
        if scale <= 0:
            raise ConfigurationError("all rates vanish; nothing to integrate")
        if horizon is None:
            horizon = 12.0 / rates.K
        return cls(dt=min(step_fraction, STEP_POLICY) / scale, horizon=horizon, tolerance=tolerance)


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian single-photon pulse with unit energy.

    The intensity spectrum has standard deviation ``sigma_omega`` (rad/s) about
    ``center_detuning`` (rad/s, relative to the integration frame).
    """

    sigma_omega: float
    center_detuning: float = 0.0
    shape: str = "gaussian"

    def __post_init__(self):
        if not self.sigma_omega > 0:
            raise DomainError("sigma_omega must be positive")
        if self.shape != "gaussian":
            raise DomainError(f"unsupported pulse shape {self.shape!r}")

    def amplitude(self, t):
        """Temporal amplitude centred on t = 0, normalized so ∫|a|²dt = 1."""
        s = self.sigma_omega
        t = np.asarray(t, dtype=float)
        return (2.0 * s * s / math.pi) ** 0.25 * np.exp(-(s * t) ** 2 + 1j * self.center_detuning * t)

    @property
    def half_duration(self) -> float:
        """Half-width of the time window holding the pulse to ~1e-11 in amplitude."""
        return 5.0 / self.sigma_omega

    def spectrum(self, nu):
        """Analytic spectral amplitude ∫a(t)e^{−iνt}dt."""
        s = self.sigma_omega
        d = np.asarray(nu, dtype=float) - self.center_detuning
        return (2.0 * s * s / math.pi) ** 0.25 * math.sqrt(math.pi) / s * np.exp(-d * d / (4.0 * s * s))


# ---------------------------------------------------------------------------
# emission


@dataclass(frozen=True)
class EmissionTrace:
    t: np.ndarray
    p: np.ndarray
    c_g: np.ndarray


def _steps(span: float, dt: float) -> tuple[int, float]:
    n = max(1, math.ceil(span / dt - 1e-9))
    return n, span / n


def emission_trace(rates: CavityRates, s: float, cfg: IntegrationConfig | None = None,
                   backend: str | None = None) -> EmissionTrace:
    """Cumulative collected probability P(t) and cavity amplitude on [0, s]."""
    if s <= 0:
        raise DomainError("integration window must be positive")
    if cfg is None:
        cfg = IntegrationConfig.for_rates(rates, horizon=max(s, 10.0 / rates.K))
    cfg.validate(rates)
    n, dt = _steps(s, cfg.dt)
    p, cg = _kernels(backend).emission_rk4(rates.g, rates.kappa, rates.gamma, rates.kappa_L, dt, n)
    return EmissionTrace(np.arange(n + 1) * dt, np.asarray(p), np.asarray(cg))


def emission_p_of_s(rates: CavityRates, s: float, cfg: IntegrationConfig | None = None,
                    backend: str | None = None) -> float:
    """Probability that the photon has left the collected port by time ``s``."""
    return float(emission_trace(rates, s, cfg, backend).p[-1])


# ---------------------------------------------------------------------------
# scattering


@dataclass(frozen=True)
class ScatterResult:
    """Outputs of a pulse-scattering integration (energies normalized to the input)."""

    t: np.ndarray
    a_in: np.ndarray
    a_out_L: np.ndarray
    a_out_R: np.ndarray
    input_energy: float
    reflected_energy: float
    transmitted_energy: float
    atom_loss: float
    cavity_loss: float
    residual: float
    overlap: float
    phase: float

    @property
    def fidelity_to_flat_phase(self) -> float:
        """Normalized overlap of the reflected waveform with the phase-shifted input."""
        return self.overlap

    @property
    def energy_balance(self) -> float:
        """Input energy minus everything accounted for (≈ 0)."""
        return self.input_energy - (self.reflected_energy + self.transmitted_energy
                                    + self.atom_loss + self.cavity_loss + self.residual)


def scatter_waveform(rates: CavityRates, a_in: Callable, t_start: float, cfg: IntegrationConfig,
                     detunings: Detunings = Detunings(), extra_rate: float = 0.0,
                     backend: str | None = None) -> ScatterResult:
    """Scatter an arbitrary input waveform ``a_in(t)`` (t in s, starting at ``t_start``)."""
    cfg.validate(rates, detunings, extra_rate)
    n, dt = _steps(cfg.horizon, cfg.dt)
    t_half = t_start + 0.5 * dt * np.arange(2 * n + 1)
    drive = np.ascontiguousarray(np.asarray(a_in(t_half), dtype=np.complex128))
    a, s = _kernels(backend).scatter_rk4(rates.g, rates.kappa, rates.gamma, rates.kappa_L,
                                         detunings.delta_c, detunings.delta_a, dt, drive)
    a, s = np.asarray(a), np.asarray(s)
    t = t_half[::2]
    ain = drive[::2]
    out_l = ain - math.sqrt(2.0 * rates.kappa_L) * a
    out_r = math.sqrt(2.0 * rates.kappa_R) * a
    e_in = trapezoid(np.abs(ain) ** 2, t)
    e_r = trapezoid(np.abs(out_l) ** 2, t)
    inner = trapezoid(np.conj(ain) * out_l, t)
    overlap = abs(inner) / math.sqrt(e_in * e_r) if e_r > 0 else 0.0
    return ScatterResult(
        t=t, a_in=ain, a_out_L=out_l, a_out_R=out_r,
        input_energy=float(e_in),
        reflected_energy=float(e_r),
        transmitted_energy=float(trapezoid(np.abs(out_r) ** 2, t)),
        atom_loss=float(2.0 * rates.gamma * trapezoid(np.abs(s) ** 2, t)),
        cavity_loss=float(2.0 * rates.kappa_B * trapezoid(np.abs(a) ** 2, t)),
        residual=float(abs(a[-1]) ** 2 + abs(s[-1]) ** 2),
        overlap=float(min(1.0, overlap)),
        phase=float(np.angle(inner)),
    )


def pulse_config(rates: CavityRates, pulse: PulseSpec, detunings: Detunings = Detunings(),
                 ring_down_lifetimes: float = 20.0, tolerance: float = 1e-2) -> IntegrationConfig:
    """Policy-compliant config covering the pulse plus ring-down."""
    extra = abs(pulse.center_detuning) + 4.0 * pulse.sigma_omega
    decay = max(_ring_down_rate(rates, detunings), 1e-3 * max(rates.kappa, rates.gamma))
    horizon = 2.0 * pulse.half_duration + max(ring_down_lifetimes / decay, 10.0 / rates.K)
    return IntegrationConfig.for_rates(rates, horizon=horizon, detunings=detunings, extra_rate=extra,
                                       tolerance=tolerance)


def scatter_pulse(rates: CavityRates, pulse: PulseSpec, cfg: IntegrationConfig | None = None,
                  detunings: Detunings = Detunings(), backend: str | None = None) -> ScatterResult:
    """Scatter a Gaussian pulse centred at t = 0 off the collected port."""
    if cfg is None:
        cfg = pulse_config(rates, pulse, detunings)
    if cfg.horizon < 2.0 * pulse.half_duration:
        raise ConfigurationError("horizon does not cover the pulse")
    extra = abs(pulse.center_detuning) + 4.0 * pulse.sigma_omega
    return scatter_waveform(rates, pulse.amplitude, -pulse.half_duration, cfg, detunings, extra, backend)


@dataclass(frozen=True)
class FourierCheck:
    """Empirical versus analytic response over a pulse's spectral band."""

    nu: np.ndarray
    r_hat: np.ndarray
    t_hat: np.ndarray
    r_model: np.ndarray
    t_model: np.ndarray

    @property
    def max_dev_r(self) -> float:
        return float(np.max(np.abs(self.r_hat - self.r_model)))

    @property
    def max_dev_t(self) -> float:
        return float(np.max(np.abs(self.t_hat - self.t_model)))

    @property
    def max_deviation(self) -> float:
        return max(self.max_dev_r, self.max_dev_t)


def _spectral(values, t, nu, stride):
    ts, vs = t[::stride], values[::stride]
    if ts[-1] != t[-1]:
        ts, vs = np.append(ts, t[-1]), np.append(vs, values[-1])
    return np.array([trapezoid(vs * np.exp(-1j * f * ts), ts) for f in nu])


def fourier_check(rates: CavityRates, pulse: PulseSpec, cfg: IntegrationConfig | None = None,
                  detunings: Detunings = Detunings(), n_freq: int = 41, band: float = 2.0,
                  backend: str | None = None, result: ScatterResult | None = None) -> FourierCheck:
    """Compare Fourier-extracted r̂(ν), t̂(ν) with the analytic coefficients.

    The band is |ν − ν₀| ≤ ``band``·σ_ω around the pulse centre.

    Raises:
        DomainError: if the input spectrum on the band is too weak to divide by.
    """
    if result is None:
        result = scatter_pulse(rates, pulse, cfg, detunings, backend)
    nu = pulse.center_detuning + band * pulse.sigma_omega * np.linspace(-1.0, 1.0, n_freq)
    t = result.t
    dt = t[1] - t[0]
    fastest = float(np.max(np.abs(nu))) + pulse.sigma_omega
    stride = max(1, int(0.05 / (dt * fastest)))
    a_in_hat = _spectral(result.a_in, t, nu, stride)
    peak = np.max(np.abs(pulse.spectrum(nu)))
    if np.min(np.abs(a_in_hat)) < 1e-3 * peak:
        raise DomainError("insufficient spectral support of the input over the requested band")
    r_hat = _spectral(result.a_out_L, t, nu, stride) / a_in_hat
    t_hat = _spectral(result.a_out_R, t, nu, stride) / a_in_hat
    shifted = Detunings(delta_a=detunings.delta_a + nu, delta_c=detunings.delta_c + nu)
    r_model = np.asarray(reflection_coeff(rates, shifted))
    t_model = np.asarray(transmission_coeff(rates, shifted))
    return FourierCheck(nu, r_hat, t_hat, r_model, t_model)


def write_waveforms(result: ScatterResult, path) -> None:
    """Dump input, reflected and transmitted waveforms as CSV (t, Re, Im per port)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["t_s", "in_re", "in_im", "reflected_re", "reflected_im", "transmitted_re", "transmitted_im"])
        for t, a, r, tr in zip(result.t.tolist(), result.a_in.tolist(), result.a_out_L.tolist(),
                               result.a_out_R.tolist()):
            w.writerow([repr(t), repr(a.real), repr(a.imag), repr(r.real), repr(r.imag),
                        repr(tr.real), repr(tr.imag)])
