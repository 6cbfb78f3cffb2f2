"""Time-domain oracle: direct integration of the single-excitation dynamics.

The integration kernels are compiled from Cython when available; set the
environment variable ``CAVLINK_PURE_PYTHON=1`` to force the pure-Python
reference kernels.  :data:`BACKEND` names the active backend.
"""
from ._backend import BACKEND, BACKENDS, load_kernels
from .integrate import (
    STEP_POLICY,
    EmissionTrace,
    FourierCheck,
    IntegrationConfig,
    PulseSpec,
    ScatterResult,
    emission_p_of_s,
    emission_trace,
    fourier_check,
    pulse_config,
    scatter_pulse,
    scatter_waveform,
    write_waveforms,
)

__all__ = [
    "BACKEND", "BACKENDS", "load_kernels", "STEP_POLICY", "EmissionTrace", "FourierCheck",
    "IntegrationConfig", "PulseSpec", "ScatterResult", "emission_p_of_s", "emission_trace",
    "fourier_check", "pulse_config", "scatter_pulse", "scatter_waveform", "write_waveforms",
]
