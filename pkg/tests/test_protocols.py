import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavlink.constants import C
from cavlink.errors import DomainError, NoHeraldError
from cavlink.protocols import (
    LinkBudget,
    Protocol,
    cpf_fidelity_from_reflections,
    cpf_outcome,
    dit_fidelity_from_cooperativity,
    dit_outcome,
    path_dephasing_fidelity,
    type2_outcome,
)


def _bell_fidelity_dit(t_u, t_c):
    """Fidelity of normalized t_u|Ψ⟩ + t_c|Φ⟩ with |Ψ⟩, built from explicit state vectors."""
    psi = np.array([0, 1, 1, 0]) / math.sqrt(2)
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    state = t_u * psi + t_c * phi
    state = state / np.linalg.norm(state)
    return abs(np.vdot(psi, state)) ** 2


def _bell_fidelity_cpf(r_u, r_c):
    """Phase-flip model built from explicit state vectors.

    The emitter qubit selects which photon mode is cavity-coupled; the other
    mode is reflected promptly (amplitude 1).  After projecting the photon onto
    the diagonal basis, the two-qubit state over (uu, uc, cu, cc) is
    (1, 1, r_u, r_c); the ideal receiver (r_u, r_c) = (−1, 1) gives the target.
    """
    state = np.array([1, 1, r_u, r_c], dtype=complex)
    target = np.array([1, 1, -1, 1], dtype=complex) / 2
    return abs(np.vdot(target, state)) ** 2 / np.vdot(state, state).real


def test_type2():
    out = type2_outcome(0.6, LinkBudget(p_ex=0.9, p_half=0.8, p_det=0.5))
    p = 0.6 * 0.9 * 0.8 * 0.5
    assert out.success_prob == pytest.approx(0.5 * p * p)
    assert out.fidelity == 1.0
    assert type2_outcome(0.6, LinkBudget(), overlap=0.0).fidelity == 0.5
    assert out.protocol is Protocol.TYPE_II


@settings(max_examples=60, deadline=None)
@given(st.one_of(st.just(0.0), st.floats(1e-6, 1.0)), st.one_of(st.just(0.0), st.floats(1e-6, 1.0)))
def test_dit_fidelity_matches_state_vector(t_u, t_c):
    if t_u == t_c == 0:
        with pytest.raises(NoHeraldError):
            dit_outcome(t_u, t_c, 0.5, LinkBudget())
        return
    out = dit_outcome(t_u, t_c, 0.5, LinkBudget())
    assert out.fidelity == pytest.approx(_bell_fidelity_dit(t_u, t_c), abs=1e-12)
    assert out.detection_norm == pytest.approx(t_u**2 + t_c**2)


def test_dit_fidelity_closed_form():
    assert dit_fidelity_from_cooperativity(30.607) == pytest.approx(0.999, abs=1e-6)
    assert dit_fidelity_from_cooperativity(0.0) == 0.5


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.0, 1.0), st.floats(0.01, 1.0))
def test_dit_fidelity_xi_invariant(t_c_frac, xi, p1):
    t_u, t_c = 0.9, 0.9 * t_c_frac
    a = dit_outcome(t_u, t_c, p1, LinkBudget(xi=1.0))
    b = dit_outcome(t_u, t_c, p1, LinkBudget(xi=xi))
    assert a.fidelity == b.fidelity
    assert b.success_prob == pytest.approx(xi * a.success_prob)


@settings(max_examples=60, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1))
def test_cpf_fidelity_matches_state_vector(r_u, r_c):
    assert cpf_fidelity_from_reflections(r_u, r_c) == pytest.approx(_bell_fidelity_cpf(r_u, r_c), abs=1e-12)


def test_cpf_ideal_and_efficiency():
    out = cpf_outcome(-1.0, 1.0, 0.5, LinkBudget())
    assert out.fidelity == 1.0
    assert out.detection_norm == 1.0
    assert out.success_prob == pytest.approx(0.5)
    with pytest.raises(DomainError):
        cpf_outcome(-1.5, 1.0, 0.5, LinkBudget())


def test_path_dephasing():
    assert path_dephasing_fidelity(2 * math.pi * 10e9, 0.0) == 1.0
    big = path_dephasing_fidelity(2 * math.pi * 10e9, 1.0)
    assert big == pytest.approx(0.5, abs=1e-6)
    sigma = 1e-3
    phi = 2 * math.pi * 10e9 * sigma / C
    # Monte-Carlo-free check: average of cos over a Gaussian phase is exp(−σ²/2)
    x = np.linspace(-8, 8, 20001)
    w = np.exp(-x**2 / 2)
    mean_cos = np.sum(w * np.cos(phi * x)) / np.sum(w)
    assert path_dephasing_fidelity(2 * math.pi * 10e9, sigma) == pytest.approx(0.5 * (1 + mean_cos), abs=1e-9)
