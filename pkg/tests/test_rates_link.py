import math

import pytest

from cavlink.constants import mhz
from cavlink.cqed import CavityRates
from cavlink.errors import ConfigurationError, DomainError
from cavlink.geometry import MirrorProcess
from cavlink.link import canonical_modality, canonical_protocol, evaluate_link, protocol_advantage
from cavlink.protocols import LinkBudget, Protocol
from cavlink.rates import (
    TimingParams,
    UndefinedAdvantageError,
    advantage,
    bin_widths,
    cycle_components,
    cycle_time,
    load_scenarios,
    scenario,
    success_rate,
)

NS = 1e-9
T = TimingParams(t_pi=1000 * NS, t_pump=300 * NS, t_half_prop=10 * NS, t_elec=400 * NS)


@pytest.mark.parametrize("mux,tb,expected_ns", [
    (False, False, 400 + 300 + 10 + 10 + 50),
    (False, True, 400 + 300 + 10 + 10 + 1500 + 100),
    (True, False, 700 + 50),
    (True, True, 700 + 1000 + 100),
])
def test_cycle_time_table(mux, tb, expected_ns):
    t = T.with_overrides(multiplexed=mux, t_shuttle=700 * NS)
    assert cycle_time(t, tb, 50 * NS) == pytest.approx(expected_ns * NS)


def test_single_photon_propagation_doubles():
    comps = cycle_components(T, False, 50 * NS, single_photon=True)
    assert comps["t_tx"] == comps["t_rx"] == pytest.approx(20 * NS)


def test_bin_widths():
    emitter = CavityRates(mhz(50), mhz(50), 0, 0, mhz(10))
    recv = CavityRates(mhz(20), mhz(5), mhz(5), 0, mhz(10))
    w = bin_widths(emitter, recv, T)
    assert w.s_o == pytest.approx(3 / emitter.K)
    assert w.s_dit == pytest.approx(max(w.s_o, 10 * math.pi / recv.g))
    assert w.s_cpf == pytest.approx(max(w.s_o, 10 * math.pi / recv.kappa))
    assert bin_widths(emitter, None, T, "Gamma").s_o == pytest.approx(3 / (2 * emitter.gamma))
    with pytest.raises(DomainError):
        bin_widths(emitter, None, T, "bogus")


def test_rate_and_advantage():
    assert success_rate(0.25, 1e-6) == pytest.approx(2.5e5)
    assert advantage(0.3, 0.2) == pytest.approx(0.5)
    with pytest.raises(UndefinedAdvantageError):
        advantage(0.3, 0.0)


def test_scenarios():
    e1, e2 = scenario("E1"), scenario("E2")
    assert e1.t_pi == pytest.approx(1000 * NS) and not e1.multiplexed
    assert e2.multiplexed and e2.bandwidth_pad and e2.t_shuttle == pytest.approx(1000 * NS)
    assert scenario("reference-1km").t_half_prop == pytest.approx(2500 * NS)
    with pytest.raises(KeyError):
        scenario("E9")


def test_scenario_schema_rejects_unknown_keys(tmp_path):
    p = tmp_path / "s.toml"
    p.write_text('[X]\nt_pi_ns = 1\nt_pump_ns = 1\nt_half_prop_ns = 1\nt_elec_ns = 1\nwarp = 2\n')
    with pytest.raises(ConfigurationError, match="warp"):
        load_scenarios(p)


def test_names():
    assert canonical_modality("tb") == "time-bin"
    assert canonical_protocol("typeII") is Protocol.TYPE_II
    with pytest.raises(DomainError):
        canonical_modality("spin")


def test_type2_link_consistency():
    proc = MirrorProcess.from_ppm(5, 400e-6)
    p = evaluate_link(proc, "tb", "type-II", timing=scenario("E1"))
    assert p.success_prob == pytest.approx(0.5 * p.p1**2)
    assert p.rate == pytest.approx(p.success_prob / p.tau)
    assert p.bin_width == pytest.approx(3 / p.emitter.rates.K)


def test_dit_requires_floor_and_budget_scales():
    proc = MirrorProcess.from_ppm(5, 400e-6)
    with pytest.raises(DomainError):
        evaluate_link(proc, "tb", "DIT")
    full = evaluate_link(proc, "tb", "DIT", f_min=0.999)
    half = evaluate_link(proc, "tb", "DIT", f_min=0.999, budget=LinkBudget(p_det=0.5))
    assert half.success_prob == pytest.approx(0.5 * full.success_prob)
    assert half.fidelity == full.fidelity


def test_infeasible_point_is_nan_not_error():
    p = evaluate_link(MirrorProcess.from_ppm(50_000, 400e-6), "tb", "DIT", f_min=0.9999)
    assert not p.feasible and math.isnan(p.success_prob)
    adv, _, _ = protocol_advantage(MirrorProcess.from_ppm(50_000, 400e-6), "tb", "DIT", f_min=0.9999)
    assert math.isnan(adv)
