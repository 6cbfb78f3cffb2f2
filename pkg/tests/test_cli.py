import hashlib
import json

import pytest

from cavlink.cli import main
from cavlink.sweeps import Axis, parse_override, resolve_config
from cavlink.errors import ConfigurationError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _data_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return lines[0].split(","), [l.split(",") for l in lines[1:]]


def test_metadata_header(capsys):
    code, out, _ = run(capsys, "receiver-curves", "--set", "C.count=2")
    assert code == 0
    head = out.splitlines()[:4]
    assert head[0].startswith("# cavlink 0.1.0 receiver-curves")
    assert head[1].startswith("# config_sha256: ")
    assert head[2].startswith("# units:")
    assert head[3] == "# s_o_convention: K"


def test_receiver_curves_anchor_rows(capsys):
    code, out, _ = run(capsys, "receiver-curves", "--set", "C.values=[0.0, 30.607, 1e9]")
    cols, rows = _data_rows(out)
    table = {float(r[0]): dict(zip(cols, map(float, r))) for r in rows}
    assert table[0.0]["infidelity_DIT"] == pytest.approx(0.5)
    assert table[30.607]["infidelity_DIT"] == pytest.approx(1e-3, abs=1e-6)
    assert table[1e9]["infidelity_DIT"] < 1e-12 and table[1e9]["infidelity_CPF"] < 1e-12


def test_unknown_key_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "advantage", "--set", "R_mm=1")
    assert code == 2 and "R_mm" in err
    cfg = tmp_path / "c.toml"
    cfg.write_text("[rates]\nscenario = 'E1'\nfoo = 1\n")
    code, _, err = run(capsys, "rates", "--config", str(cfg))
    assert code == 2 and "rates.foo" in err
    cfg.write_text("[nonsense]\n")
    assert run(capsys, "rates", "--config", str(cfg))[0] == 2
    cfg.write_text("[rates\n")
    assert run(capsys, "rates", "--config", str(cfg))[0] == 2


def test_type_mismatch_exits_2(capsys):
    assert run(capsys, "advantage", "--set", "F_min=high")[0] == 2
    assert run(capsys, "advantage", "--set", "R_um.count=1")[0] == 2


def test_config_file_and_override_precedence(tmp_path):
    cfg = {"advantage": {"F_min": 0.99, "R_um": {"values": [400.0]}}}
    c = resolve_config("advantage", cfg, ["F_min=0.995"])
    assert c["F_min"] == 0.995 and c["R_um"] == {"values": [400.0]}
    assert c["modality"] == "tb"


def test_axis():
    assert Axis.from_config("x", {"min": 1, "max": 100, "count": 3, "spacing": "log"}).values == \
        pytest.approx((1, 10, 100))
    assert Axis.from_config("x", {"min": 0, "max": 1, "count": 3, "spacing": "linear"}).values == (0, 0.5, 1)
    with pytest.raises(ConfigurationError):
        Axis.from_config("x", {"min": 0, "max": 1, "count": 3, "spacing": "log"})
    assert parse_override("modalities=[\"pol\", \"tb\"]") == ("modalities", ["pol", "tb"])


def _sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


@pytest.mark.parametrize("command,sets", [
    ("advantage", ["R_um.count=3", "loss_bad_ppm.count=4"]),
    ("rates", ["loss_bad_ppm.count=4", 'modalities=["pol","freq","tb"]']),
])
def test_outputs_deterministic_across_jobs(tmp_path, command, sets):
    args = [x for s in sets for x in ("--set", s)]
    paths = []
    for i, jobs in enumerate((1, 3, 1)):
        p = tmp_path / f"{i}.csv"
        assert main([command, *args, "--jobs", str(jobs), "-o", str(p)]) == 0
        paths.append(p)
    assert len({_sha(p) for p in paths}) == 1


def test_infeasible_points_emitted_not_dropped(capsys):
    code, out, _ = run(capsys, "advantage", "--set", "R_um=400", "--set", "loss_bad_ppm=[1, 1e5]",
                       "--set", "F_min=0.9999")
    cols, rows = _data_rows(out)
    assert len(rows) == 2
    rec = [dict(zip(cols, r)) for r in rows]
    assert rec[0]["feasible"] == "true" and rec[1]["feasible"] == "false"
    assert rec[1]["advantage"] == "nan"


def test_oracle_empty_grid_passes(capsys):
    code, out, _ = run(capsys, "oracle", "--set", "n_points=0", "--set", "scatter=[]")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["emission"] == [] and rep["scatter"] == []


def test_oracle_tolerance_failure_exit_3(capsys):
    code, out, err = run(capsys, "oracle", "--set", "n_points=1", "--set", "tolerance_coeff=1e-30",
                         "--set", "scatter_detunings_MHz=[[0.0, 0.0]]")
    assert code == 3 and not json.loads(out)["pass"] and "outside tolerance" in err


def test_optimize_emits_construction_json(capsys):
    code, out, _ = run(capsys, "optimize", "--set", "role=\"cpf-receiver\"", "--set", "loss_bad_ppm=20")
    d = json.loads(out)
    assert code == 0 and d["role"] == "cpf-receiver" and d["feasible"]
    assert 0.99 < d["figures"]["fidelity"]["value"] < 1


def test_transitions_listing(capsys):
    code, out, _ = run(capsys, "transitions")
    cols, rows = _data_rows(out)
    assert code == 0 and len(rows) == 6 and "mu_eff_ea0" in cols


def test_collect_marks_best(capsys):
    code, out, _ = run(capsys, "collect", "--set", "R_mm=[0.4]", "--set", "n_points=20")
    cols, rows = _data_rows(out)
    best = [r for r in rows if dict(zip(cols, r))["is_best"] == "true"]
    assert len(best) == 1
    rec = dict(zip(cols, best[0]))
    assert float(rec["length_um"]) == pytest.approx(float(rec["ell_o_um"]), rel=0.05)
