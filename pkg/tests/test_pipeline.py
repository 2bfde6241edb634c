import json

import pytest

from tribpal import cli
from tribpal.pipeline import (
    REFERENCE,
    PipelineConfig,
    parse_int,
    run_full,
    run_initial,
    run_round1,
    run_round2,
    run_round3,
)


@pytest.mark.parametrize("text,value", [("500", 500), ("10**51", 10**51), ("10^110", 10**110), ("1e51", 10**51),
                                        ("1_000", 1000), (7, 7)])
def test_parse_int(text, value):
    assert parse_int(text) == value


def test_parse_int_rejects_fraction():
    with pytest.raises(ValueError):
        parse_int("1.5")


def test_config_defaults_and_validation():
    c = PipelineConfig()
    assert (c.n_low_max, c.precision_digits, c.M_round1, c.C_lll, c.output_format) == (500, 250, 10**51, 10**110, "json")
    for bad in ({"n_low_max": 2}, {"precision_digits": 20}, {"output_format": "xml"}, {"M_round1": 1}):
        with pytest.raises(ValueError):
            PipelineConfig(**bad)
    assert c.replace(n_low_max=None, precision_digits=300).precision_digits == 300
    assert c.to_dict()["M_round1"] == "10^51"


def test_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# settings\nn_low_max = 400\nM_round1 = 10**51  # inline\noutput_format = text\n"
                    "prefer_extension = no\n")
    c = PipelineConfig.from_file(path)
    assert (c.n_low_max, c.M_round1, c.output_format, c.prefer_extension) == (400, 10**51, "text", False)
    path.write_text("[pipeline]\nC_lll = 1e110\n")
    assert PipelineConfig.from_file(path).C_lll == 10**110
    path.write_text("bogus = 1\n")
    with pytest.raises(ValueError):
        PipelineConfig.from_file(path)


def test_toy_rounds(ctx):
    toy = PipelineConfig(M_round1=10**6)
    ell_max, r1 = run_round1(toy, ctx)
    assert ell_max is not None and ell_max <= 20
    initial, _ = run_initial(toy, ctx)
    m_max, _ = run_round2(toy, ell_max, ctx, initial)
    n_max, r3 = run_round3(toy, ell_max, m_max, ctx)
    assert n_max is not None and n_max <= 60
    assert r3.details["worst_case"]["outcome"]["kind"] == "bound"


def test_toy_M_flags_uncovered_range(ctx):
    _, res = run_initial(PipelineConfig(M_round1=10**6), ctx)
    cover = next(c for c in res.checks if c["name"] == "M_exceeds_two_ell_plus_m_bound")
    assert not cover["holds"] and res.notes


def test_round1_defaults(ctx, config):
    ell_max, res = run_round1(config, ctx)
    assert ell_max == REFERENCE["round1_ell"]
    d = res.details
    assert d["legendre_d1_9"]["certificate"]["a_M"] == "44"
    assert d["legendre_d1_9"]["bound"] == "54"
    assert all(c["outcome"]["kind"] == "bound" for c in d["dp_cases"])


def test_default_report(verify_runs):
    code, _, raw, rep = verify_runs[0]
    assert code == 0
    assert rep["verdict"] == "verified"
    assert rep["final_n_bound"] == "226"
    assert [r["name"] for r in rep["rounds"]] == ["initial_bounds", "round1", "round2", "round3"]
    assert [r["bound"] for r in rep["rounds"][1:]] == ["56", "58", "226"]
    r2 = rep["rounds"][2]["details"]
    assert r2["branch_1_0_1"]["legendre"]["bound"] == "54"
    assert r2["cases_beyond_first_convergent"] == "364"
    r3 = rep["rounds"][3]["details"]
    assert r3["worst_case"]["case"] == "1,2,1,58"
    assert r3["cases_beyond_first_convergent"] == "19423"
    assert rep["timestamp"] == ""
    assert raw.decode("utf-8").isascii()


def test_low_range_too_small_is_inconclusive():
    rep = run_full(PipelineConfig(n_low_max=100), timestamp=False)
    assert rep.verdict == "inconclusive"
    assert rep.final_n_bound == 226
    assert any("exceeds the searched range" in n for n in rep.discrepancy_notes)


def test_low_precision_retries():
    rep = run_full(PipelineConfig(precision_digits=30), timestamp=True)
    hist = rep.precision_history
    assert hist[0]["digits"] == "30" and hist[0]["status"].startswith("precision exhausted")
    assert hist[-1]["status"] == "ok" and int(hist[-1]["digits"]) >= 60
    assert rep.verdict == "verified"
    assert rep.timestamp
    text = rep.render("text")
    for lemma in ("Matveev", "Guzman Sanchez-Luca", "Dujella-Petho", "Legendre", "lattice lemma"):
        assert lemma in text
    assert "precision history" in text


def test_cli_search(tmp_path, capsys):
    assert cli.main(["search", "--format", "text"]) == 0
    assert "S_8 = 131" in capsys.readouterr().out
    out = tmp_path / "s.json"
    assert cli.main(["search", "--n-max", "100", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["solutions"][0]["value"] == "131"


def test_cli_bounds(capsys):
    assert cli.main(["bounds", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "n_bound:" in text and "[FAIL] step1_magnitude" in text


def test_cli_errors(tmp_path, capsys):
    assert cli.main(["search", "--precision", "10"]) == 1
    assert cli.main(["search", "--config", str(tmp_path / "missing.cfg")]) == 1
    assert "error:" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        cli.main(["nonsense"])


def test_cli_verify_inconclusive(tmp_path):
    out = tmp_path / "r.txt"
    assert cli.main(["verify", "--n-max", "100", "--format", "text", "--no-timestamp", "-o", str(out)]) == 2
    text = out.read_text()
    assert "verdict: inconclusive" in text
