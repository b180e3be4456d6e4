import json

import pytest
from click.testing import CliRunner

from qracah_krall.cli import main

CANON = {"v": "1/2", "alpha": "1/5", "beta": "1/7", "delta": "1/3", "N": 4, "truncation": "gamma", "A": "1/10", "B": "1/20"}


@pytest.fixture
def cfg(tmp_path):
    def write(doc=CANON, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_eval_degree_zero(cfg):
    res = run("eval", "--config", cfg(), "-n", "0", "-s", "2")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "1"


def test_eval_out_of_range(cfg):
    res = run("eval", "--config", cfg(), "-n", "1", "-s", "5")
    assert res.exit_code == 2
    assert "s out of lattice range 0..4" in res.output


def test_eval_exact_value(cfg):
    from fractions import Fraction

    from qracah_krall import KrallFamily, MassConfig, QRacahFamily, RacahParams

    kf = KrallFamily(QRacahFamily(RacahParams.canonical(4)), MassConfig(Fraction(1, 10), Fraction(1, 20)))
    res = run("eval", "--config", cfg(), "-n", "3", "-s", "1")
    assert Fraction(res.output.splitlines()[0]) == kf.eval(3, 1)


@pytest.mark.parametrize(
    "patch, needle",
    [
        ({"alpha": "0.2"}, "'alpha'"),
        ({"N": 0}, "'N'"),
        ({"truncation": "beta"}, "'truncation'"),
        ({"gamma": "1/3"}, "'gamma' is derived"),
        ({"v": "3/2"}, "inadmissible"),
    ],
)
def test_config_errors(cfg, patch, needle):
    res = run("verify", "sode", "--config", cfg({**CANON, **patch}))
    assert res.exit_code == 2
    assert needle in res.output


def test_config_missing_field(cfg):
    doc = dict(CANON)
    del doc["delta"]
    res = run("table", "--config", cfg(doc))
    assert res.exit_code == 2 and "'delta' is missing" in res.output


def test_config_not_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run("eval", "--config", str(path), "-n", "0", "-s", "0").exit_code == 2


def test_table_csv_and_json(cfg):
    res = run("table", "--config", cfg(), "--nmax", "1")
    lines = res.output.splitlines()
    assert lines[0] == "n,s,x,mass,R"
    assert len(lines) == 1 + 2 * 5
    res = run("table", "--config", cfg(), "--kind", "coefficients", "--format", "json")
    rows = json.loads(res.output)
    assert [r["n"] for r in rows] == ["0", "1", "2", "3", "4"]
    assert rows[0]["d2"] == "23/20"


def test_table_limit_families(cfg):
    doc = {**CANON, "dual": {"gamma": "1/5", "delta": "1/3"}, "qhahn": {"mu": "1/7", "nu": "1/5"}}
    for fam in ("dual", "dual-krall", "qhahn", "qhahn-krall"):
        res = run("table", "--config", cfg(doc), "--family", fam, "--nmax", "0")
        assert res.exit_code == 0, res.output
        assert res.output.splitlines()[1].endswith(",1")


def test_verify_all_canonical_passes(cfg, tmp_path):
    out = tmp_path / "rep.json"
    res = run("verify", "all", "--config", cfg(), "--format", "json", "--out", str(out))
    assert res.exit_code == 0
    assert json.loads(out.read_text())["status"] == "pass"


def test_verify_failure_exit_code(cfg):
    # A = -1 makes kappa_0 vanish; the existence failure exits with status 1
    res = run("verify", "oracle", "--config", cfg({**CANON, "A": "-1", "B": "0"}))
    assert res.exit_code == 1


def test_deterministic(cfg):
    a = run("table", "--config", cfg(), "--family", "krall").output
    b = run("table", "--config", cfg(), "--family", "krall").output
    assert a == b
    a = run("verify", "kernels", "--config", cfg(), "--format", "json").output
    b = run("verify", "kernels", "--config", cfg(), "--format", "json").output
    assert a == b


def test_oracle_export(cfg, tmp_path):
    out = tmp_path / "o.json"
    res = run("oracle", "--config", cfg(), "--nmax", "2", "--out", str(out))
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["coefficients"][0] == ["1"]
    assert len(doc["norms"]) == 3
