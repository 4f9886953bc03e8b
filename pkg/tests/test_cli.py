import json
import subprocess
import sys

import pytest

from bqcalc.cli import build_algebra, main
from bqcalc.pbw import parse_element
from bqcalc.scalars import INFINITY


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_build_algebra_parsing():
    A = build_algebra("zeta:4", "0,0,1")
    assert A.ord_q == 4 and A.d == 2
    B = build_algebra("generic", "1")
    assert B.ord_q == INFINITY and B.d == 0


def test_zero_q_is_a_usage_error(capsys):
    code, out, err = run(capsys, "center", "--q", "0")
    assert code == 2 and "nonzero" in err


def test_mul_json(capsys):
    code, rep = run_json(capsys, "mul", "w", "u*u", "--q", "generic", "--f", "0,0,1")
    assert code == 0 and rep["status"] == "ok" and rep["schema_version"] == "1"
    A = build_algebra("generic", "0,0,1")
    u, v, w = A.generators()
    assert parse_element(A, rep["product"]) == w * u * u


def test_emitted_elements_reparse(capsys):
    code, rep = run_json(capsys, "center", "--q", "zeta:2", "--f", "0,0,1", "--max-deg", "3")
    A = build_algebra("zeta:2", "0,0,1")
    assert code == 0
    for s in rep["basis"]:
        x = parse_element(A, s)
        assert str(x) == s


def test_json_is_deterministic(capsys):
    args = ("check-all", "--q", "generic", "--f", "0,0,1", "--seed", "4")
    _, first, _ = run(capsys, *args, "--json")
    _, second, _ = run(capsys, *args, "--json")
    assert first == second


def test_omega_denominator_exit_code(capsys):
    code, out, err = run(capsys, "omega", "--q", "zeta:3", "--f", "0,0,1")
    assert code == 2 and "DenominatorVanishes" in err


def test_ozone_identity_only(capsys):
    code, rep = run_json(capsys, "ozone", "--q", "zeta:4", "--f", "0,0,1")
    assert code == 0 and rep["survivor_is_identity"] == [True]


def test_check_all_reports_first_failing_identity(capsys):
    code, rep = run_json(capsys, "check-all", "--q", "zeta:5", "--f", "0,0,1")
    assert code == 3 and rep["status"] == "verification_failed"
    assert "wpow_times_u" in rep["error"]


def test_identities_pass_without_wpow(capsys):
    code, rep = run_json(capsys, "identities", "--q", "zeta:5", "--f", "1,1")
    assert code == 0 and rep["passed"]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("q = zeta:4\nf = 0,0,1\n")
    code, rep = run_json(capsys, "omega", "--config", str(cfg))
    assert code == 0 and rep["algebra"]["ord_q"] == 4
    code, rep = run_json(capsys, "omega", "--config", str(cfg), "--q", "generic")
    assert code == 0 and rep["algebra"]["field"] == "Q(q)"
    cfg.write_text("q = zeta:4\ncolour = blue\n")
    code, out, err = run(capsys, "omega", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_trace_and_molien(capsys):
    code, rep = run_json(capsys, "trace", "--q", "generic", "--f", "0,0,1", "--a", "-1", "--xi", "1", "--order", "4")
    assert code == 0 and rep["coeffs"] == ["1", "-3", "6", "-10", "15"]
    gen = json.dumps({"a": "-1", "xi": "1"})
    code, rep = run_json(capsys, "molien", "--q", "generic", "--f", "0,0,1", "--gen", gen, "--order", "4")
    assert code == 0 and rep["molien"]["coeffs"] == ["1", "0", "6", "0", "15"]


def test_hdet_and_koszul(capsys):
    code, rep = run_json(capsys, "hdet", "--q", "zeta:3", "--f", "0,0,1", "--a", "-1", "--xi", "z")
    assert code == 0 and rep["hdet"] == "-1"
    code, rep = run_json(capsys, "koszul", "--q", "zeta:3", "--f", "0,0,1")
    assert code == 0 and rep["dims"] == [1, 3, 3, 1, 0]


def test_auto_order(capsys):
    code, rep = run_json(capsys, "auto", "order", "--q", "zeta:3", "--f", "0,0,1", "--a", "-1", "--xi", "z")
    assert code == 0 and rep["order"] == 6


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bqcalc", "potential", "show", "--q", "generic", "--f", "0,0,1",
                        "--json"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["status"] == "ok"


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
