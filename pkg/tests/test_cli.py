import json

import pytest

from pslcover import cli
from pslcover.exactalg.poly import Poly

CUBIC = Poly.from_ints([0, -3, 0, 1])
ONE = Poly.from_ints([1])


def run_json(capsys, *argv):
    code = cli.run([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_envelope_fields(capsys):
    code, env = run_json(capsys, "rh-genus", "48", "6^5.4^4.2^1", "7^4.4^3.3^2.2^1.1^0", "2^24")
    assert code == cli.EXIT_OK
    assert set(env) == {"tool", "version", "command", "seed", "prec_bits", "inputs", "passed", "result"}
    assert env["tool"] == "pslcover" and env["command"] == "rh-genus"
    assert env["result"]["genus"] == 3


def test_usage_errors(capsys):
    assert cli.run([]) == cli.EXIT_USAGE
    assert cli.run(["nielsen", "orbit", "--seed", "x"]) == cli.EXIT_USAGE
    assert cli.run(["verify", "belyi"]) == cli.EXIT_USAGE
    assert cli.run(["lemma31"]) == cli.EXIT_USAGE


def test_input_errors(tmp_path, capsys):
    assert cli.run(["verify", "certificate", str(tmp_path / "missing.json")]) == cli.EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.run(["verify", "certificate", str(bad)]) == cli.EXIT_INPUT
    assert cli.run(["factor-modp", "--poly=1,x", "--prime", "5"]) == cli.EXIT_INPUT
    assert cli.run(["rh-genus", "4", "2^1.1^2", "2^2"]) == cli.EXIT_INPUT


def test_budget_exhausted(capsys):
    code = cli.run(["nielsen", "search", "--budget", "1", "--seed", "3"])
    assert code == cli.EXIT_BUDGET


def test_failure_exit_code(capsys):
    code = cli.run(["nielsen", "orbit", "--group", "s4", "--classes", "2^1.1^2,2^1.1^2,3^1.1^1,3^1.1^1", "--expect", "7"])
    assert code == cli.EXIT_FAIL
    assert cli.run(["recognize", "1.4142135623730950488016887242096980785696718753769480731766797379"]) == cli.EXIT_FAIL


def test_same_seed_same_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        args = ["nielsen", "orbit", "--group", "s4", "--classes", "2^1.1^2,2^1.1^2,3^1.1^1,3^1.1^1", "--seed", "5"]
        assert cli.run([*args, "--out", str(path)]) == cli.EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["result"]["size"] == 6


def test_reads_its_own_envelope(tmp_path, capsys):
    tup = tmp_path / "tuple.json"
    args = ["--group", "s4", "--classes", "2^1.1^2,2^1.1^2,3^1.1^1,3^1.1^1"]
    assert cli.run(["nielsen", "search", *args, "--out", str(tup)]) == cli.EXIT_OK
    capsys.readouterr()
    code, env = run_json(capsys, "nielsen", "orbit", "--tuple", str(tup))
    assert code == cli.EXIT_OK and env["result"]["size"] == 6
    assert list(env["inputs"]) == [str(tup)]


def test_write_atomic_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "out.json"
    cli.write_atomic(target, "{}\n")
    cli.write_atomic(target, "[]\n")
    assert target.read_text() == "[]\n"
    assert [p.name for p in target.parent.iterdir()] == ["out.json"]


def test_factor_modp_negative_coefficients(capsys):
    # X^2 - 1 = (X - 1)(X + 1) over F_5
    code, env = run_json(capsys, "factor-modp", "--poly=-1,0,1", "--prime", "5")
    assert code == cli.EXIT_OK
    assert env["result"]["degrees"] == [1, 1]


def test_factor_modp_bad_prime(capsys):
    assert cli.run(["factor-modp", "--poly=1/5,1", "--prime", "5"]) == cli.EXIT_INPUT


def test_recognize(capsys):
    code, env = run_json(capsys, "recognize", "34.25")
    assert env["result"]["value"] == "137/4"
    code, env = run_json(capsys, "recognize", "(0.5+2.6457513110645905905016157536392604257102591830824501803683344592j)", "--quadratic", "-7")
    assert code == cli.EXIT_OK
    assert (env["result"]["a"], env["result"]["b"]) == ("1/2", "1")


@pytest.mark.parametrize("fixture, degrees", [("x2", [1, 1]), ("x3", [1, 2]), ("psl32", [1, 6])])
def test_lemma31_fixtures(capsys, fixture, degrees):
    code, env = run_json(capsys, "lemma31", "--fixture", fixture)
    assert code == cli.EXIT_OK and env["result"]["degrees"] == degrees


def test_lemma31_polynomial_option(capsys):
    code, env = run_json(capsys, "lemma31", "--p=0,0,1")
    assert env["result"]["degrees"] == [1, 1]


@pytest.mark.parametrize("fixture", ["psi24", "psl32"])
def test_verify_belyi_fixture(capsys, fixture):
    code, env = run_json(capsys, "verify", "belyi", "--fixture", fixture)
    assert code == cli.EXIT_OK and env["passed"]


def test_verify_belyi_file(tmp_path, capsys):
    cert = tmp_path / "cubic.json"
    cert.write_text(json.dumps({"p": CUBIC.to_json(), "q": ONE.to_json(), "expected_structures": ["2^1.1^1", "2^1.1^1", "3^1"]}))
    code, env = run_json(capsys, "verify", "belyi", "--file", str(cert))
    # X^3 - 3X is branched over -2, 2 and infinity, not over 0 and 1
    assert code == cli.EXIT_FAIL and not env["passed"]


def test_malformed_polynomial_is_an_input_error(tmp_path, capsys):
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps({"p": ["0", "1"], "q": ["1"], "expected_structures": ["1^1", "1^1", "1^1"]}))
    assert cli.run(["verify", "certificate", str(cert)]) == cli.EXIT_INPUT
    assert cli.run(["verify", "belyi", "--file", str(cert)]) == cli.EXIT_INPUT


def test_verify_certificate(tmp_path, capsys):
    cert = tmp_path / "c.json"
    cert.write_text(
        json.dumps({
            "p": CUBIC.to_json(),
            "q": ONE.to_json(),
            "expected_structures": ["1^3", "3^1", "2^1.1^1", "2^1.1^1"],
            "expected_locus": "0,inf,±sqrt(c)",
            "c": "4",
        })
    )
    code, env = run_json(capsys, "verify", "certificate", str(cert))
    assert code == cli.EXIT_OK


def test_hyperelliptic(capsys):
    code, env = run_json(capsys, "model", "hyperelliptic", "--at", "1/6")
    assert code == cli.EXIT_OK
    assert env["result"]["value"]["squarefree_part"] == -3199


def test_fit(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"points": [[str(x), f"{x + 1}/{x - 2}"] for x in range(3, 12)]}))
    code, env = run_json(capsys, "fit", "--points", str(pts))
    assert code == cli.EXIT_OK
    code, env = run_json(capsys, "fit", "--points", str(pts), "--degrees", "0,0")
    assert code == cli.EXIT_FAIL


def test_cover_assemble(capsys):
    code, env = run_json(capsys, "cover", "assemble")
    assert code == cli.EXIT_OK
    assert env["result"]["unknowns"] == env["result"]["equations"] == 126


def test_cover_solve_degree63_needs_flag(capsys):
    assert cli.run(["cover", "solve", "--shape", "psl62"]) == cli.EXIT_USAGE


def test_cover_pipeline(tmp_path, capsys):
    model = tmp_path / "m.json"
    assert cli.run(["cover", "solve", "--prec", "128", "--out", str(model)]) == cli.EXIT_OK
    capsys.readouterr()
    code, env = run_json(capsys, "cover", "monodromy", "--prec", "128", "--model", str(model))
    assert code == cli.EXIT_OK
    assert env["result"]["class_vector"] == ["2^1.1^2", "2^1.1^2", "3^1.1^1", "3^1.1^1"]
    moved = tmp_path / "moved.json"
    assert cli.run(["cover", "deform", "--prec", "128", "--model", str(model), "--to", "0.35", "--out", str(moved)]) == cli.EXIT_OK
    capsys.readouterr()
    code, env = run_json(capsys, "cover", "verify", "--prec", "128", "--model", str(moved))
    assert code == cli.EXIT_OK and env["passed"]


def test_human_output(capsys):
    assert cli.run(["rh-genus", "3", "2^1.1^1", "2^1.1^1", "3^1"]) == cli.EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["0", "PASS"]
