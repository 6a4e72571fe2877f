"""Tests for the session script language and the command line interface."""

import json

import pytest

from gradedres.cli import main
from gradedres.errors import ScriptError
from gradedres.script import run_script

P_DEFAULT = 32003

FULL_SCRIPT = """\
# a session exercising every constructor
ring S = poly(p=32003, vars=[x, y], order=degrevlex)
ideal I = ideal(S, [x^3, x^2*y, x*y^2, y^3])
ring R = quotient(S, I);
module K = residue_field(R)
module N = cyclic(R, [x])
module F = free(R, shifts=[0, 1])
module M = coker(R, shifts=[0, 1], relations=[[x*y, x], [y^2, 0]])
"""


def test_run_script_builds_every_kind():
    session = run_script(FULL_SCRIPT)
    assert session.order == [
        ("ring", "S"),
        ("ideal", "I"),
        ("ring", "R"),
        ("module", "K"),
        ("module", "N"),
        ("module", "F"),
        ("module", "M"),
    ]
    R = session.quotient("R")
    assert len(R.gens) == 4
    # Asking for the polynomial ring as a quotient wraps the zero ideal.
    S_as_quotient = session.quotient("S")
    assert S_as_quotient.gens == ()
    assert session.module("K").f0.shifts == (0,)
    assert session.module("F").f0.shifts == (0, 1)
    assert session.module("M").f1.rank == 2


def test_run_script_quotient_accepts_inline_generators():
    session = run_script(
        "ring S = poly(vars=[x, y])\nring R = quotient(S, [x^2, y^2])\n"
    )
    assert sorted(str(g) for g in session.quotient("R").gens) == ["x^2", "y^2"]
    assert session.quotient("R").p == P_DEFAULT


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("foo X = poly(vars=[x])", 1, "statements start with"),
        ("ring S", 1, "missing '='"),
        ("ring 1S = poly(vars=[x])", 1, "bad name"),
        ("ring S = nope(vars=[x])", 1, "unknown constructor"),
        ("ring S = poly(p=32003)", 1, "poly needs vars"),
        ("ring S = poly(vars=[x], order=zzz)", 1, "unknown order"),
        ("ring S = poly(vars=[x, y])\nring R = quotient(S, [x])", 2, "degree >= 2"),
        ("ring S = poly(vars=[x])\nring S = poly(vars=[z])", 2, "already defined"),
        (
            "ring S = poly(vars=[x, y])\nmodule M = coker(S, shifts=[0], relations=[[x, y]])",
            2,
            "2 entries for 1 generators",
        ),
        ("ring S = poly(vars=[x, y])\nideal I = ideal(T, [x^2])", 2, "unknown ring 'T'"),
    ],
)
def test_run_script_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ScriptError) as exc:
        run_script(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_session_lookup_errors():
    session = run_script("ring S = poly(vars=[x, y])\n")
    with pytest.raises(ScriptError):
        session.ring("T")
    with pytest.raises(ScriptError):
        session.module("M")


@pytest.fixture
def script_file(tmp_path):
    path = tmp_path / "session.grs"
    path.write_text(FULL_SCRIPT)
    return str(path)


def test_cli_betti_json_and_determinism(script_file, capsys):
    argv = ["betti", "--script", script_file, "--module", "K", "--hmax", "3",
            "--dmax", "8", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    doc = json.loads(first)
    assert doc["entries"]["0,0"] == 1
    assert doc["entries"]["1,1"] == 2
    assert doc["totals"][0] == 1
    assert doc["finite"] is False
    assert doc["budget_exceeded"] is False
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_cli_betti_budget_exhaustion_exits_3(script_file, capsys):
    rc = main(["betti", "--script", script_file, "--module", "K", "--hmax", "4",
               "--dmax", "10", "--pair-budget", "1", "--json"])
    assert rc == 3
    doc = json.loads(capsys.readouterr().out)
    assert doc["budget_exceeded"] is True


def test_cli_hilbert_ring_and_module(script_file, capsys):
    assert main(["hilbert", "--script", script_file, "--target", "R",
                 "--dmax", "6", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["coefficients"][:4] == [1, 2, 3, 0]
    assert main(["hilbert", "--script", script_file, "--target", "N",
                 "--dmax", "6", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    # R/(x) over R = F_p[x,y]/m^3 has dimensions 1, 1, 1, 0, ...
    assert doc["coefficients"][:4] == [1, 1, 1, 0]


def test_cli_reg_and_rate_human_output(script_file, capsys):
    assert main(["reg", "--script", script_file, "--module", "K",
                 "--hmax", "4", "--dmax", "10"]) == 0
    out = capsys.readouterr().out
    assert "regularity 2" in out and "window value" in out
    assert main(["rate", "--script", script_file, "--module", "K",
                 "--hmax", "4", "--dmax", "10"]) == 0
    assert "rate 3/2" in capsys.readouterr().out


def test_cli_backelin_with_artinian_certificate(script_file, capsys):
    assert main(["backelin-rate", "--script", script_file, "--ring", "R",
                 "--hmax", "4", "--dmax", "10", "--artinian-cert"]) == 0
    out = capsys.readouterr().out
    assert "Rate 2" in out and "exact" in out


def test_cli_socle(script_file, capsys):
    assert main(["socle", "--script", script_file, "--ring", "R", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tau"] == 3
    assert doc["gens"] == ["x^2", "x*y", "y^2"]


def test_cli_lex_good_and_inadmissible(capsys):
    assert main(["lex", "--hf", "1,2,1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matches"] is True
    assert sorted(doc["generators"]) == ["x1*x2", "x1^2", "x2^3"]
    assert main(["lex", "--hf", "1,2,4"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["lex", "--hf", "1"]) == 2
    capsys.readouterr()


def test_cli_stretched_all_checks(capsys):
    assert main(["stretched", "--embdim", "2", "--ones", "2", "--hmax", "4",
                 "--dmax", "12", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["all_ok"] is True
    assert doc["socle_dimension"] == 2
    assert doc["max_generator_degree"] == 4
    assert doc["rate"]["value_str"] == "3"
    assert doc["rate"]["certified"] == "exact"


def test_cli_truncfilt_checkfilt_and_tampering(tmp_path, capsys):
    cert_path = str(tmp_path / "trunc23.json")
    assert main(["truncfilt", "--embdim", "2", "--top", "3", "--out", cert_path,
                 "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "verified" and doc["size"] == 13 and doc["bound"] == 2

    assert main(["checkfilt", "--cert", cert_path, "--json"]) == 0
    first = capsys.readouterr().out
    assert json.loads(first)["status"] == "verified"
    assert main(["checkfilt", "--cert", cert_path, "--json"]) == 0
    assert capsys.readouterr().out == first

    tampered = json.loads((tmp_path / "trunc23.json").read_text())
    tampered["bound"] = 1
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(tampered))
    assert main(["checkfilt", "--cert", str(bad_path), "--json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "failed"
    assert any("stated bound 1" in f for f in doc["failures"])


def test_cli_backelin_rejects_failed_certificate(tmp_path, script_file, capsys):
    assert main(["truncfilt", "--embdim", "2", "--top", "3", "--out",
                 str(tmp_path / "c.json")]) == 0
    capsys.readouterr()
    doc = json.loads((tmp_path / "c.json").read_text())
    doc["bound"] = 1
    (tmp_path / "c.json").write_text(json.dumps(doc))
    rc = main(["backelin-rate", "--script", script_file, "--ring", "R",
               "--hmax", "4", "--dmax", "10", "--cert", str(tmp_path / "c.json")])
    assert rc == 1
    assert "did not verify" in capsys.readouterr().err


def test_cli_lift(tmp_path, capsys):
    from gradedres.filtration import FiltrationCertificate, Witness, quotient_by_linear
    from gradedres.groebner import QuotientRing
    from gradedres.poly import PolyRing, parse_poly

    script = tmp_path / "lift.grs"
    script.write_text(
        "ring S = poly(p=32003, vars=[x, y])\nring R = quotient(S, [y^3])\n"
    )
    S = PolyRing(P_DEFAULT, ["x", "y"])
    R = QuotientRing(S, [parse_poly(S, "y^3")])
    lq = quotient_by_linear(R, parse_poly(S, "x"))
    T = lq.ring.ambient
    y, y2 = parse_poly(T, "y"), parse_poly(T, "y^2")
    cert = FiltrationCertificate(
        lq.ring, ((), (y2,), (y,)), (None, Witness(0, y2, 2), Witness(0, y, 1)), bound=2
    )
    cert_path = tmp_path / "base.json"
    cert_path.write_text(cert.to_json())
    out_path = tmp_path / "lifted.json"
    rc = main(["lift", "--script", str(script), "--ring", "R", "--form", "x",
               "--cert", str(cert_path), "--out", str(out_path), "--json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "verified" and doc["size"] == 4 and doc["bound"] == 2
    assert main(["checkfilt", "--cert", str(out_path)]) == 0
    capsys.readouterr()


def test_cli_tensor(tmp_path, capsys):
    script = tmp_path / "tensor.grs"
    script.write_text(
        "ring A = poly(p=32003, vars=[x])\n"
        "ring R1 = quotient(A, [x^2])\n"
        "ring B = poly(p=32003, vars=[y])\n"
        "ring R2 = quotient(B, [y^2])\n"
    )
    assert main(["tensor", "--script", str(script), "--ring1", "R1", "--ring2", "R2",
                 "--hmax", "4", "--dmax", "10", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kunneth_holds"] and doc["shift_bound_holds"] and doc["reg_bound_holds"]
    # One module without the other is an input error.
    assert main(["tensor", "--script", str(script), "--ring1", "R1", "--ring2", "R2",
                 "--module1", "M", "--hmax", "3", "--dmax", "8"]) == 2
    capsys.readouterr()


def test_cli_change_of_rings(tmp_path, capsys):
    script = tmp_path / "cor.grs"
    script.write_text(
        "ring S = poly(p=32003, vars=[x, y])\n"
        "ring A = quotient(S, [x^2])\n"
        "ring B = quotient(S, [x^2, y^2])\n"
        "module M = residue_field(B)\n"
    )
    assert main(["change-of-rings", "--script", str(script), "--big", "A",
                 "--small", "B", "--module", "M", "--hmax", "4", "--dmax", "10",
                 "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["bound_down_holds"] and doc["bound_up_holds"]
    assert doc["rate_R_S"]["value_str"] == "2"


def test_cli_oracle_diff(script_file, capsys):
    assert main(["oracle-diff", "--script", script_file, "--module", "K",
                 "--hmax", "3", "--dmax", "8", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["match"] is True and doc["mismatches"] == []


def test_cli_input_errors_exit_2(tmp_path, capsys):
    assert main(["betti", "--script", str(tmp_path / "missing.grs")]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.grs"
    bad.write_text("ring S = poly(vars=[x])\nring R = quotient(S, [x])\n")
    assert main(["betti", "--script", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    notjson = tmp_path / "cert.json"
    notjson.write_text("not json at all")
    assert main(["checkfilt", "--cert", str(notjson)]) == 2
    capsys.readouterr()
