import json
import subprocess
import sys

import pytest

from hcagen.bits import bits_to_bytes
from hcagen.ca import Configuration, Rule, cell_sequence
from hcagen.cli import main
from hcagen.gf2 import irreducibles


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_charpoly_counter_example(capsys):
    assert run(capsys, "charpoly", "--rules", "001000")[:2] == (0, "x^6+x^5+x^4+x^3+1")
    assert run(capsys, "charpoly", "--rules", "001000", "--hex")[1] == "0x79"


def test_synth_gf4(capsys):
    code, out, _ = run(capsys, "synth", "--poly", "x^2+x+1")
    assert code == 0
    assert out.splitlines()[:2] == ["01", "10"]
    assert "canonical 01" in out


def test_synth_json_verify(capsys):
    code, out, _ = run(capsys, "synth", "--poly", "0x13", "--verify", "--json")
    doc = json.loads(out)
    assert doc == {"poly": "x^4+x+1", "realizations": ["0101", "1010"],
                   "canonical": "0101", "verified": True}


def test_synth_rejects_reducible(capsys):
    code, _, err = run(capsys, "synth", "--poly", "x^6+x^5+x^4+x^3+1")
    assert code != 0 and "not irreducible" in err


def test_synth_charpoly_round_trip(capsys):
    for n in range(1, 11):
        for p in irreducibles(n):
            code, out, _ = run(capsys, "synth", "--poly", str(p))
            assert code == 0
            for vector in out.splitlines()[:-1]:
                assert run(capsys, "charpoly", "--rules", vector)[1] == str(p)


def test_scan_rules_json(capsys):
    code, out, _ = run(capsys, "scan-rules", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 256
    assert [r["rule"] for r in rows] == list(range(256))
    assert sum(r["linear"] for r in rows) == 16
    assert not any(r["nonlinear"] and r["ci1"] for r in rows)


def test_scan_rules_balanced_rows(capsys):
    rows = json.loads(run(capsys, "scan-rules", "--json")[1])
    assert not any(r["nonlinear"] and r["resilient1"] for r in rows)


def test_scan_rules_text(capsys):
    out = run(capsys, "scan-rules")[1]
    assert out.startswith("affine rules (16)")


def test_evolve_text_and_pbm(capsys):
    out = run(capsys, "evolve", "--rule", "30", "--seed", "00001000", "--steps", "2")[1]
    assert out.splitlines() == ["00001000", "00011100", "00110010"]
    out = run(capsys, "evolve", "--rule", "30", "--seed", "0x10", "--size", "8",
              "--steps", "1", "--format", "pbm")[1]
    assert out.splitlines() == ["P1", "8 2", "0 0 0 0 1 0 0 0", "0 0 0 1 1 1 0 0"]


def test_gen_rule_matches_library(capsys):
    out = run(capsys, "gen", "--rule", "30", "--size", "64", "--bits", "100")[1]
    expected = cell_sequence(Configuration.single(64), Rule(30), 32, 100)
    assert out == "".join(map(str, expected))


def test_gen_lfsr(capsys):
    out = run(capsys, "gen", "--lfsr", "x^4+x+1", "--seed", "1", "--bits", "30")[1]
    assert out[:15] == out[15:30]
    assert out.count("1", 0, 15) == 8


def test_gen_lhca_is_deterministic(capsys):
    a = run(capsys, "--rng-seed", "5", "gen", "--lhca", "0101", "--bits", "32")[1]
    b = run(capsys, "--rng-seed", "5", "gen", "--lhca", "0101", "--bits", "32")[1]
    assert a == b and "1" in a


def test_gen_boolfunc(capsys):
    out = run(capsys, "gen", "--boolfunc", "gold", "--n", "5", "--i", "1", "--a", "1", "--b", "0", "--bits", "62")[1]
    assert out[:31] == out[31:]


def test_gen_needs_one_source(capsys):
    code, _, err = run(capsys, "gen", "--bits", "10")
    assert code != 0 and "exactly one" in err


def test_cycles_json(capsys):
    out = run(capsys, "cycles", "--machine", "lfsr", "--poly", "x^4+x^3+x^2+x+1")[1]
    assert json.loads(out)["cycles"] == [[1, 1], [5, 3]]
    out = run(capsys, "cycles", "--machine", "lhca", "--poly", "x^4+x+1")[1]
    assert json.loads(out)["cycles"] == [[1, 1], [15, 1]]


def test_minpoly(capsys):
    assert run(capsys, "minpoly", "--modulus", "x^3+x+1", "--power", "3")[1] == "x^3+x^2+1"
    assert run(capsys, "minpoly", "--modulus", "x^3+x+1", "--element", "x+1")[1] == "x^3+x^2+1"
    assert run(capsys, "minpoly", "--modulus", "x^3+x+1", "--element", "1", "--hex")[1] == "0x3"


def test_boolfunc_outputs(capsys):
    base = ["boolfunc", "--family", "gold", "--n", "3", "--i", "1"]
    assert run(capsys, *base, "--parity")[1] == "x^6+x^5+x^4+x^3+x^2+x+1"
    assert len(run(capsys, *base, "--table")[1]) == 8
    assert len(run(capsys, *base, "--stream", "20")[1]) == 20
    doc = json.loads(run(capsys, *base, "--lhca")[1])
    assert doc["char_poly"] == "x^6+x^5+x^4+x^3+x^2+x+1" and len(doc["blocks"]) == 2


def test_boolfunc_bad_parameters(capsys):
    code, _, err = run(capsys, "boolfunc", "--family", "gold", "--n", "6", "--i", "2", "--table")
    assert code != 0 and "gcd" in err


def test_test_command_json(tmp_path, capsys):
    seq = cell_sequence(Configuration.single(64), Rule(30), 32, 20000)
    path = tmp_path / "r30.bin"
    path.write_bytes(bits_to_bytes(seq))
    code, out, _ = run(capsys, "test", "--in", str(path), "--battery", "fips,chi2,serial,entropy,montecarlo", "--json")
    reports = json.loads(out)
    assert code == 0
    assert [r["test"] for r in reports] == sorted(r["test"] for r in reports)
    by_name = {r["test"]: r for r in reports}
    for name in ("monobit", "poker", "runs", "long_run"):
        assert by_name[name]["pass"] is True
        assert set(by_name[name]) >= {"test", "params", "statistics", "pass"}
    assert "error" in by_name["montecarlo"]


def test_test_command_ascii_and_stdin(tmp_path, monkeypatch, capsys):
    path = tmp_path / "alt.txt"
    path.write_text("01" * 10000 + "\n")
    reports = {r["test"]: r for r in json.loads(run(capsys, "test", "--in", str(path), "--json")[1])}
    assert reports["monobit"]["pass"] and not reports["runs"]["pass"]

    import io
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"0" * 20000)))
    reports = {r["test"]: r for r in json.loads(run(capsys, "test", "--in", "-", "--json")[1])}
    assert reports["monobit"]["pass"] is False


def test_missing_file(capsys):
    code, _, err = run(capsys, "test", "--in", "/nonexistent/file")
    assert code != 0 and err


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["synth"])
    assert exc.value.code != 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hcagen", "charpoly", "--rules", "110111"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "x^6+x^5+x^4+x^3+1"


def test_output_is_reproducible(capsys):
    argv = ["scan-rules", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
