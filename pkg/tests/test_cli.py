import json

import pytest

from cyclesmith.cli import main
from cyclesmith.formats import parse_circuit, parse_spec, write_circuit
from cyclesmith.circuit import Circuit, Swap, cnot

from conftest import CORPUS

SIX_TRANSPOSITIONS = str(CORPUS / "six_transpositions.spec")


def test_synth_and_verify(tmp_path, capsys):
    out = tmp_path / "e1.circ"
    assert main(["synth", SIX_TRANSPOSITIONS, "--out", str(out)]) == 0
    assert "verify: ok" in capsys.readouterr().err
    assert main(["verify", SIX_TRANSPOSITIONS, str(out)]) == 0
    assert "ok (16 inputs, exhaustive)" in capsys.readouterr().out


def test_verify_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.circ"
    bad.write_text(write_circuit(Circuit(4, (cnot(0, 1),))))
    assert main(["verify", SIX_TRANSPOSITIONS, str(bad)]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_input_errors(tmp_path, capsys):
    assert main(["verify", SIX_TRANSPOSITIONS, str(tmp_path / "missing.circ")]) == 2
    broken = tmp_path / "broken.spec"
    broken.write_text(".numvars 2\n.permutation\n0 0 1 2\n")
    assert main(["synth", str(broken)]) == 2
    assert "error: 3:3:" in capsys.readouterr().err
    assert main(["nonsense"]) == 2
    assert main(["gen", "hwb", "40"]) == 2
    assert main(["bounds", "2"]) == 2


def test_width_mismatch_is_input_error(tmp_path):
    c = tmp_path / "c.circ"
    c.write_text(write_circuit(Circuit(3, ())))
    assert main(["verify", SIX_TRANSPOSITIONS, str(c)]) == 2


@pytest.mark.parametrize("flags", [["--lnn"], ["--parallel", "3"], ["--parallel", "3", "--variant", "logarithmic"]])
def test_synth_modes_with_report(tmp_path, flags):
    out, rep = tmp_path / "o.circ", tmp_path / "r.json"
    assert main(["synth", SIX_TRANSPOSITIONS, "--out", str(out), "--report", str(rep), *flags]) == 0
    doc = json.loads(rep.read_text())
    assert doc["meta"]["verified"] is True
    assert doc["meta"]["mode"] == ("P" if "--parallel" in flags else "R")
    assert main(["verify", SIX_TRANSPOSITIONS, str(out)]) == 0


def test_gen_stats_map_simplify(tmp_path, capsys):
    spec = tmp_path / "hwb4.spec"
    assert main(["gen", "hwb", "4", "--out", str(spec)]) == 0
    assert parse_spec(spec.read_text()) == parse_spec((CORPUS / "hwb4.spec").read_text())
    circ = CORPUS / "random50.circ"
    assert main(["stats", str(circ), "--cost-model", str(CORPUS / "ncv.cost")]) == 0
    # unit cost per gate, except a SWAP counts as three CNOTs
    parsed = parse_circuit(circ.read_text())
    swaps = sum(isinstance(g, Swap) for g in parsed.gates)
    assert f"qc: {50 + 2 * swaps}" in capsys.readouterr().out
    mapped = tmp_path / "m.circ"
    assert main(["map-lnn", str(circ), "--out", str(mapped)]) == 0
    assert main(["simplify", str(mapped), "--out", str(tmp_path / "s.circ")]) == 0
    assert len(parse_circuit((tmp_path / "s.circ").read_text())) <= len(parse_circuit(mapped.read_text()))


def test_bounds_output(capsys):
    assert main(["bounds", "10"]) == 0
    out = capsys.readouterr().out
    assert "worst_case_bound: 77567.7" in out
    assert "repeated_terms_bound: 257.19" in out


def test_help_exits_zero():
    assert main(["--help"]) == 0
