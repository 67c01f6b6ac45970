import numpy as np
from hypothesis import given, strategies as st

from cyclesmith.circuit import Circuit, random_circuit
from cyclesmith.metrics import worst_case_bound
from cyclesmith.report import REFERENCE_TAG, ReportDocument, report


def test_empty_circuit_all_zero():
    doc = report(Circuit(4, ()))
    assert set(doc.metrics.values()) - {4} == {0}
    assert doc.metrics["width"] == doc.metrics["main_lines"] == 4
    assert doc.reference == {}


def test_reference_row_is_labelled():
    doc = report(Circuit(8, ()), benchmark="hwb8", mode="R")
    assert doc.reference["tag"] == REFERENCE_TAG
    assert doc.reference["qc"] == 6686 and doc.reference["depth"] == 5622
    par = report(Circuit(24, (), 8), benchmark="hwb8", mode="P")
    assert par.reference["bin_cycles"] == [26, 28, 26]


def test_unknown_benchmark_has_no_reference():
    assert report(Circuit(8, ()), benchmark="nope").reference == {}


@given(st.integers(2, 8), st.integers(0, 30), st.integers(0, 2**32 - 1))
def test_bound_flag_and_round_trips(width, count, seed):
    c = random_circuit(width, count, np.random.default_rng(seed))
    doc = report(c, benchmark="hwb8" if width == 8 else None,
                 bins=[{"groups": 1, "weight": 2.5, "parity": "even", "depth": 3}], extra={"verified": True})
    assert doc.bounds["qc_within_bound"] == (doc.metrics["qc"] <= worst_case_bound(width))
    assert ReportDocument.from_text(doc.to_text()) == doc
    assert ReportDocument.from_json(doc.to_json()) == doc


def test_text_form_is_flat():
    doc = report(Circuit(3, ()), bins=[{"groups": 0}])
    lines = doc.to_text().splitlines()
    assert "meta.bins.0.groups: 0" in lines
    assert all(": " in l for l in lines)
