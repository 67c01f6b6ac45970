import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyclesmith.circuit import Circuit, MCT, Not, Swap, cnot, concat, mct, random_circuit, toffoli
from cyclesmith.lnn import is_lnn
from cyclesmith.metrics import (DEFAULT_COST_MODEL, EC_TOTAL, CostModel, CostModelError, NTooSmall, depth,
                                ec_cost_formula, gate_levels, interaction_cost, measure, quantum_cost,
                                repeated_terms_bound, two_qubit_cost, worst_case_bound)
from cyclesmith.parallel import BlockVariant, storing_block
from cyclesmith.perm import ECKind

circuits = st.tuples(st.integers(1, 6), st.integers(0, 25), st.integers(0, 2**32 - 1)).map(
    lambda a: random_circuit(a[0], a[1], np.random.default_rng(a[2])))


def naive_depth(c):
    levels = []
    for i, g in enumerate(c.gates):
        prev = [levels[j] for j in range(i) if set(c.gates[j].lines) & set(g.lines)]
        levels.append(1 + max(prev, default=0))
    return max(levels, default=0)


def test_quantum_cost_examples():
    c = Circuit(3, (toffoli(0, 1, 2), cnot(0, 1), Not(2)))
    assert quantum_cost(c) == 7
    assert quantum_cost(Circuit(2, (Swap(0, 1),))) == 3
    assert quantum_cost(Circuit(2)) == 0


def test_default_table_and_extrapolation():
    m = DEFAULT_COST_MODEL
    assert [m.controls_cost(c) for c in range(6)] == [1, 1, 5, 13, 26, 38]
    assert m.gate_cost(mct([(0, False), (1, False)], 2)) == 7
    assert m.gate_cost(mct([(0, False), 1], 2)) == 5


def test_cost_model_file_round_trip(corpus):
    m = CostModel.load(corpus / "default.cost")
    assert m == DEFAULT_COST_MODEL
    assert CostModel.parse(m.dumps()) == m
    unit = CostModel.load(corpus / "ncv.cost")
    assert quantum_cost(Circuit(6, (mct([0, 1, 2, 3, 4], 5),)), unit) == 1


def test_cost_model_errors():
    with pytest.raises(CostModelError):
        CostModel.parse("controls=0 cost=1\ncontrols=1 cost=1\n")
    with pytest.raises(CostModelError):
        CostModel.parse("controls=0 cost=1\ncontrols=1 cost=3\ncontrols=2 cost=2\n")
    with pytest.raises(CostModelError):
        CostModel.parse("controls=zero cost=1")
    m = CostModel({0: 1, 1: 1, 2: 5}, extrapolate=None)
    with pytest.raises(CostModelError):
        m.controls_cost(3)


def test_two_qubit_examples():
    assert two_qubit_cost(Circuit(3, (toffoli(0, 1, 2),))) == (5, 0)
    assert two_qubit_cost(Circuit(1, (Not(0),))) == (0, 1)
    assert two_qubit_cost(Circuit(5, (mct([0, 1, 2, 3], 4),))) == (25, 0)


def test_interaction_examples():
    assert interaction_cost(Circuit(4, (cnot(0, 3),))) == 2
    assert interaction_cost(Circuit(2, (cnot(0, 1),))) == 0
    assert interaction_cost(Circuit(5, (mct([0, 4], 2),))) == 2


def test_depth_examples():
    assert depth(Circuit(4, (cnot(0, 1), cnot(2, 3)))) == 1
    assert depth(Circuit(1, (Not(0),) * 5)) == 5
    assert depth(storing_block(4, 2, BlockVariant.LINEAR)) == 2


def test_stage_barrier():
    c = concat([Circuit(4, (cnot(0, 1),)), Circuit(4, (cnot(2, 3),))], staged=True)
    assert depth(c) == 2 and depth(c, staged=False) == 1


@given(circuits)
def test_depth_properties(c):
    assert depth(c, staged=False) == naive_depth(c)
    assert depth(c) <= len(c)
    assert all(l >= 1 for l in gate_levels(c))


def test_depth_of_chain_equals_gate_count():
    c = Circuit(3, (cnot(0, 1), cnot(1, 2), toffoli(0, 2, 1), Not(1)))
    assert depth(c) == len(c)


@given(circuits, circuits)
def test_costs_additive(a, b):
    w = max(a.width, b.width)
    a, b = Circuit(w, a.gates), Circuit(w, b.gates)
    both = concat([a, b])
    assert quantum_cost(both) == quantum_cost(a) + quantum_cost(b)
    ta, tb, tab = two_qubit_cost(a), two_qubit_cost(b), two_qubit_cost(both)
    assert tab == (ta[0] + tb[0], ta[1] + tb[1])


@given(circuits)
def test_zero_interaction_implies_lnn(c):
    if interaction_cost(c) == 0:
        assert is_lnn(c)


def test_measure_non_negative():
    r = measure(Circuit(3, (toffoli(0, 1, 2),)))
    assert all(v >= 0 for v in r.as_dict().values())
    assert r.qc == 5 and r.depth == 1 and r.gate_count == 1


def test_ec_cost_formula_table_values():
    assert ec_cost_formula(ECKind.C22, 8) == 190
    assert ec_cost_formula(ECKind.C2, 8, lnn=True) == 4724
    assert ec_cost_formula(ECKind.C55, 10) == 470
    with pytest.raises(NTooSmall):
        ec_cost_formula(ECKind.C55, 5)
    assert set(EC_TOTAL) == set(ECKind)


def test_worst_case_bound_values():
    assert worst_case_bound(10) == pytest.approx(77567.7, abs=0.1)
    assert worst_case_bound(8, lnn=True) == pytest.approx(718912.0, abs=0.1)
    ratios = [worst_case_bound(n) / 2 ** n for n in range(7, 16)]
    diffs = np.diff(ratios)
    # bound / 2^n = 9.4 n - 18.8 + O(n^2 / 2^n): steps grow toward 9.4
    assert np.all(np.diff(diffs) > 0)
    assert abs(diffs[-1] - 9.4) < 0.1


def recurrence_total(n):
    """Iterate a_0 = 2^n/5, a_i = (a_{i-1}+4)/5 into the fixpoint region around 1.

    Each level adds its excess a_i - 1 over the fixpoint, plus one for every
    level that still splits (a_i >= 5).
    """
    a = 2 ** n / 5
    excess = 0.0
    levels = 0
    while a - 1 > 1e-9:
        excess += a - 1
        levels += a >= 5
        a = (a + 4) / 5
    return excess + levels


def test_repeated_terms_bound():
    assert repeated_terms_bound(10) == pytest.approx(257.19, abs=0.05)
    for n in range(8, 15):
        assert abs(repeated_terms_bound(n) - recurrence_total(n)) <= 1.0
    with pytest.raises(ValueError):
        repeated_terms_bound(2)
