import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyclesmith.circuit import (MCT, Circuit, Not, Swap, WidthTooLarge, circuit_permutation, cnot, concat,
                                invert, mct, random_circuit, shift_lines, simulate, simulate_array,
                                toffoli, verify)
from cyclesmith.perm import Cycle, Permutation, compose


def bit_oracle(gates, width, t):
    """Gate semantics on an explicit bit list."""
    bits = [(t >> i) & 1 for i in range(width)]
    for g in gates:
        if isinstance(g, Not):
            bits[g.target] ^= 1
        elif isinstance(g, Swap):
            bits[g.a], bits[g.b] = bits[g.b], bits[g.a]
        elif all(bits[l] == int(p) for l, p in g.controls):
            bits[g.target] ^= 1
    return sum(b << i for i, b in enumerate(bits))


circuits = st.tuples(st.integers(1, 6), st.integers(0, 25), st.integers(0, 2**32 - 1)).map(
    lambda a: random_circuit(a[0], a[1], np.random.default_rng(a[2])))


def test_mct_validation():
    with pytest.raises(ValueError):
        MCT(((0, True), (0, False)), 1)
    with pytest.raises(ValueError):
        MCT(((1, True),), 1)
    with pytest.raises(ValueError):
        Swap(2, 2)
    with pytest.raises(ValueError):
        Circuit(2, (cnot(0, 2),))


def test_controls_sorted_and_mixed_polarity():
    g = mct([3, (0, False)], 1)
    assert g.controls == ((0, False), (3, True))
    assert simulate(Circuit(4, (g,)), 0b1000) == 0b1010
    assert simulate(Circuit(4, (g,)), 0b1001) == 0b1001


def test_toffoli_truth_table():
    c = Circuit(3, (toffoli(0, 1, 2),))
    assert [simulate(c, t) for t in range(8)] == [0, 1, 2, 7, 4, 5, 6, 3]


@given(circuits)
def test_simulation_matches_bit_oracle(c):
    terms = np.arange(1 << c.width)
    fast = simulate_array(c.gates, terms)
    assert all(int(fast[t]) == bit_oracle(c.gates, c.width, t) == simulate(c, t) for t in range(1 << c.width))


@given(circuits)
def test_inverse_undoes(c):
    both = concat([c, invert(c)])
    assert circuit_permutation(both).is_identity()
    assert circuit_permutation(invert(c)) == circuit_permutation(c).inverse()


@given(circuits)
def test_circuit_is_a_bijection(c):
    circuit_permutation(c)  # Permutation's constructor rejects non-bijections


def test_verify_reports_counterexample():
    p = compose([Cycle((1, 3))], 2)
    good = Circuit(2, (cnot(0, 1),))
    assert verify(good, p).ok
    bad = Circuit(2, (cnot(1, 0),))
    res = verify(bad, p)
    assert not res.ok and res.counterexample is not None
    assert p(res.counterexample) == res.expected != res.actual


def test_verify_ignores_ancilla_garbage():
    # copy line 0 to ancilla line 1, main register untouched
    c = Circuit(2, (cnot(0, 1),), main_lines=1)
    assert verify(c, Permutation.identity(1)).ok


def test_verify_samples_above_limit(monkeypatch):
    c = Circuit(6, (Not(0),))
    p = Permutation(6, tuple(t ^ 1 for t in range(64)))
    res = verify(c, p, limit=4, samples=100, seed=3)
    assert res.ok and not res.exhaustive and res.checked == 100
    monkeypatch.setenv("CYCLESMITH_SEED", "9")
    assert verify(c, p, limit=4, samples=10).ok
    bad = Permutation(6, tuple(range(64)))
    assert not verify(c, bad, limit=4, samples=10).ok


def test_exhaustive_width_limit():
    with pytest.raises(WidthTooLarge):
        circuit_permutation(Circuit(22, (Not(0),)))


def test_concat_stages_and_shift():
    a = Circuit(2, (cnot(0, 1),))
    b = Circuit(2, (Not(0),))
    c = concat([a, b], staged=True)
    assert c.stages == (1,)
    s = shift_lines(a, 2, 4)
    assert s.gates == (cnot(2, 3),)
    assert invert(c).stages == (1,)
