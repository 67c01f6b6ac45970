"""
Nearest-neighbour mapping
=========================

On a line of qubits a gate may only touch adjacent lines.  map_lnn wraps each
long gate in SWAP chains and mirrors them; simplify then cancels SWAPs that
meet between consecutive gates.
"""
from cyclesmith import Circuit, circuit_permutation, hwb, is_lnn, map_lnn, measure, mct, simplify, synthesize

c = Circuit(4, (mct([0, 1], 3),))
print("Toffoli on 0,1 -> 3 becomes", [str(g) for g in map_lnn(c).gates])

p = hwb(6)
c = synthesize(p)
mapped = map_lnn(c)
small = simplify(mapped)
assert is_lnn(small) and circuit_permutation(small) == p
for name, circ in (("synthesized", c), ("mapped", mapped), ("simplified", small)):
    m = measure(circ)
    print(f"{name:12s} gates {m.gate_count:5d}  qc {m.qc:6d}  depth {m.depth:5d}  interaction {m.interaction}")
