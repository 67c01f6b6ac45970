"""
Synthesizing one elementary cycle
=================================

Every group is built as pi, kappa0, pi^-1.  pi moves the group's terms onto
fixed terms near the middle line, kappa0 permutes those, pi^-1 undoes pi.
"""
from cyclesmith import Cycle, ECGroup, ECKind, circuit_permutation, compose, quantum_cost
from cyclesmith.ecsynth import Kappa0Spec, build_kappa0, build_pi, pi_rows, synth_ec, window_lines
from cyclesmith.metrics import ec_cost_formula

n = 8
group = ECGroup(ECKind.C22, (Cycle((247, 5)), Cycle((200, 99))))

w = window_lines(group.kind, n)
print(f"anchor k = {w.k}, window lines {w.lines}")

# the kappa0 terms this kind uses on eight lines
print("kappa0 cycles:", [c.terms for c in Kappa0Spec.of(group.kind, n).cycles])

# pi: each row's input term is steered onto its kappa0 term
rows = pi_rows(group, w)
pi = build_pi(rows, n)
for r in rows:
    print(f"  {r.input_term:3d} -> intermediate {r.intermediate:3d} -> kappa0 {r.kappa0_term:3d}")
print("pi gates:", len(pi))

k0 = build_kappa0(group.kind, n)
print("kappa0 gates:", [str(g) for g in k0.gates])

c = synth_ec(group, n)
assert circuit_permutation(c) == compose(group.cycles, n)
print(f"total: {len(c)} gates, quantum cost {quantum_cost(c)}, "
      f"table estimate {ec_cost_formula(group.kind, n)}")
