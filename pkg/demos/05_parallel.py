"""
Parallel structure
==================

Copy the input into two extra registers, let each of the three registers run
a disjoint share of the groups, and XOR everything back onto the main lines.
Each term is moved by one register and left alone by the other two, so the
two untouched copies cancel.
"""
from cyclesmith import Cycle, compose, depth, hwb, synthesize, verify
from cyclesmith.parallel import BlockVariant, synthesize_parallel_detailed

p = compose([Cycle(c) for c in [(1, 3), (7, 10), (0, 4), (6, 15), (2, 8), (5, 13)]], 4)
res = synthesize_parallel_detailed(p, M=3)
print("bins:", [[c.terms for g in b.groups for c in g.cycles] for b in res.plan.bins])
print(f"depth {depth(res.circuit)} = max bin depth {max(res.bin_depths)} + storing "
      f"{depth(res.storing)} + restoring {depth(res.restoring)}")
print("verified:", verify(res.circuit, p).ok)

h = hwb(8)
regular = depth(synthesize(h))
for variant in BlockVariant:
    res = synthesize_parallel_detailed(h, 3, variant)
    print(f"hwb8 {variant.value:12s} depth {depth(res.circuit):5d} vs regular {regular}, "
          f"bin weights {[b.weight for b in res.plan.bins]}")
