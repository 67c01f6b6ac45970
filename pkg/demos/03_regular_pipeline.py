"""
Regular synthesis of a benchmark
================================

hwb(n) rotates x left by its Hamming weight.  The regular pipeline splits the
permutation into elementary groups and concatenates one circuit per group.
"""
import time

from cyclesmith import decompose, hwb, measure, synthesize, verify
from cyclesmith.metrics import worst_case_bound
from cyclesmith.report import REFERENCE

for n in (5, 6, 7, 8):
    p = hwb(n)
    t0 = time.perf_counter()
    c = synthesize(p)
    secs = time.perf_counter() - t0
    m = measure(c)
    ok = verify(c, p).ok
    print(f"hwb{n}: {len(decompose(p)):3d} groups, {m.gate_count:5d} gates, qc {m.qc:6d}, "
          f"depth {m.depth:5d}, bound {worst_case_bound(n):9.1f}, verified {ok}, {secs:.1f}s")

ref = REFERENCE[("hwb8", "R")]
print(f"published hwb8 figures for comparison: qc {ref['qc']}, depth {ref['depth']}")
