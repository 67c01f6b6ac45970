"""
Permutations as cycles
======================

A reversible function on n bits is a permutation of 0 .. 2**n - 1.  This
walks through the disjoint-cycle view and how long cycles get split into
pieces of length at most five.
"""
import numpy as np

from cyclesmith import Cycle, compose, elementary_groups, parity, split_long_cycle, to_disjoint_cycles
from cyclesmith.perm import random_permutation

# six transpositions on four lines
p = compose([Cycle(c) for c in [(1, 3), (7, 10), (0, 4), (6, 15), (2, 8), (5, 13)]], 4)
print("images:", p.images)
print("cycles:", to_disjoint_cycles(p))
print("parity:", parity(p).value)

# equal-length cycles pair up into elementary groups
for g in elementary_groups(p):
    print(g.kind.tag, [c.terms for c in g.cycles])

# a 13-cycle: the chain split reuses one term per piece, the leader split
# keeps runs of five disjoint and cycles their first terms afterwards
long = Cycle(tuple(range(13)))
print("chain :", [c.terms for c in split_long_cycle(long, method="chain")])
print("leader:", [c.terms for c in split_long_cycle(long, method="leader")])

# random permutations mostly decompose into (2,2) and (5,5) groups
rng = np.random.default_rng(0)
q = random_permutation(8, rng)
kinds = {}
for g in elementary_groups(q):
    kinds[g.kind.tag] = kinds.get(g.kind.tag, 0) + 1
print("group kinds for a random 8-line permutation:", kinds)
