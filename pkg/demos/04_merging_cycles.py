"""Cycle merging on a random dense digraph, and the crossing-arc bound.

Two disjoint cycles that cannot be merged by a single arc swap have at most
|C1||C2|/2 arcs between them.  Print every such pair found.
"""

import random

from bimeyniel import Cycle, build, complete_bipartite, construct_hamiltonian
from bimeyniel.hamilton import merge_attempt, simple_cycles

rng = random.Random(1)
a = 4
D = build(a, [arc for arc in complete_bipartite(a).arcs() if rng.random() < 0.6])

t = construct_hamiltonian(D)
print("\n".join(t.lines()))

cycles = list(simple_cycles(D))
stuck = over = 0
for i, c1 in enumerate(cycles):
    for c2 in cycles[i + 1:]:
        if set(c1) & set(c2):
            continue
        m = merge_attempt(D, Cycle.from_ids(D, c1), Cycle.from_ids(D, c2))
        if m.result is None:
            stuck += 1
            over += m.crossing_arc_count > m.bound
            print(m)
print(f"{stuck} unmergeable pairs, {over} above the bound")
