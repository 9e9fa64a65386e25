"""H2 sits one below the M_0 threshold and has no hamiltonian cycle.

Walk through why: it has a cycle factor, but its two cycles refuse to merge,
and no other factor exists that would help.
"""

from bimeyniel import (
    condition_witness,
    construct_hamiltonian,
    cycle_factor,
    degree_profile,
    find_hamiltonian_path,
    generate_h2,
    is_strong,
)
from bimeyniel.hamilton import even_cycle_lengths, merge_attempt

D = generate_h2()
print("H2:", D.arc_count, "arcs, strong:", is_strong(D))
print("degrees:", set(degree_profile(D).total_degree))

w = condition_witness(D)
u, v = w.pair
print(f"smallest non-adjacent pair ({u},{v}) has degree sum {w.min_sum} = 3a-1")

f = cycle_factor(D)
print("cycle factor:", f)
C1, C2 = f.cycles
print("merge attempt:", merge_attempt(D, C1, C2))

t = construct_hamiltonian(D)
for line in t.lines():
    print("  " + line)

print("cycle lengths present:", sorted(even_cycle_lengths(D)))
print("hamiltonian path:", "".join(map(str, find_hamiltonian_path(D))))
