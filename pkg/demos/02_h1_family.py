"""The H1 family: a Hall violator that blocks every cycle factor.

Generate members at a = 3, 5, 7, show the deficient set S, and check that
the recognizer recovers the partition even after the sides are exchanged.
"""

from bimeyniel import Direction, H1Spec, condition_witness, generate_h1, hall_violator, recognize_extremal
from bimeyniel.digraph import swap_sides
from bimeyniel.families import recognize_h1

for a in (3, 5, 7):
    for pattern in ("minimal", "full"):
        D = generate_h1(H1Spec.preset(a, pattern))
        bad = hall_violator(D, Direction.ONE_TO_TWO)
        print(f"a={a} {pattern:<7} arcs={D.arc_count:<3} min_sum={condition_witness(D).min_sum} "
              f"(3a-1={3 * a - 1})  violator {bad}")

D = generate_h1(H1Spec.full(5))
print()
print("recognized:", recognize_extremal(D).witness)
print("sides swapped:", recognize_h1(swap_sides(D)))
