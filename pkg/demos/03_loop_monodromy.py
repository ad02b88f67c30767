"""Monodromy of inflection points along loops of cubics.

Move a smooth cubic around a closed loop in coefficient space that
avoids singular members, tracking all nine inflection points
numerically.  When the loop closes, the nine points return to the nine
starting positions, but possibly shuffled: the loop acts by a
permutation.  This script tracks three basic loops and verifies the
relations between the resulting permutations.

The family used is

    f(t) = z1*z2*z3 + t1*z1^3 + t2*z2^3 + t3*z3^3

based at t = (1, 1, 1).  Small circles around the three coordinate
walls t1 = 0, t2 = 0, t3 = 0 give three loops; the bundled data files
store them with radius 0.05.

Run:  python3 demos/03_loop_monodromy.py
"""

import json
from importlib import resources

from cubicflex import (Loop, hesse_base_points, inflection_points,
                       label_against, track_loop)

DATA = resources.files("cubicflex") / "data"


def load_loop(name):
    return Loop.from_json_dict(json.loads((DATA / name).read_text()))


loops = {name: load_loop(f"loop_{name}.json") for name in ("c1", "c2", "c3")}

# Label the nine starting points by the classical coordinate table, so
# the permutations below are in a fixed, reproducible alphabet 1..9.
base = loops["c1"].basepoint
labels = label_against(inflection_points(base), hesse_base_points())

print("tracking three wall circles (radius 0.05) of the triangle family:")
perms = {}
for name, loop in loops.items():
    result = track_loop(loop, labels=labels)
    perms[name] = result.perm
    print(f"  {name}: {result.perm}   cycle type {result.perm.cycle_type()}  "
          f"steps {result.steps_taken}, residual {result.max_residual:.1e}")

g2, g3, g4 = perms["c1"], perms["c2"], perms["c3"]

print()
print("relations between the three loops:")
print(f"  product c1*c2 equals inverse of c3:  {g2 * g3 == g4.inverse()}")
print(f"  each has order 3:  {g2.order() == g3.order() == g4.order() == 3}")

rev = track_loop(loops["c1"].reversed(), labels=labels).perm
print(f"  reversing a loop inverts its permutation:  {rev == g2.inverse()}")

# A small circle around a *cuspidal* member gives a different cycle
# type: six points fused with the cusp rotate in a single 6-cycle.
cusp_circle = load_loop("cusp_circle.json")
perm = track_loop(cusp_circle).perm
print()
print(f"circle around a cuspidal cubic: cycle type {perm.cycle_type()}")
print("(eight of the nine points collide at the cusp in the limit; going")
print(" around it permutes them in a 6-cycle and a 2-cycle)")
