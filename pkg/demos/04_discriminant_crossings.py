"""Where a pencil of cubics meets the discriminant.

The singular cubics form a degree-12 hypersurface (the discriminant)
in the 9-dimensional projective space of all cubics.  A generic line
(pencil) therefore contains exactly 12 singular members, all of them
one-nodal; special pencils meet the discriminant in fewer points with
multiplicities.  `pencil_crossings` finds the crossing parameters,
their multiplicities, and the stratum of each singular member.

A bypass loop then encircles one chosen crossing with a small circle
and tracks the inflection points around it, giving the local
permutation attached to that wall.

Run:  python3 demos/04_discriminant_crossings.py
"""

import numpy as np

from cubicflex import (CubicForm, Pencil, bypass_loop, fermat_cubic,
                       pencil_crossings, track_loop, triangle_cubic)

# ---------------------------------------------------------------------------
# The classical pencil spanned by the Fermat cubic and the triangle
# ---------------------------------------------------------------------------
hesse = Pencil(fermat_cubic(), triangle_cubic())
pc = pencil_crossings(hesse)
print("pencil  z1^3+z2^3+z3^3 + t * z1*z2*z3:")
print(f"  total crossing multiplicity {pc.total_multiplicity()} "
      f"at {len(pc.crossings)} parameters")
for c in pc.crossings:
    t = c.chart_value()
    where = "infinity        " if t is None else f"{t:+.4f}"
    print(f"  t = {where}   multiplicity {c.multiplicity}   "
          f"stratum {c.label}")
print("  four triangles, each counted with multiplicity 3: this pencil is")
print("  maximally special.")

# ---------------------------------------------------------------------------
# A random pencil: twelve simple nodal crossings
# ---------------------------------------------------------------------------
rng = np.random.default_rng(5)
other = CubicForm(rng.standard_normal(10) + 1j * rng.standard_normal(10))
generic = Pencil(fermat_cubic(), other)
pc = pencil_crossings(generic)
labels = sorted(set(str(c.label) for c in pc.crossings))
print()
print("random pencil through the Fermat cubic:")
print(f"  {len(pc.crossings)} crossings, total multiplicity "
      f"{pc.total_multiplicity()}, strata {labels}")

# ---------------------------------------------------------------------------
# Bypass one nodal member and read off the local permutation
# ---------------------------------------------------------------------------
target = pc.crossings[0].member
loop = bypass_loop(fermat_cubic(), target, radius=0.02)
perm = track_loop(loop).perm
print()
print("small circle around the first nodal member, reached from the Fermat")
print(f"  cubic: cycle type {perm.cycle_type()}")
print("  (a node absorbs six inflection points; circling it rotates them in")
print("   two 3-cycles)")
