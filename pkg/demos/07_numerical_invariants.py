"""Integer invariants of the inflection-point covering.

The nine inflection points, followed over all smooth cubics in a
generic plane of the space of cubics, trace out a 9-sheeted branched
covering.  Its branch curve is the discriminant restricted to the
plane: a degree-12 curve with 21 nodes and 24 cusps.  From these three
integers alone, classical formulas determine a chain of invariants of
the covering surface, each feeding the next:

  genus of the branch curve        (degree-genus formula with defects)
  Euler number of the covering     (stratified count over the plane)
  holomorphic Euler characteristic (Noether's formula)
  genus of the ramification curve  (double-cover Riemann-Hurwitz)

Run:  python3 demos/07_numerical_invariants.py
"""

from cubicflex import (covering_euler, hurwitz_double_cover_genus,
                       invariant_chain, noether_chi, plane_curve_genus)

# step by step
g_branch = plane_curve_genus(degree=12, nodes=21, cusps=24)
print(f"branch curve: degree 12, 21 nodes, 24 cusps  ->  genus {g_branch}")

g_dual = plane_curve_genus(degree=18, nodes=84, cusps=42)
print(f"dual curve:   degree 18, 84 nodes, 42 cusps  ->  genus {g_dual}")

e = covering_euler(n1=21, n2=0, cusps=24)
print(f"Euler number of the 9-sheeted covering surface:  {e}")
print("  (the answer does not depend on how the 21 nodes split between")
print("   plain double points and triple-coincidence points:)")
for n2 in range(8):
    n1 = 21 - 3 * n2
    print(f"    n1 = {n1:2d}, n2 = {n2}:  e = {covering_euler(n1, n2, 24)}")

chi = noether_chi(k_squared=18, euler=90)
print(f"Noether: K^2 = 18, e = 90  ->  chi(O) = {chi}")

g_ram = hurwitz_double_cover_genus(genus_base=10, branch_points=24)
print(f"double cover of the genus-10 branch curve, branched at the 24")
print(f"  cusp points  ->  ramification curve genus {g_ram}")

# the assembled chain, as one record
print()
for name, rec in invariant_chain().items():
    print(f"{name}: {rec}")
