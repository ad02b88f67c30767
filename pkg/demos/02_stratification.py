"""Classifying degenerate cubics.

Singular cubics fall into eight equisingularity classes.  The
`classify` function decides the class numerically and returns a
certificate recording the singular points and the structural tests
that fired.  The labels, by curve type:

    B1   irreducible with one node
    B21  conic plus a transversal line (two nodes)
    B22  irreducible with one cusp
    B31  three lines in general position (a triangle, three nodes)
    B32  conic plus a tangent line (a tacnode)
    B4   three concurrent lines (an ordinary triple point)
    B5   a double line plus a line
    B7   a triple line

Run:  python3 demos/02_stratification.py
"""

from cubicflex import CubicForm, classify

GALLERY = [
    ("smooth (Fermat)",
     CubicForm.from_monomials({(3, 0): 1, (0, 3): 1, (0, 0): 1})),
    ("one node", CubicForm.from_monomials({(1, 1): 1, (3, 0): 1, (0, 3): 1})),
    ("one cusp", CubicForm.from_monomials({(3, 0): 1, (0, 2): 1})),
    ("triangle", CubicForm.from_monomials({(1, 1): 1})),
    ("three concurrent lines",
     CubicForm.from_monomials({(2, 1): 1, (1, 2): 1})),
    ("conic + transversal line",
     CubicForm.from_monomials({(1, 1): 1, (3, 0): 1})),
    ("conic + tangent line",
     CubicForm.from_monomials({(1, 0): 1, (0, 2): -1})),
    ("double line + line", CubicForm.from_monomials({(2, 1): 1})),
    ("triple line", CubicForm.from_monomials({(3, 0): 1})),
]

print(f"{'curve':<28}{'label':<8}{'components':<18}singular points")
for name, f in GALLERY:
    label, cert = classify(f)
    sing = ", ".join(sp.local_type for sp in cert.singular.points) or "none"
    print(f"{name:<28}{str(label):<8}{cert.component_structure:<18}{sing}")

print()
print("The label is a projective invariant: transforming the curve by any")
print("invertible 3x3 matrix does not change it (see the acceptance tests).")
