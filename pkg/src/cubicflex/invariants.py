"""Exact integer invariants of curves and covering surfaces.

Pure arithmetic: the genus of a plane curve with nodes and cusps, the
genus of a double cover via Riemann-Hurwitz, a stratified Euler-number
count for a degree-9 covering branched over a curve with nodes, triple
points and cusps, and Noether's formula.  Any non-integral intermediate
raises; nothing is ever rounded.
"""

from dataclasses import dataclass

from .errors import SchemaError

# Constants of the branch-curve geometry entering covering_euler: the
# discriminant trace in a generic plane has degree 12, genus 10, and 24
# cusps.  Its normalization has Euler number 2 - 2*10 = -18; gluing the
# preimages of each node (2 to 1) and ordinary triple point (3 to 1)
# gives e(B) = -18 - n1 - 2*n2, hence e(B \ Sing B) = e(B) -
# (n1 + n2 + 24) and e(plane \ B) = 3 - e(B).  With the side condition
# n1 + 3*n2 = 21 both collapse to the closed forms used below.
_SMOOTH_PART_EULER_BASE = -84          # e(B \ Sing B) = 3*n2 - 84
_COMPLEMENT_EULER_BASE = 42            # e(plane \ B)  = 42 - n2
_REQUIRED_NODE_WEIGHT = 21             # n1 + 3*n2
_REQUIRED_CUSPS = 24


def _as_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int,)):
        raise SchemaError(f"{name} must be an integer, got {value!r}")
    return int(value)


def plane_curve_genus(degree, nodes, cusps):
    """Geometric genus of a plane curve of the given degree whose only
    singularities are ordinary nodes and ordinary cusps."""
    d = _as_int(degree, "degree")
    n = _as_int(nodes, "nodes")
    c = _as_int(cusps, "cusps")
    if d < 1 or n < 0 or c < 0:
        raise SchemaError("degree must be >= 1 and counts nonnegative")
    g = (d - 1) * (d - 2) // 2 - n - c
    if g < 0:
        raise SchemaError(
            f"impossible curve: {n} nodes + {c} cusps exceed the "
            f"arithmetic genus {(d - 1) * (d - 2) // 2} of degree {d}")
    return g


def hurwitz_double_cover_genus(genus_base, branch_points):
    """Genus of a double cover of a genus-g curve simply branched at the
    given number of points (Riemann-Hurwitz; the count must be even)."""
    g = _as_int(genus_base, "genus_base")
    b = _as_int(branch_points, "branch_points")
    if g < 0 or b < 0:
        raise SchemaError("genus and branch count must be nonnegative")
    if b % 2:
        raise SchemaError(
            f"a double cover needs an even branch count, got {b}")
    cover = 2 * g - 1 + b // 2
    if cover < 0:
        raise SchemaError(
            "no connected double cover: Riemann-Hurwitz gives genus "
            f"{cover}")
    return cover


def covering_euler(n1, n2, cusps):
    """Euler number of the degree-9 inflection covering over the plane,
    stratified over the complement of the branch curve, its smooth part,
    and its nodes (n1), triple points (n2) and cusps.

    Valid only for the geometry at hand: n1 + 3*n2 = 21 and 24 cusps.
    The result is independent of how the weight 21 splits between nodes
    and triple points.
    """
    a = _as_int(n1, "n1")
    b = _as_int(n2, "n2")
    c = _as_int(cusps, "cusps")
    if a < 0 or b < 0:
        raise SchemaError("point counts must be nonnegative")
    if a + 3 * b != _REQUIRED_NODE_WEIGHT:
        raise SchemaError(
            f"node/triple-point counts must satisfy n1 + 3*n2 = "
            f"{_REQUIRED_NODE_WEIGHT}, got {a} + 3*{b} = {a + 3 * b}")
    if c != _REQUIRED_CUSPS:
        raise SchemaError(
            f"the branch curve has {_REQUIRED_CUSPS} cusps, got {c}")
    smooth_part = 3 * b + _SMOOTH_PART_EULER_BASE
    complement = _COMPLEMENT_EULER_BASE - b
    return 9 * complement + 5 * smooth_part + 4 * a + 6 * b + 2 * c


def noether_chi(k_squared, euler):
    """Holomorphic Euler characteristic from Noether's formula
    chi = (K^2 + e)/12; non-divisible input is an error."""
    k2 = _as_int(k_squared, "k_squared")
    e = _as_int(euler, "euler")
    if (k2 + e) % 12:
        raise SchemaError(
            f"K^2 + e = {k2 + e} is not divisible by 12; Noether's "
            "formula cannot hold for a smooth surface")
    return (k2 + e) // 12


@dataclass(frozen=True)
class CurveNumerics:
    """Degree and singularity counts of a nodal-cuspidal plane curve,
    with the genus they force."""

    degree: int
    nodes: int
    cusps: int
    genus: int

    def __post_init__(self):
        expected = plane_curve_genus(self.degree, self.nodes, self.cusps)
        if self.genus != expected:
            raise SchemaError(
                f"genus {self.genus} inconsistent with degree/singularity "
                f"data (expected {expected})")


@dataclass(frozen=True)
class SurfaceNumerics:
    """Chern/Hodge numbers of the covering surface with the ramification
    genus; Noether consistency is enforced on construction."""

    k_squared: int
    euler: int
    chi: int
    genus_ramification: int

    def __post_init__(self):
        expected = noether_chi(self.k_squared, self.euler)
        if self.chi != expected:
            raise SchemaError(
                f"chi {self.chi} violates Noether's formula "
                f"(expected {expected})")


def invariant_chain():
    """The full numeric chain for the inflection covering: branch-curve
    genus, ramification genus, covering Euler number, and chi."""
    genus_branch = plane_curve_genus(12, 21, 24)
    genus_dual = plane_curve_genus(18, 84, 42)
    genus_ram = hurwitz_double_cover_genus(genus_branch, 24)
    euler = covering_euler(21, 0, 24)
    chi = noether_chi(18, euler)
    return {
        "branch_curve": CurveNumerics(12, 21, 24, genus_branch),
        "dual_curve": CurveNumerics(18, 84, 42, genus_dual),
        "surface": SurfaceNumerics(18, euler, chi, genus_ram),
    }
