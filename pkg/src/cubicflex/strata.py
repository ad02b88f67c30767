"""Equisingular classification of cubics and discriminant geometry.

classify() places a cubic into one of the nine equisingular classes
(smooth, one/two/three nodes, cusp, tacnode, triple point, double line,
triple line) with a certificate tying the component structure to the
observed singular points.

pencil_crossings() locates every parameter on a pencil where the member
degenerates, by a multistart Newton on the gradient system in (point,
parameter), and cross-checks the result against an interpolated
degree-12 discriminant polynomial whose root multiplicities are the
arbiter of crossing multiplicity.

net_cusp_members() finds the cuspidal members of a two-parameter net by
a four-equation multistart Newton.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import NamedTuple

import numpy as np

from .errors import CrossingError, NumericalError
from .forms import (EXP1, EXP2, EXP3, MONOMIAL_INDEX, MONOMIALS, CubicForm,
                    ProjPoint, eval_coeffs, gradient_coeffs,
                    gradient_coeffs_quadratic, monomial_values, proj_distance,
                    substitute_linear)
from .locus import SingularSet, local_expansion, singular_points
from .roots import RootSet, UniPoly, all_roots

# variable z_v corresponds to index 2 - v in the degree-1 monomial basis
_VAR1 = (2, 1, 0)

CROSSING_SEED = 20240918
NET_SEED = 20240919
DISCRIMINANT_SAMPLES = 25


class StratumLabel(str, Enum):
    SMOOTH = "Smooth"
    B1 = "B1"        # irreducible, one node
    B21 = "B21"      # conic + transversal line, two nodes
    B22 = "B22"      # irreducible cuspidal
    B31 = "B31"      # three lines in general position, three nodes
    B32 = "B32"      # conic + tangent line, tacnode
    B4 = "B4"        # three concurrent lines, ordinary triple point
    B5 = "B5"        # double line + line
    B7 = "B7"        # triple line

    def __str__(self):
        return self.value


_STRUCTURE = {
    StratumLabel.SMOOTH: ("irreducible", ()),
    StratumLabel.B1: ("irreducible", ()),
    StratumLabel.B22: ("irreducible", ()),
    StratumLabel.B21: ("conic+line", (False, False)),
    StratumLabel.B32: ("conic+line", (True,)),
    StratumLabel.B31: ("three-lines", (False, False, False)),
    StratumLabel.B4: ("three-lines", (False,)),
    StratumLabel.B5: ("double-line+line", (False,)),
    StratumLabel.B7: ("triple-line", ()),
}


@dataclass(frozen=True)
class Certificate:
    singular: SingularSet
    component_structure: str
    tangency_flags: tuple
    notes: str = ""

    def to_json_dict(self):
        pts = [{"coords": [[c.real, c.imag] for c in sp.point.coords],
                "local_type": sp.local_type} for sp in self.singular.points]
        d = {"singular_points": pts,
             "component_structure": self.component_structure,
             "tangency_flags": list(self.tangency_flags)}
        if self.singular.singular_line is not None:
            d["singular_line"] = [[c.real, c.imag]
                                  for c in self.singular.singular_line]
        if self.notes:
            d["notes"] = self.notes
        return d


def _certificate(label, sing, notes=""):
    structure, flags = _STRUCTURE[label]
    return Certificate(singular=sing, component_structure=structure,
                       tangency_flags=flags, notes=notes)


# ---------------------------------------------------------------------------
# division and factor tests

def _line_multiplication_matrix(ell):
    """The 10x6 matrix of q -> ell*q from quadrics to cubics."""
    L = np.zeros((10, 6), dtype=complex)
    for j, e2 in enumerate(EXP2):
        for v in range(3):
            e3 = list(e2)
            e3[v] += 1
            L[MONOMIAL_INDEX[(e3[0], e3[1])], j] += ell[v]
    return L


def line_division_residual(coeffs, ell):
    """Relative residual of dividing the cubic by the linear form ell.

    Close to zero exactly when the line ell = 0 is a component.
    """
    c = np.asarray(coeffs, dtype=complex)
    ell = np.asarray(ell, dtype=complex)
    L = _line_multiplication_matrix(ell / np.abs(ell).max())
    q, res, *_ = np.linalg.lstsq(L, c, rcond=None)
    return float(np.linalg.norm(c - L @ q) / np.linalg.norm(c))


def _binary_quadratic_roots(a, b, c):
    """Root directions (u, v) of a u^2 + b uv + c v^2, numerically stable
    for any coefficient pattern with at least one large coefficient."""
    scale = max(abs(a), abs(b), abs(c))
    if abs(a) < 1e-13 * scale and abs(c) < 1e-13 * scale:
        return [(1.0 + 0j, 0.0 + 0j), (0.0 + 0j, 1.0 + 0j)]    # ~ b uv
    swap = abs(c) > abs(a)
    if swap:
        a, c = c, a
    disc = np.sqrt(b * b - 4 * a * c)
    q = -(b + disc) / 2 if abs(b + disc) >= abs(b - disc) else -(b - disc) / 2
    if abs(q) < 1e-13 * scale:
        roots = [-b / (2 * a)] * 2
    else:
        roots = [q / a, c / q]
    dirs = [(r, 1.0 + 0j) for r in roots]
    if swap:
        dirs = [(v, u) for (u, v) in dirs]
    return dirs


def _branch_tangents(coeffs, node):
    """The two tangent lines (dual coefficient vectors) at a node."""
    p = node.coords
    chart = int(np.argmax(np.abs(p)))
    free = [v for v in range(3) if v != chart]
    du = np.zeros(3, dtype=complex)
    dv = np.zeros(3, dtype=complex)
    du[free[0]] = 1.0
    dv[free[1]] = 1.0
    E = local_expansion(coeffs, p, du, dv)
    # quadratic part E20 u^2 + E11 uv + E02 v^2 factors into the two
    # branch directions
    lines = []
    for (uu, vv) in _binary_quadratic_roots(E[2, 0], E[1, 1], E[0, 2]):
        d = uu * du + vv * dv
        lines.append(np.cross(p, d))
    return lines


def _is_perfect_cube(coeffs, line):
    """Whether the cubic is proportional to the cube of the given line."""
    ell = np.asarray(line, dtype=complex)
    cube = np.zeros(10, dtype=complex)
    # expand (l1 z1 + l2 z2 + l3 z3)^3 by trinomial coefficients
    for n, (i, j) in enumerate(MONOMIALS):
        k = 3 - i - j
        coef = factorial(3) // (factorial(i) * factorial(j) * factorial(k))
        cube[n] = coef * ell[0] ** i * ell[1] ** j * ell[2] ** k
    return proj_distance(np.asarray(coeffs, dtype=complex), cube) < 1e-8


# ---------------------------------------------------------------------------
# classification

def classify(f):
    """Equisingular class of a cubic, with a certificate.

    Returns (StratumLabel, Certificate).  Raises NumericalError
    ("unclassifiable") when the structural tests conflict.
    """
    fn = f if isinstance(f, CubicForm) else CubicForm(f)
    fn = fn.normalize()
    sing = singular_points(fn)
    if sing.singular_line is not None:
        if _is_perfect_cube(fn.coeffs, sing.singular_line):
            return StratumLabel.B7, _certificate(StratumLabel.B7, sing)
        return StratumLabel.B5, _certificate(StratumLabel.B5, sing)
    types = sing.local_types()
    if types == ():
        return StratumLabel.SMOOTH, _certificate(StratumLabel.SMOOTH, sing)
    if types == ('node',):
        # irreducible unless a branch tangent at the node is a component
        residuals = [line_division_residual(fn.coeffs, ell)
                     for ell in _branch_tangents(fn.coeffs,
                                                 sing.points[0].point)]
        if min(residuals) < 1e-8:
            raise NumericalError(
                "unclassifiable: one node found but a branch tangent "
                f"divides the cubic (residuals {residuals}); a second "
                "singular point was likely missed")
        note = ("branch tangent division residuals "
                f"{residuals[0]:.2e}, {residuals[1]:.2e}")
        return StratumLabel.B1, _certificate(StratumLabel.B1, sing, note)
    if types == ('node', 'node'):
        return StratumLabel.B21, _certificate(StratumLabel.B21, sing)
    if types == ('node', 'node', 'node'):
        return StratumLabel.B31, _certificate(StratumLabel.B31, sing)
    if types == ('cusp',):
        return StratumLabel.B22, _certificate(StratumLabel.B22, sing)
    if types == ('tacnode',):
        return StratumLabel.B32, _certificate(StratumLabel.B32, sing)
    if types == ('triple',):
        return StratumLabel.B4, _certificate(StratumLabel.B4, sing)
    raise NumericalError(
        f"unclassifiable: singular point types {types} match no stratum")


# ---------------------------------------------------------------------------
# numeric discriminant via Macaulay elimination of the gradient quadrics

def _deg4_monomials():
    out = []
    for i in range(4, -1, -1):
        for j in range(4 - i, -1, -1):
            out.append((i, j, 4 - i - j))
    return out


MON4 = _deg4_monomials()
MON4_INDEX = {m: n for n, m in enumerate(MON4)}


def _macaulay_structure():
    """Row plan: for each degree-4 monomial, which quadric times which
    degree-2 multiplier produces it, plus the scatter columns."""
    rows = []
    for alpha in MON4:
        if alpha[0] >= 2:
            eq, mult = 0, (alpha[0] - 2, alpha[1], alpha[2])
        elif alpha[1] >= 2:
            eq, mult = 1, (alpha[0], alpha[1] - 2, alpha[2])
        else:
            eq, mult = 2, (alpha[0], alpha[1], alpha[2] - 2)
        cols = []
        for e2 in EXP2:
            tgt = (mult[0] + e2[0], mult[1] + e2[1],
                   mult[2] + (2 - e2[0] - e2[1]))
            cols.append(MON4_INDEX[tgt])
        rows.append((eq, np.array(cols)))
    reduced2 = [MON4_INDEX[m] for m in ((2, 2, 0), (2, 0, 2), (0, 2, 2))]
    return rows, np.array(reduced2)


_MACAULAY_ROWS, _MACAULAY_MINOR = _macaulay_structure()


def _macaulay_dets(Q):
    """(det of the 15x15 elimination matrix, det of its extraneous 3x3
    minor) for three quadrics given as a (3, 6) coefficient array."""
    M = np.zeros((15, 15), dtype=complex)
    for r, (eq, cols) in enumerate(_MACAULAY_ROWS):
        M[r, cols] = Q[eq]
    minor = M[np.ix_(_MACAULAY_MINOR, _MACAULAY_MINOR)]
    return np.linalg.det(M), np.linalg.det(minor)


def discriminant_value(f):
    """Numeric discriminant: the resultant of the three gradient
    quadrics, computed as a Macaulay determinant ratio.  Vanishes exactly
    on singular cubics; scales with the twelfth power of the input."""
    fn = f if isinstance(f, CubicForm) else CubicForm(f)
    det15, det3 = _macaulay_dets(gradient_coeffs(fn.coeffs))
    if abs(det3) < 1e-140:
        # fall back to a unitary change of coordinates
        rng = np.random.default_rng(5)
        U, _ = np.linalg.qr(rng.standard_normal((3, 3))
                            + 1j * rng.standard_normal((3, 3)))
        det15, det3 = _macaulay_dets(gradient_coeffs(fn.transform(U).coeffs))
    return det15 / det3


def _pencil_discriminant_samples(c0, c1, radius):
    """Discriminant values at sample parameters on a circle."""
    n = DISCRIMINANT_SAMPLES
    us = radius * np.exp(2j * np.pi * np.arange(n) / n)
    g0 = gradient_coeffs(c0)
    g1 = gradient_coeffs(c1)
    vals = np.empty(n, dtype=complex)
    for k, u in enumerate(us):
        det15, det3 = _macaulay_dets(g0 + u * g1)
        if abs(det3) < 1e-120:
            return None
        vals[k] = det15 / det3
    return vals


def _fixed_unitaries():
    rng = np.random.default_rng(5)
    out = [None]
    for _ in range(2):
        U, _r = np.linalg.qr(rng.standard_normal((3, 3))
                             + 1j * rng.standard_normal((3, 3)))
        out.append(U)
    return out


_SAMPLING_FRAMES = _fixed_unitaries()


def pencil_discriminant_fit(pencil, chart=0):
    """Ascending coefficients of the degree-<=12 discriminant polynomial
    on one affine chart of the pencil (chart 0: f0 + u f1, chart 1:
    v f0 + f1), interpolated from circle samples.

    Sparse coefficient patterns can kill the extraneous minor of the
    elimination matrix identically; a fixed unitary change of plane
    coordinates rescales the discriminant by a nonzero constant without
    moving its roots, so retry in rotated frames.
    """
    c0, c1 = pencil.f0.coeffs, pencil.f1.coeffs
    if chart == 1:
        c0, c1 = c1, c0
    # a pencil lying inside the discriminant yields pure rounding noise,
    # dozens of orders below any honest degree-12 value at this scale
    zero_floor = 1e-20 * max(np.abs(c0).max(), np.abs(c1).max()) ** 12
    for U in _SAMPLING_FRAMES:
        a0 = c0 if U is None else substitute_linear(c0, U)
        a1 = c1 if U is None else substitute_linear(c1, U)
        for radius in (1.0, 1.37, 0.73):
            vals = _pencil_discriminant_samples(a0, a1, radius)
            if vals is None:
                continue
            if np.abs(vals).max() < zero_floor:
                return np.zeros(13, dtype=complex)
            coeffs = np.fft.fft(vals) / len(vals)
            coeffs = coeffs / radius ** np.arange(len(vals))
            tail = np.abs(coeffs[13:]).max()
            scale = np.abs(coeffs).max()
            if tail < 1e-6 * scale:
                return coeffs[:13]
    raise CrossingError(
        "discriminant interpolation failed on every sample circle")


# ---------------------------------------------------------------------------
# crossing search on a pencil

def _second_partial_forms(coeffs):
    """(3,3,3) array: [a][b] = linear-form coefficients of d2f/dza dzb."""
    g = gradient_coeffs(coeffs)
    return np.stack([gradient_coeffs_quadratic(g[a]) for a in range(3)])


def _crossing_newton(pencil, pchart, zchart, starts, iters=80):
    """Multistart Newton for {grad F(t, z) = 0} in (z_free, u)."""
    c0, c1 = pencil.f0.coeffs, pencil.f1.coeffs
    if pchart == 1:
        c0, c1 = c1, c0
    g0, g1 = gradient_coeffs(c0), gradient_coeffs(c1)
    sp0, sp1 = _second_partial_forms(c0), _second_partial_forms(c1)
    free = [v for v in range(3) if v != zchart]
    n = len(starts)
    z = np.ones((n, 3), dtype=complex)
    z[:, free[0]] = starts[:, 0]
    z[:, free[1]] = starts[:, 1]
    u = starts[:, 2].copy()
    with np.errstate(invalid='ignore', over='ignore'):
        for _ in range(iters):
            mv2 = monomial_values(z, EXP2)              # (n, 6)
            mv1 = monomial_values(z, EXP1)              # (n, 3)
            G = mv2 @ g0.T + u[:, None] * (mv2 @ g1.T)  # (n, 3) residuals
            J = np.empty((n, 3, 3), dtype=complex)
            for a in range(3):
                rows0 = mv1 @ sp0[a].T                  # (n, 3)
                rows1 = mv1 @ sp1[a].T
                J[:, a, 0] = rows0[:, free[0]] + u * rows1[:, free[0]]
                J[:, a, 1] = rows0[:, free[1]] + u * rows1[:, free[1]]
            J[:, :, 2] = mv2 @ g1.T
            ok = np.isfinite(G).all(axis=1) & np.isfinite(J).all(axis=(1, 2))
            step = np.zeros((n, 3), dtype=complex)
            if ok.any():
                try:
                    step[ok] = np.linalg.solve(J[ok], G[ok][..., None])[..., 0]
                except np.linalg.LinAlgError:
                    for i in np.nonzero(ok)[0]:
                        try:
                            step[i] = np.linalg.solve(J[i], G[i])
                        except np.linalg.LinAlgError:
                            step[i] = np.nan
            z[:, free[0]] -= step[:, 0]
            z[:, free[1]] -= step[:, 1]
            u -= step[:, 2]
            big = (np.abs(z).max(axis=1) > 1e8) | (np.abs(u) > 1e8)
            z[big, free[0]] = np.nan
            u[big] = np.nan
            moving = np.abs(step).max(axis=1) > 1e-15 * (1 + np.abs(u))
            if not np.any(moving & np.isfinite(u)):
                break
    mv2 = monomial_values(z, EXP2)
    G = mv2 @ g0.T + u[:, None] * (mv2 @ g1.T)
    res = np.abs(G).max(axis=1)
    scale = np.maximum(np.abs(z).max(axis=1) ** 2, 1.0) * (1 + np.abs(u))
    good = np.isfinite(res) & (res < 1e-9 * scale)
    good &= np.abs(u) < 1e7
    return z[good], u[good]


def _refine_cusp_crossing(pencil, pchart, z0, u0, iters=60):
    """Newton on {f_a, f_b, det H2} near a degenerate crossing; regular
    at a cuspidal member where the plain gradient system is not."""
    c0, c1 = pencil.f0.coeffs, pencil.f1.coeffs
    if pchart == 1:
        c0, c1 = c1, c0
    g0, g1 = gradient_coeffs(c0), gradient_coeffs(c1)
    sp0, sp1 = _second_partial_forms(c0), _second_partial_forms(c1)
    zchart = int(np.argmax(np.abs(z0)))
    a, b = [v for v in range(3) if v != zchart]
    z = np.array(z0 / z0[zchart], dtype=complex)
    u = complex(u0)
    third0 = sp0            # constants: third partials tensor = sp[a][b][c]
    third1 = sp1
    for _ in range(iters):
        mv2 = monomial_values(z[None, :], EXP2)[0]
        mv1 = monomial_values(z[None, :], EXP1)[0]
        grad = mv2 @ g0.T + u * (mv2 @ g1.T)
        spv = np.einsum('abc,c->ab', sp0, mv1) + u * np.einsum(
            'abc,c->ab', sp1, mv1)                      # second partials
        det2 = spv[a, a] * spv[b, b] - spv[a, b] ** 2
        r = np.array([grad[a], grad[b], det2])
        # derivative of det2 w.r.t. coordinate w uses constant third partials
        T = third0 + u * third1                          # (3,3,3)

        def ddet2(w):
            m = _VAR1[w]
            return (T[a, a][m] * spv[b, b] + spv[a, a] * T[b, b][m]
                    - 2 * spv[a, b] * T[a, b][m])

        spv1 = np.einsum('abc,c->ab', sp1, mv1)
        ddet2_u = (spv1[a, a] * spv[b, b] + spv[a, a] * spv1[b, b]
                   - 2 * spv[a, b] * spv1[a, b])
        gu = mv2 @ g1.T
        J = np.array([
            [spv[a, a], spv[a, b], gu[a]],
            [spv[b, a], spv[b, b], gu[b]],
            [ddet2(a), ddet2(b), ddet2_u],
        ])
        try:
            step = np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            return None
        z[a] -= step[0]
        z[b] -= step[1]
        u -= step[2]
        if np.abs(step).max() < 1e-14 * (1 + abs(u)):
            break
    mv2 = monomial_values(z[None, :], EXP2)[0]
    grad = mv2 @ g0.T + u * (mv2 @ g1.T)
    if np.abs(grad).max() > 1e-8 * max(1.0, np.abs(z).max() ** 2):
        return None
    return z, u


@dataclass(frozen=True)
class Crossing:
    parameter: np.ndarray        # (t1, t2), normalized
    multiplicity: int
    label: StratumLabel
    member: CubicForm
    witness: ProjPoint           # a singular point of the member

    def chart_value(self):
        """The affine value t2/t1 (inf -> None)."""
        if abs(self.parameter[0]) < 1e-9 * abs(self.parameter[1]):
            return None
        return self.parameter[1] / self.parameter[0]


@dataclass(frozen=True)
class PencilCrossings:
    parameters: RootSet          # fitted discriminant roots, chart t2/t1
    infinite_multiplicity: int   # multiplicity carried by t = (0, 1)
    crossings: tuple

    def total_multiplicity(self):
        return int(sum(c.multiplicity for c in self.crossings))

    def labels(self):
        return tuple(c.label for c in self.crossings)


def _crossing_starts(count, seed):
    rng = np.random.default_rng(seed)
    s = rng.standard_normal((count, 3)) + 1j * rng.standard_normal((count, 3))
    return s * 1.4


def pencil_crossings(pencil, starts_per_chart=200, seed=CROSSING_SEED,
                     cluster_radius=2e-3):
    """All parameters where a pencil member is singular, classified.

    Crossing parameters come from a multistart Newton on the gradient
    system in (point, parameter); multiplicities come from the root
    structure of the interpolated discriminant polynomial.  The two
    methods must agree, else "count mismatch".
    """
    fit = pencil_discriminant_fit(pencil, chart=0)
    scale0 = max(pencil.f0.scale(), pencil.f1.scale()) ** 12
    if np.abs(fit).max() < 1e-10 * max(scale0, 1e-280):
        raise CrossingError("pencil inside discriminant: the interpolated "
                            "discriminant vanishes identically")
    poly = UniPoly(fit, rel=1e-8)
    rs = all_roots(poly, cluster_radius=cluster_radius)
    inf_mult = 12 - poly.degree

    # Newton search for witnesses
    found = []          # (u_proj (2,), zpoint)
    starts = _crossing_starts(starts_per_chart, seed)
    for pchart in (0, 1):
        for zchart in range(3):
            z, u = _crossing_newton(pencil, pchart, zchart, starts)
            for zi, ui in zip(z, u):
                t = np.array([1.0, ui]) if pchart == 0 else np.array([ui, 1.0])
                found.append((t, ProjPoint(zi)))
    dedup = []
    for t, w in found:
        if all(proj_distance(t, t2) > 1e-6 for t2, _ in dedup):
            dedup.append((t, w))

    # match Newton crossings against fitted roots
    fitted = [(np.array([1.0, r]), int(m))
              for r, m in zip(rs.roots, rs.multiplicities)]
    if inf_mult > 0:
        fitted.append((np.array([0.0, 1.0]), inf_mult))
    crossings = []
    used = set()
    for t_fit, m in fitted:
        match = [(i, w) for i, (t, w) in enumerate(dedup)
                 if proj_distance(t, t_fit) < 10 * cluster_radius]
        if not match:
            raise CrossingError(
                "count mismatch: interpolated discriminant root at "
                f"{t_fit} has no Newton witness")
        i, witness = match[0]
        for i2, _ in match:
            used.add(i2)
        t_use = dedup[i][0]
        label = _classify_crossing(pencil, t_use, witness)
        # canonical parameter: (1, u) on the finite chart, (0, 1) at infinity
        if abs(t_use[0]) > 1e-9 * abs(t_use[1]):
            t_norm = np.array([1.0, t_use[1] / t_use[0]])
        else:
            t_norm = np.array([0.0, 1.0])
        crossings.append(Crossing(parameter=t_norm, multiplicity=m,
                                  label=label, member=pencil.member(t_norm),
                                  witness=witness))
    if len(used) != len(dedup):
        extra = [t for i, (t, _) in enumerate(dedup) if i not in used]
        raise CrossingError(
            f"count mismatch: Newton found crossings {extra} outside the "
            "interpolated discriminant roots")
    if sum(c.multiplicity for c in crossings) != 12:
        raise CrossingError(
            "count mismatch: crossing multiplicities sum to "
            f"{sum(c.multiplicity for c in crossings)}, not 12")
    crossings.sort(key=lambda c: (c.parameter[0] == 0.0,
                                  np.round(c.parameter[1].real, 9),
                                  np.round(c.parameter[1].imag, 9)))
    return PencilCrossings(parameters=rs, infinite_multiplicity=inf_mult,
                           crossings=tuple(crossings))


def _classify_crossing(pencil, t, witness):
    """Stratum label of the member at a crossing.

    A crossing parameter from the plain gradient Newton is only
    half-precision accurate when the singular point is degenerate (the
    system's Jacobian drops rank at a cusp), so a Smooth or failed
    classification triggers a refinement pass through the regularized
    system {f_a, f_b, det H2} before retrying.
    """
    label = None
    try:
        label, _ = classify(pencil.member(t))
    except NumericalError:
        pass
    if label is not None and label is not StratumLabel.SMOOTH:
        return label
    pchart = 0 if abs(t[0]) >= abs(t[1]) else 1
    u0 = t[1] / t[0] if pchart == 0 else t[0] / t[1]
    ref = _refine_cusp_crossing(pencil, pchart, witness.coords, u0)
    if ref is None:
        raise NumericalError(
            f"crossing at {t} could not be classified or refined")
    _, u = ref
    t2 = np.array([1.0, u]) if pchart == 0 else np.array([u, 1.0])
    label, _ = classify(pencil.member(t2))
    if label is StratumLabel.SMOOTH:
        raise NumericalError(
            f"crossing at {t} classifies as smooth after refinement")
    return label


# ---------------------------------------------------------------------------
# cuspidal members of a net

class NetCusp(NamedTuple):
    alpha: complex
    beta: complex
    point: ProjPoint
    residuals: dict


def _net_newton(net, zchart, starts_xy, iters=60):
    """Multistart Newton on {f, f_a, f_b, det H2} in (x, y, alpha, beta)
    for the member f0 + alpha f1 + beta f2, z_chart pinned to 1."""
    c = [net.f0.coeffs, net.f1.coeffs, net.f2.coeffs]
    g = [gradient_coeffs(ci) for ci in c]
    sp = np.stack([_second_partial_forms(ci) for ci in c])   # (3,3,3,3)
    a, b = [v for v in range(3) if v != zchart]
    ma, mb = _VAR1[a], _VAR1[b]
    n = len(starts_xy)
    z = np.ones((n, 3), dtype=complex)
    z[:, a] = starts_xy[:, 0]
    z[:, b] = starts_xy[:, 1]

    with np.errstate(invalid='ignore', over='ignore', divide='ignore'):
        # seed (alpha, beta) by solving the two gradient equations, which
        # are linear in the net parameters, at the start point
        mv2 = monomial_values(z, EXP2)
        ga = [mv2 @ gi.T for gi in g]                    # each (n, 3)
        det = (ga[1][:, a] * ga[2][:, b] - ga[2][:, a] * ga[1][:, b])
        det = np.where(np.abs(det) < 1e-280, np.nan, det)
        al = (-ga[0][:, a] * ga[2][:, b] + ga[0][:, b] * ga[2][:, a]) / det
        be = (-ga[1][:, a] * ga[0][:, b] + ga[1][:, b] * ga[0][:, a]) / det

        for _ in range(iters):
            mv3 = monomial_values(z, EXP3)
            mv2 = monomial_values(z, EXP2)
            mv1 = monomial_values(z, EXP1)
            fv = [mv3 @ ci for ci in c]                  # each (n,)
            fval = fv[0] + al * fv[1] + be * fv[2]
            ga = [mv2 @ gi.T for gi in g]
            grad = (ga[0] + al[:, None] * ga[1] + be[:, None] * ga[2])
            spz = np.einsum('kabm,nm->knab', sp, mv1)    # (3, n, 3, 3)
            spv = (spz[0] + al[:, None, None] * spz[1]
                   + be[:, None, None] * spz[2])
            det2 = spv[:, a, a] * spv[:, b, b] - spv[:, a, b] ** 2
            r = np.stack([fval, grad[:, a], grad[:, b], det2], axis=1)

            # third partials are constants: T[k] = sp[k], combined with
            # the current (alpha, beta)
            T = (sp[0][None] + al[:, None, None, None] * sp[1][None]
                 + be[:, None, None, None] * sp[2][None])

            def ddet2_x(m):
                return (T[:, a, a, m] * spv[:, b, b]
                        + spv[:, a, a] * T[:, b, b, m]
                        - 2 * spv[:, a, b] * T[:, a, b, m])

            def ddet2_p(k):
                return (spz[k][:, a, a] * spv[:, b, b]
                        + spv[:, a, a] * spz[k][:, b, b]
                        - 2 * spv[:, a, b] * spz[k][:, a, b])

            J = np.empty((n, 4, 4), dtype=complex)
            J[:, 0, 0] = grad[:, a]
            J[:, 0, 1] = grad[:, b]
            J[:, 0, 2] = fv[1]
            J[:, 0, 3] = fv[2]
            J[:, 1, 0] = spv[:, a, a]
            J[:, 1, 1] = spv[:, a, b]
            J[:, 1, 2] = ga[1][:, a]
            J[:, 1, 3] = ga[2][:, a]
            J[:, 2, 0] = spv[:, b, a]
            J[:, 2, 1] = spv[:, b, b]
            J[:, 2, 2] = ga[1][:, b]
            J[:, 2, 3] = ga[2][:, b]
            J[:, 3, 0] = ddet2_x(ma)
            J[:, 3, 1] = ddet2_x(mb)
            J[:, 3, 2] = ddet2_p(1)
            J[:, 3, 3] = ddet2_p(2)
            ok = np.isfinite(r).all(axis=1) & np.isfinite(J).all(axis=(1, 2))
            step = np.full((n, 4), np.nan, dtype=complex)
            if ok.any():
                try:
                    step[ok] = np.linalg.solve(J[ok], r[ok][..., None])[..., 0]
                except np.linalg.LinAlgError:
                    for i in np.nonzero(ok)[0]:
                        try:
                            step[i] = np.linalg.solve(J[i], r[i])
                        except np.linalg.LinAlgError:
                            pass
            z[:, a] -= step[:, 0]
            z[:, b] -= step[:, 1]
            al -= step[:, 2]
            be -= step[:, 3]
            big = (np.abs(z).max(axis=1) > 1e8) | (np.abs(al) > 1e8) \
                | (np.abs(be) > 1e8)
            al[big] = np.nan
            moving = (np.abs(step).max(axis=1)
                      > 1e-15 * (1 + np.abs(al) + np.abs(be)))
            if not np.any(moving & np.isfinite(al)):
                break

        mv3 = monomial_values(z, EXP3)
        mv2 = monomial_values(z, EXP2)
        mv1 = monomial_values(z, EXP1)
        fval = np.abs(mv3 @ c[0] + al * (mv3 @ c[1]) + be * (mv3 @ c[2]))
        ga = [mv2 @ gi.T for gi in g]
        grad = ga[0] + al[:, None] * ga[1] + be[:, None] * ga[2]
        gres = np.abs(grad).max(axis=1)
        spz = np.einsum('kabm,nm->knab', sp, mv1)
        spv = (spz[0] + al[:, None, None] * spz[1]
               + be[:, None, None] * spz[2])
        d2res = np.abs(spv[:, a, a] * spv[:, b, b] - spv[:, a, b] ** 2)
    msc = 1.0 + np.abs(al) + np.abs(be)
    zsc = np.maximum(np.abs(z).max(axis=1), 1.0)
    good = (np.isfinite(fval) & (fval < 1e-9 * msc * zsc ** 3)
            & (gres < 1e-9 * msc * zsc ** 2)
            & (d2res < 1e-8 * (msc * zsc) ** 2))
    good &= (np.abs(al) < 1e6) & (np.abs(be) < 1e6)
    good &= np.abs(z).max(axis=1) < 1e6
    return z[good], al[good], be[good]


def net_cusp_members(net, starts=2000, seed=NET_SEED):
    """All cuspidal members f0 + alpha f1 + beta f2 of a net.

    Multistart Newton on the four-equation cusp system per point chart,
    deduplicated across charts, each hit verified by classification.
    Raises "insufficient starts" when doubling the start count changes
    the result.
    """
    first = _net_cusp_search(net, starts, seed)
    second = _net_cusp_search(net, 2 * starts, seed + 1)
    if len(first) != len(second):
        raise CrossingError(
            f"insufficient starts: {len(first)} cuspidal members at "
            f"{starts} starts but {len(second)} at {2 * starts}")
    for (al, be, _, _) in first:
        if not any(abs(al - a2) < 1e-6 and abs(be - b2) < 1e-6
                   for (a2, b2, _, _) in second):
            raise CrossingError(
                "insufficient starts: doubled run found a different set "
                "of cuspidal members")
    return first


def _net_cusp_search(net, starts, seed):
    rng = np.random.default_rng(seed)
    sx = (rng.standard_normal((starts, 2))
          + 1j * rng.standard_normal((starts, 2))) * 1.2
    hits = []
    for zchart in range(3):
        z, al, be = _net_newton(net, zchart, sx)
        for zi, a_i, b_i in zip(z, al, be):
            hits.append((complex(a_i), complex(b_i), ProjPoint(zi)))
    dedup = []
    for (a_i, b_i, p) in hits:
        if all(abs(a_i - a2) > 1e-6 or abs(b_i - b2) > 1e-6
               for (a2, b2, _) in dedup):
            dedup.append((a_i, b_i, p))
    out = []
    for (a_i, b_i, p) in dedup:
        member = CubicForm(net.f0.coeffs + a_i * net.f1.coeffs
                           + b_i * net.f2.coeffs)
        try:
            label, cert = classify(member)
        except NumericalError:
            continue
        if label is not StratumLabel.B22:
            continue
        mn = member.normalize()
        res = {
            "f": float(abs(eval_coeffs(mn.coeffs, p.coords))),
            "grad": float(np.abs(
                monomial_values(p.coords[None, :], EXP2)[0]
                @ gradient_coeffs(mn.coeffs).T).max()),
        }
        out.append(NetCusp(a_i, b_i, p, res))
    out.sort(key=lambda nc: (round(nc.alpha.real, 9), round(nc.alpha.imag, 9),
                             round(nc.beta.real, 9), round(nc.beta.imag, 9)))
    return out
