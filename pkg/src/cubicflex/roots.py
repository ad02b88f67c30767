"""Univariate root finding and chart-line resultants.

all_roots approximates every root of a dense complex polynomial
simultaneously (Aberth-Ehrlich iteration from a deterministic initial
ring), polishes with Newton, and merges clusters into multiple roots.
The cluster cardinality is cross-checked against derivative smallness so
a disagreement raises instead of guessing.

resultant_on_chart eliminates one projective variable from a pair of
cubic forms after restricting the other two to a parametrized line; the
result is the (formally degree-9) resultant as a polynomial in the line
parameter, computed as the determinant of the 6x6 Sylvester matrix with
exact coefficient convolutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (CommonComponentError, DegenerateInputError,
                     MultiplicityError, RootFindingError)
from .forms import MONOMIALS

TRIM_REL = 1e-14


def trim(coeffs, rel=TRIM_REL):
    """Drop leading (highest-degree) coefficients below rel * max modulus."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        return c
    m = np.abs(c).max()
    if m == 0.0:
        return np.zeros(0, dtype=complex)
    keep = np.abs(c) > rel * m
    last = int(np.nonzero(keep)[0].max())
    return c[:last + 1].copy()


@dataclass
class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    coeffs: np.ndarray

    def __init__(self, coeffs, rel=TRIM_REL):
        self.coeffs = trim(coeffs, rel)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc

    def derivative(self):
        if self.degree <= 0:
            return UniPoly(np.zeros(1))
        n = np.arange(1, len(self.coeffs))
        return UniPoly(self.coeffs[1:] * n)

    def is_zero(self):
        return self.degree < 0 or np.abs(self.coeffs).max() == 0.0


@dataclass
class RootSet:
    """Roots with multiplicities and scaled residuals."""

    roots: np.ndarray
    multiplicities: np.ndarray
    residuals: np.ndarray

    def total_multiplicity(self):
        return int(self.multiplicities.sum())

    def by_multiplicity(self):
        """Sorted multiplicity signature, largest first."""
        return tuple(sorted((int(m) for m in self.multiplicities),
                            reverse=True))


def _initial_ring(monic, n):
    # Cauchy bound on root moduli; deterministic phase offset breaks the
    # symmetry of polynomials like z^n - 1
    bound = 1.0 + np.abs(monic[:-1]).max() if n > 0 else 1.0
    k = np.arange(n)
    return 0.6 * bound * np.exp(2j * np.pi * (k + 0.35) / n + 0.41j)


def _aberth(poly, dpoly, z, max_iters, tol):
    n = len(z)
    best = None
    best_res = np.inf
    stall = 0
    for _ in range(max_iters):
        pv = poly(z)
        dv = dpoly(z)
        dv = np.where(np.abs(dv) < 1e-300, 1e-300, dv)
        newton = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        repulse = inv.sum(axis=1)
        denom = 1.0 - newton * repulse
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        w = newton / denom
        z = z - w
        res = np.abs(poly(z)).max()
        if res < best_res * 0.95:
            best_res = res
            best = z.copy()
            stall = 0
        else:
            stall += 1
        if np.abs(w).max() < tol * (1.0 + np.abs(z).max()):
            return z
        if stall > 40:
            break
    return best if best is not None else z


def _newton_polish(poly, dpoly, z, steps=2):
    # monotone-guarded: a step is kept only if it reduces |p|, so cluster
    # members sitting at the evaluation noise floor are left alone
    for _ in range(steps):
        pv = poly(z)
        dv = dpoly(z)
        ok = np.abs(dv) > 1e-250
        step = np.where(ok, pv / np.where(ok, dv, 1.0), 0.0)
        cand = z - step
        better = np.abs(poly(cand)) < np.abs(pv)
        z = np.where(better, cand, z)
    return z


def _cluster(z, radius):
    n = len(z)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(z[a] - z[b]) <= radius * (1.0 + max(abs(z[a]), abs(z[b]))):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def all_roots(poly, cluster_radius=1e-5, max_iters=600, tol=1e-14):
    """All complex roots of a UniPoly (or coefficient array).

    Returns a RootSet; the sum of multiplicities always equals the degree
    after trimming.  Simple roots must reach the residual contract 1e-8;
    a cluster of size >= 2 must sit where the derivative nearly vanishes,
    otherwise a MultiplicityError is raised.
    """
    p = poly if isinstance(poly, UniPoly) else UniPoly(poly)
    if p.is_zero():
        raise DegenerateInputError("zero polynomial has no root set")
    n = p.degree
    if n == 0:
        return RootSet(np.zeros(0, dtype=complex), np.zeros(0, dtype=int),
                       np.zeros(0))
    monic = p.coeffs / p.coeffs[-1]
    pm = UniPoly(monic, rel=0.0)
    dm = pm.derivative()
    if n == 1:
        roots = np.array([-monic[0]])
    else:
        z0 = _initial_ring(monic, n)
        roots = _aberth(pm, dm, z0, max_iters, tol)
        roots = _newton_polish(pm, dm, roots)

    groups = _cluster(roots, cluster_radius)
    centers = []
    mults = []
    for g in groups:
        centers.append(roots[g].mean())
        mults.append(len(g))
    centers = np.array(centers, dtype=complex)
    mults = np.array(mults, dtype=int)

    scaled = np.abs(p(centers)) / (1.0 + np.abs(centers)) ** n
    scaled = scaled / np.abs(p.coeffs).max()

    dscale = np.abs(dm.coeffs).max() if dm.degree >= 0 else 1.0
    for c, m, r in zip(centers, mults, scaled):
        if m == 1 and r > 1e-8:
            raise RootFindingError(
                f"root {c} did not converge (scaled residual {r:.3g})",
                iterates=centers, residuals=scaled)
        if m >= 2:
            dval = abs(dm(np.array([c]))[0]) / (
                dscale * (1.0 + abs(c)) ** max(dm.degree, 0))
            if dval > 1e-2:
                raise MultiplicityError(
                    f"cluster of {m} roots at {c} but derivative is not "
                    f"small there ({dval:.3g})")
    order = np.lexsort((centers.imag, centers.real, -mults))
    return RootSet(centers[order], mults[order], scaled[order])


# ---------------------------------------------------------------------------
# chart-restricted Sylvester resultants

# a chart picks the variable to eliminate and how the remaining pair is
# parametrized along a line: (1, t) or (t, 1)
CHARTS = [(2, False), (2, True), (0, False), (0, True), (1, False), (1, True)]


def cubic_in_variable(coeffs, elim, swap):
    """Restrict a cubic form to the chart line and collect by z_elim power.

    The two kept variables are set to (1, t), or (t, 1) when swap is
    true.  Returns four UniPoly coefficient arrays c[k] with
    f = sum_k c[k](t) * z_elim^k.
    """
    keep = [v for v in range(3) if v != elim]
    tvar = keep[1] if not swap else keep[0]
    out = [np.zeros(4, dtype=complex) for _ in range(4)]
    for n, (i, j) in enumerate(MONOMIALS):
        if coeffs[n] == 0:
            continue
        e = (i, j, 3 - i - j)
        k = e[elim]
        tdeg = e[tvar]
        out[k][tdeg] += coeffs[n]
    return [trim(c) for c in out]


def _poly_mul_arr(a, b):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=complex)
    return np.convolve(a, b)


def _poly_add_arr(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[:len(b)] += b
    return out


def _det_poly(rows):
    """Determinant of a matrix of polynomial (ndarray) entries.

    Laplace expansion along the first remaining row with memoization on
    column subsets; zero entries are pruned so banded Sylvester matrices
    stay cheap.
    """
    n = len(rows)
    memo = {}

    def minor(r, cols):
        if r == n:
            return np.ones(1, dtype=complex)
        key = cols
        got = memo.get((r, key))
        if got is not None:
            return got
        acc = np.zeros(0, dtype=complex)
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if len(entry) == 0:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            if len(sub) == 0:
                continue
            term = _poly_mul_arr(entry, sub)
            if pos % 2 == 1:
                term = -term
            acc = _poly_add_arr(acc, term)
        memo[(r, key)] = acc
        return acc

    return minor(0, tuple(range(n)))


def sylvester_resultant(p, q):
    """Resultant of two formal cubics with polynomial coefficients.

    p, q: length-4 lists of ascending UniPoly coefficient arrays.
    """
    zero = np.zeros(0, dtype=complex)
    p = [np.asarray(c, dtype=complex) for c in p]
    q = [np.asarray(c, dtype=complex) for c in q]
    rows = []
    for shift in range(3):
        row = [zero] * 6
        for k in range(4):
            row[shift + k] = p[3 - k]
        rows.append(row)
    for shift in range(3):
        row = [zero] * 6
        for k in range(4):
            row[shift + k] = q[3 - k]
        rows.append(row)
    return _det_poly(rows)


def resultant_on_chart(f, g, chart):
    """Degree <= 9 resultant of two cubic forms on a chart line.

    f, g: CubicForm or raw coefficient vectors.  chart: index into CHARTS
    or an (elim, swap) pair.  Raises CommonComponentError when the
    resultant vanishes identically on this chart (which callers must
    confirm on independent charts before concluding a shared component).
    """
    cf = getattr(f, 'coeffs', f)
    cg = getattr(g, 'coeffs', g)
    elim, swap = CHARTS[chart] if isinstance(chart, int) else chart
    p = cubic_in_variable(np.asarray(cf, dtype=complex), elim, swap)
    q = cubic_in_variable(np.asarray(cg, dtype=complex), elim, swap)
    scale = (max(np.abs(np.concatenate([c for c in p if len(c)] or [np.zeros(1)])).max(), 1e-300)
             * max(np.abs(np.concatenate([c for c in q if len(c)] or [np.zeros(1)])).max(), 1e-300)) ** 3
    det = sylvester_resultant(p, q)
    det = trim(det, rel=TRIM_REL)
    if len(det) == 0 or np.abs(det).max() < 1e-12 * scale:
        raise CommonComponentError(
            "resultant vanishes identically on this chart")
    return UniPoly(det)
