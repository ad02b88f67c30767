"""Tests for inflection and singular point extraction.

Expected point tables are frozen here from closed-form solutions so the
numerical pipeline is checked against independent data, not against
itself.
"""

import numpy as np
import pytest

from cubicflex.errors import CommonComponentError, MatchingError
from cubicflex.forms import (CubicForm, ProjPoint, cusp_family, fermat_cubic,
                             hesse_pencil, node_family, proj_distance,
                             triangle_cubic)
from cubicflex.locus import (InflectionSet, hesse_base_points,
                             inflection_points, label_against,
                             singular_points)

W = np.exp(2j * np.pi / 3)

# the nine common inflection points of the Fermat/triangle pencil,
# solved by hand from z1^3 + z2^3 + z3^3 = 0 = z1 z2 z3
BASE_POINTS = [
    (0, 1, -1), (1, 0, -1), (1, -1, 0),
    (0, 1, -W), (1, 0, -W * W), (1, -W, 0),
    (0, 1, -W * W), (1, 0, -W), (1, -W * W, 0),
]


def from_mono(d):
    return CubicForm.from_monomials(d)


def match_sets(got_points, expected_rows, tol=1e-8):
    """Each expected point appears exactly once among the computed ones."""
    exp = [np.asarray(r, dtype=complex) for r in expected_rows]
    assert len(got_points) == len(exp)
    used = set()
    for e in exp:
        d = [proj_distance(g.coords, e) for g in got_points]
        j = int(np.argmin(d))
        assert d[j] < tol, f"expected point {e} missing (nearest {d[j]:.2e})"
        assert j not in used
        used.add(j)


class TestSmoothCubics:
    def test_fermat_against_frozen_table(self):
        fl = inflection_points(fermat_cubic())
        assert fl.multiplicity_signature() == (1,) * 9
        match_sets([p.point for p in fl.points], BASE_POINTS, tol=1e-8)

    def test_hesse_member_shares_base_points(self):
        member = hesse_pencil().member((1.0, 0.3 - 0.2j))
        fl = inflection_points(member)
        match_sets([p.point for p in fl.points], BASE_POINTS, tol=1e-8)

    def test_transformed_fermat_exact_pushforward(self):
        # inflection points of f(Mz) are M^{-1} times those of f
        M = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 3.0]])
        Minv = np.linalg.inv(M)
        fl = inflection_points(fermat_cubic().transform(M))
        expected = [Minv @ np.asarray(q, dtype=complex) for q in BASE_POINTS]
        match_sets([p.point for p in fl.points], expected, tol=1e-8)

    def test_cusp_family_smooth_member_closed_form(self):
        tau = 0.3
        fl = inflection_points(cusp_family(tau))
        s = 1j * np.sqrt(tau)
        r = (-4.0 * tau + 0j) ** (1.0 / 3.0)
        expected = [(0, 1, 0), (0, s, 1), (0, -s, 1)]
        for sign in (1, -1):
            for k in range(3):
                expected.append((r * W ** k, sign * np.sqrt(3 * tau), 1))
        match_sets([p.point for p in fl.points], expected, tol=1e-8)

    def test_random_smooth_all_simple(self):
        rng = np.random.default_rng(42)
        for _ in range(30):
            c = rng.standard_normal(10) + 1j * rng.standard_normal(10)
            fl = inflection_points(CubicForm(c))
            assert fl.multiplicity_signature() == (1,) * 9
            pts = [p.point for p in fl.points]
            for i in range(9):
                for j in range(i + 1, 9):
                    assert proj_distance(pts[i].coords, pts[j].coords) > 1e-6

    def test_projective_equivariance(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            c = rng.standard_normal(10) + 1j * rng.standard_normal(10)
            f = CubicForm(c)
            M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            fl = inflection_points(f)
            flM = inflection_points(f.transform(M))
            expected = [np.linalg.solve(M, p.point.coords)
                        for p in fl.points]
            match_sets([p.point for p in flM.points], expected, tol=1e-7)


class TestSingularCubics:
    def test_nodal_signature_and_node_location(self):
        fl = inflection_points(node_family(1.0, 1.0, 0.0))
        assert fl.multiplicity_signature() == (6, 1, 1, 1)
        six = [p for p in fl.points if p.multiplicity == 6]
        assert proj_distance(six[0].point.coords,
                             np.array([0, 0, 1], dtype=complex)) < 1e-9

    def test_cuspidal_signature_and_exact_points(self):
        fl = inflection_points(cusp_family(0.0))
        assert fl.multiplicity_signature() == (8, 1)
        eight = [p for p in fl.points if p.multiplicity == 8][0]
        one = [p for p in fl.points if p.multiplicity == 1][0]
        assert proj_distance(eight.point.coords,
                             np.array([0, 0, 1], dtype=complex)) < 1e-9
        assert proj_distance(one.point.coords,
                             np.array([0, 1, 0], dtype=complex)) < 1e-9

    def test_nodal_transformed_keeps_signature(self):
        M = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
        fl = inflection_points(node_family(1.0, 1.0, 0.0).transform(M))
        assert fl.multiplicity_signature() == (6, 1, 1, 1)

    def test_rank_deficient_pullback_is_degenerate(self):
        # f(Mz) with singular M is a cone of concurrent lines; its
        # hessian vanishes identically up to rounding noise
        M = np.array([[1.0, 1.0, 2.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
        assert abs(np.linalg.det(M)) < 1e-12
        with pytest.raises(CommonComponentError):
            inflection_points(fermat_cubic().transform(M))

    def test_line_components_raise_common_component(self):
        line_cubics = {
            "triangle": triangle_cubic(),
            "conic+line": from_mono({(2, 0): 1, (0, 2): 1, (0, 0): -1}),
            "conic+tangent": from_mono({(0, 2): 1, (1, 0): -1}),
            "concurrent": from_mono({(2, 1): 1, (1, 2): 1}),
            "double line": from_mono({(2, 1): 1}),
            "triple line": from_mono({(3, 0): 1}),
        }
        for name, f in line_cubics.items():
            with pytest.raises(CommonComponentError):
                inflection_points(f)


class TestSingularPoints:
    def test_smooth_has_none(self):
        assert singular_points(fermat_cubic()).is_empty()

    def test_local_types_by_stratum(self):
        cases = [
            (node_family(1.0, 1.0, 0.0), ('node',)),
            (from_mono({(2, 0): 1, (0, 2): 1, (0, 0): -1}),
             ('node', 'node')),                      # conic + secant line
            (from_mono({(2, 1): 1, (1, 2): 1, (1, 1): 1}),
             ('node', 'node', 'node')),              # three general lines
            (cusp_family(0.0), ('cusp',)),
            (from_mono({(0, 2): 1, (1, 0): -1}), ('tacnode',)),
            (from_mono({(2, 1): 1, (1, 2): 1}), ('triple',)),
        ]
        for f, expected in cases:
            assert singular_points(f).local_types() == expected

    def test_local_types_stable_under_transform(self):
        M = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 3.0]])
        for f, expected in [
            (cusp_family(0.0), ('cusp',)),
            (from_mono({(0, 2): 1, (1, 0): -1}), ('tacnode',)),
            (from_mono({(2, 1): 1, (1, 2): 1}), ('triple',)),
        ]:
            assert singular_points(f.transform(M)).local_types() == expected

    def test_concurrent_lines_vertex_location(self):
        M = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 3.0]])
        s = singular_points(from_mono({(2, 1): 1, (1, 2): 1}).transform(M))
        expected = np.linalg.solve(M, np.array([0, 0, 1], dtype=complex))
        assert proj_distance(s.points[0].point.coords, expected) < 1e-9

    def test_repeated_line_detected(self):
        for d in ({(2, 1): 1}, {(3, 0): 1}):
            s = singular_points(from_mono(d))
            assert s.singular_line is not None
            # the line z1 = 0 in both cases
            line = s.singular_line / s.singular_line[0]
            assert np.allclose(line, [1, 0, 0], atol=1e-9)

    def test_singular_point_lies_on_inflection_set(self):
        fl = inflection_points(node_family(1.0, 1.0, 0.0))
        sp = singular_points(node_family(1.0, 1.0, 0.0)).points[0]
        d = min(proj_distance(sp.point.coords, p.point.coords)
               for p in fl.points)
        assert d < 1e-9


class TestLabelling:
    def test_fermat_labels_bijectively(self):
        fl = inflection_points(fermat_cubic())
        lab = label_against(fl, hesse_base_points())
        assert sorted(lab.labels()) == list(range(1, 10))
        table = lab.by_label()
        for k, q in enumerate(hesse_base_points(), start=1):
            assert proj_distance(table[k].coords, q.coords) < 1e-8

    def test_label_against_labelled_reference(self):
        fl = label_against(inflection_points(fermat_cubic()),
                           hesse_base_points())
        again = label_against(inflection_points(fermat_cubic()), fl)
        assert again.labels() == fl.labels()

    def test_cardinality_mismatch(self):
        fl = inflection_points(fermat_cubic())
        with pytest.raises(MatchingError, match="cardinality"):
            label_against(fl, hesse_base_points()[:5])

    def test_out_of_radius_rejected(self):
        fl = inflection_points(fermat_cubic())
        rng = np.random.default_rng(3)
        refs = [ProjPoint(np.asarray(q, dtype=complex)
                          + 0.01 * rng.standard_normal(3))
                for q in BASE_POINTS]
        with pytest.raises(MatchingError):
            label_against(fl, refs, matching_radius=1e-4)

    def test_ambiguous_matching_rejected(self):
        fl = inflection_points(fermat_cubic())
        # collapse two references to nearly the same location
        refs = hesse_base_points()
        refs[1] = ProjPoint(refs[0].coords + 1e-9)
        with pytest.raises(MatchingError):
            label_against(fl, refs)
