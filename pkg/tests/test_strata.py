"""Classification of cubics into equisingular classes and crossing search.

Oracle notes:
 - The discriminant of the Fermat cubic is the resultant of the gradient
   quadrics (3 z1^2, 3 z2^2, 3 z3^2).  The resultant of (z1^2, z2^2,
   z3^2) is 1, and scaling each quadric by 3 multiplies the resultant by
   3^(2*2) per polynomial, so the value is exactly 3^12 = 531441.
 - On the pencil z1^3+z2^3+z3^3 + u*z1 z2 z3 the singular members are
   the coordinate triangle (u = infinity) and the three triangles at
   u^3 = -27; each triangle carries multiplicity three, which forces the
   chart polynomial 27(u^3+27)^3 frozen below.
 - The family z1^3 + z2^2 z3 + tau*z3^3 is smooth except at tau = 0
   (cuspidal) and tau = infinity (the triple line z3^3), so its
   discriminant on the tau chart has a root of multiplicity 2 at 0 and
   degree drop 10.
"""

import numpy as np
import pytest

from cubicflex import (Certificate, CrossingError, CubicForm, Net,
                       NumericalError, Pencil, StratumLabel, classify,
                       cusp_family, discriminant_value, fermat_cubic,
                       hesse_pencil, inflection_points, net_cusp_members,
                       node_family, pencil_crossings, pencil_discriminant_fit,
                       triangle_cubic)

M = CubicForm.from_monomials


def rand_cubic(rng):
    return CubicForm(rng.standard_normal(10) + 1j * rng.standard_normal(10))


NAMED_CASES = [
    (fermat_cubic(), "Smooth", "irreducible", 0),
    (triangle_cubic(), "B31", "three-lines", 3),
    (node_family(1, 1, 0), "B1", "irreducible", 1),
    (M({(1, 1): 1, (3, 0): 1}), "B21", "conic+line", 2),
    (cusp_family(0), "B22", "irreducible", 1),
    (M({(1, 0): 1, (0, 2): -1}), "B32", "conic+line", 1),
    (M({(2, 1): 1, (1, 2): 1}), "B4", "three-lines", 1),
    (M({(2, 1): 1}), "B5", "double-line+line", 0),
    (M({(3, 0): 1}), "B7", "triple-line", 0),
]


class TestClassify:
    @pytest.mark.parametrize("f,want,structure,npoints", NAMED_CASES,
                             ids=[c[1] for c in NAMED_CASES])
    def test_named_cubics(self, f, want, structure, npoints):
        label, cert = classify(f)
        assert label is StratumLabel(want)
        assert isinstance(cert, Certificate)
        assert cert.component_structure == structure
        assert len(cert.singular.points) == npoints

    def test_tangency_flags(self):
        _, transversal = classify(M({(1, 1): 1, (3, 0): 1}))
        assert transversal.tangency_flags == (False, False)
        _, tangent = classify(M({(1, 0): 1, (0, 2): -1}))
        assert tangent.tangency_flags == (True,)

    def test_certificate_json(self):
        _, cert = classify(node_family(1, 1, 0))
        d = cert.to_json_dict()
        assert d["component_structure"] == "irreducible"
        assert d["singular_points"][0]["local_type"] == "node"
        assert len(d["singular_points"][0]["coords"]) == 3

    def test_b5_b7_report_singular_line(self):
        for f in (M({(2, 1): 1}), M({(3, 0): 1})):
            _, cert = classify(f)
            line = cert.singular.singular_line
            assert line is not None
            # the singular line of z1^2 z2 and z1^3 is z1 = 0
            assert abs(line[1]) < 1e-9 and abs(line[2]) < 1e-9

    @pytest.mark.parametrize("case", range(4))
    def test_projective_invariance(self, case):
        f, want, _, _ = NAMED_CASES[[0, 2, 4, 5][case]]
        rng = np.random.default_rng(400 + case)
        for _ in range(6):
            T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            label, _ = classify(f.transform(T))
            assert label is StratumLabel(want)

    def test_cuspidal_family_members_smooth_off_origin(self):
        for tau in (0.3, -1.2 + 0.7j):
            label, _ = classify(cusp_family(tau))
            assert label is StratumLabel.SMOOTH


class TestDiscriminant:
    def test_fermat_value_exact(self):
        assert discriminant_value(fermat_cubic()) == pytest.approx(
            531441.0, rel=1e-10)

    def test_degree_twelve_scaling(self):
        f = fermat_cubic()
        d1 = discriminant_value(f)
        d2 = discriminant_value(CubicForm(2.0 * f.coeffs))
        assert d2 / d1 == pytest.approx(4096.0, rel=1e-10)

    def test_vanishes_on_singular_cubics(self):
        smooth = abs(discriminant_value(fermat_cubic()))
        for f, want, _, _ in NAMED_CASES[1:]:
            assert abs(discriminant_value(f)) < 1e-8 * smooth

    def test_nonzero_on_random_smooth(self):
        rng = np.random.default_rng(77)
        for _ in range(10):
            f = rand_cubic(rng)
            label, _ = classify(f)
            assert label is StratumLabel.SMOOTH
            assert abs(discriminant_value(f)) > 1e-6

    def test_hesse_chart_polynomial_frozen(self):
        # 27 (u^3 + 27)^3, ascending coefficients
        want = np.zeros(13)
        want[0], want[3], want[6], want[9] = 531441.0, 59049.0, 2187.0, 27.0
        fit = pencil_discriminant_fit(hesse_pencil())
        assert np.allclose(fit, want, rtol=1e-9, atol=1e-4)


class TestPencilCrossings:
    def test_hesse_pencil_four_triangles(self):
        pc = pencil_crossings(hesse_pencil())
        assert len(pc.crossings) == 4
        assert all(c.multiplicity == 3 for c in pc.crossings)
        assert all(c.label is StratumLabel.B31 for c in pc.crossings)
        assert pc.total_multiplicity() == 12
        assert pc.infinite_multiplicity == 3
        finite = sorted((c.parameter[1] / c.parameter[0]
                         for c in pc.crossings if abs(c.parameter[0]) > 0.5),
                        key=lambda u: (u.real, u.imag))
        roots = sorted(np.roots([1, 0, 0, 27]),
                       key=lambda u: (u.real, u.imag))
        assert np.allclose(finite, roots, atol=1e-8)

    def test_pencil_through_fermat_twelve_simple_nodes(self):
        rng = np.random.default_rng(11)
        pc = pencil_crossings(Pencil(fermat_cubic(), rand_cubic(rng)))
        assert len(pc.crossings) == 12
        assert all(c.multiplicity == 1 for c in pc.crossings)
        assert all(c.label is StratumLabel.B1 for c in pc.crossings)
        assert pc.infinite_multiplicity == 0

    def test_cuspidal_family_crossings(self):
        p = Pencil(cusp_family(0), M({(0, 0): 1}))
        pc = pencil_crossings(p)
        by_label = {c.label.value: c for c in pc.crossings}
        assert set(by_label) == {"B22", "B7"}
        cusp = by_label["B22"]
        assert cusp.multiplicity == 2
        assert abs(cusp.parameter[1] / cusp.parameter[0]) < 1e-8
        assert by_label["B7"].multiplicity == 10
        assert pc.total_multiplicity() == 12

    @pytest.mark.parametrize("seed", [20, 21, 22])
    def test_random_pencils_total_twelve(self, seed):
        rng = np.random.default_rng(seed)
        pc = pencil_crossings(Pencil(rand_cubic(rng), rand_cubic(rng)))
        assert pc.total_multiplicity() == 12
        assert all(c.label is StratumLabel.B1 for c in pc.crossings)

    def test_pencil_inside_discriminant_raises(self):
        # both spanning cubics share the line z1 = 0, so every member is
        # singular and the discriminant vanishes identically
        p = Pencil(triangle_cubic(), M({(1, 2): 1, (1, 0): 1}))
        with pytest.raises(CrossingError, match="inside discriminant"):
            pencil_crossings(p)

    def test_crossing_member_has_nodal_flex_signature(self):
        rng = np.random.default_rng(11)
        pc = pencil_crossings(Pencil(fermat_cubic(), rand_cubic(rng)))
        infl = inflection_points(pc.crossings[0].member)
        assert infl.multiplicity_signature() == (6, 1, 1, 1)


@pytest.fixture(scope="module")
def net3():
    rng = np.random.default_rng(3)
    return Net(rand_cubic(rng), rand_cubic(rng), rand_cubic(rng))


class TestNetCusps:

    def test_generic_net_has_24_cuspidal_members(self, net3):
        out = net_cusp_members(net3, starts=400, seed=7)
        assert len(out) == 24
        assert all(nc.residuals["f"] < 1e-10 for nc in out)
        assert all(nc.residuals["grad"] < 1e-10 for nc in out)

    def test_output_sorted_and_deterministic(self, net3):
        a = net_cusp_members(net3, starts=400, seed=7)
        b = net_cusp_members(net3, starts=400, seed=7)
        assert [(nc.alpha, nc.beta) for nc in a] == \
            [(nc.alpha, nc.beta) for nc in b]
        keys = [(nc.alpha.real, nc.alpha.imag, nc.beta.real, nc.beta.imag)
                for nc in a]
        assert keys == sorted(keys)

    def test_members_are_cuspidal(self, net3):
        out = net_cusp_members(net3, starts=400, seed=7)
        for nc in out[:3]:
            member = CubicForm(net3.f0.coeffs + nc.alpha * net3.f1.coeffs
                               + nc.beta * net3.f2.coeffs)
            label, cert = classify(member)
            assert label is StratumLabel.B22
            assert cert.singular.points[0].point.distance(nc.point) < 1e-6

    def test_insufficient_starts_raises(self, net3):
        with pytest.raises(CrossingError, match="insufficient starts"):
            net_cusp_members(net3, starts=10, seed=7)

    def test_second_random_net(self):
        rng = np.random.default_rng(12)
        net = Net(rand_cubic(rng), rand_cubic(rng), rand_cubic(rng))
        out = net_cusp_members(net, starts=1000, seed=7)
        assert len(out) == 24
