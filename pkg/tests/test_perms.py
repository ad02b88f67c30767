from __future__ import annotations

import pytest

from cubicflex.errors import SchemaError
from cubicflex.perms import (G0, G1, G2, G3, G4, Perm, PermGroup, closure,
                             coset_action, conjugate_in_s9, hesse_group,
                             local_cusp_group, verify_relations)


def test_parse_and_print_round_trip():
    for text in ["(2,8,5)(3,6,9)", "(1,2,4)(3,9,7)(5,6,8)", "()"]:
        assert str(Perm.parse(text)) == text
    assert str(Perm.parse("(9,7,8)(5,6,4)")) == "(4,5,6)(7,8,9)"
    assert str(Perm.parse("(9,8,7)(5,6,4)")) == "(4,5,6)(7,9,8)"
    with pytest.raises(SchemaError):
        Perm.parse("(1,2")
    with pytest.raises(SchemaError):
        Perm.parse("(1,1,2)")


def test_composition_is_left_to_right():
    p = Perm.parse("(1,2)")
    q = Perm.parse("(2,3)")
    assert (p * q)(1) == 3  # p sends 1 to 2, then q sends 2 to 3
    assert (q * p)(1) == 2


def test_inverse_and_power():
    g = G0
    assert g * g.inverse() == Perm.identity()
    assert g ** 3 == Perm.identity()
    assert g ** -1 == g.inverse()
    assert g.order() == 3


def test_cycle_type():
    assert G1.cycle_type() == (3, 3, 1, 1, 1)
    assert Perm.identity().cycle_type() == (1,) * 9


def test_full_group_order_216_and_transitivity():
    G = hesse_group()
    assert G.order == 216
    assert G.is_k_transitive(1)
    assert G.is_k_transitive(2)
    assert not G.is_k_transitive(3)


def test_stabilizer_of_point_is_local_cusp_group():
    G = hesse_group()
    H1 = local_cusp_group()
    assert H1.order == 24
    assert G.stabilizer(1) == H1
    # orbit-stabilizer: |orbit| * |stab| = |G|
    assert len(G.orbits()[0]) * H1.order == G.order


def test_g2_is_a_conjugate_of_g1():
    assert G0 * G1 * G0.inverse() == G2


def test_generator_relations():
    env = {"g1": G1, "g2": G2, "g3": G3, "g4": G4}
    assert verify_relations(env, [
        "g1^3 == ()",
        "g2^3 == ()",
        "g1*g2*g1 == g2*g1*g2",
        "g2*g3 == g4^-1",
    ]) == [True, True, True, True]
    with pytest.raises(SchemaError):
        verify_relations(env, ["g1*g9 == ()"])
    with pytest.raises(SchemaError):
        verify_relations(env, ["g1"])


def test_local_cusp_group_orbits():
    H1 = local_cusp_group()
    assert H1.orbits() == [(1,), (2, 3, 4, 5, 6, 7, 8, 9)]
    assert H1.orbit_sizes() == (8, 1)


def test_stabilizer_inside_local_group_is_cyclic():
    H1 = local_cusp_group()
    st = H1.stabilizer(2)
    assert st.order == 3
    assert st == PermGroup((G1,))


def test_conjugacy_class_of_g1_has_four_elements():
    # derived by brute force: the class of g1 in <g1, g2> is
    # {g1, g2, (2,7,6)(3,4,8), (2,9,4)(3,5,7)}
    H1 = local_cusp_group()
    cls = H1.conjugacy_class(G1)
    assert len(cls) == 4
    assert G2 in cls


def test_coset_action_matches_point_action():
    # left cosets of <g1> in <g1, g2>, with the representative of the
    # coset labelled k chosen so that it moves letter 2 to letter k
    H1 = local_cusp_group()
    sub = PermGroup((G1,))
    e = Perm.identity()
    reps = [e, G2**2 * G1 * G2**2, G1**2 * G2**2, G2**2,
            G1 * G2**2, G1 * G2, G2, G1**2 * G2]
    labels = [2, 3, 4, 5, 6, 7, 8, 9]
    act = coset_action(H1, sub, reps, labels)
    for g in (G1, G2):
        assert act[g] == {x: g(x) for x in labels}
    # the label letter always sits in the orbit of 2 under the coset
    for r, k in zip(reps, labels):
        orbit2 = {(r * G1 ** n)(2) for n in range(3)}
        assert k in orbit2
    with pytest.raises(SchemaError):
        coset_action(H1, sub, reps[:-1] + [G2], labels)  # repeated coset


def test_closure_small():
    assert len(closure([Perm.parse("(1,2)")])) == 2
    assert len(closure([])) == 1


def test_conjugate_in_s9_finds_witness():
    G = PermGroup((G1, G2))
    s0 = Perm.parse("(1,4,2)(3,7,9)(5,8,6)")
    H = PermGroup((G1.conjugate_by(s0), G2.conjugate_by(s0)))
    s = conjugate_in_s9(G, H)
    assert s is not None
    assert PermGroup((G1.conjugate_by(s), G2.conjugate_by(s))) == H


def test_conjugate_in_s9_rejects_non_conjugates():
    # same order (3) but different cycle type on 9 letters
    A = PermGroup((Perm.parse("(1,2,3)"),))
    B = PermGroup((Perm.parse("(1,2,3)(4,5,6)"),))
    assert conjugate_in_s9(A, B) is None


def test_is_k_transitive_small_group():
    A = PermGroup((Perm.parse("(1,2,3,4,5,6,7,8,9)"),))
    assert A.is_k_transitive(1)
    assert not A.is_k_transitive(2)
