from fractions import Fraction

import pytest
from hypothesis import given

from oracles import actions_isomorphic, psi_inclusion_exclusion
from strategies import partial_actions, with_normal_subgroup
from pargal.envelope import (
    beta_invariants, compute_eH, e_gH, eH_product, gamma_restricted, globalize, psi_map,
    quotient_global_action, verify_globalization,
)
from pargal.errors import NotNormal, ValidationFailed
from pargal.fixtures import ec6r, ec6r_global, ex0, ex0_global, s3_table, shift_action, theta
from pargal.galois import global_pair_iso
from pargal.group import Subgroup, subgroup_by_names, subgroup_closure
from pargal.paction import AlgElement, SetPartialAction, act, one_g, validate


def H_of(a, *names):
    return subgroup_by_names(a.group, names)


def test_ex0_globalization_is_the_4_cycle():
    gl = globalize(ex0())
    assert gl.size == 4 and gl.embed == (0, 1, 2)
    assert actions_isomorphic(gl.T.sigma, ex0_global().sigma)
    assert global_pair_iso(gl, (ex0_global(), {0, 1, 2})) is not None


def test_ec6r_globalization_recovers_the_shift():
    gl = globalize(ec6r())
    assert gl.size == 6
    assert global_pair_iso(gl, (ec6r_global(), {0, 2, 5})) is not None


def test_global_action_is_its_own_globalization():
    b = shift_action(5)
    gl = globalize(b)
    assert gl.size == 5 and gl.T.sigma == b.sigma


def test_invalid_input_raises():
    bad = SetPartialAction(ex0().group, ((1, 0, 2),) + ex0().sigma[1:])
    with pytest.raises(ValidationFailed):
        globalize(bad)


def test_psi_ex0():
    a = ex0()
    gl = globalize(a)
    H = H_of(a, "g^2")
    # in globalization order: e1, e2, e3 and the new point, which is the ambient e4
    t = AlgElement.of([1, 2, 3, 4])
    assert psi_map(gl, H, t) == AlgElement.of([1, 2, 3, 2])
    assert compute_eH(gl, H).eH == frozenset(range(4))


def test_psi_ec6r_against_ambient_labels():
    a = ec6r()
    gl = globalize(a)
    H = H_of(a, "g^3")
    eH = compute_eH(gl, H).eH
    w = global_pair_iso(gl, (ec6r_global(), {0, 2, 5}))
    assert sorted(w.mapping[y] + 1 for y in eH) == [1, 3, 4, 6]
    coeffs = [Fraction(0)] * 6
    for y in range(6):
        coeffs[y] = Fraction(w.mapping[y] + 1)        # a_i = i on ambient e_i
    out = psi_map(gl, H, AlgElement.of(coeffs))
    ambient = {w.mapping[y] + 1: out[y] for y in range(6)}
    assert ambient == {1: 1, 4: 1, 3: 3, 6: 6, 2: 0, 5: 0}


def test_trivial_subgroup_psi_is_identity():
    a = ec6r()
    gl = globalize(a)
    H1 = Subgroup(a.group, (0,))
    t = AlgElement.of(range(6))
    assert psi_map(gl, H1, t) == t * AlgElement.indicator(6, gl.one_S)
    assert compute_eH(gl, H1).eH == gl.one_S


def test_beta_invariants_ec6r():
    gl = globalize(ec6r_global())
    H = H_of(ec6r_global(), "g^3")
    assert beta_invariants(gl, H) == ((0, 3), (1, 4), (2, 5))
    assert beta_invariants(gl, Subgroup(gl.T.group, (0,))) == tuple((y,) for y in range(6))
    assert beta_invariants(gl, Subgroup(gl.T.group, tuple(range(6)))) == (tuple(range(6)),)


def test_quotient_global_action_ex0():
    a = ex0()
    gl = globalize(a)
    H = H_of(a, "g^2")
    q = quotient_global_action(gl, H)
    assert q.blocks == ((0, 2), (1, 3))
    assert q.action.sigma[1] == (1, 0)
    full = quotient_global_action(gl, Subgroup(a.group, tuple(a.group)))
    assert full.action.sigma == ((0,),)
    one = quotient_global_action(gl, Subgroup(a.group, (0,)))
    assert one.action.sigma == gl.T.sigma


def test_quotient_global_action_needs_normal():
    S3 = s3_table()
    b = SetPartialAction(S3, tuple(tuple(S3.mul[g]) for g in S3))
    gl = globalize(b)
    with pytest.raises(NotNormal):
        quotient_global_action(gl, subgroup_closure(S3, [S3.index("(01)")]))


def test_gamma_restricted():
    a = ex0()
    gl = globalize(a)
    g = gamma_restricted(gl, H_of(a, "g^2"))
    assert g.action.is_global()
    e = ec6r()
    gl6 = globalize(e)
    H = H_of(e, "g^3")
    gam = gamma_restricted(gl6, H)
    assert validate(gam.action).ok
    eH = compute_eH(gl6, H).eH
    assert e_gH(gl6, H, 0) == eH
    # e_{gH} = e_H beta_g(e_H), computed from indicator products
    ind = AlgElement.indicator(6, eH)
    for g in range(6):
        assert e_gH(gl6, H, g) == (ind * act(gl6.T, g, ind)).support()
    full = quotient_global_action(gl6, H)
    inside = {full.blocks.index(b) for b in gam.blocks}
    assert global_pair_iso(globalize(gam.action), (full.action, inside)) is not None


@given(partial_actions())
def test_globalization_axioms(a):
    gl = globalize(a)
    assert verify_globalization(gl) == []
    assert gl.size <= a.group.n * a.n_points
    E = AlgElement.indicator(gl.size, gl.one_S)
    for g in a.group:
        # 1_g = beta_g(1_S) 1_S, read back on S
        lhs = frozenset(gl.embed[x] for x in a.ideal(g))
        assert lhs == (act(gl.T, g, E) * E).support()


@given(with_normal_subgroup(partial_actions()))
def test_psi_matches_inclusion_exclusion(case):
    a, H = case
    gl = globalize(a)
    S = [1 if y in gl.one_S else 0 for y in range(gl.size)]
    t = [(7 * y + 3) % 11 for y in range(gl.size)]
    want = psi_inclusion_exclusion(gl.T.sigma, S, list(H.members), t)
    assert list(psi_map(gl, H, AlgElement.of(t)).coeffs) == want
    assert compute_eH(gl, H).eH == eH_product(gl, H)


@given(with_normal_subgroup(partial_actions()))
def test_psi_properties(case):
    a, H = case
    gl = globalize(a)
    n = gl.size
    E = AlgElement.indicator(n, gl.one_S)
    s = AlgElement.of([(y + 2) if y in gl.one_S else 0 for y in range(n)])
    t = AlgElement.of([(3 * y) % 4 for y in range(n)])
    assert psi_map(gl, H, s) * E == s
    assert psi_map(gl, H, s * t) == psi_map(gl, H, s) * psi_map(gl, H, t)
    eH = compute_eH(gl, H).eH
    assert psi_map(gl, H, E).support() == eH
