import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import fixture
from hopfgauge.cohomology import partial_bialgebra
from hopfgauge.dualquasi import (BraidedDualQuasiData, DualQuasiData, alpha_of, bosonize_braided_dq, check_braided_dq,
                                 check_dual_quasi, check_G_membership, check_S_membership, check_v_conditions,
                                 gauge_constraints, map_F, map_G, random_gauge, trivial_reassociator, twist_dual_quasi,
                                 twist_prebialgebra)
from hopfgauge.examples import cyclic_group_algebra
from hopfgauge.linalg import Field, InputError
from hopfgauge.prebialgebra import PreBialgebraData, bosonize_cocycle, trivial_cocycle
from hopfgauge.structures import TensorPowerCoalgebra, convolution_inverse, convolve
from hopfgauge.yd import trivial_yd_coalgebra
from test_acceptance import _unital_gauge

NAMES = ["sweedler", "lifted", "cubic"]
seeds = st.integers(0, 2 ** 32 - 1)


@pytest.mark.parametrize("name", NAMES)
def test_G_and_F_land_in_the_right_classes(name):
    fx = fixture(name)
    v = map_G(fx.P, fx.xi, fx.lam)
    assert check_G_membership(fx.P, v, fx.lam).ok
    assert check_S_membership(fx.P, map_F(fx.P, v)).ok


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_random_gauge_members_are_gauge_functionals(name, seed):
    fx = fixture(name)
    v = random_gauge(fx.P, fx.lam, np.random.default_rng(seed))
    assert check_G_membership(fx.P, v, fx.lam).ok
    assert check_S_membership(fx.P, map_F(fx.P, v)).ok


def test_gauge_class_dimensions():
    assert gauge_constraints(fixture("sweedler").P, fixture("sweedler").lam)[1].shape[1] == 0
    assert gauge_constraints(fixture("cubic").P, fixture("cubic").lam)[1].shape[1] == 2


def test_scaling_leaves_F_unchanged_but_leaves_the_gauge_class():
    fx = fixture("lifted")
    F, P = fx.F, fx.P
    v = map_G(P, fx.xi, fx.lam)
    cv = F.reduce(3 * v)
    assert F.equal(map_F(P, cv), map_F(P, v))
    rep = check_G_membership(P, cv, fx.lam)
    assert [it.name for it in rep.failed()] == ["v(1 (x) 1) = 1", "lambda Psi(v) = eps"]


def test_trivial_gauge_changes_nothing():
    fx = fixture("sweedler")
    F, P = fx.F, fx.P
    eps = P.RR.counit
    assert F.equal(alpha_of(P, eps), P.RRR.counit)
    Q = twist_prebialgebra(P, eps)
    assert F.equal(Q.P.mult, P.mult) and F.equal(Q.alpha, P.RRR.counit)
    B = bosonize_braided_dq(Q)
    A, _, _ = bosonize_cocycle(P, trivial_cocycle(P))
    assert F.equal(B.D.mult, A.mult) and F.equal(B.D.delta, A.delta)


def test_lifted_alpha_is_trivial_and_twist_is_associative():
    # the gauge of the lifted line is a cocycle twist: m^v is associative and alpha(v) = eps
    fx = fixture("lifted")
    v = map_G(fx.P, fx.xi, fx.lam)
    assert fx.F.equal(alpha_of(fx.P, v), fx.P.RRR.counit)


def test_twist_refuses_failing_gauge():
    fx = fixture("cubic")
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = random_gauge(fx.P, fx.lam, rng)
        if not check_v_conditions(fx.P, v).ok:
            break
    with pytest.raises(InputError, match="gauge conditions fail"):
        twist_prebialgebra(fx.P, v)


def test_tampered_reassociator_is_named():
    fx = fixture("lifted")
    Q = twist_prebialgebra(fx.P, map_G(fx.P, fx.xi, fx.lam))
    bad = BraidedDualQuasiData(Q.P, fx.F.reduce(2 * Q.alpha))
    names = [it.name for it in check_braided_dq(bad).failed()]
    assert "(ii) alpha unital" in names


def test_bosonizing_over_the_ground_field():
    H = cyclic_group_algebra(Field(5), 4)
    P = PreBialgebraData(trivial_yd_coalgebra(H), Field(5).asarray([[[1]]]))
    Q = BraidedDualQuasiData(P, Field(5).asarray([1]))
    B = bosonize_braided_dq(Q)
    F = H.field
    assert F.equal(B.D.mult, H.mult) and F.equal(B.alpha, TensorPowerCoalgebra(H.coalgebra, 3).counit)
    assert check_dual_quasi(B).ok


@pytest.mark.parametrize("name", ["sweedler", "lifted"])
@settings(max_examples=5, deadline=None)
@given(seed=seeds)
def test_twists_compose_and_invert(name, seed):
    fx = fixture(name)
    F, A = fx.F, fx.A
    rng = np.random.default_rng(seed)
    D = DualQuasiData(A, trivial_reassociator(A))
    g, g_inv = _unital_gauge(F, A, rng)
    h, h_inv = _unital_gauge(F, A, rng)
    Dg = twist_dual_quasi(D, g, g_inv)
    assert F.equal(Dg.alpha, partial_bialgebra(A, g, 2, w_inv=g_inv))
    back = twist_dual_quasi(Dg, g_inv)
    assert F.equal(back.D.mult, A.mult) and F.equal(back.alpha, D.alpha)
    C2 = TensorPowerCoalgebra(A.coalgebra, 2)
    two, one = twist_dual_quasi(Dg, h, h_inv), twist_dual_quasi(D, convolve(h, g, C2))
    assert F.equal(two.D.mult, one.D.mult) and F.equal(two.alpha, one.alpha)


def test_non_unital_gauge_is_refused():
    A = fixture("sweedler").A
    F = A.field
    D = DualQuasiData(A, trivial_reassociator(A))
    with pytest.raises(InputError, match="not unital"):
        twist_dual_quasi(D, F.reduce(2 * TensorPowerCoalgebra(A.coalgebra, 2).counit))


def test_dual_quasi_checker_names_non_associativity():
    # a reassociator of eps on a non-associative twist is caught by quasi-associativity
    fx = fixture("lifted")
    rng = np.random.default_rng(0)
    A = fx.A
    D = DualQuasiData(A, trivial_reassociator(A))
    g, g_inv = _unital_gauge(fx.F, A, rng)
    Dg = twist_dual_quasi(D, g, g_inv)
    wrong = dataclasses.replace(Dg, alpha=D.alpha)
    names = [it.name for it in check_dual_quasi(wrong).failed()]
    assert "(iii) quasi-associativity" in names
