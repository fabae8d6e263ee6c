import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import fixture, random_combination
from hopfgauge.examples import sweedler
from hopfgauge.linalg import Field, InputError
from hopfgauge.structures import check_structure, convolve, scalar_algebra
from hopfgauge.yd import (adjoint_module, braiding, check_yd, check_yd_coalgebra, colinear_functionals,
                          functional_linear_defect, is_colinear, is_linear, linear_functionals, phi, psi, psi_inverse,
                          regular_module, right_absorb_sides, smash_coproduct, tensor_module, trivial_module,
                          trivial_yd_coalgebra, yd_tensor_coalgebra, yd_tensor_power)

NAMES = ["sweedler", "lifted", "cubic"]
seeds = st.integers(0, 2 ** 32 - 1)


def test_adjoint_module_is_yd_regular_is_not():
    H = sweedler()
    assert check_yd(adjoint_module(H)).ok
    rep = check_yd(regular_module(H))
    assert [it.name for it in rep.failed()] == ["YD compatibility"]


def test_shape_validation():
    H = sweedler()
    M = adjoint_module(H)
    with pytest.raises(InputError, match="coaction has shape"):
        dataclasses.replace(M, coaction=M.coaction[:, :3, :])


@pytest.mark.parametrize("name", NAMES)
def test_extracted_R_and_its_powers_are_yd_coalgebras(name):
    P = fixture(name).P
    assert check_yd_coalgebra(P.R).ok
    assert check_yd_coalgebra(P.RR).ok


def test_tampered_coaction_is_caught():
    R = fixture("lifted").P.R
    co = R.coaction.copy()
    co[0, 1, 1] = R.field.reduce(co[0, 1, 1] + 1)
    rep = check_yd_coalgebra(dataclasses.replace(R, coaction=co))
    assert not rep.ok


@pytest.mark.parametrize("name", NAMES)
def test_braiding_is_invertible(name):
    R = fixture(name).P.R
    F = R.field
    c, cinv = braiding(R, R)
    n = R.dim ** 2
    assert F.equal(F.dot(c, cinv), F.eye(n)) and F.equal(F.dot(cinv, c), F.eye(n))
    assert is_linear(c, tensor_module(R, R), tensor_module(R, R))[0]
    assert is_colinear(c, tensor_module(R, R), tensor_module(R, R))[0]


def test_braiding_with_trivial_module_is_the_flip():
    R = fixture("lifted").P.R
    F = R.field
    K = trivial_module(R.H)
    c, _ = braiding(K, R)
    assert F.equal(c, F.eye(R.dim))


@pytest.mark.parametrize("name", NAMES)
def test_tensor_coalgebra_unit_and_associativity(name):
    R = fixture(name).P.R
    F = R.field
    K = trivial_yd_coalgebra(R.H)
    assert F.equal(yd_tensor_coalgebra(R, K).delta, R.delta)
    assert F.equal(yd_tensor_coalgebra(K, R).delta, R.delta)
    left = yd_tensor_coalgebra(yd_tensor_coalgebra(R, R), R)
    right = yd_tensor_coalgebra(R, yd_tensor_coalgebra(R, R))
    assert F.equal(left.delta, right.delta) and F.equal(left.coaction, right.coaction)
    assert F.equal(yd_tensor_power(R, 3).delta, left.delta)


@pytest.mark.parametrize("name", NAMES)
def test_smash_coproduct_is_a_coalgebra(name):
    fx = fixture(name)
    assert check_structure(smash_coproduct(fx.P.R, fx.H), "coalgebra").ok


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_psi_is_a_monoid_embedding(name, seed):
    fx = fixture(name)
    F, C, H = fx.F, fx.P.RR, fx.H
    rng = np.random.default_rng(seed)
    a, b = F.random(C.dim, rng), F.random(C.dim, rng)
    assert F.equal(psi_inverse(psi(a, C), H), a)
    assert F.equal(psi(convolve(a, b, C), C), convolve(psi(a, C), psi(b, C), C, H.algebra))
    assert F.equal(psi(C.counit, C), F.outer(H.unit, C.counit))


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_phi_is_multiplicative(name, seed):
    fx = fixture(name)
    F, R, H = fx.F, fx.P.R, fx.H
    rng = np.random.default_rng(seed)
    a, b = F.random((H.dim, R.dim), rng), F.random((H.dim, R.dim), rng)
    ab = convolve(a, b, R, H.algebra)
    assert F.equal(phi(ab, R, R), F.dot(phi(a, R, R), phi(b, R, R)))
    assert F.equal(phi(F.outer(H.unit, R.counit), R, R), F.eye(R.dim ** 2))


@pytest.mark.parametrize("name", NAMES)
def test_invariant_functionals(name):
    fx = fixture(name)
    F, C, H = fx.F, fx.P.RR, fx.H
    rng = np.random.default_rng(0)
    lin = random_combination(F, linear_functionals(C), rng)
    assert F.is_zero(functional_linear_defect(lin, C))
    col = random_combination(F, colinear_functionals(C), rng)
    assert F.equal(psi(col, C), F.outer(H.unit, col))
    # the counit is both
    assert F.is_zero(functional_linear_defect(C.counit, C))


def test_right_absorption_needs_colinearity():
    fx = fixture("cubic")
    F, R = fx.F, fx.P.R
    rng = np.random.default_rng(1)
    W = scalar_algebra(F)
    outcomes = set()
    for _ in range(10):
        v = F.random(R.dim, rng)
        f, alpha = F.random((2, R.dim), rng), F.random((1, 2 * R.dim), rng)
        lhs, rhs = right_absorb_sides(R, R, v, f, alpha, W)
        outcomes.add(F.equal(lhs, rhs))
    assert False in outcomes


def test_different_hopf_algebras_refused():
    with pytest.raises(InputError, match="different Hopf"):
        yd_tensor_coalgebra(fixture("lifted").P.R, trivial_yd_coalgebra(sweedler(Field(5))))
