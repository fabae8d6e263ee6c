"""Gauge functionals, the cocycle/gauge bijection and dual quasi-bialgebras."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Field, InputError, first_witness, nullspace, solve_linear
from .structures import (BialgebraData, CoalgebraData, HopfData, Report, TensorPowerCoalgebra,
                         _check_coalgebra, convolution_inverse, convolve, convolve_many, delta_multiplicative_sides,
                         wedge_filtration)
from .prebialgebra import (PreBialgebraData, c_HR, check_cocycle, embed_H, mho_n, smash_coproduct)
from .cohomology import m_twisted, partial_prebialgebra, precompose_mult
from .yd import (YDCoalgebraData, adjoint_module, check_yd_coalgebra, functional_linear_defect,
                 is_colinear, is_linear, psi, yd_tensor_power)


# ---------------------------------------------------------------------------
# the bijection between cocycles and gauge functionals


def map_G(P: PreBialgebraData, xi: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """``v = (lambda xi)^{-1}`` on the braided ``R (x) R``."""
    F = P.field
    v = convolution_inverse(F.dot(lam, xi), P.RR)
    if v is None:
        raise InputError("lambda xi is not convolution invertible")
    return v


def map_F(P: PreBialgebraData, v: np.ndarray) -> np.ndarray:
    """``xi = u_H v^{-1} * Psi(v)``."""
    F, H = P.field, P.H
    v_inv = convolution_inverse(v, P.RR)
    if v_inv is None:
        raise InputError("v is not convolution invertible")
    return convolve(F.outer(H.unit, v_inv), psi(v, P.RR), P.RR, H.algebra)


def check_G_membership(P: PreBialgebraData, v: np.ndarray, lam: np.ndarray) -> Report:
    F = P.field
    rep = Report(title="gauge functional class")
    rep.add("v H-linear", *_w(F, functional_linear_defect(v, P.RR)))
    one = P.RR.coaug
    rep.compare(F, "v(1 (x) 1) = 1", np.array([F.dot(v, one)]), np.array([F.one]))
    rep.compare(F, "lambda Psi(v) = eps", F.dot(lam, psi(v, P.RR)), P.RR.counit)
    return rep


def check_S_membership(P: PreBialgebraData, xi: np.ndarray) -> Report:
    """``xi`` H-linear, a normalized dual Sweedler 1-cocycle, and ``xi(1 (x) 1) = 1``."""
    F, H = P.field, P.H
    rep = Report(title="Sweedler cocycle class")
    full = check_cocycle(P, xi)
    rep.items.append(full.get("YD3' xi H-linear (adjoint)"))
    rep.items.append(full.get("YD5' normalized dual Sweedler 1-cocycle"))
    rep.compare(F, "xi(1 (x) 1) = 1_H", F.dot(xi, P.RR.coaug), H.unit)
    return rep


def _w(F, diff):
    w = first_witness(F, diff)
    return w is None, w


def gauge_constraints(P: PreBialgebraData, lam: np.ndarray):
    """Affine description ``(particular, directions)`` of the gauge class.

    Every ``particular + directions @ c`` is H-linear with ``v(1 (x) 1) = 1`` and
    ``lambda Psi(v) = eps``.
    """
    F = P.field
    RR = P.RR
    N = RR.dim
    lin = F.reduce(RR.action.transpose(1, 2, 0) - F.einsum("h,zk->hzk", P.H.counit, F.eye(N)))
    lin = lin.reshape(-1, N)
    L = F.einsum("h,hkz->zk", lam, RR.coaction)
    A = np.concatenate([lin, L, RR.coaug.reshape(1, -1)], axis=0)
    b = np.concatenate([F.zeros(lin.shape[0]), RR.counit, np.array([F.one], dtype=F.dtype)])
    x0 = solve_linear(F, A, b)
    if x0 is None:
        raise InputError("gauge class is empty")
    return x0, nullspace(F, A)


def random_gauge(P: PreBialgebraData, lam: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    F = P.field
    x0, N = gauge_constraints(P, lam)
    c = F.random(N.shape[1], rng)
    return F.reduce(x0 + F.dot(N, c))


# ---------------------------------------------------------------------------
# alpha(w) and the v-conditions


def alpha_parts(P: PreBialgebraData, w: np.ndarray):
    F = P.field
    w_inv = convolution_inverse(w, P.RR)
    if w_inv is None:
        raise InputError("w is not convolution invertible")
    mw = m_twisted(P, w, w_inv)
    I = F.eye(P.dim)
    eps = P.R.counit
    RRR = P.RRR
    a_plus = convolve(F.dot(w, F.kron(I, mw)), F.kron(eps, w), RRR)
    a_minus = convolve(F.kron(w_inv, eps), F.dot(w_inv, F.kron(mw, I)), RRR)
    return mw, a_plus, a_minus


def alpha_of(P: PreBialgebraData, w: np.ndarray) -> np.ndarray:
    """``alpha(w) = alpha_+(w) * alpha_-(w^{-1})`` with ``m^w = w * m * w^{-1}``."""
    _, a_plus, a_minus = alpha_parts(P, w)
    return convolve(a_plus, a_minus, P.RRR)


V_ITEMS = ("m^v H-colinear", "m^v quasi-associative", "alpha(v) colinear", "v unital")
V_TO_COCYCLE = dict(zip(V_ITEMS, ("YD6'", "YD7'", "YD8'", "YD10'")))


def check_v_conditions(P: PreBialgebraData, v: np.ndarray) -> Report:
    F, H = P.field, P.H
    rep = Report(title="gauge conditions")
    mv, _, _ = alpha_parts(P, v)
    alpha = alpha_of(P, v)
    ok, w = is_colinear(mv, P.RR, P.R)
    rep.add(V_ITEMS[0], ok, w)
    I = F.eye(P.dim)
    RRR = P.RRR
    lhs = convolve(F.dot(mv, F.kron(I, mv)), alpha, RRR)
    rhs = convolve(alpha, F.dot(mv, F.kron(mv, I)), RRR)
    rep.compare(F, V_ITEMS[1], lhs, rhs)
    rep.compare(F, V_ITEMS[2], psi(alpha, RRR), F.outer(H.unit, alpha))
    v3 = v.reshape(P.dim, P.dim)
    u = P.unit
    eps = P.R.counit
    d1 = F.reduce(F.dot(v3, u) - eps)
    d2 = F.reduce(F.dot(u, v3) - eps)
    w1, w2 = first_witness(F, d1), first_witness(F, d2)
    rep.add(V_ITEMS[3], w1 is None and w2 is None, w1 or w2)
    return rep


# ---------------------------------------------------------------------------
# braided and plain dual quasi-bialgebras


@dataclass(frozen=True, eq=False)
class BraidedDualQuasiData:
    P: PreBialgebraData  # the YD coalgebra with its (possibly non-associative) multiplication
    alpha: np.ndarray  # on Q^{(x)3}

    @property
    def field(self) -> Field:
        return self.P.field

    @property
    def H(self) -> HopfData:
        return self.P.H

    @property
    def dim(self) -> int:
        return self.P.dim


@dataclass(frozen=True, eq=False)
class DualQuasiData:
    D: BialgebraData  # coalgebra, multiplication and unit; associativity not assumed
    alpha: np.ndarray  # on D^{(x)3}

    @property
    def field(self) -> Field:
        return self.D.field

    @property
    def dim(self) -> int:
        return self.D.dim


def twist_prebialgebra(P: PreBialgebraData, v: np.ndarray, xi: np.ndarray | None = None,
                       check: bool = True) -> BraidedDualQuasiData:
    """``R^v = (R, m^v, u, Delta, eps)`` with reassociator ``d2_R(v)``."""
    F = P.field
    if check:
        rep = check_v_conditions(P, v)
        if not rep.ok:
            raise InputError("gauge conditions fail:\n" + "\n".join(it.line() for it in rep.failed()))
    if xi is None:
        xi = map_F(P, v)
    v_inv = convolution_inverse(v, P.RR)
    mv = m_twisted(P, v, v_inv)
    d = P.dim
    alpha = partial_prebialgebra(P, xi, v, 2)
    return BraidedDualQuasiData(P.with_mult(mv.reshape(d, d, d)), alpha)


def _dq_axioms(rep: Report, F: Field, d: int, mult: np.ndarray, unit: np.ndarray, eps: np.ndarray,
               alpha: np.ndarray, C3, C4) -> None:
    """Reassociator axioms shared by the plain and braided checkers."""
    m = mult.reshape(d, d * d)
    I = F.eye(d)
    inv = convolution_inverse(alpha, C3)
    rep.add("alpha invertible", inv is not None)
    lhs = convolve(precompose_mult(F, alpha, mult, 3, 3), precompose_mult(F, alpha, mult, 3, 1), C4)
    rhs = convolve_many(C4, F.kron(eps, alpha), precompose_mult(F, alpha, mult, 3, 2), F.kron(alpha, eps))
    rep.compare(F, "(i) alpha 3-cocycle", lhs, rhs)
    a3 = alpha.reshape(d, d, d)
    ee = F.outer(eps, eps)
    w = None
    for slot in range(3):
        found = first_witness(F, F.tensordot(a3, unit, ([slot], [0])) - ee)
        if found is not None:
            w = (slot,) + found
            break
    rep.add("(ii) alpha unital", w is None, w)
    lhs = convolve(F.dot(m, F.kron(I, m)), alpha, C3)
    rhs = convolve(alpha, F.dot(m, F.kron(m, I)), C3)
    rep.compare(F, "(iii) quasi-associativity", lhs, rhs)
    rep.compare(F, "m unital (left)", F.tensordot(mult, unit, ([1], [0])), I)
    rep.compare(F, "m unital (right)", F.tensordot(mult, unit, ([2], [0])), I)


def check_braided_dq(Q: BraidedDualQuasiData) -> Report:
    P, F = Q.P, Q.field
    H = P.H
    d = P.dim
    rep = Report(title="braided dual quasi-bialgebra")
    rep.extend(check_yd_coalgebra(P.R), prefix="Q: ")
    m = P.mult_matrix
    ok, w = is_linear(m, P.RR, P.R)
    rep.add("m H-linear", ok, w)
    ok, w = is_colinear(m, P.RR, P.R)
    rep.add("m H-colinear", ok, w)
    lhs = F.tensordot(P.R.delta, m, ([2], [0]))
    rhs = F.einsum("ia,jb,abz->ijz", m, m, P.RR.delta)
    rep.compare(F, "m coalgebra map (Delta)", lhs, rhs)
    rep.compare(F, "m coalgebra map (eps)", F.dot(P.R.counit, m), P.RR.counit)
    rep.add("alpha H-linear", *_w(F, functional_linear_defect(Q.alpha, P.RRR)))
    rep.compare(F, "alpha H-colinear", psi(Q.alpha, P.RRR), F.outer(H.unit, Q.alpha))
    _dq_axioms(rep, F, d, P.mult, P.unit, P.R.counit, Q.alpha, P.RRR, yd_tensor_power(P.R, 4))
    return rep


def check_dual_quasi(D: DualQuasiData) -> Report:
    B, F = D.D, D.field
    d = B.dim
    rep = Report(title="dual quasi-bialgebra")
    sub = Report()
    _check_coalgebra(sub, B.coalgebra)
    rep.extend(sub)
    M = B.mult
    rep.compare(F, "m coalgebra map (Delta)", *delta_multiplicative_sides(F, B.delta, M))
    rep.compare(F, "m coalgebra map (eps)", F.tensordot(B.counit, M, ([0], [0])), F.outer(B.counit, B.counit))
    C = B.coalgebra
    _dq_axioms(rep, F, d, M, B.unit, B.counit, D.alpha, TensorPowerCoalgebra(C, 3), TensorPowerCoalgebra(C, 4))
    return rep


def trivial_reassociator(D: BialgebraData) -> np.ndarray:
    return TensorPowerCoalgebra(D.coalgebra, 3).counit


def bosonize_braided_dq(Q: BraidedDualQuasiData) -> DualQuasiData:
    """``Q # H``: ``m(r#h (x) s#l) = m(r (x) h1.s) # h2 l`` and ``alpha_B = Mho^3(alpha)``."""
    P, F = Q.P, Q.field
    H = P.H
    d, dH = P.dim, H.dim
    dA = d * dH
    MH = H.mult.reshape(dH, dH * dH)
    mB = F.dot(F.kron(P.mult_matrix, MH), F.kron(F.eye(d), c_HR(P), F.eye(dH)))
    coal = smash_coproduct(P.R, H)
    B = BialgebraData(field=F, delta=coal.delta, counit=coal.counit, mult=mB.reshape(dA, dA, dA),
                      unit=F.kron(P.unit, H.unit), labels=coal.labels)
    return DualQuasiData(B, mho_n(Q.alpha, P, 3))


def coradical_sanity(Q: BraidedDualQuasiData, B: DualQuasiData) -> Report:
    """``K (x) H`` is a subcoalgebra of ``Q # H`` whose wedge powers exhaust it."""
    P, F = Q.P, Q.field
    rep = Report(title="coradical sanity")
    S = embed_H(P)  # columns 1 # h
    D = B.D.delta
    img = F.einsum("abz,zh->abh", D, S)
    rep.compare(F, "K (x) H subcoalgebra", img, F.einsum("ai,bj,ijh->abh", S, S, P.H.delta))
    dims = wedge_filtration(B.D.coalgebra, S)
    rep.add("wedge filtration exhausts Q # H", dims[-1] == B.dim, detail="dims " + ",".join(map(str, dims)))
    rep.values["dims"] = dims
    return rep


def twist_dual_quasi(D: DualQuasiData, v: np.ndarray, v_inv: np.ndarray | None = None) -> DualQuasiData:
    """``D^v``: ``m^v = v * m * v^{-1}``, ``alpha^v = (eps v) * v(D m) * alpha * v^-1(m D) * (v^-1 eps)``."""
    B, F = D.D, D.field
    d = B.dim
    C = B.coalgebra
    C2 = TensorPowerCoalgebra(C, 2)
    C3 = TensorPowerCoalgebra(C, 3)
    v3 = v.reshape(d, d)
    u, eps = B.unit, B.counit
    if not (F.equal(F.dot(v3, u), eps) and F.equal(F.dot(u, v3), eps)):
        raise InputError("gauge transformation is not unital")
    if v_inv is None:
        v_inv = convolution_inverse(v, C2)
        if v_inv is None:
            raise InputError("gauge transformation is not invertible")
    m = B.mult.reshape(d, d * d)
    mv = convolve(convolve(v, m, C2), v_inv, C2)
    alpha = convolve_many(C3, F.kron(eps, v), precompose_mult(F, v, B.mult, 2, 2), D.alpha,
                          precompose_mult(F, v_inv, B.mult, 2, 1), F.kron(v_inv, eps))
    Bv = BialgebraData(field=F, delta=B.delta, counit=B.counit, mult=mv.reshape(d, d, d), unit=B.unit,
                       labels=B.labels)
    return DualQuasiData(Bv, alpha)
