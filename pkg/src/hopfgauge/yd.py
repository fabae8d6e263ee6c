"""Yetter-Drinfeld modules (left-left) over a finite-dimensional Hopf algebra.

``action[k, h, v]``   coefficient of e_k in ``e_h . e_v``
``coaction[h, k, v]`` coefficient of ``e_h (x) e_k`` in ``rho(e_v)``

Serialized as ``action.reshape(dV, dH*dV)`` and ``coaction.reshape(dH*dV, dV)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Field, InputError, nullspace
from .structures import (CoalgebraData, HopfData, Report, _check_coalgebra, _labels, convolution_inverse,
                         convolve)


@dataclass(frozen=True, eq=False, kw_only=True)
class YDModuleData:
    H: HopfData
    action: np.ndarray
    coaction: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        dH = self.H.dim
        d = self.action.shape[0]
        if self.action.shape != (d, dH, d):
            raise InputError(f"action has shape {self.action.shape}, expected {(d, dH, d)}")
        if self.coaction.shape != (dH, d, d):
            raise InputError(f"coaction has shape {self.coaction.shape}, expected {(dH, d, d)}")
        object.__setattr__(self, "labels", _labels(self.labels, d, "v"))

    @property
    def field(self) -> Field:
        return self.H.field

    @property
    def dim(self) -> int:
        return self.action.shape[0]

    def act(self, h: np.ndarray) -> np.ndarray:
        """Matrix of ``v -> h . v`` for an element ``h`` of H."""
        return self.field.tensordot(self.action, h, ([1], [0]))


@dataclass(frozen=True, eq=False, kw_only=True)
class YDCoalgebraData(CoalgebraData):
    H: HopfData
    action: np.ndarray
    coaction: np.ndarray

    def __post_init__(self):
        super().__post_init__()
        YDModuleData(H=self.H, action=self.action, coaction=self.coaction, labels=self.labels)

    @property
    def module(self) -> YDModuleData:
        return YDModuleData(H=self.H, action=self.action, coaction=self.coaction, labels=self.labels)

    @property
    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(field=self.field, delta=self.delta, counit=self.counit,
                             coaug=self.coaug, labels=self.labels)


def as_module(V) -> YDModuleData:
    return V.module if isinstance(V, YDCoalgebraData) else V


# ---------------------------------------------------------------------------
# standard modules


def trivial_module(H: HopfData) -> YDModuleData:
    F = H.field
    return YDModuleData(H=H, action=H.counit.reshape(1, -1, 1).copy(),
                        coaction=H.unit.reshape(-1, 1, 1).copy(), labels=("1",))


def trivial_yd_coalgebra(H: HopfData) -> YDCoalgebraData:
    F = H.field
    one = F.asarray([1])
    return YDCoalgebraData(field=F, delta=F.asarray([[[1]]]), counit=one, coaug=one, labels=("1",),
                           H=H, action=H.counit.reshape(1, -1, 1).copy(),
                           coaction=H.unit.reshape(-1, 1, 1).copy())


def adjoint_action(H: HopfData) -> np.ndarray:
    """``act[z, h, x]``: coefficient of e_z in ``h1 x S(h2)``."""
    F = H.field
    MS = F.tensordot(H.mult, H.antipode, ([2], [0]))  # (z, p, b)
    return F.einsum("abh,pax,zpb->zhx", H.delta, H.mult, MS)


def adjoint_module(H: HopfData) -> YDModuleData:
    return YDModuleData(H=H, action=adjoint_action(H), coaction=H.delta, labels=H.labels)


def regular_module(H: HopfData) -> YDModuleData:
    """H as a left module by multiplication with coaction Delta (not YD in general)."""
    return YDModuleData(H=H, action=H.mult, coaction=H.delta, labels=H.labels)


def tensor_module(V: YDModuleData, W: YDModuleData) -> YDModuleData:
    """Diagonal action, codiagonal coaction."""
    V, W = as_module(V), as_module(W)
    H = V.H
    F = H.field
    dV, dW, dH = V.dim, W.dim, H.dim
    t = F.einsum("abh,kav->khbv", H.delta, V.action)  # (k, h, b, v)
    act = F.einsum("khbv,lbw->klhvw", t, W.action).reshape(dV * dW, dH, dV * dW)
    co = F.einsum("hab,akv->hbkv", H.mult, V.coaction)
    co = F.einsum("hbkv,blw->hklvw", co, W.coaction).reshape(dH, dV * dW, dV * dW)
    labels = tuple(f"{a}(x){b}" for a in V.labels for b in W.labels)
    return YDModuleData(H=H, action=act, coaction=co, labels=labels)


# ---------------------------------------------------------------------------
# checks


def _module_items(rep: Report, V: YDModuleData) -> None:
    H, F = V.H, V.field
    A, Co = V.action, V.coaction
    # (gh).v = g.(h.v)
    lhs = F.einsum("pgh,kpv->kghv", H.mult, A)
    rhs = F.einsum("kgu,uhv->kghv", A, A)
    rep.compare(F, "action associative", lhs, rhs)
    rep.compare(F, "action unital", F.tensordot(A, H.unit, ([1], [0])), F.eye(V.dim))
    # (Delta (x) id) rho = (id (x) rho) rho
    lhs = F.einsum("abh,hkv->abkv", H.delta, Co)
    rhs = F.einsum("auv,bku->abkv", Co, Co)
    rep.compare(F, "coaction coassociative", lhs, rhs)
    rep.compare(F, "coaction counital", F.tensordot(H.counit, Co, ([0], [0])), F.eye(V.dim))


def yd_compat_sides(V: YDModuleData):
    """Both sides of ``rho(h.v) = h1 v_{-1} S(h3) (x) h2.v_0`` as ``[g, k, h, v]``."""
    H, F = V.H, V.field
    A, Co = V.action, V.coaction
    lhs = F.einsum("gku,uhv->gkhv", Co, A)
    D = H.delta
    D3 = F.einsum("abh,pqa->pqbh", D, D)  # h1 (x) h2 (x) h3
    MS = F.tensordot(H.mult, H.antipode, ([2], [0]))  # (z, p, b): e_p S(e_b)
    # h1 y S(h3) with y = v_{-1}
    t = F.einsum("xpy,zxc->pycz", H.mult, MS)  # e_p e_y S(e_c) -> (p, y, c, z)
    t2 = F.einsum("pqch,pycz->qhyz", D3, t)  # (q, h, y, z), q = h2
    u = F.einsum("yuv,kqu->yvkq", Co, A)  # v_{-1}=y, h2.v_0 -> (y, v, k, q)
    rhs = F.einsum("qhyz,yvkq->zkhv", t2, u)
    return lhs, rhs


def check_yd(V) -> Report:
    V = as_module(V)
    rep = Report(title="Yetter-Drinfeld module")
    _module_items(rep, V)
    lhs, rhs = yd_compat_sides(V)
    rep.compare(V.field, "YD compatibility", lhs, rhs)
    return rep


def is_linear(f: np.ndarray, V, W) -> tuple[bool, object]:
    """H-linearity of ``f: V -> W``; returns (ok, witness (h, v, w))."""
    V, W = as_module(V), as_module(W)
    F = V.field
    lhs = F.einsum("wu,uhv->hvw", f, V.action)
    rhs = F.einsum("whu,uv->hvw", W.action, f)
    from .linalg import first_witness
    w = first_witness(F, lhs - rhs)
    return w is None, w


def is_colinear(f: np.ndarray, V, W) -> tuple[bool, object]:
    V, W = as_module(V), as_module(W)
    F = V.field
    lhs = F.einsum("hwu,uv->hwv", W.coaction, f)
    rhs = F.einsum("wu,huv->hwv", f, V.coaction)
    from .linalg import first_witness
    w = first_witness(F, lhs - rhs)
    return w is None, w


def functional_linear_defect(alpha: np.ndarray, V) -> np.ndarray:
    """``alpha(h.v) - eps(h) alpha(v)`` as an ``(h, v)`` array."""
    V = as_module(V)
    F = V.field
    return F.reduce(F.tensordot(alpha, V.action, ([0], [0])) - F.outer(V.H.counit, alpha))


def check_yd_coalgebra(C: YDCoalgebraData) -> Report:
    rep = Report(title="coalgebra in YD")
    F = C.field
    sub = Report()
    _check_coalgebra(sub, C.coalgebra)
    rep.extend(sub)
    sub = check_yd(C.module)
    rep.extend(sub)
    CC = tensor_module(C.module, C.module)
    ok, w = is_linear(C.delta_matrix, C.module, CC)
    rep.add("Delta H-linear", ok, w)
    triv = trivial_module(C.H)
    ok, w = is_linear(C.counit.reshape(1, -1), C.module, triv)
    rep.add("eps H-linear", ok, w)
    ok, w = is_colinear(C.delta_matrix, C.module, CC)
    rep.add("Delta H-colinear", ok, w)
    ok, w = is_colinear(C.counit.reshape(1, -1), C.module, triv)
    rep.add("eps H-colinear", ok, w)
    if C.coaug is not None:
        u = C.coaug.reshape(-1, 1)
        ok, w = is_linear(u, triv, C.module)
        rep.add("unit H-linear", ok, w)
        ok, w = is_colinear(u, triv, C.module)
        rep.add("unit H-colinear", ok, w)
    return rep


# ---------------------------------------------------------------------------
# braiding and tensor coalgebras


def braiding(V, W) -> tuple[np.ndarray, np.ndarray]:
    """``c(v (x) w) = v_{-1}.w (x) v_0`` and its inverse ``w (x) v -> v_0 (x) S^{-1}(v_{-1}).w``."""
    V, W = as_module(V), as_module(W)
    F = V.field
    dV, dW = V.dim, W.dim
    c = F.einsum("hpv,qhw->qpvw", V.coaction, W.action).reshape(dW * dV, dV * dW)
    Sinv = V.H.antipode_inverse
    act_s = F.tensordot(W.action, Sinv, ([1], [0]))  # (q, w, h): S^{-1}(e_h).w
    cinv = F.einsum("hpv,qwh->pqwv", V.coaction, act_s).reshape(dV * dW, dW * dV)
    return c, cinv


def yd_tensor_coalgebra(C: YDCoalgebraData, D: YDCoalgebraData) -> YDCoalgebraData:
    """``C (x) D`` with ``Delta(x (x) y) = x1 (x) x2_{-1}.y1 (x) x2_0 (x) y2``."""
    if C.H is not D.H and not _same_hopf(C.H, D.H):
        raise InputError("YD coalgebras over different Hopf algebras")
    F = C.field
    dC, dD = C.dim, D.dim
    # x2_{-1}.y1 : coefficients co_C[h, x2', x2] act_D[y1', h, y1]
    t = F.einsum("hpa,qhb->pqab", C.coaction, D.action)  # (x2', y1', x2, y1)
    delta = F.einsum("ixk,pqxb,bjl->iqpjkl", C.delta, t, D.delta)
    # index (x1, x2_{-1}.y1, x2_0, y2, x, y)
    delta = delta.reshape(dC, dD, dC, dD, dC, dD).reshape(dC * dD, dC * dD, dC * dD)
    mod = tensor_module(C.module, D.module)
    coaug = None
    if C.coaug is not None and D.coaug is not None:
        coaug = F.kron(C.coaug, D.coaug)
    return YDCoalgebraData(field=F, delta=delta, counit=F.kron(C.counit, D.counit), coaug=coaug,
                           labels=mod.labels, H=C.H, action=mod.action, coaction=mod.coaction)


def _same_hopf(H1: HopfData, H2: HopfData) -> bool:
    F = H1.field
    return (H1.dim == H2.dim and F.equal(H1.mult, H2.mult) and F.equal(H1.delta, H2.delta)
            and F.equal(H1.antipode, H2.antipode))


def yd_tensor_power(C: YDCoalgebraData, n: int) -> YDCoalgebraData:
    out = C
    for _ in range(n - 1):
        out = yd_tensor_coalgebra(out, C)
    return out


def smash_coproduct(R: YDCoalgebraData, H: HopfData) -> CoalgebraData:
    """``Delta(r#h) = r1 # r2_{-1} h1 (x) r2_0 # h2`` on ``R (x) H``."""
    F = H.field
    dR, dH = R.dim, H.dim
    # t[z, k, b, h]: coefficient of e_z (x) e_b in k h1 (x) h2
    t = F.einsum("zkc,cbh->zkbh", H.mult, H.delta)
    s = F.einsum("irx,krs->iksx", R.delta, R.coaction)  # r1=i, k, r2_0=s, x
    delta = F.einsum("iksx,zkbh->izsbxh", s, t).reshape(dR * dH, dR * dH, dR * dH)
    coaug = None if R.coaug is None else F.kron(R.coaug, H.unit)
    labels = tuple(f"{a}#{b}" for a in R.labels for b in H.labels)
    return CoalgebraData(field=F, delta=delta, counit=F.kron(R.counit, H.counit), coaug=coaug, labels=labels)


# ---------------------------------------------------------------------------
# Psi and Phi


def psi(alpha: np.ndarray, M) -> np.ndarray:
    """``Psi(alpha) = (H (x) alpha) rho_M`` as a ``(dim H, dim M)`` matrix."""
    M = as_module(M)
    return M.field.tensordot(M.coaction, alpha, ([1], [0]))


def psi_inverse(beta: np.ndarray, H: HopfData) -> np.ndarray:
    return H.field.dot(H.counit, beta)


def phi(alpha: np.ndarray, C: CoalgebraData, M) -> np.ndarray:
    """``Phi(alpha)(c (x) m) = c1 (x) alpha(c2).m`` as a matrix on ``C (x) M``."""
    M = as_module(M)
    F = C.field
    am = F.tensordot(alpha, M.action, ([0], [1]))  # (c2, m', m)
    P = F.einsum("abc,bpm->apcm", C.delta, am)
    d = C.dim * M.dim
    return P.reshape(d, d)


# ---------------------------------------------------------------------------
# invariant functionals and the gauge sandwich identities


def linear_functionals(V) -> np.ndarray:
    """Basis (columns) of the H-linear functionals ``alpha(h.v) = eps(h) alpha(v)``."""
    V = as_module(V)
    F, d = V.field, V.dim
    blocks = [F.reduce(V.action[:, h, :].T - V.H.counit[h] * F.eye(d)) for h in range(V.H.dim)]
    return nullspace(F, np.concatenate(blocks, axis=0))


def colinear_functionals(V) -> np.ndarray:
    """Basis (columns) of the H-colinear functionals ``v_{-1} alpha(v_0) = alpha(v) 1``."""
    V = as_module(V)
    F, d = V.field, V.dim
    blocks = [F.reduce(V.coaction[h].T - V.H.unit[h] * F.eye(d)) for h in range(V.H.dim)]
    return nullspace(F, np.concatenate(blocks, axis=0))


def sandwich_sides(C: YDCoalgebraData, Cp: YDCoalgebraData, u, up, v, vp, f, g, alpha, W) -> tuple:
    """Both sides of the two-sided gauge sandwich on ``C (x) C'``::

        (u (x) u') * [alpha (f (x) g)] * (v (x) v')
            = alpha (f^u (x) u' * g * v') Phi[u * Psi(v)],   f^u = u * f * u^{-1}.

    ``u`` must be convolution invertible and ``u', v'`` H-linear; ``f: C -> D``,
    ``g: C' -> D'`` are matrices, ``alpha: D (x) D' -> W`` with ``W`` an algebra.
    """
    F = C.field
    CC = yd_tensor_coalgebra(C, Cp)
    afg = F.dot(alpha, F.kron(f, g))
    lhs = convolve(convolve(F.kron(u, up), afg, CC, W), F.kron(v, vp), CC, W)
    u_inv = convolution_inverse(u, C)
    if u_inv is None:
        raise InputError("u is not convolution invertible")
    fu = convolve(convolve(u, f, C), u_inv, C)
    ugv = convolve(convolve(up, g, Cp), vp, Cp)
    upsi = convolve(u, psi(v, C), C, C.H.algebra)
    rhs = F.dot(F.dot(alpha, F.kron(fu, ugv)), phi(upsi, C, Cp))
    return lhs, rhs


def left_absorb_sides(C: YDCoalgebraData, Cp: YDCoalgebraData, u, f, alpha, W) -> tuple:
    """``(u (x) eps') * [alpha (f (x) C')] = alpha (u * f (x) C')``."""
    F = C.field
    CC = yd_tensor_coalgebra(C, Cp)
    I = F.eye(Cp.dim)
    lhs = convolve(F.kron(u, Cp.counit), F.dot(alpha, F.kron(f, I)), CC, W)
    rhs = F.dot(alpha, F.kron(convolve(u, f, C), I))
    return lhs, rhs


def right_absorb_sides(C: YDCoalgebraData, Cp: YDCoalgebraData, v, f, alpha, W) -> tuple:
    """``[alpha (f (x) C')] * (v (x) eps') = alpha (f * v (x) C')`` for H-colinear ``v``."""
    F = C.field
    CC = yd_tensor_coalgebra(C, Cp)
    I = F.eye(Cp.dim)
    lhs = convolve(F.dot(alpha, F.kron(f, I)), F.kron(v, Cp.counit), CC, W)
    rhs = F.dot(alpha, F.kron(convolve(f, v, C), I))
    return lhs, rhs
