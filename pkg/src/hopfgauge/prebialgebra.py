"""Pre-bialgebras with cocycle in YD, bosonization and splitting data.

The bosonization ``R #_xi H`` lives on ``R (x) H`` with index ``r * dim H + h``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import Field, InputError, first_witness, nullspace, nullspace_stacked
from .structures import (BialgebraData, CoalgebraData, HopfData, Report, check_structure,
                         convolution_inverse, convolve)
from .yd import (YDCoalgebraData, adjoint_module, braiding, check_yd_coalgebra, is_colinear,
                 is_linear, phi, smash_coproduct, trivial_module, yd_tensor_coalgebra,
                 yd_tensor_power)


@dataclass(frozen=True, eq=False)
class PreBialgebraData:
    R: YDCoalgebraData
    mult: np.ndarray  # (d, d, d)

    def __post_init__(self):
        d = self.R.dim
        if self.mult.shape != (d, d, d):
            raise InputError(f"mult has shape {self.mult.shape}, expected {(d, d, d)}")
        if self.R.coaug is None:
            raise InputError("a pre-bialgebra needs a coaugmentation (unit)")

    @property
    def field(self) -> Field:
        return self.R.field

    @property
    def H(self) -> HopfData:
        return self.R.H

    @property
    def dim(self) -> int:
        return self.R.dim

    @property
    def unit(self) -> np.ndarray:
        return self.R.coaug

    @property
    def labels(self):
        return self.R.labels

    @property
    def mult_matrix(self) -> np.ndarray:
        d = self.dim
        return self.mult.reshape(d, d * d)

    @cached_property
    def RR(self) -> YDCoalgebraData:
        return yd_tensor_coalgebra(self.R, self.R)

    @cached_property
    def RRR(self) -> YDCoalgebraData:
        return yd_tensor_power(self.R, 3)

    def power(self, n: int) -> YDCoalgebraData:
        if n == 1:
            return self.R
        if n == 2:
            return self.RR
        if n == 3:
            return self.RRR
        return yd_tensor_power(self.R, n)

    def with_mult(self, mult: np.ndarray) -> "PreBialgebraData":
        return PreBialgebraData(self.R, mult)


def check_prebialgebra(P: PreBialgebraData) -> Report:
    F, d = P.field, P.dim
    rep = Report(title="pre-bialgebra in YD")
    rep.extend(check_yd_coalgebra(P.R), prefix="R: ")
    m = P.mult_matrix
    ok, w = is_linear(m, P.RR, P.R)
    rep.add("m H-linear", ok, w)
    lhs = F.tensordot(P.R.delta, m, ([2], [0]))  # (i, j, z)
    rhs = F.einsum("ia,jb,abz->ijz", m, m, P.RR.delta)
    rep.compare(F, "m coalgebra map (Delta)", lhs, rhs)
    rep.compare(F, "m coalgebra map (eps)", F.dot(P.R.counit, m), P.RR.counit)
    u = P.unit
    I = F.eye(d)
    rep.compare(F, "unit law m(R (x) u)", F.tensordot(P.mult, u, ([2], [0])), I)
    rep.compare(F, "unit law m(u (x) R)", F.tensordot(P.mult, u, ([1], [0])), I)
    return rep


def check_associative(P: PreBialgebraData) -> tuple[bool, object]:
    F = P.field
    m = P.mult_matrix
    I = F.eye(P.dim)
    w = first_witness(F, F.dot(m, F.kron(I, m)) - F.dot(m, F.kron(m, I)))
    return w is None, w


def _m_xi(P: PreBialgebraData, xi: np.ndarray) -> np.ndarray:
    """``(m (x) xi) Delta_{R(x)R}`` as a ``(d*dH, d*d)`` matrix."""
    F = P.field
    T = F.einsum("abz,sa,pb->spz", P.RR.delta, P.mult_matrix, xi)
    return T.reshape(P.dim * P.H.dim, P.dim * P.dim)


def _xi_rho(P: PreBialgebraData, xi: np.ndarray) -> np.ndarray:
    """``(xi (x) rho_{R(x)R}) Delta_{R(x)R}`` as a tensor ``[p, k, w, z]``."""
    F = P.field
    t = F.tensordot(xi, P.RR.delta, ([1], [0]))  # (p, z2, z)
    return F.einsum("pyz,kwy->pkwz", t, P.RR.coaction)


def cocycle_yd6_equivalent_sides(P: PreBialgebraData, xi: np.ndarray, xi_inv: np.ndarray):
    """``rho(m(z))`` against ``xi(z1) z2_{-1} xi^{-1}(z3) (x) m(z2_0)`` as ``[h, r, z]``."""
    F, H = P.field, P.H
    dH, d = H.dim, P.dim
    lhs = F.tensordot(P.R.coaction, P.mult_matrix, ([2], [0]))
    G = F.einsum("pkwz,apk,rw->arz", _xi_rho(P, xi), H.mult, P.mult_matrix)
    T = P.RR.pull(G.reshape(dH * d, -1), xi_inv)  # ((a, r), q, z)
    T = T.reshape(dH, d, dH, -1)
    rhs = F.einsum("baq,arqz->brz", H.mult, T)
    return lhs, rhs


def check_cocycle(P: PreBialgebraData, xi: np.ndarray) -> Report:
    """The six cocycle conditions plus convolution invertibility."""
    F, H = P.field, P.H
    d, dH = P.dim, H.dim
    rep = Report(title="cocycle conditions")
    xi = np.asarray(xi)
    if xi.shape != (dH, d * d):
        raise InputError(f"xi has shape {xi.shape}, expected {(dH, d * d)}")
    RR = P.RR
    ok, w = is_linear(xi, RR, adjoint_module(H))
    rep.add("YD3' xi H-linear (adjoint)", ok, w)
    # YD5': Delta_H xi = (m_H (x) xi)(xi (x) rho) Delta ; eps_H xi = eps (x) eps
    lhs = F.tensordot(H.delta, xi, ([2], [0]))
    rhs = F.einsum("pkwz,apk,bw->abz", _xi_rho(P, xi), H.mult, xi)
    w1 = first_witness(F, lhs - rhs)
    w2 = first_witness(F, F.dot(H.counit, xi) - RR.counit)
    rep.add("YD5' normalized dual Sweedler 1-cocycle", w1 is None and w2 is None, w1 or w2)
    # YD6': c_{R,H}(m (x) xi) Delta = (m_H (x) m)(xi (x) rho) Delta, H acting by multiplication
    mx = _m_xi(P, xi).reshape(d, dH, d * d)
    lhs = F.einsum("kts,spz,akp->atz", P.R.coaction, mx, H.mult)
    rhs = F.einsum("pkwz,apk,rw->arz", _xi_rho(P, xi), H.mult, P.mult_matrix)
    rep.compare(F, "YD6' m-xi braided compatibility", lhs, rhs)
    # YD7': m(R (x) m) = m(m (x) R) Phi(xi)
    I = F.eye(d)
    m = P.mult_matrix
    lhs = F.dot(m, F.kron(I, m))
    rhs = F.dot(F.dot(m, F.kron(m, I)), phi(xi, RR, P.R.module))
    rep.compare(F, "YD7' twisted associativity", lhs, rhs)
    # YD8'
    G1 = _m_xi(P, xi)
    IH = F.eye(dH)
    MH = H.mult.reshape(dH, dH * dH)
    lhs = F.dot(MH, F.dot(F.kron(xi, IH), F.kron(I, G1)))
    c_HR, _ = braiding(adjoint_module(H), P.R.module)
    rhs = F.dot(MH, F.dot(F.kron(xi, IH), F.dot(F.kron(I, c_HR), F.kron(G1, I))))
    rep.compare(F, "YD8' cocycle condition", lhs, rhs)
    # YD10'
    u = P.unit
    xi3 = xi.reshape(dH, d, d)
    target = F.outer(H.unit, P.R.counit)
    w1 = first_witness(F, F.tensordot(xi3, u, ([2], [0])) - target)
    w2 = first_witness(F, F.tensordot(xi3, u, ([1], [0])) - target)
    rep.add("YD10' xi unital", w1 is None and w2 is None, w1 or w2)
    inv = convolution_inverse(xi, RR, H.algebra)
    rep.add("xi convolution invertible", inv is not None)
    if inv is not None:
        l6, r6 = cocycle_yd6_equivalent_sides(P, xi, inv)
        rep.compare(F, "YD6' (coaction form)", l6, r6)
    return rep


COCYCLE_ITEMS = ("YD3'", "YD5'", "YD6'", "YD7'", "YD8'", "YD10'")


def cocycle_item(rep: Report, tag: str) -> bool:
    return all(it.ok for it in rep.items if it.name.startswith(tag + " "))


def trivial_cocycle(P: PreBialgebraData) -> np.ndarray:
    return P.field.outer(P.H.unit, P.RR.counit)


# ---------------------------------------------------------------------------
# bosonization


def c_HR(P: PreBialgebraData) -> np.ndarray:
    """``h (x) r -> h1.r (x) h2``."""
    F, H = P.field, P.H
    T = F.einsum("abh,tar->tbhr", H.delta, P.R.action)
    return T.reshape(P.dim * H.dim, H.dim * P.dim)


def bosonize_cocycle(P: PreBialgebraData, xi: np.ndarray, check: bool = True):
    """``A = R #_xi H`` with its projection and section."""
    F, H = P.field, P.H
    d, dH = P.dim, H.dim
    if check:
        rep = check_prebialgebra(P)
        rep.extend(check_cocycle(P, xi))
        if not rep.ok:
            raise InputError("bosonization refused:\n" + "\n".join(it.line() for it in rep.failed()))
    IR, IH = F.eye(d), F.eye(dH)
    MH = H.mult.reshape(dH, dH * dH)
    step1 = F.kron(IR, c_HR(P), IH)
    step2 = F.kron(_m_xi(P, xi), MH)
    step3 = F.kron(IR, MH)
    mA = F.dot(step3, F.dot(step2, step1))
    dA = d * dH
    coal = smash_coproduct(P.R, H)
    A = BialgebraData(field=F, delta=coal.delta, counit=coal.counit, mult=mA.reshape(dA, dA, dA),
                      unit=F.kron(P.unit, H.unit), labels=coal.labels)
    pi = F.kron(P.R.counit.reshape(1, -1), IH)
    sigma = F.kron(P.unit.reshape(-1, 1), IH)
    return A, pi, sigma


# ---------------------------------------------------------------------------
# splitting data


@dataclass(frozen=True, eq=False)
class SplittingDatum:
    A: BialgebraData
    H: HopfData
    pi: np.ndarray  # (dH, dA)
    sigma: np.ndarray  # (dA, dH)

    def __post_init__(self):
        dA, dH = self.A.dim, self.H.dim
        if self.pi.shape != (dH, dA) or self.sigma.shape != (dA, dH):
            raise InputError("pi/sigma shapes do not match A and H")


def check_splitting(S: SplittingDatum) -> Report:
    F, A, H = S.A.field, S.A, S.H
    pi, sg = S.pi, S.sigma
    rep = Report(title="splitting datum")
    rep.extend(check_structure(A, "bialgebra"), prefix="A: ")
    rep.extend(check_structure(H, "hopf"), prefix="H: ")
    rep.compare(F, "pi sigma = id", F.dot(pi, sg), F.eye(H.dim))
    # sigma bialgebra map
    lhs = F.einsum("zk,kij->zij", sg, H.mult)
    rhs = F.einsum("zab,ai,bj->zij", A.mult, sg, sg)
    rep.compare(F, "sigma multiplicative", lhs, rhs)
    rep.compare(F, "sigma unital", F.dot(sg, H.unit), A.unit)
    lhs = F.einsum("abz,zk->abk", A.delta, sg)
    rhs = F.einsum("ai,bj,ijk->abk", sg, sg, H.delta)
    rep.compare(F, "sigma comultiplicative", lhs, rhs)
    rep.compare(F, "sigma counital", F.dot(A.counit, sg), H.counit)
    # pi coalgebra map
    lhs = F.einsum("abz,zk->abk", H.delta, pi)
    rhs = F.einsum("ai,bj,ijk->abk", pi, pi, A.delta)
    rep.compare(F, "pi comultiplicative", lhs, rhs)
    rep.compare(F, "pi counital", F.dot(H.counit, pi), A.counit)
    # pi(sigma(h) x sigma(h')) = h pi(x) h'
    sx = F.einsum("zab,ah->zhb", A.mult, sg)  # sigma(h) x
    lhs = F.einsum("pz,zhb->phb", pi, sx)
    rhs = F.einsum("pha,ab->phb", H.mult, pi)
    rep.compare(F, "pi left H-linear", lhs, rhs)
    xs = F.einsum("zab,bh->zah", A.mult, sg)
    lhs = F.einsum("pz,zah->pah", pi, xs)
    rhs = F.einsum("pbh,ba->pah", H.mult, pi)
    rep.compare(F, "pi right H-linear", lhs, rhs)
    return rep


@dataclass(frozen=True, eq=False)
class Extraction:
    P: PreBialgebraData
    xi: np.ndarray
    omega: np.ndarray  # (dA, dR*dH): r (x) h -> r sigma(h)
    omega_inv: np.ndarray
    basis: np.ndarray  # columns: R inside A
    report: Report


def extract_prebialgebra(S: SplittingDatum, check: bool = True) -> Extraction:
    """Recover ``(R, xi)`` from a splitting datum, with ``omega: R #_xi H -> A``."""
    A, H = S.A, S.H
    F = A.field
    dA, dH = A.dim, H.dim
    pi, sg = S.pi, S.sigma
    rep = Report(title="extraction")
    if check:
        sub = check_splitting(S)
        rep.extend(sub)
        if not sub.ok:
            raise InputError("invalid splitting datum:\n" + "\n".join(it.line() for it in sub.failed()))
    # R = A^{co pi}
    T = F.einsum("xbz,hb->xhz", A.delta, pi)
    T = F.reduce(T - F.einsum("xz,h->xhz", F.eye(dA), H.unit))
    Rb = nullspace(F, T.reshape(dA * dH, dA))
    d = Rb.shape[1]
    if d == 0:
        raise InputError("A^{co pi} is zero")
    free = _free_rows(F, Rb)

    def coords(X, what):
        X = np.asarray(X)
        C = X[free]
        if not F.equal(F.tensordot(Rb, C, ([1], [0])), X):
            raise InputError(f"{what} leaves R = A^co pi")
        return C

    Q = F.dot(sg, F.dot(H.antipode, pi))  # sigma S pi
    tau = F.einsum("pqa,bq,zpb->za", A.delta, Q, A.mult)
    # action h.r = sigma(h1) r sigma(S h2)
    sS = F.dot(sg, H.antipode)
    left = F.einsum("ypa,pk->yka", A.mult, sg)  # sigma(k) a
    right = F.einsum("zyb,bl->zyl", A.mult, sS)  # y sigma(S l)
    actA = F.einsum("klh,yka,zyl->zha", H.delta, left, right)
    act = coords(F.tensordot(actA, Rb, ([2], [0])), "H-action")  # (k, h, r)
    coA = F.einsum("pza,hp->hza", A.delta, pi)
    co = coords(F.tensordot(coA, Rb, ([2], [0])).transpose(1, 0, 2), "coaction").transpose(1, 0, 2)
    dA_ = F.einsum("yp,pza->yza", tau, A.delta)
    dA_ = F.tensordot(dA_, Rb, ([2], [0]))  # (y, z, r)
    dl = coords(dA_, "Delta_R")
    delta = coords(dl.transpose(1, 0, 2), "Delta_R").transpose(1, 0, 2)
    counit = F.dot(A.counit, Rb)
    unit = coords(A.unit, "unit")
    prod = F.einsum("zab,ai,bj->zij", A.mult, Rb, Rb)
    mult = coords(F.tensordot(tau, prod, ([1], [0])), "m_R")
    xi = F.tensordot(pi, prod, ([1], [0])).reshape(dH, d * d)
    labels = tuple(_describe(F, Rb[:, j], A.labels) for j in range(d))
    R = YDCoalgebraData(field=F, delta=delta, counit=counit, coaug=unit, labels=labels,
                        H=H, action=act, coaction=co)
    P = PreBialgebraData(R, mult)
    omega = F.einsum("zab,ai,bh->zih", A.mult, Rb, sg).reshape(dA, d * dH)
    tau_R = coords(tau, "tau")  # (r, a)
    omega_inv = F.einsum("pqa,rp,hq->rha", A.delta, tau_R, pi).reshape(d * dH, dA)
    rep.compare(F, "omega omega^-1 = id", F.dot(omega, omega_inv), F.eye(dA))
    rep.compare(F, "omega^-1 omega = id", F.dot(omega_inv, omega), F.eye(d * dH))
    if check:
        rep.extend(check_prebialgebra(P), prefix="R: ")
        rep.extend(check_cocycle(P, xi), prefix="xi: ")
        B, _, _ = bosonize_cocycle(P, xi, check=False)
        rep.extend(omega_iso_report(F, A, B, omega))
    return Extraction(P, xi, omega, omega_inv, Rb, rep)


def omega_iso_report(F: Field, A: BialgebraData, B: BialgebraData, omega: np.ndarray) -> Report:
    """``omega: B -> A`` as an algebra and coalgebra map."""
    rep = Report()
    lhs = F.tensordot(omega, B.mult, ([1], [0]))
    rhs = F.einsum("zab,ai,bj->zij", A.mult, omega, omega)
    rep.compare(F, "omega multiplicative", lhs, rhs)
    rep.compare(F, "omega unital", F.dot(omega, B.unit), A.unit)
    lhs = F.einsum("ai,bj,ijk->abk", omega, omega, B.delta)
    rhs = F.tensordot(A.delta, omega, ([2], [0]))
    rep.compare(F, "omega comultiplicative", lhs, rhs)
    rep.compare(F, "omega counital", F.dot(A.counit, omega), B.counit)
    return rep


def _free_rows(F: Field, N: np.ndarray) -> list[int]:
    """Rows of a reduced nullspace basis carrying an identity block."""
    rows = []
    for j in range(N.shape[1]):
        col = N[:, j]
        for i in range(N.shape[0]):
            if F.reduce(col[i] - 1) == 0 and all(F.reduce(N[i, k]) == 0 for k in range(N.shape[1]) if k != j):
                rows.append(i)
                break
        else:
            raise InputError("basis is not in reduced form")
    return rows


def _describe(F: Field, vec, labels) -> str:
    terms = []
    for c, lab in zip(vec, labels):
        if F.is_zero_scalar(c):
            continue
        s = F.format(c)
        terms.append(lab if s == "1" else f"{s}*{lab}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Omega / Mho transport between R^{(x)n} and (R # H)^{(x)n}


def embed_R(P: PreBialgebraData) -> np.ndarray:
    """``c -> c # 1`` as a ``(d*dH, d)`` matrix."""
    F = P.field
    return F.kron(F.eye(P.dim), P.H.unit.reshape(-1, 1))


def omega_n(gamma: np.ndarray, P: PreBialgebraData, n: int, A: BialgebraData | None = None,
            report: Report | None = None) -> np.ndarray:
    """``Omega^n(gamma)(c1 ... cn) = gamma(c1#1 ... cn#1)``."""
    F = P.field
    dA = P.dim * P.H.dim
    if n == 0:
        return gamma
    if report is not None:
        if A is None:
            raise InputError("bilinearity check needs the bosonization")
        report.extend(check_bilinear_balanced(gamma, P, A, n))
    J = embed_R(P)
    g = gamma.reshape((dA,) * n)
    for _ in range(n):
        g = F.tensordot(g, J, ([0], [0]))
    return g.reshape(-1)


def mho_matrix(P: PreBialgebraData, n: int) -> np.ndarray:
    """``(R^n, A^n)`` matrix of the normalization behind ``Mho^n``."""
    F, H = P.field, P.H
    d, dH = P.dim, H.dim
    dA = d * dH
    # T(k (x) c (x) h) = k1.c (x) k2 h
    T = F.einsum("abk,tac,zbh->tzkch", H.delta, P.R.action, H.mult).reshape(dA, dH * dA)
    Q = F.eye(dA)  # Q_1 = id on R (x) H
    for k in range(1, n):
        # Q_{k+1} = (I_{R^k} (x) T)(Q_k (x) I_A)
        Q = F.dot(F.kron(F.eye(d ** k), T), F.kron(Q, F.eye(dA)))
    return F.dot(F.kron(F.eye(d ** n), H.counit.reshape(1, -1)), Q)


def mho_n(v: np.ndarray, P: PreBialgebraData, n: int) -> np.ndarray:
    if n == 0:
        return v
    return P.field.dot(v, mho_matrix(P, n))


def check_bilinear_balanced(gamma: np.ndarray, P: PreBialgebraData, A: BialgebraData, n: int) -> Report:
    """H-bilinearity (first/last factor) and multibalance of ``gamma`` on ``A^n``."""
    F, H = P.field, P.H
    dA = A.dim
    rep = Report()
    if n == 0:
        return rep
    sig = embed_H(P)
    g = gamma.reshape((dA,) * n)

    def on_leg(t, leg, M):
        out = F.tensordot(t, M, ([leg], [0]))
        return np.moveaxis(out, -1, leg)

    bad_l = bad_r = bad_b = None
    for h in range(H.dim):
        s = sig[:, h]
        L = A.algebra.left_mult(s)
        Rm = A.algebra.right_mult(s)
        eh = H.counit[h]
        if bad_l is None:
            bad_l = first_witness(F, on_leg(g, 0, L) - F.reduce(eh * g))
            bad_l = None if bad_l is None else (h,) + bad_l
        if bad_r is None:
            bad_r = first_witness(F, on_leg(g, n - 1, Rm) - F.reduce(eh * g))
            bad_r = None if bad_r is None else (h,) + bad_r
        for i in range(n - 1):
            if bad_b is None:
                w = first_witness(F, on_leg(g, i, Rm) - on_leg(g, i + 1, L))
                bad_b = None if w is None else (h, i) + w
    rep.add("H-bilinear (left)", bad_l is None, bad_l)
    rep.add("H-bilinear (right)", bad_r is None, bad_r)
    rep.add("H-multibalanced", bad_b is None, bad_b)
    return rep


def embed_H(P: PreBialgebraData) -> np.ndarray:
    F = P.field
    return F.kron(P.unit.reshape(-1, 1), F.eye(P.H.dim))


def bilinear_balanced_basis(P: PreBialgebraData, A: BialgebraData, n: int) -> np.ndarray:
    """Basis (columns) of the H-bilinear, H-multibalanced functionals on ``A^n``.

    Built directly from the defining constraints, independently of ``Mho^n``.
    """
    F, H = P.field, P.H
    dA = A.dim
    N = dA ** n
    sig = embed_H(P)
    I = F.eye(dA)

    def leg_op(M, leg):
        # functional gamma -> gamma o (I .. M .. I) as a matrix on coefficient vectors
        ops = [I] * n
        ops[leg] = M
        return F.kron(*ops).T

    blocks = []
    for h in range(H.dim):
        s = sig[:, h]
        L = A.algebra.left_mult(s)
        Rm = A.algebra.right_mult(s)
        eI = F.reduce(H.counit[h] * F.eye(N))
        blocks.append(F.reduce(leg_op(L, 0) - eI))
        blocks.append(F.reduce(leg_op(Rm, n - 1) - eI))
        for i in range(n - 1):
            blocks.append(F.reduce(leg_op(Rm, i) - leg_op(L, i + 1)))
    return nullspace_stacked(F, blocks, N)
