"""Cohomology differentials on a bialgebra and on a pre-bialgebra with cocycle."""
from __future__ import annotations

import numpy as np

from .linalg import Field, InputError, first_witness, nullspace
from .structures import BialgebraData, Report, TensorPowerCoalgebra, convolution_inverse, convolve, convolve_many
from .prebialgebra import PreBialgebraData, bosonize_cocycle, mho_n, omega_n
from .yd import phi, psi


# ---------------------------------------------------------------------------
# functional plumbing on tensor powers


def precompose_mult(F: Field, w: np.ndarray, mult: np.ndarray, t: int, i: int) -> np.ndarray:
    """``w (E^{i-1} (x) m (x) E^{t-i})`` for ``w`` on ``E^t``, ``1 <= i <= t``."""
    d = mult.shape[0]
    W = w.reshape((d,) * t)
    out = F.tensordot(W, mult, ([i - 1], [0]))  # new legs (a, b) at the end
    out = np.moveaxis(out, [-2, -1], [i - 1, i])
    return out.reshape(-1)


def eps_left(eps: np.ndarray, w: np.ndarray, F: Field) -> np.ndarray:
    """``m_K (eps (x) w)``."""
    return F.kron(eps, w)


def eps_right(w: np.ndarray, eps: np.ndarray, F: Field) -> np.ndarray:
    return F.kron(w, eps)


def face_functionals(w, mult: np.ndarray, eps: np.ndarray, F: Field, t: int) -> list[np.ndarray]:
    """``w m_i`` for ``i = 0..t+1`` as functionals on ``E^{t+1}``."""
    d = eps.shape[0]
    if t == 0:
        s = np.asarray(w).reshape(-1)[0]
        return [F.reduce(s * eps), F.reduce(s * eps)]
    out = [eps_left(eps, w, F)]
    for i in range(1, t + 1):
        out.append(precompose_mult(F, w, mult, t, i))
    out.append(eps_right(w, eps, F))
    return out


def _scalar_inverse(F: Field, w):
    s = np.asarray(w).reshape(-1)[0]
    return np.array([F.inv(s)], dtype=F.dtype)


# ---------------------------------------------------------------------------
# bialgebra cohomology


def partial_bialgebra(E: BialgebraData, w, t: int, sign: str = "full", w_inv=None):
    """``d^t_+``, ``d^t_-`` or ``d^t = d^t_+(w) * d^t_-(w^{-1})`` on ``E``.

    ``w`` is a functional on ``E^{t}`` (a length-1 array for ``t = 0``).
    """
    if not 0 <= t <= 3:
        raise InputError("cohomology degree must be in 0..3")
    F = E.field
    C = TensorPowerCoalgebra(E.coalgebra, t + 1)
    w = np.asarray(w)
    if sign == "plus":
        return _signed_product(F, C, face_functionals(w, E.mult, E.counit, F, t)[0::2])
    if sign == "minus":
        return _signed_product(F, C, face_functionals(w, E.mult, E.counit, F, t)[1::2])
    if sign != "full":
        raise InputError(f"unknown sign {sign!r}")
    if w_inv is None:
        w_inv = invert_on_power(E, w, t)
    plus = _signed_product(F, C, face_functionals(w, E.mult, E.counit, F, t)[0::2])
    minus = _signed_product(F, C, face_functionals(w_inv, E.mult, E.counit, F, t)[1::2])
    return convolve(plus, minus, C)


def invert_on_power(E: BialgebraData, w, t: int):
    F = E.field
    if t == 0:
        return _scalar_inverse(F, w)
    inv = convolution_inverse(np.asarray(w), TensorPowerCoalgebra(E.coalgebra, t))
    if inv is None:
        raise InputError("functional is not convolution invertible")
    return inv


def _signed_product(F, C, fs):
    return convolve_many(C, *fs)


# ---------------------------------------------------------------------------
# pre-bialgebra cohomology


def m_twisted(P: PreBialgebraData, w: np.ndarray, w_inv: np.ndarray) -> np.ndarray:
    """``m^w = w * m_R * w^{-1}`` on the braided ``R (x) R`` as a ``(d, d*d)`` matrix."""
    RR = P.RR
    return convolve(convolve(w, P.mult_matrix, RR), w_inv, RR)


def _R_partial_explicit(P: PreBialgebraData, xi: np.ndarray, w, t: int, sign: str, w_inv=None):
    F = P.field
    d = P.dim
    eps = P.R.counit
    if t == 0:
        s = np.asarray(w).reshape(-1)[0]
        if sign == "full":
            return eps.copy()
        return F.reduce(s * eps)
    if sign == "full" and w_inv is None:
        w_inv = invert_R(P, w, t)
    I = F.eye(d)
    m = P.mult_matrix
    if t == 1:
        RR = P.RR
        if sign == "plus":
            return F.kron(w, w)
        if sign == "minus":
            return F.dot(w, m)
        return convolve(F.kron(w, w), F.dot(w_inv, m), RR)
    if t == 2:
        RRR = P.RRR
        Phi = phi(xi, P.RR, P.R.module)

        def plus(u):
            return convolve(F.kron(eps, u), F.dot(u, F.kron(I, m)), RRR)

        def minus(u):
            return convolve(F.dot(F.dot(u, F.kron(m, I)), Phi), F.kron(u, eps), RRR)

        if sign == "plus":
            return plus(w)
        if sign == "minus":
            return minus(w)
        return convolve(plus(w), minus(w_inv), RRR)
    raise InputError("explicit formulas cover t = 0, 1, 2")


def invert_R(P: PreBialgebraData, w, t: int):
    F = P.field
    if t == 0:
        return _scalar_inverse(F, w)
    inv = convolution_inverse(np.asarray(w), P.power(t))
    if inv is None:
        raise InputError("functional is not convolution invertible")
    return inv


def partial_prebialgebra(P: PreBialgebraData, xi: np.ndarray, w, t: int, sign: str = "full",
                         route: str = "explicit", A: BialgebraData | None = None):
    """``d^t_R`` by the explicit formulas or by transport through ``A = R #_xi H``."""
    if route == "explicit":
        return _R_partial_explicit(P, xi, w, t, sign)
    if route != "transport":
        raise InputError(f"unknown route {route!r}")
    if A is None:
        A, _, _ = bosonize_cocycle(P, xi, check=False)
    wA = mho_n(np.asarray(w), P, t)
    if sign == "full":
        # Mho^t is a monoid map, so Mho^t(w^{-1}) = Mho^t(w)^{-1}
        w_inv = invert_R(P, w, t)
        res = partial_bialgebra(A, wA, t, "full", w_inv=mho_n(w_inv, P, t))
    else:
        res = partial_bialgebra(A, wA, t, sign)
    return omega_n(res, P, t + 1)


# ---------------------------------------------------------------------------
# Z^2_H equivalences


def z2_identity_sides(P: PreBialgebraData, xi: np.ndarray, nu: np.ndarray):
    F = P.field
    I = F.eye(P.dim)
    m = P.mult_matrix
    eps = P.R.counit
    RRR = P.RRR
    lhs = convolve(F.kron(eps, nu), F.dot(nu, F.kron(I, m)), RRR)
    rhs = convolve(F.kron(nu, eps), F.dot(F.dot(nu, F.kron(m, I)), phi(xi, P.RR, P.R.module)), RRR)
    return lhs, rhs


def coinvariants(C) -> np.ndarray:
    """Basis (columns) of ``{z : rho(z) = 1 (x) z}``."""
    F = C.field
    T = F.reduce(C.coaction - F.einsum("h,kz->hkz", C.H.unit, F.eye(C.dim)))
    return nullspace(F, T.reshape(-1, C.dim))


def z2_conditions(P: PreBialgebraData, xi: np.ndarray, v: np.ndarray, lam: np.ndarray) -> dict[str, bool]:
    """Truth values of the four equivalent 2-cocycle conditions on ``v``."""
    F = P.field
    lhs, rhs = z2_identity_sides(P, xi, v)
    d2 = partial_prebialgebra(P, xi, v, 2)
    eps3 = P.RRR.counit
    B = coinvariants(P.RRR)
    return {
        "i": F.equal(lhs, rhs),
        "ii": F.equal(d2, eps3),
        "iii": F.equal(F.dot(lam, psi(d2, P.RRR)), eps3),
        "iv": F.equal(F.dot(d2, B), F.dot(eps3, B)),
    }


def check_Z2_equivalences(P: PreBialgebraData, xi: np.ndarray, v: np.ndarray, lam: np.ndarray) -> Report:
    """Passes iff the four forms of the 2-cocycle condition agree (all true or all false)."""
    vals = z2_conditions(P, xi, v, lam)
    rep = Report(title="Z^2_H equivalences")
    detail = " ".join(f"({k})={'T' if b else 'F'}" for k, b in vals.items())
    rep.add("four conditions agree", len(set(vals.values())) == 1, detail=detail)
    rep.values = vals
    return rep
