"""Structure-constant objects, axiom reports and the convolution monoid.

Index conventions (d = dim):

* ``delta[i, j, k]``  coefficient of ``e_i (x) e_j`` in ``Delta(e_k)``;
  serialized as the ``d^2 x d`` matrix ``delta.reshape(d*d, d)``.
* ``mult[k, i, j]``   coefficient of ``e_k`` in ``e_i e_j``;
  serialized as the ``d x d^2`` matrix ``mult.reshape(d, d*d)``.
* a linear map ``V -> W`` is a ``(dim W, dim V)`` matrix, a functional a
  vector of length ``dim V``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

import numpy as np

from .linalg import Field, InputError, first_witness, inverse, nullspace_stacked, solve_linear

# memory budget (entries) for one legwise contraction before chunking
_CHUNK_LIMIT = 1 << 22


# ---------------------------------------------------------------------------
# reports


@dataclass
class ReportItem:
    name: str
    ok: bool
    witness: Any = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = ""
        if not self.ok and self.witness is not None:
            extra = f"  witness={self.witness}"
        if self.detail:
            extra += f"  ({self.detail})"
        return f"{status}  {self.name}{extra}"


@dataclass
class Report:
    title: str = ""
    items: list[ReportItem] = dc_field(default_factory=list)
    values: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> ReportItem:
        item = ReportItem(name, bool(ok), witness, detail)
        self.items.append(item)
        return item

    def compare(self, F: Field, name: str, lhs, rhs, detail: str = "") -> ReportItem:
        lhs = np.asarray(lhs)
        rhs = np.asarray(rhs)
        if lhs.shape != rhs.shape:
            return self.add(name, False, detail=f"shape {lhs.shape} vs {rhs.shape}")
        w = first_witness(F, lhs - rhs)
        return self.add(name, w is None, w, detail)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for it in other.items:
            self.items.append(ReportItem(prefix + it.name, it.ok, it.witness, it.detail))

    def get(self, name: str) -> ReportItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def failed(self) -> list[ReportItem]:
        return [it for it in self.items if not it.ok]

    def __str__(self) -> str:
        head = [self.title] if self.title else []
        return "\n".join(head + [it.line() for it in self.items])

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "items": [
                {"name": it.name, "ok": it.ok, "witness": list(it.witness) if isinstance(it.witness, tuple) else it.witness,
                 "detail": it.detail}
                for it in self.items
            ],
        }


# ---------------------------------------------------------------------------
# structure objects


def _labels(labels, d, stem="e"):
    if labels:
        labels = tuple(labels)
        if len(labels) != d:
            raise InputError(f"expected {d} labels, got {len(labels)}")
        return labels
    return tuple(f"{stem}{i}" for i in range(d))


@dataclass(frozen=True, eq=False, kw_only=True)
class CoalgebraData:
    field: Field
    delta: np.ndarray
    counit: np.ndarray
    coaug: np.ndarray | None = None
    labels: tuple = ()

    def __post_init__(self):
        d = self.counit.shape[0]
        if self.delta.shape != (d, d, d):
            raise InputError(f"delta has shape {self.delta.shape}, expected {(d, d, d)}")
        if self.coaug is not None and self.coaug.shape != (d,):
            raise InputError("coaugmentation has the wrong length")
        object.__setattr__(self, "labels", _labels(self.labels, d))

    @property
    def dim(self) -> int:
        return self.counit.shape[0]

    @property
    def delta_matrix(self) -> np.ndarray:
        d = self.dim
        return self.delta.reshape(d * d, d)

    # convolution kernels; tensor powers override these with legwise versions
    def pull(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """``T[x, y, c] = sum f[x, a] g[y, b] delta[a, b, c]``."""
        F = self.field
        W = F.tensordot(g, self.delta, ([1], [1]))  # (y, a, c)
        return F.tensordot(f, W, ([1], [1]))  # (x, y, c)

    def left_operator(self, f: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> f * x`` on functionals: ``L[c, b] = sum_a f[a] delta[a, b, c]``."""
        return self.field.tensordot(f, self.delta, ([0], [0])).T

    def right_operator(self, f: np.ndarray) -> np.ndarray:
        return self.field.tensordot(f, self.delta, ([0], [1])).T


@dataclass(frozen=True, eq=False, kw_only=True)
class AlgebraData:
    field: Field
    mult: np.ndarray
    unit: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        d = self.unit.shape[0]
        if self.mult.shape != (d, d, d):
            raise InputError(f"mult has shape {self.mult.shape}, expected {(d, d, d)}")
        object.__setattr__(self, "labels", _labels(self.labels, d))

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    @property
    def mult_matrix(self) -> np.ndarray:
        d = self.dim
        return self.mult.reshape(d, d * d)

    def left_mult(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> a x``."""
        return self.field.tensordot(self.mult, a, ([1], [0]))

    def right_mult(self, a: np.ndarray) -> np.ndarray:
        return self.field.tensordot(self.mult, a, ([2], [0]))

    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F = self.field
        return F.tensordot(F.tensordot(self.mult, a, ([1], [0])), b, ([1], [0]))


@dataclass(frozen=True, eq=False, kw_only=True)
class BialgebraData:
    field: Field
    delta: np.ndarray
    counit: np.ndarray
    mult: np.ndarray
    unit: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        d = self.counit.shape[0]
        for name, arr, shape in (("delta", self.delta, (d, d, d)), ("mult", self.mult, (d, d, d)),
                                 ("unit", self.unit, (d,))):
            if arr.shape != shape:
                raise InputError(f"{name} has shape {arr.shape}, expected {shape}")
        object.__setattr__(self, "labels", _labels(self.labels, d))

    @property
    def dim(self) -> int:
        return self.counit.shape[0]

    @property
    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(field=self.field, delta=self.delta, counit=self.counit,
                             coaug=self.unit, labels=self.labels)

    @property
    def algebra(self) -> AlgebraData:
        return AlgebraData(field=self.field, mult=self.mult, unit=self.unit, labels=self.labels)

    def product(self, a, b):
        return self.algebra.product(a, b)


@dataclass(frozen=True, eq=False, kw_only=True)
class HopfData(BialgebraData):
    antipode: np.ndarray

    def __post_init__(self):
        super().__post_init__()
        d = self.dim
        if self.antipode.shape != (d, d):
            raise InputError(f"antipode has shape {self.antipode.shape}, expected {(d, d)}")

    @property
    def antipode_inverse(self) -> np.ndarray:
        inv = inverse(self.field, self.antipode)
        if inv is None:
            raise InputError("antipode is not invertible")
        return inv

    @property
    def bialgebra(self) -> BialgebraData:
        return BialgebraData(field=self.field, delta=self.delta, counit=self.counit,
                             mult=self.mult, unit=self.unit, labels=self.labels)


def trivial_coalgebra(F: Field) -> CoalgebraData:
    one = F.asarray([1])
    return CoalgebraData(field=F, delta=F.asarray([[[1]]]), counit=one, coaug=one, labels=("1",))


def scalar_algebra(F: Field) -> AlgebraData:
    return AlgebraData(field=F, mult=F.asarray([[[1]]]), unit=F.asarray([1]), labels=("1",))


# ---------------------------------------------------------------------------
# tensor powers of an ordinary coalgebra


class TensorPowerCoalgebra:
    """``C^{(x)n}`` with the ordinary tensor-product coalgebra structure.

    Never materializes the ``N^3`` comultiplication; convolution is contracted
    leg by leg, chunking over the first leg when memory gets tight.
    """

    def __init__(self, base: CoalgebraData, n: int):
        if n < 1:
            raise InputError("tensor power must be at least 1")
        self.base = base
        self.n = n
        self.field = base.field
        self.d = base.dim
        self.dim = base.dim ** n
        self.counit = self._kron_vec(base.counit)
        self.coaug = None if base.coaug is None else self._kron_vec(base.coaug)

    def _kron_vec(self, v):
        out = v
        for _ in range(self.n - 1):
            out = self.field.kron(out, v)
        return out

    def pull(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        return _pull_legs(self.field, self.base.delta, self.n, self.d, f, g)

    def left_operator(self, f: np.ndarray) -> np.ndarray:
        F, n, d = self.field, self.n, self.d
        W = f.reshape((d,) * n)
        for _ in range(n):
            W = F.tensordot(W, self.base.delta, ([0], [0]))  # appends (b_l, c_l)
        perm = [2 * l + 1 for l in range(n)] + [2 * l for l in range(n)]
        return W.transpose(perm).reshape(self.dim, self.dim)

    def right_operator(self, f: np.ndarray) -> np.ndarray:
        F, n, d = self.field, self.n, self.d
        W = f.reshape((d,) * n)
        for _ in range(n):
            W = F.tensordot(W, self.base.delta, ([0], [1]))  # appends (a_l, c_l)
        perm = [2 * l + 1 for l in range(n)] + [2 * l for l in range(n)]
        return W.transpose(perm).reshape(self.dim, self.dim)

    @property
    def delta(self) -> np.ndarray:
        """Dense comultiplication (only sensible for small powers)."""
        F, n, d = self.field, self.n, self.d
        D = self.base.delta
        out = D
        for _ in range(n - 1):
            # (A, B, C) x (a, b, c) -> ((A a), (B b), (C c))
            out = np.multiply.outer(out, D)
            k = out.shape
            out = out.transpose(0, 3, 1, 4, 2, 5).reshape(k[0] * k[3], k[1] * k[4], k[2] * k[5])
        return F.reduce(out)


def _pull_legs(F: Field, D: np.ndarray, n: int, d: int, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    X, Y = f.shape[0], g.shape[0]
    N = d ** n
    if n == 1:
        W = F.tensordot(g, D, ([1], [1]))
        return F.tensordot(f, W, ([1], [1]))
    if Y * N * N > _CHUNK_LIMIT:
        Np = N // d
        out = F.zeros((X, Y, d, Np))
        f3 = f.reshape(X, d, Np)
        g3 = g.reshape(Y, d, Np)
        for c1 in range(d):
            for a1 in range(d):
                coef = D[a1, :, c1]
                if not np.any(coef != 0):
                    continue
                gac = F.tensordot(g3, coef, ([1], [0]))  # (Y, Np)
                out[:, :, c1, :] = F.reduce(out[:, :, c1, :] + _pull_legs(F, D, n - 1, d, f3[:, a1, :], gac))
        return out.reshape(X, Y, N)
    W = g.reshape((Y,) + (d,) * n)
    for _ in range(n):
        W = F.tensordot(W, D, ([1], [1]))
    perm = [0] + [1 + 2 * l for l in range(n)] + [2 + 2 * l for l in range(n)]
    W = W.transpose(perm).reshape(Y, N, N)
    return F.tensordot(f, W, ([1], [1]))


# ---------------------------------------------------------------------------
# convolution


def _as2d(f):
    f = np.asarray(f)
    return (f.reshape(1, -1), True) if f.ndim == 1 else (f, False)


def convolve(f, g, C, A: AlgebraData | None = None):
    """``m_A (f (x) g) Delta_C``.

    With ``A=None`` the product is the scalar one: two functionals give a
    functional, and a vector-valued map convolved with a functional (either
    side) gives a vector-valued map.
    """
    F = C.field
    f2, f1 = _as2d(f)
    g2, g1 = _as2d(g)
    if f2.shape[1] != C.dim or g2.shape[1] != C.dim:
        raise InputError(f"convolution source mismatch: {f2.shape}, {g2.shape} on dim {C.dim}")
    if A is not None:
        if f1:
            f2 = F.outer(A.unit, f2[0])
        if g1:
            g2 = F.outer(A.unit, g2[0])
        T = C.pull(f2, g2)
        return F.tensordot(A.mult, T, ([1, 2], [0, 1]))
    T = C.pull(f2, g2)
    if f1 and g1:
        return T[0, 0]
    if g1:
        return T[:, 0, :]
    if f1:
        return T[0]
    raise InputError("scalar convolution needs at least one functional")


def convolve_many(C, *fs, A: AlgebraData | None = None):
    out = fs[0]
    for f in fs[1:]:
        out = convolve(out, f, C, A)
    return out


def unit_functional(C):
    return C.counit


def convolution_inverse(f, C, A: AlgebraData | None = None):
    """Two-sided convolution inverse, or ``None``."""
    F = C.field
    f = np.asarray(f)
    if A is None and f.ndim == 1:
        L = C.left_operator(f)
        x = solve_linear(F, L, C.counit)
        if x is None:
            return None
        if not (F.equal(convolve(f, x, C), C.counit) and F.equal(convolve(x, f, C), C.counit)):
            return None
        return x
    if A is None:
        raise InputError("vector-valued convolution inverse needs a target algebra")
    dA, N = A.dim, C.dim
    delta = C.delta
    G = F.tensordot(f, delta, ([1], [0]))  # (x, b, c)
    L = F.tensordot(A.mult, G, ([1], [0]))  # (z, y, b, c)
    L = L.transpose(0, 3, 1, 2).reshape(dA * N, dA * N)
    target = F.outer(A.unit, C.counit)
    x = solve_linear(F, L, target.reshape(-1))
    if x is None:
        return None
    x = x.reshape(dA, N)
    if not (F.equal(convolve(f, x, C, A), target) and F.equal(convolve(x, f, C, A), target)):
        return None
    return x


# ---------------------------------------------------------------------------
# checkers


def _check_coalgebra(rep: Report, C: CoalgebraData) -> None:
    F, D, d = C.field, C.delta, C.dim
    lhs = F.einsum("ijk,abi->abjk", D, D)  # (Delta (x) id) Delta
    rhs = F.einsum("ijk,abj->iabk", D, D)  # (id (x) Delta) Delta
    rep.compare(F, "coassociativity", lhs, rhs)
    I = F.eye(d)
    rep.compare(F, "left counit", F.tensordot(C.counit, D, ([0], [0])), I)
    rep.compare(F, "right counit", F.tensordot(C.counit, D, ([0], [1])), I)
    if C.coaug is not None:
        u = C.coaug
        rep.compare(F, "coaugmentation counital", np.array([F.dot(C.counit, u)]), np.array([F.one]))
        rep.compare(F, "coaugmentation grouplike", F.tensordot(D, u, ([2], [0])), F.outer(u, u))


def _check_algebra(rep: Report, A: AlgebraData) -> None:
    F, M, d = A.field, A.mult, A.dim
    lhs = F.einsum("kab,aij->kijb", M, M)  # (e_i e_j) e_b
    rhs = F.einsum("kia,ajb->kijb", M, M)
    rep.compare(F, "associativity", lhs, rhs)
    I = F.eye(d)
    rep.compare(F, "left unit", F.tensordot(M, A.unit, ([1], [0])), I)
    rep.compare(F, "right unit", F.tensordot(M, A.unit, ([2], [0])), I)


def _check_bialgebra_compat(rep: Report, B: BialgebraData) -> None:
    F, D, M = B.field, B.delta, B.mult
    rep.compare(F, "Delta multiplicative", *delta_multiplicative_sides(F, D, M))
    rep.compare(F, "Delta unital", F.tensordot(D, B.unit, ([2], [0])), F.outer(B.unit, B.unit))
    rep.compare(F, "counit multiplicative", F.tensordot(B.counit, M, ([0], [0])), F.outer(B.counit, B.counit))
    rep.compare(F, "counit unital", np.array([F.dot(B.counit, B.unit)]), np.array([F.one]))


def delta_multiplicative_sides(F: Field, D: np.ndarray, M: np.ndarray):
    """``Delta(e_i e_j)`` and ``Delta(e_i) Delta(e_j)`` as ``[a, b, i, j]`` tensors."""
    lhs = F.einsum("abk,kij->abij", D, M)
    # staged so that no intermediate exceeds d^5 entries
    U = F.tensordot(M, D, ([1], [0]))  # (a, r, q, i)
    T = F.tensordot(U, D, ([1], [0]))  # (a, q, i, s, j)
    rhs = F.tensordot(M, T, ([1, 2], [1, 3])).transpose(1, 0, 2, 3)
    return lhs, rhs


def check_structure(obj, kind: str) -> Report:
    """Itemized axiom check; ``kind`` in coalgebra/algebra/bialgebra/hopf."""
    rep = Report(title=f"{kind} axioms")
    if kind == "coalgebra":
        C = obj.coalgebra if isinstance(obj, BialgebraData) else obj
        _check_coalgebra(rep, C)
    elif kind == "algebra":
        A = obj.algebra if isinstance(obj, BialgebraData) else obj
        _check_algebra(rep, A)
    elif kind in ("bialgebra", "hopf"):
        if not isinstance(obj, BialgebraData):
            raise InputError(f"{kind} check needs a bialgebra-like object")
        _check_coalgebra(rep, obj.coalgebra)
        _check_algebra(rep, obj.algebra)
        _check_bialgebra_compat(rep, obj)
        if kind == "hopf":
            if not isinstance(obj, HopfData):
                raise InputError("hopf check needs an antipode")
            F = obj.field
            C, A = obj.coalgebra, obj.algebra
            target = F.outer(obj.unit, obj.counit)
            S, I = obj.antipode, F.eye(obj.dim)
            rep.compare(F, "antipode left (S*id)", convolve(S, I, C, A), target)
            rep.compare(F, "antipode right (id*S)", convolve(I, S, C, A), target)
    else:
        raise InputError(f"unknown structure kind {kind!r}")
    return rep


# ---------------------------------------------------------------------------
# connectedness and integrals


def wedge_filtration(C: CoalgebraData, start: np.ndarray, max_steps: int | None = None) -> list[int]:
    """Dimensions of ``D_0 = start``, ``D_{n+1} = Delta^{-1}(D_0 (x) C + C (x) D_n)``.

    ``start`` holds a basis of a subcoalgebra as columns. The sequence stops
    once it stabilizes.
    """
    from .linalg import annihilator, nullspace

    F, d = C.field, C.dim
    Dm = C.delta_matrix
    A0 = annihilator(F, start, d)
    cur = start
    dims = [start.shape[1]]
    steps = 0
    while True:
        An = annihilator(F, cur, d)
        P = F.dot(F.kron(A0, An), Dm)
        nxt = nullspace(F, P) if P.shape[0] else F.eye(d)
        dims.append(nxt.shape[1])
        steps += 1
        if nxt.shape[1] == cur.shape[1] or (max_steps is not None and steps >= max_steps):
            if nxt.shape[1] == cur.shape[1]:
                dims.pop()
            return dims
        cur = nxt


def is_connected(C: CoalgebraData) -> tuple[bool, list[int]]:
    if C.coaug is None:
        raise InputError("connectedness needs a coaugmentation")
    dims = wedge_filtration(C, C.coaug.reshape(-1, 1))
    return dims[-1] == C.dim, dims


def ad_invariant_integral(H: HopfData):
    """Normalized two-sided ad-invariant integral on ``H``, or ``None``."""
    F, d = H.field, H.dim
    D, M, S = H.delta, H.mult, H.antipode
    one, eps = H.unit, H.counit
    I = F.eye(d)
    # every block has rows indexed (h, i) and columns indexed by lambda's argument j
    delta_one = F.einsum("hj,i->hij", I, one)
    left = D.transpose(2, 0, 1) - delta_one  # h1 lam(h2) = lam(h) 1
    right = D.transpose(2, 1, 0) - delta_one  # lam(h1) h2 = lam(h) 1
    MS = F.tensordot(M, S, ([2], [0]))  # MS[z, p, b]: e_p S(e_b)
    SM = F.tensordot(S, M, ([0], [1])).transpose(1, 0, 2)  # SM[q, a, x]: S(e_a) e_x
    eps_id = F.einsum("h,xz->hxz", eps, I)
    ad_l = F.einsum("abh,pax,zpb->hxz", D, M, MS) - eps_id  # lam(h1 x S(h2)) = eps(h) lam(x)
    ad_r = F.einsum("abh,qax,zqb->hxz", D, SM, M) - eps_id  # lam(S(h1) x h2) = eps(h) lam(x)
    blocks = [F.reduce(b).reshape(d * d, d) for b in (left, right, ad_l, ad_r)]
    N = nullspace_stacked(F, blocks, d)
    if N.shape[1] == 0:
        return None
    vals = F.dot(one, N)
    if not np.any(F.reduce(vals) != 0):
        return None
    if N.shape[1] > 1:
        raise InputError(f"ad-invariant integral is not unique (solution space of dimension {N.shape[1]})")
    return F.reduce(N[:, 0] * F.inv(vals[0]))
