"""Bundled Hopf algebras and splitting data.

Quantum-line family on the basis ``g^i x^j`` (``i < N``, ``j < n``), index ``i*n + j``::

    g^N = 1,  g x = q x g,  x^n = mu (1 - g^n),
    Delta g = g (x) g,  Delta x = x (x) 1 + g (x) x.

``mu = 0`` gives the Radford-type biproducts (Sweedler's H4 for N = n = 2,
q = -1; Taft algebras for N = n); ``mu != 0`` is the lifted quantum line whose
projection onto the group part has a nontrivial cocycle.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .linalg import Field, InputError
from .structures import HopfData
from .prebialgebra import SplittingDatum


def group_algebra_from_table(F: Field, table: list[list[int]], labels=None) -> HopfData:
    """``K G`` from a Cayley table over indices 0..|G|-1, element 0 the identity."""
    n = len(table)
    mult = F.zeros((n, n, n))
    delta = F.zeros((n, n, n))
    S = F.zeros((n, n))
    for a in range(n):
        delta[a, a, a] = F.one
        for b in range(n):
            mult[table[a][b], a, b] = F.one
            if table[a][b] == 0:
                S[b, a] = F.one
    counit = F.asarray([1] * n)
    unit = F.basis_vector(n, 0)
    return HopfData(field=F, delta=delta, counit=counit, mult=mult, unit=unit, antipode=S,
                    labels=tuple(labels) if labels else tuple(f"g{i}" for i in range(n)))


def cyclic_group_algebra(F: Field, n: int) -> HopfData:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["1"] + [("g" if k == 1 else f"g^{k}") for k in range(1, n)]
    return group_algebra_from_table(F, table, labels)


def symmetric_group_algebra(F: Field, k: int = 3) -> HopfData:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # compose as functions: (a b)(x) = a(b(x))
    table = [[index[tuple(a[b[x]] for x in range(k))] for b in perms] for a in perms]
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return group_algebra_from_table(F, table, labels)


def primitive_root(F: Field, n: int) -> int:
    """Smallest primitive n-th root of unity in F_p."""
    if F.p is None:
        if n == 1:
            return 1
        if n == 2:
            return -1
        raise InputError(f"Q has no primitive root of unity of order {n}; use a prime field with p = 1 mod {n}")
    p = F.p
    if (p - 1) % n:
        raise InputError(f"F_{p} has no primitive root of unity of order {n} (need p = 1 mod {n})")
    for w in range(1, p):
        if pow(w, n, p) == 1 and all(pow(w, k, p) != 1 for k in range(1, n)):
            return w
    raise InputError("no primitive root found")  # unreachable for valid p


def _is_primitive(F: Field, q, n: int) -> bool:
    if F.p is None:
        vals = [q ** k for k in range(1, n + 1)]
        return vals[-1] == 1 and all(v != 1 for v in vals[:-1])
    return pow(int(q), n, F.p) == 1 and all(pow(int(q), k, F.p) != 1 for k in range(1, n))


def quantum_line(F: Field, N: int, n: int, q, mu) -> HopfData:
    q = F.scalar(q)
    mu = F.scalar(mu)
    if N % n:
        raise InputError("n must divide N")
    if not _is_primitive(F, q, n):
        raise InputError(f"q = {q} is not a primitive root of unity of order {n} in {F}")
    if not F.is_zero_scalar(mu) and n >= N:
        raise InputError("a nonzero lifting needs g^n != 1 (n < N)")
    d = N * n
    qinv = F.inv(q)

    def idx(i, j):
        return (i % N) * n + j

    def mono(i, j):
        v = F.zeros(d)
        if j < n:
            v[idx(i, j)] = F.one
        else:
            v[idx(i, j - n)] = mu
            v[idx(i + n, j - n)] = F.reduce(v[idx(i + n, j - n)] - mu)
        return F.reduce(v)

    mult = F.zeros((d, d, d))
    for i in range(N):
        for j in range(n):
            for k in range(N):
                for l in range(n):
                    coef = F.reduce(qinv ** (j * k)) if F.p is None else pow(int(qinv), j * k, F.p)
                    mult[:, idx(i, j), idx(k, l)] = F.reduce(coef * mono(i + k, j + l))
    unit = F.basis_vector(d, 0)
    counit = F.zeros(d)
    for i in range(N):
        counit[idx(i, 0)] = F.one

    def prod2(X, Y):
        return _prod2(F, mult, X, Y)

    g = F.basis_vector(d, idx(1, 0))
    x = F.basis_vector(d, idx(0, 1))
    one = unit
    Dg = F.outer(g, g)
    Dx = F.reduce(F.outer(x, one) + F.outer(g, x))
    delta = F.zeros((d, d, d))
    for i in range(N):
        X = F.outer(one, one)
        for _ in range(i):
            X = prod2(X, Dg)
        for j in range(n):
            delta[:, :, idx(i, j)] = X
            X = prod2(X, Dx)
    Sg = F.basis_vector(d, idx(N - 1, 0))
    Sx = F.reduce(-_prod1(F, mult, Sg, x))
    S = F.zeros((d, d))
    for i in range(N):
        for j in range(n):
            v = one
            for _ in range(j):
                v = _prod1(F, mult, v, Sx)
            for _ in range(i):
                v = _prod1(F, mult, v, Sg)
            S[:, idx(i, j)] = v
    labels = []
    for i in range(N):
        for j in range(n):
            parts = []
            if i:
                parts.append("g" if i == 1 else f"g^{i}")
            if j:
                parts.append("x" if j == 1 else f"x^{j}")
            labels.append("".join(parts) or "1")
    return HopfData(field=F, delta=delta, counit=counit, mult=mult, unit=unit, antipode=S, labels=tuple(labels))


def _prod1(F, mult, a, b):
    return F.tensordot(F.tensordot(mult, a, ([1], [0])), b, ([1], [0]))


def _prod2(F, mult, X, Y):
    t = F.einsum("zac,cd->zad", mult, Y)  # first legs: a (from X) times c (from Y)
    t = F.einsum("zad,ybd->zayb", t, mult)
    return F.einsum("zayb,ab->zy", t, X)


def quantum_line_datum(F: Field, N: int, n: int, q, mu) -> SplittingDatum:
    A = quantum_line(F, N, n, q, mu)
    H = cyclic_group_algebra(F, N)
    d = N * n
    pi = F.zeros((N, d))
    sigma = F.zeros((d, N))
    for i in range(N):
        pi[i, i * n] = F.one
        sigma[i * n, i] = F.one
    return SplittingDatum(A, H, pi, sigma)


def sweedler(F: Field | None = None) -> HopfData:
    return quantum_line(F or Field(), 2, 2, -1, 0)


def sweedler_datum(F: Field | None = None) -> SplittingDatum:
    return quantum_line_datum(F or Field(), 2, 2, -1, 0)


def taft(n: int, p: int | None = None) -> HopfData:
    F = Field(p)
    return quantum_line(F, n, n, primitive_root(F, n), 0)


def taft_datum(n: int, p: int | None = None) -> SplittingDatum:
    F = Field(p)
    return quantum_line_datum(F, n, n, primitive_root(F, n), 0)


def lifted_quantum_line_datum(N: int = 4, n: int = 2, q=-1, mu=1, p: int | None = 5) -> SplittingDatum:
    return quantum_line_datum(Field(p), N, n, q, mu)


def divided_power_coalgebra(F: Field, d: int = 3):
    """``Delta x_k = sum_{i+j=k} x_i (x) x_j``; connected with coaugmentation ``x_0``."""
    from .structures import CoalgebraData

    delta = F.zeros((d, d, d))
    for k in range(d):
        for i in range(k + 1):
            delta[i, k - i, k] = F.one
    return CoalgebraData(field=F, delta=delta, counit=F.basis_vector(d, 0), coaug=F.basis_vector(d, 0),
                         labels=tuple(f"x{k}" for k in range(d)))


def default_prime(n: int) -> int:
    """Smallest prime ``p = 1 mod n`` (``n >= 2``)."""
    p = n + 1
    while True:
        if p > 1 and all(p % k for k in range(2, int(p ** 0.5) + 1)):
            return p
        p += n


def radford_biproduct_datum(N: int = 4, n: int = 2, q=-1, p: int | None = 5) -> SplittingDatum:
    """Bosonization ``R # H`` of the braided quantum line with trivial cocycle."""
    from .prebialgebra import bosonize_cocycle, extract_prebialgebra, trivial_cocycle

    ex = extract_prebialgebra(quantum_line_datum(Field(p), N, n, q, 0))
    A, pi, sigma = bosonize_cocycle(ex.P, trivial_cocycle(ex.P))
    return SplittingDatum(A, ex.P.H, pi, sigma)


EXAMPLES = ("group_algebra", "sweedler", "taft", "lifted_quantum_line", "radford_biproduct")


def datum_document(S: SplittingDatum):
    from .hopfjson import Document, MapEntry

    doc = Document(S.A.field, {"H": S.H, "A": S.A})
    doc.maps["pi"] = MapEntry(["A"], ["H"], S.pi)
    doc.maps["sigma"] = MapEntry(["H"], ["A"], S.sigma)
    doc.roles = {"A": "A", "H": "H", "pi": "pi", "sigma": "sigma"}
    return doc


def _field(p, default):
    """``p``: a prime, ``0``/``"Q"`` for the rationals, ``None`` for the example default."""
    if p is None:
        p = default
    if p in (0, "0", "Q", "q", None):
        return Field()
    try:
        p = int(p)
    except ValueError:
        raise InputError(f"bad field parameter {p!r}") from None
    return Field(p)


def make_example(name: str, **params):
    """Build a hopfjson document for a bundled example.

    ``group_algebra``: ``group`` = ``C<n>`` or ``S3``, ``p`` (default Q);
    ``sweedler``: ``p`` (default Q); ``taft``: ``n``, ``p`` (default: smallest
    prime ``= 1 mod n``); ``lifted_quantum_line``: ``N``, ``n``, ``q``, ``mu``,
    ``p`` (defaults 4, 2, -1, 1, 5); ``radford_biproduct``: ``N``, ``n``, ``q``,
    ``p`` (defaults 4, 2, -1, 5). ``p = 0`` selects Q.
    """
    from .hopfjson import Document

    params = {k: v for k, v in params.items() if v is not None}
    p = params.pop("p", None)
    if name == "group_algebra":
        F = _field(p, None)
        group = str(params.pop("group", "C2"))
        if group.upper() == "S3":
            H = symmetric_group_algebra(F, 3)
        elif group[:1].upper() == "C" and group[1:].isdigit() and int(group[1:]) >= 1:
            H = cyclic_group_algebra(F, int(group[1:]))
        else:
            raise InputError(f"unknown group {group!r} (use C<n> or S3)")
        doc = Document(F, {"H": H}, roles={"H": "H"})
    elif name == "sweedler":
        doc = datum_document(sweedler_datum(_field(p, None)))
    elif name == "taft":
        n = int(params.pop("n", 3))
        if n < 2:
            raise InputError("Taft algebras need n >= 2")
        F = _field(p, default_prime(n) if n > 2 else None)
        doc = datum_document(quantum_line_datum(F, n, n, primitive_root(F, n), 0))
    elif name == "lifted_quantum_line":
        F = _field(p, 5)
        doc = datum_document(quantum_line_datum(F, int(params.pop("N", 4)), int(params.pop("n", 2)),
                                                params.pop("q", -1), params.pop("mu", 1)))
    elif name == "radford_biproduct":
        F = _field(p, 5)
        doc = datum_document(radford_biproduct_datum(int(params.pop("N", 4)), int(params.pop("n", 2)),
                                                     params.pop("q", -1), F.p))
    else:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    if params:
        raise InputError(f"unused parameters for {name}: {', '.join(sorted(params))}")
    return doc
