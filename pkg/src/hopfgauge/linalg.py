"""Exact dense linear algebra over Q and F_p.

Rational arrays are numpy object arrays of ``gmpy2.mpq`` entries; prime-field arrays are ``int64`` arrays reduced mod p.
For large moduli the prime field falls back to object arrays of Python ints so
that intermediate products never overflow.

Tensor legs are flattened row-major with the leftmost factor slowest:
``e_i (x) e_j`` has index ``i * dim + j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

_SCALAR_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")

# products of three residues plus a wide summation must stay inside int64
_INT64_MAX_P = 8192


class InputError(ValueError):
    """Malformed or dimensionally inconsistent input."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The base field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(int(self.p)):
            raise InputError(f"modulus {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_MAX_P:
            return np.int64
        return object

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    # -- construction -------------------------------------------------
    def scalar(self, x):
        if isinstance(x, np.integer):
            x = int(x)
        if self.p is None:
            return mpq(x)
        if isinstance(x, str):
            x = Fraction(x)
        elif type(x).__name__ == "mpq":
            x = Fraction(int(x.numerator), int(x.denominator))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def asarray(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in arr.ravel()]
        out = np.empty(len(flat), dtype=self.dtype)
        out[:] = flat
        return out.reshape(arr.shape)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(mpq(0) if self.p is None else 0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        out = self.zeros(n)
        out[i] = self.one
        return out

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    # -- arithmetic ----------------------------------------------------
    def reduce(self, a):
        if self.p is None:
            return a
        return np.mod(a, self.p) if isinstance(a, np.ndarray) else a % self.p

    def inv(self, x):
        if self.is_zero_scalar(x):
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / mpq(x)
        return pow(int(x), -1, self.p)

    def neg(self, a):
        return self.reduce(-a)

    def is_zero_scalar(self, x) -> bool:
        return (x % self.p == 0) if self.p is not None else x == 0

    def _blas_safe(self, a, b, length: int) -> bool:
        # int64 products have no BLAS path; float64 is exact while sums stay below 2^53
        return (self.p is not None and self.dtype is np.int64 and a.dtype == np.int64 and b.dtype == np.int64
                and length * (self.p - 1) ** 2 < 2 ** 53)

    def dot(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if a.ndim and b.ndim and self._blas_safe(a, b, a.shape[-1]):
            return self.reduce(np.dot(a.astype(np.float64), b.astype(np.float64)).astype(np.int64))
        return self.reduce(np.dot(a, b))

    def tensordot(self, a, b, axes):
        a, b = np.asarray(a), np.asarray(b)
        la = axes[0] if isinstance(axes[0], (list, tuple)) else [axes[0]]
        length = int(np.prod([a.shape[i] for i in la])) if a.ndim else 1
        if self._blas_safe(a, b, length):
            out = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes=axes)
            return self.reduce(out.astype(np.int64))
        return self.reduce(np.tensordot(a, b, axes=axes))

    def einsum(self, spec: str, *ops):
        return self.reduce(np.einsum(spec, *ops))

    def kron(self, *mats):
        out = mats[0]
        for m in mats[1:]:
            out = self.reduce(np.kron(out, m))
        return out

    def outer(self, a, b):
        return self.reduce(np.multiply.outer(a, b))

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        return not np.any(self.reduce(a - b) != 0)

    def is_zero(self, a) -> bool:
        return not np.any(self.reduce(np.asarray(a)) != 0)

    def random(self, shape, rng: np.random.Generator, bound: int = 3) -> np.ndarray:
        """Random entries; small integers over Q, uniform residues over F_p."""
        if self.p is None:
            vals = rng.integers(-bound, bound + 1, size=shape)
            return self.asarray(vals)
        vals = rng.integers(0, self.p, size=shape)
        return self.asarray(vals)

    # -- (de)serialization ------------------------------------------------
    def format(self, x) -> str:
        if self.p is not None:
            return str(int(x) % self.p)
        return str(mpq(x))

    def parse(self, s):
        if not isinstance(s, (str, int)) or isinstance(s, bool):
            raise InputError(f"scalar must be a string or integer, got {s!r}")
        if isinstance(s, str) and not _SCALAR_RE.match(s.strip()):
            raise InputError(f"bad scalar {s!r}")
        try:
            return self.scalar(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad scalar {s!r}: {exc}") from None

    def to_json(self, arr) -> list:
        arr = np.asarray(arr)
        if arr.ndim == 0:
            return self.format(arr[()])
        return [self.to_json(x) for x in arr]

    def from_json(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = [self.parse(x) for x in arr.ravel()]
        out = np.empty(len(flat), dtype=self.dtype)
        out[:] = flat
        return out.reshape(arr.shape)


QQ = Field()


def rref(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    A = np.array(A, dtype=F.dtype, copy=True)
    if A.ndim != 2:
        raise InputError("rref expects a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(F.reduce(A[r:, c]) != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = F.reduce(A[r] * F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = F.zero
        if np.any(col != 0):
            A = F.reduce(A - np.multiply.outer(col, A[r]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def solve_linear(F: Field, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve ``A x = b`` exactly; free variables are set to zero.

    ``b`` may be a vector or a matrix of right-hand sides. Returns ``None``
    when the system is inconsistent.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    if A.ndim != 2 or A.shape[0] != B.shape[0]:
        raise InputError(f"dimension mismatch: A is {A.shape}, b is {b.shape}")
    n = A.shape[1]
    aug = np.concatenate([np.asarray(A, dtype=F.dtype), np.asarray(B, dtype=F.dtype)], axis=1)
    R, piv = rref(F, aug)
    if piv and piv[-1] >= n:
        return None
    x = F.zeros((n, B.shape[1]))
    for i, c in enumerate(piv):
        x[c] = R[i, n:]
    return x[:, 0] if vec else x


def nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Basis of ker A as the columns of the returned ``(n, k)`` array."""
    A = np.asarray(A)
    n = A.shape[1]
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    N = F.zeros((n, len(free)))
    for j, f in enumerate(free):
        N[f, j] = F.one
        for i, c in enumerate(piv):
            N[c, j] = F.neg(R[i, f])
    return N


def nullspace_stacked(F: Field, blocks: Iterable[np.ndarray], n: int) -> np.ndarray:
    """Common kernel of several constraint blocks, refined one block at a time."""
    N = F.eye(n)
    for blk in blocks:
        if N.shape[1] == 0:
            break
        K = nullspace(F, F.dot(blk, N))
        N = F.dot(N, K)
    return N


def rank(F: Field, A: np.ndarray) -> int:
    return len(rref(F, A)[1])


def inverse(F: Field, A: np.ndarray) -> np.ndarray | None:
    n = A.shape[0]
    if A.shape != (n, n):
        raise InputError("inverse expects a square matrix")
    X = solve_linear(F, A, F.eye(n))
    if X is None or not F.equal(F.dot(A, X), F.eye(n)):
        return None
    return X


def kronecker(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return F.kron(A, B)


def annihilator(F: Field, basis: np.ndarray, n: int) -> np.ndarray:
    """Rows spanning the functionals vanishing on the column span of ``basis``."""
    if basis.shape[1] == 0:
        return F.eye(n)
    return nullspace(F, basis.T).T


def first_witness(F: Field, diff: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(F.reduce(np.asarray(diff)) != 0)
    if idx.size == 0:
        return None
    return tuple(int(i) for i in idx[0])


def unravel(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(i) for i in np.unravel_index(index, tuple(dims)))
