"""Exact linear algebra over prime fields and the rationals.

Matrices over F_p are plain ``numpy.int64`` arrays whose entries are kept in
``[0, p)``.  Vectors are 1-d arrays and matrices act on column vectors.
Rational matrices are nested lists of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "PrimeField",
    "as_matrix",
    "rref",
    "rank",
    "kernel",
    "matmul",
    "matpow_apply",
    "inverse",
    "solve",
    "Subspace",
    "RationalMatrix",
]

# Largest exactly representable integer in float64.
_EXACT_FLOAT = 2**53


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """An odd prime modulus, optionally checked against the ambient rank."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or self.p < 3 or not _is_prime(int(self.p)):
            raise ValueError(f"expected an odd prime, got {self.p!r}")

    def reduce(self, x) -> int:
        """Reduce an integer or p-integral rational to a residue."""
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not {self.p}-integral")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        return pow(int(x), -1, self.p)


def as_matrix(rows, p: int, cols: int | None = None) -> np.ndarray:
    """Build a reduced int64 matrix from nested sequences (or an array)."""
    arr = np.array(rows, dtype=object if _has_fraction(rows) else np.int64)
    if arr.dtype == object:
        field_ = PrimeField(p)
        arr = np.vectorize(field_.reduce, otypes=[np.int64])(arr)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.zeros((0, cols or 0), dtype=np.int64)
    return np.mod(arr, p).astype(np.int64)


def _has_fraction(rows) -> bool:
    if isinstance(rows, np.ndarray):
        return rows.dtype == object
    stack = [rows]
    while stack:
        x = stack.pop()
        if isinstance(x, Fraction):
            return True
        if isinstance(x, (list, tuple)):
            stack.extend(x)
    return False


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``m`` over F_p, together with its rank."""
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a, 0
    r, _ = _kernels.rref_inplace(a, p)
    return a, int(r)


def _rref_pivots(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a[:0], np.zeros(0, dtype=np.int64)
    r, piv = _kernels.rref_inplace(a, p)
    return a[:r], np.asarray(piv, dtype=np.int64)


def rank(m: np.ndarray, p: int) -> int:
    return rref(m, p)[1]


def kernel(m: np.ndarray, p: int) -> "Subspace":
    """Right null space ``{v : m v = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(n, p)
    red, piv = _rref_pivots(m, p)
    free = np.setdiff1d(np.arange(n), piv)
    basis = np.zeros((free.size, n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        basis[k, piv] = (-red[:, f]) % p
    return Subspace.from_vectors(basis, p, n)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p.

    Uses float64 BLAS whenever every partial sum is exactly representable
    and otherwise splits the inner dimension into safe chunks.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    bound = (p - 1) ** 2
    chunk = max(1, (_EXACT_FLOAT - 1) // max(bound, 1))
    if inner <= chunk:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for s in range(0, inner, chunk):
        part = a[..., s : s + chunk].astype(np.float64) @ b[s : s + chunk].astype(np.float64)
        out = (out + np.mod(part, p).astype(np.int64)) % p
    return out


def matpow_apply(a: np.ndarray, v: np.ndarray, k: int, p: int) -> np.ndarray:
    """``a^k v`` by repeated application (cheaper than forming the power)."""
    for _ in range(k):
        v = matmul(a, v, p)
    return v


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    red, r = rref(aug, p)
    if r < n or not np.array_equal(red[:, :n], np.eye(n, dtype=np.int64)):
        raise np.linalg.LinAlgError("matrix is singular mod p")
    return red[:, n:].copy()


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (``b`` a vector or matrix), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = a.shape[1]
    red, piv = _rref_pivots(np.concatenate([a, b], axis=1), p)
    if piv.size and piv[-1] >= n:
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    x[piv] = red[:, n:]
    return x[:, 0] if vec else x


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n stored by its canonical reduced echelon basis."""

    basis: np.ndarray
    pivots: np.ndarray
    p: int
    ambient_dim: int
    _key: bytes = field(init=False, repr=False)

    def __post_init__(self):
        self.basis.setflags(write=False)
        self.pivots.setflags(write=False)
        object.__setattr__(self, "_key", self.basis.tobytes())

    @classmethod
    def from_vectors(cls, vectors, p: int, ambient_dim: int) -> "Subspace":
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        red, piv = _rref_pivots(vecs, p)
        return cls(np.ascontiguousarray(red), piv, p, ambient_dim)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64), p, n)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.int64), np.arange(n, dtype=np.int64), p, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.p == other.p and self.ambient_dim == other.ambient_dim and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self._key))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, p={self.p})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise ValueError("subspaces live in different ambient spaces")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residue of ``v`` (vector or stack of row vectors) modulo this subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        return (v - matmul(v[..., self.pivots], self.basis, self.p)) % self.p

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or self.contains(other.basis)

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates with respect to ``basis``; ``v`` must lie in the subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return v[..., self.pivots].copy()

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p]).T
        ker = kernel(stacked, self.p)
        vecs = matmul(ker.basis[:, : self.dim], self.basis, self.p)
        return Subspace.from_vectors(vecs, self.p, self.ambient_dim)

    sum = __add__
    intersection = __and__

    def complement_indices(self) -> np.ndarray:
        """Coordinates not used as pivots; the matching unit vectors span a complement."""
        return np.setdiff1d(np.arange(self.ambient_dim), self.pivots)

    def quotient_coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of ``v + self`` in the quotient, using the unit-vector complement."""
        return self.reduce(v)[..., self.complement_indices()]

    def lift(self, coords: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`quotient_coordinates` (lands in the complement)."""
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1] + (self.ambient_dim,), dtype=np.int64)
        out[..., self.complement_indices()] = coords % self.p
        return out


class RationalMatrix:
    """Dense matrix of exact rationals (entries kept as reduced Fractions)."""

    def __init__(self, rows: Iterable[Sequence]):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged rational matrix")
        self.shape = (len(self.rows), widths.pop() if widths else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def denominators(self) -> set[int]:
        return {x.denominator for row in self.rows for x in row if x.denominator != 1}

    def is_integral_at(self, p: int) -> bool:
        return all(d % p for d in self.denominators())

    def reduce_mod(self, p: int) -> np.ndarray:
        field_ = PrimeField(p)
        out = np.zeros(self.shape, dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                out[i, j] = field_.reduce(x)
        return out

    def rref(self) -> tuple["RationalMatrix", int]:
        a = [row[:] for row in self.rows]
        m, n = self.shape
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, m) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = 1 / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(m):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == m:
                break
        return RationalMatrix(a), r

    def rank(self) -> int:
        return self.rref()[1]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.shape[0]}x{self.shape[1]})"
