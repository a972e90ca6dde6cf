"""Dense exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``.  A matrix of shape ``(m, n)`` is a linear map ``F_p^n -> F_p^m``
acting on column vectors.  Every routine that returns a basis returns it in
reduced row echelon form, so equal subspaces compare equal entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, InvariantViolation


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
            raise InvariantViolation(f"modulus {self.p!r} is not prime")
        # keep entries well inside int64 during products of a few hundred terms
        if self.p > 46337:
            raise InvariantViolation(f"modulus {self.p} too large for dense int64 kernels")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


def as_matrix(a, p: int, shape=None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim == 1 and shape is None:
        m = m.reshape(-1, 1)
    return m % p


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(p: int, *mats: np.ndarray) -> np.ndarray:
    """Product of the given matrices, reduced mod p."""
    out = mats[0]
    for m in mats[1:]:
        if out.shape[1] != m.shape[0]:
            raise DimensionMismatch(f"cannot compose {out.shape} with {m.shape}")
        out = (out @ m) % p
    return out % p


def rref(a: np.ndarray, p: int, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)``.  When *ncols* is given, pivots are only sought
    among the first *ncols* columns (row operations still act on whole rows),
    which is how augmented systems are solved.
    """
    r_mat = np.array(a, dtype=np.int64) % p
    m, n = r_mat.shape
    limit = n if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(limit):
        if row == m:
            break
        nz = np.flatnonzero(r_mat[row:, col])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r_mat[[row, k]] = r_mat[[k, row]]
        piv = int(r_mat[row, col])
        if piv != 1:
            r_mat[row] = (r_mat[row] * pow(piv, -1, p)) % p
        column = r_mat[:, col].copy()
        column[row] = 0
        others = np.flatnonzero(column)
        if others.size:
            r_mat[others] = (r_mat[others] - np.outer(column[others], r_mat[row])) % p
        pivots.append(col)
        row += 1
    return r_mat, tuple(pivots)


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rows, RREF) of the row space of *a*."""
    if a.shape[0] == 0:
        return zeros(0, a.shape[1])
    r_mat, piv = rref(a, p)
    return r_mat[: len(piv)]


def kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form the canonical (RREF) basis of the null space of *a*."""
    m, n = a.shape
    if m == 0:
        return identity(n)
    r_mat, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = zeros(len(free), n)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, c in enumerate(piv):
            basis[k, c] = (-r_mat[row, f]) % p
    return row_basis(basis, p).T.copy()


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """Solve ``a @ x = b``.

    Returns ``(x, null)`` where *x* is the particular solution with all free
    variables set to zero (or ``None`` if inconsistent) and the columns of
    *null* span the solution space of the homogeneous system.  *b* may have
    several columns; then *x* has as many.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"system {a.shape} with right-hand side {b.shape}")
    m, n = a.shape
    null = kernel(a, p)
    if m == 0:
        return zeros(n, b.shape[1]), null
    r_mat, piv = rref(np.hstack([a, b]), p, ncols=n)
    rhs = r_mat[:, n:]
    if np.any(rhs[len(piv):]):
        return None, null
    x = zeros(n, b.shape[1])
    for row, c in enumerate(piv):
        x[c] = rhs[row]
    return x, null


def column_space(a: np.ndarray, p: int) -> "Subspace":
    return Subspace.span(a.T, p, ambient=a.shape[0])


def cokernel(a: np.ndarray, p: int):
    """Canonical cokernel of ``a: F^n -> F^m``.

    Returns ``(proj, section)`` with ``proj`` of shape ``(m - rank, m)``,
    surjective with kernel equal to the column space of *a*, and ``section``
    a right inverse of ``proj`` (coordinate embedding of non-pivot slots).
    """
    m = a.shape[0]
    basis = column_space(a, p).basis
    piv = _leading_columns(basis)
    nonpiv = [c for c in range(m) if c not in set(piv)]
    proj = zeros(len(nonpiv), m)
    for k, c in enumerate(nonpiv):
        proj[k, c] = 1
    if piv:
        # v -> v[nonpiv] - B[:, nonpiv]^T v[piv]
        proj[:, list(piv)] = (-basis[:, nonpiv].T) % p
    section = zeros(m, len(nonpiv))
    for k, c in enumerate(nonpiv):
        section[c, k] = 1
    return proj % p, section


def _leading_columns(basis: np.ndarray) -> tuple[int, ...]:
    return tuple(int(np.flatnonzero(row)[0]) for row in basis)


def left_inverse(u: np.ndarray, p: int) -> np.ndarray:
    """``L`` with ``L @ u = I`` for *u* of full column rank."""
    n, k = u.shape
    r_mat, piv = rref(np.hstack([u, identity(n)]), p, ncols=k)
    if len(piv) != k:
        raise InvariantViolation("left inverse requested for a non-injective map")
    return r_mat[:k, k:].copy()


def right_inverse(u: np.ndarray, p: int) -> np.ndarray:
    """``S`` with ``u @ S = I`` for *u* of full row rank."""
    return left_inverse(u.T, p).T.copy()


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"inverse of non-square {a.shape}")
    return left_inverse(a, p)


def is_injective(a: np.ndarray, p: int) -> bool:
    return rank(a, p) == a.shape[1]


def is_surjective(a: np.ndarray, p: int) -> bool:
    return rank(a, p) == a.shape[0]


def pullback(f: np.ndarray, g: np.ndarray, p: int):
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``.

    ``P = ker [f, -g]`` inside ``X (+) Y``; returns ``(basis, p1, p2)`` where
    the columns of *basis* span P and ``p1, p2`` are the two legs.
    """
    if f.shape[0] != g.shape[0]:
        raise DimensionMismatch(f"pullback of maps into {f.shape[0]} and {g.shape[0]}")
    dx = f.shape[1]
    basis = kernel(np.hstack([f, (-g) % p]), p)
    return basis, basis[:dx].copy(), basis[dx:].copy()


def pushout(f: np.ndarray, g: np.ndarray, p: int):
    """Pushout of ``f: Z -> X`` and ``g: Z -> Y``.

    ``P = coker [f; -g]`` out of ``X (+) Y``; returns ``(proj, section, i1, i2)``.
    """
    if f.shape[1] != g.shape[1]:
        raise DimensionMismatch(f"pushout of maps out of {f.shape[1]} and {g.shape[1]}")
    dx = f.shape[0]
    proj, section = cokernel(np.vstack([f, (-g) % p]), p)
    return proj, section, proj[:, :dx].copy(), proj[:, dx:].copy()


def block_diag(*mats: np.ndarray) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def vec(a: np.ndarray) -> np.ndarray:
    """Column-major flattening; ``vec(A X B) = (B^T kron A) vec(X)``."""
    return a.reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape((rows, cols), order="F")


def vectors(p: int, n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows are all of ``F_p^n`` (or the slice ``[start, stop)`` of them)."""
    total = p ** n
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    if n == 0:
        return np.zeros((idx.size, 0), dtype=np.int64)
    powers = p ** np.arange(n, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % p


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``F_p^ambient`` held by its canonical RREF basis (rows)."""

    ambient: int
    basis: np.ndarray
    p: int

    @classmethod
    def span(cls, rows: np.ndarray, p: int, ambient: int | None = None) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64)
        amb = rows.shape[1] if ambient is None else ambient
        if rows.shape[0] == 0:
            return cls(amb, zeros(0, amb), p)
        return cls(amb, row_basis(rows, p), p)

    @classmethod
    def of_columns(cls, cols: np.ndarray, p: int) -> "Subspace":
        return cls.span(np.asarray(cols).T, p, ambient=cols.shape[0])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: np.ndarray) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return rank(np.vstack([other.basis, self.basis]), self.p) == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.p == other.p
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient, self.p, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"
