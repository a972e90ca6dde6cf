"""Finite-dimensional associative F_p-algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvariantViolation
from .linalg import PrimeField


@dataclass(frozen=True, eq=False)
class Algebra:
    """``mult[b, c]`` holds the coordinates of ``e_b * e_c``; ``unit`` those of 1."""

    field: PrimeField
    mult: np.ndarray
    unit: np.ndarray
    name: str = ""

    def __post_init__(self):
        p = self.field.p
        mult = np.asarray(self.mult, dtype=np.int64) % p
        unit = np.asarray(self.unit, dtype=np.int64).reshape(-1) % p
        d = unit.shape[0]
        if mult.shape != (d, d, d):
            raise InvariantViolation(
                f"structure constants have shape {mult.shape}, expected {(d, d, d)}"
            )
        mult.setflags(write=False)
        unit.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", unit)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def check(self) -> None:
        """Raise :class:`InvariantViolation` naming the first failing identity."""
        p, d = self.p, self.dim
        m = self.mult
        # (e_a e_b) e_c  vs  e_a (e_b e_c)
        left = np.einsum("abk,kcl->abcl", m, m) % p
        right = np.einsum("bck,akl->abcl", m, m) % p
        bad = np.argwhere(np.any(left != right, axis=3))
        if bad.size:
            a, b, c = (int(x) for x in bad[0])
            raise InvariantViolation(f"multiplication not associative on basis triple ({a}, {b}, {c})")
        one_left = np.einsum("a,abk->bk", self.unit, m) % p
        one_right = np.einsum("b,abk->ak", self.unit, m) % p
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(one_left, eye) or not np.array_equal(one_right, eye):
            raise InvariantViolation("unit is not a two-sided identity")

    def opposite(self) -> "Algebra":
        name = self.name[:-3] if self.name.endswith("^op") else (self.name + "^op" if self.name else "")
        return Algebra(self.field, self.mult.transpose(1, 0, 2).copy(), self.unit, name)

    def left_mult(self, b: int) -> np.ndarray:
        """Matrix of ``x -> e_b x`` on the regular representation."""
        return self.mult[b].T.copy()

    @cached_property
    def regular_action(self) -> np.ndarray:
        return np.stack([self.left_mult(b) for b in range(self.dim)]) if self.dim else np.zeros((0, 0, 0), np.int64)

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("b,c,bck->k", x, y, self.mult) % self.p

    @cached_property
    def _key(self):
        return (self.p, self.mult.tobytes(), self.unit.tobytes(), self.mult.shape)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, p={self.p})"


def field_algebra(p: int = 2) -> Algebra:
    return Algebra(PrimeField(p), np.ones((1, 1, 1), np.int64), np.ones(1, np.int64), f"F{p}")


def truncated_polynomial(n: int, p: int = 2) -> Algebra:
    """``F_p[x]/(x^n)`` on the basis ``1, x, ..., x^(n-1)``."""
    mult = np.zeros((n, n, n), np.int64)
    for a in range(n):
        for b in range(n):
            if a + b < n:
                mult[a, b, a + b] = 1
    unit = np.zeros(n, np.int64)
    unit[0] = 1
    return Algebra(PrimeField(p), mult, unit, f"F{p}[x]/(x^{n})")


def dual_numbers(p: int = 2) -> Algebra:
    return truncated_polynomial(2, p)


def path_algebra_a2(p: int = 2) -> Algebra:
    """Path algebra of ``1 -> 2`` on the basis ``e1, e2, a`` with ``a = e2 a e1``."""
    e1, e2, a = 0, 1, 2
    mult = np.zeros((3, 3, 3), np.int64)
    mult[e1, e1, e1] = 1
    mult[e2, e2, e2] = 1
    mult[e2, a, a] = 1
    mult[a, e1, a] = 1
    return Algebra(PrimeField(p), mult, np.array([1, 1, 0]), f"F{p}A2")


FIXTURE_ALGEBRAS = {
    "F2": field_algebra,
    "dual": dual_numbers,
    "x3": lambda p=2: truncated_polynomial(3, p),
    "A2path": path_algebra_a2,
}
