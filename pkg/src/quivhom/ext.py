"""Ext^1 in the module category.

Production route: for the stored presentation ``0 -> K -> P0 -> M -> 0``,
``Ext^1(M, N) = coker(Hom(P0, N) -> Hom(K, N))``.  Extension classes are
held as cocycles ``K -> N`` and read off in the fixed class basis.

:func:`ext1_bruteforce` counts extension module structures directly and is
the independent check on the production route; it never touches a
presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import DimensionMismatch, NoPreimage, NotExact, TooLarge
from .modules import (
    Module,
    ModuleMorphism,
    Presentation,
    ShortExactSequence,
    direct_sum,
    factor_through_epi,
    factor_through_mono,
    hom_from_free,
    hom_space,
    pullback_mod,
    pushout_mod,
)

DEFAULT_BUDGET = 1 << 16


@dataclass(frozen=True, eq=False)
class Ext1Space:
    m: Module
    n: Module
    presentation: Presentation
    cocycles: np.ndarray      # columns: vec of a basis of Hom(K, N)
    boundaries: np.ndarray    # columns: canonical basis of the image of Hom(P0, N)
    class_basis: np.ndarray   # columns: cocycles completing the boundaries to a basis

    @property
    def dim(self) -> int:
        return self.class_basis.shape[1]

    @property
    def p(self) -> int:
        return self.m.p

    @property
    def k(self) -> Module:
        return self.presentation.k

    def cocycle(self, coords) -> ModuleMorphism:
        """Representative cocycle ``K -> N`` of the class with these coordinates."""
        coords = np.asarray(coords, np.int64).reshape(-1)
        if coords.shape[0] != self.dim:
            raise DimensionMismatch(f"class has {coords.shape[0]} coordinates, Ext has dim {self.dim}")
        v = self.class_basis @ coords % self.p if self.dim else la.zeros(self.k.dim * self.n.dim, 1)[:, 0]
        return ModuleMorphism(self.k, self.n, la.unvec(v, self.n.dim, self.k.dim))

    def coords(self, xi: ModuleMorphism | np.ndarray) -> np.ndarray:
        """Coordinates of the class of a cocycle ``K -> N``."""
        mat = xi.matrix if isinstance(xi, ModuleMorphism) else np.asarray(xi, np.int64)
        v = la.vec(mat % self.p)
        system = np.hstack([self.class_basis, self.boundaries])
        x, _ = la.solve(system, v, self.p)
        if x is None:
            raise NotExact("map K -> N is not a cocycle")
        return x[: self.dim, 0].copy()

    @cached_property
    def _bd_space(self) -> la.Subspace:
        return la.Subspace.of_columns(self.boundaries, self.p)

    def is_coboundary(self, xi: ModuleMorphism) -> bool:
        return self._bd_space.contains(la.vec(xi.matrix))


def _boundary_columns(pres: Presentation, n: Module) -> np.ndarray:
    """vec of ``h o iota`` over the basis of Hom(P0, N) = N^g."""
    g = pres.gens.shape[1]
    cols = []
    for k in range(g):
        for y in range(n.dim):
            images = la.zeros(n.dim, g)
            images[y, k] = 1
            h = hom_from_free(pres.p0, n, images)
            cols.append(la.vec((h @ pres.iota).matrix))
    if not cols:
        return la.zeros(pres.k.dim * n.dim, 0)
    return np.stack(cols, axis=1)


def ext1(m: Module, n: Module) -> Ext1Space:
    if m.algebra != n.algebra:
        raise DimensionMismatch("Ext between modules over different algebras")
    p = m.p
    pres = m.presentation
    size = pres.k.dim * n.dim
    cocycle_maps = hom_space(pres.k, n)
    cocycles = np.stack([la.vec(h.matrix) for h in cocycle_maps], axis=1) if cocycle_maps else la.zeros(size, 0)
    bd = la.Subspace.of_columns(_boundary_columns(pres, n), p)
    boundaries = bd.basis.T.copy()
    chosen = []
    current = bd
    for k in range(cocycles.shape[1]):
        col = cocycles[:, k]
        if not current.contains(col):
            chosen.append(col)
            current = current + la.Subspace.span(col.reshape(1, -1), p, size)
    class_basis = np.stack(chosen, axis=1) if chosen else la.zeros(size, 0)
    return Ext1Space(m, n, pres, cocycles, boundaries, class_basis)


def ext1_dim(m: Module, n: Module) -> int:
    return ext1(m, n).dim


# --- Yoneda correspondence ----------------------------------------------------


def ses_from_cocycle(space: Ext1Space, xi: ModuleMorphism) -> ShortExactSequence:
    """Pushout of ``K -> P0`` along ``xi``: ``0 -> N -> E -> M -> 0``."""
    pres = space.presentation
    e, i1, i2 = pushout_mod(pres.iota, xi)
    s, _, projs = direct_sum(pres.p0, space.n)
    # (pi, 0): P0 (+) N -> M vanishes on the relations, so it descends to E
    glued = ModuleMorphism(s, space.m, np.hstack([pres.pi.matrix, la.zeros(space.m.dim, space.n.dim)]))
    to_e = ModuleMorphism(s, e, np.hstack([i1.matrix, i2.matrix]))
    surj = factor_through_epi(to_e, glued)
    return ShortExactSequence(i2, surj).verify()


def ses_from_class(space: Ext1Space, coords) -> ShortExactSequence:
    return ses_from_cocycle(space, space.cocycle(coords))


def cocycle_from_ses(space: Ext1Space, ses: ShortExactSequence) -> ModuleMorphism:
    ses.verify()
    if ses.right != space.m or ses.left != space.n:
        raise DimensionMismatch("sequence does not have the end terms of this Ext space")
    pres = space.presentation
    p = space.p
    # lift the generator images through surj, extend A-linearly, restrict to K
    lifts, _ = la.solve(ses.surj.matrix, pres.gens, p)
    lift = hom_from_free(pres.p0, ses.middle, lifts)
    into_n = factor_through_mono(ses.inj, lift @ pres.iota)
    return into_n


def class_from_ses(space: Ext1Space, ses: ShortExactSequence) -> np.ndarray:
    return space.coords(cocycle_from_ses(space, ses))


# --- Yoneda actions on sequences ------------------------------------------------


def ses_pullback(ses: ShortExactSequence, f: ModuleMorphism) -> ShortExactSequence:
    """``E f`` for ``f: M' -> M``: pull the middle term back along f."""
    if f.codomain != ses.right:
        raise DimensionMismatch("pullback map must end at the right-hand term")
    pb, p1, p2 = pullback_mod(ses.surj, f)
    # N -> P is (inj, 0), which lies in the kernel of [surj, -f]
    cols = np.vstack([ses.inj.matrix, la.zeros(f.domain.dim, ses.left.dim)])
    s, _, _ = direct_sum(ses.middle, f.domain)
    inc = ModuleMorphism(pb, s, np.vstack([p1.matrix, p2.matrix]))
    inj = factor_through_mono(inc, ModuleMorphism(ses.left, s, cols))
    return ShortExactSequence(inj, p2).verify()


def ses_pushout(ses: ShortExactSequence, g: ModuleMorphism) -> ShortExactSequence:
    """``g E`` for ``g: N -> N'``: push the middle term out along g."""
    if g.domain != ses.left:
        raise DimensionMismatch("pushout map must start at the left-hand term")
    po, i1, i2 = pushout_mod(ses.inj, g)
    s, _, _ = direct_sum(ses.middle, g.codomain)
    to_po = ModuleMorphism(s, po, np.hstack([i1.matrix, i2.matrix]))
    glued = ModuleMorphism(s, ses.right, np.hstack([ses.surj.matrix, la.zeros(ses.right.dim, g.codomain.dim)]))
    surj = factor_through_epi(to_po, glued)
    return ShortExactSequence(i2, surj).verify()


# --- induced maps on Ext --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InducedExtMap:
    """Linear map between two Ext spaces in class coordinates."""

    source: Ext1Space
    target: Ext1Space
    matrix: np.ndarray

    def __call__(self, coords) -> np.ndarray:
        return la.mul(self.source.p, self.matrix, np.asarray(coords, np.int64).reshape(-1, 1))[:, 0]

    def rank(self) -> int:
        return la.rank(self.matrix, self.source.p) if self.matrix.size else 0

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def preimage(self, coords) -> np.ndarray:
        """Some class mapping to *coords*; raises :class:`NoPreimage`."""
        coords = np.asarray(coords, np.int64).reshape(-1, 1)
        if self.source.dim == 0:
            if np.any(coords % self.source.p):
                raise NoPreimage("source Ext space is zero")
            return la.zeros(0, 1)[:, 0]
        x, _ = la.solve(self.matrix, coords, self.source.p)
        if x is None:
            raise NoPreimage("class is not in the image of the induced map")
        return x[:, 0].copy()


def ext1_pushout_map(g: ModuleMorphism, m: Module) -> InducedExtMap:
    """``Ext^1(M, N) -> Ext^1(M, N')`` induced by ``g: N -> N'``."""
    src, tgt = ext1(m, g.domain), ext1(m, g.codomain)
    cols = [tgt.coords(g @ src.cocycle(np.eye(src.dim, dtype=np.int64)[k])) for k in range(src.dim)]
    mat = np.stack(cols, axis=1) if cols else la.zeros(tgt.dim, 0)
    return InducedExtMap(src, tgt, mat.reshape(tgt.dim, src.dim))


def ext1_pullback_map(f: ModuleMorphism, n: Module) -> InducedExtMap:
    """``Ext^1(M, N) -> Ext^1(M', N)`` induced by ``f: M' -> M``."""
    src, tgt = ext1(f.codomain, n), ext1(f.domain, n)
    p = f.p
    pres, pres2 = src.presentation, tgt.presentation
    # lift f o pi' : P0' -> M through pi : P0 -> M, then restrict to K' -> K
    targets = la.mul(p, f.matrix, pres2.gens)
    lifts, _ = la.solve(pres.pi.matrix, targets, p)
    lift = hom_from_free(pres2.p0, pres.p0, lifts)
    on_k = factor_through_mono(pres.iota, lift @ pres2.iota)
    cols = [tgt.coords(src.cocycle(np.eye(src.dim, dtype=np.int64)[k]) @ on_k) for k in range(src.dim)]
    mat = np.stack(cols, axis=1) if cols else la.zeros(tgt.dim, 0)
    return InducedExtMap(src, tgt, mat.reshape(tgt.dim, src.dim))


# --- brute-force oracle ---------------------------------------------------------


def _count_in_chunks(total: int, check, chunk: int = 4096) -> int:
    count = 0
    for start in range(0, total, chunk):
        count += int(check(start, min(total, start + chunk)))
    return count


def ext1_bruteforce(m: Module, n: Module, budget: int = DEFAULT_BUDGET) -> int:
    """dim Ext^1(M, N) by enumerating module structures on ``N (+) M``.

    Every candidate ``rho_E(b) = [[rho_N(b), delta(b)], [0, rho_M(b)]]`` is
    tested against the module axioms; the triangular automorphisms
    ``[[1, h], [0, 1]]`` act by translation, so the number of equivalence
    classes is ``|valid| / |orbit of 0|``.
    """
    if m.algebra != n.algebra:
        raise DimensionMismatch("Ext between modules over different algebras")
    p, d = m.p, m.algebra.dim
    a, b = n.dim, m.dim
    if a == 0 or b == 0:
        return 0
    unknowns = d * a * b
    if p ** unknowns > budget:
        raise TooLarge(f"{p}^{unknowns} candidate structures exceed budget {budget}")
    mult, unit = m.algebra.mult, m.algebra.unit
    size = a + b

    def assemble(deltas: np.ndarray) -> np.ndarray:
        # deltas: (K, d, a, b) -> actions (K, d, size, size)
        k = deltas.shape[0]
        act = np.zeros((k, d, size, size), np.int64)
        act[:, :, :a, :a] = n.action
        act[:, :, a:, a:] = m.action
        act[:, :, :a, a:] = deltas
        return act

    def valid(start: int, stop: int) -> int:
        deltas = la.vectors(p, unknowns, start, stop).reshape(-1, d, a, b)
        act = assemble(deltas)
        one = np.einsum("e,keij->kij", unit, act) % p
        ok = np.all(one == np.eye(size, dtype=np.int64), axis=(1, 2))
        lhs = np.einsum("kbij,kcjl->kbcil", act, act) % p
        rhs = np.einsum("bce,keil->kbcil", mult, act) % p
        ok &= np.all(lhs == rhs, axis=(1, 2, 3, 4))
        return int(ok.sum())

    n_valid = _count_in_chunks(p ** unknowns, valid)

    hom_unknowns = a * b
    if p ** hom_unknowns > budget:
        raise TooLarge(f"{p}^{hom_unknowns} triangular automorphisms exceed budget {budget}")
    hs = la.vectors(p, hom_unknowns).reshape(-1, a, b)
    # conjugating by [[1, h], [0, 1]] adds h rho_M(b) - rho_N(b) h to delta(b)
    shifts = (np.einsum("kij,bjl->kbil", hs, m.action) - np.einsum("bij,kjl->kbil", n.action, hs)) % p
    orbit = len({s.tobytes() for s in shifts})
    ratio, rem = divmod(n_valid, orbit)
    if rem:
        raise AssertionError("orbit count does not divide the number of structures")
    dim = 0
    while ratio > 1:
        ratio, rem = divmod(ratio, p)
        if rem:
            raise AssertionError("extension count is not a power of p")
        dim += 1
    return dim
