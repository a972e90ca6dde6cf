"""The base abelian category: finite-dimensional left modules over an Algebra.

A module of dimension ``n`` is the stack ``action[b]`` of ``n x n`` matrices
by which each algebra basis element acts on column vectors.  Morphisms are
``codomain.dim x domain.dim`` matrices that intertwine the actions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .errors import (
    ActionNotPreserved,
    DimensionMismatch,
    InvariantViolation,
    NotExact,
    TooLarge,
)


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    action: np.ndarray
    name: str = ""

    def __post_init__(self):
        act = np.asarray(self.action, dtype=np.int64) % self.algebra.p
        if act.ndim != 3 or act.shape[0] != self.algebra.dim or act.shape[1] != act.shape[2]:
            raise InvariantViolation(
                f"action has shape {act.shape}; need ({self.algebra.dim}, n, n)"
            )
        act.setflags(write=False)
        object.__setattr__(self, "action", act)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, element: np.ndarray) -> np.ndarray:
        """Matrix by which an algebra element (coordinate vector) acts."""
        return np.einsum("b,bij->ij", np.asarray(element, np.int64), self.action) % self.p

    def check(self) -> None:
        p = self.p
        if not np.array_equal(self.act(self.algebra.unit), la.identity(self.dim)):
            raise InvariantViolation("algebra unit does not act as the identity")
        lhs = np.einsum("bij,cjk->bcik", self.action, self.action) % p
        rhs = np.einsum("bce,eik->bcik", self.algebra.mult, self.action) % p
        bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
        if bad.size:
            b, c = (int(x) for x in bad[0])
            raise InvariantViolation(f"action does not respect e_{b} * e_{c}")

    def is_valid(self) -> bool:
        try:
            self.check()
        except InvariantViolation:
            return False
        return True

    @cached_property
    def _key(self):
        return (self.algebra, self.action.shape, self.action.tobytes())

    def __eq__(self, other):
        return isinstance(other, Module) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Module({label}dim={self.dim} over {self.algebra.name or '?'})"

    @cached_property
    def presentation(self) -> "Presentation":
        # concurrent fills compute identical values; last write wins harmlessly
        return projective_presentation(self)

    def identity(self) -> "ModuleMorphism":
        return ModuleMorphism(self, self, la.identity(self.dim))


def zero_module(algebra: Algebra) -> Module:
    return Module(algebra, np.zeros((algebra.dim, 0, 0), np.int64), "0")


def regular_module(algebra: Algebra) -> Module:
    return Module(algebra, algebra.regular_action, "A")


def free_module(algebra: Algebra, n: int) -> Module:
    if n == 0:
        return zero_module(algebra)
    reg = algebra.regular_action
    act = np.stack([la.block_diag(*([reg[b]] * n)) for b in range(algebra.dim)])
    return Module(algebra, act, "A" if n == 1 else f"A^{n}")


def module_from_matrices(algebra: Algebra, matrices: Sequence, name: str = "") -> Module:
    m = Module(algebra, np.asarray(matrices, dtype=np.int64), name)
    m.check()
    return m


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    domain: Module
    codomain: Module
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.int64).reshape(self.codomain.dim, self.domain.dim)
        object.__setattr__(self, "matrix", mat % self.domain.p)

    @property
    def p(self) -> int:
        return self.domain.p

    def check(self) -> None:
        if self.domain.algebra != self.codomain.algebra:
            raise InvariantViolation("morphism between modules over different algebras")
        lhs = np.einsum("ij,bjk->bik", self.matrix, self.domain.action) % self.p
        rhs = np.einsum("bij,jk->bik", self.codomain.action, self.matrix) % self.p
        bad = np.flatnonzero(np.any(lhs != rhs, axis=(1, 2)))
        if bad.size:
            raise InvariantViolation(f"matrix does not intertwine the action of e_{int(bad[0])}")

    def is_valid(self) -> bool:
        try:
            self.check()
        except InvariantViolation:
            return False
        return True

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``g @ f`` is the composite ``g o f``."""
        if other.codomain.dim != self.domain.dim:
            raise DimensionMismatch("composing morphisms with mismatched (co)domains")
        return ModuleMorphism(other.domain, self.codomain, la.mul(self.p, self.matrix, other.matrix))

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.domain, self.codomain, (self.matrix + other.matrix) % self.p)

    def __neg__(self) -> "ModuleMorphism":
        return ModuleMorphism(self.domain, self.codomain, (-self.matrix) % self.p)

    def scale(self, c: int) -> "ModuleMorphism":
        return ModuleMorphism(self.domain, self.codomain, (c * self.matrix) % self.p)

    def is_mono(self) -> bool:
        return la.is_injective(self.matrix, self.p)

    def is_epi(self) -> bool:
        return la.is_surjective(self.matrix, self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def is_iso(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.is_mono()

    def image_space(self) -> la.Subspace:
        return la.column_space(self.matrix, self.p)

    def kernel_space(self) -> la.Subspace:
        return la.Subspace.of_columns(la.kernel(self.matrix, self.p), self.p)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleMorphism)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None

    def __repr__(self):
        return f"ModuleMorphism({self.domain.dim} -> {self.codomain.dim})"


def zero_map(domain: Module, codomain: Module) -> ModuleMorphism:
    return ModuleMorphism(domain, codomain, la.zeros(codomain.dim, domain.dim))


def _same_algebra(*modules: Module) -> Algebra:
    alg = modules[0].algebra
    for m in modules[1:]:
        if m.algebra != alg:
            raise InvariantViolation("modules over different algebras")
    return alg


# --- Hom spaces and linear solving for module maps -----------------------------


def _intertwining_system(m: Module, n: Module) -> np.ndarray:
    """Rows cut out ``vec(h)`` for ``h: m -> n`` with ``h rho_m(b) = rho_n(b) h``."""
    eye_m, eye_n = la.identity(m.dim), la.identity(n.dim)
    blocks = [
        np.kron(m.action[b].T, eye_n) - np.kron(eye_m, n.action[b])
        for b in range(m.algebra.dim)
    ]
    if not blocks:
        return la.zeros(0, m.dim * n.dim)
    return np.vstack(blocks) % m.p


def hom_space(m: Module, n: Module) -> list[ModuleMorphism]:
    """Canonical basis of Hom_A(m, n)."""
    _same_algebra(m, n)
    if m.dim == 0 or n.dim == 0:
        return []
    null = la.kernel(_intertwining_system(m, n), m.p)
    return [ModuleMorphism(m, n, la.unvec(null[:, k], n.dim, m.dim)) for k in range(null.shape[1])]


def hom_dim(m: Module, n: Module) -> int:
    if m.dim == 0 or n.dim == 0:
        return 0
    return m.dim * n.dim - la.rank(_intertwining_system(m, n), m.p)


def solve_module_map(m: Module, n: Module, constraints) -> np.ndarray | None:
    """Find a module map ``h: m -> n`` with ``post @ h @ pre == target`` for each
    ``(post, pre, target)`` in *constraints* (``None`` means identity).

    The solution with all free coordinates zero is returned, so the answer is
    a deterministic function of the inputs; ``None`` if no solution exists.
    """
    p = m.p
    rows = [_intertwining_system(m, n)]
    rhs = [la.zeros(rows[0].shape[0], 1)]
    for post, pre, target in constraints:
        post = la.identity(n.dim) if post is None else np.asarray(post, np.int64)
        pre = la.identity(m.dim) if pre is None else np.asarray(pre, np.int64)
        rows.append(np.kron(pre.T, post) % p)
        rhs.append(la.vec(np.asarray(target, np.int64)).reshape(-1, 1) % p)
    x, _ = la.solve(np.vstack(rows), np.vstack(rhs), p)
    if x is None:
        return None
    return la.unvec(x[:, 0], n.dim, m.dim)


def factor_through_epi(epi: ModuleMorphism, m: ModuleMorphism) -> ModuleMorphism:
    """``s`` with ``s @ epi == m``; *m* must vanish on the kernel of *epi*."""
    p = epi.p
    s = la.mul(p, m.matrix, la.right_inverse(epi.matrix, p))
    out = ModuleMorphism(epi.codomain, m.codomain, s)
    if not np.array_equal(la.mul(p, s, epi.matrix), m.matrix):
        raise NotExact("map does not vanish on the kernel it should factor through")
    return out


def factor_through_mono(mono: ModuleMorphism, m: ModuleMorphism) -> ModuleMorphism:
    """``s`` with ``mono @ s == m``; *m* must land in the image of *mono*."""
    p = mono.p
    s = la.mul(p, la.left_inverse(mono.matrix, p), m.matrix)
    if not np.array_equal(la.mul(p, mono.matrix, s), m.matrix):
        raise NotExact("map does not land in the image of the monomorphism")
    return ModuleMorphism(m.domain, mono.domain, s)


# --- sub- and quotient modules ------------------------------------------------


def submodule(m: Module, basis_cols: np.ndarray, name: str = "") -> tuple[Module, ModuleMorphism]:
    """Module carried by the column span of *basis_cols* (full column rank)."""
    p = m.p
    u = np.asarray(basis_cols, np.int64) % p
    k = u.shape[1]
    if k == 0:
        z = zero_module(m.algebra)
        return z, ModuleMorphism(z, m, la.zeros(m.dim, 0))
    left = la.left_inverse(u, p)
    act = np.stack([la.mul(p, left, m.action[b], u) for b in range(m.algebra.dim)])
    for b in range(m.algebra.dim):
        if not np.array_equal(la.mul(p, m.action[b], u), la.mul(p, u, act[b])):
            raise ActionNotPreserved(f"subspace not stable under e_{b}")
    sub = Module(m.algebra, act, name)
    return sub, ModuleMorphism(sub, m, u)


def quotient(m: Module, sub_cols: np.ndarray, name: str = "") -> tuple[Module, ModuleMorphism]:
    """``m / span(sub_cols)`` with its canonical projection."""
    p = m.p
    sub_cols = np.asarray(sub_cols, np.int64)
    sub_cols = sub_cols.reshape(m.dim, -1) if sub_cols.size else la.zeros(m.dim, 0)
    proj, section = la.cokernel(sub_cols, p)
    if proj.shape[0] == 0:
        z = zero_module(m.algebra)
        return z, ModuleMorphism(m, z, la.zeros(0, m.dim))
    act = np.stack([la.mul(p, proj, m.action[b], section) for b in range(m.algebra.dim)])
    for b in range(m.algebra.dim):
        if not np.array_equal(la.mul(p, proj, m.action[b]), la.mul(p, act[b], proj)):
            raise ActionNotPreserved(f"quotient not well defined under e_{b}")
    q = Module(m.algebra, act, name)
    return q, ModuleMorphism(m, q, proj)


def kernel_mod(f: ModuleMorphism) -> tuple[Module, ModuleMorphism]:
    return submodule(f.domain, la.kernel(f.matrix, f.p))


def cokernel_mod(f: ModuleMorphism) -> tuple[Module, ModuleMorphism]:
    return quotient(f.codomain, f.matrix)


def image_mod(f: ModuleMorphism) -> tuple[Module, ModuleMorphism]:
    return submodule(f.codomain, f.image_space().basis.T.copy())


def submodule_generated(m: Module, vectors: np.ndarray) -> la.Subspace:
    """Span of ``A * v`` over the columns ``v`` of *vectors*."""
    vectors = np.asarray(vectors, np.int64)
    if vectors.size == 0 or m.dim == 0:
        return la.Subspace.span(la.zeros(0, m.dim), m.p, m.dim)
    vectors = vectors.reshape(m.dim, -1)
    images = np.einsum("bij,jk->bik", m.action, vectors) % m.p
    return la.Subspace.span(images.transpose(0, 2, 1).reshape(-1, m.dim), m.p, m.dim)


def generators(m: Module) -> np.ndarray:
    """Greedy generating set: standard basis vectors that enlarge the span so far.

    Columns of the result; deterministic in the module's matrices.
    """
    chosen: list[int] = []
    span = la.Subspace.span(la.zeros(0, m.dim), m.p, m.dim)
    for k in range(m.dim):
        if span.dim == m.dim:
            break
        e = la.zeros(m.dim, 1)
        e[k, 0] = 1
        if span.contains(e[:, 0]):
            continue
        chosen.append(k)
        span = span + submodule_generated(m, e)
    out = la.zeros(m.dim, len(chosen))
    for col, k in enumerate(chosen):
        out[k, col] = 1
    return out


# --- sums, pullbacks, pushouts ----------------------------------------------


def direct_sum(*modules: Module):
    """Returns ``(S, injections, projections)``."""
    if not modules:
        raise InvariantViolation("direct sum of no modules needs an algebra")
    alg = _same_algebra(*modules)
    if len(modules) == 1:
        m = modules[0]
        return m, [m.identity()], [m.identity()]
    act = np.stack([la.block_diag(*(m.action[b] for m in modules)) for b in range(alg.dim)]) \
        if alg.dim else np.zeros((0, 0, 0), np.int64)
    total = Module(alg, act.reshape(alg.dim, *([sum(m.dim for m in modules)] * 2)))
    injections, projections = [], []
    offset = 0
    for m in modules:
        inj = la.zeros(total.dim, m.dim)
        inj[offset:offset + m.dim] = la.identity(m.dim)
        injections.append(ModuleMorphism(m, total, inj))
        projections.append(ModuleMorphism(total, m, inj.T.copy()))
        offset += m.dim
    return total, injections, projections


def direct_sum_of_maps(*maps: ModuleMorphism) -> ModuleMorphism:
    dom = direct_sum(*(f.domain for f in maps))[0]
    cod = direct_sum(*(f.codomain for f in maps))[0]
    return ModuleMorphism(dom, cod, la.block_diag(*(f.matrix for f in maps)))


def row_map(maps: Sequence[ModuleMorphism], codomain: Module, domains: Sequence[Module]) -> ModuleMorphism:
    """``[f_1 ... f_k]: (+) dom_i -> codomain``."""
    total = direct_sum(*domains)[0] if domains else zero_module(codomain.algebra)
    mat = np.hstack([f.matrix for f in maps]) if maps else la.zeros(codomain.dim, 0)
    return ModuleMorphism(total, codomain, mat)


def column_map(maps: Sequence[ModuleMorphism], domain: Module, codomains: Sequence[Module]) -> ModuleMorphism:
    """``[f_1; ...; f_k]: domain -> (+) cod_i``."""
    total = direct_sum(*codomains)[0] if codomains else zero_module(domain.algebra)
    mat = np.vstack([f.matrix for f in maps]) if maps else la.zeros(0, domain.dim)
    return ModuleMorphism(domain, total, mat)


def pullback_mod(f: ModuleMorphism, g: ModuleMorphism):
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``: returns ``(P, p1: P -> X, p2: P -> Y)``."""
    if f.codomain.dim != g.codomain.dim:
        raise DimensionMismatch("pullback needs a common codomain")
    s, _, projs = direct_sum(f.domain, g.domain)
    diff = ModuleMorphism(s, f.codomain, np.hstack([f.matrix, (-g.matrix) % f.p]))
    pb, inc = kernel_mod(diff)
    return pb, projs[0] @ inc, projs[1] @ inc


def pushout_mod(f: ModuleMorphism, g: ModuleMorphism):
    """Pushout of ``f: Z -> X`` and ``g: Z -> Y``: returns ``(P, i1: X -> P, i2: Y -> P)``."""
    if f.domain.dim != g.domain.dim:
        raise DimensionMismatch("pushout needs a common domain")
    s, injs, _ = direct_sum(f.codomain, g.codomain)
    diff = ModuleMorphism(f.domain, s, np.vstack([f.matrix, (-g.matrix) % f.p]))
    po, proj = cokernel_mod(diff)
    return po, proj @ injs[0], proj @ injs[1]


# --- short exact sequences ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """``0 -> left --inj--> middle --surj--> right -> 0``."""

    inj: ModuleMorphism
    surj: ModuleMorphism

    @property
    def left(self) -> Module:
        return self.inj.domain

    @property
    def middle(self) -> Module:
        return self.inj.codomain

    @property
    def right(self) -> Module:
        return self.surj.codomain

    def failures(self) -> list[str]:
        out = []
        if self.inj.codomain != self.surj.domain:
            return ["inj and surj are not composable"]
        for label, f in (("inj", self.inj), ("surj", self.surj)):
            if not f.is_valid():
                out.append(f"{label} is not a module map")
        if not self.inj.is_mono():
            out.append("inj not monic")
        if not self.surj.is_epi():
            out.append("surj not epic")
        if self.inj.image_space() != self.surj.kernel_space():
            out.append("image(inj) != kernel(surj)")
        if self.middle.dim != self.left.dim + self.right.dim:
            out.append("dim middle != dim left + dim right")
        return out

    def is_exact(self) -> bool:
        return not self.failures()

    def verify(self) -> "ShortExactSequence":
        bad = self.failures()
        if bad:
            raise NotExact("; ".join(bad))
        return self

    def is_split(self) -> bool:
        return solve_module_map(self.right, self.middle, [(self.surj.matrix, None, la.identity(self.right.dim))]) is not None

    def dims(self) -> tuple[int, int, int]:
        return self.left.dim, self.middle.dim, self.right.dim


def split_ses(left: Module, right: Module) -> ShortExactSequence:
    s, injs, projs = direct_sum(left, right)
    return ShortExactSequence(injs[0], projs[1])


def identity_ses(m: Module) -> ShortExactSequence:
    """``0 -> 0 -> m = m -> 0``."""
    z = zero_module(m.algebra)
    return ShortExactSequence(zero_map(z, m), m.identity())


def trivial_envelope(m: Module) -> ShortExactSequence:
    """``0 -> m = m -> 0 -> 0``."""
    z = zero_module(m.algebra)
    return ShortExactSequence(m.identity(), zero_map(m, z))


def ses_direct_sum(seqs: Sequence[ShortExactSequence], algebra: Algebra) -> ShortExactSequence:
    if not seqs:
        z = zero_module(algebra)
        return ShortExactSequence(zero_map(z, z), zero_map(z, z))
    return ShortExactSequence(
        direct_sum_of_maps(*(e.inj for e in seqs)),
        direct_sum_of_maps(*(e.surj for e in seqs)),
    )


# --- projectives, injectives, duality -----------------------------------------


@dataclass(frozen=True, eq=False)
class Presentation:
    """``P1 --d1--> P0 --pi--> M -> 0`` exact, with ``K = ker pi`` kept explicitly.

    ``P0`` is free on ``gens`` (columns of M-coordinates); ``d1`` factors as
    ``P1 ->> K --iota--> P0``.
    """

    module: Module
    gens: np.ndarray
    p0: Module
    pi: ModuleMorphism
    k: Module
    iota: ModuleMorphism
    p1: Module
    cover_k: ModuleMorphism

    @property
    def d1(self) -> ModuleMorphism:
        return self.iota @ self.cover_k

    def is_exact(self) -> bool:
        return (
            self.pi.is_epi()
            and (self.pi @ self.d1).is_zero()
            and self.d1.image_space() == self.pi.kernel_space()
        )


def free_cover(m: Module, gens: np.ndarray | None = None):
    """``(P0, pi)`` with ``P0 = A^g`` sending the k-th copy of 1 to ``gens[:, k]``."""
    if gens is None:
        gens = generators(m)
    g = gens.shape[1]
    p0 = free_module(m.algebra, g)
    if g == 0:
        return p0, zero_map(p0, m)
    cols = [m.action[c] @ gens[:, k] for k in range(g) for c in range(m.algebra.dim)]
    return p0, ModuleMorphism(p0, m, np.stack(cols, axis=1) % m.p)


def hom_from_free(p0: Module, target: Module, images: np.ndarray) -> ModuleMorphism:
    """The map ``A^g -> target`` sending copy k of 1 to ``images[:, k]``."""
    d = target.algebra.dim
    g = images.shape[1]
    if g == 0:
        return zero_map(p0, target)
    cols = [target.action[c] @ images[:, k] for k in range(g) for c in range(d)]
    return ModuleMorphism(p0, target, np.stack(cols, axis=1) % target.p)


def projective_presentation(m: Module) -> Presentation:
    gens = generators(m)
    p0, pi = free_cover(m, gens)
    k, iota = kernel_mod(pi)
    p1, cover_k = free_cover(k)
    return Presentation(m, gens, p0, pi, k, iota, p1, cover_k)


def dualize(m: Module) -> Module:
    """k-linear dual, a module over the opposite algebra."""
    if m.name.startswith("D(") and m.name.endswith(")"):
        name = m.name[2:-1]
    else:
        name = f"D({m.name})" if m.name else ""
    return Module(m.algebra.opposite(), m.action.transpose(0, 2, 1).copy(), name)


def dualize_map(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(dualize(f.codomain), dualize(f.domain), f.matrix.T.copy())


def dualize_ses(e: ShortExactSequence) -> ShortExactSequence:
    return ShortExactSequence(dualize_map(e.surj), dualize_map(e.inj))


def double_dual_iso(m: Module) -> ModuleMorphism:
    """Certified canonical isomorphism ``m -> D(D(m))``."""
    dd = dualize(dualize(m))
    iso = ModuleMorphism(m, dd, la.identity(m.dim))
    iso.check()
    if not iso.is_iso():
        raise InvariantViolation("double dual comparison failed")
    return iso


def is_projective(m: Module) -> bool:
    """``m`` is projective iff its free cover splits."""
    if m.dim == 0:
        return True
    pres = m.presentation
    return solve_module_map(m, pres.p0, [(pres.pi.matrix, None, la.identity(m.dim))]) is not None


def is_injective(m: Module) -> bool:
    return is_projective(dualize(m))


def injective_envelope(m: Module) -> ModuleMorphism:
    """Monomorphism ``m -> I`` with ``I`` the dual of a free module over A^op."""
    dm = dualize(m)
    p0, pi = free_cover(dm)
    mono = dualize_map(pi)
    # dualize_map(pi) has domain D(D(m)), identical to m entrywise
    out = ModuleMorphism(m, mono.codomain, mono.matrix)
    out.check()
    if not out.is_mono():
        raise InvariantViolation("injective envelope map is not monic")
    return out


def injective_module(algebra: Algebra, n: int = 1) -> Module:
    return dualize(free_module(algebra.opposite(), n))


def find_isomorphism(m: Module, n: Module, budget: int = 4096) -> ModuleMorphism | None:
    """Some isomorphism ``m -> n`` or ``None``.

    Deterministic search over combinations of the Hom basis; raises
    :class:`TooLarge` when the space exceeds *budget* without a hit.
    """
    if m.dim != n.dim or m.algebra != n.algebra:
        return None
    if m.dim == 0:
        return ModuleMorphism(m, n, la.zeros(0, 0))
    basis = hom_space(m, n)
    if not basis:
        return None
    p = m.p
    mats = np.stack([h.matrix for h in basis])
    candidates = itertools.chain(
        (np.eye(len(basis), dtype=np.int64)[k] for k in range(len(basis))),
        (c for c in la.vectors(p, len(basis), 1, budget)),
    )
    for coeffs in candidates:
        mat = np.einsum("k,kij->ij", coeffs, mats) % p
        if la.is_injective(mat, p):
            return ModuleMorphism(m, n, mat)
    if p ** len(basis) > budget:
        raise TooLarge(f"isomorphism search over {p}^{len(basis)} maps exceeds budget {budget}")
    return None


def are_isomorphic(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None


# --- random modules (for sampling) --------------------------------------------


def random_module(algebra: Algebra, rng: np.random.Generator, max_dim: int = 4) -> Module:
    """Random quotient or submodule of a small free module."""
    for _ in range(64):
        copies = int(rng.integers(1, 3))
        free = free_module(algebra, copies)
        count = int(rng.integers(0, 3))
        vecs = rng.integers(0, algebra.p, size=(free.dim, count))
        sub = submodule_generated(free, vecs)
        if rng.random() < 0.5:
            cand = quotient(free, sub.basis.T.copy())[0]
        else:
            cand = submodule(free, sub.basis.T.copy())[0]
        if cand.dim <= max_dim:
            return cand
    return zero_module(algebra)


def random_endo_conjugate(m: Module, rng: np.random.Generator) -> Module:
    """``m`` transported along a random change of basis."""
    p = m.p
    while True:
        g = rng.integers(0, p, size=(m.dim, m.dim))
        if la.is_injective(g, p) or m.dim == 0:
            break
    gi = la.inverse(g, p) if m.dim else g
    act = np.stack([la.mul(p, g, m.action[b], gi) for b in range(m.algebra.dim)])
    return Module(m.algebra, act, m.name)
