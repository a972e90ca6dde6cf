"""Rep(Q, C): representations of a finite quiver in finite-dimensional modules.

A representation stores one :class:`Module` per vertex and one matrix per
arrow.  Limits and colimits are computed vertex by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .errors import (
    CyclicQuiver,
    DimensionMismatch,
    InvariantViolation,
    NotExact,
    NotNatural,
    TruncatedPathSet,
)
from .modules import (
    Module,
    ModuleMorphism,
    ShortExactSequence,
    _intertwining_system,
    cokernel_mod,
    direct_sum,
    dualize,
    factor_through_epi,
    factor_through_mono,
    hom_space,
    kernel_mod,
    random_module,
    zero_module,
)
from .quiver import Quiver, all_paths

ModulePredicate = Callable[[Module], bool]


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    algebra: Algebra
    modules: tuple[Module, ...]
    maps: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(self.modules))
        p = self.algebra.p
        maps = []
        for a, mat in enumerate(self.maps):
            s, t = self.quiver.arrows[a]
            m = np.asarray(mat, np.int64).reshape(self.modules[t].dim, self.modules[s].dim) % p
            m.setflags(write=False)
            maps.append(m)
        object.__setattr__(self, "maps", tuple(maps))
        if len(self.modules) != self.quiver.vertex_count:
            raise InvariantViolation(
                f"{len(self.modules)} vertex modules for {self.quiver.vertex_count} vertices"
            )
        if len(self.maps) != self.quiver.arrow_count:
            raise InvariantViolation(f"{len(self.maps)} arrow maps for {self.quiver.arrow_count} arrows")

    @property
    def p(self) -> int:
        return self.algebra.p

    def __getitem__(self, i: int) -> Module:
        return self.modules[self.quiver.check_vertex(i)]

    def dims(self) -> tuple[int, ...]:
        return tuple(m.dim for m in self.modules)

    @property
    def total_dim(self) -> int:
        return sum(self.dims())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def arrow(self, a: int) -> ModuleMorphism:
        s, t = self.quiver.arrows[a]
        return ModuleMorphism(self.modules[s], self.modules[t], self.maps[a])

    def path_map(self, path: Sequence[int], start: int) -> np.ndarray:
        out = la.identity(self.modules[start].dim)
        for a in path:
            out = la.mul(self.p, self.maps[a], out)
        return out

    def check(self) -> None:
        for i, m in enumerate(self.modules):
            if m.algebra != self.algebra:
                raise InvariantViolation(f"vertex {i} carries a module over another algebra")
            try:
                m.check()
            except InvariantViolation as exc:
                raise InvariantViolation(f"vertex {i}: {exc}") from None
        for a in range(self.quiver.arrow_count):
            try:
                self.arrow(a).check()
            except InvariantViolation as exc:
                raise InvariantViolation(f"arrow {a}: {exc}") from None

    def identity(self) -> "RepMorphism":
        return RepMorphism(self, self, tuple(la.identity(d) for d in self.dims()))

    @cached_property
    def presentation(self):
        from .rep_ext import rep_presentation

        return rep_presentation(self)

    @cached_property
    def _key(self):
        return (
            self.quiver,
            tuple(m._key for m in self.modules),
            tuple(m.tobytes() for m in self.maps),
        )

    def __eq__(self, other):
        return isinstance(other, Representation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Representation({label}dims={self.dims()})"


@dataclass(frozen=True, eq=False)
class RepMorphism:
    domain: Representation
    codomain: Representation
    components: tuple[np.ndarray, ...]

    def __post_init__(self):
        comps = tuple(
            np.asarray(c, np.int64).reshape(self.codomain.modules[i].dim, self.domain.modules[i].dim)
            % self.domain.p
            for i, c in enumerate(self.components)
        )
        if len(comps) != self.domain.quiver.vertex_count:
            raise DimensionMismatch("one component per vertex required")
        object.__setattr__(self, "components", comps)

    @property
    def p(self) -> int:
        return self.domain.p

    def component(self, i: int) -> ModuleMorphism:
        return ModuleMorphism(self.domain[i], self.codomain[i], self.components[i])

    def check(self) -> None:
        if self.domain.quiver != self.codomain.quiver:
            raise NotNatural("morphism between representations of different quivers")
        for i in self.domain.quiver.vertices:
            try:
                self.component(i).check()
            except InvariantViolation as exc:
                raise NotNatural(f"vertex {i}: {exc}") from None
        for a, (s, t) in enumerate(self.domain.quiver.arrows):
            lhs = la.mul(self.p, self.codomain.maps[a], self.components[s])
            rhs = la.mul(self.p, self.components[t], self.domain.maps[a])
            if not np.array_equal(lhs, rhs):
                raise NotNatural(f"naturality square fails at arrow {a} ({s}->{t})")

    def is_valid(self) -> bool:
        try:
            self.check()
        except InvariantViolation:
            return False
        return True

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(
            other.domain,
            self.codomain,
            tuple(la.mul(self.p, a, b) for a, b in zip(self.components, other.components)),
        )

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.domain, self.codomain,
                           tuple((a + b) % self.p for a, b in zip(self.components, other.components)))

    def is_mono(self) -> bool:
        return all(self.component(i).is_mono() for i in self.domain.quiver.vertices)

    def is_epi(self) -> bool:
        return all(self.component(i).is_epi() for i in self.domain.quiver.vertices)

    def is_zero(self) -> bool:
        return not any(np.any(c) for c in self.components)

    def vec(self) -> np.ndarray:
        parts = [la.vec(c) for c in self.components]
        return np.concatenate(parts) if parts else la.zeros(0, 1)[:, 0]


def zero_rep(q: Quiver, algebra: Algebra) -> Representation:
    z = zero_module(algebra)
    return Representation(q, algebra, (z,) * q.vertex_count, tuple(la.zeros(0, 0) for _ in q.arrows), "0")


def zero_rep_map(x: Representation, y: Representation) -> RepMorphism:
    return RepMorphism(x, y, tuple(la.zeros(y[i].dim, x[i].dim) for i in x.quiver.vertices))


# --- the functors ev, s, f, g, c, k --------------------------------------------


def evaluate(x: Representation, i: int) -> Module:
    return x[i]


def stalk(q: Quiver, i: int, c: Module) -> Representation:
    q.check_vertex(i)
    z = zero_module(c.algebra)
    mods = tuple(c if j == i else z for j in q.vertices)
    maps = tuple(la.zeros(mods[t].dim, mods[s].dim) for s, t in q.arrows)
    return Representation(q, c.algebra, mods, maps, f"s{i}({c.name})" if c.name else "")


def _paths_or_raise(q: Quiver, i: int, j: int):
    try:
        return all_paths(q, i, j)
    except TruncatedPathSet as exc:
        raise CyclicQuiver(str(exc)) from None


def free_at(q: Quiver, i: int, c: Module) -> Representation:
    """Left adjoint of evaluation at *i*: one copy of C per path out of *i*."""
    q.check_vertex(i)
    paths = [_paths_or_raise(q, i, j) for j in q.vertices]
    index = [{path: k for k, path in enumerate(ps)} for ps in paths]
    mods = tuple(direct_sum(*([c] * len(ps)))[0] if ps else zero_module(c.algebra) for ps in paths)
    n = c.dim
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        mat = la.zeros(n * len(paths[t]), n * len(paths[s]))
        for path, k in index[s].items():
            k2 = index[t][path + (a,)]
            mat[k2 * n:(k2 + 1) * n, k * n:(k + 1) * n] = la.identity(n)
        maps.append(mat)
    return Representation(q, c.algebra, mods, tuple(maps), f"f{i}({c.name})" if c.name else "")


def dualize_rep(x: Representation) -> Representation:
    """Pointwise dual: a representation of the opposite quiver over A^op."""
    name = x.name[2:-1] if x.name.startswith("D(") else (f"D({x.name})" if x.name else "")
    return Representation(
        x.quiver.opposite(),
        x.algebra.opposite(),
        tuple(dualize(m) for m in x.modules),
        tuple(m.T.copy() for m in x.maps),
        name,
    )


def dualize_rep_map(f: RepMorphism) -> RepMorphism:
    return RepMorphism(dualize_rep(f.codomain), dualize_rep(f.domain), tuple(c.T.copy() for c in f.components))


def cofree_at(q: Quiver, i: int, c: Module) -> Representation:
    """Right adjoint of evaluation at *i*, obtained as ``D f_i^{Q^op} D``."""
    out = dualize_rep(free_at(q.opposite(), i, dualize(c)))
    return Representation(q, c.algebra, out.modules, out.maps, f"g{i}({c.name})" if c.name else "")


def cofree_at_direct(q: Quiver, i: int, c: Module) -> Representation:
    """The same functor from the product formula, for cross-checking."""
    paths = [_paths_or_raise(q, j, i) for j in q.vertices]
    index = [{path: k for k, path in enumerate(ps)} for ps in paths]
    mods = tuple(direct_sum(*([c] * len(ps)))[0] if ps else zero_module(c.algebra) for ps in paths)
    n = c.dim
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        mat = la.zeros(n * len(paths[t]), n * len(paths[s]))
        for path, k2 in index[t].items():
            k = index[s][(a,) + path]
            mat[k2 * n:(k2 + 1) * n, k * n:(k + 1) * n] = la.identity(n)
        maps.append(mat)
    return Representation(q, c.algebra, mods, tuple(maps))


def phi_map(x: Representation, i: int) -> ModuleMorphism:
    """``(+)_{a: * -> i} X(s(a)) -> X(i)``, summands in arrow-id order."""
    arrows = x.quiver.incoming(i)
    srcs = [x[x.quiver.source(a)] for a in arrows]
    dom = direct_sum(*srcs)[0] if srcs else zero_module(x.algebra)
    mat = np.hstack([x.maps[a] for a in arrows]) if arrows else la.zeros(x[i].dim, 0)
    return ModuleMorphism(dom, x[i], mat)


def psi_map(x: Representation, i: int) -> ModuleMorphism:
    """``X(i) -> prod_{a: i -> *} X(t(a))``."""
    arrows = x.quiver.outgoing(i)
    tgts = [x[x.quiver.target(a)] for a in arrows]
    cod = direct_sum(*tgts)[0] if tgts else zero_module(x.algebra)
    mat = np.vstack([x.maps[a] for a in arrows]) if arrows else la.zeros(0, x[i].dim)
    return ModuleMorphism(x[i], cod, mat)


def c_functor(x: Representation, i: int) -> Module:
    return cokernel_mod(phi_map(x, i))[0]


def k_functor(x: Representation, i: int) -> Module:
    return kernel_mod(psi_map(x, i))[0]


# --- class membership ----------------------------------------------------------


@dataclass(frozen=True)
class VertexReport:
    vertex: int
    map: ModuleMorphism
    exact_side: bool              # phi monic / psi epic
    module: Module | None         # coker phi / ker psi, when exact_side
    in_class: bool | None


@dataclass(frozen=True)
class PhiPsiReport:
    kind: str
    vertices: tuple[VertexReport, ...]

    @property
    def holds(self) -> bool:
        return all(v.exact_side and v.in_class for v in self.vertices)

    def __bool__(self):
        return self.holds

    def failures(self) -> list[str]:
        word = "monic" if self.kind == "phi" else "epic"
        out = []
        for v in self.vertices:
            if not v.exact_side:
                out.append(f"{self.kind}_{v.vertex} not {word}")
            elif not v.in_class:
                out.append(f"{'coker' if self.kind == 'phi' else 'ker'} {self.kind}_{v.vertex} outside the class")
        return out


def in_rep_class(x: Representation, pred: ModulePredicate) -> bool:
    return all(pred(m) for m in x.modules)


def in_phi(x: Representation, pred: ModulePredicate) -> PhiPsiReport:
    rows = []
    for i in x.quiver.vertices:
        f = phi_map(x, i)
        mono = f.is_mono()
        coker = cokernel_mod(f)[0] if mono else None
        rows.append(VertexReport(i, f, mono, coker, pred(coker) if mono else None))
    return PhiPsiReport("phi", tuple(rows))


def in_psi(x: Representation, pred: ModulePredicate) -> PhiPsiReport:
    rows = []
    for i in x.quiver.vertices:
        f = psi_map(x, i)
        epi = f.is_epi()
        ker = kernel_mod(f)[0] if epi else None
        rows.append(VertexReport(i, f, epi, ker, pred(ker) if epi else None))
    return PhiPsiReport("psi", tuple(rows))


# --- Hom, kernels, cokernels, sums ---------------------------------------------


def _layout(x: Representation, y: Representation):
    offsets, off = [], 0
    for i in x.quiver.vertices:
        offsets.append(off)
        off += x[i].dim * y[i].dim
    return offsets, off


def _naturality_system(x: Representation, y: Representation) -> np.ndarray:
    p = x.p
    offsets, total = _layout(x, y)
    rows = []
    for i in x.quiver.vertices:
        if x[i].dim and y[i].dim:
            block = _intertwining_system(x[i], y[i])
            full = la.zeros(block.shape[0], total)
            full[:, offsets[i]:offsets[i] + block.shape[1]] = block
            rows.append(full)
    for a, (s, t) in enumerate(x.quiver.arrows):
        # Y(a) f_s - f_t X(a) = 0
        rcount = y[t].dim * x[s].dim
        if rcount == 0:
            continue
        full = la.zeros(rcount, total)
        if x[s].dim * y[s].dim:
            full[:, offsets[s]:offsets[s] + x[s].dim * y[s].dim] = np.kron(la.identity(x[s].dim), y.maps[a])
        if x[t].dim * y[t].dim:
            full[:, offsets[t]:offsets[t] + x[t].dim * y[t].dim] -= np.kron(x.maps[a].T, la.identity(y[t].dim))
        rows.append(full % p)
    return np.vstack(rows) if rows else la.zeros(0, total)


def _unpack(x: Representation, y: Representation, v: np.ndarray) -> RepMorphism:
    offsets, _ = _layout(x, y)
    comps = tuple(
        la.unvec(v[offsets[i]:offsets[i] + x[i].dim * y[i].dim], y[i].dim, x[i].dim)
        for i in x.quiver.vertices
    )
    return RepMorphism(x, y, comps)


def rep_hom(x: Representation, y: Representation) -> list[RepMorphism]:
    """Canonical basis of Hom(X, Y), solving all naturality constraints jointly."""
    if x.quiver != y.quiver:
        raise DimensionMismatch("representations of different quivers")
    _, total = _layout(x, y)
    if total == 0:
        return []
    null = la.kernel(_naturality_system(x, y), x.p)
    return [_unpack(x, y, null[:, k]) for k in range(null.shape[1])]


def rep_hom_dim(x: Representation, y: Representation) -> int:
    _, total = _layout(x, y)
    if total == 0:
        return 0
    return total - la.rank(_naturality_system(x, y), x.p)


def solve_rep_map(x: Representation, y: Representation, constraints) -> RepMorphism | None:
    """Some ``h: X -> Y`` with ``post @ h_i @ pre == target`` for every
    ``(i, post, pre, target)``; free coordinates are set to zero."""
    p = x.p
    offsets, total = _layout(x, y)
    rows = [_naturality_system(x, y)]
    rhs = [la.zeros(rows[0].shape[0], 1)]
    for i, post, pre, target in constraints:
        post = la.identity(y[i].dim) if post is None else np.asarray(post, np.int64)
        pre = la.identity(x[i].dim) if pre is None else np.asarray(pre, np.int64)
        block = np.kron(pre.T, post) % p
        full = la.zeros(block.shape[0], total)
        full[:, offsets[i]:offsets[i] + x[i].dim * y[i].dim] = block
        rows.append(full)
        rhs.append(la.vec(np.asarray(target, np.int64)).reshape(-1, 1) % p)
    system = np.vstack(rows)
    if total == 0:
        ok = not np.any(np.vstack(rhs))
        return _unpack(x, y, la.zeros(0, 1)[:, 0]) if ok else None
    sol, _ = la.solve(system, np.vstack(rhs), p)
    if sol is None:
        return None
    return _unpack(x, y, sol[:, 0])


def rep_direct_sum(*reps: Representation):
    """``(S, injections, projections)``, vertex-wise biproduct."""
    q = reps[0].quiver
    alg = reps[0].algebra
    sums = [direct_sum(*(r[i] for r in reps)) for i in q.vertices]
    maps = tuple(la.block_diag(*(r.maps[a] for r in reps)) for a in range(q.arrow_count))
    total = Representation(q, alg, tuple(s[0] for s in sums), maps)
    injs = [RepMorphism(r, total, tuple(sums[i][1][k].matrix for i in q.vertices)) for k, r in enumerate(reps)]
    projs = [RepMorphism(total, r, tuple(sums[i][2][k].matrix for i in q.vertices)) for k, r in enumerate(reps)]
    return total, injs, projs


def rep_kernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    x = f.domain
    parts = [kernel_mod(f.component(i)) for i in x.quiver.vertices]
    maps = []
    for a, (s, t) in enumerate(x.quiver.arrows):
        into = parts[t][1]
        along = x.arrow(a) @ parts[s][1]
        maps.append(factor_through_mono(into, along).matrix)
    k = Representation(x.quiver, x.algebra, tuple(m for m, _ in parts), tuple(maps))
    return k, RepMorphism(k, x, tuple(inc.matrix for _, inc in parts))


def rep_cokernel(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    y = f.codomain
    parts = [cokernel_mod(f.component(i)) for i in y.quiver.vertices]
    maps = []
    for a, (s, t) in enumerate(y.quiver.arrows):
        maps.append(factor_through_epi(parts[s][1], parts[t][1] @ y.arrow(a)).matrix)
    c = Representation(y.quiver, y.algebra, tuple(m for m, _ in parts), tuple(maps))
    return c, RepMorphism(y, c, tuple(pr.matrix for _, pr in parts))


def rep_image(f: RepMorphism) -> tuple[Representation, RepMorphism]:
    k, inc = rep_kernel(rep_cokernel(f)[1])
    return k, inc


@dataclass(frozen=True, eq=False)
class RepSES:
    """``0 -> left -> middle -> right -> 0`` in Rep(Q, C)."""

    inj: RepMorphism
    surj: RepMorphism

    @property
    def left(self) -> Representation:
        return self.inj.domain

    @property
    def middle(self) -> Representation:
        return self.inj.codomain

    @property
    def right(self) -> Representation:
        return self.surj.codomain

    def at(self, i: int) -> ShortExactSequence:
        return ShortExactSequence(self.inj.component(i), self.surj.component(i))

    def failures(self) -> list[str]:
        out = []
        if self.inj.codomain != self.surj.domain:
            return ["inj and surj are not composable"]
        for label, f in (("inj", self.inj), ("surj", self.surj)):
            try:
                f.check()
            except InvariantViolation as exc:
                out.append(f"{label}: {exc}")
        for i in self.middle.quiver.vertices:
            out.extend(f"vertex {i}: {msg}" for msg in self.at(i).failures())
        return out

    def is_exact(self) -> bool:
        return not self.failures()

    def verify(self) -> "RepSES":
        bad = self.failures()
        if bad:
            raise NotExact("; ".join(bad))
        return self

    def dims(self):
        return self.left.dims(), self.middle.dims(), self.right.dims()


def dualize_rep_ses(e: RepSES) -> RepSES:
    return RepSES(dualize_rep_map(e.surj), dualize_rep_map(e.inj))


# --- sub-representations and generators -----------------------------------------


def subrep_closure(x: Representation, seeds: dict[int, np.ndarray]) -> list[la.Subspace]:
    """Smallest sub-representation containing the seed vectors (columns per vertex)."""
    from .modules import submodule_generated

    p = x.p
    spaces = [la.Subspace.span(la.zeros(0, x[i].dim), p, x[i].dim) for i in x.quiver.vertices]
    pending = dict(seeds)
    while pending:
        i, vecs = pending.popitem()
        grown = spaces[i] + submodule_generated(x[i], vecs)
        if grown.dim == spaces[i].dim:
            continue
        spaces[i] = grown
        for a in x.quiver.outgoing(i):
            t = x.quiver.target(a)
            img = la.mul(p, x.maps[a], grown.basis.T)
            if not la.Subspace.span(img.T, p, x[t].dim) <= spaces[t]:
                prev = pending.get(t)
                pending[t] = img if prev is None else np.hstack([prev, img])
    return spaces


def rep_generators(x: Representation) -> list[tuple[int, np.ndarray]]:
    """Greedy generators ``(vertex, vector)``, scanning vertices stratum by stratum."""
    gens: list[tuple[int, np.ndarray]] = []
    seeds: dict[int, list[np.ndarray]] = {}
    spaces = subrep_closure(x, {})
    order = x.quiver.topological_order()
    for i in order:
        for k in range(x[i].dim):
            e = la.zeros(x[i].dim, 1)
            e[k, 0] = 1
            if spaces[i].contains(e[:, 0]):
                continue
            gens.append((i, e[:, 0].copy()))
            seeds.setdefault(i, []).append(e)
            spaces = subrep_closure(x, {v: np.hstack(cols) for v, cols in seeds.items()})
    return gens


# --- random representations --------------------------------------------------------


def random_rep(q: Quiver, algebra: Algebra, rng: np.random.Generator, max_dim: int = 3,
               modules: Sequence[Module] | None = None) -> Representation:
    mods = tuple(modules) if modules is not None else tuple(
        random_module(algebra, rng, max_dim) for _ in q.vertices
    )
    maps = []
    for s, t in q.arrows:
        basis = hom_space(mods[s], mods[t])
        if not basis or rng.random() < 0.15:
            maps.append(la.zeros(mods[t].dim, mods[s].dim))
            continue
        coeffs = rng.integers(0, algebra.p, size=len(basis))
        maps.append(sum(int(c) * h.matrix for c, h in zip(coeffs, basis)) % algebra.p)
    return Representation(q, algebra, mods, tuple(maps))
