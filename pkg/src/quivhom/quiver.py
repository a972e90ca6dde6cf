"""Finite quivers: paths, opposites and the left-rooted vertex stratification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BadVertex, InvariantViolation, TruncatedPathSet


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph on vertices ``0..vertex_count-1``.

    ``arrows[k] = (source, target)``; the arrow id is its position ``k``.
    Loops and parallel arrows are allowed.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        if self.vertex_count < 0:
            raise InvariantViolation("negative vertex count")
        for k, (s, t) in enumerate(self.arrows):
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise InvariantViolation(
                    f"arrow {k} ({s}->{t}) leaves the vertex range 0..{self.vertex_count - 1}"
                )

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def source(self, a: int) -> int:
        return self.arrows[a][0]

    def target(self, a: int) -> int:
        return self.arrows[a][1]

    def check_vertex(self, i: int) -> int:
        if not 0 <= i < self.vertex_count:
            raise BadVertex(f"vertex {i} not in 0..{self.vertex_count - 1}")
        return i

    @cached_property
    def _incoming(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in self.vertices]
        for a, (_, t) in enumerate(self.arrows):
            inc[t].append(a)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _outgoing(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for a, (s, _) in enumerate(self.arrows):
            out[s].append(a)
        return tuple(tuple(x) for x in out)

    def incoming(self, i: int) -> tuple[int, ...]:
        """Arrow ids ending at *i*, in id order."""
        return self._incoming[self.check_vertex(i)]

    def outgoing(self, i: int) -> tuple[int, ...]:
        return self._outgoing[self.check_vertex(i)]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((t, s) for s, t in self.arrows))

    @cached_property
    def stratification(self) -> "VertexStratification":
        return stratify(self)

    def is_left_rooted(self) -> bool:
        return self.stratification.covered

    def is_right_rooted(self) -> bool:
        return self.opposite().is_left_rooted()

    def topological_order(self) -> tuple[int, ...]:
        """Vertices ordered stratum by stratum (only meaningful when left rooted)."""
        order: list[int] = []
        seen: set[int] = set()
        for stratum in self.stratification.strata:
            for v in sorted(stratum - seen):
                order.append(v)
            seen |= stratum
        order.extend(v for v in self.vertices if v not in seen)
        return tuple(order)


@dataclass(frozen=True)
class VertexStratification:
    """``strata[k]`` is V_{k+1}; ``len(strata)`` is the stabilisation index."""

    strata: tuple[frozenset[int], ...]
    covered: bool

    @property
    def stabilization_index(self) -> int:
        return len(self.strata)

    def new_vertices(self, k: int) -> frozenset[int]:
        """V_{k+1} minus V_k, for ``k = 0..len(strata)-1``."""
        prev = self.strata[k - 1] if k > 0 else frozenset()
        return self.strata[k] - prev

    def stratum_of(self, v: int) -> int | None:
        """1-based index of the first stratum containing *v*."""
        for k, s in enumerate(self.strata):
            if v in s:
                return k + 1
        return None


def stratify(q: Quiver) -> VertexStratification:
    """Fixpoint iteration of ``V_{a+1} = {i : every arrow into i starts in V_a}``."""
    strata: list[frozenset[int]] = []
    current: frozenset[int] = frozenset()
    while True:
        nxt = frozenset(
            i for i in q.vertices if all(q.source(a) in current for a in q.incoming(i))
        )
        if nxt == current:
            break
        strata.append(nxt)
        current = nxt
    return VertexStratification(tuple(strata), covered=len(current) == q.vertex_count)


def opposite(q: Quiver) -> Quiver:
    return q.opposite()


def is_left_rooted(q: Quiver) -> bool:
    return q.is_left_rooted()


def is_right_rooted(q: Quiver) -> bool:
    return q.is_right_rooted()


def has_directed_cycle(q: Quiver) -> bool:
    """Iterative three-colour DFS, kept independent of :func:`stratify`."""
    color = [0] * q.vertex_count
    for root in q.vertices:
        if color[root]:
            continue
        stack = [(root, iter(q.outgoing(root)))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            a = next(it, None)
            if a is None:
                color[v] = 2
                stack.pop()
                continue
            w = q.target(a)
            if color[w] == 1:
                return True
            if color[w] == 0:
                color[w] = 1
                stack.append((w, iter(q.outgoing(w))))
    return False


@dataclass(frozen=True)
class PathSet:
    source: int
    target: int
    paths: tuple[tuple[int, ...], ...]
    truncated: bool = False

    def __len__(self):
        return len(self.paths)


def compose_ok(q: Quiver, path: tuple[int, ...]) -> bool:
    return all(q.target(a) == q.source(b) for a, b in zip(path, path[1:]))


def enumerate_paths(q: Quiver, i: int, j: int, bound: int | None = None,
                    complete: bool = False) -> PathSet:
    """Paths from *i* to *j* of length at most *bound*, as arrow-id tuples.

    Paths are written in travel order (first arrow first); the empty tuple is
    the trivial path at ``i == j``.  ``truncated`` is set when a longer path
    from *i* to *j* exists; with ``complete=True`` that raises instead.
    """
    q.check_vertex(i)
    q.check_vertex(j)
    if bound is None:
        bound = q.vertex_count
    found: list[tuple[int, ...]] = []
    frontier: list[tuple[tuple[int, ...], int]] = [((), i)]
    for length in range(bound + 1):
        nxt = []
        for path, end in frontier:
            if end == j:
                found.append(path)
            if length < bound:
                nxt.extend((path + (a,), q.target(a)) for a in q.outgoing(end))
        frontier = nxt
    truncated = _longer_path_exists(q, i, j, bound)
    if truncated and complete:
        raise TruncatedPathSet(
            f"paths {i}->{j} exceed length {bound}; a cycle is reachable on the way"
        )
    return PathSet(i, j, tuple(sorted(found, key=lambda p: (len(p), p))), truncated)


def _longer_path_exists(q: Quiver, i: int, j: int, bound: int) -> bool:
    # endpoints of walks of length exactly bound+1; a longer path to j passes through one
    layer = {i}
    for _ in range(bound + 1):
        layer = {q.target(a) for v in layer for a in q.outgoing(v)}
        if not layer:
            return False
    reach = set(layer)
    stack = list(layer)
    while stack:
        v = stack.pop()
        for a in q.outgoing(v):
            w = q.target(a)
            if w not in reach:
                reach.add(w)
                stack.append(w)
    return j in reach


def all_paths(q: Quiver, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    """Complete path set Q(i, j); raises on cyclic quivers where it is infinite."""
    return enumerate_paths(q, i, j, bound=q.vertex_count, complete=True).paths


# standard small quivers, 0-based


def linear_quiver(n: int) -> Quiver:
    """``0 -> 1 -> ... -> n-1``."""
    return Quiver(n, tuple((k, k + 1) for k in range(n - 1)))


def kronecker_quiver(multiplicity: int = 2) -> Quiver:
    return Quiver(2, tuple((0, 1) for _ in range(multiplicity)))


def loop_quiver() -> Quiver:
    return Quiver(1, ((0, 0),))


def random_quiver(rng, max_vertices: int = 6, max_arrows: int = 8, acyclic: bool | None = None) -> Quiver:
    """A random quiver; ``acyclic=True`` only draws arrows from lower to higher ids."""
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(0, max_arrows + 1))
    arrows = []
    for _ in range(m):
        s, t = (int(v) for v in rng.integers(0, n, size=2))
        if acyclic:
            if s == t:
                continue
            s, t = min(s, t), max(s, t)
        arrows.append((s, t))
    return Quiver(n, tuple(arrows))
