"""A seeded battery of property checks, one case per subsystem.

Each case draws its inputs from ``numpy.random.default_rng([seed, k])`` so
the cases are independent of each other and of execution order.  The
report carries no timings, so the same seed prints the same text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import dual_numbers, path_algebra_a2
from .cotorsion.completeness import theorem44_precover, theorem44_preenvelope_psi
from .cotorsion.gluing import glue_3x3
from .cotorsion.line import Chain, LineWindow, finite_limit_exchange_check, line_window_precover
from .cotorsion.oracle import CotorsionPairOracle, builtin_pair, self_check
from .errors import QuivhomError, TooLarge
from .ext import DEFAULT_BUDGET, ext1, ext1_bruteforce, ext1_dim, ses_from_class
from .modules import hom_space, random_module, zero_map
from .quiver import has_directed_cycle, kronecker_quiver, linear_quiver, random_quiver
from .rep_ext import check_adjunction_ext, check_adjunction_hom, rep_ext1_bruteforce, rep_ext1_dim
from .reps import random_rep

PAIRS = ("proj-all", "all-inj")


def fixture_algebras():
    return [dual_numbers(), path_algebra_a2()]


def small_quivers():
    return [linear_quiver(2), linear_quiver(3), kronecker_quiver()]


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    passed: int
    total: int
    detail: str = ""

    @property
    def green(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.green else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{self.case_id:<20} {status} {self.passed}/{self.total}{tail}"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    samples: int = 4


# --- shared random inputs ----------------------------------------------------------


def random_row(oracle: CotorsionPairOracle, rng: np.random.Generator, max_dim: int = 2):
    """A random short exact sequence of modules and the oracle's precovers of its ends."""
    alg = oracle.algebra
    c1 = random_module(alg, rng, max_dim)
    c2 = random_module(alg, rng, max_dim)
    space = ext1(c2, c1)
    row = ses_from_class(space, rng.integers(0, alg.p, size=space.dim))
    return row, oracle.special_precover(c1), oracle.special_precover(c2)


def random_chain(alg, rng: np.random.Generator, n: int, inverse: bool, max_dim: int = 2) -> Chain:
    mods = [random_module(alg, rng, max_dim) for _ in range(n)]
    maps = []
    for k in range(n - 1):
        d, c = (mods[k + 1], mods[k]) if inverse else (mods[k], mods[k + 1])
        f = zero_map(d, c)
        for h in hom_space(d, c):
            if rng.integers(2):
                f = f + h
        maps.append(f)
    return Chain(tuple(mods), tuple(maps))


# --- cases -------------------------------------------------------------------------------


def case_stratification(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 60, 0
    for _ in range(n):
        q = random_quiver(rng, 6, 8)
        st = q.stratification
        nested = all(a <= b for a, b in zip(st.strata, st.strata[1:]))
        if nested and st.covered == (not has_directed_cycle(q)):
            ok += 1
    return CaseResult("stratification", ok, n)


def case_adjunction_hom(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 12, 0
    algs, qs = fixture_algebras(), small_quivers()
    for t in range(n):
        alg, q = algs[t % 2], qs[t % 3]
        x = random_rep(q, alg, rng, 2)
        c = random_module(alg, rng, 2)
        i = int(rng.integers(q.vertex_count))
        ok += all(r.holds for r in check_adjunction_hom(c, x, i))
    return CaseResult("adjunction-hom", ok, n)


def case_adjunction_ext(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok, strict = 16, 0, 0
    algs, qs = fixture_algebras(), small_quivers()
    for t in range(n):
        alg, q = algs[t % 2], qs[t % 3]
        x = random_rep(q, alg, rng, 2)
        c = random_module(alg, rng, 2)
        i = int(rng.integers(q.vertex_count))
        r = check_adjunction_ext(c, x, i, "fgck"[t % 4])
        ok += r.holds
        strict += r.strict and r.relation == "<="
    return CaseResult("adjunction-ext", ok, n, f"strict {strict}")


def case_ext1_modules(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok, skipped = 12, 0, 0
    for t in range(n):
        alg = fixture_algebras()[t % 2]
        m, k = random_module(alg, rng, 2), random_module(alg, rng, 2)
        try:
            ok += ext1_dim(m, k) == ext1_bruteforce(m, k, cfg.budget)
        except TooLarge:
            skipped += 1
    return CaseResult("ext1-modules", ok, n - skipped, f"over budget {skipped}" if skipped else "")


def case_ext1_reps(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok, skipped = 8, 0, 0
    for t in range(n):
        alg = fixture_algebras()[t % 2]
        x, y = random_rep(linear_quiver(2), alg, rng, 1), random_rep(linear_quiver(2), alg, rng, 2)
        try:
            ok += rep_ext1_dim(x, y) == rep_ext1_bruteforce(x, y, cfg.budget)
        except TooLarge:
            skipped += 1
    return CaseResult("ext1-reps", ok, n - skipped, f"over budget {skipped}" if skipped else "")


def case_oracle(cfg: SuiteConfig, rng) -> CaseResult:
    results = [self_check(builtin_pair(kind, alg), rng, 4)
               for alg in fixture_algebras() for kind in PAIRS]
    return CaseResult("oracle-self-check", sum(not r.failures for r in results), len(results))


def case_glue(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 16, 0
    for t in range(n):
        oracle = builtin_pair(PAIRS[t % 2], fixture_algebras()[(t // 2) % 2])
        row, left, right = random_row(oracle, rng)
        try:
            ok += glue_3x3(oracle, row, left, right).is_valid()
        except QuivhomError:
            pass
    return CaseResult("glue-3x3", ok, n)


def case_precover(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 8, 0
    for t in range(n):
        alg = fixture_algebras()[t % 2]
        q = small_quivers()[t % 3]
        x = random_rep(q, alg, rng, 2)
        c = theorem44_precover(builtin_pair(PAIRS[(t // 2) % 2], alg), x, rng, cfg.samples)
        ok += c.green
    return CaseResult("precover", ok, n)


def case_preenvelope(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 6, 0
    for t in range(n):
        alg = fixture_algebras()[t % 2]
        q = small_quivers()[t % 3]
        x = random_rep(q, alg, rng, 2)
        c = theorem44_preenvelope_psi(builtin_pair(PAIRS[(t // 2) % 2], alg), x, rng, cfg.samples)
        ok += c.green
    return CaseResult("preenvelope", ok, n)


def case_line_window(cfg: SuiteConfig, rng) -> CaseResult:
    windows = [(0, 0), (-1, 1), (-2, 1), (0, 2)]
    n, ok = 0, 0
    for lo, hi in windows:
        w = LineWindow(lo, hi)
        for kind in PAIRS:
            x = random_rep(w.quiver, dual_numbers(), rng, 2)
            n += 1
            ok += line_window_precover(builtin_pair(kind, dual_numbers()), w, x, rng, cfg.samples).green
    return CaseResult("line-window", ok, n)


def case_limit_exchange(cfg: SuiteConfig, rng) -> CaseResult:
    n, ok = 8, 0
    alg = dual_numbers()
    for _ in range(n):
        length, count = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        rep = finite_limit_exchange_check(
            [random_chain(alg, rng, length, True) for _ in range(count)],
            [random_chain(alg, rng, length, False) for _ in range(count)],
        )
        ok += rep.ok
    return CaseResult("limit-exchange", ok, n)


CASES: dict[str, Callable[[SuiteConfig, np.random.Generator], CaseResult]] = {
    "stratification": case_stratification,
    "adjunction-hom": case_adjunction_hom,
    "adjunction-ext": case_adjunction_ext,
    "ext1-modules": case_ext1_modules,
    "ext1-reps": case_ext1_reps,
    "oracle-self-check": case_oracle,
    "glue-3x3": case_glue,
    "precover": case_precover,
    "preenvelope": case_preenvelope,
    "line-window": case_line_window,
    "limit-exchange": case_limit_exchange,
}


def run_suite(cfg: SuiteConfig, only: list[str] | None = None) -> list[CaseResult]:
    ids = sorted(only if only else CASES)
    results = []
    for k, case_id in enumerate(sorted(CASES)):
        if case_id not in ids:
            continue
        rng = np.random.default_rng([cfg.seed, k])
        try:
            results.append(CASES[case_id](cfg, rng))
        except QuivhomError as exc:
            results.append(CaseResult(case_id, 0, 1, f"{type(exc).__name__}: {exc}"))
    return results


def format_report(cfg: SuiteConfig, results: list[CaseResult]) -> str:
    lines = [f"suite seed {cfg.seed} budget {cfg.budget} samples {cfg.samples}"]
    lines += [r.line() for r in results]
    green = sum(r.green for r in results)
    lines.append(f"{green}/{len(results)} cases green")
    return "\n".join(lines) + "\n"
