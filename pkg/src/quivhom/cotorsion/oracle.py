"""Cotorsion-pair oracles over a fixed finite-dimensional algebra.

An oracle bundles two decidable class predicates with deterministic special
precovers and preenvelopes.  Everything an oracle returns is re-checked
before it is handed back, so a faulty oracle surfaces as
:class:`OracleViolation` at the call site rather than downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..algebra import Algebra
from ..errors import CertificateInvalid, ConstructionError, OracleViolation
from ..ext import ext1_dim, ses_pullback, ses_pushout
from ..modules import (
    Module,
    ModuleMorphism,
    ShortExactSequence,
    cokernel_mod,
    dualize,
    dualize_ses,
    free_cover,
    free_module,
    injective_envelope,
    is_projective,
    kernel_mod,
    random_module,
    trivial_envelope,
)

ModulePredicate = Callable[[Module], bool]
SesBuilder = Callable[[Module], ShortExactSequence]


@dataclass(frozen=True, eq=False)
class CotorsionPairOracle:
    name: str
    algebra: Algebra
    in_A: ModulePredicate
    in_B: ModulePredicate
    precover_fn: SesBuilder
    preenvelope_fn: SesBuilder
    hereditary: bool
    _cache: dict = field(default_factory=dict, repr=False)

    def special_precover(self, m: Module) -> ShortExactSequence:
        """``0 -> B -> A -> m -> 0`` with ``A`` in the left class and ``B`` in the right.

        Cached per module, so the same input always gets the same sequence.
        """
        key = ("precover", m)
        if key not in self._cache:
            ses = self.precover_fn(m)
            bad = ses.failures()
            if bad:
                raise OracleViolation(f"{self.name}: precover not exact ({'; '.join(bad)})")
            if ses.right != m:
                raise OracleViolation(f"{self.name}: precover ends at the wrong module")
            if not self.in_A(ses.middle):
                raise OracleViolation(f"{self.name}: precover middle term outside A")
            if not self.in_B(ses.left):
                raise OracleViolation(f"{self.name}: precover kernel outside B")
            self._cache[key] = ses
        return self._cache[key]

    def special_preenvelope(self, m: Module) -> ShortExactSequence:
        """``0 -> m -> B -> A -> 0`` with ``B`` in the right class and ``A`` in the left."""
        key = ("preenvelope", m)
        if key not in self._cache:
            ses = self.preenvelope_fn(m)
            bad = ses.failures()
            if bad:
                raise OracleViolation(f"{self.name}: preenvelope not exact ({'; '.join(bad)})")
            if ses.left != m:
                raise OracleViolation(f"{self.name}: preenvelope starts at the wrong module")
            if not self.in_B(ses.middle):
                raise OracleViolation(f"{self.name}: preenvelope middle term outside B")
            if not self.in_A(ses.right):
                raise OracleViolation(f"{self.name}: preenvelope cokernel outside A")
            self._cache[key] = ses
        return self._cache[key]

    def dual(self) -> "CotorsionPairOracle":
        """The pair ``(D B, D A)`` over the opposite algebra.

        Duality swaps the classes and turns preenvelopes into precovers.
        """
        return CotorsionPairOracle(
            name=_dual_name(self.name),
            algebra=self.algebra.opposite(),
            in_A=lambda m: self.in_B(dualize(m)),
            in_B=lambda m: self.in_A(dualize(m)),
            precover_fn=lambda m: dualize_ses(self.special_preenvelope(dualize(m))),
            preenvelope_fn=lambda m: dualize_ses(self.special_precover(dualize(m))),
            hereditary=self.hereditary,
        )

    # sampling -------------------------------------------------------------------

    def sample_A(self, rng: np.random.Generator, n: int, max_dim: int = 3) -> list[Module]:
        """Members of the left class: free modules and middles of precovers."""
        out = [free_module(self.algebra, 1)]
        while len(out) < n:
            out.append(self.special_precover(random_module(self.algebra, rng, max_dim)).middle)
        return out[:n]

    def sample_B(self, rng: np.random.Generator, n: int, max_dim: int = 3) -> list[Module]:
        """Members of the right class: middles of preenvelopes and precover kernels."""
        out: list[Module] = []
        while len(out) < n:
            m = random_module(self.algebra, rng, max_dim)
            out.append(self.special_preenvelope(m).middle)
            out.append(self.special_precover(m).left)
        return out[:n]


def _dual_name(name: str) -> str:
    swaps = {"proj-all": "all-inj", "all-inj": "proj-all"}
    if name in swaps:
        return swaps[name]
    return name[2:-1] if name.startswith("D(") else f"D({name})"


def _projective_precover(m: Module) -> ShortExactSequence:
    pres = m.presentation
    return ShortExactSequence(pres.iota, pres.pi)


def builtin_pair(kind: str, algebra: Algebra) -> CotorsionPairOracle:
    """``proj-all`` = (projectives, all modules); ``all-inj`` = (all modules, injectives)."""
    if kind == "proj-all":
        return CotorsionPairOracle(
            name="proj-all",
            algebra=algebra,
            in_A=is_projective,
            in_B=lambda m: True,
            precover_fn=_projective_precover,
            preenvelope_fn=trivial_envelope,
            hereditary=True,
        )
    if kind == "all-inj":
        out = builtin_pair("proj-all", algebra.opposite()).dual()
        if out.name != "all-inj" or out.algebra != algebra:
            raise ConstructionError("duality failed to produce the injective pair")
        return out
    raise ValueError(f"unknown builtin pair {kind!r}; expected proj-all or all-inj")


@dataclass(frozen=True)
class SelfCheckReport:
    pair: str
    orthogonality_checked: int
    closure_checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def self_check(oracle: CotorsionPairOracle, rng: np.random.Generator, samples: int = 6) -> SelfCheckReport:
    """Sampled orthogonality and, for hereditary pairs, sampled closure.

    Closure is probed on the kernels of free covers of A-samples (kernels of
    epimorphisms) and on the cokernels of injective envelopes of B-samples.
    """
    a_s = oracle.sample_A(rng, samples)
    b_s = oracle.sample_B(rng, samples)
    failures = []
    pairs = 0
    for a in a_s:
        for b in b_s:
            pairs += 1
            if ext1_dim(a, b):
                failures.append(f"Ext1({a!r}, {b!r}) != 0")
    closure = 0
    if oracle.hereditary:
        for a in a_s:
            _, pi = free_cover(a)
            if oracle.in_A(pi.domain):
                closure += 1
                if not oracle.in_A(kernel_mod(pi)[0]):
                    failures.append(f"kernel of an epi between A-objects left A ({a!r})")
        for b in b_s:
            env = injective_envelope(b)
            if oracle.in_B(env.codomain):
                closure += 1
                if not oracle.in_B(cokernel_mod(env)[0]):
                    failures.append(f"cokernel of a mono between B-objects left B ({b!r})")
    return SelfCheckReport(oracle.name, pairs, closure, tuple(failures))


# --- Salce completion --------------------------------------------------------------


def salce_complete(oracle: CotorsionPairOracle, m: Module, direction: str,
                   start: ModuleMorphism | None = None) -> ShortExactSequence:
    """Special preenvelope (``direction="envelope"``) or precover (``"cover"``) of *m*
    assembled from the other half of the oracle.

    envelope: embed ``m`` into a B-object, precover the cokernel, pull back.
    cover: cover ``m`` by an A-object, preenvelope the kernel, push out.
    *start* overrides the initial mono (envelope) or epi (cover).
    """
    if direction == "envelope":
        mono = start if start is not None else injective_envelope(m)
        if not oracle.in_B(mono.codomain):
            raise ConstructionError("no B-object available to embed into")
        d, proj = cokernel_mod(mono)
        row = ShortExactSequence(mono, proj).verify()
        pre = oracle.special_precover(d)
        out = ses_pullback(row, pre.surj)
        if out.left != m:
            raise OracleViolation("pullback lost the starting module")
        if not oracle.in_B(out.middle):
            raise OracleViolation(f"{oracle.name}: extension of B-objects left B")
        if not oracle.in_A(out.right):
            raise OracleViolation(f"{oracle.name}: pullback cokernel outside A")
        return out
    if direction == "cover":
        epi = start if start is not None else free_cover(m)[1]
        if not oracle.in_A(epi.domain):
            raise ConstructionError("no A-object available to cover with")
        k, inc = kernel_mod(epi)
        row = ShortExactSequence(inc, epi).verify()
        env = oracle.special_preenvelope(k)
        out = ses_pushout(row, env.inj)
        if not oracle.in_A(out.middle):
            raise OracleViolation(f"{oracle.name}: extension of A-objects left A")
        if not oracle.in_B(out.left):
            raise OracleViolation(f"{oracle.name}: pushout kernel outside B")
        return out
    raise ValueError(f"direction must be 'envelope' or 'cover', not {direction!r}")


# --- filtrations and the Eklof check ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiltrationCertificate:
    """A finite chain with class tags on its subquotients.

    ``kind="filtration"``: ``steps`` are monos ``C_0 -> C_1 -> ... -> C_n`` with
    ``C_0 = 0`` and ``tags[k]`` naming the class of ``coker(steps[k])``.
    ``kind="cofiltration"``: ``steps`` are epis ``C_n -> ... -> C_0 = 0``
    listed from the top, and ``tags[k]`` names the class of ``ker(steps[k])``.
    """

    kind: str
    steps: tuple[ModuleMorphism, ...]
    tags: tuple[str, ...]

    @property
    def top(self) -> Module:
        if self.kind == "filtration":
            return self.steps[-1].codomain
        return self.steps[0].domain

    def subquotients(self) -> list[Module]:
        if self.kind == "filtration":
            return [cokernel_mod(f)[0] for f in self.steps]
        return [kernel_mod(f)[0] for f in self.steps]

    def verify(self, oracle: CotorsionPairOracle) -> None:
        if self.kind not in ("filtration", "cofiltration"):
            raise CertificateInvalid(f"unknown certificate kind {self.kind!r}")
        if len(self.steps) != len(self.tags) or not self.steps:
            raise CertificateInvalid("need one tag per step and at least one step")
        mono = self.kind == "filtration"
        ends = [(f.domain, f.codomain) for f in self.steps]
        if mono and ends[0][0].dim:
            raise CertificateInvalid("filtration must start at 0")
        if not mono and ends[-1][1].dim:
            raise CertificateInvalid("cofiltration must end at 0")
        for k, f in enumerate(self.steps):
            if not f.is_valid():
                raise CertificateInvalid(f"step {k} is not a module map")
            if mono and not f.is_mono():
                raise CertificateInvalid(f"step {k} is not monic")
            if not mono and not f.is_epi():
                raise CertificateInvalid(f"step {k} is not epic")
            if k and self.steps[k - 1].codomain != f.domain:
                raise CertificateInvalid(f"steps {k - 1} and {k} do not compose")
        preds = {"A": oracle.in_A, "B": oracle.in_B}
        for k, (sub, tag) in enumerate(zip(self.subquotients(), self.tags)):
            if tag not in preds:
                raise CertificateInvalid(f"unknown tag {tag!r}")
            if not preds[tag](sub):
                raise CertificateInvalid(f"subquotient {k} is not in class {tag}")


@dataclass(frozen=True)
class EklofReport:
    kind: str
    samples: int
    nonzero: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.nonzero


def eklof_check(cert: FiltrationCertificate, oracle: CotorsionPairOracle,
                rng: np.random.Generator, samples: int = 5) -> EklofReport:
    """Verify *cert*, then test the Ext vanishing its conclusion predicts."""
    cert.verify(oracle)
    want = "A" if cert.kind == "filtration" else "B"
    if any(t != want for t in cert.tags):
        raise CertificateInvalid(f"a {cert.kind} must carry {want}-tags only")
    top = cert.top
    nonzero = []
    if cert.kind == "filtration":
        for k, b in enumerate(oracle.sample_B(rng, samples)):
            if ext1_dim(top, b):
                nonzero.append(k)
    else:
        for k, a in enumerate(oracle.sample_A(rng, samples)):
            if ext1_dim(a, top):
                nonzero.append(k)
    return EklofReport(cert.kind, samples, tuple(nonzero))

