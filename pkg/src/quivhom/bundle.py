"""Certificate bundles: a construction's output with everything needed to re-check it.

A bundle stores the input representation inline together with its digest,
the emitted short exact sequence, the checks run when it was built, the
pair, the seed and the sample count.  :meth:`CertificateBundle.verify`
recomputes the end-level checks from the stored sequence alone: exactness,
the class memberships and the Ext samples, which are redrawn from the seed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .cotorsion.completeness import Check, Construction, sample_phi
from .cotorsion.oracle import CotorsionPairOracle, builtin_pair
from .errors import ParseError
from .io import dumps, rep_from_json, rep_to_json, ses_from_json, ses_to_json
from .rep_ext import rep_ext1_dim
from .reps import RepSES, Representation, dualize_rep, in_phi, in_psi, in_rep_class

PRECOVER_KINDS = ("theorem44_precover", "line_window_precover")
PREENVELOPE_KINDS = ("theorem44_preenvelope_psi",)


def rep_digest(x: Representation) -> str:
    return hashlib.sha256(dumps(rep_to_json(x)).encode()).hexdigest()


def end_checks(kind: str, oracle: CotorsionPairOracle, ses: RepSES, x: Representation,
               seed: int, samples: int) -> tuple[Check, ...]:
    """Checks that depend only on the emitted sequence, the input and the seed."""
    rng = np.random.default_rng(seed)
    checks = [Check("exact", ses.is_exact(), "; ".join(ses.failures()))]
    if kind in PRECOVER_KINDS:
        phi_rep = in_phi(ses.middle, oracle.in_A)
        probes = sample_phi(oracle, x.quiver, rng, samples)
        dims = [rep_ext1_dim(a2, ses.left) for a2 in probes]
        checks += [
            Check("ends at X", ses.right == x),
            Check("A in Phi(A)", phi_rep.holds, "; ".join(phi_rep.failures())),
            Check("B vertex-wise in B", in_rep_class(ses.left, oracle.in_B)),
        ]
    elif kind in PREENVELOPE_KINDS:
        psi_rep = in_psi(ses.middle, oracle.in_B)
        dual_probes = sample_phi(oracle.dual(), x.quiver.opposite(), rng, samples)
        dims = [rep_ext1_dim(ses.right, dualize_rep(a2)) for a2 in dual_probes]
        probes = dual_probes
        checks += [
            Check("starts at X", ses.left == x),
            Check("B' in Psi(B)", psi_rep.holds, "; ".join(psi_rep.failures())),
            Check("cokernel vertex-wise in A", in_rep_class(ses.right, oracle.in_A)),
        ]
    else:
        raise ParseError(f"unknown construction {kind!r}")
    checks.append(Check(f"Ext1 vanishes on {len(probes)} samples", not any(dims),
                        ",".join(str(d) for d in dims)))
    return tuple(checks)


@dataclass(frozen=True, eq=False)
class CertificateBundle:
    construction: str
    pair: str
    seed: int
    samples: int
    input: Representation
    input_digest: str
    ses: RepSES
    checks: tuple[Check, ...]
    window: tuple[int, int] | None = None

    @property
    def green(self) -> bool:
        return all(c.passed for c in self.checks)

    @classmethod
    def from_construction(cls, c: Construction, pair: str, x: Representation, seed: int,
                          samples: int, window: tuple[int, int] | None = None) -> "CertificateBundle":
        return cls(c.kind, pair, seed, samples, x, rep_digest(x), c.ses, c.checks, window)

    def oracle(self) -> CotorsionPairOracle:
        return builtin_pair(self.pair, self.input.algebra)

    def verify(self) -> tuple[Check, ...]:
        """Recompute the checks; the bundle is sound when all of them pass."""
        out = [
            Check("input digest", rep_digest(self.input) == self.input_digest),
            Check("recorded checks green", self.green,
                  "; ".join(c.name for c in self.checks if not c.passed)),
        ]
        out += end_checks(self.construction, self.oracle(), self.ses, self.input, self.seed, self.samples)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "kind": "bundle",
            "construction": self.construction,
            "pair": self.pair,
            "seed": self.seed,
            "samples": self.samples,
            "window": list(self.window) if self.window else None,
            "input": rep_to_json(self.input),
            "input_digest": self.input_digest,
            "sequence": ses_to_json(self.ses),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "green": self.green,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "CertificateBundle":
        try:
            checks = tuple(Check(str(c["name"]), bool(c["passed"]), str(c.get("detail", "")))
                           for c in data["checks"])
            window = data.get("window")
            out = cls(
                construction=str(data["construction"]),
                pair=str(data["pair"]),
                seed=int(data["seed"]),
                samples=int(data["samples"]),
                input=rep_from_json(data["input"]),
                input_digest=str(data["input_digest"]),
                ses=ses_from_json(data["sequence"]),
                checks=checks,
                window=tuple(window) if window else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed bundle: {exc}") from None
        if bool(data.get("green")) != out.green:
            raise ParseError("bundle 'green' flag disagrees with its checks")
        return out
