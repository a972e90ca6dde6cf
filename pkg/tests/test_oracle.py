from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivhom.algebra import dual_numbers, path_algebra_a2
from quivhom.cotorsion.oracle import (
    CotorsionPairOracle,
    FiltrationCertificate,
    builtin_pair,
    eklof_check,
    salce_complete,
    self_check,
)
from quivhom.errors import CertificateInvalid, OracleViolation
from quivhom.ext import ext1, ext1_bruteforce, ses_from_class
from quivhom.modules import (
    ModuleMorphism,
    ShortExactSequence,
    are_isomorphic,
    identity_ses,
    is_injective,
    is_projective,
    module_from_matrices,
    random_module,
    trivial_envelope,
    zero_map,
    zero_module,
)

seeds = st.integers(0, 2**32 - 1)


def test_proj_all_over_a_field_contains_everything(f2):
    o = builtin_pair("proj-all", f2)
    m = module_from_matrices(f2, [np.eye(3, dtype=np.int64)])
    assert o.in_A(m) and o.in_B(m)


def test_proj_all_precover_of_the_simple(dual, S, A):
    o = builtin_pair("proj-all", dual)
    assert not o.in_A(S) and o.in_B(S)
    e = o.special_precover(S)
    assert e.dims() == (1, 2, 1) and e.middle == A and are_isomorphic(e.left, S)


def test_all_inj_preenvelope_of_the_simple(dual, S, A):
    o = builtin_pair("all-inj", dual)
    assert o.in_A(S) and not o.in_B(S)
    e = o.special_preenvelope(S)
    assert e.dims() == (1, 2, 1) and are_isomorphic(e.middle, A) and not e.is_split()


def test_duality_swaps_the_builtin_pairs(a2path):
    o = builtin_pair("proj-all", a2path)
    d = o.dual()
    assert d.name == "all-inj" and d.algebra == a2path.opposite()
    assert d.dual().name == "proj-all" and d.dual().algebra == a2path


def test_precover_is_cached(dual, S):
    o = builtin_pair("proj-all", dual)
    assert o.special_precover(S) is o.special_precover(S)


def test_lying_oracle_is_caught(dual, S):
    liar = CotorsionPairOracle(
        name="liar", algebra=dual, in_A=is_projective, in_B=lambda m: True,
        precover_fn=identity_ses, preenvelope_fn=trivial_envelope, hereditary=True,
    )
    with pytest.raises(OracleViolation, match="outside A"):
        liar.special_precover(S)


def test_salce_envelope_identity_start(dual, S):
    o = builtin_pair("proj-all", dual)
    out = salce_complete(o, S, "envelope", start=S.identity())
    assert out.left == S and o.in_B(out.middle) and o.in_A(out.right)


def test_salce_envelope_over_proj_all(dual, S):
    o = builtin_pair("proj-all", dual)
    out = salce_complete(o, S, "envelope")
    assert out.is_exact() and out.left == S and out.dims() == (1, 3, 2)


def test_salce_cover_over_all_inj_uses_the_dual_numbers_sequence(dual, S, A):
    o = builtin_pair("all-inj", dual)
    # the kernel of A ->> S is S, whose special preenvelope is 0 -> S -> A -> S -> 0
    assert o.special_preenvelope(S).dims() == (1, 2, 1)
    out = salce_complete(o, S, "cover")
    assert out.is_exact() and out.right == S
    assert is_injective(out.left) and are_isomorphic(out.left, A)
    assert out.dims() == (2, 3, 1)


def test_length_one_filtration_reduces_to_orthogonality(dual, A):
    o = builtin_pair("proj-all", dual)
    cert = FiltrationCertificate("filtration", (zero_map(zero_module(dual), A),), ("A",))
    rep = eklof_check(cert, o, np.random.default_rng(0))
    assert rep.ok


def test_socle_filtration_of_the_regular_module_is_not_projective(dual, S, A):
    o = builtin_pair("proj-all", dual)
    z = zero_module(dual)
    steps = (zero_map(z, S), ModuleMorphism(S, A, np.array([[0], [1]])))
    cert = FiltrationCertificate("filtration", steps, ("A", "A"))
    with pytest.raises(CertificateInvalid, match="not in class A"):
        cert.verify(o)


def test_stacked_extension_of_projectives(dual, A):
    o = builtin_pair("proj-all", dual)
    space = ext1(A, A)
    e = ses_from_class(space, np.zeros(space.dim, np.int64))
    z = zero_module(dual)
    cert = FiltrationCertificate("filtration", (zero_map(z, A), e.inj), ("A", "A"))
    assert eklof_check(cert, o, np.random.default_rng(1), samples=4).ok
    for b in o.sample_B(np.random.default_rng(2), 3, max_dim=2):
        assert ext1_bruteforce(e.middle, b) == 0


def test_cofiltration_by_injectives(dual, A):
    o = builtin_pair("all-inj", dual)
    cert = FiltrationCertificate("cofiltration", (zero_map(A, zero_module(dual)),), ("B",))
    assert eklof_check(cert, o, np.random.default_rng(0)).ok


@pytest.mark.parametrize("kind", ["proj-all", "all-inj"])
@pytest.mark.parametrize("make", [dual_numbers, path_algebra_a2])
def test_self_check_passes(kind, make):
    rep = self_check(builtin_pair(kind, make()), np.random.default_rng(5), samples=4)
    assert rep.ok, rep.failures


@given(seeds, st.sampled_from(["proj-all", "all-inj"]))
def test_special_sequences_are_orthogonal(seed, kind):
    rng = np.random.default_rng(seed)
    alg = [dual_numbers(), path_algebra_a2()][seed % 2]
    o = builtin_pair(kind, alg)
    m = random_module(alg, rng, 3)
    pre, env = o.special_precover(m), o.special_preenvelope(m)
    for a in o.sample_A(rng, 3, 2):
        assert ext1(a, pre.left).dim == 0
    for b in o.sample_B(rng, 3, 2):
        assert ext1(env.right, b).dim == 0


@given(seeds, st.sampled_from(["envelope", "cover"]))
def test_salce_outputs_are_special(seed, direction):
    rng = np.random.default_rng(seed)
    alg = dual_numbers()
    o = builtin_pair(["proj-all", "all-inj"][seed % 2], alg)
    m = random_module(alg, rng, 3)
    out: ShortExactSequence = salce_complete(o, m, direction)
    assert out.is_exact()
    if direction == "envelope":
        assert out.left == m and o.in_B(out.middle) and o.in_A(out.right)
    else:
        assert out.right == m and o.in_A(out.middle) and o.in_B(out.left)
