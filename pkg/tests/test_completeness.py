from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivhom.algebra import dual_numbers, path_algebra_a2
from quivhom.cotorsion import (
    builtin_pair,
    enough_repB,
    phi_cover,
    sample_phi,
    special_phi_precover_of_phi,
    theorem44_precover,
    theorem44_preenvelope_psi,
)
from quivhom.errors import NotInPhi, NotLeftRooted, NotRightRooted
from quivhom.modules import is_projective, regular_module
from quivhom.quiver import kronecker_quiver, linear_quiver, loop_quiver
from quivhom.reps import (
    Representation,
    dualize_rep,
    free_at,
    in_phi,
    in_psi,
    in_rep_class,
    random_rep,
    stalk,
    zero_rep,
)

seeds = st.integers(0, 2**32 - 1)
A2, A3, KR = linear_quiver(2), linear_quiver(3), kronecker_quiver()


def test_phi_cover_leaves_phi_objects_alone(dual, S):
    o = builtin_pair("proj-all", dual)
    x = free_at(A3, 0, S)
    c = phi_cover(o, x)
    assert c.green and c.ses.middle == x and c.ses.left.is_zero()


def test_phi_cover_of_zero(dual):
    c = phi_cover(builtin_pair("proj-all", dual), zero_rep(A2, dual))
    assert c.green and c.ses.middle.is_zero()


def test_phi_cover_of_the_source_stalk(dual, S):
    o = builtin_pair("proj-all", dual)
    c = phi_cover(o, stalk(A2, 0, S))
    assert c.green
    assert c.ses.middle.dims() == (1, 1)
    assert c.ses.left.dims() == (0, 1)
    assert in_phi(c.ses.middle, lambda m: True).holds


def test_enough_repB_is_identity_on_b_objects(dual, S):
    o = builtin_pair("proj-all", dual)
    x = random_rep(A3, dual, np.random.default_rng(2), 2)
    mono = enough_repB(o, x)
    assert mono.is_mono() and mono.codomain == x


def test_enough_repB_on_zero(dual):
    mono = enough_repB(builtin_pair("all-inj", dual), zero_rep(A2, dual))
    assert mono.codomain.is_zero()


def test_enough_repB_over_injectives(dual, S):
    o = builtin_pair("all-inj", dual)
    mono = enough_repB(o, stalk(KR, 1, S))
    assert mono.is_mono() and in_rep_class(mono.codomain, o.in_B)


def test_precover_of_a_phi_object(dual, S):
    o = builtin_pair("proj-all", dual)
    c = special_phi_precover_of_phi(o, free_at(A2, 0, S))
    assert c.green
    assert c.ses.middle.dims() == (2, 2) and c.ses.left.dims() == (1, 1)


def test_precover_of_phi_refuses_non_phi(dual, S):
    with pytest.raises(NotInPhi):
        special_phi_precover_of_phi(builtin_pair("proj-all", dual), stalk(A2, 0, S))


def test_precover_of_phi_on_zero(dual):
    c = special_phi_precover_of_phi(builtin_pair("proj-all", dual), zero_rep(A3, dual))
    assert c.green and c.ses.middle.is_zero()


@pytest.mark.parametrize("vertex", [0, 1])
def test_precover_of_stalks_is_green(dual, S, vertex):
    o = builtin_pair("proj-all", dual)
    c = theorem44_precover(o, stalk(A2, vertex, S), np.random.default_rng(0), 6)
    assert c.green, c.failed()
    assert in_phi(c.ses.middle, is_projective).holds
    assert len(c.samples) == 6 and not any(c.sample_ext_dims)


def test_precover_of_phi_a_object_has_zero_kernel(dual):
    o = builtin_pair("proj-all", dual)
    x = free_at(A3, 1, regular_module(dual))
    c = theorem44_precover(o, x, np.random.default_rng(0), 4)
    assert c.green and c.ses.left.is_zero() and c.ses.middle == x


def test_preenvelope_of_zero(dual):
    c = theorem44_preenvelope_psi(builtin_pair("proj-all", dual), zero_rep(A2, dual), samples=3)
    assert c.green and c.ses.middle.is_zero()


@pytest.mark.parametrize("vertex", [0, 1])
def test_preenvelope_of_stalks_is_green(dual, S, vertex):
    o = builtin_pair("proj-all", dual)
    x = stalk(A2, vertex, S)
    c = theorem44_preenvelope_psi(o, x, np.random.default_rng(1), 5)
    assert c.green, c.failed()
    assert c.ses.left == x and in_psi(c.ses.middle, o.in_B).holds


def test_preenvelope_dims_match_the_dual_precover(dual, S):
    o = builtin_pair("proj-all", dual)
    x = stalk(A2, 0, S)
    env = theorem44_preenvelope_psi(o, x, np.random.default_rng(3), 4)
    pre = theorem44_precover(o.dual(), dualize_rep(x), np.random.default_rng(3), 4)
    assert env.ses.middle.dims() == pre.ses.middle.dims()
    assert env.ses.right.dims() == pre.ses.left.dims()


def test_cyclic_quivers_are_refused(dual, S):
    loop = loop_quiver()
    x = Representation(loop, dual, (S,), (np.zeros((1, 1), np.int64),))
    with pytest.raises(NotLeftRooted):
        theorem44_precover(builtin_pair("proj-all", dual), x)
    with pytest.raises(NotRightRooted):
        theorem44_preenvelope_psi(builtin_pair("proj-all", dual), x)


def test_phi_samples_lie_in_phi_a(a2path):
    o = builtin_pair("proj-all", a2path)
    for y in sample_phi(o, A3, np.random.default_rng(4), 6):
        assert in_phi(y, o.in_A).holds


@given(seeds, st.sampled_from(["proj-all", "all-inj"]))
def test_random_precovers_are_green(seed, kind):
    rng = np.random.default_rng(seed)
    alg = [dual_numbers(), path_algebra_a2()][seed % 2]
    q = [A2, A3, KR][seed % 3]
    o = builtin_pair(kind, alg)
    x = random_rep(q, alg, rng, 2)
    c = theorem44_precover(o, x, rng, 3)
    assert c.green, c.failed()
    assert c.ses.right == x


@given(seeds)
def test_random_preenvelopes_are_green(seed):
    rng = np.random.default_rng(seed)
    alg = [dual_numbers(), path_algebra_a2()][seed % 2]
    o = builtin_pair(["proj-all", "all-inj"][seed % 2], alg)
    x = random_rep(A2, alg, rng, 2)
    c = theorem44_preenvelope_psi(o, x, rng, 3)
    assert c.green, c.failed()
