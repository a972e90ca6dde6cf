from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivhom import linalg as la
from quivhom.algebra import dual_numbers, path_algebra_a2
from quivhom.errors import CyclicQuiver, NotNatural
from quivhom.modules import direct_sum, hom_dim, is_projective, regular_module, zero_module
from quivhom.quiver import kronecker_quiver, linear_quiver, loop_quiver
from quivhom.reps import (
    RepMorphism,
    RepSES,
    Representation,
    c_functor,
    cofree_at,
    cofree_at_direct,
    dualize_rep,
    evaluate,
    free_at,
    in_phi,
    in_psi,
    k_functor,
    phi_map,
    psi_map,
    random_rep,
    rep_cokernel,
    rep_direct_sum,
    rep_hom,
    rep_hom_dim,
    rep_kernel,
    stalk,
    zero_rep,
)

seeds = st.integers(0, 2**32 - 1)
A2, A3, KR = linear_quiver(2), linear_quiver(3), kronecker_quiver()


def rep_hom_dim_by_enumeration(x: Representation, y: Representation) -> int:
    """Count natural transformations by listing all component tuples."""
    p = x.p
    shapes = [(y[i].dim, x[i].dim) for i in x.quiver.vertices]
    sizes = [r * c for r, c in shapes]
    count = 0
    for entries in itertools.product(range(p), repeat=sum(sizes)):
        comps, k = [], 0
        for (r, c), n in zip(shapes, sizes):
            comps.append(np.array(entries[k:k + n], np.int64).reshape(r, c))
            k += n
        if RepMorphism(x, y, tuple(comps)).is_valid():
            count += 1
    return round(np.log(count) / np.log(p))


def test_evaluation_of_stalks_and_frees(S):
    x = stalk(A2, 0, S)
    assert evaluate(x, 0) == S and evaluate(x, 1).dim == 0
    assert evaluate(free_at(A2, 0, S), 1) == S


def test_stalk_memberships(S):
    def any_class(m):
        return True

    assert in_phi(stalk(A2, 1, S), any_class).holds
    assert not in_phi(stalk(A2, 0, S), any_class).holds
    assert stalk(A2, 0, zero_module(S.algebra)).is_zero()


def test_free_functor_on_a2(S):
    f1 = free_at(A2, 0, S)
    assert f1.dims() == (1, 1) and np.array_equal(f1.maps[0], la.identity(1))
    f2 = free_at(A2, 1, S)
    assert f2.dims() == (0, 1)


def test_cofree_functor_on_a2(S):
    g2 = cofree_at(A2, 1, S)
    assert g2.dims() == (1, 1) and np.array_equal(g2.maps[0], la.identity(1))
    assert cofree_at(A2, 0, S).dims() == (1, 0)


def test_kronecker_free_and_cofree_follow_path_counts(S):
    f1 = free_at(KR, 0, S)
    assert f1.dims() == (1, 2)
    assert f1[1] == direct_sum(S, S)[0]
    assert cofree_at(KR, 1, S).dims() == (2, 1)
    assert cofree_at(KR, 1, S) == cofree_at_direct(KR, 1, S)


def test_free_functor_refuses_cycles(S):
    with pytest.raises(CyclicQuiver):
        free_at(loop_quiver(), 0, S)


def test_phi_and_psi_examples(S):
    f1 = free_at(A2, 0, S)
    assert phi_map(f1, 1).is_iso() and c_functor(f1, 1).dim == 0
    x = stalk(A2, 0, S)
    assert phi_map(x, 0).domain.dim == 0 and c_functor(x, 0) == S
    assert psi_map(x, 0).codomain.dim == 0 and k_functor(x, 0) == S


def test_free_on_a_free_module_lies_in_phi_of_projectives(dual):
    for q in (A2, A3, KR):
        for i in q.vertices:
            assert in_phi(free_at(q, i, regular_module(dual)), is_projective).holds


def test_zero_representation_is_in_both_classes(dual):
    z = zero_rep(A3, dual)
    assert in_phi(z, lambda m: m.dim == 0).holds and in_psi(z, lambda m: m.dim == 0).holds


def test_non_natural_map_names_the_arrow(S):
    x = free_at(A2, 0, S)
    bad = RepMorphism(x, x, (la.identity(1), la.zeros(1, 1)))
    with pytest.raises(NotNatural, match="arrow"):
        bad.check()


def test_hom_identity_and_kernel_of_identity(S):
    x = free_at(KR, 0, S)
    basis = np.stack([h.vec() for h in rep_hom(x, x)], axis=1)
    assert la.solve(basis, x.identity().vec(), 2)[0] is not None
    assert rep_kernel(x.identity())[0].is_zero()


def test_hom_out_of_a_free_rep_is_evaluation(S, A):
    for x in (stalk(A2, 0, A), free_at(A2, 0, S), cofree_at(A2, 1, A)):
        assert rep_hom_dim(free_at(A2, 0, S), x) == hom_dim(S, x[0])


@given(seeds)
def test_rep_hom_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    alg = dual_numbers()
    x, y = random_rep(A2, alg, rng, 1), random_rep(A2, alg, rng, 2)
    assert rep_hom_dim(x, y) == rep_hom_dim_by_enumeration(x, y)


@given(seeds)
def test_random_reps_are_valid_and_dualize_back(seed):
    rng = np.random.default_rng(seed)
    alg = [dual_numbers(), path_algebra_a2()][seed % 2]
    q = [A2, A3, KR][seed % 3]
    x = random_rep(q, alg, rng, 3)
    x.check()
    assert dualize_rep(dualize_rep(x)) == x


@given(seeds)
def test_kernel_cokernel_sequences_are_exact(seed):
    rng = np.random.default_rng(seed)
    alg = dual_numbers()
    x, y = random_rep(A3, alg, rng, 2), random_rep(A3, alg, rng, 2)
    hs = rep_hom(x, y)
    if not hs:
        return
    f = hs[int(rng.integers(len(hs)))]
    k, inc = rep_kernel(f)
    c, proj = rep_cokernel(f)
    assert (f @ inc).is_zero() and (proj @ f).is_zero()
    assert k.total_dim - c.total_dim == x.total_dim - y.total_dim


@given(seeds)
def test_direct_sum_split_sequence(seed):
    rng = np.random.default_rng(seed)
    x, y = (random_rep(KR, dual_numbers(), rng, 2) for _ in range(2))
    s, injs, projs = rep_direct_sum(x, y)
    e = RepSES(injs[0], projs[1])
    assert e.is_exact()
    assert s.dims() == tuple(a + b for a, b in zip(x.dims(), y.dims()))
