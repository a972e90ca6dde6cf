from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivhom.algebra import dual_numbers
from quivhom.cotorsion import (
    Chain,
    LineWindow,
    builtin_pair,
    finite_limit_exchange_check,
    line_window_precover,
    theorem44_precover,
)
from quivhom.cotorsion.line import direct_limit, inverse_limit
from quivhom.errors import UnsupportedOutsideWindow
from quivhom.modules import ModuleMorphism, zero_map, zero_module
from quivhom.reps import random_rep, zero_rep
from quivhom.suite import random_chain

seeds = st.integers(0, 2**32 - 1)


def test_window_labels_and_indices():
    w = LineWindow(-1, 2)
    assert w.length == 4 and w.labels == [2, 1, 0, -1]
    assert w.index(2) == 0 and w.label(3) == -1
    assert w.start == 0
    assert LineWindow(2, 4).start == 2 and LineWindow(-3, -1).start == -1


def test_empty_window_is_refused():
    with pytest.raises(ValueError):
        LineWindow(1, 0)


def test_labels_outside_the_window(dual, S):
    w = LineWindow(0, 1)
    with pytest.raises(UnsupportedOutsideWindow):
        w.index(2)
    with pytest.raises(UnsupportedOutsideWindow):
        w.representation(dual, {3: S})
    # zero data outside the window is harmless
    assert w.representation(dual, {1: S, 5: zero_module(dual)}).dims() == (1, 0)


def test_representation_arrows_follow_labels(dual, S):
    w = LineWindow(-1, 1)
    x = w.representation(dual, {1: S, 0: S, -1: S}, {1: np.array([[1]]), 0: np.array([[1]])})
    assert x.dims() == (1, 1, 1)
    assert x.arrow(0).is_iso() and x.arrow(1).is_iso()


def test_mismatched_quiver_is_refused(dual, S):
    w = LineWindow(0, 2)
    x = LineWindow(0, 1).representation(dual, {0: S})
    with pytest.raises(UnsupportedOutsideWindow):
        line_window_precover(builtin_pair("proj-all", dual), w, x)


def test_zero_representation(dual):
    w = LineWindow(-1, 1)
    c = line_window_precover(builtin_pair("proj-all", dual), w, zero_rep(w.quiver, dual), samples=3)
    assert c.green and c.ses.middle.is_zero()


@pytest.mark.parametrize("label", [0, 1])
def test_single_support_agrees_with_the_general_precover(dual, S, label):
    w = LineWindow(0, 1)
    o = builtin_pair("proj-all", dual)
    x = w.representation(dual, {label: S})
    line = line_window_precover(o, w, x, np.random.default_rng(0), 4)
    general = theorem44_precover(o, x, np.random.default_rng(0), 4)
    assert line.green and general.green
    assert line.ses.middle.dims() == general.ses.middle.dims()
    assert line.ses.left.dims() == general.ses.left.dims()


def test_window_fixture_shape_is_green(dual, S, A):
    w = LineWindow(-1, 1)
    x = w.representation(dual, {1: S, 0: A, -1: S},
                         {1: np.array([[0], [1]]), 0: np.array([[1, 0]])})
    for kind in ("proj-all", "all-inj"):
        c = line_window_precover(builtin_pair(kind, dual), w, x, np.random.default_rng(1), 4)
        assert c.green, c.failed()
        names = [ch.name for ch in c.checks]
        assert {"c_1(A) = A_1", "c_0(A) = A_0", "c_-1(A) = A_-1"} <= set(names)


@given(seeds, st.sampled_from([(0, 0), (-1, 1), (-2, 2), (1, 3)]), st.sampled_from(["proj-all", "all-inj"]))
def test_random_windows_are_green(seed, bounds, kind):
    rng = np.random.default_rng(seed)
    w = LineWindow(*bounds)
    x = random_rep(w.quiver, dual_numbers(), rng, 2)
    c = line_window_precover(builtin_pair(kind, dual_numbers()), w, x, rng, 3)
    assert c.green, c.failed()
    assert any(ch.name.startswith("stage") for ch in c.checks)


def test_limits_of_constant_chains(S):
    ident = S.identity()
    chain = Chain((S, S, S), (ident, ident))
    assert inverse_limit(chain)[0].dim == 1
    assert direct_limit(chain)[0].dim == 1


def test_limits_of_zero_chains(S, A):
    inv = Chain((S, A), (zero_map(A, S),))
    assert inverse_limit(inv)[0].dim == 2
    # only the last term survives a direct system of zero maps
    d = Chain((S, A), (zero_map(S, A),))
    assert direct_limit(d)[0].dim == 2


def test_exchange_on_split_systems(S, A):
    ident = S.identity()
    inc = ModuleMorphism(S, A, np.array([[0], [1]]))
    proj = ModuleMorphism(A, S, np.array([[1, 0]]))
    rep = finite_limit_exchange_check(
        [Chain((S, S), (ident,)), Chain((S, A), (proj,))],
        [Chain((S, S), (ident,)), Chain((S, A), (inc,))],
    )
    assert rep.ok and rep.lim_dims[0] == rep.lim_dims[1] and rep.colim_dims[0] == rep.colim_dims[1]


@given(seeds)
def test_exchange_on_random_systems(seed):
    rng = np.random.default_rng(seed)
    alg = dual_numbers()
    length, count = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    rep = finite_limit_exchange_check(
        [random_chain(alg, rng, length, True) for _ in range(count)],
        [random_chain(alg, rng, length, False) for _ in range(count)],
    )
    assert rep.ok
    assert rep.lim_dims[0] == rep.lim_dims[1] and rep.colim_dims[0] == rep.colim_dims[1]
