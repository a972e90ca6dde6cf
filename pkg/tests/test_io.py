from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivhom.algebra import dual_numbers, path_algebra_a2
from quivhom.errors import InvariantViolation, ParseError
from quivhom.io import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    fixtures_dir,
    load,
    loads,
    quiver_from_json,
    quiver_to_json,
    rep_from_json,
    rep_to_json,
    ses_from_json,
    ses_to_json,
)
from quivhom.quiver import kronecker_quiver, linear_quiver, random_quiver
from quivhom.reps import RepSES, random_rep, rep_direct_sum

seeds = st.integers(0, 2**32 - 1)
FIXTURES = sorted(p.name for p in fixtures_dir().iterdir() if p.is_file())


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip_is_byte_identical(name):
    text = (fixtures_dir() / name).read_text()
    loaded = load(name)
    assert dumps(loaded.data) == text
    assert loaded.kind == name.rsplit(".", 1)[1]


def test_rep_fixture_contents():
    x = load("a3mixed.rep").obj
    assert x.dims() == (2, 1, 1)
    assert load("window3.rep").obj.dims() == (1, 2, 1)
    assert load("kroneckerS.rep").obj.quiver == kronecker_quiver()


def test_quiver_uses_one_based_labels():
    q = linear_quiver(3)
    data = quiver_to_json(q)
    assert data["arrows"] == [[1, 2], [2, 3]]
    assert quiver_from_json(data) == q


def test_arrow_out_of_range_names_the_arrow():
    with pytest.raises(InvariantViolation, match="arrow 2"):
        quiver_from_json({"kind": "quiver", "vertices": 2, "arrows": [[1, 2], [2, 3]]})


def test_malformed_json_is_a_parse_error(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("{\"kind\": \"quiver\", ")
    with pytest.raises(ParseError):
        load(bad)
    with pytest.raises(ParseError):
        loads("[1, 2]")
    with pytest.raises(ParseError):
        loads('{"kind": "quiver", "vertices": 1.5, "arrows": []}')
    with pytest.raises(ParseError, match="not found"):
        load(tmp_path / "missing.rep")


def test_non_associative_algebra_file_names_the_triple():
    mult = np.zeros((2, 2, 2), np.int64)
    mult[0, 0, 1] = 1   # e0 e0 = e1
    mult[1, 0, 0] = 1   # e1 e0 = e0
    data = {"kind": "algebra", "name": "bad", "p": 2, "unit": [1, 0], "mult": mult.tolist()}
    with pytest.raises(InvariantViolation, match=r"basis triple \(0, 0, 0\)"):
        loads(json.dumps(data))


def test_arrow_that_is_not_a_module_map_is_refused(tmp_path):
    data = json.loads((fixtures_dir() / "a3mixed.rep").read_text())
    data["arrows"][0] = [[0, 1]]
    path = tmp_path / "bad.rep"
    path.write_text(dumps(data))
    with pytest.raises(InvariantViolation, match="arrow 1"):
        load(path)


def test_wrong_matrix_size_is_an_invariant_violation():
    data = json.loads((fixtures_dir() / "f1S.rep").read_text())
    data["arrows"] = [[[1, 1]]]
    with pytest.raises(InvariantViolation, match="arrow 1"):
        loads(json.dumps(data), fixtures_dir())


def test_fixtures_directory_is_configurable(tmp_path, monkeypatch):
    (tmp_path / "only.quiver").write_text(dumps(quiver_to_json(linear_quiver(4))))
    monkeypatch.setenv("QUIVHOM_FIXTURES", str(tmp_path))
    assert fixtures_dir() == tmp_path
    assert load("only.quiver").obj == linear_quiver(4)


def test_references_resolve_relative_to_the_file(tmp_path):
    for name in ("dual.algebra", "S.module", "a2.quiver"):
        (tmp_path / name).write_text((fixtures_dir() / name).read_text())
    data = json.loads((fixtures_dir() / "f1S.rep").read_text())
    (tmp_path / "sub").mkdir()
    data["quiver"] = "../a2.quiver"
    data["algebra"] = "../dual.algebra"
    data["vertices"] = ["../S.module", "../S.module"]
    (tmp_path / "sub" / "x.rep").write_text(dumps(data))
    assert load(tmp_path / "sub" / "x.rep").obj == load("f1S.rep").obj


def test_algebra_round_trip():
    for alg in (dual_numbers(), path_algebra_a2()):
        assert algebra_from_json(algebra_to_json(alg)) == alg


@given(seeds)
def test_inline_rep_round_trip(seed):
    rng = np.random.default_rng(seed)
    alg = [dual_numbers(), path_algebra_a2()][seed % 2]
    x = random_rep(random_quiver(rng, 4, 4, acyclic=True), alg, rng, 2)
    data = rep_to_json(x)
    assert rep_from_json(json.loads(dumps(data))) == x


@given(seeds)
def test_sequence_round_trip(seed):
    rng = np.random.default_rng(seed)
    alg = dual_numbers()
    q = linear_quiver(2)
    x, y = random_rep(q, alg, rng, 2), random_rep(q, alg, rng, 2)
    _, injs, projs = rep_direct_sum(x, y)
    e = RepSES(injs[0], projs[1])
    back = ses_from_json(json.loads(json.dumps(ses_to_json(e))))
    assert back.left == x and back.right == y and back.is_exact()
