"""JSON file formats.

Every file is a JSON object with a ``"kind"`` field: ``quiver``, ``algebra``,
``module``, ``rep`` or ``bundle``.  Entries are residues, never floats.
Vertex labels in files are 1-based.  A representation file names its
quiver, algebra and vertex modules by paths relative to itself; ``"0"``
stands for the zero module.  Inline objects are accepted wherever a path is.

:func:`dumps` writes the canonical form: sorted keys, one top-level key per
line, compact values.  Parsing then dumping a canonical file reproduces it
byte for byte.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import Algebra
from .errors import InvariantViolation, ParseError
from .linalg import PrimeField
from .modules import Module, zero_module
from .quiver import Quiver
from .reps import RepMorphism, RepSES, Representation

KINDS = ("quiver", "algebra", "module", "rep", "bundle")


def fixtures_dir() -> Path:
    env = os.environ.get("QUIVHOM_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "fixtures"


def resolve(name: str | os.PathLike, base: Path | None = None) -> Path:
    """Find *name* relative to *base*, the working directory, then the fixtures."""
    path = Path(name)
    candidates = []
    if base is not None and not path.is_absolute():
        candidates.append(base / path)
    candidates.append(path)
    if not path.is_absolute():
        candidates.append(fixtures_dir() / path)
    for c in candidates:
        if c.is_file():
            return c
    raise ParseError(f"file not found: {name}")


def dumps(obj: dict) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(obj[k], separators=(', ', ': '))}" for k in sorted(obj)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _read_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(data, dict) or data.get("kind") not in KINDS:
        raise ParseError(f"{path}: expected an object with kind in {', '.join(KINDS)}")
    return data


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what}: expected an integer, got {value!r}")
    return value


def _array(value, what: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=object)
    except ValueError:
        raise ParseError(f"{what}: ragged array") from None
    for x in arr.flat:
        _int(x, what)
    return arr.astype(np.int64) if arr.size else np.zeros(arr.shape, np.int64)


def _field(data: dict, key: str, what: str):
    if key not in data:
        raise ParseError(f"{what}: missing field {key!r}")
    return data[key]


# --- quivers -------------------------------------------------------------------


def quiver_to_json(q: Quiver) -> dict:
    return {"kind": "quiver", "vertices": q.vertex_count,
            "arrows": [[s + 1, t + 1] for s, t in q.arrows]}


def quiver_from_json(data: dict) -> Quiver:
    n = _int(_field(data, "vertices", "quiver"), "quiver vertices")
    arrows = _field(data, "arrows", "quiver")
    if not isinstance(arrows, list):
        raise ParseError("quiver arrows: expected a list of [source, target] pairs")
    pairs = []
    for k, a in enumerate(arrows):
        if not isinstance(a, list) or len(a) != 2:
            raise ParseError(f"arrow {k + 1}: expected [source, target]")
        s, t = (_int(x, f"arrow {k + 1}") for x in a)
        if not (1 <= s <= n and 1 <= t <= n):
            raise InvariantViolation(f"arrow {k + 1} ({s}->{t}) leaves the vertex range 1..{n}")
        pairs.append((s - 1, t - 1))
    return Quiver(n, tuple(pairs))


# --- algebras and modules ----------------------------------------------------------


def algebra_to_json(a: Algebra) -> dict:
    return {"kind": "algebra", "name": a.name, "p": a.p,
            "unit": a.unit.tolist(), "mult": a.mult.tolist()}


def algebra_from_json(data: dict, check: bool = True) -> Algebra:
    p = _int(_field(data, "p", "algebra"), "algebra p")
    unit = _array(_field(data, "unit", "algebra"), "algebra unit")
    mult = _array(_field(data, "mult", "algebra"), "algebra mult")
    d = unit.shape[0] if unit.ndim == 1 else -1
    if mult.shape != (d, d, d):
        raise ParseError(f"algebra mult has shape {mult.shape}; unit has {d} entries")
    try:
        alg = Algebra(PrimeField(p), mult, unit, str(data.get("name", "")))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if check:
        alg.check()
    return alg


def module_to_json(m: Module, algebra_ref: Any) -> dict:
    return {"kind": "module", "name": m.name, "algebra": algebra_ref,
            "action": m.action.tolist()}


def module_from_json(data: dict, algebra: Algebra, check: bool = True) -> Module:
    action = _array(_field(data, "action", "module"), "module action")
    d = algebra.dim
    if action.size == 0:
        action = np.zeros((d, 0, 0), np.int64)
    if action.ndim != 3 or action.shape[0] != d or action.shape[1] != action.shape[2]:
        raise ParseError(f"module action has shape {action.shape}; need ({d}, n, n)")
    m = Module(algebra, action, str(data.get("name", "")))
    if check:
        m.check()
    return m


# --- loading with references ---------------------------------------------------------


@dataclass
class Loaded:
    """A parsed file: the object, its raw JSON and the directory it came from."""

    kind: str
    obj: Any
    data: dict
    path: Path | None


class Loader:
    """Resolves relative references and caches algebras by path."""

    def __init__(self):
        self._algebras: dict[Path, Algebra] = {}

    def _sub(self, ref, base: Path | None, want: str) -> tuple[Any, dict]:
        if isinstance(ref, dict):
            data = ref
            sub_base = base
        elif isinstance(ref, str):
            path = resolve(ref, base)
            data = _read_json(path)
            sub_base = path.parent
            if want == "algebra":
                key = path.resolve()
                if key not in self._algebras:
                    self._algebras[key] = algebra_from_json(data)
                return self._algebras[key], data
        else:
            raise ParseError(f"expected a path or an inline {want}")
        if data.get("kind") != want:
            raise ParseError(f"expected a {want}, found {data.get('kind')!r}")
        return self._build(data, sub_base), data

    def _build(self, data: dict, base: Path | None):
        kind = data.get("kind")
        if kind == "quiver":
            return quiver_from_json(data)
        if kind == "algebra":
            return algebra_from_json(data)
        if kind == "module":
            alg, _ = self._sub(_field(data, "algebra", "module"), base, "algebra")
            return module_from_json(data, alg)
        if kind == "rep":
            return self._rep(data, base)
        if kind == "bundle":
            return bundle_from_json(data, self, base)
        raise ParseError(f"unknown kind {kind!r}")

    def _rep(self, data: dict, base: Path | None) -> Representation:
        q, _ = self._sub(_field(data, "quiver", "rep"), base, "quiver")
        alg, _ = self._sub(_field(data, "algebra", "rep"), base, "algebra")
        verts = _field(data, "vertices", "rep")
        if not isinstance(verts, list) or len(verts) != q.vertex_count:
            raise ParseError(f"rep needs one vertex entry per vertex ({q.vertex_count})")
        mods = []
        for k, v in enumerate(verts):
            if v == "0":
                mods.append(zero_module(alg))
                continue
            m, _ = self._sub(v, base, "module")
            if m.algebra != alg:
                raise InvariantViolation(f"vertex {k + 1} carries a module over another algebra")
            mods.append(m)
        arrows = _field(data, "arrows", "rep")
        if not isinstance(arrows, list) or len(arrows) != q.arrow_count:
            raise ParseError(f"rep needs one matrix per arrow ({q.arrow_count})")
        maps = []
        for a, mat in enumerate(arrows):
            s, t = q.arrows[a]
            arr = _array(mat, f"arrow {a + 1}")
            if arr.size != mods[t].dim * mods[s].dim:
                raise InvariantViolation(
                    f"arrow {a + 1} matrix has {arr.size} entries; need {mods[t].dim}x{mods[s].dim}"
                )
            maps.append(arr.reshape(mods[t].dim, mods[s].dim))
        rep = Representation(q, alg, tuple(mods), tuple(maps), str(data.get("name", "")))
        for a in range(q.arrow_count):
            try:
                rep.arrow(a).check()
            except InvariantViolation as exc:
                raise InvariantViolation(f"arrow {a + 1}: {exc}") from None
        rep.check()
        return rep

    def load(self, name) -> Loaded:
        path = resolve(name)
        data = _read_json(path)
        return Loaded(data["kind"], self._build(data, path.parent), data, path)


def load(name) -> Loaded:
    return Loader().load(name)


def loads(text: str, base: Path | None = None) -> Loaded:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(data, dict) or data.get("kind") not in KINDS:
        raise ParseError(f"expected an object with kind in {', '.join(KINDS)}")
    return Loaded(data["kind"], Loader()._build(data, base), data, None)


def canonical(data: dict) -> str:
    """Canonical text of an already-parsed JSON object."""
    return dumps(data)


# --- inline representations (used inside bundles) ---------------------------------------


def rep_to_json(x: Representation) -> dict:
    alg = algebra_to_json(x.algebra)
    return {
        "kind": "rep",
        "name": x.name,
        "quiver": quiver_to_json(x.quiver),
        "algebra": alg,
        "vertices": [module_to_json(m, alg) if m.dim else "0" for m in x.modules],
        "arrows": [m.tolist() for m in x.maps],
    }


def rep_from_json(data: dict) -> Representation:
    return Loader()._rep(data, None)


def ses_to_json(e: RepSES) -> dict:
    return {
        "left": rep_to_json(e.left),
        "middle": rep_to_json(e.middle),
        "right": rep_to_json(e.right),
        "inj": [c.tolist() for c in e.inj.components],
        "surj": [c.tolist() for c in e.surj.components],
    }


def ses_from_json(data: dict) -> RepSES:
    try:
        left, middle, right = (rep_from_json(data[k]) for k in ("left", "middle", "right"))
        inj = RepMorphism(left, middle, tuple(
            _array(c, "inj").reshape(middle[i].dim, left[i].dim) for i, c in enumerate(data["inj"])))
        surj = RepMorphism(middle, right, tuple(
            _array(c, "surj").reshape(right[i].dim, middle[i].dim) for i, c in enumerate(data["surj"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed sequence: {exc}") from None
    return RepSES(inj, surj)


def bundle_from_json(data: dict, loader=None, base=None):
    from .bundle import CertificateBundle

    return CertificateBundle.from_json(data)
