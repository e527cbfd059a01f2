"""JSON structure files.

Every file is an object with a ``"kind"`` field:

* ``relation``: ``{"dom": [labels], "cod": [labels], "pairs": [[d, c], ...]}``
* ``cmat``: ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` row-major
* ``monoid``: ``{"backend": "rel"|"fhilb", "carrier": [labels] or dim,
  "mult": ..., "unit": ...}``; in Rel the multiplication pairs use
  ``[[x, y], z]`` and the unit pairs ``["∗", e]`` (domains are implied)
* ``groupoid``: ``{"objects": [...], "morphisms": {"f": [src, dst]},
  "composition": [[g, h, "g∘h"], ...]}``
* ``algebra``: ``{"base-monoid": {monoid}, "carrier": [labels] or dim,
  "structure": relation or cmat body}``
* ``projectors``: ``{"matrices": [cmat body, ...]}``

Tensor-product indices are row-major: (a, b) ↦ a·|B| + b.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from dagcat.category import FHILB, REL, Morphism, Obj, hilb, rel_set, tensor_obj, unit
from dagcat.errors import DagcatError
from dagcat.fhilb import ComplexMatrix
from dagcat.frobenius import MonoidData
from dagcat.groupoid import FiniteGroupoid, InvalidGroupoid, from_table
from dagcat.rel import Relation

KINDS = ("relation", "cmat", "monoid", "groupoid", "algebra", "projectors")


class InputError(DagcatError, ValueError):
    """A structure file that does not parse or does not fit the schema."""


def _fail(path: str, msg: str):
    raise InputError(f"{path}: {msg}")


def _get(doc: dict, key: str, path: str, types=None):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    if key not in doc:
        _fail(path, f"missing field {key!r}")
    val = doc[key]
    if types is not None and not isinstance(val, types):
        _fail(f"{path}.{key}", f"expected {_type_name(types)}, got {type(val).__name__}")
    return val


def _type_name(types) -> str:
    if isinstance(types, tuple):
        return " or ".join(t.__name__ for t in types)
    return types.__name__


def _label(x, path: str):
    if isinstance(x, str):
        return x
    if isinstance(x, list) and x and all(isinstance(y, str) for y in x):
        return tuple(x)
    _fail(path, f"labels must be strings or lists of strings, got {x!r}")


def _labels(xs, path: str) -> list:
    if not isinstance(xs, list) or not xs:
        _fail(path, "expected a non-empty list of labels")
    out = [_label(x, f"{path}[{i}]") for i, x in enumerate(xs)]
    if len(set(out)) != len(out):
        _fail(path, "labels must be unique")
    return out


def _index(labels: list, x, path: str) -> int:
    lab = _label(x, path)
    try:
        return labels.index(lab)
    except ValueError:
        _fail(path, f"unknown label {x!r}")


# -- parsing ---------------------------------------------------------------------


def parse_cmat(doc: dict, path: str = "$") -> ComplexMatrix:
    rows = _get(doc, "rows", path, int)
    cols = _get(doc, "cols", path, int)
    entries = _get(doc, "entries", path, list)
    if rows < 1 or cols < 1:
        _fail(path, "rows and cols must be positive")
    if len(entries) != rows * cols:
        _fail(f"{path}.entries", f"expected {rows * cols} entries, got {len(entries)}")
    for i, e in enumerate(entries):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in e)):
            _fail(f"{path}.entries[{i}]", "each entry must be [re, im]")
    try:
        return ComplexMatrix.from_entries(rows, cols, entries)
    except ValueError as exc:
        _fail(f"{path}.entries", str(exc))


def parse_relation(doc: dict, path: str = "$") -> Morphism:
    dom = _labels(_get(doc, "dom", path), f"{path}.dom")
    cod = _labels(_get(doc, "cod", path), f"{path}.cod")
    A, B = rel_set(dom), rel_set(cod)
    return Morphism(A, B, _relation_pairs(doc, A, B, dom, cod, path))


def _relation_pairs(doc, A: Obj, B: Obj, dom_labels, cod_labels, path) -> Relation:
    pairs = _get(doc, "pairs", path, list)
    idx = []
    for i, p in enumerate(pairs):
        if not (isinstance(p, list) and len(p) == 2):
            _fail(f"{path}.pairs[{i}]", "each pair must be [dom, cod]")
        idx.append((_index(dom_labels, p[0], f"{path}.pairs[{i}][0]"), _index(cod_labels, p[1], f"{path}.pairs[{i}][1]")))
    return Relation.from_pairs(A.finite_set, B.finite_set, idx)


def _carrier(doc, backend: str, path: str) -> Obj:
    if backend == FHILB:
        dim = _get(doc, "carrier", path, int)
        if dim < 1:
            _fail(f"{path}.carrier", "dimension must be positive")
        return hilb(dim)
    return rel_set(_labels(_get(doc, "carrier", path), f"{path}.carrier"))


def _morphism(body, dom: Obj, cod: Obj, path: str) -> Morphism:
    """A morphism body whose boundary is implied by context."""
    if dom.backend == FHILB:
        mat = parse_cmat(body, path)
        if (mat.rows, mat.cols) != (cod.size, dom.size):
            _fail(path, f"expected a {cod.size}x{dom.size} matrix, got {mat.rows}x{mat.cols}")
        return Morphism(dom, cod, mat)
    dom_labels = list(dom.labels)
    cod_labels = list(cod.labels)
    return Morphism(dom, cod, _relation_pairs(body, dom, cod, dom_labels, cod_labels, path))


def parse_monoid(doc: dict, path: str = "$") -> MonoidData:
    backend = _get(doc, "backend", path, str)
    if backend not in (REL, FHILB):
        _fail(f"{path}.backend", f"must be 'rel' or 'fhilb', got {backend!r}")
    A = _carrier(doc, backend, path)
    mult = _morphism(_get(doc, "mult", path), tensor_obj(A, A), A, f"{path}.mult")
    u = _morphism(_get(doc, "unit", path), unit(backend), A, f"{path}.unit")
    return MonoidData(A, mult, u, name=doc.get("name", ""))


def parse_groupoid(doc: dict, path: str = "$") -> FiniteGroupoid:
    objects = _labels(_get(doc, "objects", path), f"{path}.objects")
    mors = _get(doc, "morphisms", path, dict)
    morphisms = {}
    for g, ends in mors.items():
        if not (isinstance(ends, list) and len(ends) == 2 and all(isinstance(e, str) for e in ends)):
            _fail(f"{path}.morphisms.{g}", "expected [src, dst]")
        morphisms[g] = tuple(ends)
    table = {}
    for i, row in enumerate(_get(doc, "composition", path, list)):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(e, str) for e in row)):
            _fail(f"{path}.composition[{i}]", "expected [g, h, g∘h]")
        table[(row[0], row[1])] = row[2]
    try:
        return from_table(objects, morphisms, table, name=doc.get("name", ""))
    except InvalidGroupoid as exc:
        _fail(path, f"invalid groupoid: {exc}")


def parse_projectors(doc: dict, path: str = "$") -> list[np.ndarray]:
    mats = _get(doc, "matrices", path, list)
    if not mats:
        _fail(f"{path}.matrices", "need at least one matrix")
    out = [parse_cmat(m, f"{path}.matrices[{i}]").array for i, m in enumerate(mats)]
    if any(m.shape != out[0].shape or m.shape[0] != m.shape[1] for m in out):
        _fail(f"{path}.matrices", "matrices must be square and of equal size")
    return out


def parse_algebra(doc: dict, path: str = "$"):
    from dagcat.algebras import EMAlgebra
    from dagcat.writer import WriterMonad

    M = parse_monoid(_get(doc, "base-monoid", path, dict), f"{path}.base-monoid")
    try:
        W = WriterMonad(M)
    except DagcatError as exc:
        _fail(f"{path}.base-monoid", str(exc))
    A = _carrier(doc, M.backend, path)
    a = _morphism(_get(doc, "structure", path), W.obj(A), A, f"{path}.structure")
    return EMAlgebra(W, A, a, name=doc.get("name", ""))


def parse_structure(doc) -> tuple[str, Any]:
    kind = _get(doc, "kind", "$", str)
    if kind not in KINDS:
        _fail("$.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "relation":
        return kind, parse_relation(doc)
    if kind == "cmat":
        mat = parse_cmat(doc)
        return kind, Morphism(hilb(mat.cols), hilb(mat.rows), mat)
    parser = {"monoid": parse_monoid, "groupoid": parse_groupoid,
              "algebra": parse_algebra, "projectors": parse_projectors}[kind]
    return kind, parser(doc)


def loads(text: str) -> tuple[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_structure(doc)


def load(path: str) -> tuple[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)


# -- serialization -----------------------------------------------------------------


def _label_json(x):
    return list(x) if isinstance(x, tuple) else x


def cmat_json(mat: ComplexMatrix) -> dict:
    return {"rows": mat.rows, "cols": mat.cols, "entries": [list(e) for e in mat.entries()]}


def morphism_json(f: Morphism) -> dict:
    if f.backend == FHILB:
        return cmat_json(f.data)
    rel = f.data
    return {
        "dom": [_label_json(x) for x in rel.dom.labels],
        "cod": [_label_json(x) for x in rel.cod.labels],
        "pairs": [[_label_json(a), _label_json(b)] for a, b in rel.labelled_pairs()],
    }


def monoid_json(M: MonoidData) -> dict:
    doc = {"kind": "monoid", "backend": M.backend}
    if M.name:
        doc["name"] = M.name
    if M.backend == FHILB:
        doc["carrier"] = M.carrier.size
        doc["mult"] = cmat_json(M.mult.data)
        doc["unit"] = cmat_json(M.unit.data)
    else:
        doc["carrier"] = [_label_json(x) for x in M.carrier.labels]
        doc["mult"] = {"pairs": morphism_json(M.mult)["pairs"]}
        doc["unit"] = {"pairs": morphism_json(M.unit)["pairs"]}
    return doc


def groupoid_json(G: FiniteGroupoid) -> dict:
    return {
        "kind": "groupoid",
        "name": G.name,
        "objects": list(G.objects),
        "morphisms": {g: [G.src[g], G.dst[g]] for g in G.morphisms},
        "composition": [[g, h, gh] for (g, h), gh in sorted(G.composition.items())],
    }


def dumps(doc) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
