import json
from pathlib import Path

import pytest

from dagcat import presets
from dagcat.category import check_equal
from dagcat.frobenius import MonoidData
from dagcat.groupoid import isomorphic_by_labels
from dagcat.io import InputError, dumps, groupoid_json, load, loads, monoid_json

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("name", ["basis2", "dualnumbers", "m2", "z2", "s3", "pants-rel2", "trivial"])
def test_monoid_round_trip(name):
    M = presets.monoid(name)
    kind, back = loads(dumps(monoid_json(M)))
    assert kind == "monoid" and isinstance(back, MonoidData)
    assert check_equal(back.mult, M.mult) and check_equal(back.unit, M.unit)


@pytest.mark.parametrize("name", ["z2", "interval", "intervalxz2"])
def test_groupoid_round_trip(name):
    G = presets.groupoid(name)
    kind, back = loads(dumps(groupoid_json(G)))
    assert kind == "groupoid" and isomorphic_by_labels(G, back)


def test_dumps_is_deterministic():
    doc = monoid_json(presets.monoid("s3"))
    assert dumps(doc) == dumps(json.loads(dumps(doc)))
    assert dumps(doc).endswith("}\n")


@pytest.mark.parametrize("path", sorted(p.name for p in DATA.glob("*.json") if p.name not in ("malformed.json", "bad-schema.json")))
def test_fixture_files_load(path):
    kind, _ = load(DATA / path)
    assert kind in ("monoid", "groupoid", "cmat", "relation", "projectors", "algebra")


@pytest.mark.parametrize("text, fragment", [
    ("{", "line 1, column 2"),
    ("[]", "$: expected an object"),
    ('{"kind": "tensor"}', "unknown kind"),
    ('{"kind": "cmat", "rows": 1, "cols": 1}', "missing field 'entries'"),
    ('{"kind": "cmat", "rows": 1, "cols": 1, "entries": [[1]]}', "$.entries[0]"),
    ('{"kind": "cmat", "rows": "1", "cols": 1, "entries": []}', "$.rows: expected int"),
    ('{"kind": "relation", "dom": ["a", "a"], "cod": ["b"], "pairs": []}', "$.dom: labels must be unique"),
    ('{"kind": "relation", "dom": ["a"], "cod": ["b"], "pairs": [["a", "c"]]}', "$.pairs[0][1]: unknown label"),
    ('{"kind": "monoid", "backend": "set", "carrier": 2}', "$.backend"),
    ('{"kind": "monoid", "backend": "fhilb", "carrier": 0}', "$.carrier"),
    ('{"kind": "groupoid", "objects": ["x"], "morphisms": {"e": ["x", "x"]}, "composition": []}',
     "invalid groupoid"),
    ('{"kind": "projectors", "matrices": []}', "$.matrices"),
])
def test_diagnostics(text, fragment):
    with pytest.raises(InputError) as exc:
        loads(text)
    assert fragment in str(exc.value)


def test_schema_error_names_field():
    with pytest.raises(InputError, match=r"\$\.mult\.entries"):
        load(DATA / "bad-schema.json")


def test_malformed_reports_line():
    with pytest.raises(InputError, match="line 4"):
        load(DATA / "malformed.json")


def test_missing_file():
    with pytest.raises(InputError, match="cannot read"):
        load(DATA / "nope.json")


def test_algebra_structure_shape_checked():
    doc = json.loads((DATA / "algebra-computational.json").read_text())
    doc["structure"]["cols"] = 2
    doc["structure"]["entries"] = doc["structure"]["entries"][:4]
    with pytest.raises(InputError, match=r"\$\.structure"):
        loads(json.dumps(doc))
