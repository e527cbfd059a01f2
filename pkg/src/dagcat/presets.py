"""Named structures bundled with the CLI, so demos need no external files."""

from __future__ import annotations

from dagcat.algebras import GRID, PROJECTOR_PRESETS
from dagcat.category import hilb, rel_set
from dagcat.errors import DagcatError
from dagcat.frobenius import (
    MonoidData,
    basis_frobenius,
    dual_numbers,
    matrix_algebra,
    pair_of_pants,
    trivial_monoid,
)
from dagcat.groupoid import PRESETS as GROUPOID_PRESETS
from dagcat.groupoid import FiniteGroupoid, groupoid_to_frobenius


class UnknownPreset(DagcatError, ValueError):
    pass


def _group_monoid(name):
    return lambda: groupoid_to_frobenius(GROUPOID_PRESETS[name]())


# explicit entries come last so "trivial" stays the FHilb unit monoid
MONOID_PRESETS = {
    **{name: _group_monoid(name) for name in GROUPOID_PRESETS},
    "trivial": lambda: trivial_monoid("fhilb"),
    "trivial-rel": lambda: trivial_monoid("rel"),
    "basis1": lambda: basis_frobenius(1),
    "basis2": lambda: basis_frobenius(2),
    "basis3": lambda: basis_frobenius(3),
    "basis4": lambda: basis_frobenius(4),
    "dualnumbers": dual_numbers,
    "m2": lambda: matrix_algebra(2),
    "pants2": lambda: pair_of_pants(hilb(2)),
    "pants-rel2": lambda: pair_of_pants(rel_set(2)),
}

UNITARY_PRESETS = GRID


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        raise UnknownPreset(f"unknown {what} preset {name!r}; choose from {', '.join(sorted(table))}")
    return table[name]


def monoid(name: str) -> MonoidData:
    return _lookup(MONOID_PRESETS, name, "monoid")()


def groupoid(name: str) -> FiniteGroupoid:
    return _lookup(GROUPOID_PRESETS, name, "groupoid")()


def unitary(name: str):
    return _lookup(UNITARY_PRESETS, name, "unitary")


def projectors(name: str):
    return _lookup(PROJECTOR_PRESETS, name, "projector")
