"""Deterministic sample objects and morphisms for law checks over all objects."""

from __future__ import annotations

import numpy as np

from dagcat.category import FHILB, Morphism, Obj, from_matrix, sized, tensor_obj, unit
from dagcat.rel import Relation

DEFAULT_SHAPES = ((), (2,), (3,), (2, 2))


def object_of_shape(backend: str, shape) -> Obj:
    A = unit(backend)
    for n in shape:
        A = tensor_obj(A, sized(backend, n))
    return A


def object_label(A: Obj) -> str:
    if A.is_unit:
        return "I"
    return "⊗".join(str(a if isinstance(a, int) else len(a)) for a in A.atoms)


def random_morphism(dom: Obj, cod: Obj, rng: np.random.Generator, density: float = 0.4) -> Morphism:
    """Entries uniform in [-1, 1] (real and imaginary) for FHilb, random bits for Rel."""
    if dom.backend == FHILB:
        shape = (cod.size, dom.size)
        arr = rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape)
        return from_matrix(dom, cod, arr)
    bits = rng.random((dom.size, cod.size)) < density
    rows = tuple(int(sum(1 << j for j in np.flatnonzero(r))) for r in bits)
    return Morphism(dom, cod, Relation(dom.finite_set, cod.finite_set, rows))
