"""Symmetric monoidal dagger categories with chosen duals.

Two concrete backends share one interface: ``"rel"`` (finite sets and
relations, exact) and ``"fhilb"`` (finite-dimensional Hilbert spaces and
complex matrices, compared up to a tolerance).

Objects are strict: an object is the tuple of its atomic factors, tensor is
concatenation and the unit ``I`` is the empty tuple.  Associators and unitors
are therefore identity-shaped, but they are still provided as morphisms so
that coherence equations can be written down as stated.

The dual of an object reverses its factors, so ``(A⊗B)* = B*⊗A*`` and
``A** = A`` hold on the nose; an atomic factor is its own dual.  Cups of
composite objects are nested from atomic cups, and everything built from
duals (``cap``, ``dualize``) goes through ``cup`` and ``dagger`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence, Union

import numpy as np

from dagcat.errors import BackendError, BoundaryError
from dagcat.fhilb import (
    ComplexMatrix,
    mat_compose,
    mat_cup,
    mat_dagger,
    mat_kron,
    mat_residual,
)
from dagcat.rel import (
    UNIT_SET,
    FiniteSet,
    Relation,
    rel_compose,
    rel_converse,
    rel_cup,
    rel_tensor,
)

REL = "rel"
FHILB = "fhilb"
BACKENDS = (REL, FHILB)

DEFAULT_TOL = 1e-9

Atom = Union[FiniteSet, int]
Payload = Union[Relation, ComplexMatrix]


@dataclass(frozen=True)
class Obj:
    """An object: a backend tag plus its atomic tensor factors."""

    backend: str
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise BackendError(f"unknown backend {self.backend!r}")
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        for a in atoms:
            if self.backend == REL and not isinstance(a, FiniteSet):
                raise TypeError(f"Rel atoms must be FiniteSets, got {a!r}")
            if self.backend == FHILB and not (isinstance(a, int) and a >= 0):
                raise TypeError(f"FHilb atoms must be dimensions >= 0, got {a!r}")

    @property
    def size(self) -> int:
        if self.backend == REL:
            return math.prod(len(a) for a in self.atoms)
        return math.prod(self.atoms)

    def __len__(self) -> int:
        return self.size

    @cached_property
    def finite_set(self) -> FiniteSet:
        if self.backend != REL:
            raise BackendError("only Rel objects have element labels")
        return reduce(FiniteSet.tensor, self.atoms, UNIT_SET)

    @property
    def labels(self) -> tuple:
        return self.finite_set.labels

    @property
    def is_unit(self) -> bool:
        return not self.atoms

    def __matmul__(self, other: Obj) -> Obj:
        return tensor_obj(self, other)

    def __repr__(self):
        if self.backend == FHILB:
            inner = "⊗".join(str(a) for a in self.atoms) or "I"
            return f"Obj(fhilb:{inner})"
        inner = "⊗".join("{" + ",".join(map(str, a.labels)) + "}" for a in self.atoms) or "I"
        return f"Obj(rel:{inner})"


def hilb(*dims: int) -> Obj:
    """The FHilb object C^d1 ⊗ ... ⊗ C^dk; ``hilb()`` is the unit."""
    return Obj(FHILB, tuple(dims))


def rel_set(labels: Sequence | int) -> Obj:
    """An atomic Rel object, from labels or from a size."""
    fs = FiniteSet.range(labels) if isinstance(labels, int) else FiniteSet(tuple(labels))
    return Obj(REL, (fs,))


def unit(backend: str) -> Obj:
    return Obj(backend, ())


def tensor_obj(A: Obj, B: Obj) -> Obj:
    _same_backend(A, B)
    return Obj(A.backend, A.atoms + B.atoms)


def dual(A: Obj) -> Obj:
    return Obj(A.backend, A.atoms[::-1])


def sized(backend: str, n: int) -> Obj:
    """A generic atomic object of the given size."""
    return hilb(n) if backend == FHILB else rel_set(n)


def _same_backend(*things) -> str:
    tags = {t.backend for t in things}
    if len(tags) != 1:
        raise BackendError(f"cannot mix backends {sorted(tags)}")
    return tags.pop()


class Morphism:
    """A morphism dom -> cod carrying a Relation or a ComplexMatrix."""

    __slots__ = ("dom", "cod", "data")

    def __init__(self, dom: Obj, cod: Obj, data):
        _same_backend(dom, cod)
        if dom.backend == REL:
            if not isinstance(data, Relation):
                raise TypeError("Rel morphisms carry a Relation")
            shape = (len(data.dom), len(data.cod))
            want = (dom.size, cod.size)
        else:
            if not isinstance(data, ComplexMatrix):
                data = ComplexMatrix(data)
            shape = (data.rows, data.cols)
            want = (cod.size, dom.size)
        if shape != want:
            raise BoundaryError(f"payload of shape {shape} does not fit {dom!r} -> {cod!r}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    @property
    def backend(self) -> str:
        return self.dom.backend

    @property
    def array(self) -> np.ndarray:
        """The payload as a cod x dom array (boolean for Rel)."""
        if self.backend == FHILB:
            return self.data.array
        arr = np.zeros((self.cod.size, self.dom.size), dtype=bool)
        for a, b in self.data.pairs():
            arr[b, a] = True
        return arr

    def __eq__(self, other):
        if not isinstance(other, Morphism) or other.backend != self.backend:
            return NotImplemented
        if (self.dom.size, self.cod.size) != (other.dom.size, other.cod.size):
            return False
        if self.backend == REL:
            return self.data.rows == other.data.rows
        return self.data == other.data

    def __hash__(self):
        if self.backend == REL:
            return hash((REL, self.dom.size, self.cod.size, self.data.rows))
        return hash(self.data)

    def __rshift__(self, other: Morphism) -> Morphism:
        return compose(other, self)

    def __matmul__(self, other: Morphism) -> Morphism:
        return tensor(self, other)

    def dagger(self) -> Morphism:
        return dagger(self)

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r}, {self.data!r})"


def identity(A: Obj) -> Morphism:
    if A.backend == REL:
        return Morphism(A, A, Relation.identity(A.finite_set))
    return Morphism(A, A, ComplexMatrix.identity(A.size))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g∘f."""
    _same_backend(f, g)
    if f.cod.size != g.dom.size:
        raise BoundaryError(f"cannot compose: f ends in {f.cod!r} but g starts in {g.dom!r}")
    if f.backend == REL:
        data = rel_compose(g.data, f.data)
    else:
        data = mat_compose(g.data, f.data)
    return Morphism(f.dom, g.cod, data)


def then(*fs: Morphism) -> Morphism:
    """Diagrammatic composite: ``then(f, g, h)`` is h∘g∘f."""
    return reduce(lambda acc, nxt: compose(nxt, acc), fs)


def tensor(*fs: Morphism) -> Morphism:
    if not fs:
        raise ValueError("tensor needs at least one morphism")
    return reduce(_tensor2, fs)


def _tensor2(f: Morphism, g: Morphism) -> Morphism:
    _same_backend(f, g)
    dom, cod = tensor_obj(f.dom, g.dom), tensor_obj(f.cod, g.cod)
    if f.backend == REL:
        data = rel_tensor(f.data, g.data)
    else:
        data = mat_kron(f.data, g.data)
    return Morphism(dom, cod, data)


def dagger(f: Morphism) -> Morphism:
    if f.backend == REL:
        return Morphism(f.cod, f.dom, rel_converse(f.data))
    return Morphism(f.cod, f.dom, mat_dagger(f.data))


def scale(f: Morphism, c: complex) -> Morphism:
    if f.backend != FHILB:
        raise BackendError("only FHilb morphisms can be scaled")
    return Morphism(f.dom, f.cod, ComplexMatrix(c * f.data.array))


def zero(dom: Obj, cod: Obj) -> Morphism:
    _same_backend(dom, cod)
    if dom.backend == REL:
        return Morphism(dom, cod, Relation.empty(dom.finite_set, cod.finite_set))
    return Morphism(dom, cod, ComplexMatrix.zeros(cod.size, dom.size))


def from_function(dom: Obj, cod: Obj, fn: Sequence[int]) -> Morphism:
    """The morphism sending basis element/element i to fn[i]."""
    _same_backend(dom, cod)
    if len(fn) != dom.size:
        raise BoundaryError(f"function table of length {len(fn)} for a domain of size {dom.size}")
    if dom.backend == REL:
        rows = tuple(1 << fn[i] for i in range(dom.size))
        return Morphism(dom, cod, Relation(dom.finite_set, cod.finite_set, rows))
    arr = np.zeros((cod.size, dom.size))
    arr[list(fn), list(range(dom.size))] = 1
    return Morphism(dom, cod, ComplexMatrix(arr))


def from_matrix(dom: Obj, cod: Obj, arr) -> Morphism:
    """Build a morphism from a cod x dom array (booleans for Rel)."""
    arr = np.asarray(arr)
    if dom.backend == FHILB:
        return Morphism(dom, cod, ComplexMatrix(arr))
    if arr.shape != (cod.size, dom.size):
        raise BoundaryError(f"array of shape {arr.shape} does not fit {dom!r} -> {cod!r}")
    pairs = [(a, b) for b, a in zip(*np.nonzero(arr))]
    return Morphism(dom, cod, Relation.from_pairs(dom.finite_set, cod.finite_set, pairs))


def _block_sizes(A: Obj) -> list[int]:
    return [len(a) if A.backend == REL else a for a in A.atoms]


def swap(A: Obj, B: Obj) -> Morphism:
    """σ: A⊗B -> B⊗A."""
    m, n = A.size, B.size
    fn = [b * m + a for a in range(m) for b in range(n)]
    return from_function(tensor_obj(A, B), tensor_obj(B, A), fn)


def associator(A: Obj, B: Obj, C: Obj) -> Morphism:
    """α: A⊗(B⊗C) -> (A⊗B)⊗C, identity-shaped under strictness."""
    return identity(tensor_obj(tensor_obj(A, B), C))


def left_unitor(A: Obj) -> Morphism:
    """λ: I⊗A -> A."""
    return identity(A)


def right_unitor(A: Obj) -> Morphism:
    """ρ: A⊗I -> A."""
    return identity(A)


def _atomic_cup(a: Atom, backend: str) -> Morphism:
    A = Obj(backend, (a,))
    I = unit(backend)
    if backend == REL:
        return Morphism(I, tensor_obj(A, A), rel_cup(a))
    return Morphism(I, tensor_obj(A, A), mat_cup(a))


def cup(A: Obj) -> Morphism:
    """u: I -> A*⊗A, nested for composite objects."""
    result = identity(unit(A.backend))
    for atom in A.atoms:
        # result: I -> P*⊗P for the prefix P seen so far; wrap the next atom X
        # around it to get I -> X*⊗P*⊗P⊗X = (P⊗X)*⊗(P⊗X).
        X = Obj(A.backend, (atom,))
        wrapped = tensor(identity(X), result, identity(X))
        result = compose(wrapped, _atomic_cup(atom, A.backend))
    return result


def cap(A: Obj) -> Morphism:
    """u†∘σ: A⊗A* -> I."""
    return compose(dagger(cup(A)), swap(A, dual(A)))


def snake_left(A: Obj) -> Morphism:
    """(cap⊗id)∘(id⊗cup): A -> A, the identity when the snake equation holds."""
    return compose(tensor(cap(A), identity(A)), tensor(identity(A), cup(A)))


def snake_right(A: Obj) -> Morphism:
    """(id⊗cap)∘(cup⊗id): A* -> A*."""
    Ad = dual(A)
    return compose(tensor(identity(Ad), cap(A)), tensor(cup(A), identity(Ad)))


def dualize(f: Morphism) -> Morphism:
    """f_*: A* -> B* for f: A -> B, obtained by bending f† with a cup and a cap."""
    A, B = f.dom, f.cod
    Ad, Bd = dual(A), dual(B)
    return then(
        tensor(cup(B), identity(Ad)),
        tensor(identity(Bd), dagger(f), identity(Ad)),
        tensor(identity(Bd), cap(A)),
    )


def residual(f: Morphism, g: Morphism) -> float:
    """Max entrywise distance (0 or 1 in Rel)."""
    _same_backend(f, g)
    if (f.dom.size, f.cod.size) != (g.dom.size, g.cod.size):
        raise BoundaryError(f"cannot compare {f.dom!r}->{f.cod!r} with {g.dom!r}->{g.cod!r}")
    if f.backend == REL:
        return 0.0 if f.data.rows == g.data.rows else 1.0
    return mat_residual(f.data, g.data)


def check_equal(f: Morphism, g: Morphism, tol: float = DEFAULT_TOL) -> bool:
    if f.backend == REL:
        return residual(f, g) == 0.0
    return residual(f, g) <= tol


def check_unitary(f: Morphism, tol: float = DEFAULT_TOL) -> bool:
    if f.dom.size != f.cod.size:
        return False
    fd = dagger(f)
    return check_equal(compose(fd, f), identity(f.dom), tol) and check_equal(
        compose(f, fd), identity(f.cod), tol
    )


def check_self_adjoint(f: Morphism, tol: float = DEFAULT_TOL) -> bool:
    if f.dom.size != f.cod.size:
        raise BoundaryError("self-adjointness needs an endomorphism")
    return check_equal(f, dagger(f), tol)
