"""Exact relations between finite sets.

A relation R: A -> B is stored as one bitset per element of A: bit ``b`` of
``rows[a]`` is set iff ``(a, b)`` is in R.  Elements are addressed by their
position in the (ordered) label list of the set, and products of sets are
ordered row-major, so the pair ``(a, b)`` of ``A x B`` sits at ``a*|B| + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable, Iterable, Iterator, Sequence

from dagcat.errors import BoundaryError

STAR = "∗"


def _flat(label) -> tuple:
    return label if isinstance(label, tuple) else (label,)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FiniteSet:
    """Ordered set of distinct labels; label order fixes the indexing."""

    labels: tuple[Hashable, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels!r}")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)

    @property
    def is_unit(self) -> bool:
        return self.labels == (STAR,)

    def tensor(self, other: FiniteSet) -> FiniteSet:
        # The unit is dropped and labels are flattened, so the product is
        # strictly associative and unital on the nose.
        if self.is_unit:
            return other
        if other.is_unit:
            return self
        return FiniteSet(tuple(_flat(a) + _flat(b) for a, b in product(self.labels, other.labels)))

    @classmethod
    def range(cls, n: int) -> FiniteSet:
        return cls(tuple(str(i) for i in range(n)))


UNIT_SET = FiniteSet((STAR,))


@dataclass(frozen=True)
class Relation:
    dom: FiniteSet
    cod: FiniteSet
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != len(self.dom):
            raise BoundaryError(f"relation has {len(rows)} rows for a domain of size {len(self.dom)}")
        limit = 1 << len(self.cod)
        if any(r < 0 or r >= limit for r in rows):
            raise BoundaryError(f"relation entry outside a codomain of size {len(self.cod)}")

    @classmethod
    def from_pairs(cls, dom: FiniteSet, cod: FiniteSet, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * len(dom)
        for a, b in pairs:
            if not (0 <= a < len(dom) and 0 <= b < len(cod)):
                raise BoundaryError(f"pair {(a, b)} out of range for {len(dom)}x{len(cod)}")
            rows[a] |= 1 << b
        return cls(dom, cod, tuple(rows))

    @classmethod
    def from_labels(cls, dom: FiniteSet, cod: FiniteSet, pairs: Iterable[tuple]) -> Relation:
        return cls.from_pairs(dom, cod, ((dom.index(a), cod.index(b)) for a, b in pairs))

    @classmethod
    def identity(cls, A: FiniteSet) -> Relation:
        return cls(A, A, tuple(1 << a for a in range(len(A))))

    @classmethod
    def empty(cls, dom: FiniteSet, cod: FiniteSet) -> Relation:
        return cls(dom, cod, (0,) * len(dom))

    @classmethod
    def full(cls, dom: FiniteSet, cod: FiniteSet) -> Relation:
        return cls(dom, cod, ((1 << len(cod)) - 1,) * len(dom))

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self.rows) for b in iter_bits(row)]

    def labelled_pairs(self) -> list[tuple]:
        return [(self.dom.labels[a], self.cod.labels[b]) for a, b in self.pairs()]

    def image(self, a: int) -> set[int]:
        return set(iter_bits(self.rows[a]))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.rows[a] >> b & 1)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def is_function(self) -> bool:
        return all(bin(r).count("1") == 1 for r in self.rows)

    def is_partial_function(self) -> bool:
        return all(bin(r).count("1") <= 1 for r in self.rows)

    def __repr__(self):
        return f"Relation({self.labelled_pairs()!r})"


def rel_compose(S: Relation, R: Relation) -> Relation:
    """S∘R: first R, then S."""
    if len(R.cod) != len(S.dom):
        raise BoundaryError(
            f"cannot compose: R ends in a set of size {len(R.cod)}, S starts in one of size {len(S.dom)}"
        )
    srows = S.rows
    out = []
    for row in R.rows:
        acc = 0
        for b in iter_bits(row):
            acc |= srows[b]
        out.append(acc)
    return Relation(R.dom, S.cod, tuple(out))


def rel_converse(R: Relation) -> Relation:
    rows = [0] * len(R.cod)
    for a, row in enumerate(R.rows):
        for b in iter_bits(row):
            rows[b] |= 1 << a
    return Relation(R.cod, R.dom, tuple(rows))


def rel_tensor(R: Relation, S: Relation) -> Relation:
    width = len(S.cod)
    out = []
    for ra in R.rows:
        for sc in S.rows:
            acc = 0
            for x in iter_bits(ra):
                acc |= sc << (x * width)
            out.append(acc)
    return Relation(R.dom.tensor(S.dom), R.cod.tensor(S.cod), tuple(out))


def rel_cup(A: FiniteSet) -> Relation:
    """{(∗, (a, a))} as a relation I -> A ⊗ A."""
    n = len(A)
    row = 0
    for a in range(n):
        row |= 1 << (a * n + a)
    return Relation(UNIT_SET, A.tensor(A), (row,))


def rel_from_function(dom: FiniteSet, cod: FiniteSet, fn: Sequence[int]) -> Relation:
    return Relation(dom, cod, tuple(1 << fn[a] for a in range(len(dom))))
