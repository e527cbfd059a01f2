"""Finite groupoids and their Frobenius monoids in Rel.

A groupoid G gives a monoid on its set of morphisms: g·h is g∘h when the two
compose (src(g) = dst(h)) and undefined otherwise; the unit picks out all
identities.  The decoder goes the other way and checks every groupoid axiom
on the way, so anything that is not a groupoid is rejected with a reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from dagcat.category import REL, Morphism, cup, from_function, rel_set, tensor_obj, unit
from dagcat.errors import ExtractionError, LawError
from dagcat.frobenius import MonoidData, canonical_involution, check_monoid_laws
from dagcat.rel import Relation, iter_bits


class InvalidGroupoid(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict
    dst: dict
    composition: dict  # (g, h) -> g∘h, defined iff src[g] == dst[h]
    identities: dict
    inverses: dict
    name: str = ""

    def __post_init__(self):
        self.validate()

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    def validate(self) -> None:
        objs, mors = self.objects, self.morphisms
        if len(set(objs)) != len(objs) or len(set(mors)) != len(mors):
            raise InvalidGroupoid("labels must be unique")
        for g in mors:
            if self.src.get(g) not in objs or self.dst.get(g) not in objs:
                raise InvalidGroupoid(f"morphism {g!r} has no valid source/target")
        for (g, h), gh in self.composition.items():
            if g not in mors or h not in mors or gh not in mors:
                raise InvalidGroupoid(f"composition entry {(g, h)} -> {gh!r} uses unknown morphisms")
        for g, h in product(mors, repeat=2):
            composable = self.src[g] == self.dst[h]
            if composable != ((g, h) in self.composition):
                state = "missing" if composable else "defined for a non-composable pair"
                raise InvalidGroupoid(f"composite of {(g, h)} is {state}")
            if composable:
                gh = self.composition[(g, h)]
                if self.src[gh] != self.src[h] or self.dst[gh] != self.dst[g]:
                    raise InvalidGroupoid(f"composite {g}∘{h} = {gh} has the wrong boundary")
        for g, h, k in product(mors, repeat=3):
            if (g, h) in self.composition and (h, k) in self.composition:
                if self.composition[(self.composition[(g, h)], k)] != self.composition[(g, self.composition[(h, k)])]:
                    raise InvalidGroupoid(f"composition of {g}, {h}, {k} is not associative")
        for X in objs:
            e = self.identities.get(X)
            if e not in mors or self.src[e] != X or self.dst[e] != X:
                raise InvalidGroupoid(f"object {X!r} has no valid identity")
        for g in mors:
            if self.composition[(g, self.identities[self.src[g]])] != g:
                raise InvalidGroupoid(f"identity on {self.src[g]!r} is not neutral for {g!r}")
            if self.composition[(self.identities[self.dst[g]], g)] != g:
                raise InvalidGroupoid(f"identity on {self.dst[g]!r} is not neutral for {g!r}")
            inv = self.inverses.get(g)
            if inv not in mors:
                raise InvalidGroupoid(f"{g!r} has no inverse")
            if self.composition.get((inv, g)) != self.identities[self.src[g]]:
                raise InvalidGroupoid(f"{inv}∘{g} is not an identity")
            if self.composition.get((g, inv)) != self.identities[self.dst[g]]:
                raise InvalidGroupoid(f"{g}∘{inv} is not an identity")

    def is_union_of_abelian_groups(self) -> bool:
        if any(self.src[g] != self.dst[g] for g in self.morphisms):
            return False
        return all(
            self.composition[(g, h)] == self.composition[(h, g)]
            for (g, h) in self.composition
        )


def from_table(objects, morphisms: dict[str, tuple[str, str]], composition, name="") -> FiniteGroupoid:
    """Build a groupoid from (src, dst) per morphism and its composition table;
    identities and inverses are read off the table."""
    src = {g: s for g, (s, _) in morphisms.items()}
    dst = {g: d for g, (_, d) in morphisms.items()}
    mors = tuple(morphisms)
    identities = {}
    for X in objects:
        loops = [e for e in mors if src[e] == dst[e] == X]
        for e in loops:
            if all(composition.get((g, e)) == g for g in mors if src[g] == X):
                identities[X] = e
                break
        else:
            raise InvalidGroupoid(f"object {X!r} has no identity")
    inverses = {}
    for g in mors:
        for h in mors:
            if composition.get((h, g)) == identities[src[g]]:
                inverses[g] = h
                break
        else:
            raise InvalidGroupoid(f"{g!r} has no inverse")
    return FiniteGroupoid(tuple(objects), mors, src, dst, dict(composition), identities, inverses, name)


def group(elements, op, name="") -> FiniteGroupoid:
    """One-object groupoid from a group operation on labelled elements."""
    elements = tuple(elements)
    table = {(g, h): op(g, h) for g in elements for h in elements}
    return from_table(("•",), {g: ("•", "•") for g in elements}, table, name or "group")


def cyclic(n: int) -> FiniteGroupoid:
    labels = [str(i) for i in range(n)]
    return group(labels, lambda a, b: str((int(a) + int(b)) % n), name=f"Z{n}")


def klein() -> FiniteGroupoid:
    labels = ["00", "01", "10", "11"]
    return group(labels, lambda a, b: f"{int(a[0]) ^ int(b[0])}{int(a[1]) ^ int(b[1])}", name="V4")


def symmetric(n: int) -> FiniteGroupoid:
    perms = ["".join(map(str, p)) for p in permutations(range(n))]

    def op(g, h):  # (g∘h)(i) = g(h(i))
        return "".join(g[int(h[i])] for i in range(n))

    return group(perms, op, name=f"S{n}")


def codiscrete(objects) -> FiniteGroupoid:
    """Exactly one morphism between any two objects."""
    objects = tuple(objects)
    mors = {f"{x}>{y}": (x, y) for x in objects for y in objects}
    table = {
        (f"{y}>{z}", f"{x}>{y}"): f"{x}>{z}" for x in objects for y in objects for z in objects
    }
    return from_table(objects, mors, table, name=f"codiscrete{len(objects)}")


def interval() -> FiniteGroupoid:
    """Two objects and an isomorphism between them: 4 morphisms."""
    mors = {"1x": ("x", "x"), "1y": ("y", "y"), "f": ("x", "y"), "f'": ("y", "x")}
    table = {
        ("1x", "1x"): "1x", ("1y", "1y"): "1y",
        ("f", "1x"): "f", ("1y", "f"): "f", ("f'", "1y"): "f'", ("1x", "f'"): "f'",
        ("f'", "f"): "1x", ("f", "f'"): "1y",
    }
    return from_table(("x", "y"), mors, table, name="interval")


def discrete(objects) -> FiniteGroupoid:
    objects = tuple(objects)
    return from_table(objects, {f"1{x}": (x, x) for x in objects},
                      {(f"1{x}", f"1{x}"): f"1{x}" for x in objects}, name=f"discrete{len(objects)}")


def disjoint_union(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    def tag(t, s):
        return f"{t}.{s}"

    objects = [tag("l", X) for X in G.objects] + [tag("r", X) for X in H.objects]
    mors, table = {}, {}
    for t, K in (("l", G), ("r", H)):
        for g in K.morphisms:
            mors[tag(t, g)] = (tag(t, K.src[g]), tag(t, K.dst[g]))
        for (g, h), gh in K.composition.items():
            table[(tag(t, g), tag(t, h))] = tag(t, gh)
    return from_table(objects, mors, table, name=f"{G.name}+{H.name}")


def groupoid_product(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    def pair(a, b):
        return f"{a}|{b}"

    objects = [pair(X, Y) for X in G.objects for Y in H.objects]
    mors = {
        pair(g, h): (pair(G.src[g], H.src[h]), pair(G.dst[g], H.dst[h]))
        for g in G.morphisms for h in H.morphisms
    }
    table = {
        (pair(g1, h1), pair(g2, h2)): pair(gg, hh)
        for (g1, g2), gg in G.composition.items()
        for (h1, h2), hh in H.composition.items()
    }
    return from_table(objects, mors, table, name=f"{G.name}x{H.name}")


def groupoid_to_frobenius(G: FiniteGroupoid) -> MonoidData:
    A = rel_set(G.morphisms)
    idx = {g: i for i, g in enumerate(G.morphisms)}
    n = len(G.morphisms)
    AA = tensor_obj(A, A)
    rows = [0] * (n * n)
    for (g, h), gh in G.composition.items():
        rows[idx[g] * n + idx[h]] = 1 << idx[gh]
    mult = Morphism(AA, A, Relation(AA.finite_set, A.finite_set, tuple(rows)))
    unit_row = 0
    for X in G.objects:
        unit_row |= 1 << idx[G.identities[X]]
    I = unit(REL)
    u = Morphism(I, A, Relation(I.finite_set, A.finite_set, (unit_row,)))
    return MonoidData(A, mult, u, name=G.name)


def inverse_relation(G: FiniteGroupoid) -> Morphism:
    """{(g, g⁻¹)} as a relation on the morphism set."""
    A = rel_set(G.morphisms)
    idx = {g: i for i, g in enumerate(G.morphisms)}
    return from_function(A, A, [idx[G.inverses[g]] for g in G.morphisms])


def frobenius_to_groupoid(M: MonoidData) -> FiniteGroupoid:
    if M.backend != REL:
        raise LawError("only Frobenius monoids in Rel decode to groupoids")
    report = check_monoid_laws(M)
    for law in ("associative", "unital", "frobenius"):
        if not report[law].ok:
            raise LawError(f"precondition violated: {report[law].equation} fails")
    labels = [str(x) if not isinstance(x, tuple) else ",".join(map(str, x)) for x in M.carrier.labels]
    n = len(labels)
    mult = M.mult.data
    if not mult.is_partial_function():
        bad = next(i for i, r in enumerate(mult.rows) if bin(r).count("1") > 1)
        raise ExtractionError(
            f"multiplication is not single-valued on ({labels[bad // n]}, {labels[bad % n]})"
        )
    table = {}
    for i, row in enumerate(mult.rows):
        if row:
            table[(labels[i // n], labels[i % n])] = labels[row.bit_length() - 1]
    units = [labels[k] for k in M.unit.data.image(0)]
    src, dst = {}, {}
    for g in labels:
        right = [e for e in units if table.get((g, e)) == g]
        left = [e for e in units if table.get((e, g)) == g]
        if len(right) != 1:
            raise ExtractionError(f"{g!r} has {len(right)} right identities, expected exactly one")
        if len(left) != 1:
            raise ExtractionError(f"{g!r} has {len(left)} left identities, expected exactly one")
        src[g], dst[g] = right[0], left[0]
    inv = canonical_involution(M).data
    if not inv.is_function():
        raise ExtractionError("canonical involution is not a function, so inverses are not unique")
    # i lands in A*; the cup pairs each element of A* with one element of A
    to_carrier = {}
    for pos in iter_bits(cup(M.carrier).data.rows[0]):
        to_carrier[pos // n] = pos % n
    inverses = {g: labels[to_carrier[inv.rows[k].bit_length() - 1]] for k, g in enumerate(labels)}
    try:
        return FiniteGroupoid(
            tuple(units), tuple(labels), src, dst, table, {e: e for e in units}, inverses, name=M.name
        )
    except InvalidGroupoid as exc:
        raise ExtractionError(f"decoded structure is not a groupoid: {exc}") from exc


def isomorphic_by_labels(G: FiniteGroupoid, H: FiniteGroupoid) -> bool:
    """Same morphisms and composition, objects matched through their identities."""
    if set(G.morphisms) != set(H.morphisms) or G.composition != H.composition:
        return False
    obj_map = {X: next(Y for Y in H.objects if H.identities[Y] == G.identities[X]) for X in G.objects
               if any(H.identities[Y] == G.identities[X] for Y in H.objects)}
    if len(obj_map) != len(G.objects) or len(set(obj_map.values())) != len(H.objects):
        return False
    return all(
        obj_map[G.src[g]] == H.src[g] and obj_map[G.dst[g]] == H.dst[g] and G.inverses[g] == H.inverses[g]
        for g in G.morphisms
    )


PRESETS = {
    "trivial": lambda: cyclic(1),
    "z2": lambda: cyclic(2),
    "z3": lambda: cyclic(3),
    "z4": lambda: cyclic(4),
    "v4": klein,
    "s3": lambda: symmetric(3),
    "interval": interval,
    "discrete3": lambda: discrete("abc"),
    "interval+point": lambda: disjoint_union(interval(), cyclic(1)),
    "z2+z3": lambda: disjoint_union(cyclic(2), cyclic(3)),
    "intervalxz2": lambda: groupoid_product(interval(), cyclic(2)),
}


def fixture_groupoids() -> dict[str, FiniteGroupoid]:
    """All bundled groupoids: at most 3 objects and 8 morphisms each."""
    return {name: make() for name, make in PRESETS.items()}
