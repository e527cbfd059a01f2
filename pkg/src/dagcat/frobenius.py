"""Monoids in a monoidal dagger category and the laws they may satisfy.

The comonoid of a monoid is never stored: comultiplication and counit are
always the daggers of multiplication and unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from dagcat.category import (
    DEFAULT_TOL,
    Morphism,
    Obj,
    cap,
    check_equal,
    compose,
    cup,
    dagger,
    dual,
    dualize,
    from_function,
    hilb,
    identity,
    residual,
    swap,
    tensor,
    tensor_obj,
    then,
    unit,
)
from dagcat.errors import BoundaryError, LawError


@dataclass(frozen=True)
class MonoidData:
    carrier: Obj
    mult: Morphism
    unit: Morphism
    name: str = field(default="", compare=False)

    def __post_init__(self):
        A = self.carrier
        if self.mult.dom.size != A.size ** 2 or self.mult.cod.size != A.size:
            raise BoundaryError(f"multiplication must be A⊗A -> A for A = {A!r}")
        if self.unit.dom.size != 1 or self.unit.cod.size != A.size:
            raise BoundaryError(f"unit must be I -> A for A = {A!r}")
        if not (self.mult.backend == self.unit.backend == A.backend):
            raise BoundaryError("carrier, multiplication and unit live in different backends")

    @property
    def backend(self) -> str:
        return self.carrier.backend

    @property
    def comult(self) -> Morphism:
        return dagger(self.mult)

    @property
    def counit(self) -> Morphism:
        return dagger(self.unit)

    def __repr__(self):
        return f"MonoidData({self.name or '?'} on {self.carrier!r})"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    equation: str
    residual: float = 0.0
    witness: tuple[Morphism, Morphism] | None = None

    def __bool__(self):
        return self.ok


def equation(name: str, lhs: Morphism, rhs: Morphism, tol: float) -> Verdict:
    """Compare two sides; keep them as the witness when they differ."""
    res = residual(lhs, rhs)
    ok = check_equal(lhs, rhs, tol)
    return Verdict(ok, name, res, None if ok else (lhs, rhs))


def first_failure(verdicts: list[Verdict]) -> Verdict:
    worst = max(v.residual for v in verdicts)
    for v in verdicts:
        if not v.ok:
            return Verdict(False, v.equation, worst, v.witness)
    return Verdict(True, " and ".join(v.equation for v in verdicts), worst)


class LawReport(dict):
    """Mapping from law name to :class:`Verdict`."""

    def flags(self) -> dict[str, bool]:
        return {k: v.ok for k, v in self.items()}

    def passed(self, *names: str) -> bool:
        return all(self[n].ok for n in (names or self))

    @property
    def max_residual(self) -> float:
        return max((v.residual for v in self.values()), default=0.0)


LAWS = ("associative", "unital", "commutative", "frobenius", "frobenius_sides", "special")


def check_monoid_laws(M: MonoidData, tol: float = DEFAULT_TOL) -> LawReport:
    A = M.carrier
    m, u = M.mult, M.unit
    md = dagger(m)
    idA = identity(A)
    report = LawReport()
    report["associative"] = equation(
        "m∘(m⊗id) = m∘(id⊗m)", compose(m, tensor(m, idA)), compose(m, tensor(idA, m)), tol
    )
    report["unital"] = first_failure([
        equation("m∘(u⊗id) = id", compose(m, tensor(u, idA)), idA, tol),
        equation("m∘(id⊗u) = id", compose(m, tensor(idA, u)), idA, tol),
    ])
    report["commutative"] = equation("m∘σ = m", compose(m, swap(A, A)), m, tol)
    left = compose(tensor(m, idA), tensor(idA, md))
    right = compose(tensor(idA, m), tensor(md, idA))
    report["frobenius"] = equation("(m⊗id)∘(id⊗m†) = (id⊗m)∘(m†⊗id)", left, right, tol)
    mdm = compose(md, m)
    report["frobenius_sides"] = first_failure([
        equation("(m⊗id)∘(id⊗m†) = m†∘m", left, mdm, tol),
        equation("(id⊗m)∘(m†⊗id) = m†∘m", right, mdm, tol),
    ])
    report["special"] = equation("m∘m† = id", compose(m, md), idA, tol)
    return report


def is_monoid(M: MonoidData, tol: float = DEFAULT_TOL) -> bool:
    return check_monoid_laws(M, tol).passed("associative", "unital")


def is_frobenius(M: MonoidData, tol: float = DEFAULT_TOL) -> bool:
    return check_monoid_laws(M, tol).passed("associative", "unital", "frobenius")


def require_monoid(M: MonoidData, tol: float = DEFAULT_TOL) -> None:
    report = check_monoid_laws(M, tol)
    for law in ("associative", "unital"):
        if not report[law].ok:
            raise LawError(f"{M!r} is not a monoid: {report[law].equation} fails")


# -- homomorphisms -----------------------------------------------------------


def monoid_hom_verdict(f: Morphism, M: MonoidData, N: MonoidData, tol: float = DEFAULT_TOL) -> Verdict:
    return first_failure([
        equation("f∘u = u", compose(f, M.unit), N.unit, tol),
        equation("f∘m = m∘(f⊗f)", compose(f, M.mult), compose(N.mult, tensor(f, f)), tol),
    ])


def comonoid_hom_verdict(f: Morphism, M: MonoidData, N: MonoidData, tol: float = DEFAULT_TOL) -> Verdict:
    return first_failure([
        equation("u†∘f = u†", compose(N.counit, f), M.counit, tol),
        equation("m†∘f = (f⊗f)∘m†", compose(N.comult, f), compose(tensor(f, f), M.comult), tol),
    ])


def is_monoid_hom(f, M, N, tol: float = DEFAULT_TOL) -> bool:
    return monoid_hom_verdict(f, M, N, tol).ok


def is_comonoid_hom(f, M, N, tol: float = DEFAULT_TOL) -> bool:
    return comonoid_hom_verdict(f, M, N, tol).ok


# -- standard monoids ----------------------------------------------------------


def trivial_monoid(backend: str) -> MonoidData:
    I = unit(backend)
    return MonoidData(I, identity(I), identity(I), name="trivial")


def basis_frobenius(n: int) -> MonoidData:
    """The copying monoid of the standard basis of C^n: e_i·e_j = δ_ij e_i."""
    if n < 1:
        raise ValueError("basis_frobenius needs n >= 1")
    A = hilb(n)
    mult = np.zeros((n, n * n))
    for i in range(n):
        mult[i, i * n + i] = 1
    return MonoidData(A, Morphism(A @ A, A, mult), Morphism(hilb(), A, np.ones((n, 1))), name=f"basis{n}")


def dual_numbers() -> MonoidData:
    """C[x]/(x²) in the orthonormal basis {1, x}."""
    A = hilb(2)
    # columns (1,1), (1,x), (x,1), (x,x)
    mult = [[1, 0, 0, 0], [0, 1, 1, 0]]
    return MonoidData(A, Morphism(A @ A, A, mult), Morphism(hilb(), A, [[1], [0]]), name="dualnumbers")


def matrix_algebra(k: int) -> MonoidData:
    """M_k(C) on C^(k²) with basis E_ij at index i*k + j and E_ij E_kl = δ_jk E_il."""
    n = k * k
    A = hilb(n)
    mult = np.zeros((n, n * n))
    for i in range(k):
        for j in range(k):
            for l in range(k):
                mult[i * k + l, (i * k + j) * n + (j * k + l)] = 1
    u = np.zeros((n, 1))
    u[[i * k + i for i in range(k)], 0] = 1
    return MonoidData(A, Morphism(A @ A, A, mult), Morphism(hilb(), A, u), name=f"M{k}")


def pair_of_pants(A: Obj) -> MonoidData:
    """A*⊗A with unit the cup and multiplication id⊗cap⊗id."""
    Ad = dual(A)
    carrier = tensor_obj(Ad, A)
    mult = tensor(identity(Ad), cap(A), identity(A))
    return MonoidData(carrier, mult, cup(A), name=f"pants({A!r})")


# -- Cayley embedding, opposite monoid, involutions ----------------------------


def cayley_embed(M: MonoidData, tol: float = DEFAULT_TOL) -> Morphism:
    """R = (id⊗m)∘(cup⊗id): A -> A*⊗A."""
    require_monoid(M, tol)
    A = M.carrier
    return compose(tensor(identity(dual(A)), M.mult), tensor(cup(A), identity(A)))


def cayley_left_inverse(M: MonoidData) -> Morphism:
    """(u_*† ⊗ id): A*⊗A -> A, a left inverse of the Cayley embedding."""
    return tensor(dagger(dualize(M.unit)), identity(M.carrier))


@dataclass(frozen=True)
class CayleyReport:
    embedding: Morphism
    homomorphism: Verdict
    monic: Verdict

    @property
    def ok(self) -> bool:
        return self.homomorphism.ok and self.monic.ok


def check_cayley(M: MonoidData, tol: float = DEFAULT_TOL) -> CayleyReport:
    R = cayley_embed(M, tol)
    hom = monoid_hom_verdict(R, M, pair_of_pants(M.carrier), tol)
    monic = equation("L∘R = id", compose(cayley_left_inverse(M), R), identity(M.carrier), tol)
    return CayleyReport(R, hom, monic)


def opposite_monoid(M: MonoidData, tol: float = DEFAULT_TOL) -> MonoidData:
    require_monoid(M, tol)
    return MonoidData(dual(M.carrier), dualize(M.mult), dualize(M.unit), name=f"{M.name}^op")


def canonical_involution(M: MonoidData, tol: float = DEFAULT_TOL) -> Morphism:
    """i = (id⊗(u†∘m))∘(cup⊗id): A -> A*."""
    require_monoid(M, tol)
    A = M.carrier
    pairing = compose(M.counit, M.mult)
    return compose(tensor(identity(dual(A)), pairing), tensor(cup(A), identity(A)))


def involution_verdict(M: MonoidData, i: Morphism, tol: float = DEFAULT_TOL) -> Verdict:
    A = M.carrier
    if i.dom.size != A.size or i.cod.size != A.size:
        raise BoundaryError("an involution must be A -> A*")
    return first_failure([
        monoid_hom_verdict(i, M, opposite_monoid(M, tol), tol),
        equation("i_*∘i = id", compose(dualize(i), i), identity(A), tol),
    ])


def check_involutive(M: MonoidData, i: Morphism, tol: float = DEFAULT_TOL) -> bool:
    return involution_verdict(M, i, tol).ok


@dataclass(frozen=True)
class TheoremReport:
    frobenius: bool
    involutive: bool
    preserves: bool
    residuals: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.frobenius == (self.involutive and self.preserves)


def theorem_involutive_iff_frobenius(M: MonoidData, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Evaluate both sides of: Frobenius ⟺ (i is an involution ∧ R_*∘i = R)."""
    frob = check_monoid_laws(M, tol)["frobenius"]
    i = canonical_involution(M, tol)
    inv = involution_verdict(M, i, tol)
    R = cayley_embed(M, tol)
    pres = equation("R_*∘i = R", compose(dualize(R), i), R, tol)
    return TheoremReport(
        frob.ok,
        inv.ok,
        pres.ok,
        {"frobenius": frob.residual, "involutive": inv.residual, "preserves": pres.residual},
    )


def inverse_from_bihomomorphism(f: Morphism, M: MonoidData, N: MonoidData, tol: float = DEFAULT_TOL) -> Morphism:
    """Inverse of a map that is both a monoid and a comonoid homomorphism.

    g = (u_N†∘m_N ⊗ id)∘(id⊗f⊗id)∘(id⊗m_M†∘u_M): B -> A.
    """
    for X in (M, N):
        if not is_frobenius(X, tol):
            raise LawError(f"{X!r} is not a Frobenius monoid")
    hom = monoid_hom_verdict(f, M, N, tol)
    if not hom.ok:
        raise LawError(f"not a monoid homomorphism: {hom.equation} fails")
    cohom = comonoid_hom_verdict(f, M, N, tol)
    if not cohom.ok:
        raise LawError(f"not a comonoid homomorphism: {cohom.equation} fails")
    A, B = M.carrier, N.carrier
    g = then(
        tensor(identity(B), compose(M.comult, M.unit)),
        tensor(identity(B), f, identity(A)),
        tensor(compose(N.counit, N.mult), identity(A)),
    )
    if not (check_equal(compose(g, f), identity(A), tol) and check_equal(compose(f, g), identity(B), tol)):
        raise LawError("constructed candidate is not a two-sided inverse")
    return g


def permutation_morphism(A: Obj, perm) -> Morphism:
    return from_function(A, A, list(perm))

