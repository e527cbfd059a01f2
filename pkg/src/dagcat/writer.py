"""The writer monad −⊗B of a monoid B, its strengths, and law checks.

Equations that are stated for every object are evaluated at a finite family
of sample objects; for −⊗B every component is built by tensoring with the
base, so a small generating family catches the failures that matter.  The
sample family defaults to I, 2, 3 and 2⊗2, dropping objects whose image
under T would exceed ``budget`` (the unit is always kept).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from dagcat.category import (
    DEFAULT_TOL,
    REL,
    Morphism,
    Obj,
    associator,
    check_unitary,
    compose,
    dagger,
    identity,
    left_unitor,
    right_unitor,
    swap,
    tensor,
    tensor_obj,
    then,
    unit,
)
from dagcat.errors import LawError
from dagcat.frobenius import (
    MonoidData,
    Verdict,
    check_monoid_laws,
    equation,
    first_failure,
    inverse_from_bihomomorphism,
    require_monoid,
)
from dagcat.sampling import DEFAULT_SHAPES, object_label, object_of_shape, random_morphism

DEFAULT_BUDGET = 16


@dataclass(frozen=True)
class WriterMonad:
    base: MonoidData

    def __post_init__(self):
        require_monoid(self.base)

    @property
    def backend(self) -> str:
        return self.base.backend

    @property
    def B(self) -> Obj:
        return self.base.carrier

    def obj(self, A: Obj) -> Obj:
        return tensor_obj(A, self.B)

    def __repr__(self):
        return f"WriterMonad(−⊗{self.base.name or self.B!r})"


def wm_apply(W: WriterMonad, f: Morphism) -> Morphism:
    return tensor(f, identity(W.B))


def wm_mu(W: WriterMonad, A: Obj) -> Morphism:
    """μ_A = id_A⊗m: A⊗B⊗B -> A⊗B."""
    return tensor(identity(A), W.base.mult)


def wm_eta(W: WriterMonad, A: Obj) -> Morphism:
    """η_A = (id_A⊗u)∘ρ⁻¹: A -> A⊗B."""
    return compose(tensor(identity(A), W.base.unit), dagger(right_unitor(A)))


def wm_strength(W: WriterMonad, A: Obj, A2: Obj) -> Morphism:
    """st: A⊗T(A2) -> T(A⊗A2), the associator."""
    return associator(A, A2, W.B)


def wm_costrength(W: WriterMonad, A: Obj, A2: Obj) -> Morphism:
    """st′ = T(σ)∘st∘σ: T(A)⊗A2 -> T(A⊗A2)."""
    TA = W.obj(A)
    return then(swap(TA, A2), wm_strength(W, A2, A), wm_apply(W, swap(A2, A)))


def wm_dst(W: WriterMonad, A: Obj, A2: Obj) -> Morphism:
    """μ∘T(st′)∘st: T(A)⊗T(A2) -> T(A⊗A2)."""
    return then(
        wm_strength(W, W.obj(A), A2),
        wm_apply(W, wm_costrength(W, A, A2)),
        wm_mu(W, tensor_obj(A, A2)),
    )


def wm_dst_prime(W: WriterMonad, A: Obj, A2: Obj) -> Morphism:
    """μ∘T(st)∘st′: T(A)⊗T(A2) -> T(A⊗A2)."""
    return then(
        wm_costrength(W, A, W.obj(A2)),
        wm_apply(W, wm_strength(W, A, A2)),
        wm_mu(W, tensor_obj(A, A2)),
    )


# -- sampling ------------------------------------------------------------------


def sample_objects(W: WriterMonad, shapes=DEFAULT_SHAPES, budget: int = DEFAULT_BUDGET) -> list[Obj]:
    objs = [object_of_shape(W.backend, s) for s in shapes]
    kept = [A for A in objs if A.is_unit or A.size * W.B.size <= budget]
    if not any(A.is_unit for A in kept):
        kept.insert(0, unit(W.backend))
    return kept


def sample_pairs(W: WriterMonad, objects, budget: int = DEFAULT_BUDGET) -> list[tuple[Obj, Obj]]:
    return [
        (A, A2) for A, A2 in product(objects, repeat=2)
        if A.is_unit or A2.is_unit or A.size * A2.size * W.B.size <= budget
    ]


class SampledReport(dict):
    """law name -> list of (where, Verdict)."""

    def add(self, law: str, where: str, verdict: Verdict) -> None:
        self.setdefault(law, []).append((where, verdict))

    def flags(self) -> dict[str, bool]:
        return {law: all(v.ok for _, v in entries) for law, entries in self.items()}

    def passed(self, *laws: str) -> bool:
        flags = self.flags()
        return all(flags[law] for law in (laws or flags))

    @property
    def max_residual(self) -> float:
        return max((v.residual for entries in self.values() for _, v in entries), default=0.0)

    def failures(self) -> list[tuple[str, str, Verdict]]:
        return [(law, where, v) for law, entries in self.items() for where, v in entries if not v.ok]

    def merge(self, other: SampledReport) -> SampledReport:
        for law, entries in other.items():
            for where, v in entries:
                self.add(law, where, v)
        return self


def _where(*objs: Obj) -> str:
    return ",".join(object_label(A) for A in objs)


def check_monad_laws(W: WriterMonad, objects=None, tol: float = DEFAULT_TOL, seed: int = 0) -> SampledReport:
    """Monad laws, naturality, dagger-functoriality and the Frobenius-monad law."""
    objects = objects if objects is not None else sample_objects(W)
    rng = np.random.default_rng(seed)
    rep = SampledReport()
    for A in objects:
        TA = W.obj(A)
        mu, eta = wm_mu(W, A), wm_eta(W, A)
        mu_T = wm_mu(W, TA)
        rep.add("associative", _where(A), equation(
            "μ∘T(μ) = μ∘μ_T", compose(mu, wm_apply(W, mu)), compose(mu, mu_T), tol))
        rep.add("unital", _where(A), first_failure([
            equation("μ∘η_T = id", compose(mu, wm_eta(W, TA)), identity(TA), tol),
            equation("μ∘T(η) = id", compose(mu, wm_apply(W, eta)), identity(TA), tol),
        ]))
        rep.add("frobenius_monad", _where(A), equation(
            "T(μ)∘μ_T† = μ_T∘T(μ†)",
            compose(wm_apply(W, mu), dagger(mu_T)),
            compose(mu_T, wm_apply(W, dagger(mu))),
            tol,
        ))
        rep.add("special", _where(A), equation("μ∘μ† = id", compose(mu, dagger(mu)), identity(TA), tol))
    for A, A2 in product(objects, repeat=2):
        f = random_morphism(A, A2, rng)
        rep.add("natural", _where(A, A2), first_failure([
            equation("T(f)∘η = η∘f", compose(wm_apply(W, f), wm_eta(W, A)), compose(wm_eta(W, A2), f), tol),
            equation("T(f)∘μ = μ∘T²(f)", compose(wm_apply(W, f), wm_mu(W, A)),
                     compose(wm_mu(W, A2), wm_apply(W, wm_apply(W, f))), tol),
        ]))
        rep.add("dagger_functor", _where(A, A2), equation(
            "T(f†) = T(f)†", wm_apply(W, dagger(f)), dagger(wm_apply(W, f)), tol))
    return rep


def check_strength_laws(W: WriterMonad, objects=None, tol: float = DEFAULT_TOL, seed: int = 0) -> SampledReport:
    """Strong-monad and costrength laws, plus unitarity of st and st′."""
    objects = objects if objects is not None else sample_objects(W)
    rng = np.random.default_rng(seed)
    I = unit(W.backend)
    rep = SampledReport()
    for A in objects:
        rep.add("strength_unit", _where(A), equation(
            "T(λ)∘st_{I,A} = λ", compose(wm_apply(W, left_unitor(A)), wm_strength(W, I, A)),
            left_unitor(W.obj(A)), tol))
    pairs = sample_pairs(W, objects)
    for A, A2 in pairs:
        st, cst = wm_strength(W, A, A2), wm_costrength(W, A, A2)
        AA2 = tensor_obj(A, A2)
        where = _where(A, A2)
        rep.add("strength_eta", where, equation(
            "st∘(id⊗η) = η", compose(st, tensor(identity(A), wm_eta(W, A2))), wm_eta(W, AA2), tol))
        rep.add("strength_mu", where, equation(
            "st∘(id⊗μ) = μ∘T(st)∘st",
            compose(st, tensor(identity(A), wm_mu(W, A2))),
            then(wm_strength(W, A, W.obj(A2)), wm_apply(W, st), wm_mu(W, AA2)),
            tol,
        ))
        rep.add("costrength_eta", where, equation(
            "st′∘(η⊗id) = η", compose(cst, tensor(wm_eta(W, A), identity(A2))), wm_eta(W, AA2), tol))
        rep.add("costrength_mu", where, equation(
            "st′∘(μ⊗id) = μ∘T(st′)∘st′",
            compose(cst, tensor(wm_mu(W, A), identity(A2))),
            then(wm_costrength(W, W.obj(A), A2), wm_apply(W, cst), wm_mu(W, AA2)),
            tol,
        ))
        rep.add("st_unitary", where, Verdict(check_unitary(st, tol), "st†∘st = id = st∘st†"))
        rep.add("costrength_unitary", where, Verdict(check_unitary(cst, tol), "st′†∘st′ = id = st′∘st′†"))
        f, g = random_morphism(A, A, rng), random_morphism(A2, A2, rng)
        rep.add("strength_natural", where, equation(
            "st∘(f⊗T(g)) = T(f⊗g)∘st",
            compose(st, tensor(f, wm_apply(W, g))), compose(wm_apply(W, tensor(f, g)), st), tol))
    for A, A2 in pairs:
        for A3 in objects:
            if not (A.is_unit or A2.is_unit or A3.is_unit) and A.size * A2.size * A3.size * W.B.size > DEFAULT_BUDGET:
                continue
            lhs = compose(wm_strength(W, tensor_obj(A, A2), A3), associator(A, A2, W.obj(A3)))
            rhs = then(
                tensor(identity(A), wm_strength(W, A2, A3)),
                wm_strength(W, A, tensor_obj(A2, A3)),
                wm_apply(W, associator(A, A2, A3)),
            )
            rep.add("strength_assoc", _where(A, A2, A3), equation(
                "st∘α = T(α)∘st∘(id⊗st)", lhs, rhs, tol))
    return rep


def check_commutative(W: WriterMonad, pairs=None, tol: float = DEFAULT_TOL) -> SampledReport:
    pairs = pairs if pairs is not None else sample_pairs(W, sample_objects(W))
    rep = SampledReport()
    for A, A2 in pairs:
        rep.add("commutative", _where(A, A2), equation(
            "dst = dst′", wm_dst(W, A, A2), wm_dst_prime(W, A, A2), tol))
    return rep


# -- the adjunction B ↦ −⊗B, T ↦ T(I) --------------------------------------------


def extract_monoid(W: WriterMonad) -> MonoidData:
    """T(I) with multiplication μ_I∘T(ρ)∘st and unit η_I."""
    I = unit(W.backend)
    TI = W.obj(I)
    mult = then(wm_strength(W, TI, I), wm_apply(W, right_unitor(TI)), wm_mu(W, I))
    return MonoidData(TI, mult, wm_eta(W, I), name=f"T(I) of {W.base.name}")


def adjunction_counit(W: WriterMonad, A: Obj) -> Morphism:
    """T(ρ)∘st: A⊗T(I) -> T(A)."""
    I = unit(W.backend)
    return compose(wm_apply(W, right_unitor(A)), wm_strength(W, A, I))


@dataclass
class EquivalenceReport:
    monad: SampledReport
    strength: SampledReport
    counit: SampledReport
    transfer: dict[str, Verdict] = field(default_factory=dict)

    def sections(self) -> dict[str, bool]:
        out = {f"monad.{k}": v for k, v in self.monad.flags().items()}
        out.update({f"strength.{k}": v for k, v in self.strength.flags().items()})
        out.update({f"counit.{k}": v for k, v in self.counit.flags().items()})
        out.update({f"transfer.{k}": v.ok for k, v in self.transfer.items()})
        return out

    @property
    def ok(self) -> bool:
        """Everything expected of a Frobenius base holds (speciality may go either way)."""
        flags = self.sections()
        return all(v for k, v in flags.items() if k != "monad.special")

    @property
    def max_residual(self) -> float:
        return max(self.monad.max_residual, self.strength.max_residual, self.counit.max_residual,
                   max((v.residual for v in self.transfer.values()), default=0.0))


def check_equivalence(W: WriterMonad, objects=None, tol: float = DEFAULT_TOL) -> EquivalenceReport:
    """Instance-level check that W is a strong Frobenius monad equivalent to its base.

    Besides the monad and strength laws this covers: extract_monoid agrees with
    the base after the unitor; the counit is unitary and a morphism of monads
    and of comonads; Frobenius and speciality transfer between B and −⊗B.
    """
    objects = objects if objects is not None else sample_objects(W)
    monad = check_monad_laws(W, objects, tol)
    strength = check_strength_laws(W, objects, tol)
    E = extract_monoid(W)
    WE = WriterMonad(E)
    counit = SampledReport()
    for A in objects:
        eps = adjunction_counit(W, A)
        eps_T = adjunction_counit(W, WE.obj(A))
        where = _where(A)
        counit.add("unitary", where, Verdict(check_unitary(eps, tol), "ε unitary"))
        counit.add("monad_morphism", where, first_failure([
            equation("ε∘η′ = η", compose(eps, wm_eta(WE, A)), wm_eta(W, A), tol),
            equation("ε∘μ′ = μ∘T(ε)∘ε_T′", compose(eps, wm_mu(WE, A)),
                     then(eps_T, wm_apply(W, eps), wm_mu(W, A)), tol),
        ]))
        # the dagger comonads (μ†, η†) of both monads
        counit.add("comonad_morphism", where, first_failure([
            equation("η†∘ε = η′†", compose(dagger(wm_eta(W, A)), eps), dagger(wm_eta(WE, A)), tol),
            equation("μ†∘ε = T(ε)∘ε_T′∘μ′†", compose(dagger(wm_mu(W, A)), eps),
                     then(dagger(wm_mu(WE, A)), eps_T, wm_apply(W, eps)), tol),
        ]))
    base_report = check_monoid_laws(W.base, tol)
    ext_report = check_monoid_laws(E, tol)
    lam = left_unitor(W.B)
    transfer = {
        "extract_mult": equation("λ∘m_{T(I)} = m∘(λ⊗λ)", compose(lam, E.mult),
                                 compose(W.base.mult, tensor(lam, lam)), tol),
        "extract_unit": equation("λ∘u_{T(I)} = u", compose(lam, E.unit), W.base.unit, tol),
        "extract_flags": Verdict(base_report.flags() == ext_report.flags(), "LawReport(T(I)) = LawReport(B)"),
        "frobenius": Verdict(
            base_report["frobenius"].ok == monad.passed("frobenius_monad") == ext_report["frobenius"].ok,
            "B Frobenius ⟺ −⊗B Frobenius monad ⟺ T(I) Frobenius",
        ),
        "special": Verdict(
            base_report["special"].ok == monad.passed("special"),
            "B special ⟺ μ∘μ† = id at every sample",
        ),
    }
    if base_report["frobenius"].ok:
        try:
            inv = inverse_from_bihomomorphism(lam, W.base, E, tol)
            transfer["unit_iso"] = equation("λ⁻¹ = λ†", inv, dagger(lam), tol)
        except LawError as exc:
            transfer["unit_iso"] = Verdict(False, f"λ is not invertible as a bihomomorphism: {exc}")
    return EquivalenceReport(monad, strength, counit, transfer)


# -- counterexample without unitary strength -------------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    group: str
    unit_unit: tuple
    comult_unit: tuple

    @property
    def unequal(self) -> bool:
        return set(self.unit_unit) != set(self.comult_unit)


def counterexample_rather_strong(M: MonoidData) -> CounterexampleReport:
    """Compare T(η_I)∘η_I = u⊗u with μ_I†∘η_I = m†∘u for a group monoid in Rel."""
    if M.backend != REL:
        raise ValueError("the counterexample lives in Rel")
    if M.carrier.size < 2:
        raise ValueError("a trivial group gives equal relations; need at least 2 elements")
    W = WriterMonad(M)
    I = unit(REL)
    lhs = compose(wm_apply(W, wm_eta(W, I)), wm_eta(W, I))
    rhs = compose(dagger(wm_mu(W, I)), wm_eta(W, I))
    return CounterexampleReport(
        M.name, tuple(sorted(lhs.data.labelled_pairs())), tuple(sorted(rhs.data.labelled_pairs()))
    )
