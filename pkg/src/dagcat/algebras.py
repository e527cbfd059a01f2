"""Kleisli categories and (Frobenius–)Eilenberg–Moore algebras of writer monads."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from dagcat.category import (
    DEFAULT_TOL,
    Morphism,
    Obj,
    associator,
    check_equal,
    compose,
    dagger,
    from_matrix,
    hilb,
    identity,
    swap,
    tensor,
    tensor_obj,
    then,
)
from dagcat.errors import BoundaryError, LawError
from dagcat.frobenius import (
    MonoidData,
    Verdict,
    basis_frobenius,
    check_monoid_laws,
    equation,
    first_failure,
    matrix_algebra,
)
from dagcat.sampling import object_label, random_morphism
from dagcat.writer import (
    SampledReport,
    WriterMonad,
    sample_objects,
    wm_apply,
    wm_dst,
    wm_eta,
    wm_mu,
)


@lru_cache(maxsize=64)
def _base_flags(M: MonoidData, tol: float) -> tuple[bool, bool]:
    rep = check_monoid_laws(M, tol)
    return rep["frobenius"].ok, rep["commutative"].ok


def require_frobenius_base(W: WriterMonad, tol: float = DEFAULT_TOL) -> None:
    if not _base_flags(W.base, tol)[0]:
        raise LawError(f"{W!r}: base monoid is not Frobenius, so the Kleisli category has no dagger")


# -- Kleisli category ----------------------------------------------------------------


@dataclass(frozen=True)
class KleisliMorphism:
    monad: WriterMonad
    dom: Obj
    cod: Obj
    underlying: Morphism

    def __post_init__(self):
        f = self.underlying
        if f.dom.size != self.dom.size or f.cod.size != self.monad.obj(self.cod).size:
            raise BoundaryError(
                f"a Kleisli map {self.dom!r} -> {self.cod!r} needs an underlying map into T(cod)"
            )

    def __repr__(self):
        return f"KleisliMorphism({object_label(self.dom)} -> T({object_label(self.cod)}))"


def kleisli_id(W: WriterMonad, A: Obj) -> KleisliMorphism:
    return KleisliMorphism(W, A, A, wm_eta(W, A))


def kleisli_compose(g: KleisliMorphism, f: KleisliMorphism) -> KleisliMorphism:
    """μ∘T(g)∘f."""
    if g.monad != f.monad:
        raise BoundaryError("Kleisli morphisms of different monads")
    if f.cod.size != g.dom.size:
        raise BoundaryError(f"cannot compose Kleisli maps: {f.cod!r} vs {g.dom!r}")
    W = f.monad
    return KleisliMorphism(W, f.dom, g.cod, then(f.underlying, wm_apply(W, g.underlying), wm_mu(W, g.cod)))


def kleisli_dagger(f: KleisliMorphism, tol: float = DEFAULT_TOL) -> KleisliMorphism:
    """T(f†)∘μ†∘η: B -> T(A)."""
    W = f.monad
    require_frobenius_base(W, tol)
    B = f.cod
    under = then(wm_eta(W, B), dagger(wm_mu(W, B)), wm_apply(W, dagger(f.underlying)))
    return KleisliMorphism(W, B, f.dom, under)


def free_functor(W: WriterMonad, f: Morphism) -> KleisliMorphism:
    return KleisliMorphism(W, f.dom, f.cod, compose(wm_eta(W, f.cod), f))


def forgetful_functor(k: KleisliMorphism) -> Morphism:
    """μ∘T(f): T(A) -> T(B)."""
    W = k.monad
    return compose(wm_mu(W, k.cod), wm_apply(W, k.underlying))


def kleisli_equation(name: str, f: KleisliMorphism, g: KleisliMorphism, tol: float) -> Verdict:
    return equation(name, f.underlying, g.underlying, tol)


def random_kleisli(W: WriterMonad, A: Obj, B: Obj, rng: np.random.Generator) -> KleisliMorphism:
    return KleisliMorphism(W, A, B, random_morphism(A, W.obj(B), rng))


def check_mu_dag_self_adjoint(W: WriterMonad, objects=None, tol: float = DEFAULT_TOL) -> bool:
    return _mu_dag_report(W, objects, tol).passed()


def _mu_dag_report(W: WriterMonad, objects, tol: float) -> SampledReport:
    objects = objects if objects is not None else sample_objects(W)
    rep = SampledReport()
    for A in objects:
        TA = W.obj(A)
        k = KleisliMorphism(W, TA, TA, dagger(wm_mu(W, A)))
        rep.add("mu_dag_self_adjoint", object_label(A), kleisli_equation("(μ†)‡ = μ†", kleisli_dagger(k, tol), k, tol))
    return rep


def kleisli_tensor(f: KleisliMorphism, g: KleisliMorphism, tol: float = DEFAULT_TOL) -> KleisliMorphism:
    """dst∘(f⊗g)."""
    W = f.monad
    if g.monad != W:
        raise BoundaryError("Kleisli morphisms of different monads")
    frob, comm = _base_flags(W.base, tol)
    if not (frob and comm):
        raise LawError(f"{W!r}: the Kleisli tensor needs a commutative Frobenius base")
    under = compose(wm_dst(W, f.cod, g.cod), tensor(f.underlying, g.underlying))
    return KleisliMorphism(W, tensor_obj(f.dom, g.dom), tensor_obj(f.cod, g.cod), under)


def check_kleisli(W: WriterMonad, samples: int = 20, objects=None, tol: float = DEFAULT_TOL, seed: int = 0) -> SampledReport:
    """Category laws and dagger laws of the Kleisli category on random morphisms."""
    require_frobenius_base(W, tol)
    objects = objects if objects is not None else sample_objects(W)
    rng = np.random.default_rng(seed)
    rep = SampledReport()
    for k in range(samples):
        A, B, C = (objects[i] for i in rng.integers(len(objects), size=3))
        f = random_kleisli(W, A, B, rng)
        g = random_kleisli(W, B, C, rng)
        h = random_kleisli(W, C, A, rng)
        p = random_morphism(A, B, rng)
        where = f"#{k}:{object_label(A)},{object_label(B)},{object_label(C)}"
        fd = kleisli_dagger(f, tol)
        rep.add("identity", where, first_failure([
            kleisli_equation("id∘f = f", kleisli_compose(kleisli_id(W, B), f), f, tol),
            kleisli_equation("f∘id = f", kleisli_compose(f, kleisli_id(W, A)), f, tol),
        ]))
        rep.add("associative", where, kleisli_equation(
            "h∘(g∘f) = (h∘g)∘f",
            kleisli_compose(h, kleisli_compose(g, f)), kleisli_compose(kleisli_compose(h, g), f), tol))
        rep.add("involution", where, kleisli_equation("f‡‡ = f", kleisli_dagger(fd, tol), f, tol))
        rep.add("contravariant", where, kleisli_equation(
            "(g∘f)‡ = f‡∘g‡",
            kleisli_dagger(kleisli_compose(g, f), tol),
            kleisli_compose(fd, kleisli_dagger(g, tol)), tol))
        rep.add("free_functor", where, kleisli_equation(
            "F(p†) = F(p)‡", free_functor(W, dagger(p)), kleisli_dagger(free_functor(W, p), tol), tol))
        rep.add("forgetful_functor", where, equation(
            "G(f‡) = G(f)†", forgetful_functor(fd), dagger(forgetful_functor(f)), tol))
    rep.add("identity_dagger", "all", first_failure([
        kleisli_equation("id‡ = id", kleisli_dagger(kleisli_id(W, A), tol), kleisli_id(W, A), tol) for A in objects
    ]))
    return rep.merge(_mu_dag_report(W, objects, tol))


def check_kleisli_tensor(W: WriterMonad, samples: int = 20, objects=None, tol: float = DEFAULT_TOL, seed: int = 1) -> SampledReport:
    """(f⊗g)‡ = f‡⊗g‡ on random pairs, and unitarity of the free images of coherence maps."""
    objects = objects if objects is not None else sample_objects(W, budget=8)
    rng = np.random.default_rng(seed)
    rep = SampledReport()
    for k in range(samples):
        A, B, C, D = (objects[i] for i in rng.integers(len(objects), size=4))
        f, g = random_kleisli(W, A, B, rng), random_kleisli(W, C, D, rng)
        rep.add("tensor_dagger", f"#{k}", kleisli_equation(
            "(f⊗g)‡ = f‡⊗g‡",
            kleisli_dagger(kleisli_tensor(f, g, tol), tol),
            kleisli_tensor(kleisli_dagger(f, tol), kleisli_dagger(g, tol), tol), tol))
    rep.add("tensor_identity", "all", first_failure([
        kleisli_equation("id⊗id = id", kleisli_tensor(kleisli_id(W, A), kleisli_id(W, B), tol),
                         kleisli_id(W, tensor_obj(A, B)), tol)
        for A in objects for B in objects
    ]))
    for A in objects:
        for B in objects:
            for c, name in ((swap(A, B), "σ"), (associator(A, B, A), "α")):
                k = free_functor(W, c)
                ok = check_equal(kleisli_compose(kleisli_dagger(k, tol), k).underlying, kleisli_id(W, c.dom).underlying, tol) \
                    and check_equal(kleisli_compose(k, kleisli_dagger(k, tol)).underlying, kleisli_id(W, c.cod).underlying, tol)
                rep.add("coherence_unitary", f"{name}:{object_label(A)},{object_label(B)}",
                        Verdict(ok, f"F({name})‡∘F({name}) = id"))
    return rep


# -- Eilenberg–Moore algebras ----------------------------------------------------------


@dataclass(frozen=True)
class EMAlgebra:
    monad: WriterMonad
    carrier: Obj
    structure: Morphism
    name: str = ""

    def __post_init__(self):
        a = self.structure
        if a.dom.size != self.monad.obj(self.carrier).size or a.cod.size != self.carrier.size:
            raise BoundaryError("an algebra structure must be T(A) -> A")


def free_algebra(W: WriterMonad, A: Obj) -> EMAlgebra:
    return EMAlgebra(W, W.obj(A), wm_mu(W, A), name=f"free({object_label(A)})")


def em_verdict(alg: EMAlgebra, tol: float = DEFAULT_TOL) -> Verdict:
    W, A, a = alg.monad, alg.carrier, alg.structure
    return first_failure([
        equation("a∘T(a) = a∘μ", compose(a, wm_apply(W, a)), compose(a, wm_mu(W, A)), tol),
        equation("a∘η = id", compose(a, wm_eta(W, A)), identity(A), tol),
    ])


def fem_law_verdict(alg: EMAlgebra, tol: float = DEFAULT_TOL) -> Verdict:
    W, A, a = alg.monad, alg.carrier, alg.structure
    Ta = wm_apply(W, a)
    return equation("μ∘T(a)† = T(a)∘μ†", compose(wm_mu(W, A), dagger(Ta)), compose(Ta, dagger(wm_mu(W, A))), tol)


def check_em(alg: EMAlgebra, tol: float = DEFAULT_TOL) -> bool:
    return em_verdict(alg, tol).ok


def check_fem(alg: EMAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """EM algebra satisfying the Frobenius law for algebras."""
    return em_verdict(alg, tol).ok and fem_law_verdict(alg, tol).ok


def algebra_hom_verdict(f: Morphism, src: EMAlgebra, dst: EMAlgebra, tol: float = DEFAULT_TOL) -> Verdict:
    if src.monad != dst.monad:
        raise BoundaryError("algebras over different monads")
    if f.dom.size != src.carrier.size or f.cod.size != dst.carrier.size:
        raise BoundaryError("hom must go between the carriers")
    W = src.monad
    return equation("b∘T(f) = f∘a", compose(dst.structure, wm_apply(W, f)), compose(f, src.structure), tol)


def check_algebra_hom(f: Morphism, src: EMAlgebra, dst: EMAlgebra, tol: float = DEFAULT_TOL) -> bool:
    return algebra_hom_verdict(f, src, dst, tol).ok


def fem_dagger_closure(f: Morphism, src: EMAlgebra, dst: EMAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """The implication: src, dst FEM and f a hom  ⟹  f† a hom dst -> src."""
    premise = check_fem(src, tol) and check_fem(dst, tol) and check_algebra_hom(f, src, dst, tol)
    return (not premise) or check_algebra_hom(dagger(f), dst, src, tol)


@dataclass(frozen=True)
class ExclusionWitness:
    """For an EM algebra (A, a): a is a hom from the free algebra; is a† a hom back?"""

    structure_is_hom: bool
    dagger_is_hom: bool
    residual: float


def structure_dagger_witness(alg: EMAlgebra, tol: float = DEFAULT_TOL) -> ExclusionWitness:
    free = free_algebra(alg.monad, alg.carrier)
    a = alg.structure
    back = algebra_hom_verdict(dagger(a), alg, free, tol)
    return ExclusionWitness(check_algebra_hom(a, free, alg, tol), back.ok, back.residual)


# -- examples ------------------------------------------------------------------------


@dataclass(frozen=True)
class EmNonFemReport:
    base_frobenius: bool
    em: bool
    fem: bool
    fem_residual: float
    self_adjoint: bool
    involutory: bool
    witness: ExclusionWitness

    @property
    def predicted_fem(self) -> bool:
        return self.self_adjoint

    @property
    def agrees(self) -> bool:
        return self.fem == self.predicted_fem


def conjugation_map(u: np.ndarray) -> np.ndarray:
    """The 4×4 matrix of a ↦ u†au on row-major vec(a)."""
    u = np.asarray(u, dtype=complex)
    return np.kron(u.conj().T, u.T)


def emnonfem_algebra(u, tol: float = DEFAULT_TOL) -> EMAlgebra:
    """h = m∘(id⊗U) on M₂(ℂ), with U(a) = u†au and m matrix multiplication."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise BoundaryError(f"u must be 2×2, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > tol:
        raise ValueError("u is not unitary")
    M = matrix_algebra(2)
    A = M.carrier
    U = from_matrix(A, A, conjugation_map(u))
    h = compose(M.mult, tensor(identity(A), U))
    return EMAlgebra(WriterMonad(M), A, h, name="emnonfem")


def emnonfem_demo(u, tol: float = DEFAULT_TOL) -> EmNonFemReport:
    # the ½Tr inner product rescales every basis vector alike, and each law below
    # has as many daggered structure maps on one side as on the other
    alg = emnonfem_algebra(u, tol)
    u = np.asarray(u, dtype=complex)
    sq = u @ u
    fem_law = fem_law_verdict(alg, tol)
    return EmNonFemReport(
        base_frobenius=_base_flags(alg.monad.base, tol)[0],
        em=check_em(alg, tol),
        fem=check_fem(alg, tol),
        fem_residual=fem_law.residual,
        self_adjoint=bool(np.max(np.abs(u - u.conj().T)) <= tol),
        involutory=bool(np.max(np.abs(sq - sq[0, 0] * np.eye(2))) <= tol),
        witness=structure_dagger_witness(alg, tol),
    )


GRID = {
    "identity": np.eye(2),
    "pauli-x": np.array([[0, 1], [1, 0]]),
    "pauli-y": np.array([[0, -1j], [1j, 0]]),
    "pauli-z": np.array([[1, 0], [0, -1]]),
    "phase-0": np.diag([1, np.exp(0j)]),
    "phase-pi/4": np.diag([1, np.exp(1j * np.pi / 4)]),
    "phase-pi/2": np.diag([1, np.exp(1j * np.pi / 2)]),
    "phase-pi": np.diag([1, np.exp(1j * np.pi)]),
}


@dataclass(frozen=True)
class MeasurementReport:
    outcomes: int
    dim: int
    em: bool
    fem: bool
    idempotent: bool
    orthogonal: bool
    self_adjoint: bool
    complete: bool
    em_residual: float
    fem_residual: float

    @property
    def projective(self) -> bool:
        return self.idempotent and self.orthogonal and self.self_adjoint and self.complete

    @property
    def agrees(self) -> bool:
        return self.projective == (self.em and self.fem)


def measurement_algebra(projectors) -> EMAlgebra:
    """a = Σ P_i ⊗ ⟨e_i|: A⊗B -> A for the basis monoid B on len(projectors) outcomes."""
    Ps = [np.asarray(P, dtype=complex) for P in projectors]
    if not Ps:
        raise ValueError("need at least one projector")
    m = Ps[0].shape[0]
    if any(P.shape != (m, m) for P in Ps):
        raise BoundaryError("projectors must all be square of the same size")
    n = len(Ps)
    a = sum(np.kron(P, np.eye(n)[i : i + 1]) for i, P in enumerate(Ps))
    W = WriterMonad(basis_frobenius(n))
    A = hilb(m)
    return EMAlgebra(W, A, from_matrix(W.obj(A), A, a), name="measurement")


def measurement_demo(projectors, tol: float = DEFAULT_TOL) -> MeasurementReport:
    """Generic EM/FEM verdicts for a family of operators, next to whether it is a PVM.

    This checks the algebraic FEM condition only; it says nothing about
    completely positive maps or operational semantics.
    """
    alg = measurement_algebra(projectors)
    Ps = [np.asarray(P, dtype=complex) for P in projectors]
    m = Ps[0].shape[0]

    def close(x, y):
        return bool(np.max(np.abs(x - y)) <= tol)

    em = em_verdict(alg, tol)
    fem = fem_law_verdict(alg, tol)
    return MeasurementReport(
        outcomes=len(Ps),
        dim=m,
        em=em.ok,
        fem=em.ok and fem.ok,
        idempotent=all(close(P @ P, P) for P in Ps),
        orthogonal=all(close(P @ Q, np.zeros((m, m))) for i, P in enumerate(Ps) for j, Q in enumerate(Ps) if i != j),
        self_adjoint=all(close(P, P.conj().T) for P in Ps),
        complete=close(sum(Ps), np.eye(m)),
        em_residual=em.residual,
        fem_residual=fem.residual,
    )


def rotated_basis_projectors(theta: float) -> list[np.ndarray]:
    c, s = np.cos(theta), np.sin(theta)
    v0, v1 = np.array([c, s]), np.array([-s, c])
    return [np.outer(v0, v0), np.outer(v1, v1)]


PROJECTOR_PRESETS = {
    "computational": [np.diag([1, 0]), np.diag([0, 1])],
    "rotated": rotated_basis_projectors(np.pi / 8),
    "nonselfadjoint": [np.array([[1, 1], [0, 0]]), np.array([[0, -1], [0, 1]])],
    "incomplete": [np.diag([1, 0])],
}
