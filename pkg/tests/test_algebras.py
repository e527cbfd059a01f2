import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dagcat import presets
from dagcat.algebras import (
    GRID,
    PROJECTOR_PRESETS,
    EMAlgebra,
    KleisliMorphism,
    check_algebra_hom,
    check_em,
    check_fem,
    check_kleisli,
    check_kleisli_tensor,
    check_mu_dag_self_adjoint,
    emnonfem_algebra,
    emnonfem_demo,
    fem_dagger_closure,
    forgetful_functor,
    free_algebra,
    free_functor,
    kleisli_compose,
    kleisli_dagger,
    kleisli_id,
    kleisli_tensor,
    measurement_algebra,
    measurement_demo,
    random_kleisli,
    rotated_basis_projectors,
    structure_dagger_witness,
)
from dagcat.category import check_equal, compose, dagger, hilb, identity, rel_set
from dagcat.errors import BoundaryError, LawError
from dagcat.sampling import random_morphism
from dagcat.writer import WriterMonad, sample_objects

FROBENIUS = ["trivial", "trivial-rel", "basis2", "basis3", "m2", "pants2", "pants-rel2", "z2", "z3", "s3", "interval"]
COMMUTATIVE = ["trivial", "trivial-rel", "basis2", "basis3", "z2", "z3"]


def monad(name):
    return WriterMonad(presets.monoid(name))


@pytest.mark.parametrize("name", FROBENIUS)
def test_kleisli_laws(name):
    rep = check_kleisli(monad(name), samples=20)
    assert rep.passed(), rep.failures()[:1]
    assert len(rep["involution"]) == 20


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_kleisli_tensor(name):
    rep = check_kleisli_tensor(monad(name), samples=20)
    assert rep.passed(), rep.failures()[:1]


def test_trivial_base_kleisli_is_plain_composition():
    W = monad("trivial")
    rng = np.random.default_rng(3)
    A = hilb(2)
    f, g = random_kleisli(W, A, A, rng), random_kleisli(W, A, A, rng)
    assert check_equal(kleisli_compose(g, f).underlying, compose(g.underlying, f.underlying))


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_z2_kleisli_associative_and_involutive(seed):
    W = monad("z2")
    rng = np.random.default_rng(seed)
    A = rel_set(2)
    f, g, h = (random_kleisli(W, A, A, rng) for _ in range(3))
    lhs = kleisli_compose(h, kleisli_compose(g, f))
    rhs = kleisli_compose(kleisli_compose(h, g), f)
    assert check_equal(lhs.underlying, rhs.underlying)
    assert check_equal(kleisli_dagger(kleisli_dagger(f)).underlying, f.underlying)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_kleisli_dagger_commutes_with_functors(seed):
    W = monad("basis2")
    rng = np.random.default_rng(seed)
    A = hilb(2)
    k = random_kleisli(W, A, A, rng)
    assert check_equal(forgetful_functor(kleisli_dagger(k)), dagger(forgetful_functor(k)))
    f = random_morphism(A, A, rng)
    assert check_equal(free_functor(W, dagger(f)).underlying, kleisli_dagger(free_functor(W, f)).underlying)


@pytest.mark.parametrize("name", ["basis2", "z2", "trivial"])
def test_mu_dagger_self_adjoint(name):
    assert check_mu_dag_self_adjoint(monad(name))


def test_identity_dagger():
    W = monad("basis2")
    k = kleisli_id(W, hilb(2))
    assert check_equal(kleisli_dagger(k).underlying, k.underlying)


def test_non_frobenius_base_rejected():
    W = monad("dualnumbers")
    k = kleisli_id(W, hilb(2))
    with pytest.raises(LawError):
        kleisli_dagger(k)
    with pytest.raises(LawError):
        check_kleisli(W)


def test_noncommutative_tensor_rejected():
    W = monad("s3")
    k = kleisli_id(W, rel_set(1))
    with pytest.raises(LawError):
        kleisli_tensor(k, k)


def test_kleisli_boundaries():
    W = monad("basis2")
    with pytest.raises(BoundaryError):
        KleisliMorphism(W, hilb(2), hilb(2), identity(hilb(2)))
    with pytest.raises(BoundaryError):
        kleisli_compose(kleisli_id(W, hilb(3)), kleisli_id(W, hilb(2)))
    with pytest.raises(BoundaryError):
        kleisli_compose(kleisli_id(monad("basis3"), hilb(2)), kleisli_id(W, hilb(2)))


@pytest.mark.parametrize("name", FROBENIUS)
def test_free_algebras_are_fem(name):
    W = monad(name)
    for A in sample_objects(W, budget=8):
        alg = free_algebra(W, A)
        assert check_em(alg) and check_fem(alg)


def test_free_algebra_over_dual_numbers_is_em_only():
    W = monad("dualnumbers")
    alg = free_algebra(W, hilb(1))
    assert check_em(alg) and not check_fem(alg)


@pytest.mark.parametrize("key", sorted(GRID))
def test_conjugation_example_verdicts(key):
    rep = emnonfem_demo(GRID[key])
    assert rep.base_frobenius and rep.em
    # FEM holds for every unitary; see the loop oracle below
    assert rep.fem and rep.fem_residual <= 1e-12
    assert rep.witness.structure_is_hom and rep.witness.dagger_is_hom


SELF_ADJOINT = {"identity": True, "pauli-x": True, "pauli-y": True, "pauli-z": True,
                "phase-0": True, "phase-pi/4": False, "phase-pi/2": False, "phase-pi": True}


@pytest.mark.parametrize("key", sorted(GRID))
def test_conjugation_self_adjoint_flags(key):
    rep = emnonfem_demo(GRID[key])
    assert rep.self_adjoint == SELF_ADJOINT[key]
    assert rep.agrees == SELF_ADJOINT[key]


@pytest.mark.parametrize("key", sorted(GRID))
def test_conjugation_structure_matches_oracle(key):
    u = GRID[key]
    alg = emnonfem_algebra(u)
    want = np.array(oracles.conjugation_structure(u.tolist()))
    assert np.allclose(alg.structure.array, want, atol=1e-12)
    assert oracles.fem_residual(want.tolist(), 4) <= 1e-12


@settings(max_examples=20)
@given(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_conjugation_fem_for_random_unitaries(a, b, c):
    u = np.diag([1, np.exp(1j * a)]) @ np.array([[np.cos(b), -np.sin(b)], [np.sin(b), np.cos(b)]]) \
        @ np.diag([1, np.exp(1j * c)])
    assert check_fem(emnonfem_algebra(u))


def test_conjugation_rejects_non_unitary():
    with pytest.raises(ValueError):
        emnonfem_algebra(np.array([[1, 1], [0, 1]]))
    with pytest.raises(BoundaryError):
        emnonfem_algebra(np.eye(3))


EXPECTED_MEASUREMENT = {
    "computational": (True, True, True),
    "rotated": (True, True, True),
    "nonselfadjoint": (True, False, False),
    "incomplete": (False, False, False),
}


@pytest.mark.parametrize("key", sorted(PROJECTOR_PRESETS))
def test_measurement_verdicts(key):
    rep = measurement_demo(PROJECTOR_PRESETS[key])
    assert (rep.em, rep.fem, rep.projective) == EXPECTED_MEASUREMENT[key]
    assert rep.agrees


@settings(max_examples=20)
@given(st.floats(0, np.pi))
def test_rotated_measurements_are_fem(theta):
    rep = measurement_demo(rotated_basis_projectors(theta))
    assert rep.em and rep.fem and rep.projective


def test_three_outcome_measurement():
    Ps = [np.diag(np.eye(3)[i]) for i in range(3)]
    rep = measurement_demo(Ps)
    assert rep.em and rep.fem and rep.outcomes == 3


def test_measurement_shape_errors():
    with pytest.raises(BoundaryError):
        measurement_algebra([np.eye(2), np.eye(3)])
    with pytest.raises(ValueError):
        measurement_algebra([])


def test_nonselfadjoint_witness():
    alg = measurement_algebra(PROJECTOR_PRESETS["nonselfadjoint"])
    w = structure_dagger_witness(alg)
    assert w.structure_is_hom and not w.dagger_is_hom
    assert w.residual > 0.5


@pytest.mark.parametrize("key", ["computational", "rotated"])
def test_dagger_closure_on_fem_algebras(key):
    alg = measurement_algebra(PROJECTOR_PRESETS[key])
    free = free_algebra(alg.monad, alg.carrier)
    a = alg.structure
    assert check_algebra_hom(a, free, alg)
    assert fem_dagger_closure(a, free, alg)
    assert fem_dagger_closure(identity(alg.carrier), alg, alg)
    assert check_algebra_hom(dagger(a), alg, free)


def test_algebra_hom_boundaries():
    alg = measurement_algebra(PROJECTOR_PRESETS["computational"])
    other = free_algebra(monad("basis3"), hilb(1))
    with pytest.raises(BoundaryError):
        check_algebra_hom(identity(hilb(2)), alg, other)
    with pytest.raises(BoundaryError):
        EMAlgebra(alg.monad, hilb(2), identity(hilb(2)))
