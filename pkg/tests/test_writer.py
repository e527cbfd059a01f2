import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dagcat import presets
from dagcat.category import check_equal, check_unitary, compose, hilb, identity, rel_set, tensor
from dagcat.frobenius import basis_frobenius, trivial_monoid
from dagcat.groupoid import cyclic, groupoid_to_frobenius
from dagcat.sampling import object_label, random_morphism
from dagcat.writer import (
    WriterMonad,
    adjunction_counit,
    check_commutative,
    check_equivalence,
    check_monad_laws,
    check_strength_laws,
    counterexample_rather_strong,
    extract_monoid,
    sample_objects,
    sample_pairs,
    wm_apply,
    wm_dst,
    wm_dst_prime,
    wm_eta,
    wm_mu,
    wm_strength,
)

FROBENIUS = ["trivial", "trivial-rel", "basis2", "basis3", "basis4", "m2", "pants2", "pants-rel2",
             "z2", "z3", "s3", "interval"]
SPECIAL = {"trivial", "trivial-rel", "basis2", "basis3", "basis4", "pants-rel2", "z2", "z3", "s3", "interval"}
COMMUTATIVE = {"trivial", "trivial-rel", "basis2", "basis3", "basis4", "z2", "z3"}


@pytest.fixture(scope="module", params=FROBENIUS)
def named_monad(request):
    return request.param, WriterMonad(presets.monoid(request.param))


def test_sample_objects_respect_budget():
    W = WriterMonad(basis_frobenius(4))
    assert [object_label(A) for A in sample_objects(W)] == ["I", "2", "3", "2⊗2"]
    W8 = WriterMonad(groupoid_to_frobenius(cyclic(8)))
    assert [object_label(A) for A in sample_objects(W8)] == ["I", "2"]
    assert all(A.size * A2.size * W.B.size <= 16 for A, A2 in sample_pairs(W, sample_objects(W)))


def test_monad_components_over_basis2():
    W = WriterMonad(basis_frobenius(2))
    A = hilb(2)
    assert wm_mu(W, A).dom == hilb(2, 2, 2) and wm_mu(W, A).cod == hilb(2, 2)
    assert np.allclose(wm_eta(W, A).array, np.kron(np.eye(2), np.ones((2, 1))))
    assert check_equal(wm_strength(W, A, A), identity(hilb(2, 2, 2)))


def test_monad_and_strength_laws(named_monad):
    name, W = named_monad
    rep = check_monad_laws(W).merge(check_strength_laws(W))
    flags = rep.flags()
    assert flags.pop("special") == (name in SPECIAL)
    assert all(flags.values()), rep.failures()


def test_equivalence(named_monad):
    name, W = named_monad
    rep = check_equivalence(W)
    assert rep.ok, [k for k, v in rep.sections().items() if not v]
    assert rep.transfer["special"].ok and rep.transfer["frobenius"].ok
    if name in SPECIAL:
        assert rep.max_residual <= 1e-9


def test_commutativity(named_monad):
    name, W = named_monad
    assert check_commutative(W).passed() == (name in COMMUTATIVE)


def test_extract_monoid_is_base():
    M = basis_frobenius(3)
    E = extract_monoid(WriterMonad(M))
    assert check_equal(E.mult, M.mult) and check_equal(E.unit, M.unit)


def test_counit_unitary_on_rel():
    W = WriterMonad(groupoid_to_frobenius(cyclic(3)))
    for A in sample_objects(W):
        assert check_unitary(adjunction_counit(W, A))


def test_dual_numbers_fail_frobenius_monad():
    W = WriterMonad(presets.monoid("dualnumbers"))
    rep = check_monad_laws(W)
    assert rep.passed("associative", "unital", "natural", "dagger_functor")
    assert not rep.passed("frobenius_monad")
    eq = check_equivalence(W)
    assert eq.transfer["frobenius"].ok and not eq.ok


def test_trivial_base_is_identity_monad():
    W = WriterMonad(trivial_monoid("fhilb"))
    A = hilb(3)
    assert W.obj(A).size == 3
    assert check_equal(wm_mu(W, A), identity(A)) and check_equal(wm_eta(W, A), identity(A))


def test_noncommutative_witness():
    W = WriterMonad(presets.monoid("s3"))
    A = rel_set(2)
    assert not check_equal(wm_dst(W, A, A), wm_dst_prime(W, A, A))


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_functor_laws_random(seed):
    rng = np.random.default_rng(seed)
    W = WriterMonad(basis_frobenius(2))
    f = random_morphism(hilb(2), hilb(3), rng)
    g = random_morphism(hilb(3), hilb(2), rng)
    assert check_equal(wm_apply(W, compose(g, f)), compose(wm_apply(W, g), wm_apply(W, f)))
    assert check_equal(wm_apply(W, tensor(f, g)), tensor(f, g, identity(W.B)))


Z2_UNIT_UNIT = (("∗", ("0", "0")),)
Z2_COMULT_UNIT = (("∗", ("0", "0")), ("∗", ("1", "1")))
Z3_COMULT_UNIT = (("∗", ("0", "0")), ("∗", ("1", "2")), ("∗", ("2", "1")))


def test_counterexample_z2():
    r = counterexample_rather_strong(groupoid_to_frobenius(cyclic(2)))
    assert r.unit_unit == Z2_UNIT_UNIT
    assert r.comult_unit == Z2_COMULT_UNIT
    assert r.unequal


def test_counterexample_z3():
    r = counterexample_rather_strong(groupoid_to_frobenius(cyclic(3)))
    assert r.unit_unit == (("∗", ("0", "0")),)
    assert r.comult_unit == Z3_COMULT_UNIT


@pytest.mark.parametrize("n", range(2, 7))
def test_counterexample_matches_inverse_pairs(n):
    # m†∘u is {(g, g⁻¹)}; u⊗u is the single pair (e, e)
    r = counterexample_rather_strong(groupoid_to_frobenius(cyclic(n)))
    want = tuple(sorted(("∗", (str(g), str((-g) % n))) for g in range(n)))
    assert r.comult_unit == want and len(r.unit_unit) == 1


def test_counterexample_rejects_degenerate():
    with pytest.raises(ValueError):
        counterexample_rather_strong(groupoid_to_frobenius(cyclic(1)))
    with pytest.raises(ValueError):
        counterexample_rather_strong(basis_frobenius(2))
