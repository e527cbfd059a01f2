import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from dagcat import presets
from dagcat.category import Morphism, check_equal, compose, dagger, hilb, identity, rel_set, swap
from dagcat.errors import BoundaryError, LawError
from dagcat.frobenius import (
    MonoidData,
    basis_frobenius,
    canonical_involution,
    cayley_embed,
    cayley_left_inverse,
    check_cayley,
    check_involutive,
    check_monoid_laws,
    dual_numbers,
    inverse_from_bihomomorphism,
    is_frobenius,
    matrix_algebra,
    opposite_monoid,
    pair_of_pants,
    permutation_morphism,
    theorem_involutive_iff_frobenius,
    trivial_monoid,
)
from dagcat.groupoid import cyclic, groupoid_to_frobenius, symmetric

# law flags frozen from an evaluation over every bundled monoid:
# (associative, unital, commutative, frobenius, special)
FLAGS = {
    "trivial": (1, 1, 1, 1, 1),
    "trivial-rel": (1, 1, 1, 1, 1),
    "basis1": (1, 1, 1, 1, 1),
    "basis2": (1, 1, 1, 1, 1),
    "basis3": (1, 1, 1, 1, 1),
    "basis4": (1, 1, 1, 1, 1),
    "dualnumbers": (1, 1, 1, 0, 0),
    "m2": (1, 1, 0, 1, 0),
    "pants2": (1, 1, 0, 1, 0),
    "pants-rel2": (1, 1, 0, 1, 1),
    "z2": (1, 1, 1, 1, 1),
    "z3": (1, 1, 1, 1, 1),
    "s3": (1, 1, 0, 1, 1),
    "interval": (1, 1, 0, 1, 1),
}


@pytest.mark.parametrize("name", sorted(FLAGS))
def test_law_flags(name):
    r = check_monoid_laws(presets.monoid(name))
    got = tuple(int(r[k].ok) for k in ("associative", "unital", "commutative", "frobenius", "special"))
    assert got == FLAGS[name]
    assert r["frobenius"].ok == r["frobenius_sides"].ok


@pytest.mark.parametrize("n", range(1, 5))
def test_basis_multiplication_matches_oracle(n):
    M = basis_frobenius(n)
    nz = {(int(i), int(j)) for i, j in zip(*np.nonzero(M.mult.array))}
    assert nz == oracles.basis_mult_entries(n)
    assert np.allclose(M.unit.array.ravel(), np.ones(n))


def test_group_multiplication_matches_oracle():
    M = groupoid_to_frobenius(cyclic(3))
    els = [str(k) for k in range(3)]
    want = oracles.group_table_relation(els, lambda g, h: str((int(g) + int(h)) % 3))
    assert oracles.relation_pairs(M.mult.data) == want


def test_dual_numbers_frobenius_witness():
    r = check_monoid_laws(dual_numbers())
    v = r["frobenius"]
    assert not v.ok and v.witness is not None
    lhs, rhs = v.witness
    assert not check_equal(lhs, rhs)
    assert v.residual == pytest.approx(1.0)


def test_verdict_is_truthy():
    r = check_monoid_laws(basis_frobenius(2))
    assert all(r.values())
    assert r.passed() and r.max_residual == 0.0


@pytest.mark.parametrize("name", sorted(FLAGS))
def test_involution_theorem(name):
    t = theorem_involutive_iff_frobenius(presets.monoid(name))
    assert t.holds
    assert t.frobenius == bool(FLAGS[name][3])


def test_dual_numbers_fail_both_sides():
    t = theorem_involutive_iff_frobenius(dual_numbers())
    assert (t.frobenius, t.involutive, t.preserves) == (False, False, False)


@pytest.mark.parametrize("name", ["z2", "z3", "s3", "interval"])
def test_rel_involution_is_inverse(name):
    G = presets.groupoid(name)
    M = groupoid_to_frobenius(G)
    i = canonical_involution(M)
    want = {(G.morphisms.index(g), G.morphisms.index(G.inverses[g])) for g in G.morphisms}
    assert oracles.relation_pairs(i.data) == want


def test_identity_is_not_an_involution_on_s3():
    M = groupoid_to_frobenius(symmetric(3))
    assert not check_involutive(M, identity(M.carrier))


def test_identity_is_an_involution_on_z3():
    # the identity reverses products of a commutative group, so it passes too
    M = groupoid_to_frobenius(cyclic(3))
    assert check_involutive(M, identity(M.carrier))
    assert check_involutive(M, canonical_involution(M))
    assert not check_equal(identity(M.carrier), canonical_involution(M))


@pytest.mark.parametrize("name", sorted(FLAGS))
def test_cayley_embedding(name):
    M = presets.monoid(name)
    rep = check_cayley(M)
    assert rep.homomorphism.ok and rep.monic.ok
    assert check_equal(compose(cayley_left_inverse(M), cayley_embed(M)), identity(M.carrier))


def test_cayley_of_non_monoid_rejected():
    A = hilb(2)
    bad = MonoidData(A, Morphism(A @ A, A, np.ones((2, 4))), basis_frobenius(2).unit)
    with pytest.raises(LawError):
        cayley_embed(bad)


def test_opposite_of_matrix_algebra_is_transposed_product():
    M = matrix_algebra(2)
    op = opposite_monoid(M)
    assert check_monoid_laws(op).passed("associative", "unital", "frobenius")
    # conjugation by the entrywise conjugate is the identity on this real basis,
    # so the opposite is m precomposed with the swap
    assert check_equal(op.mult, compose(M.mult, swap(M.carrier, M.carrier)))


def test_pants_is_frobenius_on_composite_carrier():
    M = pair_of_pants(rel_set(2))
    assert is_frobenius(M)
    assert M.carrier.size == 4


def test_permutation_is_bihomomorphism_inverse():
    M = groupoid_to_frobenius(cyclic(3))
    # negation is an automorphism of Z3
    f = permutation_morphism(M.carrier, [0, 2, 1])
    g = inverse_from_bihomomorphism(f, M, M)
    assert check_equal(g, dagger(f))


def test_bihomomorphism_rejects_non_hom():
    M = groupoid_to_frobenius(cyclic(3))
    with pytest.raises(LawError):
        inverse_from_bihomomorphism(permutation_morphism(M.carrier, [1, 2, 0]), M, M)


@given(st.permutations(range(4)))
def test_basis_permutations_invert(perm):
    M = basis_frobenius(4)
    f = permutation_morphism(M.carrier, perm)
    assert check_equal(inverse_from_bihomomorphism(f, M, M), dagger(f))


def test_boundary_errors():
    A = hilb(2)
    with pytest.raises(BoundaryError):
        MonoidData(A, identity(A), basis_frobenius(2).unit)
    with pytest.raises(BoundaryError):
        MonoidData(rel_set(1), trivial_monoid("rel").mult, trivial_monoid("fhilb").unit)
