import pytest
from hypothesis import given

from semfact import corpus
from semfact.errors import BoundExceeded
from semfact.fincat import discrete, find_isomorphism, identity_functor, op_dual, poset, small
from semfact.monad import build_em_category
from semfact.theorems import (
    compare_factorizations,
    has_left_adjoint,
    is_comonadic,
    is_effective_faithful,
    is_monadic,
    monadicity_crosscheck,
)

from conftest import functors_st, z2_point


def test_compare_s0(fun):
    rep = compare_factorizations(fun["s0"])
    assert rep.preservation.verdict
    assert rep.iso_verified and rep.commutation_verified and rep.soundness


def test_compare_d0(fun):
    rep = compare_factorizations(fun["d0"])
    assert rep.preservation.verdict and rep.iso_verified and rep.commutation_verified
    pH, dp, _, dc = rep.descent_side
    pt, em = rep.em_side
    assert dc.category.size == em.algebras.size == (1, 1)


def test_compare_bang(fun):
    rep = compare_factorizations(fun["bang_disc2"])
    assert not rep.preservation.verdict
    assert rep.phi is None and rep.constrained_iso is None and not rep.isomorphic
    assert find_isomorphism(rep.descent_side[3].category, discrete(2)) is not None
    assert rep.em_side[1].algebras.size == (1, 1)


def test_compare_d1_builds_both_sides(fun):
    rep = compare_factorizations(fun["d1"])
    assert not rep.preservation.verdict
    assert rep.em_side is not None and rep.descent_side is not None


@pytest.mark.parametrize("C", [poset(2), poset(3), small.cyclic_group(2), small.walking_iso()],
                         ids=lambda C: C.provenance)
def test_compare_identities(C):
    rep = compare_factorizations(identity_functor(C))
    assert rep.iso_verified and rep.commutation_verified


def test_compare_ceiling_forgetful():
    em = build_em_category(corpus.load("ceiling_monad"))
    rep = compare_factorizations(em.u)
    assert rep.preservation.verdict and rep.iso_verified and rep.commutation_verified


@given(functors_st())
def test_comparison_sound_when_preserved(p):
    rep = compare_factorizations(p, certify=False)
    if rep.preservation.verdict:
        assert rep.soundness and rep.iso_verified and rep.commutation_verified


def test_effective_faithful_examples(fun):
    assert is_effective_faithful(fun["d1"])
    assert is_effective_faithful(fun["bang_disc2"])
    ok, witness = is_effective_faithful(fun["s0"])
    assert not ok and witness["equivalence"]["reason"] == "not full"
    assert is_effective_faithful(z2_point())


def test_monadic_examples(fun):
    assert is_monadic(fun["d0"])
    assert not is_monadic(fun["s0"])
    assert not is_monadic(fun["bang_disc2"])
    ok, witness = is_monadic(corpus.load("d1"))
    assert not ok


def test_comonadic_examples(fun):
    assert is_comonadic(fun["d1"])
    assert not is_comonadic(fun["d0"])
    for C in (poset(2), small.cyclic_group(2)):
        assert is_comonadic(identity_functor(C))


def test_has_left_adjoint(fun):
    assert [has_left_adjoint(fun[n]) for n in ("d0", "d1", "s0", "bang_disc2")] == [True, False, True, False]


@pytest.mark.parametrize("name,bits", [("d0", (True, True, True)), ("s0", (True, False, False)),
                                       ("bang_disc2", (False, True, False)), ("d1", (False, True, False))])
def test_crosscheck_examples(fun, name, bits):
    rep = monadicity_crosscheck(fun[name])
    assert rep.bits() == bits and rep.consistent


@given(functors_st())
def test_crosscheck_random(p):
    try:
        rep = monadicity_crosscheck(p, certify=False, limit=10**5)
    except BoundExceeded:
        return
    assert rep.consistent


@given(functors_st())
def test_effective_faithful_is_self_codual(p):
    assert bool(is_effective_faithful(p, certify=False)) == bool(is_effective_faithful(op_dual(p), certify=False))
