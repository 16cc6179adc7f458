"""Acceptance criteria; each prints one PASS/FAIL line in the terminal summary."""

import itertools
import time

import pytest

from semfact import corpus
from semfact.errors import BoundExceeded, NoKanExtension
from semfact.fincat import (
    compose_functors,
    discrete,
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    find_left_adjoint,
    identity_functor,
    inverse_functor,
    is_invertible_functor,
    mate,
    mate_inverse,
    poset,
    terminal,
)
from semfact.descent import StrictDescentDiagram, build_lax_descent_category
from semfact.monad import (
    build_em_category,
    check_preservation,
    codensity_monad,
    right_kan_extension,
    semantic_factorize,
)
from semfact.opcomma import build_cokernel_diagram, build_opcomma, composition_is_representative_independent
from semfact.randomized import random_functors
from semfact.theorems import (
    compare_factorizations,
    has_left_adjoint,
    is_comonadic,
    is_effective_faithful,
    is_monadic,
)

RESULTS = []


def criterion(number, title, limit_s):
    def wrap(fn):
        def test():
            start = time.perf_counter()
            ok, note = False, ""
            try:
                note = fn() or ""
                ok = True
            except AssertionError as exc:
                note = f"assertion failed: {exc}"
                raise
            finally:
                elapsed = time.perf_counter() - start
                in_time = elapsed < limit_s
                status = "PASS" if ok and in_time else "FAIL"
                if ok and not in_time:
                    note = f"over the {limit_s}s limit"
                RESULTS.append(f"{status} criterion {number}: {title} ({elapsed:.2f}s){' ' + note if note else ''}")
            assert elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"
        test.__name__ = fn.__name__
        return test
    return wrap


def load(name):
    return corpus.load(name)


def objects_under(F, src_iso, tgt_iso):
    G = compose_functors(tgt_iso, compose_functors(F, inverse_functor(src_iso)))
    return tuple(G.ob(x) for x in G.source.objects)


@criterion(1, "cokernel of id_1 reconstructs the truncated simplex category", 1.0)
def test_criterion_1_delta3():
    cok = build_cokernel_diagram(load("id1"))
    assert cok.bb.size == (2, 3) and cok.bbb.size == (3, 6)
    to2 = find_isomorphism(cok.bb, poset(2))
    to3 = find_isomorphism(cok.bbb, poset(3))
    one = identity_functor(cok.b)
    assert to2 is not None and to3 is not None
    assert objects_under(cok.d0, one, to2) == ("1",)
    assert objects_under(cok.d1, one, to2) == ("0",)
    assert objects_under(cok.D0, to2, to3) == ("1", "2")
    assert objects_under(cok.D1, to2, to3) == ("0", "2")
    assert objects_under(cok.D2, to2, to3) == ("0", "1")
    assert objects_under(cok.s0, to2, one) == ("*", "*")
    # posets: object maps determine the functors
    for F in (cok.D0, cok.D1, cok.D2):
        assert compose_functors(to3, compose_functors(F, inverse_functor(to2))) in enumerate_functors(poset(2), poset(3))


@criterion(2, "the counterexample 1+1 -> 1", 1.0)
def test_criterion_2_bang():
    p = load("bang_disc2")
    opc = build_opcomma(p, p)
    C = opc.category
    assert len(C.objects) == 2 and len(C.hom("1:*", "0:*")) == 2 and len(C.non_identities()) == 2
    T, gamma = codensity_monad(p)
    assert T.t == identity_functor(terminal())
    assert T.m["*"] == T.eta["*"] == "id:*"
    rep = compare_factorizations(p)
    pH, dp, _, dc = rep.descent_side
    assert find_isomorphism(dc.category, discrete(2)) is not None and is_invertible_functor(pH)
    pt, em = rep.em_side
    assert em.algebras.size == (1, 1) and len(pt.source.objects) == 2
    assert compose_functors(em.u, pt) == p
    assert rep.preservation.verdict is False
    assert rep.constrained_iso is None and not rep.isomorphic


@criterion(3, "the inclusion d1: 1 -> 2", 5.0)
def test_criterion_3_d1():
    p = load("d1")
    kan = right_kan_extension(p, p)
    assert kan.ran == identity_functor(poset(2))
    cok = build_cokernel_diagram(p)
    assert find_left_adjoint(cok.d0) is None
    with pytest.raises(NoKanExtension):
        codensity_monad(cok.d0)
    assert check_preservation(p).verdict is False
    assert is_effective_faithful(p)
    assert is_comonadic(p)


def main_theorem_instances():
    out = [load("s0"), load("d0"), load("id1")]
    for name in ("one", "two", "three", "disc2"):
        out.append(identity_functor(load(name)))
    out.append(build_em_category(load("ceiling_monad")).u)
    return out


@criterion(4, "main theorem on corpus functors with left adjoints", 30.0)
def test_criterion_4_main_theorem():
    n = 0
    for p in main_theorem_instances():
        assert has_left_adjoint(p)
        assert check_preservation(p, certify=True).verdict
        rep = compare_factorizations(p)
        assert rep.phi is not None and is_invertible_functor(rep.phi)
        pH, dp, _, _ = rep.descent_side
        pt, em = rep.em_side
        assert compose_functors(em.u, rep.phi) == dp
        assert compose_functors(rep.phi, pH) == pt
        n += 1
    return f"{n} functors"


@criterion(5, "randomized monadicity theorem cross-validation", 600.0)
def test_criterion_5_monadicity_theorem():
    checked = skipped = 0
    violations = []
    for i, p in enumerate(random_functors(2024, 130)):
        try:
            lhs = bool(is_monadic(p))
            rhs = has_left_adjoint(p) and bool(is_effective_faithful(p))
        except BoundExceeded:
            skipped += 1
            continue
        checked += 1
        if lhs != rhs:
            violations.append(i)
    assert checked >= 100, f"only {checked} instances checked"
    assert violations == []
    return f"{checked} checked, {skipped} skipped, 0 violations"


def corpus_functors():
    return [e.load() for e in corpus.corpus() if e.kind == "functor"]


@criterion(6, "oracle equivalence: preservation, mates, representative independence", 300.0)
def test_criterion_6_oracles():
    instances = corpus_functors() + random_functors(77, 50)
    for p in instances:
        rep = check_preservation(p)
        assert rep.agree
        if rep.ell is not None:
            assert (rep.via_adjunction is not None) == rep.via_terminality
    cells = 0
    adjoint_pairs = corpus_functors() + [build_em_category(load("ceiling_monad")).u]
    adjoint_pairs += [identity_functor(load(n)) for n in ("one", "two", "three", "disc2")]
    for p in adjoint_pairs:
        adj = find_left_adjoint(p)
        if adj is None:
            continue
        e, b = p.source, p.target
        for hb, he in itertools.product(enumerate_functors(b, b), enumerate_functors(e, e)):
            for beta in enumerate_nat_trans(compose_functors(hb, p), compose_functors(p, he)):
                assert mate_inverse(mate(beta, adj, adj, hb, he), adj, adj, hb, he) == beta
                cells += 1
            for beta2 in enumerate_nat_trans(compose_functors(adj.left, hb), compose_functors(he, adj.left)):
                assert mate(mate_inverse(beta2, adj, adj, hb, he), adj, adj, hb, he) == beta2
                cells += 1
    collages = 0
    for p in instances:
        cok = build_cokernel_diagram(p, certify=False)
        assert composition_is_representative_independent(cok)
        collages += 2
    return f"{len(instances)} preservation checks, {cells} mates, {collages} collages"


@criterion(7, "universal-property certification on every corpus construction", 600.0)
def test_criterion_7_certification():
    stats = {"opcomma": 0, "pushout": 0, "descent": 0, "em": 0}
    for p in corpus_functors():
        cok = build_cokernel_diagram(p, certify=True)
        assert cok.certified and cok.opcomma.certified
        stats["opcomma"] += cok.opcomma.certificate["one_cell_triples"]
        stats["pushout"] += cok.certificate["pushout"]["cocones"]
        dc = build_lax_descent_category(StrictDescentDiagram.from_cokernel(cok), certify=True)
        assert dc.certified
        stats["descent"] += dc.certificate["pairs"]
        try:
            pt, em = semantic_factorize(p, certify=True)
        except NoKanExtension:
            continue
        assert em.certified
        stats["em"] += em.certificate["pairs"]
    em = build_em_category(load("ceiling_monad"), certify=True)
    assert em.certified
    stats["em"] += em.certificate["pairs"]
    assert all(v > 0 for v in stats.values())
    return ", ".join(f"{k} {v}" for k, v in stats.items())
