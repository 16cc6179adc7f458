import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semfact.config import candidate_limit
from semfact.errors import (
    BadEndpoints,
    BoundExceeded,
    InvalidInput,
    MissingComposite,
    NonAssociative,
    NotComposable,
    NotFunctorial,
    NotParallel,
)
from semfact.fincat import (
    Adjunction,
    NatTrans2Cell,
    brute_force_left_adjoints,
    category_to_spec,
    check_adjunction,
    compose_functors,
    d0_functor,
    d1_functor,
    discrete,
    empty_category,
    enumerate_functors,
    enumerate_nat_trans,
    find_isomorphism,
    find_left_adjoint,
    find_pseudo_inverse,
    horizontal_compose,
    identity_2cell,
    identity_adjunction,
    identity_functor,
    is_equivalence,
    mate,
    mate_inverse,
    op_dual,
    poset,
    s0_functor,
    terminal,
    terminal_functor,
    validate_category,
    validate_functor,
    vertical_compose,
)
from semfact.fincat.core import FinFunctor
from semfact.fincat import small

from conftest import POOL, functors_st, small_categories_st


def raw_functors(C, D):
    """Oracle: every raw pair of maps, filtered by the functor laws."""
    out = []
    nonid = C.non_identities()
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        choices = [D.hom(om[C.src[m]], om[C.dst[m]]) for m in nonid]
        for mors in itertools.product(*choices):
            mm = dict(zip(nonid, mors))
            for x in C.objects:
                mm[C.identity[x]] = D.identity[om[x]]
            if all(D.compose(mm[g], mm[f]) == mm[h] for (g, f), h in C.composition_items()):
                out.append(FinFunctor(C, D, om, mm))
    return out


def raw_nat_trans(F, G):
    C, D = F.source, F.target
    out = []
    for comps in itertools.product(*[D.hom(F.ob(x), G.ob(x)) for x in C.objects]):
        c = dict(zip(C.objects, comps))
        if all(D.compose(G.mor(f), c[C.src[f]]) == D.compose(c[C.dst[f]], F.mor(f)) for f in C.morphisms):
            out.append(NatTrans2Cell(F, G, c))
    return out


# -- validation ------------------------------------------------------------

def test_validate_terminal_and_arrow():
    one = validate_category({"objects": ["*"], "morphisms": [], "composition": []})
    assert one.size == (1, 1)
    two = validate_category({"objects": ["0", "1"], "morphisms": [{"id": "f", "src": "0", "dst": "1"}],
                             "composition": []})
    assert two.size == (2, 3)
    assert two.identity["0"] == "id:0"


def test_validate_bad_endpoints_names_pair():
    spec = {
        "objects": ["0", "1"],
        "morphisms": [{"id": "f", "src": "0", "dst": "1"}, {"id": "g", "src": "0", "dst": "1"}],
        "composition": [{"after": "g", "before": "f", "equals": "f"}],
    }
    with pytest.raises(BadEndpoints, match="'g' after 'f'"):
        validate_category(spec)


def test_validate_missing_composite():
    spec = {"objects": ["0", "1", "2"],
            "morphisms": [{"id": "f", "src": "0", "dst": "1"}, {"id": "g", "src": "1", "dst": "2"}],
            "composition": []}
    with pytest.raises(MissingComposite, match="'g' after 'f'"):
        validate_category(spec)


def test_validate_non_associative():
    # e∘e = f, f∘e = e, e∘f = f, f∘f = e on one object breaks (e∘e)∘e vs e∘(e∘e)
    table = {("e", "e"): "f", ("f", "e"): "e", ("e", "f"): "f", ("f", "f"): "e"}
    spec = {"objects": ["*"],
            "morphisms": [{"id": "e", "src": "*", "dst": "*"}, {"id": "f", "src": "*", "dst": "*"}],
            "composition": [{"after": g, "before": f, "equals": h} for (g, f), h in table.items()]}
    with pytest.raises(NonAssociative):
        validate_category(spec)


def test_validate_rejects_unknown_keys_and_listed_identities():
    with pytest.raises(InvalidInput):
        validate_category({"objects": [], "morphisms": [], "composition": [], "colour": 1})
    with pytest.raises(InvalidInput):
        validate_category({"objects": ["0"], "morphisms": [{"id": "id:0", "src": "0", "dst": "0"}],
                           "composition": []})
    validate_category({"objects": [], "morphisms": [], "composition": [], "provenance": "x"})


def test_validate_functor_examples():
    two, one = poset(2), terminal()
    assert validate_functor({"object_map": {"0": "0", "1": "1"}, "morphism_map": {"01": "01"}}, two, two)
    d1 = validate_functor({"object_map": {"*": "0"}, "morphism_map": {}}, one, two)
    assert d1.ob("*") == "0"
    with pytest.raises(NotFunctorial):
        validate_functor({"object_map": {"*": "0"}, "morphism_map": {"id:*": "01"}}, one, two)


@given(small_categories_st())
def test_spec_roundtrip_is_exact(C):
    again = validate_category(category_to_spec(C))
    assert again == C
    assert category_to_spec(again) == category_to_spec(C)


# -- 2-cells -----------------------------------------------------------------

def test_vertical_identity_and_mismatch():
    F = d1_functor()
    i = identity_2cell(F)
    assert vertical_compose(i, i) == i
    with pytest.raises(NotComposable):
        vertical_compose(identity_2cell(d0_functor()), i)


def test_horizontal_identities():
    F, G = d1_functor(), s0_functor()
    assert horizontal_compose(identity_2cell(G), identity_2cell(F)) == identity_2cell(compose_functors(G, F))


def _cells_between(C, D):
    fs = enumerate_functors(C, D)
    return [b for F in fs for G in fs for b in enumerate_nat_trans(F, G)]


@given(small_categories_st(), small_categories_st(), small_categories_st())
def test_interchange_law(C, D, E):
    cd = _cells_between(C, D)
    de = _cells_between(D, E)
    if len(cd) * len(de) > 4000:
        return
    for b1, b1p in itertools.product(cd, cd):
        if b1p.target_functor != b1.source_functor:
            continue
        for b2, b2p in itertools.product(de, de):
            if b2p.target_functor != b2.source_functor:
                continue
            lhs = horizontal_compose(vertical_compose(b2, b2p), vertical_compose(b1, b1p))
            rhs = vertical_compose(horizontal_compose(b2, b1), horizontal_compose(b2p, b1p))
            assert lhs == rhs


# -- enumeration ---------------------------------------------------------------

def test_functor_counts():
    one, two = terminal(), poset(2)
    assert len(enumerate_functors(one, two)) == 2
    assert len(enumerate_functors(discrete(2), one)) == 1
    assert len(enumerate_functors(two, two)) == 3


def test_empty_category_degenerate_cases():
    z = empty_category()
    assert len(enumerate_functors(z, poset(2))) == 1
    assert enumerate_functors(poset(2), z) == []
    assert len(enumerate_functors(z, z)) == 1


def test_enumeration_bound():
    with pytest.raises(BoundExceeded, match="candidate count"):
        enumerate_functors(poset(3), poset(3), limit=3)
    with candidate_limit(2):
        with pytest.raises(BoundExceeded):
            enumerate_functors(poset(3), poset(3))


@given(small_categories_st(), small_categories_st())
def test_enumerate_functors_is_complete(C, D):
    got = enumerate_functors(C, D)
    assert [F.key() for F in got] == sorted(F.key() for F in raw_functors(C, D)) or \
        {F.key() for F in got} == {F.key() for F in raw_functors(C, D)}
    assert len({F.key() for F in got}) == len(got)


def test_functor_order_is_canonical():
    fs = enumerate_functors(poset(2), poset(3))
    objs = [tuple(F.ob(x) for x in ("0", "1")) for F in fs]
    assert objs == sorted(objs)


def test_nat_trans_examples():
    i = identity_functor(terminal())
    assert len(enumerate_nat_trans(i, i)) == 1
    (b,) = enumerate_nat_trans(d1_functor(), d0_functor())
    assert b["*"] == "01"
    assert enumerate_nat_trans(d0_functor(), d1_functor()) == []
    with pytest.raises(NotParallel):
        enumerate_nat_trans(d0_functor(), s0_functor())


@given(functors_st())
def test_enumerate_nat_trans_is_complete(F):
    for G in enumerate_functors(F.source, F.target)[:6]:
        assert {b.key() for b in enumerate_nat_trans(F, G)} == {b.key() for b in raw_nat_trans(F, G)}


# -- isomorphism / equivalence ---------------------------------------------------

def test_find_isomorphism_examples():
    two = poset(2)
    phi = find_isomorphism(two, two)
    assert phi == identity_functor(two)
    assert find_isomorphism(discrete(2), terminal()) is None


def test_find_isomorphism_respects_constraints():
    two = poset(2)
    d1 = d1_functor()
    phi = find_isomorphism(two, two, [("after", d1, d1)])
    assert phi.ob("0") == "0"
    # Z/2 has a non-identity automorphism? no: one generator, so only the identity
    assert find_isomorphism(small.walking_iso(), small.walking_iso(),
                            [("after", d1_functor_into_iso(), d1_functor_into_iso(other=True))]) is not None


def d1_functor_into_iso(other=False):
    from semfact.fincat import make_functor
    return make_functor(terminal(), small.walking_iso(), {"*": "1" if other else "0"})


def test_is_equivalence_examples():
    assert is_equivalence(identity_functor(poset(3)))
    ok, witness = is_equivalence(s0_functor())
    assert not ok and witness["reason"] == "not full"


@given(functors_st())
def test_is_equivalence_matches_pseudo_inverse_search(F):
    assert bool(is_equivalence(F)) == (find_pseudo_inverse(F) is not None)


# -- duality -------------------------------------------------------------------

def test_op_examples():
    two = poset(2)
    assert find_isomorphism(op_dual(two), two) is not None
    d1op = op_dual(d1_functor())
    # in op(2) the arrow runs 1 → 0, so the object 0 is its codomain
    assert d1op.target.dst["01"] == d1op.ob("*") == "0"


@given(small_categories_st())
def test_op_is_involution(C):
    assert op_dual(op_dual(C)) == C
    assert op_dual(op_dual(C)).key() == C.key()


@given(functors_st())
def test_op_is_involution_on_functors_and_cells(F):
    assert op_dual(op_dual(F)) == F
    for b in enumerate_nat_trans(F, F)[:3]:
        assert op_dual(op_dual(b)) == b


# -- adjunctions -----------------------------------------------------------------

def test_check_adjunction_examples():
    adj = find_left_adjoint(s0_functor())
    assert adj.left == d1_functor()
    assert check_adjunction(adj)
    adj2 = find_left_adjoint(d0_functor())
    assert adj2.left == s0_functor() and check_adjunction(adj2)
    bad_counit = NatTrans2Cell(adj.counit.source_functor, adj.counit.target_functor, {"0": "id:0", "1": "id:1"})
    assert not check_adjunction(Adjunction(adj.left, adj.right, bad_counit, adj.unit))


def test_wrong_unit_on_group():
    z2 = small.cyclic_group(2)
    ident = identity_adjunction(z2)
    twisted = NatTrans2Cell(ident.unit.source_functor, ident.unit.target_functor, {"*": "g1"})
    assert not check_adjunction(Adjunction(ident.left, ident.right, ident.counit, twisted))


def test_left_adjoint_absent():
    assert find_left_adjoint(terminal_functor(discrete(2))) is None
    assert find_left_adjoint(d1_functor()) is None


@given(functors_st())
def test_left_adjoint_search_matches_brute_force(p):
    found = find_left_adjoint(p)
    oracle = brute_force_left_adjoints(p)
    assert (found is not None) == bool(oracle)
    if found is not None:
        assert check_adjunction(found)


def test_mate_examples():
    adj = find_left_adjoint(s0_functor())
    one, two = terminal(), poset(2)
    beta = identity_2cell(s0_functor())
    out = mate(beta, adj, adj, identity_functor(one), identity_functor(two))
    assert out == identity_2cell(d1_functor())
    ident = identity_adjunction(two)
    for b in enumerate_nat_trans(identity_functor(two), identity_functor(two)):
        assert mate(b, ident, ident, identity_functor(two), identity_functor(two)) == b


@pytest.mark.parametrize("p", [s0_functor(), d0_functor(), identity_functor(poset(2))])
def test_mate_round_trip(p):
    adj = find_left_adjoint(p)
    e, b = p.source, p.target
    for hb in enumerate_functors(b, b):
        for he in enumerate_functors(e, e):
            for beta in enumerate_nat_trans(compose_functors(hb, p), compose_functors(p, he)):
                m = mate(beta, adj, adj, hb, he)
                assert mate_inverse(m, adj, adj, hb, he) == beta
            for beta2 in enumerate_nat_trans(compose_functors(adj.left, hb), compose_functors(he, adj.left)):
                assert mate(mate_inverse(beta2, adj, adj, hb, he), adj, adj, hb, he) == beta2


def test_mate_boundary_mismatch():
    from semfact.errors import BoundaryMismatch
    adj = find_left_adjoint(s0_functor())
    with pytest.raises(BoundaryMismatch):
        mate(identity_2cell(s0_functor()), adj, adj, identity_functor(poset(2)), identity_functor(poset(2)))


def test_pool_is_within_size_limits():
    assert all(len(C.objects) <= 3 and len(C.morphisms) <= 8 for C in POOL)
