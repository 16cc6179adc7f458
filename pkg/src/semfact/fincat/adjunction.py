"""Adjunctions l ⊣ p, left-adjoint search and the mate bijection."""

from __future__ import annotations

from dataclasses import dataclass

from ..config import Budget
from ..errors import BoundaryMismatch, SemfactError
from .core import (
    FinFunctor,
    NatTrans2Cell,
    check_functor,
    check_naturality,
    compose_functors,
    identity_2cell,
    identity_functor,
)
from .search import iter_functors, iter_nat_trans


@dataclass(frozen=True)
class Adjunction:
    left: FinFunctor     # l: b → e
    right: FinFunctor    # p: e → b
    counit: NatTrans2Cell  # ε: lp ⇒ id_e
    unit: NatTrans2Cell    # η: id_b ⇒ pl


def check_adjunction(adj: Adjunction) -> bool:
    l, p, eps, eta = adj.left, adj.right, adj.counit, adj.unit
    b, e = l.source, l.target
    if p.source != e or p.target != b:
        return False
    if eps.domain != e or eta.domain != b:
        return False
    for x in e.objects:
        if eps.source_functor.ob(x) != l.ob(p.ob(x)) or eps.target_functor.ob(x) != x:
            return False
    for x in b.objects:
        if eta.source_functor.ob(x) != x or eta.target_functor.ob(x) != p.ob(l.ob(x)):
            return False
    try:
        check_naturality(eps)
        check_naturality(eta)
    except SemfactError:
        return False
    # (ε ∗ l)·(l ∗ η) = id_l
    for x in b.objects:
        if e.compose(eps[l.ob(x)], l.mor(eta[x])) != e.identity[l.ob(x)]:
            return False
    # (p ∗ ε)·(η ∗ p) = id_p
    for a in e.objects:
        if b.compose(p.mor(eps[a]), eta[p.ob(a)]) != b.identity[p.ob(a)]:
            return False
    return True


def identity_adjunction(C) -> Adjunction:
    i = identity_functor(C)
    return Adjunction(i, i, identity_2cell(i), identity_2cell(i))


def _universal_arrow(p: FinFunctor, x):
    """Least initial object (a, u: x → pa) of the comma x ↓ p, or None."""
    e, b = p.source, p.target
    for a in e.objects:
        for u in b.hom(x, p.ob(a)):
            ok = True
            for a2 in e.objects:
                for v in b.hom(x, p.ob(a2)):
                    fill = [w for w in e.hom(a, a2) if b.compose(p.mor(w), u) == v]
                    if len(fill) != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return a, u
    return None


def find_left_adjoint(p: FinFunctor, limit=None):
    """Left adjoint of p built from universal arrows, or None.

    Exhaustive: x ↓ p is scanned for an initial object at every x.
    """
    e, b = p.source, p.target
    budget = Budget("find_left_adjoint", limit)
    budget.check_raw(len(b.objects) * len(e.morphisms) ** 2)
    arrows = {}
    for x in b.objects:
        ua = _universal_arrow(p, x)
        if ua is None:
            return None
        arrows[x] = ua
    om = {x: arrows[x][0] for x in b.objects}
    mm = {}
    for f in b.morphisms:
        x, y = b.src[f], b.dst[f]
        target = b.compose(arrows[y][1], f)
        (w,) = [w for w in e.hom(om[x], om[y]) if b.compose(p.mor(w), arrows[x][1]) == target]
        mm[f] = w
    l = FinFunctor(b, e, om, mm)
    check_functor(l)
    eta = NatTrans2Cell(identity_functor(b), compose_functors(p, l), {x: arrows[x][1] for x in b.objects})
    eps = {}
    for a in e.objects:
        pa = p.ob(a)
        (w,) = [w for w in e.hom(om[pa], a) if b.compose(p.mor(w), arrows[pa][1]) == b.identity[pa]]
        eps[a] = w
    counit = NatTrans2Cell(compose_functors(l, p), identity_functor(e), eps)
    adj = Adjunction(l, p, counit, eta)
    assert check_adjunction(adj)
    return adj


def brute_force_left_adjoints(p: FinFunctor, limit=None):
    """Every (l, ε, η) passing check_adjunction; the independent oracle."""
    e, b = p.source, p.target
    budget = Budget("brute_force_left_adjoints", limit)
    out = []
    for l in iter_functors(b, e, budget=budget):
        lp, pl = compose_functors(l, p), compose_functors(p, l)
        units = list(iter_nat_trans(identity_functor(b), pl, budget))
        if not units:
            continue
        for eps in iter_nat_trans(lp, identity_functor(e), budget):
            for eta in units:
                adj = Adjunction(l, p, eps, eta)
                if check_adjunction(adj):
                    out.append(adj)
    return out


def _expect(cond, msg):
    if not cond:
        raise BoundaryMismatch(msg)


def _mate_boundaries(beta, adj0, adj1, hb, he):
    p0, p1 = adj0.right, adj1.right
    _expect(hb.source == p0.target and he.source == p0.source, "hb/he do not match adj0")
    _expect(hb.target == p1.target and he.target == p1.source, "hb/he do not match adj1")
    _expect(beta.domain == p0.source and beta.codomain == p1.target, "2-cell has the wrong categories")


def mate(beta: NatTrans2Cell, adj0: Adjunction, adj1: Adjunction, hb: FinFunctor, he: FinFunctor) -> NatTrans2Cell:
    """β: hb·p0 ⇒ p1·he  ↦  β′: l1·hb ⇒ he·l0."""
    _mate_boundaries(beta, adj0, adj1, hb, he)
    l0, p0, eta0 = adj0.left, adj0.right, adj0.unit
    l1, p1, eps1 = adj1.left, adj1.right, adj1.counit
    _expect(beta.source_functor == compose_functors(hb, p0), "β source is not hb·p0")
    _expect(beta.target_functor == compose_functors(p1, he), "β target is not p1·he")
    e1 = he.target
    comps = {}
    for x in l0.source.objects:
        y = l0.ob(x)
        comps[x] = e1.chain(eps1[he.ob(y)], l1.mor(beta[y]), l1.mor(hb.mor(eta0[x])))
    out = NatTrans2Cell(compose_functors(l1, hb), compose_functors(he, l0), comps)
    check_naturality(out)
    return out


def mate_inverse(beta2: NatTrans2Cell, adj0: Adjunction, adj1: Adjunction, hb: FinFunctor, he: FinFunctor) -> NatTrans2Cell:
    """β′: l1·hb ⇒ he·l0  ↦  β: hb·p0 ⇒ p1·he."""
    l0, p0, eps0 = adj0.left, adj0.right, adj0.counit
    l1, p1, eta1 = adj1.left, adj1.right, adj1.unit
    _expect(hb.source == p0.target and he.source == p0.source, "hb/he do not match adj0")
    _expect(hb.target == p1.target and he.target == p1.source, "hb/he do not match adj1")
    _expect(beta2.source_functor == compose_functors(l1, hb), "β′ source is not l1·hb")
    _expect(beta2.target_functor == compose_functors(he, l0), "β′ target is not he·l0")
    b1 = hb.target
    comps = {}
    for a in p0.source.objects:
        z = hb.ob(p0.ob(a))
        comps[a] = b1.chain(p1.mor(he.mor(eps0[a])), p1.mor(beta2[p0.ob(a)]), eta1[z])
    out = NatTrans2Cell(compose_functors(hb, p0), compose_functors(p1, he), comps)
    check_naturality(out)
    return out
