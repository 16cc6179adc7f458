"""Monads, Eilenberg–Moore categories, right Kan extensions, codensity monads
and the comparison 1-cell ℓ with its auxiliary cells."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import Budget
from .errors import (
    CertificationFailure,
    IllDefined,
    Incompatible,
    NoKanExtension,
    NotAnAlgebraPair,
    NotComposable,
    PreservationRequired,
    SemfactError,
)
from .fincat.adjunction import Adjunction, check_adjunction
from .fincat.core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    check_functor,
    check_naturality,
    compose_functors,
    identity_2cell,
    identity_functor,
    whisker_left,
)
from .fincat.search import iter_functors, iter_nat_trans
from .opcomma import CokernelDiagram, build_cokernel_diagram, default_family, factor_through_opcomma
from .structured import Structured


@dataclass(eq=False)
class Monad:
    base: FinCategory
    t: FinFunctor
    m: NatTrans2Cell    # t² ⇒ t
    eta: NatTrans2Cell  # id ⇒ t


def monad_law_failures(T: Monad) -> list:
    b, t, m, eta = T.base, T.t, T.m, T.eta
    out = []
    if t.source != b or t.target != b:
        return ["t is not an endofunctor of the base"]
    for x in b.objects:
        c = m.components.get(x)
        if c is None or b.src.get(c) != t.ob(t.ob(x)) or b.dst.get(c) != t.ob(x):
            out.append(f"m has an ill-typed component at {x!r}")
        c = eta.components.get(x)
        if c is None or b.src.get(c) != x or b.dst.get(c) != t.ob(x):
            out.append(f"eta has an ill-typed component at {x!r}")
    if out:
        return out
    for cell, name in ((m, "m"), (eta, "eta")):
        try:
            check_naturality(NatTrans2Cell(
                identity_functor(b) if name == "eta" else compose_functors(t, t), t, cell.components))
        except SemfactError:
            out.append(f"{name} is not natural")
    if out:
        return out
    for x in b.objects:
        if b.compose(m[x], m[t.ob(x)]) != b.compose(m[x], t.mor(m[x])):
            out.append(f"associativity fails at {x!r}")
        idt = b.identity[t.ob(x)]
        if b.compose(m[x], eta[t.ob(x)]) != idt or b.compose(m[x], t.mor(eta[x])) != idt:
            out.append(f"unit law fails at {x!r}")
    return out


def check_monad_laws(T: Monad) -> bool:
    return not monad_law_failures(T)


def identity_monad(C: FinCategory) -> Monad:
    i = identity_functor(C)
    return Monad(C, i, NatTrans2Cell(i, i, identity_2cell(i).components), identity_2cell(i))


def adjunction_monad(adj: Adjunction) -> Monad:
    """(pl, p ∗ ε ∗ l, η)."""
    l, p = adj.left, adj.right
    t = compose_functors(p, l)
    b = t.source
    m = NatTrans2Cell(compose_functors(t, t), t, {x: p.mor(adj.counit[l.ob(x)]) for x in b.objects})
    return Monad(b, t, m, adj.unit)


# -- Eilenberg–Moore ---------------------------------------------------------

@dataclass(eq=False)
class EMResult:
    algebras: FinCategory
    u: FinFunctor
    mu: NatTrans2Cell
    monad: Monad
    structured: Structured
    obj_of: dict
    certified: bool | None = None
    certificate: dict = field(default_factory=dict)


def algebra_name(w, h):
    return f"({w}|{h})"


def _is_algebra(T, w, h):
    b, t = T.base, T.t
    return (b.compose(h, T.m[w]) == b.compose(h, t.mor(h))
            and b.compose(h, T.eta[w]) == b.identity[w])


def build_em_category(T: Monad, certify=True, family=None) -> EMResult:
    b, t = T.base, T.t
    objects, h_of, obj_of = [], {}, {}
    for w in b.objects:
        for h in b.hom(t.ob(w), w):
            if _is_algebra(T, w, h):
                name = algebra_name(w, h)
                objects.append((name, w))
                h_of[name] = h
                obj_of[(w, h)] = name

    def admits(f, s, d):
        return b.compose(f, h_of[s]) == b.compose(h_of[d], t.mor(f))

    st = Structured(b, objects, admits, provenance="Eilenberg-Moore category")
    u = st.forgetful()
    mu = NatTrans2Cell(compose_functors(t, u), u, h_of)
    em = EMResult(st.category, u, mu, T, st, obj_of)
    if certify:
        em.certificate = certify_em(em, family)
        em.certified = True
    else:
        em.certified = False
    return em


def algebra_pair_failure(T: Monad, h: FinFunctor, beta: NatTrans2Cell):
    b, t = T.base, T.t
    for x in h.source.objects:
        w, c = h.ob(x), beta.components.get(x)
        if c is None or b.src.get(c) != t.ob(w) or b.dst.get(c) != w:
            return x, "boundary"
        if b.compose(c, T.m[w]) != b.compose(c, t.mor(c)):
            return x, "associativity"
        if b.compose(c, T.eta[w]) != b.identity[w]:
            return x, "unit"
    return None


def em_universal_factor(em: EMResult, h: FinFunctor, beta: NatTrans2Cell) -> FinFunctor:
    """x ↦ (h x, β_x): the unique k with u∘k = h and μ ∗ k = β."""
    T = em.monad
    if h.target != T.base:
        raise NotComposable("h does not land in the base of the monad")
    bad = algebra_pair_failure(T, h, beta)
    if bad:
        x, eq = bad
        raise NotAnAlgebraPair(f"algebra {eq} equation fails at object {x!r}")
    om = {x: em.obj_of[(h.ob(x), beta[x])] for x in h.source.objects}
    mm = {}
    for m in h.source.morphisms:
        key = (om[h.source.src[m]], om[h.source.dst[m]], h.mor(m))
        if key not in em.structured.lookup:
            raise NotAnAlgebraPair(f"beta is not natural at {m!r}")
        mm[m] = em.structured.lookup[key]
    k = FinFunctor(h.source, em.algebras, om, mm)
    check_functor(k)
    return k


def em_compatible(T, xi, beta1, beta0):
    b = T.base
    for x in xi.domain.objects:
        if b.compose(xi[x], beta1[x]) != b.compose(beta0[x], T.t.mor(xi[x])):
            return x
    return None


def em_2cell_induction(em: EMResult, xi: NatTrans2Cell, pair1, pair0) -> NatTrans2Cell:
    (h1, beta1), (h0, beta0) = pair1, pair0
    if xi.source_functor != h1 or xi.target_functor != h0:
        raise NotComposable("xi does not go from h1 to h0")
    bad = em_compatible(em.monad, xi, beta1, beta0)
    if bad is not None:
        raise Incompatible(f"not an algebra morphism at {bad!r}")
    k1 = em_universal_factor(em, h1, beta1)
    k0 = em_universal_factor(em, h0, beta0)
    comps = {x: em.structured.lookup[(k1.ob(x), k0.ob(x), xi[x])] for x in xi.domain.objects}
    return NatTrans2Cell(k1, k0, comps)


def _mu_along(em, k):
    T = em.monad
    h = compose_functors(em.u, k)
    return NatTrans2Cell(compose_functors(T.t, h), h, {x: em.mu[k.ob(x)] for x in k.source.objects})


def certify_em(em: EMResult, family=None) -> dict:
    T = em.monad
    family = default_family() if family is None else family
    stats = {"pairs": 0, "two_cells": 0}
    if em_universal_factor(em, em.u, em.mu) != identity_functor(em.algebras):
        raise CertificationFailure("(u, mu) does not factor as the identity")
    for y in family:
        ks = list(iter_functors(y, em.algebras))
        image = {}
        for k in ks:
            key = (compose_functors(em.u, k).key(), tuple(em.mu[k.ob(x)] for x in y.objects))
            if key in image:
                raise CertificationFailure("two functors into the algebras share (u k, mu k)")
            image[key] = k
        n = 0
        for h in iter_functors(y, T.base):
            for beta in iter_nat_trans(compose_functors(T.t, h), h):
                if algebra_pair_failure(T, h, beta):
                    continue
                if image.get((h.key(), beta.key())) != em_universal_factor(em, h, beta):
                    raise CertificationFailure("EM factorization disagrees with enumeration")
                n += 1
        if n != len(image):
            raise CertificationFailure("a functor into the algebras is not a factorization")
        stats["pairs"] += n
        for k1 in ks:
            h1, b1 = compose_functors(em.u, k1), _mu_along(em, k1)
            for k0 in ks:
                h0, b0 = compose_functors(em.u, k0), _mu_along(em, k0)
                lifts = {}
                for lam in iter_nat_trans(k1, k0):
                    key = tuple(em.structured.under[lam[x]] for x in y.objects)
                    if key in lifts:
                        raise CertificationFailure("two 2-cells into the algebras share their image")
                    lifts[key] = lam
                c = 0
                for xi in iter_nat_trans(h1, h0):
                    try:
                        lam = em_2cell_induction(em, xi, (h1, b1), (h0, b0))
                    except Incompatible:
                        if xi.key() in lifts:
                            raise CertificationFailure("liftable 2-cell reported incompatible")
                        continue
                    if lifts.get(xi.key()) != lam:
                        raise CertificationFailure("lifted 2-cell disagrees with enumeration")
                    c += 1
                if c != len(lifts):
                    raise CertificationFailure("some 2-cell into the algebras was not induced")
                stats["two_cells"] += c
    return stats


# -- right Kan extensions ----------------------------------------------------

@dataclass(eq=False)
class KanExtensionResult:
    ran: FinFunctor
    gamma: NatTrans2Cell
    f: FinFunctor
    g: FinFunctor
    certificate: dict  # (h.key(), β.key()) -> mediating β′
    competitors: int = 0

    def mediate(self, h: FinFunctor, beta: NatTrans2Cell) -> NatTrans2Cell:
        try:
            return self.certificate[(h.key(), beta.key())]
        except KeyError:
            raise CertificationFailure("pair missing from the terminality certificate") from None


def kan_certificate(f, g, R, gamma, functors=None, budget=None, nat_cache=None):
    """Terminality certificate for (R, γ) as ran_g f, or None if it fails.

    For each h: x → y, β′ ↦ γ·(β′ ∗ g) must biject Nat(h, R) onto Nat(hg, f).
    """
    x, y, z = g.target, f.target, f.source
    budget = budget or Budget("kan_certificate")
    if functors is None:
        functors = list(iter_functors(x, y, budget=budget))
    nat_cache = {} if nat_cache is None else nat_cache
    cert = {}
    ordered = [R] + [h for h in functors if h.key() != R.key()]
    for h in ordered:
        hg = compose_functors(h, g)
        targets = nat_cache.get(hg.key())
        if targets is None:
            targets = [b.key() for b in iter_nat_trans(hg, f, budget)]
            nat_cache[hg.key()] = targets
        hit = {}
        for bp in iter_nat_trans(h, R, budget):
            key = tuple(y.compose(gamma[a], bp[g.ob(a)]) for a in z.objects)
            if key in hit:
                return None
            hit[key] = bp
        if len(hit) != len(targets) or any(t not in hit for t in targets):
            return None
        for t, bp in hit.items():
            cert[(h.key(), t)] = bp
    return cert


def right_kan_extension(f: FinFunctor, g: FinFunctor, limit=None):
    """Least certified (ran, γ) with γ: ran∘g ⇒ f, or None."""
    if f.source != g.source:
        raise NotComposable("f and g must share their source")
    x, y = g.target, f.target
    budget = Budget(f"right_kan_extension {x.size} -> {y.size}", limit)
    functors = list(iter_functors(x, y, budget=budget))
    cache: dict = {}
    for R in functors:
        for gamma in iter_nat_trans(compose_functors(R, g), f, budget):
            cert = kan_certificate(f, g, R, gamma, functors, budget, cache)
            if cert is not None:
                return KanExtensionResult(R, gamma, f, g, cert, len(functors))
    return None


def is_right_kan(f, g, R, gamma, limit=None):
    budget = Budget("is_right_kan", limit)
    return kan_certificate(f, g, R, gamma, budget=budget)


class CodensityResult(tuple):
    """Unpacks as (monad, gamma); the Kan data sits on ``.kan``."""

    def __new__(cls, monad, gamma, kan):
        obj = super().__new__(cls, (monad, gamma))
        obj.kan = kan
        return obj

    @property
    def monad(self):
        return self[0]

    @property
    def gamma(self):
        return self[1]


def codensity_monad(p: FinFunctor, limit=None) -> CodensityResult:
    kan = right_kan_extension(p, p, limit)
    if kan is None:
        raise NoKanExtension("p has no codensity monad (no right Kan extension of p along itself)")
    b, t, gamma = p.target, kan.ran, kan.gamma
    tt = compose_functors(t, t)
    # γ·(m ∗ p) = γ·(t ∗ γ)
    rhs = NatTrans2Cell(compose_functors(tt, p), p,
                        {a: b.compose(gamma[a], t.mor(gamma[a])) for a in p.source.objects})
    m = kan.mediate(tt, rhs)
    # γ·(η ∗ p) = id_p
    eta = kan.mediate(identity_functor(b), identity_2cell(p))
    T = Monad(b, t, m, eta)
    bad = monad_law_failures(T)
    if bad:
        raise CertificationFailure("codensity monad fails its laws: " + "; ".join(bad))
    return CodensityResult(T, gamma, kan)


def semantic_factorize(p: FinFunctor, certify=True, family=None, limit=None):
    """p = u ∘ pt through the algebras of the codensity monad."""
    cod = codensity_monad(p, limit)
    T, gamma = cod
    em = build_em_category(T, certify=certify, family=family)
    em.codensity = cod
    pt = em_universal_factor(em, p, gamma)
    assert compose_functors(em.u, pt) == p
    return pt, em


# -- ℓ and the preservation condition ---------------------------------------

def build_ell(p: FinFunctor, cok: CokernelDiagram, kan: KanExtensionResult, certify=True) -> FinFunctor:
    """ℓ with ℓδ⁰ = id, ℓδ¹ = t and ℓ ∗ α = γ."""
    b = p.target
    ell = factor_through_opcomma(cok.opcomma, identity_functor(b), kan.ran, kan.gamma)
    if certify:
        d0 = cok.d0
        unit = NatTrans2Cell(compose_functors(ell, d0), identity_functor(b),
                             {x: b.identity[x] for x in b.objects})
        if kan_certificate(identity_functor(b), d0, ell, unit) is None:
            raise IllDefined("(ell, id) is not the right Kan extension of id_b along delta0")
    return ell


@dataclass(eq=False)
class PreservationReport:
    ell: FinFunctor | None
    via_adjunction: Adjunction | None
    via_terminality: bool
    verdict: bool
    reason: str | None = None
    agree: bool = True
    cok: CokernelDiagram | None = None
    codensity: CodensityResult | None = None


def check_preservation(p: FinFunctor, cok=None, certify=False, limit=None) -> PreservationReport:
    try:
        cod = codensity_monad(p, limit)
    except NoKanExtension as exc:
        return PreservationReport(None, None, False, False, reason=f"NoKanExtension: {exc}", cok=cok)
    T, gamma = cod
    if cok is None:
        cok = build_cokernel_diagram(p, certify=certify)
    ell = build_ell(p, cok, cod.kan, certify=certify)
    b, bb, d0 = p.target, cok.bb, cok.d0
    # (a) ℓ ⊣ δ⁰ with identity counit
    counit = NatTrans2Cell(compose_functors(ell, d0), identity_functor(b), {x: b.identity[x] for x in b.objects})
    adj = None
    for eta_bar in iter_nat_trans(identity_functor(bb), compose_functors(d0, ell), Budget("unit search", limit)):
        cand = Adjunction(ell, d0, counit, eta_bar)
        if check_adjunction(cand):
            adj = cand
            break
    # (b) (δ⁰t, δ⁰ ∗ γ) is ran_p(δ⁰p)
    cert = is_right_kan(compose_functors(d0, p), p, compose_functors(d0, T.t), whisker_left(d0, gamma), limit)
    term = cert is not None
    agree = (adj is not None) == term
    return PreservationReport(ell, adj, term, term and adj is not None,
                              reason=None if agree else "procedures disagree",
                              agree=agree, cok=cok, codensity=cod)


def build_auxiliary_cells(p: FinFunctor, rep: PreservationReport):
    """(ℓ̄, η̂, θ, λ) under the preservation condition."""
    if not rep.verdict:
        raise PreservationRequired("the preservation condition fails for p")
    cok, (T, gamma) = rep.cok, rep.codensity
    ell, eta_bar = rep.ell, rep.via_adjunction.unit
    b, t, opc, col3 = p.target, T.t, cok.opcomma, cok.collage3
    bbb, bb = cok.bbb, cok.bb
    tt = compose_functors(t, t)
    om, mm = {}, {}
    for tag, F in ((2, tt), (1, t), (0, identity_functor(b))):
        for x in b.objects:
            om[f"{tag}:{x}"] = F.ob(x)
        for m in b.morphisms:
            mm[col3.copy_mor[(tag, m)]] = F.mor(m)
    P = opc.coend
    for c in P.all_classes():
        lc = ell.mor(opc.cross_name(c))
        mm[col3.cross_name[(2, 1, c)]] = t.mor(lc)
        mm[col3.cross_name[(1, 0, c)]] = lc
    T3 = col3.cross[(2, 0)]
    for c in T3.all_classes():
        vals = {
            b.chain(g, gamma[cc], t.mor(m), t.mor(gamma[a]), tt.mor(f))
            for a, f, m, cc, g in T3.members[c]
        }
        if len(vals) != 1:
            raise IllDefined("ell-bar is not well defined on a triple class")
        mm[col3.cross_name[(2, 0, c)]] = vals.pop()
    ella = FinFunctor(bbb, b, om, mm)
    check_functor(ella)
    if compose_functors(ella, cok.D2) != compose_functors(t, ell):
        raise IllDefined("ell-bar D2 != t ell")
    if compose_functors(ella, cok.D0) != ell:
        raise IllDefined("ell-bar D0 != ell")
    e1 = compose_functors(ella, cok.D1)
    if compose_functors(e1, cok.d1) != tt or compose_functors(e1, cok.d0) != identity_functor(b):
        raise IllDefined("ell-bar D1 has the wrong restrictions")
    for a in p.source.objects:
        if e1.mor(cok.alpha[a]) != b.compose(gamma[a], t.mor(gamma[a])):
            raise IllDefined(f"ell-bar D1 * alpha != gamma (t * gamma) at {a!r}")

    D0d0 = compose_functors(cok.D0, cok.d0)
    comps = {}
    for z in bb.objects:
        comps[cok.D0.ob(z)] = cok.D0.mor(eta_bar[z])
    for x in b.objects:
        first = cok.D2.mor(eta_bar[f"1:{x}"])
        comps[f"2:{x}"] = bbb.compose(cok.D0.mor(eta_bar[f"1:{t.ob(x)}"]), first)
    etta = NatTrans2Cell(identity_functor(bbb), compose_functors(D0d0, ella), comps)
    check_naturality(etta)
    counit = NatTrans2Cell(compose_functors(ella, D0d0), identity_functor(b), {x: b.identity[x] for x in b.objects})
    if not check_adjunction(Adjunction(ella, D0d0, counit, etta)):
        raise IllDefined("ell-bar is not left adjoint to D0 d0 with unit eta-hat")
    for z in bb.objects:
        if etta[cok.D0.ob(z)] != cok.D0.mor(eta_bar[z]):
            raise IllDefined("eta-hat * D0 != D0 * eta-bar")

    theta = NatTrans2Cell(cok.s0, ell, {**{f"1:{x}": T.eta[x] for x in b.objects},
                                        **{f"0:{x}": b.identity[x] for x in b.objects}})
    check_naturality(theta)
    lam = NatTrans2Cell(e1, ell, {**{f"1:{x}": T.m[x] for x in b.objects},
                                  **{f"0:{x}": b.identity[x] for x in b.objects}})
    check_naturality(lam)
    return ella, etta, theta, lam
