"""Lax descent categories of strict Δ_Str-shaped diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BadBoundary,
    CertificationFailure,
    Incompatible,
    NotADescentPair,
    NotComposable,
)
from .fincat.core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    check_functor,
    compose_functors,
    identity_2cell,
    identity_functor,
    is_identity_2cell,
    is_invertible_2cell,
)
from .fincat.search import iter_functors, iter_nat_trans
from .opcomma import CokernelDiagram, build_cokernel_diagram, default_family
from .structured import Structured


@dataclass(eq=False)
class StrictDescentDiagram:
    B1: FinCategory
    B2: FinCategory
    B3: FinCategory
    d0: FinFunctor
    d1: FinFunctor
    D0: FinFunctor
    D1: FinFunctor
    D2: FinFunctor
    s0: FinFunctor
    sigma01: NatTrans2Cell  # D¹d⁰ ⇒ D⁰d⁰
    sigma02: NatTrans2Cell  # D²d⁰ ⇒ D⁰d¹
    sigma12: NatTrans2Cell  # D²d¹ ⇒ D¹d¹
    n0: NatTrans2Cell       # s⁰d⁰ ⇒ id
    n1: NatTrans2Cell       # s⁰d¹ ⇒ id

    def __post_init__(self):
        c = compose_functors
        expected = {
            "sigma01": (c(self.D1, self.d0), c(self.D0, self.d0)),
            "sigma02": (c(self.D2, self.d0), c(self.D0, self.d1)),
            "sigma12": (c(self.D2, self.d1), c(self.D1, self.d1)),
            "n0": (c(self.s0, self.d0), identity_functor(self.B1)),
            "n1": (c(self.s0, self.d1), identity_functor(self.B1)),
        }
        for name, (src, dst) in expected.items():
            cell = getattr(self, name)
            if cell.source_functor != src or cell.target_functor != dst:
                raise BadBoundary(f"{name} has the wrong boundary")
            if not is_invertible_2cell(cell):
                raise BadBoundary(f"{name} is not invertible")

    @property
    def strict(self):
        return all(is_identity_2cell(getattr(self, n))
                   for n in ("sigma01", "sigma02", "sigma12", "n0", "n1"))

    @classmethod
    def from_cokernel(cls, cok: CokernelDiagram):
        c = compose_functors
        return cls(
            cok.b, cok.bb, cok.bbb, cok.d0, cok.d1, cok.D0, cok.D1, cok.D2, cok.s0,
            identity_2cell(c(cok.D1, cok.d0)),
            identity_2cell(c(cok.D2, cok.d0)),
            identity_2cell(c(cok.D2, cok.d1)),
            identity_2cell(c(cok.s0, cok.d0)),
            identity_2cell(c(cok.s0, cok.d1)),
        )


def datum_failure(diag: StrictDescentDiagram, w, psi):
    """Which descent equation fails for (w, ψ), or None."""
    B2, B3, B1 = diag.B2, diag.B3, diag.B1
    if B2.src.get(psi) != diag.d1.ob(w) or B2.dst.get(psi) != diag.d0.ob(w):
        raise BadBoundary(f"{psi!r} is not a morphism d1({w}) -> d0({w})")
    lhs = B3.chain(diag.D0.mor(psi), diag.sigma02[w], diag.D2.mor(psi))
    rhs = B3.chain(diag.sigma01[w], diag.D1.mor(psi), diag.sigma12[w])
    assoc = lhs == rhs
    ident = B1.compose(diag.n0[w], diag.s0.mor(psi)) == diag.n1[w]
    if diag.strict:
        # the reduced forms must agree with the general ones
        assert assoc == (B3.compose(diag.D0.mor(psi), diag.D2.mor(psi)) == diag.D1.mor(psi))
        assert ident == (diag.s0.mor(psi) == B1.identity[w])
    if not assoc:
        return "associativity"
    if not ident:
        return "identity"
    return None


def check_descent_datum(diag: StrictDescentDiagram, w, psi) -> bool:
    return datum_failure(diag, w, psi) is None


def datum_name(w, psi):
    return f"({w}|{psi})"


@dataclass(eq=False)
class DescentCategory:
    category: FinCategory
    proj: FinFunctor
    Psi: NatTrans2Cell
    diagram: StrictDescentDiagram
    structured: Structured
    obj_of: dict
    certified: bool | None = None
    certificate: dict = field(default_factory=dict)

    def data(self):
        return sorted(self.obj_of)


def build_lax_descent_category(diag: StrictDescentDiagram, certify=True, family=None) -> DescentCategory:
    B1, B2 = diag.B1, diag.B2
    objects, psi_of, obj_of = [], {}, {}
    for w in B1.objects:
        for psi in B2.hom(diag.d1.ob(w), diag.d0.ob(w)):
            if check_descent_datum(diag, w, psi):
                name = datum_name(w, psi)
                objects.append((name, w))
                psi_of[name] = psi
                obj_of[(w, psi)] = name

    def admits(m, s, t):
        return B2.compose(diag.d0.mor(m), psi_of[s]) == B2.compose(psi_of[t], diag.d1.mor(m))

    st = Structured(B1, objects, admits, provenance="lax descent category")
    proj = st.forgetful()
    Psi = NatTrans2Cell(compose_functors(diag.d1, proj), compose_functors(diag.d0, proj), psi_of)
    dc = DescentCategory(st.category, proj, Psi, diag, st, obj_of)
    if certify:
        dc.certificate = certify_descent(dc, family)
        dc.certified = True
    else:
        dc.certified = False
    return dc


def descent_pair_failure(diag, h: FinFunctor, beta: NatTrans2Cell):
    for x in h.source.objects:
        bad = datum_failure(diag, h.ob(x), beta[x])
        if bad:
            return x, bad
    return None


def descent_universal_factor(dc: DescentCategory, h: FinFunctor, beta: NatTrans2Cell) -> FinFunctor:
    """x ↦ (h x, β_x): the unique k with proj∘k = h and Psi ∗ k = β."""
    diag = dc.diagram
    if h.target != diag.B1:
        raise NotComposable("h does not land in the base of the diagram")
    bad = descent_pair_failure(diag, h, beta)
    if bad:
        x, eq = bad
        raise NotADescentPair(f"descent {eq} equation fails at object {x!r}")
    om = {x: dc.obj_of[(h.ob(x), beta[x])] for x in h.source.objects}
    mm = {}
    lookup = dc.structured.lookup
    for m in h.source.morphisms:
        key = (om[h.source.src[m]], om[h.source.dst[m]], h.mor(m))
        if key not in lookup:
            raise NotADescentPair(f"beta is not natural at {m!r}")
        mm[m] = lookup[key]
    k = FinFunctor(h.source, dc.category, om, mm)
    check_functor(k)
    return k


def descent_compatible(diag, xi, beta1, beta0):
    B2 = diag.B2
    for x in xi.domain.objects:
        if B2.compose(diag.d0.mor(xi[x]), beta1[x]) != B2.compose(beta0[x], diag.d1.mor(xi[x])):
            return x
    return None


def descent_2cell_induction(dc: DescentCategory, xi: NatTrans2Cell, pair1, pair0) -> NatTrans2Cell:
    """Lift ξ: h1 ⇒ h0 to the descent category; pairs are (h, β)."""
    (h1, beta1), (h0, beta0) = pair1, pair0
    if xi.source_functor != h1 or xi.target_functor != h0:
        raise NotComposable("xi does not go from h1 to h0")
    bad = descent_compatible(dc.diagram, xi, beta1, beta0)
    if bad is not None:
        raise Incompatible(f"not a morphism of descent data at {bad!r}")
    k1 = descent_universal_factor(dc, h1, beta1)
    k0 = descent_universal_factor(dc, h0, beta0)
    lift = {}
    for x in xi.domain.objects:
        lift[x] = dc.structured.lookup[(k1.ob(x), k0.ob(x), xi[x])]
    return NatTrans2Cell(k1, k0, lift)


def certify_descent(dc: DescentCategory, family=None) -> dict:
    diag = dc.diagram
    family = default_family() if family is None else family
    stats = {"pairs": 0, "two_cells": 0}
    # item (2): (proj, Psi) factors as the identity
    if descent_universal_factor(dc, dc.proj, dc.Psi) != identity_functor(dc.category):
        raise CertificationFailure("(proj, Psi) does not factor as the identity")
    for y in family:
        ks = list(iter_functors(y, dc.category))
        image = {}
        for k in ks:
            pk = compose_functors(dc.proj, k)
            key = (pk.key(), tuple(dc.Psi[k.ob(x)] for x in y.objects))
            if key in image:
                raise CertificationFailure("two functors into Desc share (proj k, Psi k)")
            image[key] = k
        n = 0
        for h in iter_functors(y, diag.B1):
            for beta in iter_nat_trans(compose_functors(diag.d1, h), compose_functors(diag.d0, h)):
                if descent_pair_failure(diag, h, beta):
                    continue
                k = descent_universal_factor(dc, h, beta)
                if image.get((h.key(), beta.key())) != k:
                    raise CertificationFailure("descent factorization disagrees with enumeration")
                n += 1
        if n != len(image):
            raise CertificationFailure("a functor into Desc is not a factorization")
        stats["pairs"] += n
        # item (3)
        for k1 in ks:
            h1 = compose_functors(dc.proj, k1)
            b1 = _psi_along(dc, k1)
            for k0 in ks:
                h0 = compose_functors(dc.proj, k0)
                b0 = _psi_along(dc, k0)
                lifts = {}
                for lam in iter_nat_trans(k1, k0):
                    key = tuple(dc.structured.under[lam[x]] for x in y.objects)
                    if key in lifts:
                        raise CertificationFailure("two 2-cells into Desc share their projection")
                    lifts[key] = lam
                m = 0
                for xi in iter_nat_trans(h1, h0):
                    try:
                        lam = descent_2cell_induction(dc, xi, (h1, b1), (h0, b0))
                    except Incompatible:
                        if xi.key() in lifts:
                            raise CertificationFailure("liftable 2-cell reported incompatible")
                        continue
                    if lifts.get(xi.key()) != lam:
                        raise CertificationFailure("lifted 2-cell disagrees with enumeration")
                    m += 1
                if m != len(lifts):
                    raise CertificationFailure("some 2-cell into Desc was not induced")
                stats["two_cells"] += m
    return stats


def _psi_along(dc, k):
    diag = dc.diagram
    h = compose_functors(dc.proj, k)
    return NatTrans2Cell(
        compose_functors(diag.d1, h), compose_functors(diag.d0, h),
        {x: dc.Psi[k.ob(x)] for x in k.source.objects},
    )


def descent_factorize(p: FinFunctor, certify=True, family=None):
    """p = dp ∘ pH through the lax descent category of H_p."""
    cok = build_cokernel_diagram(p, certify=certify, family=family)
    diag = StrictDescentDiagram.from_cokernel(cok)
    dc = build_lax_descent_category(diag, certify=certify, family=family)
    pH = descent_universal_factor(dc, p, cok.alpha)
    dp = dc.proj
    assert compose_functors(dp, pH) == p
    return pH, dp, cok, dc
