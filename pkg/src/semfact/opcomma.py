"""Opcomma objects as collages of coend profunctors, and the cokernel diagram."""

from __future__ import annotations

from dataclasses import dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from .errors import CertificationFailure, IllDefined, Incompatible, NotComposable, SemfactError
from .fincat.core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    build_category,
    check_functor,
    check_naturality,
    compose_functors,
    identity_2cell,
    identity_functor,
    whisker_left,
)
from .fincat.search import iter_functors, iter_nat_trans
from .fincat.small import discrete, poset, terminal
from .verdict import Verdict


def default_family():
    """Test categories y used to certify universal properties."""
    return (terminal(), poset(2), discrete(2))


@dataclass(frozen=True, order=True)
class CoendClass:
    apex: str
    f: str
    g: str
    class_id: int = field(compare=False)
    x: str = field(compare=False)
    y: str = field(compare=False)

    @property
    def representative(self):
        return (self.f, self.g)


@dataclass(frozen=True, order=True)
class TripleClass:
    """Class of (f: x→pa, m: pa→pc, g: pc→z) over apexes a and c."""
    a: str
    f: str
    m: str
    c: str
    g: str
    class_id: int = field(compare=False)
    x: str = field(compare=False)
    y: str = field(compare=False)


def _quotient(elements, relations, make):
    """Union-find quotient; least element represents each class."""
    ds = DisjointSet(elements)
    for u, v in relations:
        ds.merge(u, v)
    by_hom: dict = {}
    for sub in ds.subsets():
        rep = min(sub)
        by_hom.setdefault(rep[-1], []).append((rep[:-1], sorted(sub)))
    of, members, classes = {}, {}, {}
    for hom, items in by_hom.items():
        items.sort()
        for i, (rep, sub) in enumerate(items):
            cls = make(rep, i, hom)
            classes.setdefault(hom, []).append(cls)
            members[cls] = [s[:-1] for s in sub]
            for s in sub:
                of[s[:-1]] = cls
    return of, members, classes


class Coend:
    """Cross hom-sets ∫^a b0(x, p0 a) × b1(p1 a, y) for every (x, y)."""

    def __init__(self, p0: FinFunctor, p1: FinFunctor):
        if p0.source != p1.source:
            raise NotComposable("opcomma legs must share their source")
        self.p0, self.p1 = p0, p1
        e, b0, b1 = p0.source, p0.target, p1.target
        self.b0, self.b1 = b0, b1
        into = {y: [f for f in b0.morphisms if b0.dst[f] == y] for y in b0.objects}
        outof = {y: [g for g in b1.morphisms if b1.src[g] == y] for y in b1.objects}
        elements = []
        for a in e.objects:
            for f in into[p0.ob(a)]:
                for g in outof[p1.ob(a)]:
                    elements.append((a, f, g, (b0.src[f], b1.dst[g])))
        relations = []
        for u in e.non_identities():
            a, a2 = e.src[u], e.dst[u]
            for f in into[p0.ob(a)]:
                for g in outof[p1.ob(a2)]:
                    hom = (b0.src[f], b1.dst[g])
                    relations.append((
                        (a2, b0.compose(p0.mor(u), f), g, hom),
                        (a, f, b1.compose(g, p1.mor(u)), hom),
                    ))
        self._of, self.members, self._classes = _quotient(
            elements, relations,
            lambda rep, i, hom: CoendClass(rep[0], rep[1], rep[2], i, hom[0], hom[1]),
        )

    def classes(self, x, y):
        return list(self._classes.get((x, y), []))

    def all_classes(self):
        return [c for k in sorted(self._classes) for c in self._classes[k]]

    def cls(self, a, f, g) -> CoendClass:
        return self._of[(a, f, g)]

    def left(self, h, c: CoendClass) -> CoendClass:
        return self.cls(c.apex, c.f, self.b1.compose(h, c.g))

    def right(self, c: CoendClass, k) -> CoendClass:
        return self.cls(c.apex, self.b0.compose(c.f, k), c.g)

    def member_left(self, h, mem):
        a, f, g = mem
        return self.cls(a, f, self.b1.compose(h, g))

    def member_right(self, mem, k):
        a, f, g = mem
        return self.cls(a, self.b0.compose(f, k), g)


class TripleCoend:
    """Cross hom-sets of the composite profunctor over a middle copy of b."""

    def __init__(self, p: FinFunctor):
        e, b = p.source, p.target
        self.p, self.b = p, b
        into = {y: [f for f in b.morphisms if b.dst[f] == y] for y in b.objects}
        outof = {y: [g for g in b.morphisms if b.src[g] == y] for y in b.objects}
        elements = []
        for a in e.objects:
            for c in e.objects:
                for m in b.hom(p.ob(a), p.ob(c)):
                    for f in into[p.ob(a)]:
                        for g in outof[p.ob(c)]:
                            elements.append((a, f, m, c, g, (b.src[f], b.dst[g])))
        relations = []
        for u in e.non_identities():
            s, t = e.src[u], e.dst[u]
            pu = p.mor(u)
            for c in e.objects:
                # move u across the first apex
                for m in b.hom(p.ob(t), p.ob(c)):
                    for f in into[p.ob(s)]:
                        for g in outof[p.ob(c)]:
                            hom = (b.src[f], b.dst[g])
                            relations.append((
                                (t, b.compose(pu, f), m, c, g, hom),
                                (s, f, b.compose(m, pu), c, g, hom),
                            ))
                # and across the second apex
                for m in b.hom(p.ob(c), p.ob(s)):
                    for f in into[p.ob(c)]:
                        for g in outof[p.ob(t)]:
                            hom = (b.src[f], b.dst[g])
                            relations.append((
                                (c, f, b.compose(pu, m), t, g, hom),
                                (c, f, m, s, b.compose(g, pu), hom),
                            ))
        self._of, self.members, self._classes = _quotient(
            elements, relations,
            lambda rep, i, hom: TripleClass(*rep, i, hom[0], hom[1]),
        )

    def classes(self, x, y):
        return list(self._classes.get((x, y), []))

    def all_classes(self):
        return [c for k in sorted(self._classes) for c in self._classes[k]]

    def cls(self, a, f, m, c, g) -> TripleClass:
        return self._of[(a, f, m, c, g)]

    def left(self, h, t: TripleClass):
        return self.cls(t.a, t.f, t.m, t.c, self.b.compose(h, t.g))

    def right(self, t: TripleClass, k):
        return self.cls(t.a, self.b.compose(t.f, k), t.m, t.c, t.g)

    def member_left(self, h, mem):
        a, f, m, c, g = mem
        return self.cls(a, f, m, c, self.b.compose(h, g))

    def member_right(self, mem, k):
        a, f, m, c, g = mem
        return self.cls(a, self.b.compose(f, k), m, c, g)


def cross_hom_coend(p0: FinFunctor, p1: FinFunctor, x, y) -> list:
    return Coend(p0, p1).classes(x, y)


def class_name(s, t, c) -> str:
    if isinstance(c, CoendClass):
        return f"{s}{t}<{c.apex}|{c.f}|{c.g}>"
    return f"{s}{t}<{c.a}|{c.f}|{c.m}|{c.c}|{c.g}>"


def copy_object(tag, x) -> str:
    return f"{tag}:{x}"


class Collage:
    """Copies of categories glued by one-directional cross hom-sets.

    ``cross[(s, t)]`` is a bimodule from copy s to copy t and
    ``mid[(s, t, u)]`` composes a (t, u) class after an (s, t) class.
    """

    def __init__(self, copies: dict, cross: dict, mid: dict, provenance=None, check=True):
        self.copies, self.cross, self.mid = copies, cross, mid
        objects, arrows = [], {}
        self.info = {}
        self.copy_mor = {}
        for tag, C in copies.items():
            for x in C.objects:
                objects.append(copy_object(tag, x))
            for m in C.morphisms:
                name = self._copy_name(tag, m)
                self.copy_mor[(tag, m)] = name
                if not C.is_identity(m):
                    arrows[name] = (copy_object(tag, C.src[m]), copy_object(tag, C.dst[m]))
                    self.info[name] = ("copy", tag, m)
        self.cross_name = {}
        for (s, t), bim in cross.items():
            for c in bim.all_classes():
                name = class_name(s, t, c)
                self.cross_name[(s, t, c)] = name
                arrows[name] = (copy_object(s, c.x), copy_object(t, c.y))
                self.info[name] = ("cross", s, t, c)
        self.category = build_category(objects, arrows, self._compose, provenance, check=check)

    def _copy_name(self, tag, m):
        C = self.copies[tag]
        if C.is_identity(m):
            return "id:" + copy_object(tag, C.src[m])
        return f"{tag}:{m}"

    def _compose(self, g, f):
        ig, if_ = self.info[g], self.info[f]
        if ig[0] == "copy" and if_[0] == "copy":
            tag = ig[1]
            return self.copy_mor[(tag, self.copies[tag].compose(ig[2], if_[2]))]
        if ig[0] == "copy":
            _, s, t, c = if_
            return self.cross_name[(s, t, self.cross[(s, t)].left(ig[2], c))]
        if if_[0] == "copy":
            _, s, t, c = ig
            return self.cross_name[(s, t, self.cross[(s, t)].right(c, if_[2]))]
        _, t, u, c2 = ig
        _, s, _, c1 = if_
        return self.cross_name[(s, u, self.mid[(s, t, u)](c2, c1))]

    def inclusion(self, tag) -> FinFunctor:
        C = self.copies[tag]
        return FinFunctor(
            C, self.category,
            {x: copy_object(tag, x) for x in C.objects},
            {m: self.copy_mor[(tag, m)] for m in C.morphisms},
        )

    def representative_independence(self) -> Verdict:
        """Compose through every member of every class; all must agree."""
        for (s, t), bim in self.cross.items():
            left_cat, right_cat = self.copies[t], self.copies[s]
            for c in bim.all_classes():
                for h in left_cat.morphisms:
                    if left_cat.src[h] != c.y:
                        continue
                    want = bim.left(h, c)
                    for mem in bim.members[c]:
                        if bim.member_left(h, mem) != want:
                            return Verdict(False, {"class": class_name(s, t, c), "after": h, "member": mem})
                for k in right_cat.morphisms:
                    if right_cat.dst[k] != c.x:
                        continue
                    want = bim.right(c, k)
                    for mem in bim.members[c]:
                        if bim.member_right(mem, k) != want:
                            return Verdict(False, {"class": class_name(s, t, c), "before": k, "member": mem})
        for (s, t, u), fn in self.mid.items():
            first, second = self.cross[(s, t)], self.cross[(t, u)]
            for c1 in first.all_classes():
                for c2 in second.all_classes():
                    if c2.x != c1.y:
                        continue
                    want = fn(c2, c1)
                    for m1 in first.members[c1]:
                        for m2 in second.members[c2]:
                            got = fn(_as_class(second, m2, c2), _as_class(first, m1, c1))
                            if got != want:
                                return Verdict(False, {"classes": (class_name(t, u, c2), class_name(s, t, c1))})
        return Verdict(True)


def _as_class(bim, member, cls):
    """A class object whose representative fields are the given member."""
    if isinstance(cls, CoendClass):
        a, f, g = member
        return CoendClass(a, f, g, cls.class_id, cls.x, cls.y)
    a, f, m, c, g = member
    return TripleClass(a, f, m, c, g, cls.class_id, cls.x, cls.y)


@dataclass(eq=False)
class OpcommaResult:
    category: FinCategory
    delta0: FinFunctor
    delta1: FinFunctor
    alpha: NatTrans2Cell
    p0: FinFunctor
    p1: FinFunctor
    coend: Coend
    collage: Collage
    certified: bool | None = None
    certificate: dict = field(default_factory=dict)

    def cross_name(self, c: CoendClass) -> str:
        return self.collage.cross_name[(1, 0, c)]


def build_opcomma(p0: FinFunctor, p1: FinFunctor, certify=True, family=None) -> OpcommaResult:
    P = Coend(p0, p1)
    col = Collage(
        {1: p0.target, 0: p1.target}, {(1, 0): P}, {},
        provenance="opcomma of p0 along p1",
    )
    C = col.category
    d0, d1 = col.inclusion(0), col.inclusion(1)
    e = p0.source
    alpha = NatTrans2Cell(
        compose_functors(d1, p0), compose_functors(d0, p1),
        {a: col.cross_name[(1, 0, P.cls(a, p0.target.identity[p0.ob(a)], p1.target.identity[p1.ob(a)]))]
         for a in e.objects},
    )
    check_naturality(alpha)
    res = OpcommaResult(C, d0, d1, alpha, p0, p1, P, col)
    if certify:
        res.certificate = certify_opcomma(res, family)
        res.certified = True
    else:
        res.certified = False
    return res


def _beta_boundary_ok(p0, p1, h0, h1, beta):
    y = h0.target
    for a in p0.source.objects:
        c = beta.components.get(a)
        if c is None or c not in y.src:
            return False
        if y.src[c] != h1.ob(p0.ob(a)) or y.dst[c] != h0.ob(p1.ob(a)):
            return False
    return True


def factor_through_opcomma(opc: OpcommaResult, h0: FinFunctor, h1: FinFunctor, beta: NatTrans2Cell) -> FinFunctor:
    """Unique h with hδ⁰ = h0, hδ¹ = h1 and h ∗ α = β."""
    p0, p1 = opc.p0, opc.p1
    if h0.source != p1.target or h1.source != p0.target or h0.target != h1.target:
        raise NotComposable("h0/h1 do not match the opcomma legs")
    if not _beta_boundary_ok(p0, p1, h0, h1, beta):
        raise NotComposable("beta is not a 2-cell h1·p0 ⇒ h0·p1")
    y = h0.target
    om, mm = {}, {}
    for tag, hh in ((0, h0), (1, h1)):
        for x in hh.source.objects:
            om[copy_object(tag, x)] = hh.ob(x)
        for m in hh.source.morphisms:
            mm[opc.collage.copy_mor[(tag, m)]] = hh.mor(m)
    P = opc.coend
    for c in P.all_classes():
        values = {y.chain(h0.mor(g), beta[a], h1.mor(f)) for a, f, g in P.members[c]}
        if len(values) != 1:
            raise IllDefined(f"class {opc.cross_name(c)} has members with different images {sorted(values)}")
        mm[opc.cross_name(c)] = values.pop()
    h = FinFunctor(opc.category, y, om, mm)
    check_functor(h)
    return h


def _cell_on_alpha(opc, h):
    """id_h ∗ α as a component dict."""
    return {a: h.mor(opc.alpha[a]) for a in opc.p0.source.objects}


def opcomma_compatible(opc, xi0, xi1, h, h_prime):
    """(ξ0∗p1)·(h∗α) = (h′∗α)·(ξ1∗p0); returns the failing apex or None."""
    y = h.target
    p0, p1 = opc.p0, opc.p1
    for a in p0.source.objects:
        lhs = y.compose(xi0[p1.ob(a)], h.mor(opc.alpha[a]))
        rhs = y.compose(h_prime.mor(opc.alpha[a]), xi1[p0.ob(a)])
        if lhs != rhs:
            return a
    return None


def induce_2cell_opcomma(opc: OpcommaResult, xi0: NatTrans2Cell, xi1: NatTrans2Cell,
                         h: FinFunctor, h_prime: FinFunctor) -> NatTrans2Cell:
    """Unique ξ: h ⇒ h′ restricting to ξ0 along δ⁰ and ξ1 along δ¹."""
    d0, d1 = opc.delta0, opc.delta1
    for tag, xi, d in ((0, xi0, d0), (1, xi1, d1)):
        for x in d.source.objects:
            c = xi.components.get(x)
            y = h.target
            if c is None or y.src.get(c) != h.ob(d.ob(x)) or y.dst.get(c) != h_prime.ob(d.ob(x)):
                raise NotComposable(f"ξ{tag} has the wrong boundary at {x!r}")
    bad = opcomma_compatible(opc, xi0, xi1, h, h_prime)
    if bad is not None:
        raise Incompatible(f"compatibility fails at apex {bad!r}")
    comps = {}
    for x in d0.source.objects:
        comps[d0.ob(x)] = xi0[x]
    for x in d1.source.objects:
        comps[d1.ob(x)] = xi1[x]
    xi = NatTrans2Cell(h, h_prime, comps)
    check_naturality(xi)
    return xi


def certify_opcomma(opc: OpcommaResult, family=None) -> dict:
    """Both universal properties, exhaustively for every y in the family."""
    family = default_family() if family is None else family
    p0, p1 = opc.p0, opc.p1
    d0, d1 = opc.delta0, opc.delta1
    stats = {"one_cell_triples": 0, "two_cell_pairs": 0}
    for y in family:
        functors = list(iter_functors(opc.category, y))
        image = {}
        for h in functors:
            key = (
                compose_functors(h, d0).key(),
                compose_functors(h, d1).key(),
                tuple(sorted(_cell_on_alpha(opc, h).items())),
            )
            if key in image:
                raise CertificationFailure("two functors out of the opcomma share their restriction")
            image[key] = h
        count = 0
        for h0 in iter_functors(p1.target, y):
            for h1 in iter_functors(p0.target, y):
                for beta in iter_nat_trans(compose_functors(h1, p0), compose_functors(h0, p1)):
                    h = factor_through_opcomma(opc, h0, h1, beta)
                    key = (h0.key(), h1.key(), tuple(sorted(beta.components.items())))
                    if image.get(key) != h:
                        raise CertificationFailure("factorization disagrees with the enumerated witness")
                    count += 1
        if count != len(image):
            raise CertificationFailure("some functor out of the opcomma is not a factorization")
        stats["one_cell_triples"] += count
        # two-cell property
        for h in functors:
            hd0, hd1 = compose_functors(h, d0), compose_functors(h, d1)
            for h2 in functors:
                h2d0, h2d1 = compose_functors(h2, d0), compose_functors(h2, d1)
                lifts = {}
                for xi in iter_nat_trans(h, h2):
                    key = (tuple(xi[d0.ob(x)] for x in d0.source.objects),
                           tuple(xi[d1.ob(x)] for x in d1.source.objects))
                    if key in lifts:
                        raise CertificationFailure("two 2-cells share their restrictions")
                    lifts[key] = xi
                n = 0
                for xi0 in iter_nat_trans(hd0, h2d0):
                    for xi1 in iter_nat_trans(hd1, h2d1):
                        key = (xi0.key(), xi1.key())
                        try:
                            xi = induce_2cell_opcomma(opc, xi0, xi1, h, h2)
                        except Incompatible:
                            if key in lifts:
                                raise CertificationFailure("a restriction pair was called incompatible")
                            continue
                        if lifts.get(key) != xi:
                            raise CertificationFailure("induced 2-cell disagrees with the enumerated one")
                        n += 1
                if n != len(lifts):
                    raise CertificationFailure("a 2-cell out of the opcomma was not induced")
                stats["two_cell_pairs"] += 1
    return stats


# -- cokernel diagram -------------------------------------------------------

@dataclass(eq=False)
class CokernelDiagram:
    p: FinFunctor
    b: FinCategory
    bb: FinCategory
    bbb: FinCategory
    d0: FinFunctor
    d1: FinFunctor
    D0: FinFunctor
    D1: FinFunctor
    D2: FinFunctor
    s0: FinFunctor
    alpha: NatTrans2Cell
    opcomma: OpcommaResult
    collage3: Collage
    certified: bool | None = None
    certificate: dict = field(default_factory=dict)


def build_cokernel_diagram(p: FinFunctor, certify=True, family=None) -> CokernelDiagram:
    b = p.target
    opc = build_opcomma(p, p, certify=certify, family=family)
    P = opc.coend
    T = TripleCoend(p)

    def mid(c10, c21):
        return T.cls(c21.apex, c21.f, b.compose(c10.f, c21.g), c10.apex, c10.g)

    col3 = Collage(
        {2: b, 1: b, 0: b}, {(2, 1): P, (1, 0): P, (2, 0): T}, {(2, 1, 0): mid},
        provenance="double opcomma of p along p",
    )
    bb, bbb = opc.category, col3.category
    d0, d1 = opc.delta0, opc.delta1

    def along(src_tags, dst_tags, cross_map):
        om, mm = {}, {}
        for s, t in zip(src_tags, dst_tags):
            for x in b.objects:
                om[copy_object(s, x)] = copy_object(t, x)
            for m in b.morphisms:
                mm[opc.collage.copy_mor[(s, m)]] = col3.copy_mor[(t, m)]
        for c in P.all_classes():
            mm[opc.cross_name(c)] = cross_map(c)
        F = FinFunctor(bb, bbb, om, mm)
        check_functor(F)
        return F

    D0 = along((1, 0), (1, 0), lambda c: col3.cross_name[(1, 0, c)])
    D2 = along((1, 0), (2, 1), lambda c: col3.cross_name[(2, 1, c)])

    def d1_cross(c):
        vals = {col3.cross_name[(2, 0, T.cls(a, f, b.identity[p.ob(a)], a, g))] for a, f, g in P.members[c]}
        if len(vals) != 1:
            raise IllDefined(f"D1 is not well defined on {opc.cross_name(c)}")
        return vals.pop()

    D1 = along((1, 0), (2, 0), d1_cross)

    om = {copy_object(t, x): x for t in (0, 1) for x in b.objects}
    mm = {opc.collage.copy_mor[(t, m)]: m for t in (0, 1) for m in b.morphisms}
    for c in P.all_classes():
        vals = {b.compose(g, f) for a, f, g in P.members[c]}
        if len(vals) != 1:
            raise IllDefined(f"s0 is not well defined on {opc.cross_name(c)}")
        mm[opc.cross_name(c)] = vals.pop()
    s0 = FinFunctor(bb, b, om, mm)
    check_functor(s0)

    cok = CokernelDiagram(p, b, bb, bbb, d0, d1, D0, D1, D2, s0, opc.alpha, opc, col3)
    failures = cokernel_equation_failures(cok)
    if failures:
        raise IllDefined("cokernel diagram equations fail: " + "; ".join(failures))
    if certify:
        cok.certificate = {"opcomma": opc.certificate, "pushout": certify_pushout(cok, family)}
        cok.certified = True
    else:
        cok.certified = False
    return cok


def cokernel_equation_failures(cok: CokernelDiagram) -> list:
    out = []
    D0, D1, D2, d0, d1, s0 = cok.D0, cok.D1, cok.D2, cok.d0, cok.d1, cok.s0
    if compose_functors(D0, d1) != compose_functors(D2, d0):
        out.append("D0 d1 != D2 d0")
    if compose_functors(D1, d1) != compose_functors(D2, d1):
        out.append("D1 d1 != D2 d1")
    if compose_functors(D1, d0) != compose_functors(D0, d0):
        out.append("D1 d0 != D0 d0")
    idb = identity_functor(cok.b)
    if compose_functors(s0, d1) != idb or compose_functors(s0, d0) != idb:
        out.append("s0 is not a common retraction")
    if whisker_left(s0, cok.alpha).key() != identity_2cell(cok.p).key():
        out.append("s0 * alpha != id_p")
    bbb = cok.bbb
    for a in cok.p.source.objects:
        lhs = D1.mor(cok.alpha[a])
        rhs = bbb.compose(D0.mor(cok.alpha[a]), D2.mor(cok.alpha[a]))
        if lhs != rhs:
            out.append(f"D1 * alpha != (D0 * alpha)(D2 * alpha) at {a}")
    return out


def certify_pushout(cok: CokernelDiagram, family=None) -> dict:
    """Fun(bbb, y) → {(k0, k2) : k0 d¹ = k2 d⁰} is a bijection for y in the family."""
    family = default_family() if family is None else family
    stats = {"cocones": 0}
    for y in family:
        image = set()
        n = 0
        for k in iter_functors(cok.bbb, y):
            key = (compose_functors(k, cok.D0).key(), compose_functors(k, cok.D2).key())
            if key in image:
                raise CertificationFailure("two functors out of bbb share their restrictions")
            image.add(key)
            n += 1
        cocones = 0
        for k0 in iter_functors(cok.bb, y):
            k0d1 = compose_functors(k0, cok.d1)
            for k2 in iter_functors(cok.bb, y):
                if compose_functors(k2, cok.d0) == k0d1:
                    cocones += 1
                    if (k0.key(), k2.key()) not in image:
                        raise CertificationFailure("a cocone does not factor through bbb")
        if cocones != n:
            raise CertificationFailure("pushout restriction is not surjective onto cocones")
        stats["cocones"] += cocones
    return stats


def composition_is_representative_independent(x) -> Verdict:
    """Works on an OpcommaResult or a CokernelDiagram."""
    if isinstance(x, CokernelDiagram):
        v = x.opcomma.collage.representative_independence()
        return v if not v else x.collage3.representative_independence()
    return x.collage.representative_independence()
