"""Exhaustive searches: functors, natural transformations, isomorphisms."""

from __future__ import annotations

from ..config import Budget
from ..errors import NotParallel
from ..verdict import Verdict
from .core import (
    FinCategory,
    FinFunctor,
    NatTrans2Cell,
    compose_functors,
    identity_functor,
    is_invertible_2cell,
)


def iter_functors(C: FinCategory, D: FinCategory, obj_domain=None, mor_domain=None,
                  injective=False, budget=None):
    """Yield functors C → D in canonical order.

    ``obj_domain`` / ``mor_domain`` optionally restrict the allowed images;
    ``injective`` restricts to isomorphisms.
    """
    budget = budget or Budget(f"functors {C.size} -> {D.size}")
    if injective and C.size != D.size:
        return
    objs = C.objects
    nonid = C.non_identities()
    index = {m: i for i, m in enumerate(nonid)}
    checks = [[] for _ in nonid]
    for (g, f), h in C.composition_items():
        if g in index and f in index:
            checks[max(index[g], index[f], index.get(h, -1))].append((g, f, h))
    om: dict = {}
    mm: dict = {}
    used_obj: set = set()
    used_mor: set = set()

    def objects_ok(i, y):
        x = objs[i]
        for j in range(i + 1):
            x2 = objs[j]
            y2 = y if j == i else om[x2]
            for a, b, fa, fb in ((x2, x, y2, y), (x, x2, y, y2)):
                n = len(C.hom(a, b))
                k = len(D.hom(fa, fb))
                if n and not k:
                    return False
                if injective and n != k:
                    return False
        return True

    def assign_objects(i):
        if i == len(objs):
            for x in objs:
                mm[C.identity[x]] = D.identity[om[x]]
            if injective:
                used_mor.clear()
                used_mor.update(D.identity[om[x]] for x in objs)
            yield from assign_morphisms(0)
            return
        x = objs[i]
        cands = D.objects if obj_domain is None else obj_domain(x)
        for y in cands:
            budget.tick()
            if injective and y in used_obj:
                continue
            if not objects_ok(i, y):
                continue
            om[x] = y
            used_obj.add(y)
            yield from assign_objects(i + 1)
            used_obj.discard(y)
            del om[x]

    def assign_morphisms(k):
        if k == len(nonid):
            yield FinFunctor(C, D, dict(om), dict(mm))
            return
        m = nonid[k]
        cands = D.hom(om[C.src[m]], om[C.dst[m]])
        if mor_domain is not None:
            allowed = mor_domain(m)
            cands = [c for c in cands if c in allowed]
        for c in cands:
            budget.tick()
            if injective and c in used_mor:
                continue
            mm[m] = c
            if all(D.compose(mm[g], mm[f]) == mm[h] for g, f, h in checks[k]):
                used_mor.add(c)
                yield from assign_morphisms(k + 1)
                used_mor.discard(c)
            del mm[m]

    yield from assign_objects(0)


def enumerate_functors(C: FinCategory, D: FinCategory, limit=None) -> list:
    budget = Budget(f"enumerate_functors {C.size} -> {D.size}", limit)
    return list(iter_functors(C, D, budget=budget))


def iter_nat_trans(F: FinFunctor, G: FinFunctor, budget=None, fixed=None):
    if F.source != G.source or F.target != G.target:
        raise NotParallel("enumerate_nat_trans needs parallel functors")
    C, D = F.source, F.target
    budget = budget or Budget("enumerate_nat_trans")
    objs = C.objects
    pos = {x: i for i, x in enumerate(objs)}
    # naturality squares checked once both endpoints are assigned
    squares = [[] for _ in objs]
    for f in C.morphisms:
        squares[max(pos[C.src[f]], pos[C.dst[f]])].append(f)
    comp: dict = {}

    def go(i):
        if i == len(objs):
            yield NatTrans2Cell(F, G, dict(comp))
            return
        x = objs[i]
        cands = D.hom(F.ob(x), G.ob(x))
        if fixed is not None and x in fixed:
            cands = [c for c in cands if c == fixed[x]]
        for c in cands:
            budget.tick()
            comp[x] = c
            if all(
                D.compose(G.mor(f), comp[C.src[f]]) == D.compose(comp[C.dst[f]], F.mor(f))
                for f in squares[i]
            ):
                yield from go(i + 1)
            del comp[x]

    yield from go(0)


def enumerate_nat_trans(F: FinFunctor, G: FinFunctor, limit=None) -> list:
    return list(iter_nat_trans(F, G, Budget("enumerate_nat_trans", limit)))


def isomorphic_objects(D: FinCategory, x, y):
    """An isomorphism x → y in D, or None."""
    for f in D.hom(x, y):
        for g in D.hom(y, x):
            if D.compose(g, f) == D.identity[x] and D.compose(f, g) == D.identity[y]:
                return f
    return None


def find_isomorphism(C: FinCategory, D: FinCategory, constraints=(), limit=None):
    """Search an invertible functor Φ: C → D meeting the constraints.

    Each constraint is ``("after", f, g)`` for Φ∘f = g or ``("before", f, g)``
    for f∘Φ = g.
    """
    if C.size != D.size:
        return None
    obj_allowed = {x: set(D.objects) for x in C.objects}
    mor_allowed = {m: set(D.morphisms) for m in C.morphisms}
    for kind, f, g in constraints:
        if kind == "after":
            for x in f.source.objects:
                obj_allowed[f.ob(x)] &= {g.ob(x)}
            for m in f.source.morphisms:
                mor_allowed[f.mor(m)] &= {g.mor(m)}
        elif kind == "before":
            for x in C.objects:
                obj_allowed[x] &= {d for d in D.objects if f.ob(d) == g.ob(x)}
            for m in C.morphisms:
                mor_allowed[m] &= {d for d in D.morphisms if f.mor(d) == g.mor(m)}
        else:
            raise ValueError(f"unknown constraint kind {kind!r}")
    budget = Budget("find_isomorphism", limit)
    for phi in iter_functors(
        C, D,
        obj_domain=lambda x: [y for y in D.objects if y in obj_allowed[x]],
        mor_domain=lambda m: mor_allowed[m],
        injective=True, budget=budget,
    ):
        return phi
    return None


def is_equivalence(F: FinFunctor) -> Verdict:
    """Full, faithful and essentially surjective, with a failure witness."""
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = [F.mor(m) for m in C.hom(x, y)]
            if len(set(images)) != len(images):
                return Verdict(False, {"reason": "not faithful", "objects": (x, y)})
            if len(images) != len(D.hom(F.ob(x), F.ob(y))):
                return Verdict(False, {"reason": "not full", "objects": (x, y)})
    image = set(F.object_map.values())
    for d in D.objects:
        if d in image:
            continue
        if not any(isomorphic_objects(D, d, y) for y in image):
            return Verdict(False, {"reason": "not essentially surjective", "object": d})
    return Verdict(True, None)


def find_pseudo_inverse(F: FinFunctor, limit=None):
    """Brute-force (G, FG ≅ id, GF ≅ id); independent of is_equivalence."""
    C, D = F.source, F.target
    budget = Budget("find_pseudo_inverse", limit)
    idC, idD = identity_functor(C), identity_functor(D)
    for G in iter_functors(D, C, budget=budget):
        fg = [b for b in iter_nat_trans(compose_functors(F, G), idD, budget) if is_invertible_2cell(b)]
        if not fg:
            continue
        gf = [b for b in iter_nat_trans(compose_functors(G, F), idC, budget) if is_invertible_2cell(b)]
        if gf:
            return G, fg[0], gf[0]
    return None
