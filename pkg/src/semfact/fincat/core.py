"""Finite categories, functors and natural transformations.

Everything here is immutable after construction.  Categories keep their
objects and morphisms in lexicographic order so that every enumeration
built on top of them is deterministic.
"""

from __future__ import annotations

from itertools import product
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from ..errors import (
    BadEndpoints,
    InvalidInput,
    MissingComposite,
    NonAssociative,
    NotComposable,
    NotFunctorial,
    NotNatural,
    NotParallel,
)

ID_PREFIX = "id:"

CATEGORY_KEYS = {"objects", "morphisms", "composition", "provenance", "name"}


def identity_name(obj: str) -> str:
    return ID_PREFIX + obj


class FinCategory:
    """A finite category given by explicit tables.

    ``arrows`` maps every morphism id (identities included) to its
    ``(source, target)`` pair; ``table`` maps composable pairs ``(g, f)`` to
    ``g∘f``.
    """

    __slots__ = (
        "objects", "morphisms", "src", "dst", "identity", "_table", "_hom",
        "provenance", "_key", "_hash",
    )

    def __init__(self, objects, arrows, table, identity, provenance=None):
        self.objects = tuple(sorted(objects))
        self.morphisms = tuple(sorted(arrows))
        self.src = MappingProxyType({m: arrows[m][0] for m in self.morphisms})
        self.dst = MappingProxyType({m: arrows[m][1] for m in self.morphisms})
        self.identity = MappingProxyType(dict(identity))
        self._table = MappingProxyType(dict(table))
        hom = {(x, y): [] for x in self.objects for y in self.objects}
        for m in self.morphisms:
            hom[(self.src[m], self.dst[m])].append(m)
        self._hom = MappingProxyType({k: tuple(v) for k, v in hom.items()})
        self.provenance = provenance
        self._key = None
        self._hash = None

    # -- basic access -------------------------------------------------
    def hom(self, x: str, y: str) -> tuple:
        return self._hom[(x, y)]

    def compose(self, g: str, f: str) -> str:
        try:
            return self._table[(g, f)]
        except KeyError:
            raise NotComposable(
                f"cannot compose {g!r} after {f!r}: target({f})={self.dst.get(f)!r}, "
                f"source({g})={self.src.get(g)!r}"
            ) from None

    def chain(self, *ms: str) -> str:
        """Compose right-to-left: chain(h, g, f) = h∘g∘f."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def is_identity(self, m: str) -> bool:
        return self.identity[self.src[m]] == m

    def non_identities(self) -> tuple:
        return tuple(m for m in self.morphisms if not self.is_identity(m))

    def composition_items(self):
        return self._table.items()

    # -- equality -----------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (
                self.objects,
                tuple((m, self.src[m], self.dst[m]) for m in self.morphisms),
                tuple(sorted(self._table.items())),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        label = f" {self.provenance!r}" if self.provenance else ""
        return f"<FinCategory{label} |Ob|={len(self.objects)} |Mor|={len(self.morphisms)}>"

    @property
    def size(self):
        return len(self.objects), len(self.morphisms)


def check_laws(C: FinCategory) -> None:
    """Raise if identity or associativity fails anywhere in ``C``."""
    for x in C.objects:
        i = C.identity[x]
        if C.src[i] != x or C.dst[i] != x:
            raise BadEndpoints(f"identity {i!r} of {x!r} has wrong endpoints")
    for f in C.morphisms:
        x, y = C.src[f], C.dst[f]
        for g in C.morphisms:
            if C.src[g] != y:
                continue
            if (g, f) not in C._table:
                raise MissingComposite(f"missing composite of {g!r} after {f!r}")
            h = C._table[(g, f)]
            if C.src[h] != x or C.dst[h] != C.dst[g]:
                raise BadEndpoints(f"{g!r}∘{f!r} = {h!r} has wrong endpoints")
        if C._table[(C.identity[y], f)] != f or C._table[(f, C.identity[x])] != f:
            raise NonAssociative(f"identity law fails at {f!r}")
    for (g, f) in C._table:
        if C.dst[f] != C.src[g]:
            raise BadEndpoints(f"composite declared for non-composable pair ({g!r}, {f!r})")
    by_src: dict = {}
    for m in C.morphisms:
        by_src.setdefault(C.src[m], []).append(m)
    for f in C.morphisms:
        for g in by_src.get(C.dst[f], ()):
            gf = C._table[(g, f)]
            for h in by_src.get(C.dst[g], ()):
                if C._table[(h, gf)] != C._table[(C._table[(h, g)], f)]:
                    raise NonAssociative(
                        f"associativity fails on ({h!r}, {g!r}, {f!r})"
                    )


def build_category(
    objects: Iterable[str],
    arrows: Mapping[str, tuple],
    compose: Callable[[str, str], str],
    provenance: str | None = None,
    check: bool = True,
) -> FinCategory:
    """Materialize a category from non-identity arrows and a composition rule.

    ``compose(g, f)`` is only called on composable pairs of non-identity
    arrows; identities are generated as ``id:<object>``.
    """
    objects = list(objects)
    full = {}
    identity = {}
    for x in objects:
        i = identity_name(x)
        identity[x] = i
        full[i] = (x, x)
    for m, (s, t) in arrows.items():
        if m in full:
            raise InvalidInput(f"duplicate morphism id {m!r}")
        full[m] = (s, t)
    table = {}
    for f, (x, y) in full.items():
        table[(identity[y], f)] = f
        table[(f, identity[x])] = f
    for f, (x, y) in arrows.items():
        for g, (y2, z) in arrows.items():
            if y2 == y:
                table[(g, f)] = compose(g, f)
    C = FinCategory(objects, full, table, identity, provenance)
    if check:
        check_laws(C)
    return C


def validate_category(spec: Mapping) -> FinCategory:
    """Build and fully check a category from a CategorySpec document."""
    if not isinstance(spec, Mapping):
        raise InvalidInput("category spec must be a JSON object")
    unknown = set(spec) - CATEGORY_KEYS
    if unknown:
        raise InvalidInput(f"unknown keys in category spec: {sorted(unknown)}")
    objects = list(spec.get("objects", []))
    if len(set(objects)) != len(objects):
        raise InvalidInput("duplicate object identifiers")
    for x in objects:
        if not isinstance(x, str):
            raise InvalidInput(f"object identifier {x!r} is not a string")
    obj_set = set(objects)
    arrows = {}
    for rec in spec.get("morphisms", []):
        if set(rec) - {"id", "src", "dst"} or not {"id", "src", "dst"} <= set(rec):
            raise InvalidInput(f"malformed morphism record {rec!r}")
        m, s, t = rec["id"], rec["src"], rec["dst"]
        if m.startswith(ID_PREFIX):
            raise InvalidInput(f"identities are implicit; do not list {m!r}")
        if m in arrows:
            raise InvalidInput(f"duplicate morphism id {m!r}")
        if s not in obj_set or t not in obj_set:
            raise BadEndpoints(f"morphism {m!r} has unknown endpoint(s) {s!r} -> {t!r}")
        arrows[m] = (s, t)
    ids = {identity_name(x): (x, x) for x in objects}
    clash = set(ids) & set(arrows)
    if clash:
        raise InvalidInput(f"reserved identifiers used: {sorted(clash)}")
    full = {**ids, **arrows}
    declared = {}
    for rec in spec.get("composition", []):
        if set(rec) != {"after", "before", "equals"}:
            raise InvalidInput(f"malformed composition record {rec!r}")
        g, f, h = rec["after"], rec["before"], rec["equals"]
        for m in (g, f):
            if m not in arrows:
                if m in ids:
                    raise InvalidInput(f"composites with identities are implicit: ({g!r}, {f!r})")
                raise InvalidInput(f"unknown morphism {m!r} in composition entry")
        if h not in full:
            raise InvalidInput(f"unknown morphism {h!r} in composition entry")
        if arrows[f][1] != arrows[g][0]:
            raise BadEndpoints(
                f"composition ({g!r} after {f!r}) declared but target({f})={arrows[f][1]!r} "
                f"!= source({g})={arrows[g][0]!r}"
            )
        if full[h] != (arrows[f][0], arrows[g][1]):
            raise BadEndpoints(f"composite {g!r}∘{f!r} = {h!r} has wrong endpoints")
        if (g, f) in declared and declared[(g, f)] != h:
            raise InvalidInput(f"conflicting composites for ({g!r}, {f!r})")
        declared[(g, f)] = h
    for f, (x, y) in arrows.items():
        for g, (y2, z) in arrows.items():
            if y2 == y and (g, f) not in declared:
                raise MissingComposite(f"missing composite of {g!r} after {f!r}")

    C = build_category(
        objects, arrows, lambda g, f: declared[(g, f)],
        provenance=spec.get("provenance"), check=True,
    )
    return C


def category_to_spec(C: FinCategory) -> dict:
    doc = {
        "objects": list(C.objects),
        "morphisms": [
            {"id": m, "src": C.src[m], "dst": C.dst[m]} for m in C.non_identities()
        ],
        "composition": [
            {"after": g, "before": f, "equals": h}
            for (g, f), h in sorted(C.composition_items())
            if not C.is_identity(g) and not C.is_identity(f)
        ],
    }
    if C.provenance:
        doc["provenance"] = C.provenance
    return doc


# -- functors ----------------------------------------------------------

class FinFunctor:
    __slots__ = ("source", "target", "object_map", "morphism_map", "_key")

    def __init__(self, source: FinCategory, target: FinCategory, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = MappingProxyType(dict(object_map))
        self.morphism_map = MappingProxyType(dict(morphism_map))
        self._key = None

    def ob(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]

    def __matmul__(self, other: "FinFunctor") -> "FinFunctor":
        return compose_functors(self, other)

    def key(self):
        if self._key is None:
            self._key = (
                tuple(self.object_map[x] for x in self.source.objects),
                tuple(self.morphism_map[m] for m in self.source.morphisms),
            )
        return self._key

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.key() == other.key()
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        om = ", ".join(f"{x}->{y}" for x, y in self.object_map.items())
        return f"<FinFunctor {om}>"


def check_functor(F: FinFunctor) -> None:
    C, D = F.source, F.target
    if set(F.object_map) != set(C.objects):
        raise NotFunctorial("object map is not total on the source")
    if set(F.morphism_map) != set(C.morphisms):
        raise NotFunctorial("morphism map is not total on the source")
    for x in C.objects:
        if F.ob(x) not in D.identity:
            raise NotFunctorial(f"object {x!r} sent to unknown object {F.ob(x)!r}")
        if F.mor(C.identity[x]) != D.identity[F.ob(x)]:
            raise NotFunctorial(f"identity of {x!r} not preserved")
    for f in C.morphisms:
        Ff = F.mor(f)
        if Ff not in D.src:
            raise NotFunctorial(f"morphism {f!r} sent to unknown morphism {Ff!r}")
        if D.src[Ff] != F.ob(C.src[f]) or D.dst[Ff] != F.ob(C.dst[f]):
            raise NotFunctorial(f"endpoints of {f!r} not preserved")
    for (g, f), h in C.composition_items():
        if D.compose(F.mor(g), F.mor(f)) != F.mor(h):
            raise NotFunctorial(f"composite {g!r}∘{f!r} = {h!r} not preserved")


def make_functor(C, D, object_map, morphism_map=None, check=True) -> FinFunctor:
    """Build a functor; identities may be omitted from ``morphism_map``."""
    mm = dict(morphism_map or {})
    for x in C.objects:
        i = C.identity[x]
        if i not in mm and x in object_map and object_map[x] in D.identity:
            mm[i] = D.identity[object_map[x]]
    F = FinFunctor(C, D, object_map, mm)
    if check:
        check_functor(F)
    return F


def validate_functor(spec: Mapping, C: FinCategory, D: FinCategory) -> FinFunctor:
    allowed = {"object_map", "morphism_map", "source_file", "target_file", "provenance"}
    unknown = set(spec) - allowed
    if unknown:
        raise InvalidInput(f"unknown keys in functor spec: {sorted(unknown)}")
    om = dict(spec.get("object_map", {}))
    mm = dict(spec.get("morphism_map", {}))
    unknown_src = (set(om) - set(C.objects)) | (set(mm) - set(C.morphisms))
    if unknown_src:
        raise InvalidInput(f"functor spec mentions unknown source items {sorted(unknown_src)}")
    return make_functor(C, D, om, mm, check=True)


def functor_to_spec(F: FinFunctor) -> dict:
    return {
        "object_map": dict(F.object_map),
        "morphism_map": {
            m: F.mor(m) for m in F.source.non_identities()
        },
    }


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    if F.target != G.source:
        raise NotComposable("functor composition: target of F differs from source of G")
    return FinFunctor(
        F.source,
        G.target,
        {x: G.object_map[F.object_map[x]] for x in F.source.objects},
        {m: G.morphism_map[F.morphism_map[m]] for m in F.source.morphisms},
    )


def constant_functor(C: FinCategory, D: FinCategory, y: str) -> FinFunctor:
    return FinFunctor(C, D, {x: y for x in C.objects}, {m: D.identity[y] for m in C.morphisms})


def is_invertible_functor(F: FinFunctor) -> bool:
    C, D = F.source, F.target
    return (
        len(C.objects) == len(D.objects)
        and len(C.morphisms) == len(D.morphisms)
        and len(set(F.object_map.values())) == len(D.objects)
        and len(set(F.morphism_map.values())) == len(D.morphisms)
    )


def inverse_functor(F: FinFunctor) -> FinFunctor:
    if not is_invertible_functor(F):
        raise NotFunctorial("functor is not invertible")
    return FinFunctor(
        F.target, F.source,
        {v: k for k, v in F.object_map.items()},
        {v: k for k, v in F.morphism_map.items()},
    )


# -- 2-cells -------------------------------------------------------------

class NatTrans2Cell:
    """A natural transformation ``source_functor ⇒ target_functor``."""

    __slots__ = ("source_functor", "target_functor", "components", "_key")

    def __init__(self, source_functor: FinFunctor, target_functor: FinFunctor, components):
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.components = MappingProxyType(dict(components))
        self._key = None

    def __getitem__(self, x):
        return self.components[x]

    @property
    def domain(self) -> FinCategory:
        return self.source_functor.source

    @property
    def codomain(self) -> FinCategory:
        return self.source_functor.target

    def key(self):
        if self._key is None:
            self._key = tuple(self.components[x] for x in self.domain.objects)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, NatTrans2Cell):
            return NotImplemented
        return (
            self.key() == other.key()
            and self.source_functor == other.source_functor
            and self.target_functor == other.target_functor
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<NatTrans2Cell {dict(self.components)}>"


def _parallel(F: FinFunctor, G: FinFunctor) -> bool:
    return F.source == G.source and F.target == G.target


def check_naturality(b: NatTrans2Cell) -> None:
    F, G = b.source_functor, b.target_functor
    if not _parallel(F, G):
        raise NotParallel("2-cell between non-parallel functors")
    C, D = F.source, F.target
    if set(b.components) != set(C.objects):
        raise NotNatural("components are not total on objects")
    for x in C.objects:
        c = b.components[x]
        if c not in D.src or D.src[c] != F.ob(x) or D.dst[c] != G.ob(x):
            raise NotNatural(f"component at {x!r} has the wrong boundary")
    for f in C.morphisms:
        x, y = C.src[f], C.dst[f]
        if D.compose(G.mor(f), b[x]) != D.compose(b[y], F.mor(f)):
            raise NotNatural(f"naturality square fails at {f!r}")


def make_nat_trans(F, G, components, check=True) -> NatTrans2Cell:
    b = NatTrans2Cell(F, G, components)
    if check:
        check_naturality(b)
    return b


def identity_2cell(F: FinFunctor) -> NatTrans2Cell:
    D = F.target
    return NatTrans2Cell(F, F, {x: D.identity[F.ob(x)] for x in F.source.objects})


def is_identity_2cell(b: NatTrans2Cell) -> bool:
    D = b.codomain
    return all(D.is_identity(c) for c in b.components.values())


def is_invertible_2cell(b: NatTrans2Cell) -> bool:
    D = b.codomain
    for c in b.components.values():
        back = D.hom(D.dst[c], D.src[c])
        if not any(
            D.compose(k, c) == D.identity[D.src[c]] and D.compose(c, k) == D.identity[D.dst[c]]
            for k in back
        ):
            return False
    return True


def vertical_compose(b2: NatTrans2Cell, b1: NatTrans2Cell) -> NatTrans2Cell:
    """``b2 · b1`` for ``b1: F ⇒ G`` and ``b2: G ⇒ H``."""
    if b1.target_functor != b2.source_functor:
        raise NotComposable("vertical composition: boundaries do not match")
    D = b1.codomain
    comps = {x: D.compose(b2[x], b1[x]) for x in b1.domain.objects}
    return NatTrans2Cell(b1.source_functor, b2.target_functor, comps)


def vertical_chain(*cells: NatTrans2Cell) -> NatTrans2Cell:
    """Left-to-right diagrammatic order is avoided: chain(c, b, a) = c·b·a."""
    out = cells[-1]
    for c in reversed(cells[:-1]):
        out = vertical_compose(c, out)
    return out


def horizontal_compose(b2: NatTrans2Cell, b1: NatTrans2Cell) -> NatTrans2Cell:
    """Godement product ``b2 ∗ b1``: for b1: F ⇒ F' (C→D), b2: G ⇒ G' (D→E)."""
    F, F2 = b1.source_functor, b1.target_functor
    G, G2 = b2.source_functor, b2.target_functor
    if F.target != G.source:
        raise NotComposable("horizontal composition: categories do not match")
    E = G.target
    comps = {x: E.compose(G2.mor(b1[x]), b2[F.ob(x)]) for x in F.source.objects}
    return NatTrans2Cell(compose_functors(G, F), compose_functors(G2, F2), comps)


def whisker_left(G: FinFunctor, b: NatTrans2Cell) -> NatTrans2Cell:
    """``id_G ∗ b``."""
    if b.codomain != G.source:
        raise NotComposable("whiskering: categories do not match")
    comps = {x: G.mor(c) for x, c in b.components.items()}
    return NatTrans2Cell(compose_functors(G, b.source_functor), compose_functors(G, b.target_functor), comps)


def whisker_right(b: NatTrans2Cell, F: FinFunctor) -> NatTrans2Cell:
    """``b ∗ id_F``."""
    if F.target != b.domain:
        raise NotComposable("whiskering: categories do not match")
    comps = {x: b[F.ob(x)] for x in F.source.objects}
    return NatTrans2Cell(compose_functors(b.source_functor, F), compose_functors(b.target_functor, F), comps)


# -- duality ---------------------------------------------------------------

def op_category(C: FinCategory) -> FinCategory:
    arrows = {m: (C.dst[m], C.src[m]) for m in C.morphisms}
    table = {(f, g): h for (g, f), h in C.composition_items()}
    prov = None
    if C.provenance:
        prov = C.provenance[:-4] if C.provenance.endswith(" ^op") else C.provenance + " ^op"
    return FinCategory(C.objects, arrows, table, C.identity, prov)


def op_dual(x):
    """Opposite category, opposite functor, or the reversed 2-cell."""
    if isinstance(x, FinCategory):
        return op_category(x)
    if isinstance(x, FinFunctor):
        return FinFunctor(op_category(x.source), op_category(x.target), x.object_map, x.morphism_map)
    if isinstance(x, NatTrans2Cell):
        return NatTrans2Cell(op_dual(x.target_functor), op_dual(x.source_functor), x.components)
    raise TypeError(f"op_dual does not apply to {type(x).__name__}")


def coproduct_objects(names: Iterable[str]) -> FinCategory:
    """Discrete category on the given objects."""
    return build_category(list(names), {}, lambda g, f: None)


def product_index(*sizes):
    return product(*(range(n) for n in sizes))
