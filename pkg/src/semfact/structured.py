"""Categories of objects-with-structure over a base category.

Both descent data and algebras have this shape: objects carry an underlying
base object, and morphisms are base morphisms satisfying a condition.
"""

from .fincat.core import FinFunctor, build_category


class Structured:
    def __init__(self, base, objects, admits, provenance=None):
        """``objects`` is a list of (name, underlying object) pairs."""
        self.base = base
        self.under_obj = dict(objects)
        self.under = {}
        self.lookup = {}
        arrows = {}
        names = sorted(self.under_obj)
        for s in names:
            for t in names:
                for m in base.hom(self.under_obj[s], self.under_obj[t]):
                    if s == t and base.is_identity(m):
                        name = "id:" + s
                    elif admits(m, s, t):
                        name = f"{s}-{m}->{t}"
                        arrows[name] = (s, t)
                    else:
                        continue
                    self.under[name] = m
                    self.lookup[(s, t, m)] = name

        def compose(g, f):
            return self.lookup[(self.src[f], self.dst[g], base.compose(self.under[g], self.under[f]))]

        self.src = {n: st[0] for n, st in arrows.items()}
        self.dst = {n: st[1] for n, st in arrows.items()}
        for s in names:
            self.src["id:" + s] = s
            self.dst["id:" + s] = s
        self.category = build_category(names, arrows, compose, provenance)

    def forgetful(self) -> FinFunctor:
        return FinFunctor(self.category, self.base, self.under_obj, self.under)
