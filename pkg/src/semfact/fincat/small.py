"""A handful of tiny categories and functors used everywhere."""

from .core import FinFunctor, build_category, make_functor


def empty_category():
    return build_category([], {}, lambda g, f: None, provenance="0")


def terminal():
    return build_category(["*"], {}, lambda g, f: None, provenance="1")


def discrete(n):
    return build_category([str(i) for i in range(n)], {}, lambda g, f: None,
                          provenance=f"disc{n}")


def poset(n):
    """The ordinal n = {0 < 1 < ... < n-1}; arrows are named "ij"."""
    objs = [str(i) for i in range(n)]
    arrows = {f"{i}{j}": (str(i), str(j)) for i in range(n) for j in range(i + 1, n)}

    def comp(g, f):
        i, j = f[0], g[1]
        return f"{i}{j}"

    return build_category(objs, arrows, comp, provenance=str(n))


def arrow_category():
    return poset(2)


def terminal_functor(C):
    one = terminal()
    return FinFunctor(C, one, {x: "*" for x in C.objects}, {m: "id:*" for m in C.morphisms})


def d0_functor():
    """1 → 2 picking 1."""
    return make_functor(terminal(), poset(2), {"*": "1"})


def d1_functor():
    """1 → 2 picking 0."""
    return make_functor(terminal(), poset(2), {"*": "0"})


def s0_functor():
    return terminal_functor(poset(2))


def cyclic_group(n):
    """Z/n on one object; generator powers are named "g1".."g{n-1}"."""
    arrows = {f"g{i}": ("*", "*") for i in range(1, n)}

    def comp(g, f):
        k = (int(g[1:]) + int(f[1:])) % n
        return "id:*" if k == 0 else f"g{k}"

    return build_category(["*"], arrows, comp, provenance=f"Z/{n}")


def idempotent_monoid():
    return build_category(["*"], {"e": ("*", "*")}, lambda g, f: "e", provenance="{1,e}")


def parallel_pair():
    return build_category(["0", "1"], {"u": ("0", "1"), "v": ("0", "1")},
                          lambda g, f: None, provenance="parallel pair")


def walking_iso():
    arrows = {"i": ("0", "1"), "j": ("1", "0")}
    return build_category(["0", "1"], arrows,
                          lambda g, f: "id:0" if (g, f) == ("j", "i") else "id:1",
                          provenance="walking iso")


def span():
    """0 <- 1 -> 2."""
    return build_category(["0", "1", "2"], {"l": ("1", "0"), "r": ("1", "2")},
                          lambda g, f: None, provenance="span")


def cospan():
    """0 -> 1 <- 2."""
    return build_category(["0", "1", "2"], {"l": ("0", "1"), "r": ("2", "1")},
                          lambda g, f: None, provenance="cospan")


def arrow_plus_point():
    return build_category(["0", "1", "2"], {"01": ("0", "1")},
                          lambda g, f: None, provenance="2+1")


def split_idempotent():
    """r∘s = id_1, s∘r = e idempotent on 0."""
    arrows = {"e": ("0", "0"), "r": ("0", "1"), "s": ("1", "0")}
    table = {
        ("e", "e"): "e", ("r", "e"): "r", ("e", "s"): "s",
        ("r", "s"): "id:1", ("s", "r"): "e",
    }
    return build_category(["0", "1"], arrows, lambda g, f: table[(g, f)],
                          provenance="split idempotent")
