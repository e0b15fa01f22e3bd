"""Shipped example categories."""

from __future__ import annotations

import itertools

from .fincat import FinCategory, poset_category, product_category


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_poset(n=12) -> FinCategory:
    """Divisors of n ordered by divisibility; pullbacks are gcds, 1 is initial, n terminal."""
    return poset_category(divisors(n), lambda a, b: b % a == 0, name=f"D{n}")


def chain(n) -> FinCategory:
    """The ordinal [n] = {0 < 1 < ... < n}."""
    return poset_category(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def point() -> FinCategory:
    return chain(0)


def walking_arrow() -> FinCategory:
    return chain(1)


def lambda20() -> FinCategory:
    """The horn 1 <- 0 -> 2, written with arrows 0->1 and 0->2."""
    return poset_category([0, 1, 2], lambda a, b: a == b or a == 0, name="Λ20")


def walking_square() -> FinCategory:
    return product_category(walking_arrow(), walking_arrow())[0]


def cyclic_group(n=2) -> FinCategory:
    """The cyclic group of order n as a one-object groupoid; Z/2 has e and s."""
    names = ["e", "s"] if n == 2 else [f"g{k}" for k in range(n)]
    table = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
    return FinCategory(["*"], [(m, "*", "*") for m in names], {"*": names[0]}, table,
                       name=f"Z/{n}")


def z2() -> FinCategory:
    return cyclic_group(2)


def function_label(a, b, images):
    return f"{a}->{b}:" + "".join(map(str, images))


def finset(k) -> FinCategory:
    """Full subcategory of finite sets on {0}, {1}, ..., {k} elements."""
    objects = list(range(k + 1))
    funcs = {(a, b): list(itertools.product(range(b), repeat=a)) for a in objects for b in objects}
    morphisms = [(function_label(a, b, f), a, b) for (a, b), fs in funcs.items() for f in fs]
    table = {}
    for (a, b), fs in funcs.items():
        for c in objects:
            for f in fs:
                for g in funcs[(b, c)]:
                    h = tuple(g[i] for i in f)
                    table[(function_label(b, c, g), function_label(a, b, f))] = \
                        function_label(a, c, h)
    identities = {a: function_label(a, a, tuple(range(a))) for a in objects}
    return FinCategory(objects, morphisms, identities, table, name=f"FinSet<={k}")


def finset3() -> FinCategory:
    return finset(3)


def finset2() -> FinCategory:
    return finset(2)


CATEGORY_FIXTURES = {
    "d12": divisor_poset,
    "z2": z2,
    "finset3": finset3,
    "finset2": finset2,
    "walking-arrow": walking_arrow,
    "lambda20": lambda20,
    "walking-square": walking_square,
    "point": point,
}


def fixture(name: str) -> FinCategory:
    key = name.lower().replace("_", "-")
    aliases = {"[0]": "point", "[1]": "walking-arrow", "z/2": "z2", "finset<=3": "finset3",
               "finset<=2": "finset2"}
    key = aliases.get(key, key)
    if key not in CATEGORY_FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(CATEGORY_FIXTURES))}")
    return CATEGORY_FIXTURES[key]()


# Cat-valued functors on C × D^op ---------------------------------------------

def _cat_valued(C, D, value, action, name):
    from .fib import CatValuedFunctor
    from .fincat import Functor, opposite
    Dop = opposite(D)
    S = product_category(C, Dop)[0]
    values = {o: value(*o) for o in S.objects}
    actions = {}
    for m in S.morphisms:
        a, b = m
        src = (C.src(a), Dop.src(b))
        tgt = (C.tgt(a), Dop.tgt(b))
        V, W = values[src], values[tgt]
        obj = action(a, b, src, tgt)
        actions[m] = Functor(V, W, {x: obj(x) for x in V.objects},
                             {f: _mor_image(V, W, obj, f) for f in V.morphisms})
    return CatValuedFunctor(S, values, actions, factors=(C, Dop), name=name)


def _mor_image(V, W, obj, f):
    """Image of f under a functor into a poset determined by its object map."""
    hits = W.hom(obj(V.src(f)), obj(V.tgt(f)))
    return hits[0]


def constant_point_functor():
    """Constant [0] on [1] × [1]^op."""
    pt = point()
    return _cat_valued(walking_arrow(), walking_arrow(), lambda c, d: pt,
                       lambda a, b, s, t: (lambda x: 0), "const")


def single_value_functor(X=None):
    """C = D = [0] with value X (default Λ20)."""
    X = X or lambda20()
    return _cat_valued(point(), point(), lambda c, d: X, lambda a, b, s, t: (lambda x: x),
                       "single")


def hom_functor(C=None):
    """(c, d) ↦ the discrete category Hom(d, c); arrows act by composing on both sides."""
    from .fincat import discrete_category
    C = C or divisor_poset()
    values = {}

    def value(c, d):
        if (c, d) not in values:
            values[(c, d)] = discrete_category(C.hom(d, c), name=f"Hom({d},{c})")
        return values[(c, d)]

    def action(a, b, s, t):
        # b: s[1] -> t[1] in D^op is an arrow t[1] -> s[1] of C
        return lambda x: C.compose(a, C.compose(x, b))

    return _cat_valued(C, C, value, action, "hom")


def _two_level(right_map, name):
    """H(0, e) = [0], H(1, e) = [1]; α picks 0, and the arrow of [1]^op acts on H(1, ·) by ``right_map``."""
    pt, arr = point(), walking_arrow()

    def value(c, d):
        return pt if c == 0 else arr

    def action(a, b, s, t):
        if s[0] == 0 and t[0] == 1:
            return lambda x: 0
        if s[0] == 1 and s[1] != t[1]:
            return right_map
        return lambda x: x

    return _cat_valued(walking_arrow(), walking_arrow(), value, action, name)


def adjointable_functor():
    """Nontrivial transitions whose squares are all right adjointable."""
    return _two_level(lambda x: x, "adjointable")


def non_adjointable_functor():
    """Like :func:`adjointable_functor` but the [1]^op arrow collapses H(1, ·) to 0;
    the mate of the resulting square is the non-invertible arrow 0 -> 1."""
    return _two_level(lambda x: 0, "non-adjointable")


CAT_VALUED_FIXTURES = {
    "const": constant_point_functor,
    "single": single_value_functor,
    "hom": hom_functor,
    "adjointable": adjointable_functor,
    "non-adjointable": non_adjointable_functor,
}


def bc_counterexample():
    """A bivariant fibration over (walking square) × [0] failing Beck-Chevalley.

    Cocartesian unstraightening of H on the square with H(0,0) = H(0,1) = [0],
    H(1,0) = H(1,1) = [1], the top and bottom arrows picking 0 and the right
    arrow collapsing [1] to 0.  Every transition has a right adjoint, but the
    mate of the square itself is 0 -> 1.
    """
    from .fib import unstraighten_cocartesian
    W = walking_square()
    pt, arr = point(), walking_arrow()

    def value(w, _):
        return pt if w[0] == 0 else arr

    def action(a, b, s, t):
        (i0, j0), (i1, j1) = s[0], t[0]
        if i0 == 0 and i1 == 1:
            return lambda x: 0
        if i0 == 1 and j0 != j1:
            return lambda x: 0
        return lambda x: x

    return unstraighten_cocartesian(_cat_valued(W, pt, value, action, "bc-counterexample"))


# strict 2-categories -----------------------------------------------------------

def point_2cat():
    """One object, one 1-cell, one 2-cell."""
    from .twocat_bc import Strict2Cat
    P = point()
    return Strict2Cat.from_operations(["*"], {("*", "*"): P}, {"*": 0},
                                      lambda f, g: 0, lambda s, t: "0->0", name="pt")


def _ends(label):
    a, b = label.split("->")
    return int(a), int(b)


def delooped_meet_monoid(n=12):
    """One object; 1-cells are the divisors of n composed by gcd, 2-cells divisibility.

    The unit 1-cell is n, so f ⊣ g forces n | gcd(f, g): only n has a right adjoint.
    """
    from math import gcd
    from .twocat_bc import Strict2Cat
    H = divisor_poset(n)

    def compose2(s, t):
        (a, b), (c, d) = _ends(s.name), _ends(t.name)
        return f"{gcd(a, c)}->{gcd(b, d)}"

    return Strict2Cat.from_operations(["*"], {("*", "*"): H}, {"*": n},
                                      lambda f, g: gcd(f.name, g.name), compose2,
                                      name=f"B(D{n},gcd)")


def meet_map(d, n=12):
    """x ↦ gcd(d, x) on the divisors of n, as a tuple of images."""
    from math import gcd
    return tuple(gcd(d, x) for x in divisors(n))


def implication_map(d, n=12):
    """x ↦ the largest y with gcd(d, y) | x."""
    from math import gcd
    D = divisors(n)
    return tuple(max(y for y in D if x % gcd(d, y) == 0) for x in D)


def _compose_maps(f, g, n):
    D = divisors(n)
    return tuple(g[D.index(v)] for v in f)


def meet_translations_2cat(n=12):
    """One object; 1-cells are the monotone self-maps of the divisors of n generated
    by the meet translations and their implications, 2-cells the pointwise order."""
    from .twocat_bc import Strict2Cat
    cells = {meet_map(d, n) for d in divisors(n)} | {implication_map(d, n) for d in divisors(n)}
    frontier = list(cells)
    while frontier:
        new = []
        for f in frontier:
            for g in list(cells):
                for h in (_compose_maps(f, g, n), _compose_maps(g, f, n)):
                    if h not in cells:
                        cells.add(h)
                        new.append(h)
        frontier = new
    cells = sorted(cells)
    leq = lambda f, g: all(y % x == 0 for x, y in zip(f, g))
    H = poset_category(cells, leq, name=f"Mon(D{n})", label=lambda a, b: (a, b))
    identity = tuple(divisors(n))
    return Strict2Cat.from_operations(
        ["*"], {("*", "*"): H}, {"*": identity},
        lambda f, g: _compose_maps(f.name, g.name, n),
        lambda s, t: (_compose_maps(s.name[0], t.name[0], n), _compose_maps(s.name[1], t.name[1], n)),
        name=f"End(D{n})")


def broken_interchange_2cat():
    """One object and one 1-cell with 2-cells Z/2, but s∘s is composed horizontally to s."""
    from .twocat_bc import Strict2Cat
    G = z2()

    def compose2(s, t):
        if s.name == "e":
            return t.name
        if t.name == "e":
            return s.name
        return "s"

    return Strict2Cat.from_operations(["*"], {("*", "*"): G}, {"*": "*"},
                                      lambda f, g: "*", compose2, name="broken")


TWO_CAT_FIXTURES = {
    "point": point_2cat,
    "meet-monoid": delooped_meet_monoid,
    "meet-translations": meet_translations_2cat,
    "broken-interchange": broken_interchange_2cat,
}
