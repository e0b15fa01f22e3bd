"""Fibrations over finite bases.

A :class:`FiberedFunctor` is a functor p: E -> B, usually with B = C × D.
Two-sided notions use the convention "cocartesian over the first factor,
cartesian over the second"; :func:`flip` swaps the factors to get the other
orientation.  Everything is decided by enumeration on index tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

from .fincat import (
    FinCategory,
    Functor,
    Verdict,
    check_functor,
    compose_functors,
    cospans_i,
    find_isomorphism,
    functor_op,
    inverse_i,
    opposite,
    product_category,
    pullback_i,
    terminal_object,
)
from .fixtures import chain, lambda20
from .functors import functor_category, iter_functors, mate, right_adjoint
from .limits import CapExceeded, CategoryError


# fibered functors ----------------------------------------------------------

class FiberedFunctor:
    """p: total -> base, with ``factors = (C, D)`` when base is C × D."""

    def __init__(self, total: FinCategory, base: FinCategory, projection: Functor,
                 factors=None, name="p"):
        if projection.source is not total or projection.target is not base:
            raise CategoryError("projection does not go from total to base")
        v = check_functor(projection)
        if not v:
            raise CategoryError(f"projection is not a functor: {v.witness}")
        self.total, self.base, self.projection = total, base, projection
        self.name = name
        self.factors = factors
        self.Pob, self.Pmor = projection.ob_i, projection.mor_i
        self._cache = {}
        if factors is not None:
            C, D = factors
            P, pr1, pr2 = product_category(C, D)
            if P is not base:
                raise CategoryError("base is not the product of the given factors")
            self.pair_ob = list(zip(pr1.ob_i, pr2.ob_i))
            self.pair_mor = list(zip(pr1.mor_i, pr2.mor_i))
            self.mor_of_pair = {pm: u for u, pm in enumerate(self.pair_mor)}

    def __repr__(self):
        return f"FiberedFunctor({self.name}: {self.total.name} -> {self.base.name})"

    def component(self, k):
        """The k-th factor projection total -> factor (k = 0 or 1)."""
        pr = product_category(*self.factors)[1 + k]
        return compose_functors(pr, self.projection)

    def cocartesian_flags(self):
        if "cocart" not in self._cache:
            self._cache["cocart"] = [_is_cocartesian(self.total, self.base, self.Pob, self.Pmor, f)
                                     for f in range(self.total.n_mor)]
        return self._cache["cocart"]

    def cartesian_flags(self):
        if "cart" not in self._cache:
            E, B = opposite(self.total), opposite(self.base)
            self._cache["cart"] = [_is_cocartesian(E, B, self.Pob, self.Pmor, f)
                                   for f in range(self.total.n_mor)]
        return self._cache["cart"]


def _is_cocartesian(E: FinCategory, B: FinCategory, Pob, Pmor, f: int) -> bool:
    """Unique lifting: h̄ ↦ (p(h̄), h̄∘f) is a bijection onto the pairs (h, g) with h∘p(f) = p(g)."""
    e, e1 = E.srcs[f], E.tgts[f]
    u = Pmor[f]
    b1 = Pob[e1]
    for e2 in range(E.n_obj):
        seen = set()
        for hb in E.hom_i(e1, e2):
            key = (Pmor[hb], E.table[(hb, f)])
            if key in seen:
                return False
            seen.add(key)
        for g in E.hom_i(e, e2):
            pg = Pmor[g]
            for h in B.hom_i(b1, Pob[e2]):
                if B.table[(h, u)] == pg and (h, g) not in seen:
                    return False
    return True


def is_cocartesian_arrow(p: FiberedFunctor, f) -> bool:
    return p.cocartesian_flags()[p.total.midx(f)]


def is_cartesian_arrow(p: FiberedFunctor, f) -> bool:
    return p.cartesian_flags()[p.total.midx(f)]


def relative(p: FiberedFunctor, k: int) -> FiberedFunctor:
    """The composite of p with the k-th factor projection, as a fibered functor."""
    F = p.component(k)
    return FiberedFunctor(p.total, F.target, F, name=f"{p.name}_{k + 1}")


def flip(p: FiberedFunctor) -> FiberedFunctor:
    """The same functor with the base factors swapped: (p2, p1) over D × C."""
    C, D = p.factors
    Q = product_category(D, C)[0]
    ob = [Q.oidx((D.objects[d], C.objects[c])) for c, d in (p.pair_ob[b] for b in p.Pob)]
    mor = [Q.midx((D.morphisms[d], C.morphisms[c])) for c, d in (p.pair_mor[u] for u in p.Pmor)]
    F = Functor.from_indices(p.total, Q, ob, mor, name=f"{p.name}^flip")
    return FiberedFunctor(p.total, Q, F, factors=(D, C), name=f"{p.name}^flip")


def extract_fiber(p: FiberedFunctor, point) -> FinCategory:
    """Objects over ``point`` and the morphisms over its identity."""
    B, E = p.base, p.total
    b = B.oidx(point)
    return _fiber(p, b, B.ids[b], f"{E.name}|{point!r}")


def _fiber(p, b, idb, name, ob_test=None, mor_test=None):
    E = p.total
    ob_test = ob_test or (lambda e: p.Pob[e] == b)
    mor_test = mor_test or (lambda f: p.Pmor[f] == idb)
    objs = [e for e in range(E.n_obj) if ob_test(e)]
    keep = set(objs)
    mors = [f for f in range(E.n_mor) if E.srcs[f] in keep and mor_test(f)]
    ms = set(mors)
    em, eo = E.morphisms, E.objects
    table = {(em[g], em[f]): em[h] for (g, f), h in E.table.items() if g in ms and f in ms}
    return FinCategory([eo[e] for e in objs], [(em[f], eo[E.srcs[f]], eo[E.tgts[f]]) for f in mors],
                       {eo[e]: em[E.ids[e]] for e in objs}, table, name=name, derived=True,
                       fill_units=False)


def fibers(p: FiberedFunctor):
    return {point: extract_fiber(p, point) for point in p.base.objects}


def is_groupoid(C: FinCategory) -> bool:
    return all(inverse_i(C, f) is not None for f in range(C.n_mor))


# lifts and bicartesian arrows ---------------------------------------------

def _cocart_lift(p, e, u):
    flags = p.cocartesian_flags()
    for f in p.total.out[e]:
        if p.Pmor[f] == u and flags[f]:
            return f
    return None


def _cart_lift(p, e, u):
    flags = p.cartesian_flags()
    for f in p.total.inc[e]:
        if p.Pmor[f] == u and flags[f]:
            return f
    return None


def cocartesian_lift(p: FiberedFunctor, e, u):
    f = _cocart_lift(p, p.total.oidx(e), p.base.midx(u))
    return None if f is None else p.total.morphisms[f]


def cartesian_lift(p: FiberedFunctor, e, u):
    f = _cart_lift(p, p.total.oidx(e), p.base.midx(u))
    return None if f is None else p.total.morphisms[f]


def _first_factor_arrows(p):
    """(object, base arrow (α, id_d)) for every object and every α out of its C-part."""
    C, D = p.factors
    for e in range(p.total.n_obj):
        c, d = p.pair_ob[p.Pob[e]]
        for a in C.out[c]:
            yield e, p.mor_of_pair[(a, D.ids[d])]


def _second_factor_arrows(p):
    """(object, base arrow (id_c, β)) for every object and every β into its D-part."""
    C, D = p.factors
    for e in range(p.total.n_obj):
        c, d = p.pair_ob[p.Pob[e]]
        for b in D.inc[d]:
            yield e, p.mor_of_pair[(C.ids[c], b)]


def lax_two_sided(p: FiberedFunctor) -> Verdict:
    E, B = p.total, p.base
    for e, u in _first_factor_arrows(p):
        if _cocart_lift(p, e, u) is None:
            return Verdict(False, ("no cocartesian lift", E.objects[e], B.morphisms[u]))
    for e, u in _second_factor_arrows(p):
        if _cart_lift(p, e, u) is None:
            return Verdict(False, ("no cartesian lift", E.objects[e], B.morphisms[u]))
    return Verdict(True)


def _factor_through(E, Pmor, f, through, over):
    """The unique k with k∘through = f and p(k) = over."""
    hits = [k for k in E.hom_i(E.tgts[through], E.tgts[f])
            if Pmor[k] == over and E.table[(k, through)] == f]
    return hits[0] if len(hits) == 1 else None


def _factor_into(E, Pmor, f, into, over):
    """The unique z with into∘z = f and p(z) = over."""
    hits = [z for z in E.hom_i(E.srcs[f], E.srcs[into])
            if Pmor[z] == over and E.table[(into, z)] == f]
    return hits[0] if len(hits) == 1 else None


def bicartesian_flags(p: FiberedFunctor):
    """Per arrow: is it p-bicartesian (needs p lax two-sided)."""
    if "bicart" in p._cache:
        return p._cache["bicart"]
    E = p.total
    C, D = p.factors
    out = []
    for f in range(E.n_mor):
        e = E.srcs[f]
        a, b = p.pair_mor[p.Pmor[f]]
        c, d = p.pair_ob[p.Pob[e]]
        c1, d1 = p.pair_ob[p.Pob[E.tgts[f]]]
        lift = _cocart_lift(p, e, p.mor_of_pair[(a, D.ids[d])])
        clift = _cart_lift(p, E.tgts[f], p.mor_of_pair[(C.ids[c1], b)])
        if lift is None or clift is None:
            raise CategoryError("bicartesian test needs a lax two-sided fibration")
        k = _factor_through(E, p.Pmor, f, lift, p.mor_of_pair[(C.ids[c1], b)])
        z = _factor_into(E, p.Pmor, k, clift, p.base.ids[p.Pob[E.tgts[lift]]])
        out.append(z is not None and inverse_i(E, z) is not None)
    p._cache["bicart"] = out
    return out


def is_bicartesian_arrow(p: FiberedFunctor, f) -> bool:
    return bicartesian_flags(p)[p.total.midx(f)]


def two_sided(p: FiberedFunctor) -> Verdict:
    v = lax_two_sided(p)
    if not v:
        return v
    E = p.total
    bic = bicartesian_flags(p)
    for (g, f), h in E.table.items():
        if bic[g] and bic[f] and not bic[h]:
            return Verdict(False, ("bicartesian composite", E.morphisms[g], E.morphisms[f]))
    return Verdict(True)


def _fibration(p, lift, arrows):
    E, B = p.total, p.base
    for e in range(E.n_obj):
        for u in arrows(p.Pob[e]):
            if lift(p, e, u) is None:
                return Verdict(False, (E.objects[e], B.morphisms[u]))
    return Verdict(True)


def is_cocartesian_fibration(p: FiberedFunctor) -> Verdict:
    return _fibration(p, _cocart_lift, lambda b: p.base.out[b])


def is_cartesian_fibration(p: FiberedFunctor) -> Verdict:
    return _fibration(p, _cart_lift, lambda b: p.base.inc[b])


# classification -------------------------------------------------------------

FLAGS = ("cocartesian", "cartesian", "lax_two_sided", "two_sided", "lax_two_sided_reverse",
         "two_sided_reverse", "groupoid_fibers", "bifibration", "bivariant", "beck_chevalley")


@dataclass(frozen=True)
class FibrationReport:
    flags: dict
    witnesses: dict = field(default_factory=dict)

    def __getattr__(self, name):
        flags = object.__getattribute__(self, "flags")
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def consistent(self) -> bool:
        f = self.flags
        if f["bivariant"] and not (f["lax_two_sided"] and f["two_sided"]
                                   and f["lax_two_sided_reverse"] and f["two_sided_reverse"]):
            return False
        if f["bifibration"] and not f["groupoid_fibers"]:
            return False
        return not f["two_sided"] or f["lax_two_sided"]


def classify_fibration(p: FiberedFunctor, beck_chevalley=True) -> FibrationReport:
    if p.factors is None:
        raise CategoryError("classification needs a product base")
    flags, wit = {}, {}

    def put(name, v):
        flags[name] = bool(v)
        if not v:
            wit[name] = v.witness

    put("cocartesian", is_cocartesian_fibration(p))
    put("cartesian", is_cartesian_fibration(p))
    put("lax_two_sided", lax_two_sided(p))
    put("two_sided", two_sided(p) if flags["lax_two_sided"] else Verdict(False, "not lax"))
    q = flip(p)
    put("lax_two_sided_reverse", lax_two_sided(q))
    put("two_sided_reverse",
        two_sided(q) if flags["lax_two_sided_reverse"] else Verdict(False, "not lax"))
    bad = next(((pt, f) for pt, F in fibers(p).items()
                for f in F.morphisms if inverse_i(F, F.midx(f)) is None), None)
    put("groupoid_fibers", Verdict(bad is None, bad))
    put("bifibration", Verdict(flags["two_sided"] and flags["groupoid_fibers"],
                               "not two-sided" if not flags["two_sided"] else "fiber not a groupoid"))
    biv = all(flags[k] for k in ("cocartesian", "cartesian", "two_sided", "two_sided_reverse"))
    put("bivariant", Verdict(biv, None if biv else "a bivariant flag failed"))
    if beck_chevalley:
        put("beck_chevalley", beck_chevalley_fibration(p) if biv
            else Verdict(False, "requires a bivariant fibration"))
    else:
        flags["beck_chevalley"] = None
    return FibrationReport(flags, wit)


# base change and Beck-Chevalley -------------------------------------------------

def base_change(p: FiberedFunctor, F: Functor, factors=None, name=None) -> FiberedFunctor:
    """Pullback of p along F: A -> base.  Objects (a, e), morphisms (u, f) with p(f) = F(u)."""
    A, E = F.source, p.total
    if F.target is not p.base:
        raise CategoryError("base change functor does not land in the base")
    over = {}
    for e in range(E.n_obj):
        over.setdefault(p.Pob[e], []).append(e)
    mover = {}
    for f in range(E.n_mor):
        mover.setdefault(p.Pmor[f], []).append(f)
    objs = [(a, e) for a in range(A.n_obj) for e in over.get(F.ob_i[a], ())]
    oid = {o: i for i, o in enumerate(objs)}
    mors = [(u, f) for u in range(A.n_mor) for f in mover.get(F.mor_i[u], ())]
    mid = {m: i for i, m in enumerate(mors)}
    ao, am, eo, em = A.objects, A.morphisms, E.objects, E.morphisms
    srcs = [oid[(A.srcs[u], E.srcs[f])] for u, f in mors]
    tgts = [oid[(A.tgts[u], E.tgts[f])] for u, f in mors]
    ids = [mid[(A.ids[a], E.ids[e])] for a, e in objs]
    table = {}
    by_src = {}
    for k in range(len(mors)):
        by_src.setdefault(srcs[k], []).append(k)
    for k, (u, f) in enumerate(mors):
        for l in by_src.get(tgts[k], ()):
            v, g = mors[l]
            table[(l, k)] = mid[(A.table[(v, u)], E.table[(g, f)])]
    T = FinCategory.build([(ao[a], eo[e]) for a, e in objs], [(am[u], em[f]) for u, f in mors],
                          srcs, tgts, ids, table, name=name or f"{F.name}*{E.name}")
    P = Functor.from_indices(T, A, [a for a, _ in objs], [u for u, _ in mors], name="pr")
    return FiberedFunctor(T, A, P, factors=factors, name=f"{F.name}*{p.name}")


@cache
def walking_square_base():
    arrow = chain(1)
    W = product_category(arrow, arrow)[0]
    return W, arrow


def square_functor(B: FinCategory, top, left, right, bottom) -> Functor:
    """The functor [1]×[1] -> B of the square right∘top = bottom∘left.

    (0,0) is the common source, (1,0) the target of ``top``, (0,1) the
    target of ``left``, (1,1) the common target.
    """
    W, arrow = walking_square_base()
    t, l, r, b = (B.midx(x) for x in (top, left, right, bottom))
    corner = {(0, 0): B.srcs[t], (1, 0): B.tgts[t], (0, 1): B.tgts[l], (1, 1): B.tgts[r]}
    hor = {0: t, 1: b}
    ver = {0: l, 1: r}
    ob = [corner[w] for w in W.objects]
    mor = []
    for (h, v) in W.morphisms:
        i0, i1 = (int(x) for x in h.split("->"))
        j0, j1 = (int(x) for x in v.split("->"))
        m = B.ids[corner[(i0, j0)]]
        if i1 != i0:
            m = hor[j0]
        if j1 != j0:
            m = B.table[(ver[i1], m)]
        mor.append(m)
    F = Functor.from_indices(W, B, ob, mor, name="square")
    v = check_functor(F)
    if not v:
        raise CategoryError(f"square does not commute: {v.witness}")
    return F


def _cartesian_squares(K: FinCategory):
    """(top, left, right, bottom) index tuples of the chosen pullback squares of K."""
    for f, g in cospans_i(K):
        pb = pullback_i(K, f, g)
        if pb is not None:
            _, pl, pr = pb
            yield pr, pl, g, f


def reduced_bc_squares(p: FiberedFunctor):
    """Cartesian squares of the base that are constant in one coordinate."""
    C, D = p.factors
    B = p.base
    for t, l, r, b in _cartesian_squares(C):
        for d in range(D.n_obj):
            i = D.ids[d]
            yield ("first", d), tuple(p.mor_of_pair[(x, i)] for x in (t, l, r, b))
    for t, l, r, b in _cartesian_squares(D):
        for c in range(C.n_obj):
            i = C.ids[c]
            yield ("second", c), tuple(p.mor_of_pair[(i, x)] for x in (t, l, r, b))


def beck_chevalley_fibration(p: FiberedFunctor) -> Verdict:
    """Base change along each one-coordinate-constant cartesian square is bivariant."""
    B = p.base
    W, arrow = walking_square_base()
    for where, sq in reduced_bc_squares(p):
        F = square_functor(B, *(B.morphisms[x] for x in sq))
        q = base_change(p, F, factors=(arrow, arrow))
        rep = classify_fibration(q, beck_chevalley=False)
        if not rep.bivariant:
            failed = [k for k in ("cocartesian", "cartesian", "two_sided", "two_sided_reverse")
                      if not rep.flags[k]]
            return Verdict(False, {"square": [B.morphisms[x] for x in sq], "failed": failed})
    return Verdict(True)


# standard fibrations ------------------------------------------------------------

def arrow_fibration(C: FinCategory) -> FiberedFunctor:
    """(ev1, ev0): Funct([1], C) -> C × C."""
    J = chain(1)
    A = functor_category(J, C, name=f"Arr({C.name})")
    B = product_category(C, C)[0]
    j0, j1 = J.oidx(0), J.oidx(1)
    ob = [B.oidx((C.objects[A.evaluate(x, j1)], C.objects[A.evaluate(x, j0)]))
          for x in range(A.n_obj)]
    cm = C.morphisms
    mor = [B.midx((cm[c[j1]], cm[c[j0]])) for c in A.components]
    P = Functor.from_indices(A, B, ob, mor, name="(ev1,ev0)")
    return FiberedFunctor(A, B, P, factors=(C, C), name=f"arr({C.name})")


def span_fibration(C: FinCategory) -> FiberedFunctor:
    """(ev1, ev2): Funct(Λ20, C) -> C × C."""
    J = lambda20()
    S = functor_category(J, C, name=f"Span({C.name})")
    B = product_category(C, C)[0]
    j1, j2 = J.oidx(1), J.oidx(2)
    ob = [B.oidx((C.objects[S.evaluate(x, j1)], C.objects[S.evaluate(x, j2)]))
          for x in range(S.n_obj)]
    cm = C.morphisms
    mor = [B.midx((cm[c[j1]], cm[c[j2]])) for c in S.components]
    P = Functor.from_indices(S, B, ob, mor, name="(ev1,ev2)")
    return FiberedFunctor(S, B, P, factors=(C, C), name=f"span({C.name})")


def cocyl(F: Functor) -> FiberedFunctor:
    """Mapping cocylinder: pairs (c, σ: x -> F c), projected to (c, x)."""
    C, D = F.source, F.target
    arr = arrow_fibration(D)
    A = arr.total
    J = A.shape
    j0, j1 = J.oidx(0), J.oidx(1)
    objs = [(c, x) for c in range(C.n_obj) for x in range(A.n_obj)
            if A.evaluate(x, j1) == F.ob_i[c]]
    oid = {o: i for i, o in enumerate(objs)}
    mors = [(u, k) for u in range(C.n_mor) for k in range(A.n_mor)
            if A.components[k][j1] == F.mor_i[u]
            and (C.srcs[u], A.srcs[k]) in oid and (C.tgts[u], A.tgts[k]) in oid]
    mid = {m: i for i, m in enumerate(mors)}
    srcs = [oid[(C.srcs[u], A.srcs[k])] for u, k in mors]
    tgts = [oid[(C.tgts[u], A.tgts[k])] for u, k in mors]
    ids = [mid[(C.ids[c], A.ids[x])] for c, x in objs]
    by_src = {}
    for i in range(len(mors)):
        by_src.setdefault(srcs[i], []).append(i)
    table = {}
    for i, (u, k) in enumerate(mors):
        for l in by_src.get(tgts[i], ()):
            v, m = mors[l]
            table[(l, i)] = mid[(C.table[(v, u)], A.table[(m, k)])]
    T = FinCategory.build([(C.objects[c], A.objects[x]) for c, x in objs],
                          [(C.morphisms[u], A.morphisms[k]) for u, k in mors],
                          srcs, tgts, ids, table, name=f"Cocyl({F.name})")
    B = product_category(C, D)[0]
    ob = [B.oidx((C.objects[c], D.objects[A.evaluate(x, j0)])) for c, x in objs]
    mor = [B.midx((C.morphisms[u], D.morphisms[A.components[k][j0]])) for u, k in mors]
    P = Functor.from_indices(T, B, ob, mor, name="cocyl")
    return FiberedFunctor(T, B, P, factors=(C, D), name=f"cocyl({F.name})")


def representing_objects(p: FiberedFunctor):
    """For each c, the D-part of a final object of the fiber over c (or None)."""
    C, D = p.factors
    out = {}
    for c in range(C.n_obj):
        F = _fiber(p, None, None, f"fiber {C.objects[c]!r}",
                   ob_test=lambda e: p.pair_ob[p.Pob[e]][0] == c,
                   mor_test=lambda f: p.pair_mor[p.Pmor[f]][0] == C.ids[c])
        t = terminal_object(F)
        out[C.objects[c]] = None if t is None else D.objects[p.pair_ob[p.Pob[p.total.oidx(t)]][1]]
    return out


def is_representable_bifibration(p: FiberedFunctor) -> Verdict:
    rep = classify_fibration(p, beck_chevalley=False)
    if not rep.bifibration:
        raise CategoryError("representability is only defined for bifibrations")
    objs = representing_objects(p)
    missing = [c for c, d in objs.items() if d is None]
    if missing:
        return Verdict(False, missing[0], "fiber has no final object")
    return Verdict(True, objs)


# Cat-valued functors ------------------------------------------------------------

class CatValuedFunctor:
    """A strict functor from ``source`` into finite categories.

    ``values`` maps objects of the source to FinCategories, ``actions``
    maps morphisms to Functors.  ``factors`` records a product decomposition
    of the source.
    """

    def __init__(self, source: FinCategory, values, actions, factors=None, name="H"):
        self.source, self.name, self.factors = source, name, factors
        self.values = [values[o] for o in source.objects]
        self.actions = [actions[m] for m in source.morphisms]
        v = self.validate()
        if not v:
            raise CategoryError(f"{name} is not a strict functor: {v.witness}")

    def value(self, obj) -> FinCategory:
        return self.values[self.source.oidx(obj)]

    def act(self, mor) -> Functor:
        return self.actions[self.source.midx(mor)]

    def validate(self) -> Verdict:
        S = self.source
        for u in range(S.n_mor):
            F = self.actions[u]
            if F.source is not self.values[S.srcs[u]] or F.target is not self.values[S.tgts[u]]:
                return Verdict(False, ("typing", S.morphisms[u]))
            if not check_functor(F):
                return Verdict(False, ("not a functor", S.morphisms[u]))
        for x in range(S.n_obj):
            F = self.actions[S.ids[x]]
            if F.ob_i != list(range(F.source.n_obj)) or F.mor_i != list(range(F.source.n_mor)):
                return Verdict(False, ("identity", S.objects[x]))
        for (v, u), w in S.table.items():
            G = compose_functors(self.actions[v], self.actions[u])
            H = self.actions[w]
            if G.ob_i != H.ob_i or G.mor_i != H.mor_i:
                return Verdict(False, ("composition", (S.morphisms[v], S.morphisms[u])))
        return Verdict(True)


def unstraighten_cocartesian(H: CatValuedFunctor) -> FiberedFunctor:
    """Cocartesian unstraightening: objects (b, x), morphisms (u, φ: H(u)x -> x')."""
    S = H.source
    objs = [(b, x) for b in range(S.n_obj) for x in range(H.values[b].n_obj)]
    oid = {o: i for i, o in enumerate(objs)}
    mors, srcs, tgts = [], [], []
    for u in range(S.n_mor):
        F = H.actions[u]
        V = H.values[S.tgts[u]]
        for x in range(F.source.n_obj):
            for phi in V.out[F.ob_i[x]]:
                mors.append((u, x, phi))
                srcs.append(oid[(S.srcs[u], x)])
                tgts.append(oid[(S.tgts[u], V.tgts[phi])])
    mid = {m: i for i, m in enumerate(mors)}
    ids = [mid[(S.ids[b], x, H.values[b].ids[x])] for b, x in objs]
    by_src = {}
    for i in range(len(mors)):
        by_src.setdefault(srcs[i], []).append(i)
    table = {}
    for i, (u, x, phi) in enumerate(mors):
        for l in by_src.get(tgts[i], ()):
            v, _, psi = mors[l]
            W = H.values[S.tgts[v]]
            table[(l, i)] = mid[(S.table[(v, u)], x, W.table[(psi, H.actions[v].mor_i[phi])])]
    so, sm = S.objects, S.morphisms
    label_o = lambda b, x: (so[b], H.values[b].objects[x])
    T = FinCategory.build(
        [label_o(b, x) for b, x in objs],
        [(label_o(*objs[srcs[i]]), label_o(*objs[tgts[i]]), sm[u], H.values[S.tgts[u]].morphisms[phi])
         for i, (u, x, phi) in enumerate(mors)],
        srcs, tgts, ids, table, name=f"∫{H.name}")
    P = Functor.from_indices(T, S, [b for b, _ in objs], [u for u, _, _ in mors], name="pr")
    return FiberedFunctor(T, S, P, factors=H.factors, name=f"cocart({H.name})")


def grothendieck_two_sided(H: CatValuedFunctor) -> FiberedFunctor:
    """Two-sided Grothendieck construction of H: C × D^op -> Cat, fibered over C × D.

    A morphism (c,d,x) -> (c',d',x') over (α, β) is an arrow
    H(α, id_d)(x) -> H(id_c', β)(x') of H(c', d).
    """
    C, Dop = H.factors
    D = opposite(Dop)
    S = H.source
    pair = {}
    P0, pr1, pr2 = product_category(C, Dop)
    if P0 is not S:
        raise CategoryError("source of H is not C × D^op")
    for u in range(S.n_mor):
        pair[(pr1.mor_i[u], pr2.mor_i[u])] = u
    obpair = {(pr1.ob_i[b], pr2.ob_i[b]): b for b in range(S.n_obj)}
    objs = [(c, d, x) for c in range(C.n_obj) for d in range(D.n_obj)
            for x in range(H.values[obpair[(c, d)]].n_obj)]
    oid = {o: i for i, o in enumerate(objs)}
    act = H.actions

    def left(a, d):          # H(α, id_d)
        return act[pair[(a, D.ids[d])]]

    def right(c, b):         # H(id_c, β) as an arrow of D^op
        return act[pair[(C.ids[c], b)]]

    mors, srcs, tgts = [], [], []
    for i, (c, d, x) in enumerate(objs):
        for a in C.out[c]:
            c1 = C.tgts[a]
            V = H.values[obpair[(c1, d)]]
            sx = left(a, d).ob_i[x]
            for b in D.out[d]:
                d1 = D.tgts[b]
                R = right(c1, b)
                for x1 in range(R.source.n_obj):
                    for phi in V.hom_i(sx, R.ob_i[x1]):
                        mors.append((i, oid[(c1, d1, x1)], a, b, phi))
                        srcs.append(i)
                        tgts.append(oid[(c1, d1, x1)])
    mid = {m: k for k, m in enumerate(mors)}
    ids = [mid[(i, i, C.ids[c], D.ids[d], H.values[obpair[(c, d)]].ids[x])]
           for i, (c, d, x) in enumerate(objs)]
    by_src = {}
    for k in range(len(mors)):
        by_src.setdefault(srcs[k], []).append(k)
    table = {}
    for k, (i, j, a, b, phi) in enumerate(mors):
        c, d, _ = objs[i]
        for l in by_src.get(j, ()):
            _, j2, a2, b2, psi = mors[l]
            c2 = objs[j2][0]
            V = H.values[obpair[(c2, d)]]
            first = left(a2, d).mor_i[phi]               # H(α', id_d)(φ)
            second = right(c2, b).mor_i[psi]             # H(id, β)(ψ)
            comp = V.table[(second, first)]
            table[(l, k)] = mid[(i, j2, C.table[(a2, a)], D.table[(b2, b)], comp)]
    co, do = C.objects, D.objects
    lab = lambda i: (co[objs[i][0]], do[objs[i][1]],
                     H.values[obpair[objs[i][:2]]].objects[objs[i][2]])
    T = FinCategory.build(
        [lab(i) for i in range(len(objs))],
        [(lab(i), lab(j), C.morphisms[a], D.morphisms[b],
          H.values[obpair[(objs[j][0], objs[i][1])]].morphisms[phi])
         for i, j, a, b, phi in mors],
        srcs, tgts, ids, table, name=f"∫∫{H.name}")
    B = product_category(C, D)[0]
    ob = [B.oidx((co[c], do[d])) for c, d, _ in objs]
    mor = [B.midx((C.morphisms[a], D.morphisms[b])) for _, _, a, b, _ in mors]
    P = Functor.from_indices(T, B, ob, mor, name="pr")
    return FiberedFunctor(T, B, P, factors=(C, D), name=f"groth({H.name})")


def grothendieck_fiber_value(H: CatValuedFunctor, c, d) -> FinCategory:
    """H(c, d) for the (c, d) fiber of the two-sided construction."""
    return H.value((c, d))


def transport_functor(p: FiberedFunctor, alpha, d) -> Functor:
    """The functor fiber(c, d) -> fiber(c', d) induced by chosen cocartesian lifts of (α, id_d)."""
    C, D = p.factors
    a, di = C.midx(alpha), D.oidx(d)
    c, c1 = C.srcs[a], C.tgts[a]
    E, B = p.total, p.base
    src = extract_fiber(p, (C.objects[c], d))
    tgt = extract_fiber(p, (C.objects[c1], d))
    u = p.mor_of_pair[(a, D.ids[di])]
    lift = {}
    for x in src.objects:
        e = E.oidx(x)
        f = _cocart_lift(p, e, u)
        if f is None:
            raise CategoryError(f"no cocartesian lift of {B.morphisms[u]!r} from {x!r}")
        lift[x] = f
    ob = {x: E.objects[E.tgts[lift[x]]] for x in src.objects}
    mor = {}
    for m in src.morphisms:
        k = E.midx(m)
        s, t = src.src(m), src.tgt(m)
        g = E.table[(lift[t], k)]
        k2 = _factor_through(E, p.Pmor, g, lift[s], B.ids[p.Pob[E.tgts[lift[s]]]])
        mor[m] = E.morphisms[k2]
    return Functor(src, tgt, ob, mor, name=f"transport({alpha!r})")


# adjointability of Cat-valued functors -------------------------------------------

def functor_adjointable(H: CatValuedFunctor, coordinate="second", side="right") -> Verdict:
    """Every square H(α, β) is vertically right (or left) adjointable.

    ``coordinate`` names the factor whose arrows are the verticals.
    """
    C, D = H.factors
    S = H.source
    _, pr1, pr2 = product_category(C, D)
    pair = {(pr1.mor_i[u], pr2.mor_i[u]): u for u in range(S.n_mor)}
    act = H.actions if side == "right" else [functor_op(F) for F in H.actions]
    adjoints = {}

    def adjoint(u):
        if u not in adjoints:
            adjoints[u] = right_adjoint(act[u])
        return adjoints[u]

    for a in range(C.n_mor):
        for b in range(D.n_mor):
            c, c1, d, d1 = C.srcs[a], C.tgts[a], D.srcs[b], D.tgts[b]
            h0, h1 = pair[(a, D.ids[d])], pair[(a, D.ids[d1])]
            v0, v1 = pair[(C.ids[c], b)], pair[(C.ids[c1], b)]
            if coordinate == "second":
                top, left, right, bottom = h0, v0, v1, h1
            else:
                top, left, right, bottom = v0, h0, h1, v1
            where = (C.morphisms[a], D.morphisms[b])
            ar, al = adjoint(right), adjoint(left)
            if ar is None or al is None:
                return Verdict(False, {"square": where, "stage": "missing adjoint"})
            comps = mate(act[top], act[left], act[right], act[bottom], ar, al)
            E10 = act[top].target
            for y, m in enumerate(comps):
                if inverse_i(E10, m) is None:
                    return Verdict(False, {"square": where, "stage": "mate not invertible",
                                           "object": act[left].target.objects[y],
                                           "component": E10.morphisms[m]})
    return Verdict(True)


# morphisms of fibrations and universal properties -----------------------------------

def fibration_morphism_check(F: Functor, p: FiberedFunctor, q: FiberedFunctor,
                             kind="two-sided") -> Verdict:
    """Does F: p.total -> q.total over the common base preserve the arrow class of ``kind``?

    kind: cocartesian, cartesian, bicartesian / two-sided, bivariant.
    """
    if p.base is not q.base:
        raise CategoryError("fibrations live over different bases")
    G = compose_functors(q.projection, F)
    if G.ob_i != list(p.Pob) or G.mor_i != list(p.Pmor):
        raise CategoryError("projection mismatch: q∘F differs from p")
    classes = {
        "cocartesian": [(p.cocartesian_flags, q.cocartesian_flags)],
        "cartesian": [(p.cartesian_flags, q.cartesian_flags)],
        "bicartesian": [(lambda: bicartesian_flags(p), lambda: bicartesian_flags(q))],
        "bivariant": [(p.cocartesian_flags, q.cocartesian_flags),
                      (p.cartesian_flags, q.cartesian_flags)],
    }
    classes["two-sided"] = classes["bicartesian"]
    if kind not in classes:
        raise ValueError(f"unknown kind {kind!r}")
    for src, dst in classes[kind]:
        a, b = src(), dst()
        for f in range(p.total.n_mor):
            if a[f] and not b[F.mor_i[f]]:
                return Verdict(False, p.total.morphisms[f], f"{kind} arrow not preserved")
    return Verdict(True)


def span_from_arrow(C: FinCategory, p=None, q=None) -> Functor:
    """φ: Funct([1], C) -> Funct(Λ20, C), precomposition with 0↦0, 1↦1, 2↦0."""
    p = p or arrow_fibration(C)
    q = q or span_fibration(C)
    A, S = p.total, q.total
    J, K = A.shape, S.shape
    # Λ20 arrows in terms of [1] arrows
    img = {}
    for m in K.morphisms:
        a, b = (int(x) for x in m.split("->"))
        a2, b2 = (0 if a in (0, 2) else 1), (0 if b in (0, 2) else 1)
        img[K.midx(m)] = J.midx(f"{a2}->{b2}")
    obj_index = {t: i for i, t in enumerate(S.tables)}
    ob = [obj_index[tuple(t[img[k]] for k in range(K.n_mor))] for t in A.tables]
    mor_index = {(S.srcs[k], S.tgts[k], c): k for k, c in enumerate(S.components)}
    node = {j: J.oidx(0 if K.objects[j] in (0, 2) else 1) for j in range(K.n_obj)}
    mor = [mor_index[(ob[A.srcs[k]], ob[A.tgts[k]], tuple(c[node[j]] for j in range(K.n_obj)))]
           for k, c in enumerate(A.components)]
    return Functor.from_indices(A, S, ob, mor, name="phi")


def arrow_from_object(C: FinCategory, p=None) -> Functor:
    """ψ: C -> Funct([1], C), c ↦ id_c."""
    p = p or arrow_fibration(C)
    A = p.total
    J = A.shape
    obj_index = {t: i for i, t in enumerate(A.tables)}
    ob = [obj_index[tuple(C.ids[c] for _ in range(J.n_mor))] for c in range(C.n_obj)]
    mor_index = {(A.srcs[k], A.tgts[k], c): k for k, c in enumerate(A.components)}
    mor = [mor_index[(ob[C.srcs[u]], ob[C.tgts[u]], (u,) * J.n_obj)] for u in range(C.n_mor)]
    return Functor.from_indices(C, A, ob, mor, name="psi")


def _maps_over(src: FinCategory, ob_over, mor_over, r: FiberedFunctor):
    """Every functor src -> r.total lying over the given base assignment."""
    over = {}
    for e in range(r.total.n_obj):
        over.setdefault(r.Pob[e], []).append(e)

    def candidates(x, obj, img):
        return over.get(ob_over[x], ())

    for t in iter_functors(src, r.total, candidates=candidates,
                           mor_ok=lambda m, g: r.Pmor[g] == mor_over[m]):
        ob = [r.total.srcs[t[src.ids[x]]] for x in range(src.n_obj)]
        yield Functor.from_indices(src, r.total, ob, t, name="G")


def _check_cap(C, limit=8):
    if C.n_mor > limit:
        raise CapExceeded(f"{C.name} has {C.n_mor} morphisms; universal checks are capped at {limit}")


@dataclass(frozen=True)
class BijectionReport:
    ok: bool
    domain_size: int
    codomain_size: int
    detail: str = ""

    def __bool__(self):
        return self.ok


def _is_bijection(dom, cod, fn):
    image = [fn(x) for x in dom]
    codset = set(cod)
    if len(set(image)) != len(image):
        return BijectionReport(False, len(dom), len(cod), "not injective")
    if set(image) != codset:
        return BijectionReport(False, len(dom), len(cod), "image differs from the target set")
    return BijectionReport(True, len(dom), len(cod))


def _key(F: Functor):
    return tuple(F.ob_i), tuple(F.mor_i)


def univer_span_bijection(C: FinCategory, r: FiberedFunctor) -> BijectionReport:
    """Precomposition with φ: cocartesian two-sided maps q -> r  ≅  two-sided maps p -> r."""
    _check_cap(C)
    p, q = arrow_fibration(C), span_fibration(C)
    if r.base is not q.base:
        raise CategoryError("r must live over C × C")
    phi = span_from_arrow(C, p, q)
    lhs = [F for F in _maps_over(q.total, q.Pob, q.Pmor, r)
           if fibration_morphism_check(F, q, r, "cocartesian")
           and fibration_morphism_check(F, q, r, "two-sided")]
    rhs = [G for G in _maps_over(p.total, p.Pob, p.Pmor, r)
           if fibration_morphism_check(G, p, r, "two-sided")]
    return _is_bijection(lhs, {_key(G) for G in rhs},
                         lambda F: _key(compose_functors(F, phi)))


def univer_arrow_bijection(C: FinCategory, r: FiberedFunctor) -> BijectionReport:
    """Precomposition with ψ: two-sided maps p -> r  ≅  maps Δ -> r sending arrows to bicartesian ones."""
    _check_cap(C)
    p = arrow_fibration(C)
    if r.base is not p.base:
        raise CategoryError("r must live over C × C")
    psi = arrow_from_object(C, p)
    B = p.base
    diag_ob = [B.oidx((c, c)) for c in C.objects]
    diag_mor = [B.midx((m, m)) for m in C.morphisms]
    bic = bicartesian_flags(r)
    lhs = [G for G in _maps_over(p.total, p.Pob, p.Pmor, r)
           if fibration_morphism_check(G, p, r, "two-sided")]
    rhs = [K for K in _maps_over(C, diag_ob, diag_mor, r) if all(bic[g] for g in K.mor_i)]
    return _is_bijection(lhs, {_key(K) for K in rhs},
                         lambda G: _key(compose_functors(G, psi)))


def total_isomorphic(p: FiberedFunctor, q: FiberedFunctor):
    """An isomorphism between total categories found by search (projections ignored)."""
    return find_isomorphism(p.total, q.total)
