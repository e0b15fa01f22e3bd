"""Finite categories stored as explicit composition tables.

Every universal property (isomorphisms, terminal objects, pullbacks,
products) is decided by brute-force enumeration.  Internally objects and
morphisms are addressed by their position in the defining lists; the public
functions speak in identifiers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

from .limits import (
    CapExceeded,
    CategoryError,
    CompositionError,
    MissingLimit,
    current_limits,
)

Obj = Hashable
Mor = Hashable


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer together with the evidence behind it."""

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok


class FinCategory:
    """A category given by enumerated objects, morphisms and a composition table.

    ``morphisms`` is an iterable of ``(id, source, target)`` triples and
    ``composition`` either a mapping ``(g, f) -> g∘f`` or an iterable of
    ``(g, f, gf)`` triples.  Entries involving identities may be omitted;
    they are filled in unless ``fill_units`` is false.  The laws are not
    checked here, see :func:`validate_category`.
    """

    def __init__(self, objects, morphisms, identities, composition, *,
                 name="C", derived=False, fill_units=True):
        objects = tuple(objects)
        morphisms = tuple(morphisms)
        lim = current_limits()
        max_o = lim.max_derived_objects if derived else lim.max_objects
        max_m = lim.max_derived_morphisms if derived else lim.max_morphisms
        if len(objects) > max_o or len(morphisms) > max_m:
            raise CapExceeded(
                f"category {name!r} has {len(objects)} objects / {len(morphisms)} "
                f"morphisms, cap is {max_o} / {max_m}")
        self.name = name
        self.derived = derived
        self.objects = objects
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self._oi = {}
        for i, o in enumerate(objects):
            self._oi.setdefault(o, i)
        self._mi = {}
        for i, m in enumerate(self.morphisms):
            self._mi.setdefault(m, i)
        self.srcs = []
        self.tgts = []
        for m, s, t in morphisms:
            if s not in self._oi or t not in self._oi:
                raise CategoryError(f"morphism {m!r} has unknown endpoint ({s!r}, {t!r})")
            self.srcs.append(self._oi[s])
            self.tgts.append(self._oi[t])
        self.ids = []
        for o in objects:
            if o not in identities:
                raise CategoryError(f"object {o!r} has no identity")
            if identities[o] not in self._mi:
                raise CategoryError(f"identity {identities[o]!r} of {o!r} is not a morphism")
            self.ids.append(self._mi[identities[o]])
        items = composition.items() if isinstance(composition, Mapping) else (
            ((g, f), h) for g, f, h in composition)
        table = {}
        for (g, f), h in items:
            try:
                table[(self._mi[g], self._mi[f])] = self._mi[h]
            except KeyError as exc:
                raise CategoryError(
                    f"composition entry ({g!r}, {f!r}) -> {h!r} names unknown morphism "
                    f"{exc.args[0]!r}") from None
        if fill_units:
            for i in range(len(self.morphisms)):
                table.setdefault((self.ids[self.tgts[i]], i), i)
                table.setdefault((i, self.ids[self.srcs[i]]), i)
        self.table = table
        hom = {}
        out = [[] for _ in objects]
        inc = [[] for _ in objects]
        for i in range(len(self.morphisms)):
            s, t = self.srcs[i], self.tgts[i]
            hom.setdefault((s, t), []).append(i)
            out[s].append(i)
            inc[t].append(i)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self.out = [tuple(v) for v in out]
        self.inc = [tuple(v) for v in inc]
        # memo for pure derived data (pullbacks, isos, opposite, ...)
        self._cache = {}

    @classmethod
    def build(cls, objects, morphisms, srcs, tgts, ids, table, *, name="C", derived=True,
              **extra):
        """Construct directly from index data (no unit filling, no id lookups)."""
        lim = current_limits()
        max_o = lim.max_derived_objects if derived else lim.max_objects
        max_m = lim.max_derived_morphisms if derived else lim.max_morphisms
        if len(objects) > max_o or len(morphisms) > max_m:
            raise CapExceeded(
                f"category {name!r} has {len(objects)} objects / {len(morphisms)} "
                f"morphisms, cap is {max_o} / {max_m}")
        C = cls.__new__(cls)
        C.name, C.derived = name, derived
        C.objects, C.morphisms = tuple(objects), tuple(morphisms)
        C._oi = {o: i for i, o in enumerate(C.objects)}
        C._mi = {m: i for i, m in enumerate(C.morphisms)}
        C.srcs, C.tgts, C.ids, C.table = list(srcs), list(tgts), list(ids), table
        hom = {}
        out = [[] for _ in C.objects]
        inc = [[] for _ in C.objects]
        for i in range(len(C.morphisms)):
            s, t = C.srcs[i], C.tgts[i]
            hom.setdefault((s, t), []).append(i)
            out[s].append(i)
            inc[t].append(i)
        C._hom = {k: tuple(v) for k, v in hom.items()}
        C.out = [tuple(v) for v in out]
        C.inc = [tuple(v) for v in inc]
        C._cache = {}
        for k, v in extra.items():
            setattr(C, k, v)
        return C

    # index-level interface ------------------------------------------------
    @property
    def n_obj(self):
        return len(self.objects)

    @property
    def n_mor(self):
        return len(self.morphisms)

    def oidx(self, o):
        try:
            return self._oi[o]
        except (KeyError, TypeError):
            raise CategoryError(f"{o!r} is not an object of {self.name}") from None

    def midx(self, m):
        try:
            return self._mi[m]
        except (KeyError, TypeError):
            raise CategoryError(f"{m!r} is not a morphism of {self.name}") from None

    def hom_i(self, a, b):
        return self._hom.get((a, b), ())

    def comp_i(self, g, f):
        """Index of g∘f, raising if the pair is not composable."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise CompositionError(
                f"cannot compose {self.morphisms[g]!r} after {self.morphisms[f]!r} "
                f"in {self.name}") from None

    # identifier interface -------------------------------------------------
    def src(self, f):
        return self.objects[self.srcs[self.midx(f)]]

    def tgt(self, f):
        return self.objects[self.tgts[self.midx(f)]]

    def identity(self, c):
        return self.morphisms[self.ids[self.oidx(c)]]

    def is_identity(self, f):
        i = self.midx(f)
        return self.ids[self.srcs[i]] == i

    def hom(self, a, b):
        return tuple(self.morphisms[i] for i in self.hom_i(self.oidx(a), self.oidx(b)))

    def compose(self, g, f):
        gi, fi = self.midx(g), self.midx(f)
        if self.tgts[fi] != self.srcs[gi]:
            raise CompositionError(f"{g!r} ∘ {f!r}: target of {f!r} is not the source of {g!r}")
        return self.morphisms[self.comp_i(gi, fi)]

    def composition(self):
        return {(self.morphisms[g], self.morphisms[f]): self.morphisms[h]
                for (g, f), h in self.table.items()}

    def identities(self):
        return {o: self.morphisms[self.ids[i]] for i, o in enumerate(self.objects)}

    def morphism_triples(self):
        return [(m, self.objects[self.srcs[i]], self.objects[self.tgts[i]])
                for i, m in enumerate(self.morphisms)]

    def __repr__(self):
        return f"FinCategory({self.name!r}, {self.n_obj} objects, {self.n_mor} morphisms)"


def compose(C: FinCategory, g, f):
    return C.compose(g, f)


def structurally_equal(C: FinCategory, D: FinCategory) -> bool:
    return (C.objects == D.objects
            and C.morphism_triples() == D.morphism_triples()
            and C.identities() == D.identities()
            and C.composition() == D.composition())


# validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    message: str = ""


def validate_category(C: FinCategory) -> list[Violation]:
    """Every violated category law, each with a witness; empty iff C is a category."""
    report = []
    for kind, ids in (("duplicate object", C.objects), ("duplicate morphism", C.morphisms)):
        for x, n in Counter(ids).items():
            if n > 1:
                report.append(Violation(kind, (x,), f"{x!r} occurs {n} times"))
    for o in range(C.n_obj):
        i = C.ids[o]
        if C.srcs[i] != o or C.tgts[i] != o:
            report.append(Violation("identity typing", (C.objects[o], C.morphisms[i])))
    for (g, f), h in sorted(C.table.items()):
        if C.tgts[f] != C.srcs[g]:
            report.append(Violation("typing", (C.morphisms[g], C.morphisms[f]),
                                    "entry for a non-composable pair"))
        elif C.srcs[h] != C.srcs[f] or C.tgts[h] != C.tgts[g]:
            report.append(Violation("typing", (C.morphisms[g], C.morphisms[f]),
                                    f"result {C.morphisms[h]!r} has the wrong endpoints"))
    for f in range(C.n_mor):
        for g in C.out[C.tgts[f]]:
            if (g, f) not in C.table:
                report.append(Violation("totality", (C.morphisms[g], C.morphisms[f]),
                                        "composable pair missing from the table"))
    for f in range(C.n_mor):
        s, t = C.srcs[f], C.tgts[f]
        if C.table.get((C.ids[t], f)) != f:
            report.append(Violation("left identity", (C.morphisms[C.ids[t]], C.morphisms[f])))
        if C.table.get((f, C.ids[s])) != f:
            report.append(Violation("right identity", (C.morphisms[f], C.morphisms[C.ids[s]])))
    for f in range(C.n_mor):
        for g in C.out[C.tgts[f]]:
            gf = C.table.get((g, f))
            for h in C.out[C.tgts[g]]:
                hg = C.table.get((h, g))
                if gf is None or hg is None:
                    continue
                lhs, rhs = C.table.get((h, gf)), C.table.get((hg, f))
                if lhs != rhs:
                    report.append(Violation(
                        "associativity", (C.morphisms[h], C.morphisms[g], C.morphisms[f])))
    return report


# isomorphisms --------------------------------------------------------------

def inverse_i(C: FinCategory, f: int):
    """Index of the inverse of f, or None."""
    cache = C._cache.setdefault("inv", {})
    if f not in cache:
        s, t = C.srcs[f], C.tgts[f]
        cache[f] = None
        for g in C.hom_i(t, s):
            if C.table.get((g, f)) == C.ids[s] and C.table.get((f, g)) == C.ids[t]:
                cache[f] = g
                break
    return cache[f]


def is_iso(C: FinCategory, f) -> Verdict:
    g = inverse_i(C, C.midx(f))
    if g is None:
        return Verdict(False, None, f"{f!r} has no inverse")
    return Verdict(True, C.morphisms[g])


def iso_classes(C: FinCategory) -> list[int]:
    """For each object index, the smallest index of an isomorphic object."""
    if "isocls" not in C._cache:
        rep = list(range(C.n_obj))
        for a in range(C.n_obj):
            if rep[a] != a:
                continue
            for b in range(a + 1, C.n_obj):
                if rep[b] == b and any(inverse_i(C, f) is not None for f in C.hom_i(a, b)):
                    rep[b] = a
        C._cache["isocls"] = rep
    return C._cache["isocls"]


# pullbacks -----------------------------------------------------------------

@dataclass(frozen=True)
class Cospan:
    left: Mor   # x -> s
    right: Mor  # y -> s


@dataclass(frozen=True)
class PullbackData:
    apex: Obj
    proj_left: Mor   # apex -> x
    proj_right: Mor  # apex -> y
    cospan: Cospan


def _cones(C, f, g):
    """All commuting cones (q, a, b) over the cospan (f, g), grouped by q."""
    x, y = C.srcs[f], C.srcs[g]
    cones = {}
    for q in range(C.n_obj):
        hx, hy = C.hom_i(q, x), C.hom_i(q, y)
        if not hx or not hy:
            continue
        by_value = {}
        for b in hy:
            by_value.setdefault(C.table[(g, b)], []).append(b)
        pairs = [(a, b) for a in hx for b in by_value.get(C.table[(f, a)], ())]
        if pairs:
            cones[q] = pairs
    return cones


def _universal(C, cones, p, u, v):
    for q, pairs in cones.items():
        counts = Counter((C.table[(u, m)], C.table[(v, m)]) for m in C.hom_i(q, p))
        for ab in pairs:
            if counts.get(ab) != 1:
                return False
    return True


def pullback_i(C: FinCategory, f: int, g: int):
    """Chosen pullback (apex, proj_f, proj_g) of the cospan (f, g), or None.

    Candidates are scanned by apex index, then projection indices, so the
    choice is deterministic.
    """
    if C.tgts[f] != C.tgts[g]:
        raise CompositionError(
            f"{C.morphisms[f]!r} and {C.morphisms[g]!r} do not form a cospan")
    cache = C._cache.setdefault("pb", {})
    key = (f, g)
    if key not in cache:
        cones = _cones(C, f, g)
        found = None
        for p, pairs in cones.items():
            for u, v in pairs:
                if _universal(C, cones, p, u, v):
                    found = (p, u, v)
                    break
            if found:
                break
        cache[key] = found
    return cache[key]


def pullback(C: FinCategory, cs: Cospan) -> PullbackData | None:
    res = pullback_i(C, C.midx(cs.left), C.midx(cs.right))
    if res is None:
        return None
    p, u, v = res
    return PullbackData(C.objects[p], C.morphisms[u], C.morphisms[v], cs)


def mediators_i(C, p, u, v, q, a, b):
    return [m for m in C.hom_i(q, p) if C.table[(u, m)] == a and C.table[(v, m)] == b]


def mediate_i(C, f, g, q, a, b):
    """Unique map from the cone (q, a, b) into the chosen pullback of (f, g)."""
    pb = pullback_i(C, f, g)
    if pb is None:
        raise MissingLimit(f"no pullback of ({C.morphisms[f]!r}, {C.morphisms[g]!r})",
                           (C.morphisms[f], C.morphisms[g]))
    if C.table.get((f, a)) != C.table.get((g, b)) or C.table.get((f, a)) is None:
        raise CompositionError("cone does not commute over the cospan")
    ms = mediators_i(C, *pb, q, a, b)
    if len(ms) != 1:
        raise CategoryError(f"{len(ms)} mediating morphisms where exactly one was expected")
    return ms[0]


def mediating_morphism(C: FinCategory, pb: PullbackData, cone) -> Mor:
    q, a, b = cone
    f, g = C.midx(pb.cospan.left), C.midx(pb.cospan.right)
    ai, bi = C.midx(a), C.midx(b)
    if C.srcs[ai] != C.oidx(q) or C.srcs[bi] != C.oidx(q):
        raise CategoryError("cone legs do not start at the cone apex")
    if C.tgts[ai] != C.srcs[f] or C.tgts[bi] != C.srcs[g] or \
            C.table[(f, ai)] != C.table[(g, bi)]:
        raise CompositionError("cone does not commute over the cospan")
    ms = mediators_i(C, C.oidx(pb.apex), C.midx(pb.proj_left), C.midx(pb.proj_right),
                     C.oidx(q), ai, bi)
    if len(ms) != 1:
        raise CategoryError(
            f"corrupt pullback data: {len(ms)} mediating morphisms from {q!r}")
    return C.morphisms[ms[0]]


def is_pullback_cone_i(C, p, u, v, f, g) -> bool:
    """Whether (p, u, v) is a pullback cone over (f, g).

    A commuting cone is universal iff its mediator into the chosen pullback
    is an isomorphism.
    """
    if C.tgts[u] != C.srcs[f] or C.tgts[v] != C.srcs[g] or C.srcs[u] != p or C.srcs[v] != p:
        return False
    if C.table[(f, u)] != C.table[(g, v)]:
        return False
    pb = pullback_i(C, f, g)
    if pb is None:
        return False
    ms = mediators_i(C, *pb, p, u, v)
    return len(ms) == 1 and inverse_i(C, ms[0]) is not None


def is_pullback_square(C: FinCategory, apex, proj_left, proj_right, cs: Cospan) -> bool:
    return is_pullback_cone_i(C, C.oidx(apex), C.midx(proj_left), C.midx(proj_right),
                              C.midx(cs.left), C.midx(cs.right))


def cospans_i(C: FinCategory):
    """All cospans (f, g) in index order."""
    for s in range(C.n_obj):
        into = C.inc[s]
        for f in into:
            for g in into:
                yield f, g


# terminal objects and products ---------------------------------------------

def terminal_object(C: FinCategory):
    for t in range(C.n_obj):
        if all(len(C.hom_i(q, t)) == 1 for q in range(C.n_obj)):
            return C.objects[t]
    return None


def initial_object(C: FinCategory):
    for t in range(C.n_obj):
        if all(len(C.hom_i(t, q)) == 1 for q in range(C.n_obj)):
            return C.objects[t]
    return None


def to_terminal(C: FinCategory, x):
    t = terminal_object(C)
    if t is None:
        raise MissingLimit(f"{C.name} has no terminal object")
    return C.hom(x, t)[0]


def binary_product(C: FinCategory, x, y) -> PullbackData | None:
    """Product of x and y, computed as the pullback over the terminal object."""
    return pullback(C, Cospan(to_terminal(C, x), to_terminal(C, y)))


def product_arrow(C: FinCategory, x, y, cone):
    """The mediator (a, b): q -> x×y for a cone q -> x, q -> y."""
    pb = binary_product(C, x, y)
    if pb is None:
        raise MissingLimit(f"no product of {x!r} and {y!r}", (x, y))
    return mediating_morphism(C, pb, cone)


# constructions -------------------------------------------------------------

def opposite(C: FinCategory) -> FinCategory:
    if "op" not in C._cache:
        D = FinCategory(
            C.objects,
            [(m, t, s) for m, s, t in C.morphism_triples()],
            C.identities(),
            {(C.morphisms[f], C.morphisms[g]): C.morphisms[h] for (g, f), h in C.table.items()},
            name=f"{C.name}^op", derived=C.derived, fill_units=False)
        D._cache["op"] = C
        C._cache["op"] = D
    return C._cache["op"]


def product_category(C: FinCategory, D: FinCategory):
    """C × D with its two projections; objects and morphisms are pairs."""
    cache = C._cache.setdefault("prod", {})
    hit = cache.get(id(D))
    if hit is not None and hit[0] is D:
        return hit[1]
    objects = [(c, d) for c in C.objects for d in D.objects]
    morphisms = [((f, g), (C.objects[C.srcs[i]], D.objects[D.srcs[j]]),
                  (C.objects[C.tgts[i]], D.objects[D.tgts[j]]))
                 for i, f in enumerate(C.morphisms) for j, g in enumerate(D.morphisms)]
    identities = {(c, d): (C.morphisms[C.ids[a]], D.morphisms[D.ids[b]])
                  for a, c in enumerate(C.objects) for b, d in enumerate(D.objects)}
    cm, dm = C.morphisms, D.morphisms
    table = {((cm[g1], dm[g2]), (cm[f1], dm[f2])): (cm[h1], dm[h2])
             for (g1, f1), h1 in C.table.items() for (g2, f2), h2 in D.table.items()}
    P = FinCategory(objects, morphisms, identities, table,
                    name=f"{C.name}×{D.name}", derived=True, fill_units=False)
    pr1 = Functor(P, C, {o: o[0] for o in objects}, {m: m[0] for m, _, _ in morphisms})
    pr2 = Functor(P, D, {o: o[1] for o in objects}, {m: m[1] for m, _, _ in morphisms})
    cache[id(D)] = (D, (P, pr1, pr2))
    return P, pr1, pr2


def slice2(C: FinCategory, c, c2):
    """Spans c <- s -> c2 and apex maps between them, with the apex functor to C.

    Objects are triples (apex, left leg, right leg); morphisms are triples
    (source span, target span, apex map).
    """
    key = ("slice2", c, c2)
    if key in C._cache:
        return C._cache[key]
    a, b = C.oidx(c), C.oidx(c2)
    spans = [(s, l, r) for s in range(C.n_obj) for l in C.hom_i(s, a) for r in C.hom_i(s, b)]
    ob = lambda X: (C.objects[X[0]], C.morphisms[X[1]], C.morphisms[X[2]])
    by_apex = {}
    for X in spans:
        by_apex.setdefault(X[0], []).append(X)
    morphisms, forget = [], {}
    arrows = {}
    for X in spans:
        for m in C.out[X[0]]:
            for Y in by_apex.get(C.tgts[m], ()):
                if C.table[(Y[1], m)] == X[1] and C.table[(Y[2], m)] == X[2]:
                    mid = (ob(X), ob(Y), C.morphisms[m])
                    morphisms.append((mid, ob(X), ob(Y)))
                    forget[mid] = C.morphisms[m]
                    arrows[(X, Y, m)] = mid
    identities = {ob(X): (ob(X), ob(X), C.morphisms[C.ids[X[0]]]) for X in spans}
    table = {}
    out = {}
    for (X, Y, m), mid in arrows.items():
        out.setdefault(X, []).append((Y, m, mid))
    for (X, Y, m), mid in arrows.items():
        for Z, n, nid in out.get(Y, ()):
            table[(nid, mid)] = arrows[(X, Z, C.table[(n, m)])]
    S = FinCategory([ob(X) for X in spans], morphisms, identities, table,
                    name=f"{C.name}/{c!r},{c2!r}", derived=True, fill_units=False)
    U = Functor(S, C, {ob(X): C.objects[X[0]] for X in spans}, forget)
    C._cache[key] = (S, U)
    return S, U


def full_subcategory(C: FinCategory, objects, name=None) -> FinCategory:
    keep = set(objects)
    objs = [o for o in C.objects if o in keep]
    mors = [t for t in C.morphism_triples() if t[1] in keep and t[2] in keep]
    names = {m for m, _, _ in mors}
    table = {k: v for k, v in C.composition().items() if k[0] in names and k[1] in names}
    return FinCategory(objs, mors, {o: C.identity(o) for o in objs}, table,
                       name=name or f"{C.name}|sub", derived=C.derived, fill_units=False)


def poset_category(elements, leq, name="P", label=None) -> FinCategory:
    """The category of a finite poset: one arrow a -> b whenever leq(a, b)."""
    elements = list(elements)
    label = label or (lambda a, b: f"{a}->{b}")
    rel = [(a, b) for a in elements for b in elements if leq(a, b)]
    rels = set(rel)
    table = {(label(b, c), label(a, b)): label(a, c)
             for a, b in rel for b2, c in rel if b2 == b and (a, c) in rels}
    return FinCategory(elements, [(label(a, b), a, b) for a, b in rel],
                       {a: label(a, a) for a in elements}, table, name=name)


def discrete_category(elements, name="Disc") -> FinCategory:
    elements = list(elements)
    return FinCategory(elements, [(("id", x), x, x) for x in elements],
                       {x: ("id", x) for x in elements}, {}, name=name)


# functors ------------------------------------------------------------------

class Functor:
    """A map of finite categories, stored both by identifier and by index."""

    def __init__(self, source: FinCategory, target: FinCategory, objects: Mapping,
                 morphisms: Mapping, name="F"):
        self.source = source
        self.target = target
        self.name = name
        try:
            self.ob_i = [target.oidx(objects[o]) for o in source.objects]
            self.mor_i = [target.midx(morphisms[m]) for m in source.morphisms]
        except KeyError as exc:
            raise CategoryError(f"functor {name} is not total: missing {exc.args[0]!r}") from None

    @classmethod
    def from_indices(cls, source, target, ob_i, mor_i, name="F"):
        F = cls.__new__(cls)
        F.source, F.target, F.name = source, target, name
        F.ob_i, F.mor_i = list(ob_i), list(mor_i)
        return F

    def ob(self, x):
        return self.target.objects[self.ob_i[self.source.oidx(x)]]

    def mor(self, f):
        return self.target.morphisms[self.mor_i[self.source.midx(f)]]

    @property
    def obmap(self):
        return {o: self.target.objects[self.ob_i[i]] for i, o in enumerate(self.source.objects)}

    @property
    def mormap(self):
        return {m: self.target.morphisms[self.mor_i[i]]
                for i, m in enumerate(self.source.morphisms)}

    def __repr__(self):
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"


def functor_op(F: Functor) -> Functor:
    """F viewed as a functor between opposite categories (indices are shared)."""
    return Functor.from_indices(opposite(F.source), opposite(F.target), F.ob_i, F.mor_i,
                                name=f"{F.name}^op")


class NatTrans:
    """A natural transformation F => G, components stored by source-object index."""

    def __init__(self, source: Functor, target: Functor, components, name="eta"):
        self.source, self.target, self.name = source, target, name
        if isinstance(components, Mapping):
            D = source.target
            self.comp_i = [D.midx(components[x]) for x in source.source.objects]
        else:
            self.comp_i = list(components)

    def component(self, x):
        D = self.source.target
        return D.morphisms[self.comp_i[self.source.source.oidx(x)]]

    def __repr__(self):
        return f"NatTrans({self.name}: {self.source.name} => {self.target.name})"


def check_nat_trans(eta: NatTrans) -> Verdict:
    F, G = eta.source, eta.target
    C, D = F.source, F.target
    for x in range(C.n_obj):
        c = eta.comp_i[x]
        if D.srcs[c] != F.ob_i[x] or D.tgts[c] != G.ob_i[x]:
            return Verdict(False, ("typing", C.objects[x]))
    for f in range(C.n_mor):
        s, t = C.srcs[f], C.tgts[f]
        if D.table[(G.mor_i[f], eta.comp_i[s])] != D.table[(eta.comp_i[t], F.mor_i[f])]:
            return Verdict(False, ("naturality", C.morphisms[f]))
    return Verdict(True)


def is_invertible_nat_trans(eta: NatTrans) -> Verdict:
    D = eta.source.target
    for x, c in enumerate(eta.comp_i):
        if inverse_i(D, c) is None:
            return Verdict(False, eta.source.source.objects[x], "component is not invertible")
    return Verdict(True)


def identity_functor(C: FinCategory) -> Functor:
    return Functor.from_indices(C, C, range(C.n_obj), range(C.n_mor), name=f"id_{C.name}")


def constant_functor(C: FinCategory, D: FinCategory, d) -> Functor:
    j = D.oidx(d)
    return Functor.from_indices(C, D, [j] * C.n_obj, [D.ids[j]] * C.n_mor, name=f"const_{d}")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G∘F (apply F first)."""
    return Functor.from_indices(F.source, G.target, [G.ob_i[x] for x in F.ob_i],
                                [G.mor_i[f] for f in F.mor_i], name=f"{G.name}∘{F.name}")


def check_functor(F: Functor) -> Verdict:
    C, D = F.source, F.target
    for x in range(C.n_obj):
        if F.mor_i[C.ids[x]] != D.ids[F.ob_i[x]]:
            return Verdict(False, ("identity", C.objects[x]), "identity not preserved")
    for f in range(C.n_mor):
        g = F.mor_i[f]
        if D.srcs[g] != F.ob_i[C.srcs[f]] or D.tgts[g] != F.ob_i[C.tgts[f]]:
            return Verdict(False, ("typing", C.morphisms[f]), "source/target not preserved")
    for (g, f), h in C.table.items():
        if D.table.get((F.mor_i[g], F.mor_i[f])) != F.mor_i[h]:
            return Verdict(False, ("composition", (C.morphisms[g], C.morphisms[f])),
                           "composition not preserved")
    return Verdict(True)


def preserves_pullbacks(F: Functor) -> Verdict:
    if not check_functor(F):
        raise CategoryError(f"{F.name} is not a functor")
    C, D = F.source, F.target
    for f, g in cospans_i(C):
        pb = pullback_i(C, f, g)
        if pb is None:
            continue
        p, u, v = pb
        if not is_pullback_cone_i(D, F.ob_i[p], F.mor_i[u], F.mor_i[v], F.mor_i[f], F.mor_i[g]):
            return Verdict(False, Cospan(C.morphisms[f], C.morphisms[g]),
                           "image of a pullback square is not a pullback")
    return Verdict(True)


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    fully_faithful: bool
    essentially_surjective: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


def _hom_bijection_failure(F: Functor):
    C, D = F.source, F.target
    images = {}
    for f in range(C.n_mor):
        key = (C.srcs[f], C.tgts[f])
        images.setdefault(key, set()).add(F.mor_i[f])
    for key, imgs in images.items():
        if len(imgs) != len(C.hom_i(*key)):
            return ("not faithful", C.objects[key[0]], C.objects[key[1]])
    # counting argument: total image hom sizes equal source sizes iff all bijective
    pre = Counter(F.ob_i)
    total = sum(pre[D.srcs[h]] * pre[D.tgts[h]] for h in range(D.n_mor))
    if total == C.n_mor:
        return None
    for a in range(C.n_obj):
        for b in range(C.n_obj):
            if len(C.hom_i(a, b)) != len(D.hom_i(F.ob_i[a], F.ob_i[b])):
                return ("not full", C.objects[a], C.objects[b])
    return None


def is_equivalence(F: Functor) -> EquivalenceReport:
    """Fully faithful on every hom-set and essentially surjective."""
    C, D = F.source, F.target
    bad = _hom_bijection_failure(F)
    ff = bad is None
    rep = iso_classes(D)
    hit = {rep[y] for y in F.ob_i}
    missing = next((y for y in range(D.n_obj) if rep[y] not in hit), None)
    es = missing is None
    witness = bad if not ff else (None if es else ("not essentially surjective", D.objects[missing]))
    return EquivalenceReport(ff and es, ff, es, witness)


def is_isomorphism(F: Functor) -> bool:
    return (sorted(F.ob_i) == list(range(F.target.n_obj))
            and sorted(F.mor_i) == list(range(F.target.n_mor))
            and bool(check_functor(F)))


def find_isomorphism(C: FinCategory, D: FinCategory) -> Functor | None:
    """Search for an isomorphism of categories C -> D (small inputs only)."""
    if C.n_obj != D.n_obj or C.n_mor != D.n_mor:
        return None

    def signature(K, x):
        prof = sorted((len(K.hom_i(x, y)), len(K.hom_i(y, x))) for y in range(K.n_obj))
        return (len(K.hom_i(x, x)), tuple(prof))

    sig_c = [signature(C, x) for x in range(C.n_obj)]
    sig_d = [signature(D, y) for y in range(D.n_obj)]
    if sorted(sig_c) != sorted(sig_d):
        return None
    ob = [None] * C.n_obj
    used = [False] * D.n_obj

    def assign_objects(x):
        if x == C.n_obj:
            return assign_morphisms()
        for y in range(D.n_obj):
            if used[y] or sig_d[y] != sig_c[x]:
                continue
            if any(len(C.hom_i(x, z)) != len(D.hom_i(y, ob[z])) or
                   len(C.hom_i(z, x)) != len(D.hom_i(ob[z], y)) for z in range(x)):
                continue
            ob[x], used[y] = y, True
            res = assign_objects(x + 1)
            if res is not None:
                return res
            ob[x], used[y] = None, False
        return None

    def assign_morphisms():
        mor = [None] * C.n_mor
        for x in range(C.n_obj):
            mor[C.ids[x]] = D.ids[ob[x]]
        order = [f for f in range(C.n_mor) if mor[f] is None]
        taken = set(mor[C.ids[x]] for x in range(C.n_obj))

        def ok(f):
            for g in C.out[C.tgts[f]]:
                h = C.table.get((g, f))
                if mor[g] is not None and h is not None and mor[h] is not None:
                    if D.table.get((mor[g], mor[f])) != mor[h]:
                        return False
            for g in C.inc[C.srcs[f]]:
                h = C.table.get((f, g))
                if mor[g] is not None and h is not None and mor[h] is not None:
                    if D.table.get((mor[f], mor[g])) != mor[h]:
                        return False
            return True

        def step(k):
            if k == len(order):
                F = Functor.from_indices(C, D, ob, mor, name="iso")
                return F if check_functor(F) else None
            f = order[k]
            for g in D.hom_i(ob[C.srcs[f]], ob[C.tgts[f]]):
                if g in taken:
                    continue
                mor[f] = g
                taken.add(g)
                if ok(f):
                    res = step(k + 1)
                    if res is not None:
                        return res
                taken.discard(g)
                mor[f] = None
            return None

        return step(0)

    return assign_objects(0)
