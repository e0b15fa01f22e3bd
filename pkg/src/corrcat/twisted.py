"""Twisted arrow categories of [n], cartesian functors out of them, the level
categories of the correspondence Segal object, and its Segal check."""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (
    FinCategory,
    Functor,
    Verdict,
    cospans_i,
    full_subcategory,
    inverse_i,
    is_equivalence,
    is_pullback_cone_i,
    iso_classes,
    poset_category,
    pullback_i,
)
from .functors import FunctorCategory, functor_category, iter_functors, precompose
from .limits import CapExceeded, CategoryError, current_limits


def _tw_leq(a, b):
    (i, j), (k, l) = a, b
    return i <= k <= l <= j


@dataclass(frozen=True)
class TwShape:
    n: int
    carrier: FinCategory
    elementary: tuple
    spine: FinCategory = field(repr=False)

    def arrow(self, a, b):
        """The unique arrow a -> b of the carrier."""
        return (a, b)


def twisted_arrow(n: int) -> TwShape:
    """Tw([n]): objects (i, j) with i <= j, one arrow (i,j) -> (k,l) iff i <= k <= l <= j."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > current_limits().max_level:
        raise CapExceeded(f"level {n} exceeds the cap {current_limits().max_level}")
    objs = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    carrier = poset_category(objs, _tw_leq, name=f"Tw[{n}]", label=lambda a, b: (a, b))
    elementary = tuple((i, i + 1) for i in range(n))
    spine = full_subcategory(
        carrier, [o for o in objs if o[1] - o[0] <= 1], name=f"Tw[{n}]el")
    return TwShape(n, carrier, elementary, spine)


@dataclass(frozen=True)
class TwFunctor:
    shape: TwShape
    assignment: Functor

    def value(self, i, j):
        return self.assignment.ob((i, j))

    def arrow(self, a, b):
        return self.assignment.mor((a, b))


def _squares(n):
    """Condition squares: corner (i,j), its two faces and the common target."""
    for d in range(2, n + 1):
        for i in range(n + 1 - d):
            j = i + d
            yield (i, j), (i, j - 1), (i + 1, j), (i + 1, j - 1)


def _is_cartesian_table(shape: TwShape, C: FinCategory, img) -> tuple | None:
    """First corner whose square is not a pullback, or None."""
    T = shape.carrier
    m = lambda a, b: img[T.midx((a, b))]
    for top, left, right, bottom in _squares(shape.n):
        if not is_pullback_cone_i(C, C.srcs[m(top, top)], m(top, left), m(top, right),
                                  m(left, bottom), m(right, bottom)):
            return top
    return None


def is_cartesian_functor(S: TwFunctor) -> Verdict:
    C = S.assignment.target
    bad = _is_cartesian_table(S.shape, C, S.assignment.mor_i)
    if bad is not None:
        return Verdict(False, bad, f"square at {bad} is not a pullback")
    return Verdict(True)


def _legs(span):
    if hasattr(span, "left_leg"):
        return span.left_leg, span.right_leg
    return tuple(span)


def kan_extend_cartesian(C: FinCategory, spans) -> TwFunctor | None:
    """Extend n composable spans to a cartesian functor Tw([n]) -> C by chosen pullbacks.

    Each span is a pair (left leg, right leg) of morphism ids (or an object
    with ``left_leg`` / ``right_leg``).  Returns None when a pullback is missing.
    """
    legs = [tuple(C.midx(x) for x in _legs(s)) for s in spans]
    n = len(legs)
    for k, (l, r) in enumerate(legs):
        if C.srcs[l] != C.srcs[r]:
            raise CategoryError(f"span {k} has legs with different sources")
        if k and C.tgts[legs[k - 1][1]] != C.tgts[l]:
            raise CategoryError(f"spans {k - 1} and {k} do not share a foot")
    shape = twisted_arrow(n)
    val, L, R = {}, {}, {}
    if n == 0:
        raise CategoryError("at least one span is required")
    for i, (l, r) in enumerate(legs):
        val[(i, i + 1)] = C.srcs[l]
        L[(i, i + 1)], R[(i, i + 1)] = l, r
        val[(i, i)] = C.tgts[l]
        val[(i + 1, i + 1)] = C.tgts[r]
    for top, left, right, _ in _squares(n):
        pb = pullback_i(C, R[left], L[right])
        if pb is None:
            return None
        val[top], L[top], R[top] = pb
    T = shape.carrier
    mor = []
    for a, b in T.morphisms:
        (i, j), (k, l) = a, b
        f = C.ids[val[a]]
        for jj in range(j, l, -1):
            f = C.table[(L[(i, jj)], f)]
        for ii in range(i, k):
            f = C.table[(R[(ii, l)], f)]
        mor.append(f)
    ob = [val[o] for o in T.objects]
    return TwFunctor(shape, Functor.from_indices(T, C, ob, mor, name="kan"))


def restrict_to_elementary(S: TwFunctor):
    """The elementary spans (left leg, right leg) of a functor on Tw([n])."""
    return [(S.arrow((i, i + 1), (i, i)), S.arrow((i, i + 1), (i + 1, i + 1)))
            for i in range(S.shape.n)]


def _cartesian_tables(shape: TwShape, C: FinCategory):
    T = shape.carrier
    order = sorted(range(T.n_obj), key=lambda k: (T.objects[k][1] - T.objects[k][0],
                                                  T.objects[k][0]))
    rep = iso_classes(C)
    faces = {}
    for top, left, right, bottom in _squares(shape.n):
        faces[T.oidx(top)] = (T.midx((left, bottom)), T.midx((right, bottom)))

    def candidates(x, obj, img):
        if x not in faces:
            return range(C.n_obj)
        f, g = faces[x]
        pb = pullback_i(C, img[f], img[g])
        if pb is None:
            return ()
        return [y for y in range(C.n_obj) if rep[y] == rep[pb[0]]]

    for img in iter_functors(T, C, order=order, candidates=candidates):
        if _is_cartesian_table(shape, C, img) is None:
            yield img


def _feet(shape):
    return [shape.carrier.oidx((i, i)) for i in range(shape.n + 1)]


def _reduced_options(J: FinCategory, C: FinCategory, feet):
    """comp_ok / bucket forcing invertible components at the given shape objects."""
    rep = iso_classes(C)
    feet = set(feet)

    def comp_ok(j, c):
        return j not in feet or inverse_i(C, c) is not None

    def bucket(table):
        return tuple(rep[C.srcs[table[J.ids[j]]]] for j in sorted(feet))

    return comp_ok, bucket


def corr_level(C: FinCategory, n: int, reduced: bool = False) -> FunctorCategory:
    """Cartesian functors Tw([n]) -> C and natural transformations between them.

    With ``reduced`` only transformations invertible at every (i, i) are
    kept; this is the form used by the Segal check.
    """
    shape = twisted_arrow(n)
    tables = list(_cartesian_tables(shape, C))
    kw = {}
    if reduced:
        kw["comp_ok"], kw["bucket"] = _reduced_options(shape.carrier, C, _feet(shape))
    L = functor_category(shape.carrier, C, tables=tables,
                         name=f"Corr{'red' if reduced else ''}_{n}({C.name})", **kw)
    L.tw = shape
    return L


def spine_category(C: FinCategory, n: int) -> FunctorCategory:
    """Chains of n composable spans, with transformations invertible on the feet."""
    shape = twisted_arrow(n)
    J = shape.spine
    feet = [J.oidx((i, i)) for i in range(n + 1)]
    comp_ok, bucket = _reduced_options(J, C, feet)
    S = functor_category(J, C, comp_ok=comp_ok, bucket=bucket, name=f"Spine_{n}({C.name})")
    S.tw = shape
    return S


@dataclass(frozen=True)
class SegalResult:
    ok: bool
    certificate: dict | None = None

    def __bool__(self):
        return self.ok


def _missing_pullback_certificate(C: FinCategory, n: int):
    for f, g in cospans_i(C):
        if pullback_i(C, f, g) is None:
            x, y = C.srcs[f], C.srcs[g]
            spans = [(C.morphisms[C.ids[x]], C.morphisms[f]),
                     (C.morphisms[g], C.morphisms[C.ids[y]])]
            spans += [(C.morphisms[C.ids[y]], C.morphisms[C.ids[y]])] * (n - 2)
            return {"kind": "non-extendable spine datum", "spans": spans,
                    "cospan": (C.morphisms[f], C.morphisms[g])}
    return None


def segal_check(C: FinCategory, n: int = 2) -> SegalResult:
    """Is restriction from level n to chains of n spans an equivalence?

    A cospan without pullback already makes the restriction miss the
    corresponding spine datum (essential surjectivity fails), so that case
    is certified without building the level categories.
    """
    if n < 2:
        raise ValueError("the Segal check needs n >= 2")
    shape = twisted_arrow(n)
    cert = _missing_pullback_certificate(C, n)
    if cert is not None:
        return SegalResult(False, cert)
    level = corr_level(C, n, reduced=True)
    spine = spine_category(C, n)
    incl = Functor(shape.spine, shape.carrier, {o: o for o in shape.spine.objects},
                   {m: m for m in shape.spine.morphisms}, name="spine")
    R = precompose(incl, level, spine)
    rep = is_equivalence(R)
    if rep.ok:
        return SegalResult(True, {"level_objects": level.n_obj, "level_morphisms": level.n_mor,
                                  "spine_objects": spine.n_obj,
                                  "spine_morphisms": spine.n_mor})
    kind = rep.witness[0]
    if kind == "not essentially surjective":
        x = spine.oidx(rep.witness[1])
        table = spine.tables[x]
        J = shape.spine
        spans = [(C.morphisms[table[J.midx(((i, i + 1), (i, i)))]],
                  C.morphisms[table[J.midx(((i, i + 1), (i + 1, i + 1)))]]) for i in range(n)]
        return SegalResult(False, {"kind": "non-extendable spine datum", "spans": spans})
    return SegalResult(False, {"kind": "non-bijective hom-set", "detail": kind,
                               "objects": rep.witness[1:]})
