"""Spans and maps of spans: the correspondence bicategory of a finite category.

``compose_spans(S, T)`` applies S first: for S: a -> b and T: b -> c the
result is a span a -> c whose apex is the chosen pullback of S's right leg
and T's left leg.  In applicative notation this is T∘S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (
    Cospan,
    FinCategory,
    Functor,
    PullbackData,
    Verdict,
    binary_product,
    inverse_i,
    mediate_i,
    pullback_i,
)
from .limits import CategoryError, CompositionError, MissingLimit


@dataclass(frozen=True)
class Span:
    ambient: FinCategory = field(repr=False)
    left_foot: object
    apex: object
    right_foot: object
    left_leg: object
    right_leg: object

    def __post_init__(self):
        C = self.ambient
        if (C.src(self.left_leg) != self.apex or C.src(self.right_leg) != self.apex
                or C.tgt(self.left_leg) != self.left_foot
                or C.tgt(self.right_leg) != self.right_foot):
            raise CategoryError(f"ill-typed span {self}")

    @classmethod
    def of(cls, C: FinCategory, left_leg, right_leg) -> "Span":
        return cls(C, C.tgt(left_leg), C.src(left_leg), C.tgt(right_leg), left_leg, right_leg)

    @property
    def feet(self):
        return self.left_foot, self.right_foot

    def key(self):
        return (self.apex, self.left_leg, self.right_leg)

    def __str__(self):
        return f"({self.left_foot} <-{self.left_leg}- {self.apex} -{self.right_leg}-> {self.right_foot})"


@dataclass(frozen=True)
class SpanMor:
    source: Span
    target: Span
    apex_map: object

    def __post_init__(self):
        S, T = self.source, self.target
        C = S.ambient
        if S.feet != T.feet:
            raise CategoryError("2-cell between spans with different feet")
        m = self.apex_map
        if C.src(m) != S.apex or C.tgt(m) != T.apex:
            raise CategoryError(f"apex map {m!r} is ill-typed")
        if C.compose(T.left_leg, m) != S.left_leg or C.compose(T.right_leg, m) != S.right_leg:
            raise CategoryError(f"apex map {m!r} does not commute with the legs")


class PullbackChoice:
    """Deterministic pullback selection, memoised per cospan.

    The selection itself is the lowest-index rule of :func:`fincat.pullback_i`;
    this object records which cospans were queried.
    """

    def __init__(self):
        self._memo = {}

    def get(self, C: FinCategory, f, g) -> PullbackData:
        key = (id(C), f, g)
        hit = self._memo.get(key)
        if hit is None or hit[0] is not C:
            res = pullback_i(C, C.midx(f), C.midx(g))
            pb = None if res is None else PullbackData(
                C.objects[res[0]], C.morphisms[res[1]], C.morphisms[res[2]], Cospan(f, g))
            hit = (C, pb)
            self._memo[key] = hit
        if hit[1] is None:
            raise MissingLimit(f"no pullback of the cospan ({f!r}, {g!r})", Cospan(f, g))
        return hit[1]

    def __len__(self):
        return len(self._memo)


DEFAULT_CHOICE = PullbackChoice()


def _choice(choice):
    return DEFAULT_CHOICE if choice is None else choice


def identity_span(C: FinCategory, c) -> Span:
    i = C.identity(c)
    return Span(C, c, c, c, i, i)


def iota(C: FinCategory, alpha, side="left") -> Span:
    """side='left': (c <-id- c -α-> c');  side='right': (c' <-α- c -id-> c)."""
    c = C.src(alpha)
    i = C.identity(c)
    if side == "left":
        return Span.of(C, i, alpha)
    if side == "right":
        return Span.of(C, alpha, i)
    raise ValueError("side must be 'left' or 'right'")


def reverse_span(S: Span) -> Span:
    return Span(S.ambient, S.right_foot, S.apex, S.left_foot, S.right_leg, S.left_leg)


def reverse_2cell(eta: SpanMor) -> SpanMor:
    return SpanMor(reverse_span(eta.source), reverse_span(eta.target), eta.apex_map)


def compose_spans(S: Span, T: Span, choice=None) -> Span:
    """S then T (T∘S): apex is the chosen pullback of S.right_leg and T.left_leg."""
    C = S.ambient
    if S.right_foot != T.left_foot:
        raise CompositionError(f"cannot compose {S} with {T}: feet differ")
    pb = _choice(choice).get(C, S.right_leg, T.left_leg)
    return Span(C, S.left_foot, pb.apex, T.right_foot,
                C.compose(S.left_leg, pb.proj_left), C.compose(T.right_leg, pb.proj_right))


def identity_2cell(S: Span) -> SpanMor:
    return SpanMor(S, S, S.ambient.identity(S.apex))


def vcompose_2cells(eta: SpanMor, eta2: SpanMor) -> SpanMor:
    """eta then eta2."""
    if eta.target != eta2.source:
        raise CompositionError("2-cells are not vertically composable")
    C = eta.source.ambient
    return SpanMor(eta.source, eta2.target, C.compose(eta2.apex_map, eta.apex_map))


def hcompose_2cells(eta: SpanMor, eta2: SpanMor, choice=None) -> SpanMor:
    """Horizontal composite of eta: S => S' and eta2: T => T' (S, T composable)."""
    C = eta.source.ambient
    ch = _choice(choice)
    src = compose_spans(eta.source, eta2.source, ch)
    tgt = compose_spans(eta.target, eta2.target, ch)
    p = ch.get(C, eta.source.right_leg, eta2.source.left_leg)
    q = ch.get(C, eta.target.right_leg, eta2.target.left_leg)
    a = C.compose(eta.apex_map, p.proj_left)
    b = C.compose(eta2.apex_map, p.proj_right)
    m = mediate_i(C, C.midx(q.cospan.left), C.midx(q.cospan.right),
                  C.oidx(p.apex), C.midx(a), C.midx(b))
    return SpanMor(src, tgt, C.morphisms[m])


def inverse_2cell(eta: SpanMor) -> SpanMor:
    C = eta.source.ambient
    g = inverse_i(C, C.midx(eta.apex_map))
    if g is None:
        raise CategoryError("2-cell is not invertible")
    return SpanMor(eta.target, eta.source, C.morphisms[g])


def is_invertible_2cell(eta: SpanMor) -> bool:
    C = eta.source.ambient
    return inverse_i(C, C.midx(eta.apex_map)) is not None


def coherence_iso(kind: str, *spans: Span, choice=None) -> SpanMor:
    """Canonical invertible 2-cells.

    assoc(S, T, U): (S;T);U => S;(T;U)   (';' is compose_spans)
    lunit(S):       id;S => S
    runit(S):       S;id => S
    """
    ch = _choice(choice)
    if kind == "assoc":
        S, T, U = spans
        C = S.ambient
        ST = compose_spans(S, T, ch)
        TU = compose_spans(T, U, ch)
        lhs = compose_spans(ST, U, ch)
        rhs = compose_spans(S, TU, ch)
        a = ch.get(C, ST.right_leg, U.left_leg)          # lhs apex -> ST apex, U apex
        st = ch.get(C, S.right_leg, T.left_leg)          # ST apex -> S apex, T apex
        tu = ch.get(C, T.right_leg, U.left_leg)          # TU apex -> T apex, U apex
        outer = ch.get(C, S.right_leg, TU.left_leg)      # rhs apex -> S apex, TU apex
        to_t = C.compose(st.proj_right, a.proj_left)
        to_tu = mediate_i(C, C.midx(T.right_leg), C.midx(U.left_leg), C.oidx(lhs.apex),
                          C.midx(to_t), C.midx(a.proj_right))
        to_s = C.compose(st.proj_left, a.proj_left)
        m = mediate_i(C, C.midx(outer.cospan.left), C.midx(outer.cospan.right),
                      C.oidx(lhs.apex), C.midx(to_s), to_tu)
        cell = SpanMor(lhs, rhs, C.morphisms[m])
    elif kind in ("lunit", "runit"):
        (S,) = spans
        C = S.ambient
        if kind == "lunit":
            src = compose_spans(identity_span(C, S.left_foot), S, ch)
            pb = ch.get(C, C.identity(S.left_foot), S.left_leg)
            cell = SpanMor(src, S, pb.proj_right)
        else:
            src = compose_spans(S, identity_span(C, S.right_foot), ch)
            pb = ch.get(C, S.right_leg, C.identity(S.right_foot))
            cell = SpanMor(src, S, pb.proj_left)
    else:
        raise ValueError(f"unknown coherence kind {kind!r}")
    if not is_invertible_2cell(cell):
        raise AssertionError(f"{kind} coherence 2-cell is not invertible")
    return cell


def find_span_iso(S: Span, T: Span) -> SpanMor | None:
    """An invertible 2-cell S => T, found by search."""
    C = S.ambient
    if S.feet != T.feet:
        return None
    for m in C.hom_i(C.oidx(S.apex), C.oidx(T.apex)):
        if (C.table[(C.midx(T.left_leg), m)] == C.midx(S.left_leg)
                and C.table[(C.midx(T.right_leg), m)] == C.midx(S.right_leg)
                and inverse_i(C, m) is not None):
            return SpanMor(S, T, C.morphisms[m])
    return None


def spans_between(C: FinCategory, a, b):
    """Every span a <- s -> b, in index order."""
    ai, bi = C.oidx(a), C.oidx(b)
    for s in range(C.n_obj):
        for l in C.hom_i(s, ai):
            for r in C.hom_i(s, bi):
                yield Span(C, a, C.objects[s], b, C.morphisms[l], C.morphisms[r])


def all_spans(C: FinCategory):
    for a in C.objects:
        for b in C.objects:
            yield from spans_between(C, a, b)


@dataclass(frozen=True)
class InvertibilityReport:
    legs_iso: bool
    by_search: bool | None
    inverse: Span | None = None

    @property
    def agree(self):
        return self.by_search is None or self.legs_iso == self.by_search


def is_invertible_span(S: Span, choice=None) -> InvertibilityReport:
    """Two independent tests: (a) both legs are isomorphisms; (b) search for an
    inverse span T with S;T and T;S isomorphic to identity spans."""
    C = S.ambient
    legs = (inverse_i(C, C.midx(S.left_leg)) is not None
            and inverse_i(C, C.midx(S.right_leg)) is not None)
    ch = _choice(choice)
    a, b = S.feet
    try:
        for T in spans_between(C, b, a):
            if (find_span_iso(compose_spans(S, T, ch), identity_span(C, a)) is not None and
                    find_span_iso(compose_spans(T, S, ch), identity_span(C, b)) is not None):
                return InvertibilityReport(legs, True, T)
    except MissingLimit:
        return InvertibilityReport(legs, None)
    return InvertibilityReport(legs, False)


def map_span(F: Functor, S: Span) -> Span:
    return Span(F.target, F.ob(S.left_foot), F.ob(S.apex), F.ob(S.right_foot),
                F.mor(S.left_leg), F.mor(S.right_leg))


def map_2cell(F: Functor, eta: SpanMor) -> SpanMor:
    return SpanMor(map_span(F, eta.source), map_span(F, eta.target), F.mor(eta.apex_map))


# cartesian monoidal structure ----------------------------------------------

def product(C: FinCategory, x, y) -> PullbackData:
    pb = binary_product(C, x, y)
    if pb is None:
        raise MissingLimit(f"no product of {x!r} and {y!r}", (x, y))
    return pb


def product_map(C: FinCategory, f, g):
    """f × g: the mediator from src(f)×src(g) into tgt(f)×tgt(g)."""
    dom = product(C, C.src(f), C.src(g))
    cod = product(C, C.tgt(f), C.tgt(g))
    a = C.compose(f, dom.proj_left)
    b = C.compose(g, dom.proj_right)
    m = mediate_i(C, C.midx(cod.cospan.left), C.midx(cod.cospan.right),
                  C.oidx(dom.apex), C.midx(a), C.midx(b))
    return C.morphisms[m]


def tensor_span(S: Span, T: Span, choice=None) -> Span:
    """Componentwise product of spans: (a×a' <- s×t -> b×b')."""
    C = S.ambient
    l = product_map(C, S.left_leg, T.left_leg)
    r = product_map(C, S.right_leg, T.right_leg)
    return Span.of(C, l, r)


def slice_object(S: Span):
    """S as an object of slice2(C, left foot, right foot)."""
    return (S.apex, S.left_leg, S.right_leg)


def span_of_slice_object(C: FinCategory, a, b, obj) -> Span:
    apex, l, r = obj
    return Span(C, a, apex, b, l, r)


def slice_morphism(eta: SpanMor):
    return (slice_object(eta.source), slice_object(eta.target), eta.apex_map)
