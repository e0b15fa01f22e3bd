"""Adjunctions and dualities between spans.

Generator adjunctions ι(α) ⊣ ι^R(α) live among spans and maps of spans.
A general span only has a right adjoint once maps of spans are themselves
replaced by spans in the slice categories C_{/a,b}; units and counits of
those adjunctions are spans of spans, and triangle identities hold up to
an invertible map of spans of spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCategory,
    Verdict,
    inverse_i,
    mediate_i,
    slice2,
    terminal_object,
    to_terminal,
)
from .limits import MissingLimit
from .spans import (
    DEFAULT_CHOICE,
    PullbackChoice,
    Span,
    SpanMor,
    coherence_iso,
    compose_spans,
    find_span_iso,
    hcompose_2cells,
    identity_2cell,
    identity_span,
    inverse_2cell,
    iota,
    product,
    reverse_span,
    slice_morphism,
    slice_object,
    spans_between,
    tensor_span,
    vcompose_2cells,
)


def _ch(choice):
    return DEFAULT_CHOICE if choice is None else choice


def _same(a: SpanMor, b: SpanMor) -> bool:
    return a.source == b.source and a.target == b.target and a.apex_map == b.apex_map


def _chain(*cells):
    out = cells[0]
    for c in cells[1:]:
        out = vcompose_2cells(out, c)
    return out


# generator adjunctions -------------------------------------------------------

@dataclass(frozen=True)
class SpanAdjunction:
    left: Span
    right: Span
    unit: SpanMor      # id => left;right   (right∘left)
    counit: SpanMor    # right;left => id   (left∘right)
    choice: PullbackChoice

    def triangles(self) -> Verdict:
        L, R, ch = self.left, self.right, self.choice
        C = L.ambient
        a, b = L.feet
        idL, idR = identity_2cell(L), identity_2cell(R)
        # L: id;L => (L;R);L => L;(R;L) => L;id   against   id;L => L => L;id
        lhs = _chain(hcompose_2cells(self.unit, idL, ch),
                     coherence_iso("assoc", L, R, L, choice=ch),
                     hcompose_2cells(idL, self.counit, ch))
        rhs = vcompose_2cells(coherence_iso("lunit", L, choice=ch),
                              inverse_2cell(coherence_iso("runit", L, choice=ch)))
        if not _same(lhs, rhs):
            return Verdict(False, "left triangle", f"{lhs.apex_map!r} != {rhs.apex_map!r}")
        # R: R;id => R;(L;R) => (R;L);R => id;R   against   R;id => R => id;R
        lhs = _chain(hcompose_2cells(idR, self.unit, ch),
                     inverse_2cell(coherence_iso("assoc", R, L, R, choice=ch)),
                     hcompose_2cells(self.counit, idR, ch))
        rhs = vcompose_2cells(coherence_iso("runit", R, choice=ch),
                              inverse_2cell(coherence_iso("lunit", R, choice=ch)))
        if not _same(lhs, rhs):
            return Verdict(False, "right triangle", f"{lhs.apex_map!r} != {rhs.apex_map!r}")
        return Verdict(True)


def generator_adjunction(C: FinCategory, alpha, choice=None) -> SpanAdjunction:
    """ι(α) ⊣ ι^R(α) for α: c -> c'.

    Counit: ι^R(α);ι(α) = (c' <-α- c -α-> c') => id_{c'} with apex map α.
    Unit: id_c => ι(α);ι^R(α) = (c <- c×_{c'}c -> c) with the diagonal as apex map.
    """
    ch = _ch(choice)
    L, R = iota(C, alpha, "left"), iota(C, alpha, "right")
    c, c2 = C.src(alpha), C.tgt(alpha)
    RL = compose_spans(L, R, ch)
    LR = compose_spans(R, L, ch)
    i = C.midx(C.identity(c))
    diag = mediate_i(C, C.midx(alpha), C.midx(alpha), C.oidx(c), i, i)
    unit = SpanMor(identity_span(C, c), RL, C.morphisms[diag])
    q = ch.get(C, R.right_leg, L.left_leg)
    counit = SpanMor(LR, identity_span(C, c2), C.compose(alpha, q.proj_left))
    adj = SpanAdjunction(L, R, unit, counit, ch)
    v = adj.triangles()
    if not v:
        raise AssertionError(f"triangle identity fails for the generator {alpha!r}: {v}")
    return adj


# adjunctions one level up ----------------------------------------------------

def hom_category(C: FinCategory, a, b) -> FinCategory:
    """The slice C_{/a,b}: spans a -> b and maps of spans."""
    return slice2(C, a, b)[0]


def as_cell_span(eta: SpanMor, inverse=False) -> Span:
    """A map of spans X => Y as the span of spans (X <-id- X -eta-> Y).

    With ``inverse`` the map is read backwards: (Y <-eta- X -id-> X).
    """
    C = eta.source.ambient
    a, b = eta.source.feet
    H = hom_category(C, a, b)
    x, y = slice_object(eta.source), slice_object(eta.target)
    idx = (x, x, C.identity(eta.source.apex))
    m = slice_morphism(eta)
    if inverse:
        return Span(H, y, x, x, m, idx)
    return Span(H, x, x, y, idx, m)


def _span_of(C: FinCategory, obj) -> Span:
    apex, l, r = obj
    return Span(C, C.tgt(l), apex, C.tgt(r), l, r)


def whisker(sigma: Span, by: Span, side: str, choice=None) -> Span:
    """Whisker a span of spans by a span: side='post' gives X;by, side='pre' by;X."""
    ch = _ch(choice)
    C = by.ambient

    def one(obj):
        X = _span_of(C, obj)
        return compose_spans(X, by, ch) if side == "post" else compose_spans(by, X, ch)

    def cell(mor):
        src, tgt, m = mor
        eta = SpanMor(_span_of(C, src), _span_of(C, tgt), m)
        ida = identity_2cell(by)
        return hcompose_2cells(eta, ida, ch) if side == "post" else hcompose_2cells(ida, eta, ch)

    left, right = cell(sigma.left_leg), cell(sigma.right_leg)
    apex = one(sigma.apex)
    K = hom_category(C, *apex.feet)
    return Span(K, slice_object(one(sigma.left_foot)), slice_object(apex),
                slice_object(one(sigma.right_foot)), slice_morphism(left), slice_morphism(right))


def _compose_all(*spans):
    out = spans[0]
    for s in spans[1:]:
        out = compose_spans(out, s)
    return out


def _identity_up_to_iso(Z: Span) -> bool:
    """Z: X -> X is isomorphic to the identity span of X."""
    H = Z.ambient
    return (Z.left_foot == Z.right_foot and Z.left_leg == Z.right_leg
            and inverse_i(H, H.midx(Z.left_leg)) is not None)


@dataclass(frozen=True)
class SpanAdjunction3:
    """left ⊣ right with unit and counit given as spans of spans."""

    left: Span
    right: Span
    unit: Span       # in C_{/a,a}, from id_a to left;right
    counit: Span     # in C_{/b,b}, from right;left to id_b
    choice: PullbackChoice

    def triangles(self) -> Verdict:
        L, R, ch = self.left, self.right, self.choice
        C = L.ambient
        a, b = L.feet
        # left: L => id;L => (L;R);L => L;(R;L) => L;id => L
        z = _compose_all(
            as_cell_span(coherence_iso("lunit", L, choice=ch), inverse=True),
            whisker(self.unit, L, "post", ch),
            as_cell_span(coherence_iso("assoc", L, R, L, choice=ch)),
            whisker(self.counit, L, "pre", ch),
            as_cell_span(coherence_iso("runit", L, choice=ch)))
        if not _identity_up_to_iso(z):
            return Verdict(False, "left triangle", str(z))
        # right: R => R;id => R;(L;R) => (R;L);R => id;R => R
        z = _compose_all(
            as_cell_span(coherence_iso("runit", R, choice=ch), inverse=True),
            whisker(self.unit, R, "pre", ch),
            as_cell_span(coherence_iso("assoc", R, L, R, choice=ch), inverse=True),
            whisker(self.counit, R, "post", ch),
            as_cell_span(coherence_iso("lunit", R, choice=ch)))
        if not _identity_up_to_iso(z):
            return Verdict(False, "right triangle", str(z))
        return Verdict(True)


def _diagonal(C, f, choice):
    """The map s -> s ×_{tgt f} s induced by (id, id)."""
    choice.get(C, f, f)  # raises if the pullback is missing
    i = C.midx(C.identity(C.src(f)))
    return C.morphisms[mediate_i(C, C.midx(f), C.midx(f), C.oidx(C.src(f)), i, i)]


def _adjunction3(L: Span, choice) -> SpanAdjunction3:
    """L ⊣ reverse(L), built from the leg factorisation L = ι(r)∘ι^R(l).

    For L = (a <-l- s -r-> b) the composite of the leg adjunctions has
    unit (id_a <-l- (s; l, l) -δ_r-> L;R) and counit
    (R;L <-δ_l- (s; r, r) -r-> id_b), δ being the diagonals.
    """
    C = L.ambient
    R = reverse_span(L)
    a, b = L.feet
    s, l, r = L.apex, L.left_leg, L.right_leg
    RL = compose_spans(L, R, choice)
    LR = compose_spans(R, L, choice)
    Haa, Hbb = hom_category(C, a, a), hom_category(C, b, b)
    ida, idb = slice_object(identity_span(C, a)), slice_object(identity_span(C, b))
    x = (s, l, l)
    unit = Span(Haa, ida, x, slice_object(RL), (x, ida, l), (x, slice_object(RL), _diagonal(C, r, choice)))
    y = (s, r, r)
    counit = Span(Hbb, slice_object(LR), y, idb, (y, slice_object(LR), _diagonal(C, l, choice)), (y, idb, r))
    adj = SpanAdjunction3(L, R, unit, counit, choice)
    v = adj.triangles()
    if not v:
        raise AssertionError(f"triangle identity fails for {L}: {v}")
    return adj


def span_right_adjoint(S: Span, choice=None) -> SpanAdjunction3:
    """S ⊣ reverse(S)."""
    return _adjunction3(S, _ch(choice))


def span_left_adjoint(S: Span, choice=None) -> SpanAdjunction3:
    """reverse(S) ⊣ S."""
    return _adjunction3(reverse_span(S), _ch(choice))


def search_span_adjunction3(L: Span, R: Span, choice=None):
    """First (unit, counit) pair of spans of spans satisfying both triangles.

    Exhaustive over the slice categories; only for cross-checks on tiny inputs.
    """
    ch = _ch(choice)
    C = L.ambient
    a, b = L.feet
    Haa, Hbb = hom_category(C, a, a), hom_category(C, b, b)
    RL = slice_object(compose_spans(L, R, ch))
    LR = slice_object(compose_spans(R, L, ch))
    ida, idb = slice_object(identity_span(C, a)), slice_object(identity_span(C, b))
    for unit in spans_between(Haa, ida, RL):
        for counit in spans_between(Hbb, LR, idb):
            adj = SpanAdjunction3(L, R, unit, counit, ch)
            if adj.triangles():
                return adj
    return None


# duality ---------------------------------------------------------------------

@dataclass(frozen=True)
class DualityData:
    obj: object
    unit: Span      # 1 -> c×c
    counit: Span    # c×c -> 1
    terminal: object
    square: object  # chosen product c×c

    def zigzags(self, choice=None) -> Verdict:
        C = self.unit.ambient
        c = self.obj
        ch = _ch(choice)
        idc = identity_span(C, c)
        zig = _compose_all_ch(ch, [
            reverse_span(iota(C, _runitor(C, c), "left")),
            tensor_span(idc, self.unit, ch),
            iota(C, _associator(C, c, c, c), "left"),
            tensor_span(self.counit, idc, ch),
            iota(C, _lunitor(C, c), "left")])
        if find_span_iso(zig, idc) is None:
            return Verdict(False, "first zig-zag", str(zig))
        zag = _compose_all_ch(ch, [
            reverse_span(iota(C, _lunitor(C, c), "left")),
            tensor_span(self.unit, idc, ch),
            reverse_span(iota(C, _associator(C, c, c, c), "left")),
            tensor_span(idc, self.counit, ch),
            iota(C, _runitor(C, c), "left")])
        if find_span_iso(zag, idc) is None:
            return Verdict(False, "second zig-zag", str(zag))
        return Verdict(True)


def _compose_all_ch(ch, spans):
    out = spans[0]
    for s in spans[1:]:
        out = compose_spans(out, s, ch)
    return out


def _terminal(C):
    t = terminal_object(C)
    if t is None:
        raise MissingLimit(f"{C.name} has no terminal object")
    return t


def _runitor(C, x):
    """x×1 -> x."""
    return product(C, x, _terminal(C)).proj_left


def _lunitor(C, x):
    """1×x -> x."""
    return product(C, _terminal(C), x).proj_right


def _associator(C, x, y, z):
    """x×(y×z) -> (x×y)×z."""
    yz = product(C, y, z)
    src = product(C, x, yz.apex)
    xy = product(C, x, y)
    dst = product(C, xy.apex, z)
    to_y = C.compose(yz.proj_left, src.proj_right)
    to_z = C.compose(yz.proj_right, src.proj_right)
    to_xy = mediate_i(C, C.midx(xy.cospan.left), C.midx(xy.cospan.right), C.oidx(src.apex),
                      C.midx(src.proj_left), C.midx(to_y))
    m = mediate_i(C, C.midx(dst.cospan.left), C.midx(dst.cospan.right), C.oidx(src.apex),
                  to_xy, C.midx(to_z))
    return C.morphisms[m]


def duality_data(C: FinCategory, c, choice=None) -> DualityData:
    """Self-duality of c: unit (1 <-π- c -Δ-> c×c), counit (c×c <-Δ- c -π-> 1)."""
    t = _terminal(C)
    cc = product(C, c, c)
    i = C.midx(C.identity(c))
    delta = C.morphisms[mediate_i(C, C.midx(cc.cospan.left), C.midx(cc.cospan.right),
                                  C.oidx(c), i, i)]
    pi = to_terminal(C, c)
    d = DualityData(c, Span.of(C, pi, delta), Span.of(C, delta, pi), t, cc.apex)
    v = d.zigzags(choice)
    if not v:
        raise AssertionError(f"zig-zag fails for {c!r}: {v}")
    return d


@dataclass(frozen=True)
class DualMorphism:
    span: Span
    iso_to_reverse: SpanMor


def dual_morphism(S: Span, choice=None) -> DualMorphism:
    """The dual S^∨: b -> a of S: a -> b, computed through the self-dualities,
    together with an invertible 2-cell to the reversed span."""
    ch = _ch(choice)
    C = S.ambient
    a, b = S.feet
    ida, idb = identity_span(C, a), identity_span(C, b)
    eta_a = duality_data(C, a, ch).unit
    eps_b = duality_data(C, b, ch).counit
    D = _compose_all_ch(ch, [
        reverse_span(iota(C, _runitor(C, b), "left")),          # b -> b×1
        tensor_span(idb, eta_a, ch),                            # -> b×(a×a)
        iota(C, _associator(C, b, a, a), "left"),               # -> (b×a)×a
        tensor_span(tensor_span(idb, S, ch), ida, ch),          # -> (b×b)×a
        tensor_span(eps_b, ida, ch),                            # -> 1×a
        iota(C, _lunitor(C, a), "left")])                       # -> a
    iso = find_span_iso(D, reverse_span(S))
    if iso is None:
        raise AssertionError(f"dual of {S} is not isomorphic to its reverse")
    return DualMorphism(D, iso)
