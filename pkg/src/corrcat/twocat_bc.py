"""Finite strict 2-categories.

Adjoints of 1-cells are found by exhaustive search.  Mates of commutative
squares are assembled by whiskering through the composition functors, which
gives square adjointability and the left Beck-Chevalley check for functors
into a 2-category.  The last part builds the counit square attached to a
cartesian square of C among endo-spans of its corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .fincat import (
    FinCategory,
    Functor,
    Verdict,
    check_functor,
    cospans_i,
    discrete_category,
    inverse_i,
    is_pullback_cone_i,
    opposite,
    product_category,
    pullback_i,
    slice2,
)
from .limits import CategoryError, CompositionError
from .spans import (
    DEFAULT_CHOICE,
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
    slice_morphism,
    slice_object,
    vcompose_2cells,
)


class OneCell(NamedTuple):
    source: object
    target: object
    name: object        # an object of hom(source, target)


class TwoCell(NamedTuple):
    source: object
    target: object
    name: object        # a morphism of hom(source, target)


class Strict2Cat:
    """Objects, hom categories, identity 1-cells and composition functors.

    ``composition[(a, b, c)]`` is a functor hom(a, b) × hom(b, c) -> hom(a, c)
    sending (f, g) to g∘f, so the first factor is applied first.
    """

    def __init__(self, objects, hom: dict, identity: dict, composition: dict, name="D"):
        self.objects = tuple(objects)
        self.hom = dict(hom)
        self.identity = dict(identity)
        self.composition = dict(composition)
        self.name = name
        for a in self.objects:
            for b in self.objects:
                if (a, b) not in self.hom:
                    raise CategoryError(f"{name}: no hom category for ({a!r}, {b!r})")
            self.hom[(a, a)].oidx(self.identity[a])
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    if (a, b, c) not in self.composition:
                        raise CategoryError(f"{name}: no composition for {(a, b, c)!r}")

    @classmethod
    def from_operations(cls, objects, hom, identity, compose1: Callable, compose2: Callable,
                        name="D"):
        """Build composition functors from ``compose1(f, g)`` on 1-cells and
        ``compose2(sigma, tau)`` on 2-cells (both return the composite "g after f")."""
        objects = tuple(objects)
        composition = {}
        for a in objects:
            for b in objects:
                for c in objects:
                    A, B = hom[(a, b)], hom[(b, c)]
                    P = product_category(A, B)[0]
                    obs = {(f, g): compose1(OneCell(a, b, f), OneCell(b, c, g)) for f, g in P.objects}
                    mors = {(s, t): compose2(TwoCell(a, b, s), TwoCell(b, c, t))
                            for s, t in P.morphisms}
                    composition[(a, b, c)] = Functor(P, hom[(a, c)], obs, mors,
                                                     name=f"comp{(a, b, c)!r}")
        return cls(objects, hom, identity, composition, name=name)

    # 1-cells and 2-cells ----------------------------------------------------
    def id1(self, a) -> OneCell:
        return OneCell(a, a, self.identity[a])

    def id2(self, f: OneCell) -> TwoCell:
        H = self.hom[(f.source, f.target)]
        return TwoCell(f.source, f.target, H.identity(f.name))

    def dom(self, s: TwoCell) -> OneCell:
        return OneCell(s.source, s.target, self.hom[(s.source, s.target)].src(s.name))

    def cod(self, s: TwoCell) -> OneCell:
        return OneCell(s.source, s.target, self.hom[(s.source, s.target)].tgt(s.name))

    def one_cells(self, a, b):
        return [OneCell(a, b, f) for f in self.hom[(a, b)].objects]

    def two_cells(self, f: OneCell, g: OneCell):
        H = self.hom[(f.source, f.target)]
        return [TwoCell(f.source, f.target, s) for s in H.hom(f.name, g.name)]

    def _comp(self, x, y):
        if x.target != y.source:
            raise CompositionError(f"{x!r} and {y!r} are not composable")
        F = self.composition[(x.source, x.target, y.target)]
        return F, (x.name, y.name)

    def then(self, f: OneCell, g: OneCell) -> OneCell:
        """g∘f."""
        F, key = self._comp(f, g)
        return OneCell(f.source, g.target, F.ob(key))

    def hcomp(self, s: TwoCell, t: TwoCell) -> TwoCell:
        """Horizontal composite t∘s of s in hom(a, b) and t in hom(b, c)."""
        F, key = self._comp(s, t)
        return TwoCell(s.source, t.target, F.mor(key))

    def vcomp(self, s: TwoCell, t: TwoCell) -> TwoCell:
        """s then t inside one hom category."""
        if (s.source, s.target) != (t.source, t.target):
            raise CompositionError("2-cells live in different hom categories")
        H = self.hom[(s.source, s.target)]
        return TwoCell(s.source, s.target, H.compose(t.name, s.name))

    def invert(self, s: TwoCell) -> TwoCell | None:
        H = self.hom[(s.source, s.target)]
        k = inverse_i(H, H.midx(s.name))
        return None if k is None else TwoCell(s.source, s.target, H.morphisms[k])

    def is_invertible(self, s: TwoCell) -> bool:
        return self.invert(s) is not None

    def __repr__(self):
        return f"Strict2Cat({self.name!r}, {len(self.objects)} objects)"


def reverse_2cells(D: Strict2Cat) -> Strict2Cat:
    """The same 1-cells with every 2-cell turned around."""
    hom = {k: opposite(H) for k, H in D.hom.items()}
    comp = {}
    for (a, b, c), F in D.composition.items():
        P = product_category(hom[(a, b)], hom[(b, c)])[0]
        comp[(a, b, c)] = Functor.from_indices(P, hom[(a, c)], F.ob_i, F.mor_i, name=F.name)
    return Strict2Cat(D.objects, hom, D.identity, comp, name=f"{D.name}^co")


# validation -------------------------------------------------------------------

def validate_2cat(D: Strict2Cat) -> list:
    """Every failed strict law as (law, detail); empty iff D is a strict 2-category."""
    out = []
    for key, F in D.composition.items():
        v = check_functor(F)
        if not v:
            law = "interchange" if v.witness[0] == "composition" else f"composition {v.witness[0]}"
            out.append((law, (key, v.witness[1])))
    if out:
        return out
    for a in D.objects:
        for b in D.objects:
            ia, ib = D.id2(D.id1(a)), D.id2(D.id1(b))
            H = D.hom[(a, b)]
            for m in H.morphisms:
                s = TwoCell(a, b, m)
                if D.hcomp(ia, s) != s:
                    out.append(("left unit", (a, b, m)))
                if D.hcomp(s, ib) != s:
                    out.append(("right unit", (a, b, m)))
    for a in D.objects:
        for b in D.objects:
            for c in D.objects:
                for d in D.objects:
                    bad = _associativity_failure(D, a, b, c, d)
                    if bad is not None:
                        out.append(("associativity", bad))
    return out


def _associativity_failure(D, a, b, c, d):
    # index arithmetic over the product enumeration (first factor major)
    A, B, C, BD = D.hom[(a, b)], D.hom[(b, c)], D.hom[(c, d)], D.hom[(b, d)]
    abc, bcd = D.composition[(a, b, c)].mor_i, D.composition[(b, c, d)].mor_i
    acd, abd = D.composition[(a, c, d)].mor_i, D.composition[(a, b, d)].mor_i
    nB, nC, nBD = B.n_mor, C.n_mor, BD.n_mor
    for s in range(A.n_mor):
        for t in range(nB):
            st = abc[s * nB + t]
            for r in range(nC):
                if acd[st * nC + r] != abd[s * nBD + bcd[t * nC + r]]:
                    return (A.morphisms[s], B.morphisms[t], C.morphisms[r])
    return None


# adjunctions --------------------------------------------------------------------

@dataclass(frozen=True)
class Adjunction2:
    ambient: Strict2Cat
    left: OneCell
    right: OneCell
    unit: TwoCell       # id => right∘left
    counit: TwoCell     # left∘right => id

    def triangles(self) -> Verdict:
        D, f, g = self.ambient, self.left, self.right
        lhs = D.vcomp(D.hcomp(self.unit, D.id2(f)), D.hcomp(D.id2(f), self.counit))
        if lhs != D.id2(f):
            return Verdict(False, "left triangle", f"got {lhs.name!r}")
        rhs = D.vcomp(D.hcomp(D.id2(g), self.unit), D.hcomp(self.counit, D.id2(g)))
        if rhs != D.id2(g):
            return Verdict(False, "right triangle", f"got {rhs.name!r}")
        return Verdict(True)


def iter_right_adjoints(D: Strict2Cat, f: OneCell):
    """Every (g, unit, counit) satisfying the triangle identities, in hom order."""
    a, b = f.source, f.target
    for g in D.one_cells(b, a):
        gf, fg = D.then(f, g), D.then(g, f)
        for eta in D.two_cells(D.id1(a), gf):
            for eps in D.two_cells(fg, D.id1(b)):
                adj = Adjunction2(D, f, g, eta, eps)
                if adj.triangles():
                    yield adj


def find_right_adjoint(D: Strict2Cat, f: OneCell) -> Adjunction2 | None:
    return next(iter_right_adjoints(D, f), None)


def find_left_adjoint(D: Strict2Cat, g: OneCell) -> Adjunction2 | None:
    a, b = g.target, g.source
    for f in D.one_cells(a, b):
        for adj in iter_right_adjoints(D, f):
            if adj.right == g:
                return adj
    return None


# squares and mates ----------------------------------------------------------------

@dataclass(frozen=True)
class Square2:
    """top: d' -> d, left: d' -> e', right: d -> e, bottom: e' -> e.

    ``witness`` is None when right∘top and bottom∘left are equal, otherwise an
    invertible 2-cell right∘top => bottom∘left.
    """

    ambient: Strict2Cat
    top: OneCell
    left: OneCell
    right: OneCell
    bottom: OneCell
    witness: TwoCell | None = None

    def check(self) -> Verdict:
        D = self.ambient
        t, l, r, b = self.top, self.left, self.right, self.bottom
        if not (t.source == l.source and t.target == r.source and l.target == b.source
                and r.target == b.target):
            return Verdict(False, "typing", "edges do not form a square")
        up, down = D.then(t, r), D.then(l, b)
        if self.witness is None:
            if up != down:
                return Verdict(False, "commutativity", f"{up.name!r} != {down.name!r}")
            return Verdict(True)
        if D.dom(self.witness) != up or D.cod(self.witness) != down:
            return Verdict(False, "witness", "witness 2-cell has the wrong boundary")
        if not D.is_invertible(self.witness):
            return Verdict(False, "witness", "witness 2-cell is not invertible")
        return Verdict(True, detail="commutes up to the recorded invertible 2-cell")


def transpose(sq: Square2) -> Square2:
    """Reflect along the diagonal: top and left swap, as do right and bottom."""
    w = sq.witness if sq.witness is None else sq.ambient.invert(sq.witness)
    return Square2(sq.ambient, sq.left, sq.top, sq.bottom, sq.right, w)


def with_reversed_2cells(sq: Square2) -> Square2:
    co = reverse_2cells(sq.ambient)
    w = sq.witness if sq.witness is None else sq.ambient.invert(sq.witness)
    return Square2(co, sq.top, sq.left, sq.right, sq.bottom, w)


def mate_2cell(sq: Square2, left_adj: Adjunction2, right_adj: Adjunction2) -> TwoCell:
    """top∘leftᴿ => rightᴿ∘right∘top∘leftᴿ = rightᴿ∘bottom∘left∘leftᴿ => rightᴿ∘bottom.

    ``left_adj`` and ``right_adj`` exhibit the left and right edges as left adjoints.
    """
    D = sq.ambient
    if left_adj.left != sq.left or right_adj.left != sq.right:
        raise CategoryError("adjunctions do not match the vertical edges")
    lR, rR = left_adj.right, right_adj.right
    x = D.then(lR, sq.top)
    cell = D.hcomp(D.id2(x), right_adj.unit)
    if sq.witness is not None:
        middle = D.hcomp(D.hcomp(D.id2(lR), sq.witness), D.id2(rR))
        cell = D.vcomp(cell, middle)
    last = D.hcomp(D.hcomp(left_adj.counit, D.id2(sq.bottom)), D.id2(rR))
    return D.vcomp(cell, last)


@dataclass(frozen=True)
class AdjointabilityReport:
    ok: bool
    stage: str | None = None
    mate: TwoCell | None = None
    left_adjunction: Adjunction2 | None = None
    right_adjunction: Adjunction2 | None = None

    def __bool__(self):
        return self.ok


def is_vertically_right_adjointable(sq: Square2) -> AdjointabilityReport:
    v = sq.check()
    if not v:
        raise CategoryError(f"not a commutative square: {v.detail}")
    D = sq.ambient
    la = find_right_adjoint(D, sq.left)
    if la is None:
        return AdjointabilityReport(False, "missing right adjoint of the left edge")
    ra = find_right_adjoint(D, sq.right)
    if ra is None:
        return AdjointabilityReport(False, "missing right adjoint of the right edge",
                                    left_adjunction=la)
    mate = mate_2cell(sq, la, ra)
    if not D.is_invertible(mate):
        return AdjointabilityReport(False, "mate is not invertible", mate, la, ra)
    return AdjointabilityReport(True, None, mate, la, ra)


def is_horizontally_right_adjointable(sq: Square2) -> AdjointabilityReport:
    return is_vertically_right_adjointable(transpose(sq))


def is_vertically_left_adjointable(sq: Square2) -> AdjointabilityReport:
    return is_vertically_right_adjointable(with_reversed_2cells(sq))


def is_horizontally_left_adjointable(sq: Square2) -> AdjointabilityReport:
    return is_vertically_right_adjointable(with_reversed_2cells(transpose(sq)))


def is_right_adjointable(sq: Square2) -> Verdict:
    v = is_vertically_right_adjointable(sq)
    if not v:
        return Verdict(False, ("vertical", v.stage), v.stage)
    h = is_horizontally_right_adjointable(sq)
    if not h:
        return Verdict(False, ("horizontal", h.stage), h.stage)
    return Verdict(True)


# Beck-Chevalley for functors into a 2-category ---------------------------------

class Functor2:
    """A strict functor from a category into a strict 2-category.

    ``morphisms`` sends each morphism of C to a 1-cell name in the hom category
    between the images of its endpoints.
    """

    def __init__(self, source: FinCategory, target: Strict2Cat, objects, morphisms, name="F"):
        self.source, self.target, self.name = source, target, name
        self.objects = dict(objects)
        self.morphisms = dict(morphisms)

    def ob(self, x):
        return self.objects[x]

    def mor(self, f) -> OneCell:
        C = self.source
        return OneCell(self.objects[C.src(f)], self.objects[C.tgt(f)], self.morphisms[f])

    def check(self) -> Verdict:
        C, D = self.source, self.target
        for x in C.objects:
            if self.mor(C.identity(x)) != D.id1(self.ob(x)):
                return Verdict(False, ("identity", x))
        for (g, f), h in C.table.items():
            gm, fm, hm = C.morphisms[g], C.morphisms[f], C.morphisms[h]
            if D.then(self.mor(fm), self.mor(gm)) != self.mor(hm):
                return Verdict(False, ("composition", (gm, fm)))
        return Verdict(True)


def image_square(F: Functor2, f, g) -> Square2 | None:
    """The image of the chosen pullback square of the cospan (f, g), if it exists."""
    C = F.source
    pb = pullback_i(C, C.midx(f), C.midx(g))
    if pb is None:
        return None
    _, pl, pr = pb
    return Square2(F.target, F.mor(C.morphisms[pr]), F.mor(C.morphisms[pl]),
                   F.mor(g), F.mor(f))


def check_left_BC(F: Functor2) -> Verdict:
    """Every pullback square of the source maps to a right adjointable square.

    The witness of a failure is (cospan, orientation, stage).
    """
    v = F.check()
    if not v:
        raise CategoryError(f"{F.name} is not a functor: {v.witness}")
    C = F.source
    n = 0
    for f, g in cospans_i(C):
        sq = image_square(F, C.morphisms[f], C.morphisms[g])
        if sq is None:
            continue
        n += 1
        r = is_right_adjointable(sq)
        if not r:
            return Verdict(False, ((C.morphisms[f], C.morphisms[g]),) + r.witness, r.detail)
    return Verdict(True, detail=f"{n} squares")


# 2-categories built from categories -------------------------------------------

def corr_2cat(C: FinCategory, choice=None) -> Strict2Cat:
    """Objects of C, hom(a, b) the spans a -> b, composition by chosen pullbacks.

    This is a genuine strict 2-category only when the chosen composition is
    strictly associative and unital (posets, for instance); run validate_2cat.
    """
    ch = DEFAULT_CHOICE if choice is None else choice
    hom = {(a, b): slice2(C, a, b)[0] for a in C.objects for b in C.objects}

    def span(cell):
        apex, l, r = cell.name
        return Span(C, cell.source, apex, cell.target, l, r)

    def mor(cell):
        s, t, m = cell.name
        return SpanMor(span(OneCell(cell.source, cell.target, s)),
                       span(OneCell(cell.source, cell.target, t)), m)

    def compose1(f, g):
        return slice_object(compose_spans(span(f), span(g), ch))

    def compose2(s, t):
        return slice_morphism(hcompose_2cells(mor(s), mor(t), ch))

    identity = {c: slice_object(identity_span(C, c)) for c in C.objects}
    return Strict2Cat.from_operations(C.objects, hom, identity, compose1, compose2,
                                      name=f"Corr({C.name})")


def inclusion_2functor(C: FinCategory, D: Strict2Cat | None = None) -> Functor2:
    """α ↦ (c <-id- c -α-> c') into corr_2cat(C)."""
    D = corr_2cat(C) if D is None else D
    return Functor2(C, D, {c: c for c in C.objects},
                    {m: slice_object(iota(C, m, "left")) for m in C.morphisms}, name="incl")


def locally_discrete_2cat(C: FinCategory) -> Strict2Cat:
    """C with identity 2-cells only: a 1-cell has a right adjoint iff it is invertible."""
    hom = {}
    for a in C.objects:
        for b in C.objects:
            ms = C.hom(a, b)
            hom[(a, b)] = FinCategory(ms, [(("id", m), m, m) for m in ms],
                                      {m: ("id", m) for m in ms}, {},
                                      name=f"{C.name}({a!r},{b!r})", derived=True)
    return Strict2Cat.from_operations(
        C.objects, hom, {c: C.identity(c) for c in C.objects},
        lambda f, g: C.compose(g.name, f.name),
        lambda s, t: ("id", C.compose(t.name[1], s.name[1])),
        name=f"disc({C.name})")


def codiscrete_2cat(objects, name="chaotic") -> Strict2Cat:
    """Exactly one 1-cell and one 2-cell between any two objects."""
    P = discrete_category(["*"], name="[0]")
    hom = {(a, b): P for a in objects for b in objects}
    o, m = P.objects[0], P.morphisms[0]
    return Strict2Cat.from_operations(objects, hom, {a: o for a in objects},
                                      lambda f, g: o, lambda s, t: m, name=name)


def constant_2functor(C: FinCategory, D: Strict2Cat, obj) -> Functor2:
    i = D.identity[obj]
    return Functor2(C, D, {c: obj for c in C.objects}, {m: i for m in C.morphisms},
                    name=f"const_{obj}")


# the counit square of a cartesian square ----------------------------------------

@dataclass(frozen=True)
class BCSquare:
    """Endo-spans of s: diagonal (γγᴿ), right (ββᴿ), bottom (ααᴿ), identity,
    joined by counit-derived maps of spans."""

    corners: tuple          # (diagonal, right, bottom, identity) as Spans
    edges: tuple            # (top, left, right, bottom) as SpanMors
    commutes: bool
    cartesian: bool
    matches_diagonal_image: bool

    def corner_triples(self):
        return [(S.left_foot, S.apex, S.right_foot) for S in self.corners]


def _chain(*cells):
    out = cells[0]
    for c in cells[1:]:
        out = vcompose_2cells(out, c)
    return out


def _generator_counit(C, alpha, ch):
    """ι(α)ιᴿ(α) => id as a map of spans; apex map α∘(first projection)."""
    L, R = iota(C, alpha, "left"), iota(C, alpha, "right")
    q = ch.get(C, R.right_leg, L.left_leg)
    return SpanMor(compose_spans(R, L, ch), identity_span(C, C.tgt(alpha)),
                   C.compose(alpha, q.proj_left))


def _counit_route(C, gamma_cell, first, second, ch):
    """The edge γγᴿ => second·secondᴿ through first: p -> ... with γ = second∘first.

    diag => (secondᴿ;firstᴿ);(first;second) => ((secondᴿ;firstᴿ);first);second
         => (secondᴿ;(firstᴿ;first));second => (secondᴿ;id);second => secondᴿ;second
    """
    Lf, Rf = iota(C, first, "left"), iota(C, first, "right")
    Ls, Rs = iota(C, second, "left"), iota(C, second, "right")
    RR = compose_spans(Rs, Rf, ch)
    LL = compose_spans(Lf, Ls, ch)
    to_rr = find_span_iso(gamma_cell[0], RR)
    to_ll = find_span_iso(gamma_cell[1], LL)
    if to_rr is None or to_ll is None:
        raise CategoryError("composite of generators is not isomorphic to the generator")
    steps = [
        hcompose_2cells(to_rr, to_ll, ch),
        inverse_2cell(coherence_iso("assoc", RR, Lf, Ls, choice=ch)),
        hcompose_2cells(coherence_iso("assoc", Rs, Rf, Lf, choice=ch), identity_2cell(Ls), ch),
        hcompose_2cells(hcompose_2cells(identity_2cell(Rs), _generator_counit(C, first, ch), ch),
                        identity_2cell(Ls), ch),
        hcompose_2cells(coherence_iso("runit", Rs, choice=ch), identity_2cell(Ls), ch),
    ]
    return _chain(*steps)


def bc_square_in_corr(C: FinCategory, top, left, right, bottom, choice=None) -> BCSquare:
    """The counit square of the cartesian square

        p --top--> y
        |          |
       left      right
        v          v
        x --bottom-> s

    among spans s -> s, and whether it is a pullback square there.
    """
    ch = DEFAULT_CHOICE if choice is None else choice
    ti, li, ri, bi = (C.midx(m) for m in (top, left, right, bottom))
    if (C.tgts[ti] != C.srcs[ri] or C.tgts[li] != C.srcs[bi] or C.srcs[ti] != C.srcs[li]
            or C.tgts[ri] != C.tgts[bi]):
        raise CategoryError("edges do not form a square")
    if not is_pullback_cone_i(C, C.srcs[ti], li, ti, bi, ri):
        raise CategoryError("the square is not cartesian")
    s = C.tgt(right)
    gamma = C.compose(right, top)
    gL, gR = iota(C, gamma, "left"), iota(C, gamma, "right")
    diag = compose_spans(gR, gL, ch)
    via_top = _counit_route(C, (gR, gL), top, right, ch)
    via_left = _counit_route(C, (gR, gL), left, bottom, ch)
    eps_right = _generator_counit(C, right, ch)
    eps_bottom = _generator_counit(C, bottom, ch)
    ident = identity_span(C, s)
    corners = (diag, eps_right.source, eps_bottom.source, ident)
    edges = (via_top, via_left, eps_right, eps_bottom)
    one = vcompose_2cells(via_top, eps_right)
    two = vcompose_2cells(via_left, eps_bottom)
    commutes = one.apex_map == two.apex_map

    S = slice2(C, s, s)[0]
    o = lambda X: S.oidx(slice_object(X))
    m = lambda e: S.midx(slice_morphism(e))
    cartesian = is_pullback_cone_i(S, o(diag), m(via_left), m(via_top), m(eps_bottom),
                                   m(eps_right))
    return BCSquare(corners, edges, commutes, cartesian,
                    _matches_diagonal(C, corners, edges, (top, left, right, bottom)))


def _matches_diagonal(C, corners, edges, square):
    """Compare with the square (x, α) ↦ (s <-α- x -α-> s) applied to the slice square."""
    top, left, right, bottom = square
    gamma = C.compose(right, top)
    targets = [Span.of(C, f, f) for f in (gamma, right, bottom)]
    targets.append(identity_span(C, C.tgt(right)))
    isos = [find_span_iso(X, T) for X, T in zip(corners, targets)]
    if any(i is None for i in isos):
        return False
    d_top = SpanMor(targets[0], targets[1], top)
    d_left = SpanMor(targets[0], targets[2], left)
    d_right = SpanMor(targets[1], targets[3], right)
    d_bottom = SpanMor(targets[2], targets[3], bottom)
    pairs = [(edges[0], d_top, 0, 1), (edges[1], d_left, 0, 2),
             (edges[2], d_right, 1, 3), (edges[3], d_bottom, 2, 3)]
    return all(vcompose_2cells(e, isos[j]).apex_map == vcompose_2cells(isos[i], d).apex_map
               for e, d, i, j in pairs)


def cartesian_squares(C: FinCategory):
    """Every commuting pullback square (top, left, right, bottom) of C."""
    for f, g in cospans_i(C):
        for p in range(C.n_obj):
            for u in C.hom_i(p, C.srcs[f]):
                for v in C.hom_i(p, C.srcs[g]):
                    if is_pullback_cone_i(C, p, u, v, f, g):
                        yield (C.morphisms[v], C.morphisms[u], C.morphisms[g], C.morphisms[f])
