"""Diagrams in finite categories.

Enumeration of functors and natural transformations by backtracking,
functor categories built from them, precomposition functors between
functor categories, and adjoints of functors found through universal arrows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    Verdict,
    check_functor,
    check_nat_trans,
    compose_functors,
    functor_op,
    identity_functor,
    inverse_i,
    opposite,
)


def _plan(J: FinCategory, order):
    pos = {j: k for k, j in enumerate(order)}
    groups = {j: [] for j in order}
    for m in range(J.n_mor):
        if J.ids[J.srcs[m]] == m:
            continue
        groups[max(J.srcs[m], J.tgts[m], key=pos.__getitem__)].append(m)
    steps, step_of = [], {}
    for j in order:
        step_of[J.ids[j]] = len(steps)
        steps.append(("o", j))
        for m in groups[j]:
            step_of[m] = len(steps)
            steps.append(("m", m))
    checks = [[] for _ in steps]
    for (b, a), h in J.table.items():
        if J.ids[J.srcs[a]] == a or J.ids[J.srcs[b]] == b:
            continue
        checks[max(step_of[a], step_of[b], step_of[h])].append((b, a, h))
    return steps, checks


def iter_functors(J: FinCategory, C: FinCategory, *, order=None, candidates=None,
                  mor_ok=None):
    """Yield every functor J -> C as a tuple of C-morphism indices, one per J-morphism.

    ``order`` fixes the order in which J's objects are assigned;
    ``candidates(j, obj, img)`` may restrict the images of object j given
    the partial object and morphism assignments; ``mor_ok(m, g)`` may veto an image.
    """
    order = list(range(J.n_obj)) if order is None else list(order)
    steps, checks = _plan(J, order)
    img = [None] * J.n_mor
    obj = [None] * J.n_obj
    table = C.table

    def consistent(k):
        return all(table.get((img[b], img[a])) == img[h] for b, a, h in checks[k])

    def rec(k):
        if k == len(steps):
            yield tuple(img)
            return
        kind, x = steps[k]
        if kind == "o":
            cands = range(C.n_obj) if candidates is None else candidates(x, obj, img)
            for c in cands:
                obj[x] = c
                img[J.ids[x]] = C.ids[c]
                if consistent(k):
                    yield from rec(k + 1)
            obj[x] = None
            img[J.ids[x]] = None
        else:
            for g in C.hom_i(obj[J.srcs[x]], obj[J.tgts[x]]):
                if mor_ok is not None and not mor_ok(x, g):
                    continue
                img[x] = g
                if consistent(k):
                    yield from rec(k + 1)
            img[x] = None

    yield from rec(0)


def iter_nat_trans(J: FinCategory, C: FinCategory, F, G, comp_ok=None):
    """Yield component tuples of natural transformations F => G (tables as above)."""
    arrows = [[] for _ in range(J.n_obj)]
    for m in range(J.n_mor):
        if J.ids[J.srcs[m]] != m:
            arrows[max(J.srcs[m], J.tgts[m])].append(m)
    src_obj = [C.srcs[F[J.ids[j]]] for j in range(J.n_obj)]
    tgt_obj = [C.srcs[G[J.ids[j]]] for j in range(J.n_obj)]
    comp = [None] * J.n_obj
    table = C.table

    def rec(j):
        if j == J.n_obj:
            yield tuple(comp)
            return
        for c in C.hom_i(src_obj[j], tgt_obj[j]):
            if comp_ok is not None and not comp_ok(j, c):
                continue
            comp[j] = c
            if all(table[(G[m], comp[J.srcs[m]])] == table[(comp[J.tgts[m]], F[m])]
                   for m in arrows[j]):
                yield from rec(j + 1)
        comp[j] = None

    yield from rec(0)


class FunctorCategory(FinCategory):
    """A (full or wide) subcategory of the functor category [J, C].

    ``tables[i]`` is the morphism table of the i-th object and
    ``components[k]`` the component tuple of the k-th morphism.
    """

    shape: FinCategory
    ambient: FinCategory
    tables: list
    components: list

    def evaluate(self, x: int, j: int) -> int:
        """Object index of the diagram x at the shape object j."""
        return self.ambient.srcs[self.tables[x][self.shape.ids[j]]]


def functor_category(J: FinCategory, C: FinCategory, *, tables=None, comp_ok=None,
                     bucket=None, name=None) -> FunctorCategory:
    """Diagrams J -> C (all of them, or the given tables) and the natural
    transformations between them whose components pass ``comp_ok``.

    ``bucket(table)`` may be given when transformations can only exist
    between diagrams with equal bucket keys; other pairs are skipped.
    """
    tables = list(iter_functors(J, C)) if tables is None else list(tables)
    cm = C.morphisms
    objects = [tuple(cm[g] for g in t) for t in tables]
    groups = {}
    for a, F in enumerate(tables):
        groups.setdefault(None if bucket is None else bucket(F), []).append(a)
    morphisms, srcs, tgts, comps = [], [], [], []
    index = {}
    for a, F in enumerate(tables):
        for b in groups[None if bucket is None else bucket(F)]:
            G = tables[b]
            for eta in iter_nat_trans(J, C, F, G, comp_ok):
                index[(a, b, eta)] = len(morphisms)
                morphisms.append((objects[a], objects[b], tuple(cm[c] for c in eta)))
                srcs.append(a)
                tgts.append(b)
                comps.append(eta)
    ids = [index[(a, a, tuple(F[J.ids[j]] for j in range(J.n_obj)))]
           for a, F in enumerate(tables)]
    out = [[] for _ in tables]
    for k in range(len(morphisms)):
        out[srcs[k]].append(k)
    table = {}
    ctab = C.table
    for k in range(len(morphisms)):
        a, b, s = srcs[k], tgts[k], comps[k]
        for l in out[b]:
            t = comps[l]
            table[(l, k)] = index[(a, tgts[l], tuple(ctab[(t[j], s[j])] for j in range(J.n_obj)))]
    return FunctorCategory.build(
        objects, morphisms, srcs, tgts, ids, table,
        name=name or f"[{J.name},{C.name}]", shape=J, ambient=C, tables=tables,
        components=comps)


def precompose(K: Functor, big: FunctorCategory, small: FunctorCategory) -> Functor:
    """The functor [J, C] -> [J', C] given by precomposition with K: J' -> J.

    ``small`` must contain every restricted diagram and transformation.
    """
    J2 = K.source
    obj_index = {t: i for i, t in enumerate(small.tables)}
    mor_index = {(small.srcs[k], small.tgts[k], c): k for k, c in enumerate(small.components)}
    ob_i = []
    for t in big.tables:
        ob_i.append(obj_index[tuple(t[K.mor_i[m]] for m in range(J2.n_mor))])
    mor_i = []
    for k, c in enumerate(big.components):
        key = (ob_i[big.srcs[k]], ob_i[big.tgts[k]], tuple(c[K.ob_i[j]] for j in range(J2.n_obj)))
        mor_i.append(mor_index[key])
    return Functor.from_indices(big, small, ob_i, mor_i, name="restrict")


def diagram_functor(J: FinCategory, C: FinCategory, table) -> Functor:
    """The functor J -> C encoded by a morphism table."""
    return Functor.from_indices(J, C, [C.srcs[table[J.ids[j]]] for j in range(J.n_obj)], table,
                                name="diagram")


# adjoints of functors --------------------------------------------------------

@dataclass(frozen=True)
class FunctorAdjunction:
    left: Functor
    right: Functor
    unit: NatTrans     # id => right∘left
    counit: NatTrans   # left∘right => id


def _universal_arrow(F: Functor, y: int):
    """A terminal object (c, e: F c -> y) of the comma category F/y, or None."""
    C, D = F.source, F.target
    arrows = [(c, e) for c in range(C.n_obj) for e in D.hom_i(F.ob_i[c], y)]
    for c, e in arrows:
        good = True
        for c2, e2 in arrows:
            n = sum(1 for m in C.hom_i(c2, c) if D.table[(e, F.mor_i[m])] == e2)
            if n != 1:
                good = False
                break
        if good:
            return c, e
    return None


def _factor(F, c_target, e, c2, e2):
    """Unique m: c2 -> c_target with e∘F(m) = e2."""
    C, D = F.source, F.target
    for m in C.hom_i(c2, c_target):
        if D.table[(e, F.mor_i[m])] == e2:
            return m
    raise AssertionError("universal arrow failed to factor")


def triangle_identities(adj: FunctorAdjunction) -> Verdict:
    L, R = adj.left, adj.right
    C, D = L.source, L.target
    eta, eps = adj.unit.comp_i, adj.counit.comp_i
    for x in range(C.n_obj):
        # eps_{Lx} ∘ L(eta_x) = id_{Lx}
        if D.table[(eps[L.ob_i[x]], L.mor_i[eta[x]])] != D.ids[L.ob_i[x]]:
            return Verdict(False, ("left triangle", C.objects[x]))
    for y in range(D.n_obj):
        # R(eps_y) ∘ eta_{Ry} = id_{Ry}
        if C.table[(R.mor_i[eps[y]], eta[R.ob_i[y]])] != C.ids[R.ob_i[y]]:
            return Verdict(False, ("right triangle", D.objects[y]))
    return Verdict(True)


def right_adjoint(F: Functor) -> FunctorAdjunction | None:
    """A right adjoint of F with unit and counit, or None when none exists."""
    C, D = F.source, F.target
    ob, eps = [], []
    for y in range(D.n_obj):
        ua = _universal_arrow(F, y)
        if ua is None:
            return None
        ob.append(ua[0])
        eps.append(ua[1])
    mor = []
    for g in range(D.n_mor):
        s, t = D.srcs[g], D.tgts[g]
        mor.append(_factor(F, ob[t], eps[t], ob[s], D.table[(g, eps[s])]))
    G = Functor.from_indices(D, C, ob, mor, name=f"{F.name}^R")
    eta = [_factor(F, ob[F.ob_i[x]], eps[F.ob_i[x]], x, D.ids[F.ob_i[x]])
           for x in range(C.n_obj)]
    adj = FunctorAdjunction(F, G, NatTrans(identity_functor(C), compose_functors(G, F), eta),
                            NatTrans(compose_functors(F, G), identity_functor(D), eps))
    if not (check_functor(G) and check_nat_trans(adj.unit) and check_nat_trans(adj.counit)
            and triangle_identities(adj)):
        raise AssertionError("universal-arrow construction produced an invalid adjunction")
    return adj


def left_adjoint(F: Functor) -> FunctorAdjunction | None:
    """A left adjoint of F, obtained from a right adjoint of F^op."""
    adj = right_adjoint(functor_op(F))
    if adj is None:
        return None
    C, D = F.source, F.target
    L = Functor.from_indices(D, C, adj.right.ob_i, adj.right.mor_i, name=f"{F.name}^L")
    unit = NatTrans(identity_functor(D), compose_functors(F, L), adj.counit.comp_i)
    counit = NatTrans(compose_functors(L, F), identity_functor(C), adj.unit.comp_i)
    res = FunctorAdjunction(L, F, unit, counit)
    if not (check_nat_trans(unit) and check_nat_trans(counit) and triangle_identities(res)):
        raise AssertionError("dualised adjunction is invalid")
    return res


def search_right_adjoints(F: Functor):
    """Brute-force search: every (G, unit, counit) with strict triangle identities.

    Exponential; used only to cross-check :func:`right_adjoint` on tiny inputs.
    """
    C, D = F.source, F.target
    for Gt in iter_functors(D, C):
        G = Functor.from_indices(D, C, [C.srcs[Gt[D.ids[y]]] for y in range(D.n_obj)], Gt)
        GF = compose_functors(G, F)
        FG = compose_functors(F, G)
        idC, idD = identity_functor(C), identity_functor(D)
        for eta in iter_nat_trans(C, C, idC.mor_i, GF.mor_i):
            for eps in iter_nat_trans(D, D, FG.mor_i, idD.mor_i):
                adj = FunctorAdjunction(F, G, NatTrans(idC, GF, eta), NatTrans(FG, idD, eps))
                if triangle_identities(adj):
                    yield adj


def mate(top: Functor, left: Functor, right: Functor, bottom: Functor,
         adj_right: FunctorAdjunction, adj_left: FunctorAdjunction) -> list[int]:
    """Components of the mate top∘left^R => right^R∘bottom.

    The square is right∘top = bottom∘left; ``adj_right`` and ``adj_left``
    are adjunctions whose left adjoints are ``right`` and ``left``.
    Components are indexed by the objects of the common target of ``left``
    and ``bottom``'s source.
    """
    E01 = left.target
    E10 = top.target
    Rr, Rl = adj_right.right, adj_left.right
    eta = adj_right.unit.comp_i      # id_{E10} => Rr∘right
    eps = adj_left.counit.comp_i     # left∘Rl => id_{E01}
    out = []
    for y in range(E01.n_obj):
        a = eta[top.ob_i[Rl.ob_i[y]]]
        b = Rr.mor_i[bottom.mor_i[eps[y]]]
        out.append(E10.table[(b, a)])
    return out


def check_square(top, left, right, bottom) -> bool:
    return (compose_functors(right, top).ob_i == compose_functors(bottom, left).ob_i and
            compose_functors(right, top).mor_i == compose_functors(bottom, left).mor_i)
