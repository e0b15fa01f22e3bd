"""The acceptance battery: eleven exact checks run by ``corrcat suite``.

Each check returns a plain dict (name, ok, counts, first failures, fixture
ids) so reports serialize deterministically.  Independent oracles (gcds,
fiber-product counting) live here, away from the engines they check.
"""

from __future__ import annotations

from math import gcd

from . import adjdual, fib
from .fincat import find_isomorphism, pullback_i
from .fixtures import (
    CAT_VALUED_FIXTURES,
    divisor_poset,
    finset3,
    function_label,
    point,
    walking_arrow,
    z2,
)
from .spans import all_spans, is_invertible_span, reverse_span
from .twisted import kan_extend_cartesian, segal_check
from .twocat_bc import bc_square_in_corr, cartesian_squares

MAX_FAILURES = 5


def _report(name, fixtures, checked, failures, **extra):
    out = {"name": name, "ok": not failures, "checked": checked,
           "failures": failures[:MAX_FAILURES], "fixtures": sorted(fixtures)}
    out.update(extra)
    return out


# 1 -------------------------------------------------------------------------------

# (f images, g images, common codomain size) in FinSet<=3
FINSET_COSPANS = [
    ((0,), (0,), 1), ((0, 0), (0, 0, 0), 1), ((0, 1), (0, 1), 2), ((0, 1), (1, 0), 2),
    ((0, 0), (0, 1), 2), ((0, 0), (1, 1), 2), ((), (0, 1), 2), ((0, 1, 2), (0, 1, 2), 3),
    ((0, 0, 1), (0, 0, 1), 3), ((0, 1, 2), (2,), 3), ((0, 0, 0), (0,), 1),
    ((0, 0, 0), (0, 0), 1), ((0, 1), (0, 0, 1), 2), ((0, 1), (0, 0, 0), 2),
    ((1, 1), (1, 1), 2), ((0,), (1, 2), 3), ((0, 1, 1), (1,), 2), ((2, 2), (2, 2, 0), 3),
    ((), (), 0), ((0, 1, 2), (0, 0, 0), 3),
]


def fiber_product_size(f, g):
    return sum(1 for x in f for y in g if x == y)


def pullback_oracles():
    failures, checked = [], 0
    C = divisor_poset()
    for f in C.inc[C.oidx(12)]:
        for g in C.inc[C.oidx(12)]:
            checked += 1
            x, y = C.objects[C.srcs[f]], C.objects[C.srcs[g]]
            pb = pullback_i(C, f, g)
            if pb is None or C.objects[pb[0]] != gcd(x, y):
                failures.append({"cospan": [x, y], "apex": None if pb is None else C.objects[pb[0]]})
    F = finset3()
    present = 0
    for f, g, s in FINSET_COSPANS:
        checked += 1
        fi = F.midx(function_label(len(f), s, f))
        gi = F.midx(function_label(len(g), s, g))
        n = fiber_product_size(f, g)
        pb = pullback_i(F, fi, gi)
        expect = n if n <= 3 else None
        got = None if pb is None else F.objects[pb[0]]
        present += pb is not None
        if got != expect:
            failures.append({"cospan": [list(f), list(g), s], "expected": expect, "got": got})
    return _report("pullback oracle equivalence", ["d12", "finset3"], checked, failures,
                   d12_cospans=36, finset_cospans=len(FINSET_COSPANS), finset_present=present)


# 2 -------------------------------------------------------------------------------

def iso_criterion():
    failures, checked, invertible = [], 0, {}
    for name, C in (("d12", divisor_poset()), ("z2", z2())):
        invertible[name] = 0
        for S in all_spans(C):
            checked += 1
            r = is_invertible_span(S)
            invertible[name] += r.legs_iso
            if not r.agree:
                failures.append({"fixture": name, "span": str(S)})
    # oracle: in a poset only identity spans are invertible; in a group every span is
    if invertible["d12"] != 6 or invertible["z2"] != 4:
        failures.append({"invertible_counts": invertible})
    return _report("iso criterion", ["d12", "z2"], checked, failures, invertible=invertible)


# 3 -------------------------------------------------------------------------------

def generator_adjunctions():
    failures, checked = [], 0
    for name, C in (("d12", divisor_poset()), ("z2", z2())):
        for m in C.morphisms:
            checked += 1
            try:
                adj = adjdual.generator_adjunction(C, m)
                v = adj.triangles()
            except Exception as exc:   # a raised error is a negative verdict
                failures.append({"fixture": name, "arrow": m, "error": str(exc)})
                continue
            if not v:
                failures.append({"fixture": name, "arrow": m, "triangle": v.witness})
    return _report("generator adjunctions", ["d12", "z2"], checked, failures)


# 4 -------------------------------------------------------------------------------

def ambidexterity():
    failures, checked = [], 0
    C = divisor_poset()
    for S in all_spans(C):
        checked += 1
        R = adjdual.span_right_adjoint(S)
        L = adjdual.span_left_adjoint(S)
        ok = (R.left == S and R.right == reverse_span(S) and bool(R.triangles())
              and L.right == S and L.left == reverse_span(S) and bool(L.triangles()))
        if not ok:
            failures.append({"span": str(S)})
    return _report("ambidexterity", ["d12"], checked, failures)


# 5 -------------------------------------------------------------------------------

def self_duality():
    failures, checked = [], 0
    C = divisor_poset()
    for c in C.objects:
        checked += 1
        v = adjdual.duality_data(C, c).zigzags()
        if not v:
            failures.append({"object": c, "zigzag": v.witness})
    for S in all_spans(C):
        checked += 1
        d = adjdual.dual_morphism(S)
        if d.iso_to_reverse is None or d.iso_to_reverse.target != reverse_span(S):
            failures.append({"span": str(S)})
    return _report("self-duality", ["d12"], checked, failures,
                   objects=C.n_obj, spans=checked - C.n_obj)


# 6 -------------------------------------------------------------------------------

def segal_property():
    failures = []
    good = segal_check(divisor_poset(), 2)
    if not good.ok:
        failures.append({"fixture": "d12", "certificate": good.certificate})
    F = finset3()
    bad = segal_check(F, 2)
    reverified = False
    if bad.ok:
        failures.append({"fixture": "finset3", "verdict": "unexpected yes"})
    else:
        spans = bad.certificate.get("spans") if bad.certificate else None
        reverified = bool(spans) and kan_extend_cartesian(F, spans) is None
        if not reverified:
            failures.append({"fixture": "finset3", "certificate": bad.certificate})
    return _report("segal property", ["d12", "finset3"], 2, failures,
                   d12=good.ok, finset3=bad.ok, certificate=bad.certificate,
                   certificate_reverified=reverified)


# 7 -------------------------------------------------------------------------------

def fibration_taxonomy():
    failures, checked = [], 0
    C = divisor_poset()
    p = fib.arrow_fibration(C)
    rep = fib.classify_fibration(p)
    if not rep.bifibration:
        failures.append({"arrow": "not a bifibration", "witnesses": rep.witnesses})
    for (c, d), F in fib.fibers(p).items():
        checked += 1
        discrete = F.n_mor == F.n_obj
        if not discrete or F.n_obj != len(C.hom(d, c)):
            failures.append({"arrow fiber": [c, d], "size": F.n_obj})
    # arrow criteria: ev1-cocartesian iff the source component is invertible,
    # ev0-cartesian iff the target component is invertible
    A, J = p.total, p.total.shape
    co1 = fib.relative(p, 0).cocartesian_flags()
    ca0 = fib.relative(p, 1).cartesian_flags()
    for k, comp in enumerate(A.components):
        checked += 1
        s = A.evaluate(A.srcs[k], J.oidx(0)), A.evaluate(A.tgts[k], J.oidx(0))
        t = A.evaluate(A.srcs[k], J.oidx(1)), A.evaluate(A.tgts[k], J.oidx(1))
        if co1[k] != (s[0] == s[1]) or ca0[k] != (t[0] == t[1]):
            failures.append({"arrow morphism": A.morphisms[k]})
    q = fib.span_fibration(C)
    rep2 = fib.classify_fibration(q)
    if not (rep2.bivariant and rep2.beck_chevalley):
        failures.append({"span": "not bivariant with Beck-Chevalley", "witnesses": rep2.witnesses})
    # span criteria with gcd as the meet: cocartesian iff the apex map is invertible,
    # cartesian iff the apex is the meet of both feet and the target apex,
    # bicartesian iff the apex is the meet of the target apex and the right foot
    S, K = q.total, q.total.shape
    co, ca, bi = q.cocartesian_flags(), q.cartesian_flags(), fib.bicartesian_flags(q)
    val = lambda x, i: C.objects[S.evaluate(x, K.oidx(i))]
    for k in range(S.n_mor):
        checked += 1
        a, b = S.srcs[k], S.tgts[k]
        want_co = val(a, 0) == val(b, 0)
        want_ca = val(a, 0) == gcd(gcd(val(a, 1), val(b, 0)), val(a, 2))
        want_bi = val(a, 0) == gcd(val(b, 0), val(a, 2))
        if (co[k], ca[k], bi[k]) != (want_co, want_ca, want_bi):
            failures.append({"span morphism": S.morphisms[k]})
    return _report("fibration taxonomy", ["d12"], checked, failures,
                   arrow_flags=rep.flags, span_flags=rep2.flags,
                   arrow_total=[A.n_obj, A.n_mor], span_total=[S.n_obj, S.n_mor])


# 8 and 9 ----------------------------------------------------------------------------

def grothendieck_roundtrip():
    failures, checked, verdicts = [], 0, {}
    for name, make in CAT_VALUED_FIXTURES.items():
        H = make()
        p = fib.grothendieck_two_sided(H)
        v = fib.two_sided(p)
        verdicts[name] = bool(v)
        if not v:
            failures.append({"fixture": name, "two_sided": v.witness})
        C, D = p.factors
        for c in C.objects:
            for d in D.objects:
                checked += 1
                if find_isomorphism(fib.extract_fiber(p, (c, d)), H.value((c, d))) is None:
                    failures.append({"fixture": name, "fiber": [c, d]})
        if name == "hom":
            checked += 1
            arr = fib.arrow_fibration(H.factors[0])
            if find_isomorphism(p.total, arr.total) is None:
                failures.append({"fixture": name, "total": "not isomorphic to the arrow category"})
    return _report("grothendieck roundtrip", list(CAT_VALUED_FIXTURES), checked, failures,
                   two_sided=verdicts)


def adjointability_flags():
    failures, verdicts = [], {}
    for name, make in CAT_VALUED_FIXTURES.items():
        H = make()
        a = bool(fib.functor_adjointable(H))
        b = bool(fib.two_sided(fib.unstraighten_cocartesian(H)))
        verdicts[name] = [a, b]
        if a != b:
            failures.append({"fixture": name, "adjointable": a, "two_sided": b})
    if all(a for a, _ in verdicts.values()):
        failures.append({"negative": "no engineered negative among the fixtures"})
    return _report("adjointability vs fibration flags", list(CAT_VALUED_FIXTURES),
                   len(verdicts), failures, verdicts=verdicts)


# 10 ------------------------------------------------------------------------------------

def constructive_bc_square():
    failures, checked = [], 0
    C = divisor_poset()
    for sq in cartesian_squares(C):
        checked += 1
        r = bc_square_in_corr(C, *sq)
        if not (r.commutes and r.cartesian and r.matches_diagonal_image):
            failures.append({"square": list(sq), "commutes": r.commutes, "cartesian": r.cartesian})
    i = C.identity(12)
    r = bc_square_in_corr(C, i, i, i, i)
    identity_ok = all(S.left_leg == S.right_leg == i and S.apex == 12 for S in r.corners)
    if not identity_ok:
        failures.append({"identity square": r.corner_triples()})
    return _report("constructive BC square", ["d12"], checked, failures,
                   identity_square=identity_ok)


# 11 ------------------------------------------------------------------------------------

def universal_bijections():
    failures, sizes = [], {}
    for name, C in (("[0]", point()), ("[1]", walking_arrow())):
        r = fib.span_fibration(C)
        s = fib.univer_span_bijection(C, r)
        a = fib.univer_arrow_bijection(C, r)
        sizes[name] = {"span": [s.domain_size, s.codomain_size],
                       "arrow": [a.domain_size, a.codomain_size]}
        if not s:
            failures.append({"base": name, "span": s.detail})
        if not a:
            failures.append({"base": name, "arrow": a.detail})
    return _report("universal-property bijections", ["point", "walking-arrow"], 4, failures,
                   sizes=sizes)


CRITERIA = {
    1: pullback_oracles,
    2: iso_criterion,
    3: generator_adjunctions,
    4: ambidexterity,
    5: self_duality,
    6: segal_property,
    7: fibration_taxonomy,
    8: grothendieck_roundtrip,
    9: adjointability_flags,
    10: constructive_bc_square,
    11: universal_bijections,
}


def run_criterion(n):
    try:
        return CRITERIA[n]()
    except Exception as exc:
        return {"name": CRITERIA[n].__name__.replace("_", " "), "ok": False, "checked": 0,
                "failures": [{"error": f"{type(exc).__name__}: {exc}"}], "fixtures": []}


def run_battery(which=None):
    which = sorted(CRITERIA) if which is None else sorted(which)
    return {str(n): run_criterion(n) for n in which}
