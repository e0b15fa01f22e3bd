from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from corrcat.fincat import (
    FinCategory,
    find_isomorphism,
    inverse_i,
    iso_classes,
    opposite,
    poset_category,
    product_category,
    pullback_i,
    slice2,
    structurally_equal,
    terminal_object,
    validate_category,
)
from corrcat.fixtures import divisor_poset, divisors, finset, finset3, function_label, z2
from corrcat.limits import CapExceeded, limits


def subset_poset(family):
    family = sorted(set(family), key=lambda s: (len(s), sorted(s)))
    return poset_category(family, lambda a, b: a <= b, name="subsets",
                          label=lambda a, b: (tuple(sorted(a)), tuple(sorted(b))))


families = st.lists(st.frozensets(st.integers(0, 3)), min_size=1, max_size=7)


def greatest_lower_bound(family, a, b):
    lower = [x for x in family if x <= a and x <= b]
    top = [x for x in lower if all(y <= x for y in lower)]
    return top[0] if top else None


def test_fixtures_are_categories():
    for C in (divisor_poset(), z2(), finset3(), finset(2)):
        assert validate_category(C) == []


def test_divisor_pullbacks_are_gcds():
    C = divisor_poset()
    t = C.oidx(12)
    seen = 0
    for f in C.inc[t]:
        for g in C.inc[t]:
            p, u, v = pullback_i(C, f, g)
            assert C.objects[p] == gcd(C.objects[C.srcs[f]], C.objects[C.srcs[g]])
            seen += 1
    assert seen == 36


@pytest.mark.parametrize("n", [1, 8, 30, 36, 60])
def test_pullbacks_in_other_divisor_lattices(n):
    C = divisor_poset(n)
    for a in divisors(n):
        for b in divisors(n):
            f, g = C.hom(a, n)[0], C.hom(b, n)[0]
            p, _, _ = pullback_i(C, C.midx(f), C.midx(g))
            assert C.objects[p] == gcd(a, b)


@settings(max_examples=60, deadline=None)
@given(families)
def test_poset_pullbacks_match_meets(family):
    C = subset_poset(family)
    assert validate_category(C) == []
    objs = list(C.objects)
    for s in objs:
        for a in objs:
            for b in objs:
                if a <= s and b <= s:
                    f, g = C.midx(C.hom(a, s)[0]), C.midx(C.hom(b, s)[0])
                    pb = pullback_i(C, f, g)
                    want = greatest_lower_bound(objs, a, b)
                    assert (None if pb is None else C.objects[pb[0]]) == want


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_finset_pullbacks_count_fiber_products(data):
    F = finset3()
    s = data.draw(st.integers(1, 3))
    f = data.draw(st.lists(st.integers(0, s - 1), max_size=3))
    g = data.draw(st.lists(st.integers(0, s - 1), max_size=3))
    pb = pullback_i(F, F.midx(function_label(len(f), s, f)), F.midx(function_label(len(g), s, g)))
    size = sum(1 for x in f for y in g if x == y)
    if size > 3:
        assert pb is None
    else:
        assert pb is not None and F.objects[pb[0]] == size


def test_finset3_lacks_a_pullback():
    F = finset3()
    f = F.midx(function_label(2, 1, (0, 0)))
    assert pullback_i(F, f, f) is None


def test_broken_composition_is_reported():
    # g∘f should land in Hom(a, b), not on the identity of b
    C = FinCategory(["a", "b"], [("ia", "a", "a"), ("ib", "b", "b"), ("f", "a", "b"),
                                 ("g", "b", "b")],
                    {"a": "ia", "b": "ib"}, {("g", "g"): "ib", ("g", "f"): "ib"})
    bad = validate_category(C)
    assert ("typing", ("g", "f")) in [(v.law, v.witness) for v in bad]


def test_groupoid_inverses_and_iso_classes():
    Z = z2()
    for m in range(Z.n_mor):
        assert inverse_i(Z, m) is not None
    C = divisor_poset()
    assert len(set(iso_classes(C))) == C.n_obj
    assert terminal_object(C) == 12


def test_opposite_is_an_involution():
    C = finset(2)
    Cop = opposite(C)
    assert opposite(Cop) is C
    assert validate_category(Cop) == []
    for f in C.morphisms:
        assert Cop.src(f) == C.tgt(f)


def test_product_counts():
    C, D = divisor_poset(), z2()
    P, pr1, pr2 = product_category(C, D)
    assert P.n_obj == C.n_obj * D.n_obj
    assert P.n_mor == C.n_mor * D.n_mor
    assert validate_category(P) == []
    assert product_category(C, D)[0] is P


def test_slice_objects_are_spans():
    C = divisor_poset()
    S, U = slice2(C, 4, 6)
    # spans 4 <- s -> 6 in D12 are the divisors of gcd(4, 6)
    assert sorted(U.ob(x) for x in S.objects) == [1, 2]
    assert validate_category(S) == []


def test_isomorphism_search_ignores_labels():
    C = divisor_poset()
    relabel = poset_category([f"d{d}" for d in divisors(12)],
                             lambda a, b: int(b[1:]) % int(a[1:]) == 0)
    assert not structurally_equal(C, relabel)
    assert find_isomorphism(C, relabel) is not None
    assert find_isomorphism(C, divisor_poset(8)) is None


def test_caps():
    with limits(max_objects=3):
        with pytest.raises(CapExceeded):
            divisor_poset()
