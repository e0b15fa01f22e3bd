from functools import reduce
from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from corrcat.fincat import check_functor
from corrcat.fixtures import divisor_poset, divisors, finset, finset3, walking_arrow, z2
from corrcat.limits import CapExceeded
from corrcat.twisted import (
    corr_level,
    is_cartesian_functor,
    kan_extend_cartesian,
    restrict_to_elementary,
    segal_check,
    twisted_arrow,
)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_twisted_arrow_sizes(n):
    T = twisted_arrow(n).carrier
    assert T.n_obj == comb(n + 2, 2)
    # arrows (i, j) -> (k, l) are the chains i <= k <= l <= j
    assert T.n_mor == comb(n + 4, 4)


def test_level_cap():
    with pytest.raises(CapExceeded):
        twisted_arrow(5)


def chains(n):
    """n composable spans in D12: feet and apexes with apex dividing both feet."""
    D = divisors(12)

    @st.composite
    def build(draw):
        feet = [draw(st.sampled_from(D))]
        apexes = []
        for _ in range(n):
            nxt = draw(st.sampled_from(D))
            common = [d for d in D if feet[-1] % d == 0 and nxt % d == 0]
            apexes.append(draw(st.sampled_from(common)))
            feet.append(nxt)
        return feet, apexes

    return build()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(chains))
def test_kan_extension_values_are_gcds(chain):
    feet, apexes = chain
    C = divisor_poset()
    spans = [(C.hom(s, a)[0], C.hom(s, b)[0]) for s, a, b in zip(apexes, feet, feet[1:])]
    S = kan_extend_cartesian(C, spans)
    assert S is not None
    n = len(spans)
    for i in range(n + 1):
        assert S.value(i, i) == feet[i]
        for j in range(i + 1, n + 1):
            assert S.value(i, j) == reduce(gcd, apexes[i:j])
    assert is_cartesian_functor(S)
    assert check_functor(S.assignment)
    assert restrict_to_elementary(S) == spans


def test_kan_extension_fails_without_pullback():
    F = finset3()
    cert = segal_check(F, 2).certificate
    assert kan_extend_cartesian(F, cert["spans"]) is None


def test_level_one_is_all_spans():
    assert corr_level(divisor_poset(), 1).n_obj == 70


def test_segal_d12():
    r = segal_check(divisor_poset(), 2)
    assert r.ok
    assert r.certificate["level_objects"] == r.certificate["spine_objects"] == 910


@pytest.mark.parametrize("C, n", [(z2(), 2), (walking_arrow(), 3), (walking_arrow(), 4)])
def test_segal_holds_with_all_pullbacks(C, n):
    assert segal_check(C, n).ok


@pytest.mark.parametrize("C", [finset3(), finset(2)])
def test_segal_fails_with_missing_pullbacks(C):
    r = segal_check(C, 2)
    assert not r.ok
    assert r.certificate["kind"] == "non-extendable spine datum"
    assert kan_extend_cartesian(C, r.certificate["spans"]) is None


def test_segal_needs_two_spans():
    with pytest.raises(ValueError):
        segal_check(divisor_poset(), 1)
