from math import gcd

import pytest

from corrcat import fib
from corrcat.fincat import find_isomorphism, inverse_i
from corrcat.fixtures import (
    CAT_VALUED_FIXTURES,
    bc_counterexample,
    chain,
    divisor_poset,
    finset2,
    point,
    walking_arrow,
    z2,
)
from corrcat.limits import CapExceeded, CategoryError

D12 = divisor_poset()


@pytest.fixture(scope="module")
def span_d12():
    return fib.span_fibration(D12)


def component_is_iso(p, k, j):
    A = p.total
    C = A.ambient
    return inverse_i(C, A.components[k][A.shape.oidx(j)]) is not None


@pytest.mark.parametrize("C", [D12, z2(), finset2()], ids=["d12", "z2", "finset2"])
def test_arrow_fibration_closed_forms(C):
    p = fib.arrow_fibration(C)
    co = fib.relative(p, 0).cocartesian_flags()    # ev1
    ca = fib.relative(p, 1).cartesian_flags()      # ev0
    for k in range(p.total.n_mor):
        assert co[k] == component_is_iso(p, k, 0)
        assert ca[k] == component_is_iso(p, k, 1)


@pytest.mark.parametrize("C", [D12, z2(), finset2()], ids=["d12", "z2", "finset2"])
def test_arrow_fibration_is_a_bifibration_with_hom_fibers(C):
    p = fib.arrow_fibration(C)
    rep = fib.classify_fibration(p)
    assert rep.bifibration and rep.two_sided and rep.consistent()
    for (c, d), F in fib.fibers(p).items():
        assert F.n_obj == F.n_mor == len(C.hom(d, c))


def test_span_fibration_is_bivariant_with_beck_chevalley(span_d12):
    rep = fib.classify_fibration(span_d12)
    assert rep.bivariant and rep.beck_chevalley and rep.consistent()
    assert not rep.groupoid_fibers


@pytest.mark.parametrize("C, meet", [(D12, gcd), (chain(3), min)], ids=["d12", "[3]"])
def test_span_fibration_closed_forms(C, meet):
    q = fib.span_fibration(C)
    S, K = q.total, q.total.shape
    val = lambda x, i: C.objects[S.evaluate(x, K.oidx(i))]
    co, ca, bi = q.cocartesian_flags(), q.cartesian_flags(), fib.bicartesian_flags(q)
    for k in range(S.n_mor):
        a, b = S.srcs[k], S.tgts[k]
        assert co[k] == (val(a, 0) == val(b, 0))
        assert ca[k] == (val(a, 0) == meet(meet(val(a, 1), val(b, 0)), val(a, 2)))
        assert bi[k] == (val(a, 0) == meet(val(b, 0), val(a, 2)))


def test_flip_swaps_the_factors():
    p = fib.arrow_fibration(walking_arrow())
    q = fib.flip(fib.flip(p))
    assert q.pair_ob == p.pair_ob
    assert fib.two_sided(p)
    assert not fib.two_sided(fib.flip(p))


def test_beck_chevalley_counterexample():
    rep = fib.classify_fibration(bc_counterexample())
    assert rep.bivariant
    assert not rep.beck_chevalley


@pytest.mark.parametrize("name", list(CAT_VALUED_FIXTURES))
def test_grothendieck_fibers_are_the_values(name):
    H = CAT_VALUED_FIXTURES[name]()
    p = fib.grothendieck_two_sided(H)
    assert fib.two_sided(p)
    C, D = p.factors
    for c in C.objects:
        for d in D.objects:
            assert find_isomorphism(fib.extract_fiber(p, (c, d)), H.value((c, d))) is not None


def test_grothendieck_of_hom_is_the_arrow_category():
    p = fib.grothendieck_two_sided(CAT_VALUED_FIXTURES["hom"]())
    assert fib.total_isomorphic(p, fib.arrow_fibration(D12)) is not None


@pytest.mark.parametrize("name", list(CAT_VALUED_FIXTURES))
def test_adjointability_matches_two_sidedness(name):
    H = CAT_VALUED_FIXTURES[name]()
    a = fib.functor_adjointable(H)
    assert bool(a) == bool(fib.two_sided(fib.unstraighten_cocartesian(H)))


def test_engineered_negative_names_its_square():
    v = fib.functor_adjointable(CAT_VALUED_FIXTURES["non-adjointable"]())
    assert not v
    assert v.witness is not None
    assert fib.functor_adjointable(CAT_VALUED_FIXTURES["adjointable"]())


@pytest.mark.parametrize("C", [point(), walking_arrow()], ids=["[0]", "[1]"])
def test_universal_bijections(C):
    r = fib.span_fibration(C)
    assert fib.univer_span_bijection(C, r)
    assert fib.univer_arrow_bijection(C, r)
    # the arrow criterion needs only a two-sided target
    assert fib.univer_arrow_bijection(C, fib.arrow_fibration(C))


def test_span_bijection_needs_a_cocartesian_target():
    C = walking_arrow()
    r = fib.arrow_fibration(C)
    assert not fib.classify_fibration(r).cocartesian
    rep = fib.univer_span_bijection(C, r)
    assert not rep
    assert (rep.domain_size, rep.codomain_size) == (0, 1)


def test_universal_checks_are_capped():
    with pytest.raises(CapExceeded):
        fib.univer_span_bijection(D12, fib.span_fibration(D12))


def test_base_mismatch_is_rejected():
    with pytest.raises(CategoryError):
        fib.univer_span_bijection(chain(2), fib.span_fibration(walking_arrow()))
