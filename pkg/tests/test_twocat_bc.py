import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from corrcat.adjdual import generator_adjunction
from corrcat.fincat import is_pullback_cone_i
from corrcat.fixtures import (
    TWO_CAT_FIXTURES,
    chain,
    delooped_meet_monoid,
    divisor_poset,
    divisors,
    finset2,
    implication_map,
    lambda20,
    meet_map,
    meet_translations_2cat,
    walking_arrow,
    walking_square,
    z2,
)
from corrcat.limits import CategoryError
from corrcat.spans import iota, slice_morphism, slice_object
from corrcat.twocat_bc import (
    Functor2,
    OneCell,
    Square2,
    Strict2Cat,
    bc_square_in_corr,
    cartesian_squares,
    check_left_BC,
    codiscrete_2cat,
    corr_2cat,
    find_left_adjoint,
    find_right_adjoint,
    inclusion_2functor,
    is_horizontally_left_adjointable,
    is_horizontally_right_adjointable,
    is_vertically_left_adjointable,
    is_vertically_right_adjointable,
    iter_right_adjoints,
    locally_discrete_2cat,
    transpose,
    validate_2cat,
)

D12 = divisor_poset()
DIVS = divisors(12)


@pytest.fixture(scope="module")
def ends():
    return meet_translations_2cat()


@pytest.fixture(scope="module")
def corr_d12():
    return corr_2cat(D12)


def endo(f):
    return OneCell("*", "*", f)


def exponents(x):
    return (len([p for p in (2, 4) if x % p == 0]), 1 if x % 3 == 0 else 0)


def from_exponents(e):
    return 2 ** e[0] * 3 ** e[1]


def heyting_implication(d, x):
    """d ⇒ x in D12 computed prime by prime: full exponent where d's fits under x's."""
    top = (2, 1)
    return from_exponents(tuple(t if a <= b else b
                                for a, b, t in zip(exponents(d), exponents(x), top)))


def two_cell_group():
    G = z2()
    return Strict2Cat.from_operations(["*"], {("*", "*"): G}, {"*": "*"},
                                      lambda f, g: "*",
                                      lambda s, t: G.compose(s.name, t.name), name="B2(Z/2)")


# laws ---------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["point", "meet-monoid", "meet-translations"])
def test_fixture_two_categories_are_valid(name):
    assert validate_2cat(TWO_CAT_FIXTURES[name]()) == []


def test_broken_interchange_is_cited():
    bad = validate_2cat(TWO_CAT_FIXTURES["broken-interchange"]())
    assert bad and bad[0][0] == "interchange"


def test_span_two_category_is_strict_for_posets(corr_d12):
    assert validate_2cat(corr_d12) == []
    assert validate_2cat(corr_2cat(chain(2))) == []


def test_span_two_category_of_a_group_is_not_strictly_unital():
    laws = {law for law, _ in validate_2cat(corr_2cat(z2()))}
    assert "left unit" in laws


def test_other_two_categories_are_valid():
    assert validate_2cat(two_cell_group()) == []
    assert validate_2cat(locally_discrete_2cat(D12)) == []
    assert validate_2cat(codiscrete_2cat(["a", "b"])) == []


# adjunctions ---------------------------------------------------------------------------

def test_implication_fixture_matches_exponent_oracle():
    for d in DIVS:
        assert implication_map(d) == tuple(heyting_implication(d, x) for x in DIVS)


def test_meet_translations_have_implications_as_right_adjoints(ends):
    for d in DIVS:
        adj = find_right_adjoint(ends, endo(meet_map(d)))
        assert adj is not None and adj.triangles()
        assert adj.right == endo(implication_map(d))
        back = find_left_adjoint(ends, endo(implication_map(d)))
        assert back.left == endo(meet_map(d))


def test_only_the_unit_is_adjointable_in_the_delooped_monoid():
    D = delooped_meet_monoid()
    assert [d for d in DIVS if find_right_adjoint(D, endo(d))] == [12]


def comparison(D, adj, other):
    """g => g'∘f∘g => g' between two right adjoints of the same f."""
    g, g2 = adj.right, other.right
    first = D.hcomp(D.id2(g), other.unit)
    second = D.hcomp(adj.counit, D.id2(g2))
    return D.vcomp(first, second)


@pytest.mark.parametrize("make", [two_cell_group, meet_translations_2cat],
                         ids=["B2(Z/2)", "End(D12)"])
def test_right_adjoints_are_unique_up_to_invertible_2cells(make):
    D = make()
    for a in D.objects:
        for b in D.objects:
            for f in D.one_cells(a, b):
                found = list(iter_right_adjoints(D, f))
                for x, y in itertools.product(found, repeat=2):
                    assert D.is_invertible(comparison(D, x, y))


def test_adjunctions_with_nontrivial_2cell_automorphisms():
    # unit and counit must be mutually inverse: two adjunctions for the one 1-cell
    D = two_cell_group()
    found = list(iter_right_adjoints(D, endo("*")))
    assert len(found) == 2
    assert {(a.unit.name, a.counit.name) for a in found} == {("e", "e"), ("s", "s")}


def test_span_two_category_adjoints_match_generator_adjunctions(corr_d12):
    F = inclusion_2functor(D12, corr_d12)
    for m in D12.morphisms:
        gen = generator_adjunction(D12, m)
        adj = find_right_adjoint(corr_d12, F.mor(m))
        assert adj.right.name == slice_object(iota(D12, m, "right"))
        assert adj.unit.name == slice_morphism(gen.unit)
        assert adj.counit.name == slice_morphism(gen.counit)


# mates ---------------------------------------------------------------------------------

def meet_square(D, c, d):
    """Horizontal edges meet(c), vertical edges meet(d); commutes strictly."""
    h, v = endo(meet_map(c)), endo(meet_map(d))
    return Square2(D, h, v, v, h)


def frobenius(c, d):
    return all(gcd(c, heyting_implication(d, x)) == heyting_implication(d, gcd(c, x))
               for x in DIVS)


def test_mate_invertibility_matches_frobenius_oracle(ends):
    verdicts = set()
    for c in DIVS:
        for d in DIVS:
            r = is_vertically_right_adjointable(meet_square(ends, c, d))
            assert r.ok == frobenius(c, d)
            verdicts.add(r.ok)
    assert verdicts == {True, False}


def test_transpose_is_an_involution_and_swaps_orientation(ends):
    for c, d in itertools.product(DIVS, repeat=2):
        sq = meet_square(ends, c, d)
        assert transpose(transpose(sq)) == sq
        assert (is_horizontally_right_adjointable(sq).ok
                == is_vertically_right_adjointable(transpose(sq)).ok)


def test_vertical_right_iff_horizontal_left(ends):
    cells = ends.one_cells("*", "*")
    has_right = [f for f in cells if find_right_adjoint(ends, f)]
    has_left = [f for f in cells if find_left_adjoint(ends, f)]
    checked = 0
    for t, b in itertools.product(has_left, repeat=2):
        for l, r in itertools.product(has_right, repeat=2):
            sq = Square2(ends, t, l, r, b)
            if not sq.check():
                continue
            checked += 1
            assert (is_vertically_right_adjointable(sq).ok
                    == is_horizontally_left_adjointable(sq).ok)
    assert checked > 50


def test_left_adjointability_reverses_2cells(ends):
    sq = meet_square(ends, 4, 6)
    assert is_vertically_left_adjointable(sq).stage == "missing right adjoint of the left edge"


def test_square_must_commute(ends):
    # meet(4) after meet(2) is meet(2); meet(3) after meet(4) is meet(1)
    sq = Square2(ends, endo(meet_map(2)), endo(meet_map(4)), endo(meet_map(4)),
                 endo(meet_map(3)))
    assert not sq.check()
    with pytest.raises(CategoryError):
        is_vertically_right_adjointable(sq)


# Beck-Chevalley for functors into 2-categories ------------------------------------------

@pytest.mark.parametrize("C", [D12, chain(2), walking_square(), lambda20()],
                         ids=["d12", "[2]", "square", "lambda20"])
def test_inclusion_into_spans_satisfies_beck_chevalley(C):
    v = check_left_BC(inclusion_2functor(C))
    assert v, v.witness


def test_locally_discrete_target_fails():
    C = walking_arrow()
    F = Functor2(C, locally_discrete_2cat(C), {c: c for c in C.objects},
                 {m: m for m in C.morphisms})
    v = check_left_BC(F)
    assert not v
    assert v.witness == (("0->1", "0->1"), "vertical", "missing right adjoint of the right edge")


def test_codiscrete_target_passes():
    C = D12
    F = Functor2(C, codiscrete_2cat(C.objects), {c: c for c in C.objects},
                 {m: "*" for m in C.morphisms})
    assert check_left_BC(F)


def test_non_functor_is_rejected():
    C = walking_arrow()
    F = Functor2(C, codiscrete_2cat(["x"]), {c: "x" for c in C.objects},
                 {m: "nope" for m in C.morphisms})
    with pytest.raises(CategoryError):
        check_left_BC(F)


# squares of counits in the span category ------------------------------------------------

def test_every_cartesian_square_of_d12_gives_a_cartesian_counit_square():
    squares = list(cartesian_squares(D12))
    assert len(squares) == 70
    for sq in squares:
        r = bc_square_in_corr(D12, *sq)
        assert r.commutes and r.cartesian and r.matches_diagonal_image


def test_counit_square_corners_in_d12():
    r = bc_square_in_corr(D12, "2->4", "2->6", "4->12", "6->12")
    # diagonal, right edge, bottom edge, identity
    assert r.corner_triples() == [(12, 2, 12), (12, 4, 12), (12, 6, 12), (12, 12, 12)]


def test_identity_square_gives_identity_spans():
    i = D12.identity(12)
    r = bc_square_in_corr(D12, i, i, i, i)
    for S in r.corners:
        assert (S.apex, S.left_leg, S.right_leg) == (12, i, i)


@pytest.mark.parametrize("C", [z2(), finset2(), walking_square()],
                         ids=["z2", "finset2", "square"])
def test_counit_squares_in_other_categories(C):
    for sq in cartesian_squares(C):
        r = bc_square_in_corr(C, *sq)
        assert r.commutes and r.cartesian and r.matches_diagonal_image


def test_non_cartesian_square_is_rejected():
    # 1 -> 2, 1 -> 3 over 6 is cartesian; 1 -> 2, 1 -> 2 over 4 is not (the meet is 2)
    with pytest.raises(CategoryError):
        bc_square_in_corr(D12, "1->2", "1->2", "2->4", "2->4")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(DIVS), st.sampled_from(DIVS))
def test_cartesian_squares_are_pullbacks(a, b):
    s = 12
    f, g = D12.hom(a, s)[0], D12.hom(b, s)[0]
    p = gcd(a, b)
    to_a, to_b = D12.hom(p, a)[0], D12.hom(p, b)[0]
    assert is_pullback_cone_i(D12, D12.oidx(p), D12.midx(to_a), D12.midx(to_b),
                              D12.midx(f), D12.midx(g))
    assert (to_b, to_a, g, f) in set(cartesian_squares(D12))
