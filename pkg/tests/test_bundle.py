import json
from importlib.resources import files

import pytest

from corrcat.bundle import (
    Bundle,
    BundleError,
    CatSquare,
    bundle_document,
    bundles_equal,
    load_bundle,
    loads_bundle,
    save_bundle,
    serialize_bundle,
)
from corrcat.fincat import find_isomorphism, terminal_object
from corrcat.fixtures import (
    CAT_VALUED_FIXTURES,
    CATEGORY_FIXTURES,
    delooped_meet_monoid,
    divisor_poset,
    point_2cat,
)
from corrcat.spans import Span
from corrcat.twocat_bc import OneCell, Square2

SHIPPED = files("corrcat").joinpath("data/d12.bundle")


def test_empty_bundle():
    assert loads_bundle("").is_empty()
    assert loads_bundle("{}").is_empty()


def test_shipped_d12_bundle():
    b = loads_bundle(SHIPPED.read_text())
    assert list(b.categories) == ["D12"]
    C = b.categories["D12"]
    assert terminal_object(C) == 12
    assert find_isomorphism(C, divisor_poset()) is not None


@pytest.mark.parametrize("name", sorted(CATEGORY_FIXTURES))
def test_category_roundtrip(name):
    b = Bundle()
    b.add_category(name, CATEGORY_FIXTURES[name]())
    text = serialize_bundle(b)
    back = loads_bundle(text)
    assert bundles_equal(b, back)
    assert serialize_bundle(back) == text


@pytest.mark.parametrize("name", sorted(CAT_VALUED_FIXTURES))
def test_cat_valued_roundtrip(name):
    b = Bundle()
    b.add_cat_valued(name, CAT_VALUED_FIXTURES[name]())
    assert bundles_equal(b, loads_bundle(serialize_bundle(b)))


def full_bundle():
    b = Bundle()
    C = divisor_poset()
    b.add_category("D12", C)
    b.add_span("S", Span.of(C, "2->4", "2->6"))
    b.add_square("sq", CatSquare(C, "2->4", "2->6", "4->12", "6->12"))
    D = delooped_meet_monoid()
    b.add_two_cat("M", D)
    cell = lambda f: OneCell("*", "*", f)
    b.add_square("unit", Square2(D, cell(12), cell(12), cell(12), cell(12)))
    b.add_square("stuck", Square2(D, cell(12), cell(4), cell(4), cell(12)))
    b.add_two_cat("pt", point_2cat())
    return b


def test_full_roundtrip_through_yaml_and_json(tmp_path):
    b = full_bundle()
    back = loads_bundle(serialize_bundle(b))
    assert bundles_equal(b, back)
    path = tmp_path / "b.json"
    path.write_text(json.dumps(bundle_document(b)))
    assert bundles_equal(b, load_bundle(path))
    save_bundle(b, tmp_path / "b.yaml")
    assert bundles_equal(b, load_bundle(tmp_path / "b.yaml"))


def test_serialization_is_stable():
    assert serialize_bundle(full_bundle()) == serialize_bundle(full_bundle())


def test_identities_are_synthesized():
    b = loads_bundle("""
categories:
  arrow:
    objects: [a, b]
    morphisms: [{id: f, src: a, tgt: b}]
""")
    C = b.categories["arrow"]
    assert C.n_mor == 3


def test_broken_composition_cites_the_pair():
    text = """
categories:
  c:
    objects: [a]
    morphisms: [{id: i1, src: a, tgt: a}, {id: f, src: a, tgt: a}]
    identities: {a: i1}
    composition: [[f, f, f], [i1, f, i1]]
"""
    with pytest.raises(BundleError, match=r"left identity fails at \('i1', 'f'\)"):
        loads_bundle(text)


def test_parse_error_has_line_and_column():
    text = "categories:\n  c:\n    objects: [a, b}\n    morphisms: []\n"
    with pytest.raises(BundleError, match=r"^<string>:3:19: "):
        loads_bundle(text)


@pytest.mark.parametrize("text, message", [
    ("functors: {F: {source: nope, target: nope, objects: {}, morphisms: {}}}",
     "dangling reference 'nope'"),
    ("spans: {S: {category: C, left: a, right: b}}", "dangling reference 'C'"),
    ("bogus: 1", "unknown top-level keys"),
    ("categories: {c: {objects: [a], morphisms: [{id: f, src: a, tgt: b}]}}", "unknown endpoint"),
])
def test_rejections(text, message):
    with pytest.raises(BundleError, match=message):
        loads_bundle(text)


def test_broken_interchange_is_rejected():
    from corrcat.fixtures import broken_interchange_2cat
    b = Bundle()
    b.add_two_cat("bad", broken_interchange_2cat())
    with pytest.raises(BundleError, match="interchange"):
        loads_bundle(serialize_bundle(b))
