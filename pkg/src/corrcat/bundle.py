"""Bundles: one YAML (or JSON) document holding named categories, functors,
Cat-valued functors, strict 2-categories, spans and squares.

A category is written as

    objects: [1, 2]
    morphisms: [{id: "1->2", src: 1, tgt: 2}]
    identities: {1: "1->1", 2: "2->2"}
    composition: [[g, f, gf], ...]

Identity morphisms may be left out of ``morphisms`` (and out of
``identities``, in which case they are named ``id_<object>``); composites
with identities are filled in.  Lists inside identifiers are read back as
tuples so product categories survive a roundtrip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import yaml

from .fib import CatValuedFunctor
from .fincat import (
    FinCategory,
    Functor,
    check_functor,
    product_category,
    structurally_equal,
    validate_category,
)
from .limits import CorrError
from .spans import Span
from .twocat_bc import OneCell, Square2, Strict2Cat, TwoCell, validate_2cat


# the libyaml bindings when present; same safe subset either way
_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)
_Dumper = getattr(yaml, "CSafeDumper", yaml.SafeDumper)


class BundleError(CorrError):
    """A bundle failed to parse, to resolve a reference, or to validate."""


class CatSquare(NamedTuple):
    """A commutative square of morphisms in one category (top, left, right, bottom)."""
    ambient: FinCategory
    top: object
    left: object
    right: object
    bottom: object


@dataclass
class Bundle:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    cat_valued: dict = field(default_factory=dict)
    two_cats: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    squares: dict = field(default_factory=dict)

    def is_empty(self):
        return not any((self.categories, self.functors, self.cat_valued, self.two_cats,
                        self.spans, self.squares))

    # registration keeps every referenced entity named, so that a serialized
    # bundle reads back to the same set of entries
    def add_category(self, name, C: FinCategory):
        for k, v in self.categories.items():
            if v is C:
                return k
        if name in self.categories:
            raise BundleError(f"category name {name!r} already used")
        self.categories[name] = C
        return name

    def add_functor(self, name, F: Functor):
        self.add_category(f"{name}.source", F.source)
        self.add_category(f"{name}.target", F.target)
        self.functors[name] = F
        return name

    def add_cat_valued(self, name, H: CatValuedFunctor):
        if H.factors is not None:
            for k, X in enumerate(H.factors):
                self.add_category(f"{name}.factor{k}", X)
        else:
            self.add_category(f"{name}.source", H.source)
        for k, V in enumerate(H.values):
            self.add_category(f"{name}.value{k}", V)
        for k, F in enumerate(H.actions):
            self.add_functor(f"{name}.act{k}", F)
        self.cat_valued[name] = H
        return name

    def add_two_cat(self, name, D: Strict2Cat):
        for (a, b), H in D.hom.items():
            self.add_category(f"{name}.hom{len(self.categories)}", H)
        self.two_cats[name] = D
        return name

    def add_span(self, name, S: Span):
        self.add_category(f"{name}.ambient", S.ambient)
        self.spans[name] = S
        return name

    def add_square(self, name, sq):
        if isinstance(sq, Square2):
            if not any(D is sq.ambient for D in self.two_cats.values()):
                self.add_two_cat(f"{name}.ambient", sq.ambient)
        else:
            self.add_category(f"{name}.ambient", sq.ambient)
        self.squares[name] = sq
        return name


# identifiers ------------------------------------------------------------------

def _ident(x):
    if isinstance(x, list):
        return tuple(_ident(y) for y in x)
    return x


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


def _pairs(raw, what):
    """A mapping or a list of [key, value] pairs, as a list of pairs."""
    if raw is None:
        return []
    if isinstance(raw, dict):
        return [(_ident(k), _ident(v)) for k, v in raw.items()]
    if isinstance(raw, list):
        out = []
        for item in raw:
            if not isinstance(item, list) or len(item) != 2:
                raise BundleError(f"{what}: expected [key, value] pairs, got {item!r}")
            out.append((_ident(item[0]), _ident(item[1])))
        return out
    raise BundleError(f"{what}: expected a mapping or a list of pairs")


def _match(key, known, what):
    """Resolve ``key`` among ``known``, also accepting its string form (JSON keys)."""
    if key in known:
        return key
    hits = [k for k in known if str(k) == str(key)]
    if len(hits) == 1:
        return hits[0]
    raise BundleError(f"{what}: unknown reference {key!r}")


# parsing ------------------------------------------------------------------------

def _category(name, doc) -> FinCategory:
    if not isinstance(doc, dict):
        raise BundleError(f"category {name!r}: expected a mapping")
    objects = [_ident(o) for o in doc.get("objects", [])]
    morphisms = []
    for m in doc.get("morphisms", []):
        try:
            morphisms.append((_ident(m["id"]), _ident(m["src"]), _ident(m["tgt"])))
        except (KeyError, TypeError):
            raise BundleError(f"category {name!r}: morphism entry {m!r} needs id, src, tgt") from None
    identities = {_match(o, objects, f"category {name!r} identities"): i
                  for o, i in _pairs(doc.get("identities"), f"category {name!r} identities")}
    ids = {m for m, _, _ in morphisms}
    for o in objects:
        i = identities.setdefault(o, f"id_{o}")
        if i not in ids:
            morphisms.append((i, o, o))
            ids.add(i)
    comp = []
    for entry in doc.get("composition", []):
        if not isinstance(entry, list) or len(entry) != 3:
            raise BundleError(f"category {name!r}: composition entry {entry!r} is not [g, f, gf]")
        comp.append(tuple(_ident(x) for x in entry))
    try:
        C = FinCategory(objects, morphisms, identities, comp, name=name)
    except CorrError as exc:
        raise BundleError(f"category {name!r}: {exc}") from None
    bad = validate_category(C)
    if bad:
        v = bad[0]
        raise BundleError(f"category {name!r}: {v.law} fails at {v.witness!r} {v.message}".rstrip())
    return C


def _ref(table, name, what):
    try:
        return table[name]
    except (KeyError, TypeError):
        raise BundleError(f"{what}: dangling reference {name!r}") from None


def _functor(name, doc, cats) -> Functor:
    A = _ref(cats, doc.get("source"), f"functor {name!r} source")
    B = _ref(cats, doc.get("target"), f"functor {name!r} target")
    obs = dict(_pairs(doc.get("objects"), f"functor {name!r} objects"))
    mors = dict(_pairs(doc.get("morphisms"), f"functor {name!r} morphisms"))
    try:
        F = Functor(A, B, obs, mors, name=name)
    except CorrError as exc:
        raise BundleError(f"functor {name!r}: {exc}") from None
    v = check_functor(F)
    if not v:
        raise BundleError(f"functor {name!r}: {v.detail} at {v.witness!r}")
    return F


def _cat_valued(name, doc, cats, functors) -> CatValuedFunctor:
    if "factors" in doc:
        X, Y = (_ref(cats, f, f"cat_valued {name!r} factors") for f in doc["factors"])
        S, factors = product_category(X, Y)[0], (X, Y)
    else:
        S, factors = _ref(cats, doc.get("source"), f"cat_valued {name!r} source"), None
    values = {o: _ref(cats, c, f"cat_valued {name!r} values")
              for o, c in _pairs(doc.get("values"), f"cat_valued {name!r} values")}
    actions = {m: _ref(functors, F, f"cat_valued {name!r} actions")
               for m, F in _pairs(doc.get("actions"), f"cat_valued {name!r} actions")}
    try:
        return CatValuedFunctor(S, values, actions, factors=factors, name=name)
    except KeyError as exc:
        raise BundleError(f"cat_valued {name!r}: no entry for {exc.args[0]!r}") from None
    except CorrError as exc:
        raise BundleError(f"cat_valued {name!r}: {exc}") from None


def _two_cat(name, doc, cats) -> Strict2Cat:
    objects = [_ident(o) for o in doc.get("objects", [])]
    hom = {}
    for entry in doc.get("hom", []):
        a, b, c = (_ident(x) for x in entry)
        hom[(a, b)] = _ref(cats, c, f"two_cat {name!r} hom")
    identity = dict(_pairs(doc.get("identities"), f"two_cat {name!r} identities"))
    ones, twos = {}, {}
    for block in doc.get("composition", []):
        a, b, c = (_ident(x) for x in block["cells"])
        for f, g, h in block.get("ones", []):
            ones[(a, b, c, _ident(f), _ident(g))] = _ident(h)
        for s, t, u in block.get("twos", []):
            twos[(a, b, c, _ident(s), _ident(t))] = _ident(u)

    def lookup(table, x, y, what):
        key = (x.source, x.target, y.target, x.name, y.name)
        if key not in table:
            raise BundleError(f"two_cat {name!r}: no {what} composite for {key!r}")
        return table[key]

    try:
        D = Strict2Cat.from_operations(objects, hom, identity,
                                       lambda f, g: lookup(ones, f, g, "1-cell"),
                                       lambda s, t: lookup(twos, s, t, "2-cell"), name=name)
    except KeyError as exc:
        raise BundleError(f"two_cat {name!r}: missing entry {exc.args[0]!r}") from None
    except CorrError as exc:
        raise BundleError(f"two_cat {name!r}: {exc}") from None
    bad = validate_2cat(D)
    if bad:
        raise BundleError(f"two_cat {name!r}: {bad[0][0]} fails at {bad[0][1]!r}")
    return D


def _span(name, doc, cats) -> Span:
    C = _ref(cats, doc.get("category"), f"span {name!r} category")
    try:
        return Span.of(C, _ident(doc["left"]), _ident(doc["right"]))
    except KeyError:
        raise BundleError(f"span {name!r}: needs left and right legs") from None
    except CorrError as exc:
        raise BundleError(f"span {name!r}: {exc}") from None


def _square(name, doc, cats, two_cats):
    edges = [_ident(doc.get(k)) for k in ("top", "left", "right", "bottom")]
    if "two_cat" in doc:
        D = _ref(two_cats, doc["two_cat"], f"square {name!r} two_cat")
        try:
            w = doc.get("witness")
            sq = Square2(D, *(OneCell(*e) for e in edges),
                         witness=None if w is None else TwoCell(*_ident(w)))
        except TypeError:
            raise BundleError(f"square {name!r}: 1-cells are written [source, target, name]") from None
        v = sq.check()
        if not v:
            raise BundleError(f"square {name!r}: {v.detail}")
        return sq
    C = _ref(cats, doc.get("category"), f"square {name!r} category")
    try:
        t, l, r, b = edges
        if C.compose(r, t) != C.compose(b, l):
            raise BundleError(f"square {name!r} does not commute")
    except CorrError as exc:
        if isinstance(exc, BundleError):
            raise
        raise BundleError(f"square {name!r}: {exc}") from None
    return CatSquare(C, t, l, r, b)


def parse_bundle(doc) -> Bundle:
    if doc is None:
        return Bundle()
    if not isinstance(doc, dict):
        raise BundleError("a bundle is a mapping with keys categories, functors, cat_valued, "
                          "two_cats, spans, squares")
    known = {"categories", "functors", "cat_valued", "two_cats", "spans", "squares"}
    extra = set(doc) - known
    if extra:
        raise BundleError(f"unknown top-level keys: {sorted(extra)}")
    b = Bundle()
    for name, d in (doc.get("categories") or {}).items():
        b.categories[name] = _category(name, d)
    for name, d in (doc.get("functors") or {}).items():
        b.functors[name] = _functor(name, d, b.categories)
    for name, d in (doc.get("cat_valued") or {}).items():
        b.cat_valued[name] = _cat_valued(name, d, b.categories, b.functors)
    for name, d in (doc.get("two_cats") or {}).items():
        b.two_cats[name] = _two_cat(name, d, b.categories)
    for name, d in (doc.get("spans") or {}).items():
        b.spans[name] = _span(name, d, b.categories)
    for name, d in (doc.get("squares") or {}).items():
        b.squares[name] = _square(name, d, b.categories, b.two_cats)
    return b


def loads_bundle(text: str, source="<string>") -> Bundle:
    try:
        doc = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
        raise BundleError(f"{where}: {getattr(exc, 'problem', None) or exc}") from None
    return parse_bundle(doc)


def load_bundle(path) -> Bundle:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise BundleError(f"cannot read {path}: {exc.strerror}") from None
    return loads_bundle(text, source=str(path))


# serialization -------------------------------------------------------------------

def _name_of(table, obj, what):
    for k, v in table.items():
        if v is obj:
            return k
    raise BundleError(f"{what} is not registered in the bundle")


def _dump_category(C: FinCategory):
    ids = C.identities()
    scalar = all(not isinstance(o, tuple) for o in C.objects)
    return {
        "objects": [_plain(o) for o in C.objects],
        "morphisms": [{"id": _plain(m), "src": _plain(s), "tgt": _plain(t)}
                      for m, s, t in C.morphism_triples()],
        "identities": ({o: _plain(i) for o, i in ids.items()} if scalar
                       else [[_plain(o), _plain(i)] for o, i in ids.items()]),
        "composition": [[_plain(C.morphisms[g]), _plain(C.morphisms[f]), _plain(C.morphisms[h])]
                        for (g, f), h in sorted(C.table.items())],
    }


def _dump_functor(F: Functor, cats):
    return {
        "source": _name_of(cats, F.source, "functor source"),
        "target": _name_of(cats, F.target, "functor target"),
        "objects": [[_plain(x), _plain(F.target.objects[y])]
                    for x, y in zip(F.source.objects, F.ob_i)],
        "morphisms": [[_plain(m), _plain(F.target.morphisms[g])]
                      for m, g in zip(F.source.morphisms, F.mor_i)],
    }


def _dump_two_cat(D: Strict2Cat, cats):
    blocks = []
    for (a, b, c), F in D.composition.items():
        A, B = D.hom[(a, b)], D.hom[(b, c)]
        T = F.target
        ones = [[_plain(f), _plain(g), _plain(T.objects[F.ob_i[i * B.n_obj + j]])]
                for i, f in enumerate(A.objects) for j, g in enumerate(B.objects)]
        twos = [[_plain(s), _plain(t), _plain(T.morphisms[F.mor_i[i * B.n_mor + j]])]
                for i, s in enumerate(A.morphisms) for j, t in enumerate(B.morphisms)]
        blocks.append({"cells": [_plain(a), _plain(b), _plain(c)], "ones": ones, "twos": twos})
    return {
        "objects": [_plain(o) for o in D.objects],
        "hom": [[_plain(a), _plain(b), _name_of(cats, H, "hom category")]
                for (a, b), H in D.hom.items()],
        "identities": [[_plain(a), _plain(f)] for a, f in D.identity.items()],
        "composition": blocks,
    }


def bundle_document(b: Bundle) -> dict:
    cats, funs = b.categories, b.functors
    doc = {"categories": {k: _dump_category(C) for k, C in cats.items()},
           "functors": {k: _dump_functor(F, cats) for k, F in funs.items()},
           "cat_valued": {}, "two_cats": {}, "spans": {}, "squares": {}}
    for k, H in b.cat_valued.items():
        entry = {}
        if H.factors is not None:
            entry["factors"] = [_name_of(cats, X, "factor") for X in H.factors]
        else:
            entry["source"] = _name_of(cats, H.source, "source")
        entry["values"] = [[_plain(o), _name_of(cats, V, "value")]
                           for o, V in zip(H.source.objects, H.values)]
        entry["actions"] = [[_plain(m), _name_of(funs, F, "action")]
                            for m, F in zip(H.source.morphisms, H.actions)]
        doc["cat_valued"][k] = entry
    for k, D in b.two_cats.items():
        doc["two_cats"][k] = _dump_two_cat(D, cats)
    for k, S in b.spans.items():
        doc["spans"][k] = {"category": _name_of(cats, S.ambient, "span category"),
                           "left": _plain(S.left_leg), "right": _plain(S.right_leg)}
    for k, sq in b.squares.items():
        if isinstance(sq, Square2):
            entry = {"two_cat": _name_of(b.two_cats, sq.ambient, "square 2-category")}
            for e in ("top", "left", "right", "bottom"):
                entry[e] = _plain(tuple(getattr(sq, e)))
            if sq.witness is not None:
                entry["witness"] = _plain(tuple(sq.witness))
        else:
            entry = {"category": _name_of(cats, sq.ambient, "square category")}
            for e in ("top", "left", "right", "bottom"):
                entry[e] = _plain(getattr(sq, e))
        doc["squares"][k] = entry
    return {k: v for k, v in doc.items() if v}


def serialize_bundle(b: Bundle) -> str:
    return yaml.dump(bundle_document(b), Dumper=_Dumper, sort_keys=False,
                     default_flow_style=None, width=100, allow_unicode=True)


def save_bundle(b: Bundle, path):
    Path(path).write_text(serialize_bundle(b))


# structural comparison -----------------------------------------------------------

def _functor_eq(F, G):
    return F.obmap == G.obmap and F.mormap == G.mormap


def bundles_equal(a: Bundle, b: Bundle) -> bool:
    if a.categories.keys() != b.categories.keys() or any(
            not structurally_equal(a.categories[k], b.categories[k]) for k in a.categories):
        return False
    if a.functors.keys() != b.functors.keys() or any(
            not _functor_eq(a.functors[k], b.functors[k]) for k in a.functors):
        return False
    if a.cat_valued.keys() != b.cat_valued.keys():
        return False
    for k, H in a.cat_valued.items():
        K = b.cat_valued[k]
        if not structurally_equal(H.source, K.source):
            return False
        if any(not structurally_equal(x, y) for x, y in zip(H.values, K.values)):
            return False
        if any(not _functor_eq(x, y) for x, y in zip(H.actions, K.actions)):
            return False
    if a.two_cats.keys() != b.two_cats.keys():
        return False
    for k, D in a.two_cats.items():
        E = b.two_cats[k]
        if D.objects != E.objects or D.identity != E.identity or D.hom.keys() != E.hom.keys():
            return False
        if any(not structurally_equal(D.hom[x], E.hom[x]) for x in D.hom):
            return False
        if any(not _functor_eq(D.composition[x], E.composition[x]) for x in D.composition):
            return False
    if a.spans.keys() != b.spans.keys() or any(
            a.spans[k].key() != b.spans[k].key() for k in a.spans):
        return False
    if a.squares.keys() != b.squares.keys():
        return False
    edges = lambda q: (q.top, q.left, q.right, q.bottom)
    for k, sq in a.squares.items():
        tq = b.squares[k]
        if type(sq) is not type(tq) or edges(sq) != edges(tq):
            return False
        if isinstance(sq, Square2) and sq.witness != tq.witness:
            return False
    return True
