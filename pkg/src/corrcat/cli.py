"""Command-line runner: every check prints a JSON report and exits with

0 when all verdicts are positive, 1 on a negative verdict, 2 on bad input
and 3 when a size cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import adjdual, battery, fib
from .bundle import Bundle, BundleError, load_bundle
from .fincat import FinCategory, find_isomorphism, pullback_i, validate_category
from .fixtures import CAT_VALUED_FIXTURES, TWO_CAT_FIXTURES, fixture
from .limits import CapExceeded, CorrError, MissingLimit, limits
from .spans import Span, compose_spans, find_span_iso, is_invertible_span, reverse_span
from .twisted import segal_check
from .twocat_bc import (
    bc_square_in_corr,
    cartesian_squares,
    check_left_BC,
    inclusion_2functor,
    is_right_adjointable,
    validate_2cat,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(CorrError):
    pass


# JSON ----------------------------------------------------------------------------

def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, Span):
        return span_json(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def span_json(S: Span):
    return {"feet": [S.left_foot, S.right_foot], "apex": S.apex,
            "legs": [S.left_leg, S.right_leg]}


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# resolving references ------------------------------------------------------------

class Context:
    def __init__(self, args):
        self.args = args
        self.bundle = load_bundle(args.bundle) if getattr(args, "bundle", None) else Bundle()
        self.provenance = []

    def category(self, name=None) -> FinCategory:
        name = name or self.args.cat or self.args.fixture
        if name is None:
            if len(self.bundle.categories) == 1:
                name = next(iter(self.bundle.categories))
            else:
                raise InputError("name a category with --cat or --fixture")
        if name in self.bundle.categories:
            self.provenance.append(f"bundle:{name}")
            return self.bundle.categories[name]
        try:
            C = fixture(name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        self.provenance.append(f"fixture:{C.name}")
        return C

    def cat_valued(self, name):
        if name in self.bundle.cat_valued:
            self.provenance.append(f"bundle:{name}")
            return self.bundle.cat_valued[name]
        if name in CAT_VALUED_FIXTURES:
            self.provenance.append(f"fixture:{name}")
            return CAT_VALUED_FIXTURES[name]()
        raise InputError(f"unknown Cat-valued functor {name!r}; known fixtures: "
                         + ", ".join(sorted(CAT_VALUED_FIXTURES)))


def resolve(key, known, what):
    if key in known:
        return key
    hits = [k for k in known if str(k) == key]
    if len(hits) == 1:
        return hits[0]
    raise InputError(f"unknown {what} {key!r}")


def parse_span(ctx: Context, C: FinCategory, text: str) -> Span:
    """A bundle span name, ``a,s,b`` when both homs are singletons, or ``l,r`` legs."""
    if text in ctx.bundle.spans:
        return ctx.bundle.spans[text]
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 2:
        l, r = (resolve(p, C.morphisms, "morphism") for p in parts)
        return Span.of(C, l, r)
    if len(parts) != 3:
        raise InputError(f"span {text!r}: expected a,s,b or two legs")
    a, s, b = (resolve(p, C.objects, "object") for p in parts)
    ls, rs = C.hom(s, a), C.hom(s, b)
    if len(ls) != 1 or len(rs) != 1:
        raise InputError(f"span {text!r} is ambiguous; give the legs as l,r")
    return Span(C, a, s, b, ls[0], rs[0])


def morphisms(C, text, n):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise InputError(f"expected {n} comma-separated morphisms, got {text!r}")
    return [resolve(p, C.morphisms, "morphism") for p in parts]


def report(check, ok, **fields):
    return {"check": check, "verdict": "yes" if ok else "no", **fields}


# subcommands ------------------------------------------------------------------------

def cmd_validate(ctx: Context):
    problems = {}
    names = []
    if ctx.args.bundle:
        cats = dict(ctx.bundle.categories)
        ctx.provenance.append(f"bundle:{ctx.args.bundle}")
        twos = dict(ctx.bundle.two_cats)
    elif (ctx.args.cat or ctx.args.fixture) in TWO_CAT_FIXTURES:
        name = ctx.args.cat or ctx.args.fixture
        cats, twos = {}, {name: TWO_CAT_FIXTURES[name]()}
        ctx.provenance.append(f"fixture:{name}")
    else:
        C = ctx.category()
        cats, twos = {C.name: C}, {}
    for name, C in cats.items():
        names.append(name)
        bad = validate_category(C)
        if bad:
            problems[name] = [str(v) for v in bad]
    for name, D in twos.items():
        names.append(name)
        bad = validate_2cat(D)
        if bad:
            problems[name] = [list(v) for v in bad[:5]]
    return report("validate", not problems, checked=sorted(names), violations=problems)


def cmd_pullback(ctx: Context):
    C = ctx.category()
    f, g = morphisms(C, ctx.args.cospan, 2)
    fi, gi = C.midx(f), C.midx(g)
    if C.tgts[fi] != C.tgts[gi]:
        raise InputError(f"{f} and {g} do not form a cospan")
    pb = pullback_i(C, fi, gi)
    if pb is None:
        return report("pullback", False, cospan=[f, g], certificate="no limiting cone exists")
    p, u, v = pb
    return report("pullback", True, cospan=[f, g], apex=C.objects[p],
                  projections=[C.morphisms[u], C.morphisms[v]])


def cmd_compose_spans(ctx: Context):
    C = ctx.category()
    if len(ctx.args.span) < 2:
        raise InputError("compose-spans needs at least two --span arguments")
    spans = [parse_span(ctx, C, t) for t in ctx.args.span]
    out = spans[0]
    try:
        for T in spans[1:]:
            if out.right_foot != T.left_foot:
                raise InputError(f"spans {out} and {T} are not composable")
            out = compose_spans(out, T)
    except MissingLimit as exc:
        return report("compose-spans", False, spans=spans, certificate=str(exc))
    return report("compose-spans", True, spans=spans, composite=out)


def cmd_segal(ctx: Context):
    C = ctx.category()
    r = segal_check(C, ctx.args.n)
    return report("segal", r.ok, n=ctx.args.n, certificate=r.certificate)


def fibration(ctx: Context, label: str):
    kind, _, name = label.partition(":")
    if kind == "arrow":
        return fib.arrow_fibration(ctx.category(name))
    if kind == "span":
        return fib.span_fibration(ctx.category(name))
    if kind == "groth":
        return fib.grothendieck_two_sided(ctx.cat_valued(name))
    if kind == "unstraighten":
        return fib.unstraighten_cocartesian(ctx.cat_valued(name))
    raise InputError(f"unknown fibration {label!r}; use arrow:C, span:C, groth:H or unstraighten:H")


def cmd_classify_fib(ctx: Context):
    p = fibration(ctx, ctx.args.fib)
    rep = fib.classify_fibration(p, beck_chevalley=not ctx.args.no_bc)
    expect = [k.strip() for k in ctx.args.expect.split(",") if k.strip()]
    unknown = [k for k in expect if k not in rep.flags]
    if unknown:
        raise InputError(f"unknown flags {unknown}; known: {', '.join(fib.FLAGS)}")
    ok = rep.consistent() and all(rep.flags[k] for k in expect)
    return report("classify-fib", ok, fibration=ctx.args.fib, expected=expect,
                  flags=rep.flags, witnesses=rep.witnesses,
                  total=[p.total.n_obj, p.total.n_mor])


def cmd_groth(ctx: Context):
    H = ctx.cat_valued(ctx.args.functor)
    p = fib.grothendieck_two_sided(H)
    v = fib.two_sided(p)
    C, D = p.factors
    fibers_ok = {}
    for c in C.objects:
        for d in D.objects:
            F = fib.extract_fiber(p, (c, d))
            fibers_ok[str((c, d))] = find_isomorphism(F, H.value((c, d))) is not None
    adj = fib.functor_adjointable(H)
    ok = bool(v) and all(fibers_ok.values())
    return report("groth", ok, two_sided=bool(v), witness=v.witness,
                  fibers_match_values=fibers_ok, adjointable=bool(adj),
                  adjointable_witness=adj.witness, total=[p.total.n_obj, p.total.n_mor])


def cmd_bc(ctx: Context):
    if ctx.args.square:
        sq = ctx.bundle.squares.get(ctx.args.square)
        if sq is None or not hasattr(sq, "check"):
            raise InputError(f"no 2-category square named {ctx.args.square!r} in the bundle")
        v = is_right_adjointable(sq)
        return report("bc", v.ok, square=ctx.args.square, witness=v.witness, detail=v.detail)
    C = ctx.category()
    v = check_left_BC(inclusion_2functor(C))
    return report("bc", v.ok, functor=f"{C.name} -> Corr({C.name})", witness=v.witness,
                  detail=v.detail)


def cmd_bc_square(ctx: Context):
    C = ctx.category()
    squares = ([morphisms(C, ctx.args.square, 4)] if ctx.args.square
               else list(cartesian_squares(C)))
    results, ok = [], True
    for sq in squares:
        r = bc_square_in_corr(C, *sq)
        good = r.commutes and r.cartesian and r.matches_diagonal_image
        ok = ok and good
        results.append({"square": sq, "ok": good, "corners": r.corner_triples(),
                        "commutes": r.commutes, "cartesian": r.cartesian,
                        "matches_diagonal_image": r.matches_diagonal_image})
    return report("bc-square", ok, squares=results if ctx.args.square else len(results),
                  failures=[r for r in results if not r["ok"]][:5])


def cmd_adjoint(ctx: Context):
    C = ctx.category()
    if ctx.args.arrow:
        m = resolve(ctx.args.arrow, C.morphisms, "morphism")
        adj = adjdual.generator_adjunction(C, m)
        v = adj.triangles()
        return report("adjoint", v.ok, arrow=m, left=adj.left, right=adj.right,
                      unit_apex_map=adj.unit.apex_map, counit_apex_map=adj.counit.apex_map,
                      witness=v.witness)
    if not ctx.args.span:
        raise InputError("adjoint needs --arrow or --span")
    S = parse_span(ctx, C, ctx.args.span[0])
    R, L = adjdual.span_right_adjoint(S), adjdual.span_left_adjoint(S)
    vr, vl = R.triangles(), L.triangles()
    inv = is_invertible_span(S)
    return report("adjoint", vr.ok and vl.ok, span=S, right_adjoint=R.right,
                  left_adjoint=L.left, right_triangles=vr.ok, left_triangles=vl.ok,
                  invertible=inv.legs_iso, witness=vr.witness or vl.witness)


def cmd_dual(ctx: Context):
    C = ctx.category()
    if not ctx.args.span:
        raise InputError("dual needs --span")
    S = parse_span(ctx, C, ctx.args.span[0])
    d = adjdual.dual_morphism(S)
    iso = find_span_iso(d.span, reverse_span(S))
    return report("dual", iso is not None, span=S, dual=d.span, reverse=reverse_span(S),
                  iso_apex_map=d.iso_to_reverse.apex_map)


def cmd_zigzag(ctx: Context):
    C = ctx.category()
    objs = ([resolve(ctx.args.object, C.objects, "object")] if ctx.args.object
            else list(C.objects))
    results = {}
    for c in objs:
        v = adjdual.duality_data(C, c).zigzags()
        results[str(c)] = {"ok": v.ok, "witness": v.witness}
    return report("zigzag", all(r["ok"] for r in results.values()), objects=results)


def cmd_suite(ctx: Context):
    which = None
    if ctx.args.criteria:
        which = [int(x) for x in ctx.args.criteria.split(",")]
        unknown = [n for n in which if n not in battery.CRITERIA]
        if unknown:
            raise InputError(f"unknown criteria {unknown}")
    results = battery.run_battery(which)
    return report("suite", all(r["ok"] for r in results.values()), criteria=results)


COMMANDS = {
    "validate": cmd_validate,
    "pullback": cmd_pullback,
    "compose-spans": cmd_compose_spans,
    "segal": cmd_segal,
    "classify-fib": cmd_classify_fib,
    "groth": cmd_groth,
    "bc": cmd_bc,
    "bc-square": cmd_bc_square,
    "adjoint": cmd_adjoint,
    "dual": cmd_dual,
    "zigzag": cmd_zigzag,
    "suite": cmd_suite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bundle", help="structured-text bundle (YAML or JSON)")
    common.add_argument("--fixture", help="shipped fixture name (d12, z2, finset3, ...)")
    common.add_argument("--cat", help="category name from the bundle or the fixtures")
    common.add_argument("--report", help="write the JSON report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    common.add_argument("--max-objects", type=int)
    common.add_argument("--max-morphisms", type=int)
    common.add_argument("--max-level", type=int)

    parser = argparse.ArgumentParser(prog="corrcat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="validate categories and 2-categories")
    p = sub.add_parser("pullback", parents=[common], help="pullback of a cospan")
    p.add_argument("--cospan", required=True, metavar="F,G")
    p = sub.add_parser("compose-spans", parents=[common], help="compose spans left to right")
    p.add_argument("--span", action="append", default=[], metavar="A,S,B")
    p = sub.add_parser("segal", parents=[common], help="Segal condition at level n")
    p.add_argument("--n", type=int, default=2)
    p = sub.add_parser("classify-fib", parents=[common], help="fibration taxonomy")
    p.add_argument("--fib", required=True, metavar="KIND:NAME")
    p.add_argument("--no-bc", action="store_true", help="skip the Beck-Chevalley test")
    p.add_argument("--expect", default="two_sided",
                   help="comma-separated flags that must hold for a positive verdict")
    p = sub.add_parser("groth", parents=[common], help="two-sided Grothendieck construction")
    p.add_argument("--functor", required=True, help="Cat-valued functor name")
    p = sub.add_parser("bc", parents=[common], help="Beck-Chevalley for the inclusion into spans")
    p.add_argument("--square", help="a 2-category square from the bundle")
    p = sub.add_parser("bc-square", parents=[common], help="squares built in the span category")
    p.add_argument("--square", metavar="TOP,LEFT,RIGHT,BOTTOM")
    p = sub.add_parser("adjoint", parents=[common], help="adjunctions between spans")
    p.add_argument("--arrow")
    p.add_argument("--span", action="append", default=[], metavar="A,S,B")
    p = sub.add_parser("dual", parents=[common], help="dual of a span via self-duality")
    p.add_argument("--span", action="append", default=[], metavar="A,S,B")
    p = sub.add_parser("zigzag", parents=[common], help="zig-zag identities of self-duality")
    p.add_argument("--object")
    p = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,7")
    return parser


def run(argv=None):
    """Parse, dispatch and return (exit code, JSON-ready report, parsed args)."""
    args = build_parser().parse_args(argv)
    caps = {k: getattr(args, k) for k in ("max_objects", "max_morphisms", "max_level")
            if getattr(args, k) is not None}
    start = time.perf_counter()
    try:
        with limits(**caps):
            ctx = Context(args)
            out = COMMANDS[args.command](ctx)
            out["provenance"] = sorted(set(ctx.provenance))
        code = EXIT_OK if out["verdict"] == "yes" else EXIT_NEGATIVE
    except CapExceeded as exc:
        out, code = {"check": args.command, "error": "cap exceeded", "detail": str(exc)}, EXIT_CAP
    except (CorrError, KeyError, ValueError, OSError) as exc:
        kind = "input error" if not isinstance(exc, BundleError) else "bundle error"
        msg = exc.args[0] if exc.args else str(exc)
        out, code = {"check": args.command, "error": kind, "detail": str(msg)}, EXIT_INPUT
    if args.timing:
        out["seconds"] = round(time.perf_counter() - start, 3)
    return code, jsonable(out), args


def main(argv=None):
    code, out, args = run(argv)
    text = dumps(out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{out['check']}: {out.get('verdict', out.get('error'))}")
        if args.command == "suite" and "criteria" in out:
            for n, r in out["criteria"].items():
                print(f"  criterion {n} ({r['name']}): {'pass' if r['ok'] else 'FAIL'}")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
