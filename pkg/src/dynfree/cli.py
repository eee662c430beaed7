"""The ``dynfree`` command line.

Exit status: 0 on success (including a search that found no witness),
1 on domain errors, 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import growth, powerseries, preper
from .errors import BudgetExceeded, DynFreeError, ParseError
from .fields import Field
from .freeness import (FreenessCertificate, brute_force_relation_search, freeness_certificate,
                       jz_free_test, verify_certificate, word_inequality_check)
from .parser import parse_expression, parse_list
from .ratfun import iterate, parse_point, to_expr

DEFAULT_AUDIT_LEN = 6


class UsageError(Exception):
    pass


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _field(args) -> Field:
    try:
        return Field.parse(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _budget(args):
    return args.budget if args.budget is not None else preper.default_budget()


def _ints(text: str, count: int, name: str, kind=float):
    try:
        parts = [kind(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name} expects {count} comma-separated numbers") from None
    if len(parts) != count:
        raise UsageError(f"--{name} expects {count} comma-separated numbers")
    return parts


def _require_json(args, command: str):
    if args.format not in (None, "json"):
        raise UsageError(f"{command} only writes JSON")


# -- commands -------------------------------------------------------------------------


def cmd_parse(args) -> str:
    _require_json(args, "parse")
    f = parse_expression(args.expr, _field(args))
    return _json({
        "field": f.field.spec(),
        "expr": to_expr(f),
        "num": [str(c) for c in f.num],
        "den": [str(c) for c in f.den],
        "degree": f.degree,
    })


def cmd_free_cert(args) -> str:
    _require_json(args, "free-cert")
    K = _field(args)
    f = parse_expression(args.f, K)
    g = parse_expression(args.g, K)
    hint = parse_point(args.witness) if args.witness else None
    result = freeness_certificate(f, g, witness_hint=hint, n_iter=args.prec or 8)
    if not isinstance(result, FreenessCertificate):
        return _json(result.to_json())
    doc = {"status": "certified", "certificate": result.to_json(),
           "verified": verify_certificate(result)}
    if args.audit_len:
        report = brute_force_relation_search([iterate(f, result.j), iterate(g, result.j)],
                                             args.audit_len, budget=_budget(args), seed=args.seed)
        doc["audit"] = {"max_len": args.audit_len, "words": report.word_count,
                        "distinct": report.distinct_count, "relations": len(report.relations),
                        "confirmation": report.confirmation}
        doc["word_inequality_len3"] = word_inequality_check(result, 3, budget=_budget(args))
    return _json(doc)


def cmd_growth(args) -> str:
    gens = parse_list(args.gens, _field(args))
    gens, dropped = growth.absorb_constants(gens)
    table = growth.growth_table(gens, args.max_len, budget=_budget(args), seed=args.seed)
    if args.format == "csv":
        return table.to_csv()
    cls = growth.classify_growth(table) if len(table.values) >= 4 else None
    doc = table.to_json(cls)
    doc["constants_dropped"] = dropped
    return _json(doc)


def cmd_affine_growth(args) -> str:
    text = args.maps.strip()
    if text.startswith("["):
        try:
            maps = [growth.AffineMap(tuple(map(tuple, m["matrix"])), tuple(m["translation"]))
                    for m in json.loads(text)]
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad --maps JSON: {exc}") from None
    else:
        maps = [growth.AffineMap.from_ratfun(f) for f in parse_list(text)]
    table = growth.affine_growth(maps, args.max_len, budget=_budget(args))
    if args.format == "csv":
        return table.to_csv()
    cls = growth.classify_growth(table) if len(table.values) >= 4 else None
    return _json(table.to_json(cls))


def cmd_prep(args) -> str:
    _require_json(args, "prep")
    f = parse_expression(args.f, _field(args))
    bound = None
    if args.bound is not None:
        try:
            bound = Fraction(args.bound)
        except ValueError:
            raise UsageError(f"--bound expects a number, got {args.bound!r}") from None
    report = preper.rational_preperiodic_points(f, bound_override=bound, budget=_budget(args))
    return _json(report.to_json())


def cmd_boettcher(args) -> str:
    _require_json(args, "boettcher")
    K = _field(args)
    f = parse_expression(args.f, K)
    alpha = parse_point(args.alpha, K)
    N = args.prec or 12
    F = powerseries.local_expansion(f, alpha, N)
    L = powerseries.boettcher(F, N)
    doc = {
        "f": to_expr(f),
        "field": K.spec(),
        "alpha": str(args.alpha),
        "m": F.positive_valuation(),
        "ring": str(L.ring),
        "prec": L.prec,
        "series": str(L),
        "coefficients": L.to_json(),
        "verified_to": N,
    }
    if args.g:
        g = parse_expression(args.g, K)
        doc["g"] = to_expr(g)
        doc["jz"] = jz_free_test(f, g, alpha, N).to_json()
    return _json(doc)


def cmd_relations(args) -> str:
    _require_json(args, "relations")
    gens = parse_list(args.gens, _field(args))
    report = brute_force_relation_search(gens, args.max_len, budget=_budget(args), seed=args.seed)
    return _json(report.to_json())


def escape_grid(coeffs, window, res, iters: int = 60, radius: float = 1e8):
    """Float estimate of G_f on a grid; rows (re, im, G), row-major from the top left."""
    coeffs = np.asarray(coeffs, dtype=complex)
    d = len(coeffs) - 1
    x0, x1, y0, y1 = window
    W, H = res
    xs = np.linspace(x0, x1, W)
    ys = np.linspace(y1, y0, H)
    Z = (xs[None, :] + 1j * ys[:, None]).ravel()
    z = Z.copy()
    G = np.zeros(Z.shape)
    alive = np.ones(Z.shape, dtype=bool)
    for k in range(1, iters + 1):
        z[alive] = np.polyval(coeffs[::-1], z[alive])
        out = alive & (np.abs(z) > radius)
        G[out] = np.log(np.abs(z[out])) / float(d) ** k
        alive &= ~out
    return np.column_stack([Z.real, Z.imag, G])


def cmd_escape_grid(args) -> str:
    f = parse_expression(args.f)
    if not f.is_polynomial or f.degree < 2:
        raise DynFreeError("escape-grid needs a polynomial of degree >= 2")
    window = _ints(args.window, 4, "window")
    res = _ints(args.res, 2, "res", int)
    if min(res) < 1:
        raise UsageError("--res values must be positive")
    rows = escape_grid([float(c) for c in f.coefficients()], window, res, args.iters)
    lines = ["re,im,G"] + [f"{a:.10g},{b:.10g},{c:.10g}" for a, b, c in rows]
    if args.format == "json":
        return _json({"f": to_expr(f), "advisory": True, "columns": ["re", "im", "G"],
                      "rows": [[float(a), float(b), float(c)] for a, b, c in rows]})
    return "\n".join(lines) + "\n"


# -- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<p> (default q)")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default json; csv for escape-grid)")
    common.add_argument("--budget", type=int, default=None,
                        help="element budget (default: $DYNFREE_BUDGET or 10^6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized fingerprints")
    common.add_argument("--prec", type=int, default=None,
                        help="series precision (boettcher) or initial iteration depth (free-cert)")

    parser = argparse.ArgumentParser(prog="dynfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse an expression to canonical form")
    p.add_argument("expr")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("free-cert", parents=[common], help="freeness certificate for <f^j, g^j>")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--witness", default=None, help="candidate point tried first")
    p.add_argument("--audit-len", type=int, default=DEFAULT_AUDIT_LEN,
                   help="relation-search depth for the audit (0 to skip)")
    p.set_defaults(run=cmd_free_cert)

    p = sub.add_parser("growth", parents=[common], help="growth table d_S(n)")
    p.add_argument("--gens", required=True, help="generators separated by ';'")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(run=cmd_growth)

    p = sub.add_parser("affine-growth", parents=[common], help="growth of affine maps of Q^k")
    p.add_argument("--maps", required=True,
                   help="degree-1 polynomials separated by ';', or a JSON list of "
                        "{\"matrix\": [[...]], \"translation\": [...]}")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(run=cmd_affine_growth)

    p = sub.add_parser("prep", parents=[common], help="rational preperiodic points")
    p.add_argument("--f", required=True)
    p.add_argument("--bound", type=str, default=None, help="override the height bound")
    p.set_defaults(run=cmd_prep)

    p = sub.add_parser("boettcher", parents=[common], help="Boettcher coordinate at a fixed point")
    p.add_argument("--f", required=True)
    p.add_argument("--alpha", default="0", help="fixed point (a rational or 'inf')")
    p.add_argument("--g", default=None, help="also run the monomial test against g")
    p.set_defaults(run=cmd_boettcher)

    p = sub.add_parser("relations", parents=[common], help="brute-force relation search")
    p.add_argument("--gens", required=True, help="generators separated by ';'")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(run=cmd_relations)

    p = sub.add_parser("escape-grid", parents=[common], help="escape-rate raster (CSV re,im,G)")
    p.add_argument("--f", required=True)
    p.add_argument("--window", default="-2,2,-2,2", help="x0,x1,y0,y1")
    p.add_argument("--res", default="64,64", help="W,H")
    p.add_argument("--iters", type=int, default=60)
    p.set_defaults(run=cmd_escape_grid)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.run(args)
    except (ParseError, UsageError) as exc:
        print(f"dynfree: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        if exc.partial is not None and hasattr(exc.partial, "to_json"):
            sys.stdout.write(_json(exc.partial.to_json()))
        print(f"dynfree: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except (DynFreeError, ValueError, ZeroDivisionError) as exc:
        print(f"dynfree: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
