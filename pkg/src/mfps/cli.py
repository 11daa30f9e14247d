"""``mfps`` command line.

Exit status: 0 success, 1 a verified identity failed, 2 argument, parse or
precondition error, 3 composition diverged, 4 composition undecided,
5 inversion error.
"""

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import calculus, composition, inversion, io, series
from .composition import SeriesVector, SummationBudget
from .errors import (
    CompositionDivergedError,
    CompositionUndecidedError,
    InversionError,
    SeriesError,
)
from .expr import expression_oracle, eval_expression, parse_expression
from .multiindex import enumerate_degree, multiindex_count
from .oracles import parse_oracle

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_DIVERGED, EXIT_UNDECIDED, EXIT_INVERSION = 0, 1, 2, 3, 4, 5


@dataclass
class SessionConfig:
    n: int = 1
    order: int = 0
    budget: SummationBudget = field(default_factory=SummationBudget)
    out: str = None
    format: str = "json"

    def __post_init__(self):
        if self.n < 1:
            raise series.ArgumentError("--n must be at least 1")
        if self.order < 0:
            raise series.ArgumentError("--order must be nonnegative")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _config(args):
    budget = SummationBudget(
        max_degree=getattr(args, "max_degree", 200),
        tol=getattr(args, "tol", 1e-9),
        bound=getattr(args, "bound", 1e12),
        window=getattr(args, "window", 8),
    )
    return SessionConfig(
        n=getattr(args, "n", None) or 1,
        order=getattr(args, "order", 0),
        budget=budget,
        out=args.out,
        format=args.format,
    )


def _load_series(text, cfg, *, polynomial=False):
    """An expression, or ``@path`` for a series file."""
    if text.startswith("@"):
        f = io.read_series(text[1:])
        if f.n != cfg.n:
            raise series.ArgumentError(f"{text[1:]} has n={f.n}, expected {cfg.n}")
        if not polynomial and f.order != cfg.order:
            if f.order < cfg.order:
                raise series.ArgumentError(f"{text[1:]} has order {f.order} < {cfg.order}")
            f = series.retruncate(f, cfg.order)
        return f
    e = parse_expression(text, cfg.n)
    order = max(cfg.order, e.degree_bound()) if polynomial else cfg.order
    return eval_expression(e, order)


def _vector(texts, cfg):
    if not texts or len(texts) != cfg.n:
        raise series.ArgumentError(f"expected {cfg.n} inner components, got {len(texts or [])}")
    return SeriesVector(_load_series(t, cfg) for t in texts)


def _csv(text, conv):
    try:
        return tuple(conv(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise series.ArgumentError(f"bad list {text!r}: {exc}") from exc


def _btheta_value(text):
    return float(Fraction(text.strip()))


class _Out:
    def __init__(self, cfg):
        self.cfg = cfg

    def emit(self, text_payload, json_payload):
        text = json.dumps(json_payload, indent=2) + "\n" if self.cfg.format == "json" else text_payload + "\n"
        if self.cfg.out:
            Path(self.cfg.out).write_text(text)
        else:
            sys.stdout.write(text)

    def series(self, f):
        if self.cfg.format == "json":
            text = io.dumps_series(f)
        else:
            text = io.format_series(f) + "\n"
        if self.cfg.out:
            Path(self.cfg.out).write_text(text)
        else:
            sys.stdout.write(text)

    def vector(self, F, name="g"):
        if self.cfg.out and self.cfg.format == "json":
            path = Path(self.cfg.out)
            for i, f in enumerate(F, start=1):
                io.write_series(f, path.with_name(f"{path.stem}_{i}{path.suffix}"))
        docs = {"components": [io.series_to_dict(f) for f in F]}
        lines = [f"{name}{i} = {io.format_series(f)}" for i, f in enumerate(F, start=1)]
        if self.cfg.out and self.cfg.format == "json":
            sys.stdout.write(json.dumps(docs, indent=2) + "\n")
        else:
            self.emit("\n".join(lines), docs)


def _value_doc(v):
    if isinstance(v, Fraction):
        return {"num": str(v.numerator), "den": str(v.denominator)}
    return {"value": v}


def cmd_compose(args, cfg, out):
    outer_poly = not args.outer.startswith("@") or args.polynomial
    f = _load_series(args.outer, cfg, polynomial=outer_poly)
    G = _vector(args.inner, cfg)
    out.series(composition.compose(f, G, polynomial=outer_poly))
    return EXIT_OK


def _oracle_from_args(args, n):
    if args.oracle:
        return parse_oracle(args.oracle, n)
    if args.outer:
        return expression_oracle(parse_expression(args.outer, n))
    raise series.ArgumentError("give --oracle NAME:params or --outer EXPR")


def _reports_doc(reports):
    return [r.to_dict() for r in reports]


def cmd_compose_unit(args, cfg, out):
    G = _vector(args.inner, cfg)
    f = _oracle_from_args(args, cfg.n)
    try:
        res = composition.compose_unit(f, G, cfg.order, cfg.budget)
    except (CompositionDivergedError, CompositionUndecidedError) as exc:
        sys.stdout.write(json.dumps({"error": str(exc), "reports": _reports_doc(exc.reports)}, indent=2) + "\n")
        raise
    doc = {
        "n": res.n,
        "order": res.order,
        "exact": res.exact,
        "coefficients": [{"exp": list(a), **_value_doc(c)} for a, c in res.coeffs.items()],
        "reports": _reports_doc(res.reports.values()),
    }
    text = "\n".join(f"{list(a)}: {c}" for a, c in res.coeffs.items()) or "0"
    out.emit(text, doc)
    return EXIT_OK


def cmd_check_comp(args, cfg, out):
    b = _csv(args.btheta, _btheta_value)
    beta = _csv(args.beta, int)
    f = parse_oracle(args.oracle, len(b))
    report = composition.check_composability(f, b, beta, cfg.budget)
    text = f"{report.status} value={report.value} terms_used={report.terms_used} beta={list(report.beta)}"
    if report.witness:
        text += f"\nwitness: {report.witness}"
    out.emit(text, report.to_dict())
    return {"converged": EXIT_OK, "diverged": EXIT_DIVERGED}.get(report.status, EXIT_UNDECIDED)


def cmd_derive(args, cfg, out):
    f = _load_series(args.f, cfg)
    out.series(calculus.higher_derivative(f, args.var, args.times))
    return EXIT_OK


def cmd_jacobian(args, cfg, out):
    G = _vector(args.g, cfg)
    J = calculus.jacobian(G)
    J0 = calculus.jacobian_at_origin(G)
    d = calculus.det(J0)
    doc = {
        "n": J.n,
        "entries": [[io.series_to_dict(x) for x in row] for row in J.entries],
        "at_origin": [[str(x) for x in row] for row in J0],
        "det_at_origin": str(d),
    }
    lines = [f"J[{i + 1}][{j + 1}] = {io.format_series(x)}" for i, row in enumerate(J.entries) for j, x in enumerate(row)]
    lines.append(f"det J(0) = {d}")
    out.emit("\n".join(lines), doc)
    return EXIT_OK


def cmd_chainrule_verify(args, cfg, out):
    f = _load_series(args.outer, cfg)
    G = _vector(args.inner, cfg)
    js = [args.var] if args.var else range(1, cfg.n + 1)
    results = []
    ok = True
    for j in js:
        lhs = calculus.partial_derivative(composition.compose(f, G), j)
        rhs = composition.chain_rule_rhs(f, G, j)
        lhs = series.retruncate(lhs, rhs.order)
        ok &= lhs == rhs
        results.append({"j": j, "equal": lhs == rhs, "lhs": io.series_to_dict(lhs), "rhs": io.series_to_dict(rhs)})
    text = "\n".join(
        f"j={r['j']}: {'equal' if r['equal'] else 'DIFFERENT'}" for r in results
    )
    out.emit(text, {"equal": ok, "results": results})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_invert(args, cfg, out):
    G = _vector(args.g, cfg)
    out.vector(inversion.invert(G, cfg.order), name="h")
    return EXIT_OK


def cmd_invert_affine(args, cfg, out):
    G = _vector(args.g, cfg)
    out.vector(inversion.invert_affine(G), name="h")
    return EXIT_OK


def cmd_blocks(args, cfg, out):
    f = _load_series(args.f, cfg)
    ks = [args.k] if args.k is not None else range(cfg.order + 1)
    blocks = [(k, series.block(f, k)) for k in ks]
    out.emit(
        "\n".join(f"[{k}] {io.format_series(b)}" for k, b in blocks),
        {"blocks": [{"k": k, "series": io.series_to_dict(b)} for k, b in blocks]},
    )
    return EXIT_OK


def cmd_pow_blocks(args, cfg, out):
    f = _load_series(args.f, cfg)
    power = series.pow(f, args.power)
    if args.index:
        alphas = [_csv(args.index, int)]
    else:
        alphas = [a for k in range(cfg.order + 1) for a in enumerate_degree(cfg.n, k)]
    rows = []
    ok = True
    for a in alphas:
        by_blocks = series.pow_block_coefficient(f, args.power, a)
        direct = power[a]
        ok &= by_blocks == direct
        rows.append({"exp": list(a), "by_blocks": str(by_blocks), "direct": str(direct)})
    text = "\n".join(f"{r['exp']}: {r['by_blocks']} (pow: {r['direct']})" for r in rows)
    out.emit(text, {"power": args.power, "equal": ok, "coefficients": rows})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_count_indices(args, cfg, out):
    count = multiindex_count(args.n, args.k)
    doc = {"n": args.n, "k": args.k, "count": count}
    text = str(count)
    if args.list:
        idx = enumerate_degree(args.n, args.k)
        doc["indices"] = [list(a) for a in idx]
        text += "\n" + "\n".join(str(list(a)) for a in idx)
    out.emit(text, doc)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="mfps", description="Multivariate formal power series toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, ring=True, budget=False):
        if ring:
            sp.add_argument("--n", type=int, required=True, help="number of variables")
            sp.add_argument("--order", type=int, required=True, help="truncation order N")
        sp.add_argument("--out", help="output path")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if budget:
            sp.add_argument("--max-degree", type=int, default=200)
            sp.add_argument("--tol", type=float, default=1e-9)
            sp.add_argument("--bound", type=float, default=1e12)
            sp.add_argument("--window", type=int, default=8)
        return sp

    sp = common(sub.add_parser("compose", help="exact f o G"))
    sp.add_argument("--outer", required=True)
    sp.add_argument("--inner", action="append")
    sp.add_argument("--polynomial", action="store_true", help="treat an @file outer series as a polynomial")
    sp.set_defaults(func=cmd_compose)

    sp = common(sub.add_parser("compose-unit", help="f o G for an oracle f and unit G"), budget=True)
    sp.add_argument("--oracle")
    sp.add_argument("--outer")
    sp.add_argument("--inner", action="append")
    sp.set_defaults(func=cmd_compose_unit)

    sp = common(sub.add_parser("check-comp", help="convergence of the composability series at beta"), ring=False, budget=True)
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--btheta", required=True)
    sp.add_argument("--beta", required=True)
    sp.set_defaults(func=cmd_check_comp)

    sp = common(sub.add_parser("derive", help="partial derivative D_j^m f"))
    sp.add_argument("--f", required=True)
    sp.add_argument("--var", type=int, required=True)
    sp.add_argument("--times", type=int, default=1)
    sp.set_defaults(func=cmd_derive)

    sp = common(sub.add_parser("jacobian", help="formal Jacobian of G"))
    sp.add_argument("--g", action="append")
    sp.set_defaults(func=cmd_jacobian)

    sp = common(sub.add_parser("chainrule-verify", help="compare D_j(f o G) with the chain rule"))
    sp.add_argument("--outer", required=True)
    sp.add_argument("--inner", action="append")
    sp.add_argument("--var", type=int)
    sp.set_defaults(func=cmd_chainrule_verify)

    sp = common(sub.add_parser("invert", help="compositional inverse of G"))
    sp.add_argument("--g", action="append")
    sp.set_defaults(func=cmd_invert)

    sp = common(sub.add_parser("invert-affine", help="inverse of an affine G"))
    sp.add_argument("--g", action="append")
    sp.set_defaults(func=cmd_invert_affine)

    sp = common(sub.add_parser("blocks", help="homogeneous blocks f[k]"))
    sp.add_argument("--f", required=True)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_blocks)

    sp = common(sub.add_parser("pow-blocks", help="coefficients of f^m from block powers"))
    sp.add_argument("--f", required=True)
    sp.add_argument("--power", type=int, required=True)
    sp.add_argument("--index")
    sp.set_defaults(func=cmd_pow_blocks)

    sp = common(sub.add_parser("count-indices", help="number of multi-indices of degree k"), ring=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    sp.set_defaults(func=cmd_count_indices)
    return p


def run_command(argv):
    """Run one command; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"mfps: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _config(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status = args.func(args, cfg, _Out(cfg))
        for w in caught:
            print(f"mfps: warning: {w.message}", file=sys.stderr)
        return status
    except CompositionDivergedError as exc:
        print(f"mfps: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except CompositionUndecidedError as exc:
        print(f"mfps: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except InversionError as exc:
        print(f"mfps: {exc}", file=sys.stderr)
        return EXIT_INVERSION
    except (SeriesError, OSError) as exc:
        print(f"mfps: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
