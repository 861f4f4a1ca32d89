"""Command-line front end.

Every subcommand prints one report on stdout: JSON by default (keys sorted,
``"schema": 1``), or a short text rendering with ``--format text``.
Diagnostics go to stderr.  Exit codes: 0 decided and verified, 2 bad input
(parse errors, violated preconditions, refused enumerations), 3 a
certificate that failed its own check.
"""

import argparse
import json
import math
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from .brauer import (
    BrauerExpr,
    Symbol,
    class_is_split,
    class_vector,
    conic_form,
    exact_index,
    index_survey,
    norm_form,
    quaternion_split,
    symbol_decompose,
)
from .decompose import decompose, decomposition_env, verify_decomposition
from .errors import AbhyankarError, CertificateError, ParseError, ResolutionError, UltraformsError
from .finite_field import is_prime
from .laurent import evaluate_word, format_element, leading, parse_element
from .quadform import (
    DiagonalForm,
    anisotropic_survey,
    is_hyperbolic,
    is_isotropic,
    is_isotropic_springer,
    residue_decomposition,
)

SCHEMA = 1
_SYMBOL = re.compile(r"\(\s*([^(),]+?)\s*,\s*([^(),]+?)\s*\)")


# --- input parsing ------------------------------------------------------------


def _parse_at(text, offset, whole, p, n):
    """Parse ``text`` found at ``offset`` inside ``whole``; errors report positions in ``whole``."""
    try:
        return parse_element(text, p, n)
    except ParseError as exc:
        lead = len(text) - len(text.lstrip())
        raise ParseError(exc.message, whole, offset + max(exc.position, lead)) from None


def parse_elements(args, p, n):
    out = []
    for arg in args:
        pos = 0
        for chunk in arg.split(","):
            if not chunk.strip():
                raise ParseError("empty list entry", arg, pos)
            out.append(_parse_at(chunk, pos, arg, p, n))
            pos += len(chunk) + 1
    return out


def parse_symbols(args, p, n, l):
    """Symbols written ``(expr,expr)``; separators between them may be spaces, commas or '+'."""
    text = " ".join(args)
    pairs, pos = [], 0
    for m in _SYMBOL.finditer(text):
        gap = text[pos : m.start()]
        if gap.strip(" ,+"):
            raise ParseError("expected a symbol '(a,b)'", text, pos + len(gap) - len(gap.lstrip(" ,+")))
        a = _parse_at(m.group(1), m.start(1), text, p, n)
        b = _parse_at(m.group(2), m.start(2), text, p, n)
        pairs.append(Symbol(a, b, l))
        pos = m.end()
    rest = text[pos:]
    if rest.strip(" ,+"):
        raise ParseError("expected a symbol '(a,b)'", text, pos + len(rest) - len(rest.lstrip(" ,+")))
    return BrauerExpr(tuple(pairs), p, n, l)


def _config(args, need_field=True):
    if need_field:
        if not is_prime(args.p) or args.p == 2:
            raise _InputError(f"--p must be an odd prime, got {args.p}")
        if not 1 <= args.n <= 4:
            raise _InputError(f"--n must lie in 1..4, got {args.n}")
        if not is_prime(args.l) or args.l == args.p:
            raise _InputError(f"--l must be a prime different from p, got {args.l}")
    basis_text = args.basis or ",".join(f"t{j + 1}" for j in range(args.n))
    basis = [leading(b) for b in parse_elements([basis_text], args.p, args.n)]
    cfg = {"p": args.p, "n": args.n, "l": args.l, "basis": [format_element(b) for b in basis]}
    return cfg, basis


class _InputError(UltraformsError, ValueError):
    pass


def _invariant(text):
    if text is None:
        return None
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}") from None


# --- subcommands --------------------------------------------------------------


def cmd_decompose(args):
    cfg, basis = _config(args)
    a = [leading(x) for x in parse_elements(args.elements, args.p, args.n)]
    res = decompose(a, basis, args.l)
    env = decomposition_env(a, basis)
    ok = verify_decomposition(a, basis, args.l, res, env)
    result = res.to_dict()
    result["c_values"] = [format_element(evaluate_word(w, env, args.p, args.n)) for w in res.c]
    result["names"] = {k: format_element(v) for k, v in sorted(env.items())}
    return cfg, {"elements": [format_element(x) for x in a]}, result, {"certificate": ok}


def cmd_isotropy(args):
    cfg, basis = _config(args)
    q = DiagonalForm.of(parse_elements(args.form, args.p, args.n))
    iso, cert = is_isotropic(q, basis)
    springer = is_isotropic_springer(q)
    blocks = residue_decomposition(q, basis)
    result = {
        "form": str(q),
        "decision": "isotropic" if iso else "anisotropic",
        "certificate": cert,
        "blocks": blocks.to_dict(),
        "hyperbolic": is_hyperbolic(q, basis),
        "oracles": {"residue_blocks": iso, "springer": springer},
    }
    return cfg, {"form": [format_element(c) for c in q.coeffs]}, result, {"oracles_agree": iso == springer}


def cmd_survey(args):
    cfg = {"p": args.p, "n": args.n, "l": 2}
    if not is_prime(args.p) or args.p == 2 or not 1 <= args.n <= 4:
        raise _InputError("--p must be an odd prime and --n must lie in 1..4")
    d_max = args.d_max if args.d_max is not None else 2 ** (args.n + 1) + 1
    report = anisotropic_survey(args.p, args.n, d_max)
    result = report.to_dict()
    if args.figures:
        from .plotting import survey_figure

        path = Path(args.figures) / f"survey_p{args.p}_n{args.n}.png"
        result["figure"] = str(survey_figure(report, path))
    checks = {"oracles_agree": not report.disagreements}
    return cfg, {"d_max": d_max}, result, checks


def cmd_symbol(args):
    cfg, basis = _config(args)
    expr = parse_symbols(args.symbols, args.p, args.n, args.l)
    dec = symbol_decompose(expr, basis)
    result = dec.to_dict()
    result["index_bound"] = args.l ** len(dec.ramified)
    result["class_vector"] = list(class_vector(expr))
    result["split"] = class_is_split(expr)
    return cfg, {"symbols": [str(s) for s in expr.symbols]}, result, {"class_preserved": dec.certified}


def cmd_split(args):
    cfg, basis = _config(args)
    if args.l != 2:
        raise _InputError("split decides quaternion algebras; use --l 2")
    expr = parse_symbols(args.symbol, args.p, args.n, 2)
    if len(expr.symbols) != 1:
        raise _InputError("split takes exactly one symbol")
    s = expr.symbols[0]
    split = quaternion_split(s.a, s.b, basis)
    conic = is_isotropic(conic_form(s.a, s.b), basis)[0]
    norm = is_hyperbolic(norm_form(s.a, s.b), basis)
    by_class = class_is_split(expr)
    result = {
        "symbol": str(s),
        "split": split,
        "oracles": {"conic_isotropic": conic, "norm_form_hyperbolic": norm, "class_vector_zero": by_class},
    }
    return cfg, {"symbol": str(s)}, result, {"oracles_agree": split == conic == norm == by_class}


def cmd_index(args):
    if args.survey:
        cfg = {"p": args.p, "n": args.n, "l": 2}
        if args.l != 2:
            raise _InputError("the index survey needs --l 2")
        report = index_survey(args.p, args.n)
        if args.figures:
            from .plotting import index_figure

            report["figure"] = str(index_figure(report, Path(args.figures) / f"index_p{args.p}_n{args.n}.png"))
        return cfg, {"survey": True}, report, {"bound_dominates": not report["bound_violations"]}
    cfg, basis = _config(args)
    expr = parse_symbols(args.symbols, args.p, args.n, args.l)
    dec = symbol_decompose(expr, basis)
    bound = args.l ** len(dec.ramified)
    exact = exact_index(expr, basis)
    result = {"index_bound": bound, "exact_index": exact, "ramified": len(dec.ramified)}
    checks = {"class_preserved": dec.certified, "bound_dominates": exact is None or (exact <= bound and bound % exact == 0)}
    return cfg, {"symbols": [str(s) for s in expr.symbols]}, result, checks


def cmd_bounds(args):
    inv = bnd.FieldInvariants(args.n, args.u, args.us, args.d, args.d_rational)
    if (args.s is None) != (args.t is None):
        raise _InputError("--s and --t must be given together")
    if args.s is not None:
        traces = [bnd.completion_case_trace(args.s, args.t, inv)]
    else:
        traces = bnd.all_case_traces(inv)
    cfg = {"n": args.n}
    inputs = {"u_residue": args.u, "us_residue": args.us, "d": args.d, "d_rational": args.d_rational, "s": args.s, "t": args.t}
    result = {"bounds": bnd.invariant_bounds(inv), "traces": traces}
    return cfg, inputs, result, {}


COMMANDS = {
    "decompose": cmd_decompose,
    "isotropy": cmd_isotropy,
    "survey": cmd_survey,
    "symbol": cmd_symbol,
    "split": cmd_split,
    "index": cmd_index,
    "bounds": cmd_bounds,
}


# --- output -------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render_json(report):
    return json.dumps(_jsonable(report), sort_keys=True, ensure_ascii=False, indent=2)


def render_text(report):
    lines = [f"{report['command']}: {'verified' if report['verified'] else 'NOT VERIFIED'}"]
    res = report["result"]
    if report["command"] == "bounds":
        lines += [b["text"] for b in res["bounds"]]
        for tr in res["traces"]:
            parts = [tr[k]["text"] for k in ("u_bound", "br_bound") if k in tr]
            lines.append(f"[{tr['case']}] " + ("; ".join(parts) if parts else "(no bounds from the given invariants)"))
        return "\n".join(lines)

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in sorted(v, key=str):
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        else:
            lines.append(f"{prefix}: {json.dumps(_jsonable(v), ensure_ascii=False)}")

    walk("", res)
    return "\n".join(lines)


def build_parser():
    parser = argparse.ArgumentParser(prog="ultraforms", description="Exact computations over F_p((t1))...((tn)).")
    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=int, default=3, help="odd prime, residue field F_p (default 3)")
    field.add_argument("--n", type=int, default=1, help="number of variables, 1..4 (default 1)")
    field.add_argument("--l", type=int, default=2, help="prime l different from p (default 2)")
    field.add_argument("--basis", help="comma-separated monomials whose valuations form a Q-basis (default t1,...,tn)")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--format", choices=("json", "text"), default="json")
    out.add_argument("--timing", action="store_true", help="append wall-clock timing (not part of the stable output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[field, out], help="decompose elements modulo l-th powers")
    p.add_argument("elements", nargs="+", help="comma-separated element expressions")
    p = sub.add_parser("isotropy", parents=[field, out], help="decide isotropy of a diagonal form")
    p.add_argument("form", nargs="+", help="comma-separated diagonal coefficients")
    p = sub.add_parser("survey", parents=[field, out], help="exhaustive anisotropy survey over square classes")
    p.add_argument("--d-max", type=int, default=None, help="largest dimension (default 2^(n+1)+1)")
    p.add_argument("--figures", metavar="DIR", help="write a bar chart into DIR")
    p = sub.add_parser("symbol", parents=[field, out], help="decompose a sum of symbols")
    p.add_argument("symbols", nargs="+", help="symbols written (a,b)")
    p = sub.add_parser("split", parents=[field, out], help="is the quaternion algebra (a,b) split?")
    p.add_argument("symbol", nargs="+", help="one symbol (a,b)")
    p = sub.add_parser("index", parents=[field, out], help="exact index (l=2, <= 2 symbols) and index bound")
    p.add_argument("symbols", nargs="*", help="symbols written (a,b)")
    p.add_argument("--survey", action="store_true", help="survey all expressions of <= 2 square-class symbols")
    p.add_argument("--figures", metavar="DIR", help="with --survey, write a histogram into DIR")
    p = sub.add_parser("bounds", parents=[out], help="u-invariant and Brauer dimension bounds")
    p.add_argument("--n", type=int, required=True, help="rational rank of the value group")
    p.add_argument("--u", type=_invariant, help="u of the residue field")
    p.add_argument("--us", type=_invariant, help="strong u of the residue field")
    p.add_argument("--d", type=_invariant, help="Brauer l-dimension of the residue field")
    p.add_argument("--d-rational", type=_invariant, help="Brauer l-dimension of its rational function field")
    p.add_argument("--s", type=int, help="added rational rank of a completion")
    p.add_argument("--t", type=int, help="residue transcendence degree of a completion")
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the subcommand, print the report; return the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.command == "index" and not args.survey and not args.symbols:
        print("ultraforms index: give symbols or --survey", file=stderr)
        return 2
    start = time.perf_counter()
    try:
        cfg, inputs, result, checks = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"ultraforms {args.command}: parse error: {exc.message} at position {exc.position} in {exc.text!r}", file=stderr)
        return 2
    except CertificateError as exc:
        print(f"ultraforms {args.command}: certificate failure: {exc}", file=stderr)
        return 3
    except (AbhyankarError, ResolutionError, UltraformsError, ValueError) as exc:
        print(f"ultraforms {args.command}: {exc}", file=stderr)
        return 2
    verified = all(checks.values())
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "config": cfg,
        "inputs": inputs,
        "result": result,
        "checks": checks,
        "verified": verified,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    print(render_json(report) if args.format == "json" else render_text(report), file=stdout)
    if not verified:
        failed = ", ".join(k for k, v in checks.items() if not v)
        print(f"ultraforms {args.command}: certificate check failed: {failed}", file=stderr)
        return 3
    return 0


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
