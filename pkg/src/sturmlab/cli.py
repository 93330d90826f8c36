"""Command-line front end.

Exit codes: 0 success or PASS, 1 computation error or failed check,
2 INCONCLUSIVE verdict, 64 usage error.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
import os
import sys

from . import __version__
from .coloring import EPISTURMIAN_K1, SCHEMES, STURMIAN_3, explain_color, make_coloring
from .descent import descend_chain, descend_episturmian, descend_factorization
from .errors import SturmlabError
from .factors import CHECKS, factor_table, richness, slope_frequency, special_factors
from .morphisms import Morphism, desubstitute
from .reports import SCHEMA_VERSION, dumps
from .search import (DEFAULT_BUDGET, DEFAULT_MAX_LEN, enumerate_monochromatic,
                     sample_descent_chain, verify_no_monochromatic)
from .words import parse_word_spec, prefix

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _spec(text):
    try:
        return parse_word_spec(text)
    except SturmlabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, document, text):
    document = {"version": SCHEMA_VERSION, "command": args.command, **document}
    if args.json == "-":
        sys.stdout.write(dumps(document))
        return
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(document))
    print(text)


def _default_scheme(spec):
    return STURMIAN_3 if spec.sturmian else EPISTURMIAN_K1


def cmd_generate(args):
    w = prefix(args.spec, args.n)
    _emit(args, {"spec": args.spec.render(), "n": args.n, "prefix": w}, w)
    return EXIT_OK


def cmd_factors(args):
    table = factor_table(args.spec, args.m, mode=args.mode)
    _emit(args, table.to_json(), "\n".join(table.factors))
    return EXIT_OK


def cmd_special(args):
    found = special_factors(args.spec, args.m, args.side)
    _emit(args, {"spec": args.spec.render(), "m": args.m, "side": args.side, "factors": found},
          "\n".join(found))
    return EXIT_OK


def cmd_richness(args):
    verdict = richness(args.spec, args.word)
    _emit(args, {"spec": args.spec.render(), **verdict.to_json()},
          f"{verdict.letter} (witness {verdict.witness})")
    return EXIT_OK


def cmd_freq(args):
    f = slope_frequency(args.spec, args.letter, precision=Fraction(1, 10**args.precision))
    lo, hi = f.lower, f.upper
    text = f"f_{args.letter} = {f.cf.render() if f.cf else 'empirical'} in [{lo}, {hi}]"
    _emit(args, {"spec": args.spec.render(), **f.to_json()}, text)
    return EXIT_OK


def _applicable_checks(spec):
    if spec.sturmian:
        names = ["complexity", "balance", "special", "lastletter"]
        if spec.slope() is not None:
            names.append("counting")
        if spec.standard:
            names.append("fact1")
        return names
    return ["separating", "fact4"] if spec.standard else []


def _run_check(spec, name, bound=None):
    kwargs = {}
    if bound:
        kwargs["n" if name == "balance" else "m_max"] = bound
    if name == "separating":
        # the separating letter of a standard episturmian word is its first letter
        kwargs["letter"] = prefix(spec, 1)
    return CHECKS[name](spec, **kwargs)


def cmd_check(args):
    names = _applicable_checks(args.spec) if args.name == "all" else [args.name]
    reports = [_run_check(args.spec, name, args.bound) for name in names]
    lines = [f"{r.check}: {r.status} ({len(r.violations)} violations, bound {r.bound})" for r in reports]
    _emit(args, {"spec": args.spec.render(), "reports": [r.to_json() for r in reports]},
          "\n".join(lines))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_color(args):
    coloring = make_coloring(args.spec, args.scheme or _default_scheme(args.spec), args.forced)
    verdict = explain_color(coloring, args.word)
    _emit(args, {"coloring": coloring.describe(), **verdict.to_json()}, str(verdict))
    return EXIT_OK


def cmd_desub(args):
    m = Morphism.parse(args.morphism, tuple(sorted(set(args.word) | {"a", "b"})))
    decoded, cert = desubstitute(args.word, m, final=args.final)
    text = decoded + (f"  (tail {cert.tail!r})" if cert.tail else "")
    _emit(args, {"word": args.word, "morphism": str(m), "final": args.final, **cert.to_json()}, text)
    return EXIT_OK


def cmd_descend(args):
    episturmian = args.epi or not args.spec.sturmian
    if args.blocks:
        if args.chain:
            trace = descend_chain(args.spec, args.blocks, episturmian)
            _emit(args, trace.to_json(), _trace_text(trace))
            return EXIT_OK
        step = (descend_episturmian if episturmian else descend_factorization)(args.spec, args.blocks)
        text = f"{step.morphism}: {' '.join(step.blocks)} -> {' '.join(step.derived_blocks)}"
        _emit(args, step.to_json(), text)
        return EXIT_OK
    coloring = make_coloring(args.spec, EPISTURMIAN_K1 if episturmian else STURMIAN_3)
    trace = sample_descent_chain(coloring, args.color, max_len=args.max_len)
    _emit(args, trace.to_json(), _trace_text(trace))
    return EXIT_OK


def _trace_text(trace):
    lengths = " > ".join(str(n) for n in trace.first_lengths)
    return f"{trace.status}; first-block lengths {lengths}"


def cmd_search(args):
    coloring = make_coloring(args.spec, args.scheme or _default_scheme(args.spec), args.forced)
    report = enumerate_monochromatic(coloring, args.color, args.max_len, args.budget)
    text = (f"nodes {report.total_nodes}, dead {report.dead}, truncated {report.truncated}, "
            f"max depth {report.max_depth}, max covered {report.max_covered}, "
            f"{'finite' if report.finite else 'NOT certified finite'}")
    _emit(args, report.to_json(), text)
    return EXIT_OK if report.finite else EXIT_INCONCLUSIVE


def cmd_verify_all(args):
    spec = args.spec
    scheme = args.scheme or _default_scheme(spec)
    coloring = make_coloring(spec, scheme, args.forced)
    checks = [_run_check(spec, name) for name in _applicable_checks(spec)]
    verdict = verify_no_monochromatic(coloring, args.max_len, args.budget)
    descents = []
    if verdict.passed:
        for target in range(1, coloring.n_colors):
            descents.append(sample_descent_chain(coloring, target, max_len=min(args.max_len, 500)))
    failed = [r.check for r in checks if not r.passed]
    descent_ok = all(t.strictly_decreasing for t in descents)
    if failed or not descent_ok:
        status = "FAIL"
    else:
        status = verdict.status
    document = {"spec": spec.render(), "status": status,
                "checks": [r.to_json() for r in checks],
                "search": verdict.to_json(),
                "descent": [t.to_json() for t in descents]}
    lines = [f"{r.check}: {r.status}" for r in checks]
    lines += [f"search color {r.target}: nodes {r.total_nodes}, truncated {r.truncated}"
              for r in verdict.reports]
    lines += [f"descent color {i + 1}: {_trace_text(t)}" for i, t in enumerate(descents)]
    if verdict.demonstration:
        d = verdict.demonstration
        lines.append(f"periodic demonstration: ({d['block']})^omega is monochromatic in color {d['colors']}")
    lines.append(f"verdict: {status}")
    _emit(args, document, "\n".join(lines))
    return {"PASS": EXIT_OK, "INCONCLUSIVE": EXIT_INCONCLUSIVE}.get(status, EXIT_FAIL)


def build_parser():
    parser = _Parser(prog="sturmlab", description="Sturmian and episturmian word experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
        return p

    p = add("generate", cmd_generate, "print a prefix of the word")
    p.add_argument("spec", type=_spec)
    p.add_argument("-n", type=_positive, default=50)

    p = add("factors", cmd_factors, "list the factors of one length")
    p.add_argument("spec", type=_spec)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "sturmian", "heuristic"), default="auto")

    p = add("special", cmd_special, "list the special factors of one length")
    p.add_argument("spec", type=_spec)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--side", choices=("left", "right"), default="right")

    p = add("richness", cmd_richness, "the letter a factor is rich in")
    p.add_argument("spec", type=_spec)
    p.add_argument("word")

    p = add("freq", cmd_freq, "letter frequency as a continued fraction with bounds")
    p.add_argument("spec", type=_spec)
    p.add_argument("--letter", default="b")
    p.add_argument("--precision", type=_positive, default=10, help="bound width 10^-DIGITS")

    p = add("check", cmd_check, "run a property check")
    p.add_argument("spec", type=_spec)
    p.add_argument("name", choices=sorted(CHECKS) + ["all"])
    p.add_argument("--bound", type=_positive)

    p = add("color", cmd_color, "color of a factor")
    p.add_argument("spec", type=_spec)
    p.add_argument("word")
    p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--forced", action="store_true", help="skip the scheme's precondition")

    p = add("desub", cmd_desub, "decode a word under L_x or R_x")
    p.add_argument("word")
    p.add_argument("--morphism", required=True, help="L_a, L_b, R_a or R_b")
    p.add_argument("--final", action="store_true", help="treat the end of input as a token boundary")

    p = add("descend", cmd_descend, "descend a monochromatic factorization")
    p.add_argument("spec", type=_spec)
    p.add_argument("blocks", nargs="*", help="blocks U_1 ... U_n; omit to sample the deepest chain")
    p.add_argument("--chain", action="store_true", help="descend repeatedly")
    p.add_argument("--epi", action="store_true", help="use the episturmian L_x step")
    p.add_argument("--color", type=_positive, default=1)
    p.add_argument("--max-len", type=_positive, default=500)

    for name, func, help_text in (("search", cmd_search, "enumerate monochromatic factorizations"),
                                  ("verify-all", cmd_verify_all, "run every applicable check")):
        p = add(name, func, help_text)
        p.add_argument("spec", type=_spec)
        p.add_argument("--scheme", choices=SCHEMES)
        p.add_argument("--forced", action="store_true")
        p.add_argument("--max-len", type=_positive, default=DEFAULT_MAX_LEN)
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
        if name == "search":
            p.add_argument("--color", type=int, required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SturmlabError, ValueError) as exc:
        print(f"sturmlab: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        # the reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK

