"""Command-line frontend.

    period [compute] --n 5 --alpha ""            exact period of the cell
    period --kontsevich 1,0                      0/1 iterated-integral form
    period analyze --n 5 --alpha "2,4:1"         divisor order table
    period verify --n 6 --alpha "1,4:1"          symbolic vs quadrature

Alpha assignments are comma lists of i,j:exponent.  Exit codes: 0 ok,
1 verification failure, 2 invalid or divergent input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import mzv as mzvmod
from .dihedral import (DihedralMonomial, chords, divisor_table,
                       kontsevich_singular_divisors, kontsevich_to_monomial,
                       monomial_to_cubical)
from .integrator import (InternalDivergenceError, LimitsExceededError,
                         NonConvergentError, integrate_cell,
                         integrate_kontsevich)
from .numcheck import BudgetExceededError, verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def parse_alpha(n, text):
    alpha = {}
    text = (text or "").strip()
    if not text:
        return DihedralMonomial.of(n)
    for item in _split_alpha(text):
        pair, _, expo = item.partition(":")
        i, j = (int(t) for t in pair.split(","))
        alpha[(i, j)] = alpha.get((i, j), 0) + (int(expo) if expo else 1)
    return DihedralMonomial.of(n, alpha)


def _split_alpha(text):
    # entries look like "1,4:2"; split on commas that precede a pair start
    out = []
    for chunk in text.replace(" ", "").split(";"):
        if not chunk:
            continue
        parts = chunk.split(",")
        t = 0
        while t + 1 < len(parts):
            entry = parts[t] + "," + parts[t + 1]
            out.append(entry)
            t += 2
        if t < len(parts) and parts[t]:
            raise ValueError("dangling token %r in alpha list" % parts[t])
    return out


def build_parser():
    p = argparse.ArgumentParser(
        prog="period",
        description="Exact periods of the associahedron cell as zeta values.")
    p.add_argument("command", nargs="?", default="compute",
                   choices=["compute", "analyze", "verify"])
    p.add_argument("--n", type=int, help="number of marked points (4..8)")
    p.add_argument("--alpha", default="",
                   help="chord exponents, e.g. '1,4:1;2,5:2'")
    p.add_argument("--kontsevich",
                   help="0/1 vector, e.g. '1,0,0'")
    p.add_argument("--digits", type=int, default=10,
                   help="digits for numeric output / verification")
    p.add_argument("--reduce", action="store_true",
                   help="also print the value reduced by stored "
                        "double-shuffle relations")
    p.add_argument("--trace", action="store_true",
                   help="include the per-stage trace")
    p.add_argument("--seed", type=int, default=20290)
    p.add_argument("--json", action="store_true", dest="as_json")
    return p


def _reduced_text(value):
    from .relations import reduce_by_double_shuffle
    return reduce_by_double_shuffle(value).to_text()


def cmd_period(args):
    if args.kontsevich:
        eps = tuple(int(b) for b in args.kontsevich.replace(",", ""))
        result = integrate_kontsevich(eps)
    else:
        if args.n is None:
            print("error: --n is required", file=sys.stderr)
            return EXIT_BAD_INPUT
        m = parse_alpha(args.n, args.alpha)
        result = integrate_cell(m, keep_trace=args.trace)
    payload = {
        "value": result.value.to_text(),
        "structured": result.value.to_structured(),
        "weight_bound": result.weight_bound,
    }
    if args.kontsevich:
        payload["sign"] = result.sign
    if args.digits:
        payload["numeric"] = mzvmod.mp.nstr(result.numeric(min(args.digits, 100)),
                                            min(args.digits, 100))
    if args.reduce:
        payload["reduced"] = _reduced_text(result.value)
    if args.trace:
        payload["trace"] = [list(map(str, t)) for t in result.trace]
    if args.as_json:
        print(json.dumps(payload))
    else:
        print(payload["value"])
        if args.digits:
            print("= %s" % payload["numeric"])
        if args.reduce:
            print("reduced: %s" % payload["reduced"])
        if args.trace:
            for entry in payload["trace"]:
                print("  " + " ".join(entry))
    return EXIT_OK


def cmd_analyze(args):
    if args.n is None and not args.kontsevich:
        print("error: --n or --kontsevich required", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.kontsevich:
        eps = tuple(int(b) for b in args.kontsevich.replace(",", ""))
        rows = kontsevich_singular_divisors(eps)
        m = kontsevich_to_monomial(eps)
        header = "kontsevich %s (n=%d)" % (list(eps), m.n)
    else:
        m = parse_alpha(args.n, args.alpha)
        rows = [(r.partition, r.order) for r in divisor_table(m)]
        header = "monomial %s (n=%d)" % (m, m.n)
    payload = {"input": header,
               "divisors": [{"partition": str(p), "order": o}
                            for p, o in rows],
               "poles": sum(1 for _, o in rows if o < 0)}
    if args.as_json:
        print(json.dumps(payload))
    else:
        print(header)
        for p, o in rows:
            flag = "  <- pole" if o < 0 else ""
            print("  %-28s ord %+d%s" % (p, o, flag))
        print("%d divisors with poles" % payload["poles"])
    return EXIT_OK


def cmd_verify(args):
    if args.n is None:
        print("error: --n is required", file=sys.stderr)
        return EXIT_BAD_INPUT
    m = parse_alpha(args.n, args.alpha)
    report = verify(m, digits=args.digits, seed=args.seed)
    if args.as_json:
        print(report.to_json())
    else:
        print("symbolic: %s = %.12g" % (report.symbolic, report.symbolic_value))
        print("numeric:  %.12g +- %.2g (%s, %d points)" %
              (report.numeric.estimate, report.numeric.error_bound,
               report.numeric.method, report.numeric.points))
        print("|delta| = %.3g -> %s" %
              (report.difference, "PASS" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def main(argv=None):
    args = build_parser().parse_args(argv)
    budget = os.environ.get("PERIODS_TERM_BUDGET")
    if budget:
        mzvmod._SERIES_BUDGET = int(budget)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_period(args)
    except (NonConvergentError, InternalDivergenceError, LimitsExceededError,
            ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    except BudgetExceededError as exc:
        print("error: %s (best estimate %.9g +- %.2g)"
              % (exc, exc.report.estimate, exc.report.error_bound),
              file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
