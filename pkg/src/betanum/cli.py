"""Command-line front end: ``betanum --p P --q Q <command> ...``.

Exit status is 0 on success, 1 on a domain error (message on stderr) or a
failed ``verify`` check, and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

from . import checks, words, zbeta
from .digits import evaluate, format_digits, fp, normalize_rewrite, parse_digits
from .expansion import DEFAULT_BUDGET, EventuallyPeriodic, Finite, greedy_expand
from .ring import FinElem, Params

DOMAIN_ERRORS = (ValueError, ArithmeticError)

_DIGITS_RE = re.compile(r"^[0-9,]*[.•][0-9,]*$")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(beta|β)|(.))")


# -- value parsing ---------------------------------------------------------

class _ExprParser:
    """Tiny recursive-descent parser for exact values such as ``beta-1`` or ``(3+2*beta)/beta^2``."""

    def __init__(self, text: str, params: Params):
        self.params = params
        self.tokens: list[tuple[str, str]] = []
        for num, beta, other in _TOKEN_RE.findall(text.strip()):
            if num:
                self.tokens.append(("int", num))
            elif beta:
                self.tokens.append(("beta", beta))
            elif other.strip():
                self.tokens.append(("op", other))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "")

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> FinElem:
        if not self.tokens:
            raise ValueError("empty value")
        x = self.expr()
        if self.peek()[0] != "end":
            raise ValueError(f"unexpected {self.peek()[1]!r}")
        return x

    def expr(self) -> FinElem:
        x = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> FinElem:
        x = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                y = self.unary()
                x = x * y if tok[1] == "*" else x.times_beta_pow(-self._beta_exponent(y))
            elif tok[0] in ("beta", "int") or tok == ("op", "("):
                x = x * self.unary()  # implicit product, e.g. 2beta
            else:
                return x

    def unary(self) -> FinElem:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> FinElem:
        x = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            n = sign * int(val)
            if n < 0:
                return FinElem.from_int(self.params, 1).times_beta_pow(n * self._beta_exponent(x))
            out = FinElem.from_int(self.params, 1)
            for _ in range(n):
                out = out * x
            return out
        return x

    def atom(self) -> FinElem:
        kind, val = self.take()
        if kind == "int":
            return FinElem.from_int(self.params, int(val))
        if kind == "beta":
            return FinElem(self.params.beta, 0)
        if (kind, val) == ("op", "("):
            x = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return x
        raise ValueError(f"unexpected {val or 'end of input'!r}")

    def _beta_exponent(self, x: FinElem) -> int:
        """k with x == beta**k; only powers of beta may divide."""
        for k in range(256):
            if x.z == self.params.beta_power(k):
                return k - x.f
        raise ValueError("division is only supported by powers of beta")


def parse_value(text: str, params: Params) -> FinElem:
    """A digit string (it has a point, e.g. ``10.3``) or an expression in beta."""
    s = text.strip()
    if _DIGITS_RE.match(s):
        return evaluate(parse_digits(s), params)
    return _ExprParser(s, params).parse()


# -- output ----------------------------------------------------------------

def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit(args, text: str, payload: dict, header: list[str] | None = None,
          rows: list[list] | None = None) -> None:
    if args.format == "json":
        print(_dump_json(payload))
    elif args.format == "csv":
        if header is None:
            header = sorted(payload)
            rows = [[payload[k] for k in header]]
        print(_dump_csv(header, rows))
    else:
        print(text)


def _expansion_payload(res) -> dict:
    if isinstance(res, Finite):
        return {"kind": "finite", "expansion": str(res), "fp": res.digits.frac_len}
    if isinstance(res, EventuallyPeriodic):
        return {"kind": "periodic", "expansion": str(res),
                "preperiod": format_digits(res.preperiod, keep_zeros=True),
                "period": list(res.period)}
    return {"kind": "budget_exceeded", "expansion": str(res)}


def _int_text(x: FinElem) -> str:
    return format_digits(greedy_expand(x).digits)


# -- commands --------------------------------------------------------------

def cmd_expand(args, params: Params) -> int:
    x = parse_value(args.value, params)
    res = greedy_expand(x, args.budget)
    _emit(args, str(res), _expansion_payload(res))
    return 0


def cmd_normalize(args, params: Params) -> int:
    ds = parse_digits(args.digits)
    out = normalize_rewrite(ds, params)
    payload = {"input": format_digits(ds), "output": format_digits(out), "fp": out.frac_len}
    _emit(args, format_digits(out), payload)
    return 0


def cmd_add(args, params: Params) -> int:
    x, y = parse_value(args.x, params), parse_value(args.y, params)
    rep = zbeta.add(x, y, args.budget)
    text = ("-" if rep.negative else "") + format_digits(rep.sum_expansion)
    payload = {"sum": text, "fp": rep.fp, "epsilon": rep.epsilon}
    _emit(args, f"{text} fp={rep.fp} eps={rep.epsilon}", payload)
    return 0


def cmd_addpow(args, params: Params) -> int:
    x = parse_digits(args.x)
    out = zbeta.add_beta_power(x, args.l, params)
    payload = {"x": format_digits(x), "l": args.l, "sum": format_digits(out), "fp": out.frac_len}
    _emit(args, format_digits(out), payload)
    return 0


def cmd_list(args, params: Params) -> int:
    values = zbeta.enumerate_beta_integers(args.n + 1, params)
    one = FinElem.from_int(params, 1)
    letters = "".join("A" if values[k + 1] - values[k] == one else "B" for k in range(args.n))
    rows = [[k, _int_text(values[k]), letters[k]] for k in range(args.n)]
    text = "\n".join(f"{k} {v} {c}" for k, v, c in rows)
    payload = {"values": [r[1] for r in rows], "letters": letters}
    _emit(args, text, payload, ["index", "value", "gap"], rows)
    return 0


def cmd_succ(args, params: Params) -> int:
    x = parse_value(args.value, params)
    y, letter = zbeta.successor(x)
    payload = {"value": _int_text(x), "successor": _int_text(y), "letter": letter}
    _emit(args, f"{payload['successor']} {letter}", payload)
    return 0


def cmd_lplus(args, params: Params) -> int:
    rep = zbeta.lplus_search(args.digit_bound, params, witness_limit=args.witnesses,
                             check_diffs=not args.no_differences)
    d = rep.to_dict()
    hist = " ".join(f"{k}:{v}" for k, v in d["histogram"].items())
    text = (f"max_fp={rep.max_fp} bracket=[{params.lower},{params.upper}] "
            f"conjecture={'yes' if rep.matches_conjecture else 'no'}\n"
            f"histogram {hist}\n"
            + "\n".join(f"witness {x} + {y}" for x, y in d["witnesses"]))
    rows = [[k, v] for k, v in d["histogram"].items()]
    _emit(args, text, d, ["fp", "pairs"], rows)
    return 0


def cmd_lemmaf(args, params: Params) -> int:
    ds = zbeta.lemmaF_expansion(args.j, params)
    payload = {"j": args.j, "expansion": format_digits(ds), "fp": fp(ds, params)}
    _emit(args, format_digits(ds), payload)
    return 0


def cmd_balance(args, params: Params) -> int:
    scan = words.balance_scan(args.prefix_len, args.max_window, params)
    spread = scan.spread
    rows = [[k + 1, int(scan.min_a[k]), int(scan.max_a[k]), int(spread[k])]
            for k in range(len(spread))]
    payload = {"prefix_len": args.prefix_len, "max_window": len(spread),
               "max_spread": scan.max_spread, "bound": params.T,
               "first_window_at_bound": scan.first_window_with_spread(params.T)}
    text = (f"max_spread={scan.max_spread} bound={params.T} "
            f"first_window_at_bound={payload['first_window_at_bound']}")
    _emit(args, text, payload, ["window", "min_A", "max_A", "spread"], rows)
    return 0


def cmd_dn(args, params: Params) -> int:
    if words.w_len(args.n_max, params) > 50_000_000:
        raise ValueError(f"|w({args.n_max})| is too long to count by brute force")
    cols = [words.d_sequence(args.n_max, params, m)
            for m in ("bruteforce", "recurrence", "closed_form")]
    rows = [[n + 1, cols[0][n], cols[1][n], cols[2][n]] for n in range(args.n_max)]
    header = ["n", "D_bruteforce", "D_recurrence", "D_closed"]
    text = "\n".join(" ".join(map(str, r)) for r in rows)
    payload = {"n_max": args.n_max, "bruteforce": cols[0], "recurrence": cols[1],
               "closed_form": cols[2], "agree": cols[0] == cols[1] == cols[2]}
    _emit(args, text, payload, header, rows)
    return 0


def cmd_words(args, params: Params) -> int:
    if args.kind == "phi":
        if args.word is None or set(args.word) - set("AB"):
            raise ValueError("--word over the letters A and B is required for phi")
        word = words.substitute(args.word, params)
    else:
        if args.n is None:
            raise ValueError(f"--n is required for {args.kind}")
        if args.kind == "u":
            word = words.u_prefix(args.n, params)
        elif args.kind == "wn":
            word = words.w_n(args.n, params)
        else:
            word = words.w_prefix(args.n, params)
    payload = {"kind": args.kind, "word": word, "length": len(word),
               "A": word.count("A"), "B": word.count("B")}
    _emit(args, word, payload)
    return 0


VERIFY_CHECKS = ("rewrite", "rules", "oracle", "addpow", "dn", "balance", "lemmaf",
                 "enumeration", "periodicity", "incidence", "lplus")


def cmd_verify(args, params: Params | None) -> int:
    names = [s for s in args.checks.split(",") if s]
    unknown = set(names) - set(VERIFY_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {','.join(VERIFY_CHECKS)}")
    if params is not None:
        pairs = [(params.p, params.q)]
    else:
        pairs = [(p, q) for p in range(args.p_min, args.p_max + 1) for q in range(1, p)
                 if args.q_rule == "all" or (args.q_rule == "unit") == (q == p - 1)]
    if not pairs:
        raise ValueError("empty parameter range")
    results = checks.run_checks(pairs, names, digit_bound=args.digit_bound)
    failed = sum(not r.passed for r in results)
    if args.format == "json":
        print(_dump_json({"results": [r.to_dict() for r in results], "failed": failed}))
    elif args.format == "csv":
        print(_dump_csv(["check", "p", "q", "passed", "measured"],
                        [[r.check, r.p, r.q, r.passed, r.measured] for r in results]))
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - failed} passed, {failed} failed")
    return 1 if failed else 0


# -- argument parsing ------------------------------------------------------

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="betanum",
        description="Exact beta-numeration for the larger root beta of x^2-(p+1)x+(p-q).")
    ap.add_argument("--p", type=int, help="p in d(1) = p q^omega (p > q >= 1)")
    ap.add_argument("--q", type=int, help="q in d(1) = p q^omega")
    ap.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ap.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                    help="fractional digits before giving up on an expansion")
    # the global flags are also accepted after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS)
    common.add_argument("--q", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("expand", parents=[common], help="greedy expansion of a value")
    s.add_argument("--value", required=True, help='e.g. "6", "beta-1", "(1+2beta)/beta^2", "10.3"')
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("normalize", parents=[common], help="rewrite a digit string into the expansion")
    s.add_argument("--digits", required=True, help='e.g. "723." or "7,2,3."')
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("add", parents=[common], help="sum of two beta-integers with fp and epsilon")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.set_defaults(func=cmd_add)

    s = sub.add_parser("addpow", parents=[common], help="x + beta^l for a beta-integer digit string x")
    s.add_argument("--x", required=True)
    s.add_argument("--l", type=_nonnegative, required=True)
    s.set_defaults(func=cmd_addpow)

    s = sub.add_parser("list", parents=[common], help="the first n nonnegative beta-integers")
    s.add_argument("--n", type=_positive, default=10)
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("succ", parents=[common], help="the next beta-integer and the gap letter")
    s.add_argument("--value", required=True)
    s.set_defaults(func=cmd_succ)

    s = sub.add_parser("lplus", parents=[common], help="exhaustive max fp(x+y) over short beta-integers")
    s.add_argument("--digit-bound", type=_positive, default=4)
    s.add_argument("--witnesses", type=_nonnegative, default=16)
    s.add_argument("--no-differences", action="store_true",
                   help="skip classifying the differences x - y")
    s.set_defaults(func=cmd_lplus)

    s = sub.add_parser("lemmaf", parents=[common], help="expansion of j(p-q)/beta")
    s.add_argument("--j", type=_positive, required=True)
    s.set_defaults(func=cmd_lemmaf)

    s = sub.add_parser("balance", parents=[common], help="sliding-window letter counts over a prefix of u")
    s.add_argument("--prefix-len", type=_positive, default=10_000)
    s.add_argument("--max-window", type=_positive, default=500)
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("dn", parents=[common], help="D_n three ways")
    s.add_argument("--n-max", type=_positive, required=True)
    s.set_defaults(func=cmd_dn)

    s = sub.add_parser("words", parents=[common], help="prefixes of u and w, w(n), or phi of a word")
    s.add_argument("--kind", choices=("u", "w", "wn", "phi"), default="u")
    s.add_argument("--n", type=_nonnegative)
    s.add_argument("--word")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("verify", parents=[common], help="grid sweep of the numerical checks")
    s.add_argument("--p-min", type=_positive, default=2)
    s.add_argument("--p-max", type=_positive, default=8)
    s.add_argument("--q-rule", choices=("all", "nonunit", "unit"), default="all",
                   help="all q < p, only q <= p-2, or only q = p-1")
    s.add_argument("--checks", default="rules,dn,balance,lemmaf,periodicity,incidence",
                   help=f"comma-separated subset of {','.join(VERIFY_CHECKS)}")
    s.add_argument("--digit-bound", type=_positive, default=4)
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    params = None
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            ap.error("--p and --q must be given together")
        if not args.p > args.q >= 1:
            ap.error(f"need p > q >= 1, got p={args.p} q={args.q}")
        params = Params(args.p, args.q)
    elif args.command != "verify":
        ap.error(f"{args.command} needs --p and --q")
    try:
        return args.func(args, params)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
