"""Command-line driver: ``beauville verify | oracle | trace-table | order-census``.

Exit codes: 0 when every mandatory check passes, 1 when one fails, 2 for
invalid parameters or an over-budget oracle run.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from . import beauville as B
from . import cyclotrace
from . import permcore
from . import quotient as Q
from . import wreath as W
from .wreath import GroupParams, InvalidParams

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


@dataclass
class VerifyReport:
    params: dict
    mode: str
    variant: str
    witness_words: dict
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def verdict(self) -> str:
        mandatory = [c for c in self.checks if c.get("mandatory", True)]
        ok = all(c["pass"] is True for c in mandatory)
        return "pass" if ok else "fail"

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "params": dict(self.params),
            "mode": self.mode,
            "variant": self.variant,
            "witness_words": dict(self.witness_words),
            "checks": [dict(c) for c in self.checks],
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerifyReport":
        report = cls(
            params=data["params"], mode=data["mode"], variant=data["variant"],
            witness_words=data["witness_words"], checks=list(data["checks"]),
            version=data["version"],
        )
        if report.verdict != data["verdict"]:
            raise ValueError("verdict does not match the checks")
        return report

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)

    def __eq__(self, other):
        return isinstance(other, VerifyReport) and self.to_json() == other.to_json()


def _check_json(c: B.Check, timings: bool) -> dict:
    out = c.to_json(timings)
    if not c.mandatory:
        out["mandatory"] = False
    return out


def structure_params(p: int, q: int, r: int) -> GroupParams:
    """Parameters for which the witness structure is defined."""
    params = GroupParams(p, q, r)
    if not params.supports_structure():
        raise InvalidParams("C_%d wr C_%d is too small to carry a Beauville structure (need r > 3 when p = 3)" % (q, r))
    return params


def _relations(params):
    def run():
        rel = W.verify_relations(params)
        order = rel.pop("order")
        return all(rel.values()), {"relations": rel, "order": str(order), "expected_order": str(params.group_order)}
    return run


def _involution(params, ws):
    def run():
        t = W.involution_t(params)
        X, Y = W.xi(params), W.upsilon(params)
        e = permcore.identity(params.degree)
        out = {
            "t^2 = e": permcore.compose(t, t) == e,
            "Xi^t = Xi^-1": permcore.conjugate(X, t) == permcore.inverse(X),
            "Upsilon^t = Upsilon^-1": permcore.conjugate(Y, t) == permcore.inverse(Y),
            "apply_t matches permutation conjugation": all(
                W.apply_t(g) == W.apply_t_via_permutation(g) for g in ws.elements
            ),
        }
        return all(out.values()), out
    return run


def _trace_formulas(params):
    def run():
        res = cyclotrace.verify_trace_formulas(params)
        details = {"checked_powers": res.checked, "families": res.per_family}
        if res.counterexample:
            details["counterexample"] = res.counterexample
        return res.ok, details
    return run


def run_verify(params: GroupParams, variant: str = "auto", budget: int | None = None) -> B.LemmaReport:
    ws = B.build_structure(params, variant)
    report = B.LemmaReport(params, ws.variant)
    report.run("relations", _relations(params))
    report.run("involution", _involution(params, ws))
    lemma = B.check_lemma(ws, budget)
    report.checks.extend(lemma.checks)
    if ws.variant == "short":
        report.run("trace-formulas", _trace_formulas(params))
    return report


def run_oracle(params: GroupParams, variant: str = "auto", budget: int | None = None) -> B.LemmaReport:
    ws = B.build_structure(params, variant)
    return B.oracle_report(ws, budget)


def build_report(lemma: B.LemmaReport, mode: str, timings: bool = False) -> VerifyReport:
    P = lemma.params
    ws = B.build_structure(P, lemma.variant)
    return VerifyReport(
        params={"p": P.p, "q": P.q, "r": P.r},
        mode=mode,
        variant=lemma.variant,
        witness_words=ws.words(),
        checks=[_check_json(c, timings) for c in lemma.checks],
    )


def format_text(report: VerifyReport, lemma: B.LemmaReport | None = None) -> str:
    P = report.params
    lines = ["%s: C_%d wr C_%d / Z  (p=%d, variant=%s)" % (report.mode, P["q"], P["r"], P["p"], report.variant)]
    words = report.witness_words
    lines.append("  pairs: {%s, %s}, {%s, %s}" % (words["x1"], words["y1"], words["x2"], words["y2"]))
    seconds = {c.name: c.seconds for c in lemma.checks} if lemma else {}
    for c in report.checks:
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[c["pass"]]
        extra = ""
        if c["pass"] is None:
            extra = "  (%s)" % c["details"].get("skipped", "")
        elif c["name"] in seconds:
            extra = "  %.2fs" % seconds[c["name"]]
        lines.append("  %-4s %s%s" % (status, c["name"], extra))
        hits = c["details"].get("noncentral_collisions") or c["details"].get("collisions") or []
        for hit in [h for h in hits if "conjugator" in h][:5]:
            z = "  times central %s" % hit["central_factor"] if "central_factor" in hit else ""
            lines.append("         %s ~ %s%s  via base=%s shift=%d" % (
                hit["left"], hit["right"], z, hit["conjugator"]["base"], hit["conjugator"]["shift"]))
    lines.append("verdict: %s" % report.verdict.upper())
    return "\n".join(lines)


# -- order census ---------------------------------------------------------------

def quotient_exponent(p: int, b: int, a: int) -> int:
    """log_p |C_q wr C_r / Z| for q = p^b, r = p^a: b(r - 1) + a."""
    return b * (p ** a - 1) + a


def order_census(p: int, max_exponent: int) -> dict:
    """Exponent of |G/Z| for every (q, r) = (p^b, p^a), 1 <= a, b <= max_exponent."""
    by_exp: dict = {}
    for b in range(1, max_exponent + 1):
        for a in range(1, max_exponent + 1):
            by_exp.setdefault(quotient_exponent(p, b, a), []).append((b, a))
    collisions = {e: pairs for e, pairs in by_exp.items() if len(pairs) > 1}
    return {"p": p, "max_exponent": max_exponent, "by_exponent": by_exp, "collisions": collisions}


def _pair_label(p, b, a):
    return "(%d^%d, %d^%d)" % (p, b, p, a)


# -- trace table ---------------------------------------------------------------

def trace_table(params: GroupParams) -> list:
    words = cyclotrace.family_words(params)
    forms = cyclotrace.closed_forms(params)
    rows = []
    for name, text in cyclotrace.closed_form_strings(params):
        g = words[name]
        ok = all(cyclotrace.trace(g ** i) == forms[name](i) for i in range(1, W.element_order(g)))
        rows.append({"family": name, "formula": text, "verified": ok})
    if params.p == 3 and params.r >= 5:
        # the five-term word has no closed form; list computed traces
        y2 = B.conjugate_chain(params, 2)
        xyx = W.gen_x(params) * W.gen_y(params) * W.gen_x(params)
        for name, g in (("X^(Y^2) X^Y X X^(Y^-1) X^(Y^-2)", y2), ("XYX X^(Y^2) X^Y X X^(Y^-1) X^(Y^-2)", xyx * y2)):
            values = []
            h = g
            for i in range(1, W.element_order(g)):
                values.append(cyclotrace.trace(h).format("ζ_%d" % max(params.q, params.r)))
                h = h * g
            rows.append({"family": name, "formula": None, "computed": values, "verified": None})
    return rows


# -- argument handling ------------------------------------------------------------

def _add_params(sp, structure: bool = True):
    sp.add_argument("params", nargs="*", type=int, metavar="P Q R", help="p q r as positional integers")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--json", action="store_true", help="print a JSON report")


def _resolve(args) -> tuple:
    vals = list(args.params)
    if vals and len(vals) != 3:
        raise InvalidParams("expected three positional integers p q r")
    p = args.p if args.p is not None else (vals[0] if vals else None)
    q = args.q if args.q is not None else (vals[1] if vals else None)
    r = args.r if args.r is not None else (vals[2] if vals else None)
    if None in (p, q, r):
        raise InvalidParams("p, q and r are all required")
    return p, q, r


def _budget(args):
    return args.budget if args.budget is not None else Q.default_budget()


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beauville", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("verify", "run the full certification pipeline"),
                        ("oracle", "decide the conditions in G/Z by enumeration only")):
        sp = sub.add_parser(name, help=help_)
        _add_params(sp)
        sp.add_argument("--budget", type=int, default=None,
                        help="largest quotient to enumerate (default: $BEAUVILLE_BUDGET or 100000)")
        sp.add_argument("--variant", choices=B.VARIANTS, default="auto")
        sp.add_argument("--timings", action="store_true", help="include per-check seconds in JSON")

    sp = sub.add_parser("trace-table", help="closed-form traces of the witness families")
    _add_params(sp)

    sp = sub.add_parser("order-census", help="exponents of |G/Z| and order coincidences")
    sp.add_argument("params", nargs="*", type=int, metavar="P MAX", help="p and max exponent")
    sp.add_argument("--p", type=int)
    sp.add_argument("--max-exponent", type=int)
    sp.add_argument("--target", type=int, default=None, help="only report this exponent")
    sp.add_argument("--json", action="store_true")
    return parser


def cmd_verify(args, oracle: bool = False) -> int:
    try:
        params = structure_params(*_resolve(args))
    except InvalidParams as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    budget = _budget(args)
    try:
        if oracle:
            lemma = run_oracle(params, args.variant, budget)
        else:
            lemma = run_verify(params, args.variant, budget)
    except Q.BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except InvalidParams as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    report = build_report(lemma, "oracle" if oracle else "verify", args.timings)
    if args.json:
        print(report.dumps())
    else:
        print(format_text(report, lemma))
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


def cmd_trace_table(args) -> int:
    try:
        params = GroupParams(*_resolve(args))
    except InvalidParams as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    rows = trace_table(params)
    if args.json:
        print(json.dumps({"params": {"p": params.p, "q": params.q, "r": params.r}, "rows": rows},
                         sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for row in rows:
            if row["formula"] is not None:
                print("%s   [%s]" % (row["formula"], "verified" if row["verified"] else "MISMATCH"))
            else:
                print("Tr((%s)^i), i = 1..%d (computed):" % (row["family"], len(row["computed"])))
                for i, v in enumerate(row["computed"], 1):
                    print("    i=%d: %s" % (i, v))
    ok = all(row["verified"] is not False for row in rows)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_order_census(args) -> int:
    vals = list(args.params)
    p = args.p if args.p is not None else (vals[0] if vals else None)
    m = args.max_exponent if args.max_exponent is not None else (vals[1] if len(vals) > 1 else None)
    if p is None or m is None or m < 1:
        print("error: p and a positive max exponent are required", file=sys.stderr)
        return EXIT_INVALID
    if p < 3 or not W._is_prime(p):
        print("error: p must be an odd prime", file=sys.stderr)
        return EXIT_INVALID
    census = order_census(p, m)
    groups = census["collisions"]
    if args.target is not None:
        groups = {args.target: census["by_exponent"].get(args.target, [])}
    if args.json:
        out = {
            "p": p, "max_exponent": m,
            "groups": [
                {"exponent": e, "pairs": [{"q_exponent": b, "r_exponent": a} for b, a in pairs]}
                for e, pairs in sorted(groups.items())
            ],
        }
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for e, pairs in sorted(groups.items()):
            print("|G/Z| = %d^%d: %s" % (p, e, ", ".join(_pair_label(p, b, a) for b, a in pairs)))
    return EXIT_PASS


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "oracle":
        return cmd_verify(args, oracle=True)
    if args.command == "trace-table":
        return cmd_trace_table(args)
    return cmd_order_census(args)


if __name__ == "__main__":
    sys.exit(main())
