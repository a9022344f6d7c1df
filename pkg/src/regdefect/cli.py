"""``regdefect`` command-line interface.

Exit codes: 0 success, 1 a checked conclusion failed or an example did not
match its prediction, 2 usage or input error, 3 a work budget ran out.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Iterable, TextIO

from . import theorems as th
from .defect import (
    DEFAULT_MAX_GENERATORS,
    asymptotic_degree,
    pure_power_profile,
    stable_defect,
)
from .examples import FAMILIES
from .explore import ALL_CHECKERS, LOGGED_ONLY, ExplorerConfig, explore, summarize
from .monomial import MonomialIdeal, PowerCache, truncate_below
from .parser import ParseError, parse_ideal
from .regularity import STRATEGIES, regularity, socle_monomials, witness_set

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _cell(v: Any) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class Emitter:
    """Writes records as jsonl lines, or as aligned tables grouped by record type.

    Both renderings carry exactly the same fields, so the numeric content of a
    run does not depend on the format chosen.
    """

    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self._pending: list[dict[str, Any]] = []

    def emit(self, record: dict[str, Any]) -> None:
        record = th.jsonable(record)
        if self.fmt == "jsonl":
            self.out.write(json.dumps(record, separators=(",", ":")) + "\n")
            self.out.flush()
            return
        if self._pending and self._pending[0]["record"] != record["record"]:
            self.flush()
        self._pending.append(record)

    def flush(self) -> None:
        if not self._pending:
            return
        recs, self._pending = self._pending, []
        cols: list[str] = []
        for r in recs:
            cols += [k for k in r if k != "record" and k not in cols]
        rows = [[_cell(r.get(c)) for c in cols] for r in recs]
        widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
        self.out.write(f"# {recs[0]['record']}\n")
        self.out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for row in rows:
            self.out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")
        self.out.write("\n")
        self.out.flush()


# ---------------------------------------------------------------------------
# argument helpers


def int_range(text: str) -> tuple[int, int]:
    """``a:b`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a:b, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _ideal(args, which: str = "ideal") -> MonomialIdeal:
    text = getattr(args, which)
    if text is None:
        raise UsageError(f"--{which} is required")
    if args.vars is None:
        raise UsageError("--vars is required with --ideal")
    return parse_ideal(text, args.vars)


def _add_ideal_flags(p, second=False):
    p.add_argument("--vars", type=positive_int, help="number of variables x1..xn")
    p.add_argument("--ideal", help='ideal expression, e.g. "x1^2 + x1*x2 + x2^3"')
    if second:
        p.add_argument("--ideal2", help="second ideal J (contained in I) for two-ideal checks")


def _add_common(p):
    p.add_argument("--format", choices=("table", "jsonl"), default="table")
    p.add_argument("--strategy", choices=STRATEGIES, default="corner")
    p.add_argument("--budget", type=positive_int, default=DEFAULT_MAX_GENERATORS,
                   help="largest number of generators allowed for any power")


def _power(cache: PowerCache, m: int, budget: int) -> MonomialIdeal:
    P = cache[m]
    if len(P) > budget:
        raise BudgetExceeded(f"I^{m} has {len(P)} generators, above the budget {budget}")
    return P


# ---------------------------------------------------------------------------
# subcommands


def cmd_reg(args, em: Emitter) -> int:
    I = _ideal(args)
    P = _power(PowerCache(I), args.m, args.budget)
    em.emit({"record": "regularity", "m": args.m, "generators": len(P),
             "reg": regularity(P, args.strategy), "strategy": args.strategy})
    return EXIT_OK


def cmd_socle(args, em: Emitter) -> int:
    I = _ideal(args)
    P = _power(PowerCache(I), args.m, args.budget)
    for u in socle_monomials(P, args.strategy).monomials:
        em.emit({"record": "socle", "m": args.m, "monomial": list(u), "degree": u.degree})
    return EXIT_OK


def cmd_witness(args, em: Emitter) -> int:
    I = _ideal(args)
    P = _power(PowerCache(I), args.m, args.budget)
    for u in witness_set(P, args.strategy).monomials:
        em.emit({"record": "witness", "m": args.m, "monomial": list(u), "degree": u.degree})
    return EXIT_OK


def _profile_record(I):
    prof = pure_power_profile(I)
    return {"record": "profile", "n": I.dim, "d": prof.d, "l": prof.l, "k": prof.k,
            **prof.relabeling()}


def cmd_defect(args, em: Emitter) -> int:
    I = _ideal(args)
    d = asymptotic_degree(I)
    cache = PowerCache(I)
    em.emit(_profile_record(I))
    for m in range(1, args.m_max + 1):
        r = regularity(_power(cache, m, args.budget), args.strategy)
        em.emit({"record": "defect", "m": m, "reg": r, "e": r - d * m})
    return EXIT_OK


def cmd_stable(args, em: Emitter) -> int:
    I = _ideal(args)
    em.emit(_profile_record(I))
    rep = stable_defect(I, max_m=args.m_max, max_generators=args.budget, strategy=args.strategy)
    for r in rep.rows:
        em.emit({"record": "defect", "m": r.m, "reg": r.reg, "e": r.e})
    em.emit({"record": "stable", "certificate": rep.certificate,
             "certified_from": rep.certified_stable_from, "e_infinity": rep.e_infinity,
             "threshold": rep.threshold, "bound": rep.bound, "stop_reason": rep.stop_reason})
    return EXIT_OK if rep.certified else EXIT_BUDGET


VERIFY_CHECKERS = tuple(sorted(set(th.CHECKERS) - {"binomial_inequality"})) + (
    "thm_bd_refined", "prop_mbarbd_strict")


def _verify_reports(name, I, J, ms, m_max, cache, budget):
    """Reports of one named checker over the requested powers."""
    if name in ("first_difference",):
        for m in ms:
            for mode in (th.WITNESS_MODE, th.REGULARITY_MODE):
                yield th.check_first_difference(I, J, m, mode, cache)
    elif name in ("thm_bd", "thm_bd_refined"):
        for m in ms:
            yield th.check_thm_bd(I, J, m, name == "thm_bd_refined", cache)
    elif name == "cor_dec":
        yield th.check_cor_dec(I, m_max, cache)
    elif name == "strict_increase":
        yield th.check_strict_increase(I, m_max, cache)
    elif name == "nonnegative_defect":
        yield th.check_nonnegative_defect(I, m_max, cache)
    elif name == "socle_descent":
        for m in ms:
            yield th.check_socle_descent(I, m, cache)
    elif name == "witness_lemma":
        yield th.check_witness_lemma(I, J)
        yield th.check_witness_lemma(J, I)
    elif name in ("prop_mbarbd", "prop_mbarbd_strict"):
        for m in [1] + ms:
            yield th.check_prop_mbarbd(I, m, name == "prop_mbarbd_strict", cache)
    elif name == "thm_inc":
        for m in [1] + [m for m in ms if m < m_max]:
            yield th.check_thm_inc(I, m, cache)
    elif name == "thm_simplebd":
        yield th.check_thm_simplebd(I, cache=cache)
    elif name == "einf_zero":
        yield th.check_einf_zero(I, max_m=None, cache=cache, max_generators=budget)
    else:
        raise UsageError(f"unknown checker {name!r}")


def cmd_verify(args, em: Emitter) -> int:
    I = _ideal(args)
    d = asymptotic_degree(I)
    # without an explicit J the degree-<=d part of I is used
    J = _ideal(args, "ideal2") if args.ideal2 else truncate_below(I, d)
    if J.dim != I.dim:
        raise UsageError("--ideal2 must use the same number of variables")
    if args.m is not None and args.m < 2:
        raise UsageError("--m must be at least 2 for verify")
    m_max = max(args.m_max, args.m or 2)
    ms = [args.m] if args.m is not None else list(range(2, m_max + 1))
    cache = PowerCache(I)
    _power(cache, m_max, args.budget)
    names = VERIFY_CHECKERS if args.checker == "all" else (args.checker,)
    failed = False
    for name in names:
        logged = args.checker == "all" and name in LOGGED_ONLY
        for rep in _verify_reports(name, I, J, ms, m_max, cache, args.budget):
            rec = rep.to_record()
            rec["name"] = name
            rec["logged_only"] = logged
            em.emit(rec)
            failed |= rep.violated and not logged
    return EXIT_VIOLATION if failed else EXIT_OK


def _example_spec(args):
    fam = args.family
    if fam == "fat-socle":
        return FAMILIES[fam]()
    need = {"increasing": ("n", "d", "b"), "slow-decreasing": ("n", "d"),
            "mixed": ("n", "d", "b")}[fam]
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError(f"{fam} needs " + ", ".join(f"--{k}" for k in missing))
    kw = {k: getattr(args, k) for k in need}
    if fam == "slow-decreasing":
        kw["raised"] = args.raised
    return FAMILIES[fam](**kw)


def cmd_example(args, em: Emitter) -> int:
    spec = _example_spec(args)
    I = spec.ideal
    m_max = args.m_max or spec.comparable_range()
    start = time.perf_counter()
    rep = stable_defect(I, max_m=m_max, max_generators=args.budget, strategy=args.strategy)
    head = {"record": "example", "name": spec.name, "parameters": spec.parameters,
            "n": I.dim, "generators": len(I), "d": rep.d}
    for key, val in spec.extras.items():
        if isinstance(val, MonomialIdeal):
            head[f"reg_{key}"] = regularity(val, args.strategy)
        else:
            head[key] = val
    em.emit(head)
    observed = {}
    for m in range(1, m_max + 1):
        try:
            observed[m] = rep.e_at(m)
        except KeyError:
            break
    regs = {r.m: r.reg for r in rep.rows}
    mismatch = False
    for m, e in observed.items():
        pred = spec.predicted_value(m)
        ok = pred is None or pred == e
        mismatch |= not ok
        em.emit({"record": "defect", "m": m, "reg": regs.get(m), "e": e, "predicted": pred,
                 "match": ok, "from_certificate": m not in regs})
    readings = [("stated", spec.predicted, spec.stable_value)]
    readings += [(f"alternative-{i}", p, s) for i, (p, s) in enumerate(spec.alternatives, 1)]
    for label, prefix, stable in readings:
        comparable = [m for m in observed if m <= len(prefix)]
        agrees = all(prefix[m - 1] == observed[m] for m in comparable)
        if stable is not None and rep.certified:
            agrees = agrees and rep.e_infinity == stable
        em.emit({"record": "reading", "reading": label, "prefix": list(prefix),
                 "stable_value": stable, "matches": agrees})
    em.emit({"record": "stable", "certificate": rep.certificate,
             "certified_from": rep.certified_stable_from, "e_infinity": rep.e_infinity,
             "stop_reason": rep.stop_reason,
             "seconds": round(time.perf_counter() - start, 3) if args.timing else None})
    if mismatch:
        return EXIT_VIOLATION
    if len(observed) < m_max:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_inequality(args, em: Emitter) -> int:
    failed = False
    for n in range(args.n[0], args.n[1] + 1):
        for d in range(args.d[0], args.d[1] + 1):
            rep = th.check_binomial_inequality(n, d)
            q = rep.quantities
            em.emit({"record": "inequality", "n": n, "d": d, "lhs": q["lhs"], "rhs": q["rhs"],
                     "holds": q["holds"], "predicted": q["predicted"],
                     "status": rep.status})
            failed |= rep.violated
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_explore(args, em: Emitter) -> int:
    checkers = ALL_CHECKERS if args.checkers == "all" else tuple(args.checkers.split(","))
    try:
        config = ExplorerConfig(
            seed=args.seed, samples=args.samples, n_range=args.n, pure_range=args.pure,
            extra_range=args.extra, extra_degree=args.extra_degree,
            shifted_fraction=args.shifted_fraction, m_max=args.m_max,
            stable_budget=args.stable_budget, max_generators=args.budget,
            checkers=checkers, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc))
    records = []
    for rec in explore(config):
        records.append(rec)
        if args.samples_out:
            em.emit(rec)
    summary = summarize(records).to_record()
    summary["seed"] = args.seed
    em.emit(summary)
    return EXIT_VIOLATION if summary["violations"] else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="regdefect",
        description="Regularity and regularity defect of powers of m-primary monomial ideals.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in (("reg", "regularity of I^m"), ("socle", "socle monomials of S/I^m"),
                           ("witness", "top-degree socle monomials of S/I^m")):
        p = sub.add_parser(name, help=helptext)
        _add_ideal_flags(p)
        p.add_argument("--m", type=positive_int, default=1)
        _add_common(p)

    p = sub.add_parser("defect", help="e_m = reg I^m - d m for m = 1..m-max")
    _add_ideal_flags(p)
    p.add_argument("--m-max", type=positive_int, default=5)
    _add_common(p)

    p = sub.add_parser("stable", help="extend the defect sequence until e_infinity is certified")
    _add_ideal_flags(p)
    p.add_argument("--m-max", type=positive_int, default=None,
                   help="largest power to try (default: the stabilization bound + 1)")
    _add_common(p)

    p = sub.add_parser("verify", help="run one checker, or all, on an ideal")
    _add_ideal_flags(p, second=True)
    p.add_argument("--checker", default="all", choices=("all",) + VERIFY_CHECKERS)
    p.add_argument("--m", type=int, default=None, help="single power (default: 2..m-max)")
    p.add_argument("--m-max", type=positive_int, default=4)
    _add_common(p)

    p = sub.add_parser("example", help="compute a worked example family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--raised", action="store_true", help="slow-decreasing with z powers d")
    p.add_argument("--m-max", type=positive_int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in the output")
    _add_common(p)

    p = sub.add_parser("inequality", help="tabulate the binomial inequality over a grid")
    p.add_argument("--n", type=int_range, default=(2, 8))
    p.add_argument("--d", type=int_range, default=(2, 10))
    p.add_argument("--format", choices=("table", "jsonl"), default="table")

    p = sub.add_parser("explore", help="seeded random counterexample search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=positive_int, default=100)
    p.add_argument("--n", type=int_range, default=(2, 4))
    p.add_argument("--pure", type=int_range, default=(1, 5), help="pure-power exponent range")
    p.add_argument("--extra", type=int_range, default=(0, 6), help="extra generator count range")
    p.add_argument("--extra-degree", type=int_range, default=None,
                   help="total-degree range for extra generators")
    p.add_argument("--shifted-fraction", type=float, default=0.0,
                   help="share of extra candidates of the form x_i^(p_i-1)*x_j")
    p.add_argument("--m-max", type=positive_int, default=5)
    p.add_argument("--stable-budget", type=positive_int, default=8)
    p.add_argument("--budget", type=positive_int, default=200_000,
                   help="largest number of generators allowed for any power")
    p.add_argument("--checkers", default="all", help="comma-separated checker names")
    p.add_argument("--workers", type=positive_int, default=1)
    p.add_argument("--summary-only", dest="samples_out", action="store_false",
                   help="emit only the campaign summary")
    p.add_argument("--format", choices=("table", "jsonl"), default="jsonl")
    return ap


COMMANDS = {
    "reg": cmd_reg,
    "socle": cmd_socle,
    "witness": cmd_witness,
    "defect": cmd_defect,
    "stable": cmd_stable,
    "verify": cmd_verify,
    "example": cmd_example,
    "inequality": cmd_inequality,
    "explore": cmd_explore,
}


def main(argv: Iterable[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        # argparse has already printed its message to stderr
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    em = Emitter(args.format, stdout)
    try:
        code = COMMANDS[args.command](args, em)
    except (ParseError, UsageError, ValueError) as exc:
        # NotArtinian, DimensionMismatch and containment failures are input errors
        em.flush()
        print(f"regdefect: error: {exc}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        em.flush()
        print(f"regdefect: budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET
    em.flush()
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
