"""Acceptance suite: eight criteria, each printing one PASS/FAIL line.

Values are exact integers; the runtime limits are the stated ones.
"""

import json
import subprocess
import sys
import time

import numpy as np

from conftest import record_acceptance
from regdefect import theorems as th
from regdefect.defect import CERT_ZERO, compute_rows, stable_defect
from regdefect.examples import (
    example_fat_socle,
    example_increasing,
    example_mixed,
    example_slow_decreasing,
)
from regdefect.explore import ExplorerConfig, explore, random_ideal, summarize
from regdefect.monomial import MonomialIdeal, PowerCache
from regdefect.parser import format_expression, format_ideal, parse_expression, parse_ideal
from regdefect.regularity import regularity, socle_monomials, witness_set


def verdict(number, ok, detail):
    record_acceptance(f"criterion {number}: {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


# 1 ------------------------------------------------------------------------


def test_criterion_1_fat_socle():
    def work():
        spec = example_fat_socle()
        I, J = spec.ideal, spec.extras["J"]
        cache = PowerCache(I)
        rows = compute_rows(I, 3, cache)
        return regularity(I), regularity(J), regularity(cache[2]), [r.e for r in rows]

    (reg_I, reg_J, reg_I2, e), secs = timed(work)
    ok = (reg_I, reg_J, reg_I2, e) == (10, 19, 19, [2, 3, 3]) and secs < 30
    detail = f"reg I={reg_I}, reg J={reg_J}, reg I^2={reg_I2}, e={tuple(e)}, {secs:.2f}s"
    assert verdict(1, ok, detail), detail


# 2 ------------------------------------------------------------------------


def closed_form(n, d, b, length):
    m0 = (n * (d - 1) + 1) // (d + b)
    delta = max(n * (d - 1) + 1 - m0 * (d + b) - d, 0)
    seq = [m * b if m <= m0 else m0 * b + delta for m in range(1, length + 1)]
    return seq, m0 * b + delta


def test_criterion_2_increasing():
    parts, ok = [], True
    for n, d, b in [(3, 3, 1), (4, 5, 1), (4, 4, 2)]:
        spec, secs = timed(example_increasing, n, d, b)
        rep, s2 = timed(stable_defect, spec.ideal)
        secs += s2
        length = max(len(rep.e), spec.parameters["m0"] + 3)
        rows, s3 = timed(compute_rows, spec.ideal, length)
        secs += s3
        want, stable = closed_form(n, d, b, length)
        got = [r.e for r in rows]
        case_ok = got == want and rep.certified and rep.e_infinity == stable and secs < 60
        ok &= case_ok
        parts.append(f"({n},{d},{b}) e={tuple(got)} e_inf={rep.e_infinity} "
                     f"{'ok' if case_ok else 'MISMATCH want ' + str(tuple(want))} {secs:.2f}s")
    detail = "; ".join(parts)
    assert verdict(2, ok, detail), detail


# 3 ------------------------------------------------------------------------

# terminal value computed once by this implementation and frozen here
SLOW_DECREASING_TERMINAL = 0


def test_criterion_3_slow_decreasing():
    parts, ok = [], True
    for n, d in [(3, 4), (3, 5), (4, 4)]:
        top = (n - 1) * (d - 2)
        spec = example_slow_decreasing(n, d)
        (rep, rows), secs = timed(lambda: (stable_defect(spec.ideal),
                                           compute_rows(spec.ideal, top + 2)))
        e = [r.e for r in rows]
        first = e[0] == top
        steps = all(e[m] - e[m - 1] == -1 for m in range(1, top)) and all(
            e[m] == e[m - 1] for m in range(top, len(e)))
        terminal = e[-1] == SLOW_DECREASING_TERMINAL and rep.e_infinity == SLOW_DECREASING_TERMINAL
        case_ok = first and steps and terminal and secs < 120
        ok &= case_ok
        parts.append(f"({n},{d}) e={tuple(e)} e1==(n-1)(d-2)={top}:{first} "
                     f"unit-steps:{steps} terminal={e[-1]}:{terminal} {secs:.2f}s")
    detail = "; ".join(parts)
    assert verdict(3, ok, detail), detail


# 4 ------------------------------------------------------------------------

MIXED_GOLDEN = {
    (4, 5, 1): (1, 2, 2, 1, 1, 1, 1, 1, 0, 0),
    (4, 5, 2): (2, 3, 2, 2, 2, 2, 2, 1, 0, 0),
}
# stress case: prefix and the vanishing defect at m = 12
STRESS = (4, 6, 2)
STRESS_BUDGET_SECONDS = 15 * 60


def test_criterion_4_mixed():
    parts, ok = [], True
    for (n, d, b), want in MIXED_GOLDEN.items():
        rows, secs = timed(compute_rows, example_mixed(n, d, b).ideal, len(want))
        got = tuple(r.e for r in rows)
        ok &= got == want
        parts.append(f"({n},{d},{b}) e={got} {'ok' if got == want else 'MISMATCH'} {secs:.2f}s")
    rep, secs = timed(stable_defect, example_mixed(*STRESS).ideal, max_m=12)
    prefix = rep.e[:4]
    e12 = rep.e[11] if len(rep.e) >= 12 else None
    case_ok = (prefix == (2, 4, 4, 3) and e12 == 0 and rep.certificate == CERT_ZERO
               and rep.certified_stable_from == 12 and secs < STRESS_BUDGET_SECONDS)
    ok &= case_ok
    parts.append(f"{STRESS} prefix={prefix} e12={e12} certificate={rep.certificate} "
                 f"{secs:.2f}s of {STRESS_BUDGET_SECONDS}s")
    detail = "; ".join(parts)
    assert verdict(4, ok, detail), detail


# 5 ------------------------------------------------------------------------


def test_criterion_5_oracle_equivalence():
    cfg = ExplorerConfig(n_range=(1, 4), pure_range=(1, 6), extra_range=(0, 8))
    samples, bad = 150, []
    for i in range(samples):
        I = random_ideal(np.random.default_rng([505, i]), cfg)
        a, b = MonomialIdeal(I.dim, I.gens), MonomialIdeal(I.dim, I.gens)
        same = (regularity(a, "corner") == regularity(b, "box")
                and socle_monomials(a, "corner").monomials == socle_monomials(b, "box").monomials
                and witness_set(a, "corner").monomials == witness_set(b, "box").monomials)
        if not same:
            bad.append(I.gens.tolist())
    detail = f"{samples} ideals (n<=4, pure powers<=6), {len(bad)} discrepancies"
    assert verdict(5, not bad, detail), bad[:3]


# 6 ------------------------------------------------------------------------

CAMPAIGNS = [
    ExplorerConfig(seed=2024, samples=300),
    # extras of larger total degree give longer, non-constant sequences
    ExplorerConfig(seed=2025, samples=300, pure_range=(2, 5), extra_degree=(4, 12)),
    ExplorerConfig(seed=2026, samples=200, pure_range=(2, 5), shifted_fraction=0.5),
]


def test_criterion_6_property_campaign():
    records = []
    t0 = time.perf_counter()
    for cfg in CAMPAIGNS:
        records += list(explore(cfg))
    secs = time.perf_counter() - t0
    s = summarize(records)
    assert all(cfg.n_range[1] <= 4 for cfg in CAMPAIGNS)
    ok = s.samples >= 500 and s.violations == 0
    varied = sum(len(set(r["e"])) > 1 for r in records)
    detail = (f"{s.samples} samples ({varied} with non-constant e), {s.violations} violations, "
              f"{len(s.logged)} logged strict/refined cases, {s.certified} certified, {s.budget_exhausted} budget "
              f"stops, first-difference flags {s.difference_flagged[:10]}, {secs:.1f}s")
    assert verdict(6, ok, detail), json.dumps(s.counterexamples[:2])


# 7 ------------------------------------------------------------------------


def test_criterion_7_binomial_table():
    def table():
        return {(n, d): th.check_binomial_inequality(n, d).quantities["holds"]
                for n in range(2, 9) for d in range(2, 11)}

    holds, secs = timed(table)
    ok = all(v == (n >= 4) for (n, d), v in holds.items()) and secs < 1
    detail = (f"true on {sum(holds.values())} of {len(holds)} cells, exactly n>=4: "
              f"{all(v == (n >= 4) for (n, _), v in holds.items())}, {secs * 1000:.1f}ms")
    assert verdict(7, ok, detail), detail


# 8 ------------------------------------------------------------------------

ROUND_TRIP = [
    (2, "x1^2 + x1*x2 + x2^3"),
    (3, "MP(3,3,3) + M(4)"),
    (2, "(x1^2 + x2^2)^2"),
    (3, "x1^2*x3 * (x1 + x2 + x3)^3 + M(6)"),
    (4, "(MP(2,3,4,5) + x1*x2*x3*x4)^2 * M(1)"),
]

EXIT_MATRIX = [
    (["defect", "--vars", "2", "--ideal", "x1^2 + x2^2", "--m-max", "3"], 0),
    (["verify", "--vars", "2", "--ideal", "x1^2 + x2^2", "--checker",
      "prop_mbarbd_strict"], 1),
    (["reg", "--vars", "2", "--ideal", "x1^2 + x3"], 2),
    (["stable", "--vars", "3", "--ideal", "MP(3,3,3) + M(4)", "--budget", "5"], 3),
]


def _cli(args):
    return subprocess.run([sys.executable, "-m", "regdefect.cli", *args],
                          capture_output=True, text=True)


def test_criterion_8_cli_contract():
    problems = []
    for n, text in ROUND_TRIP:
        node = parse_expression(text, n)
        ideal = parse_ideal(text, n)
        if parse_ideal(format_expression(node), n) != ideal:
            problems.append(f"expression round trip {text!r}")
        if parse_ideal(format_ideal(ideal), n) != ideal:
            problems.append(f"ideal round trip {text!r}")
    for args, code in EXIT_MATRIX:
        got = _cli(args).returncode
        if got != code:
            problems.append(f"exit {got} != {code} for {' '.join(args)}")
    explore_args = ["explore", "--seed", "77", "--samples", "25", "--format", "jsonl"]
    first, second = _cli(explore_args), _cli(explore_args)
    if not first.stdout or first.stdout.encode() != second.stdout.encode():
        problems.append("explore output differs between identical runs")
    detail = (f"{len(ROUND_TRIP)} round-trip fixtures, {len(EXIT_MATRIX)} exit codes, "
              f"byte-identical jsonl: {first.stdout == second.stdout}; problems={problems}")
    assert verdict(8, not problems, detail), detail
