"""Mechanical checks of the regularity-defect results on concrete ideals.

Every checker returns a :class:`CheckReport`.  The conclusion is only
evaluated when the hypothesis holds, so a report can never record a
violation of a vacuously true statement.  Rational thresholds are
compared exactly, and each comparison is repeated with cross-multiplied
integers as a guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .defect import (
    INF,
    abar2_holds,
    asymptotic_degree,
    compute_rows,
    generator_degree_stats,
    monotone_threshold,
    pure_power_profile,
    reduce_monomial,
    simple_bound,
    stable_defect,
)
from .monomial import Monomial, MonomialIdeal, PowerCache, is_m_primary, truncate_below
from .regularity import in_socle, regularity, socle_any, socle_monomials, witness_set

__all__ = [
    "CHECKERS",
    "CheckReport",
    "check_binomial_inequality",
    "check_cor_dec",
    "check_einf_zero",
    "check_first_difference",
    "check_nonnegative_defect",
    "check_prop_mbarbd",
    "check_socle_descent",
    "check_strict_increase",
    "check_thm_bd",
    "check_thm_inc",
    "check_thm_simplebd",
    "check_witness_lemma",
]

WITNESS_MODE = "witness-hypothesis"
REGULARITY_MODE = "regularity-hypothesis"

# powers computed directly by check_thm_simplebd before it gives up
SIMPLEBD_BUDGET = 12


@dataclass
class CheckReport:
    name: str
    inputs: dict[str, Any]
    hypothesis_holds: bool
    conclusion_holds: bool | None
    quantities: dict[str, Any] = field(default_factory=dict)
    violation: dict[str, Any] | None = None
    # "skipped" / "inconclusive" / "inapplicable" when the check could not run
    note: str | None = None

    @property
    def status(self) -> str:
        if self.violation is not None:
            return "violation"
        if self.hypothesis_holds:
            return "pass"
        return self.note or "vacuous"

    @property
    def violated(self) -> bool:
        return self.violation is not None

    def to_record(self) -> dict[str, Any]:
        return {
            "record": "check",
            "name": self.name,
            "status": self.status,
            "inputs": jsonable(self.inputs),
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": self.conclusion_holds,
            "quantities": jsonable(self.quantities),
            "violation": jsonable(self.violation),
        }


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, MonomialIdeal):
        return [list(map(int, r)) for r in obj.gens.tolist()]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def _finish(name, inputs, hyp, concl, quantities, payload=None, note=None) -> CheckReport:
    if not hyp:
        return CheckReport(name, inputs, False, None, quantities, None, note)
    violation = None
    if not concl:
        violation = payload or {}
    return CheckReport(name, inputs, True, bool(concl), quantities, violation)


def _gt(m: int, t: Fraction) -> bool:
    """m > t, checked twice: as Fractions and cross-multiplied."""
    fast = m > t
    slow = m * t.denominator > t.numerator
    assert fast == slow
    return fast


def _cache(I, cache):
    if cache is None or cache.base != I:
        return PowerCache(I)
    return cache


def _require_pair(I, J):
    if not (is_m_primary(I) and is_m_primary(J)):
        raise ValueError("both ideals must be m-primary")
    if not J.issubset(I):
        raise ValueError("J is not contained in I")


def _ideal_input(I):
    return {"dim": I.dim, "gens": len(I)}


def _mons(ms):
    return [list(u) for u in ms]


# ---------------------------------------------------------------------------


def check_first_difference(I: MonomialIdeal, J: MonomialIdeal, m: int,
                           mode: str = WITNESS_MODE, cache: PowerCache | None = None) -> CheckReport:
    """If J meets w(I^m) (or reg I^m > reg J), then e_m - e_{m-1} <= c - d."""
    if mode not in (WITNESS_MODE, REGULARITY_MODE):
        raise ValueError(f"unknown mode {mode!r}")
    if m < 2:
        raise ValueError("m must be at least 2")
    _require_pair(I, J)
    cache = _cache(I, cache)
    d = asymptotic_degree(I)
    c = J.max_degree
    reg_m, reg_prev = regularity(cache[m]), regularity(cache[m - 1])
    e_m, e_prev = reg_m - d * m, reg_prev - d * (m - 1)
    w = witness_set(cache[m])
    hits = [u for u in w.monomials if u in J]
    reg_J = regularity(J)
    q = {"d": d, "c": c, "reg_I^m": reg_m, "reg_I^(m-1)": reg_prev, "e_m": e_m,
         "e_(m-1)": e_prev, "reg_J": reg_J, "witnesses": len(w.monomials),
         "witnesses_in_J": len(hits), "bound": c - d}
    if mode == WITNESS_MODE:
        hyp = bool(hits)
    else:
        hyp = reg_m > reg_J
        # the regularity hypothesis forces every witness of I^m into J
        q["all_witnesses_in_J"] = len(hits) == len(w.monomials)
    concl = e_m - e_prev <= c - d
    if mode == REGULARITY_MODE and hyp:
        concl = concl and q["all_witnesses_in_J"]
    return _finish("first_difference", {"I": _ideal_input(I), "J": _ideal_input(J), "m": m,
                                        "mode": mode},
                   hyp, concl, q, {"m": m, "difference": e_m - e_prev, "bound": c - d,
                                   "witness_in_J": _mons(hits[:3])})


def thm_bd_threshold(reg_J: int, d: int, d_prime, c_prime: int) -> tuple[Fraction, Fraction, Fraction]:
    t1 = Fraction(reg_J, d)
    if d_prime == INF:
        t2 = Fraction(1)
    else:
        t2 = Fraction(reg_J, d_prime) + max(1 - Fraction(c_prime, d_prime), Fraction(0))
    return t1, t2, min(t1, t2)


def check_thm_bd(I: MonomialIdeal, J: MonomialIdeal, m: int, refined: bool = False,
                 cache: PowerCache | None = None) -> CheckReport:
    """Threshold form, or the witness-containment form when ``refined``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    _require_pair(I, J)
    cache = _cache(I, cache)
    st = generator_degree_stats(I, J)
    d, c, c_prime, d_prime = st.d, st.c, st.c_prime, st.d_prime
    reg_J = regularity(J)
    reg_m, reg_prev = regularity(cache[m]), regularity(cache[m - 1])
    e_m, e_prev = reg_m - d * m, reg_prev - d * (m - 1)
    t1, t2, t = thm_bd_threshold(reg_J, d, d_prime, c_prime)
    q = {"d": d, "c": c, "c'": c_prime, "d'": d_prime, "reg_J": reg_J,
         "threshold_reg_J/d": t1, "threshold_d'": t2, "threshold": t,
         "reg_I^m": reg_m, "e_m": e_m, "e_(m-1)": e_prev, "bound": c - d,
         "reg_I^m>reg_J": reg_m > reg_J}
    inputs = {"I": _ideal_input(I), "J": _ideal_input(J), "m": m, "refined": refined}
    concl = e_m - e_prev <= c - d
    payload = {"m": m, "difference": e_m - e_prev, "bound": c - d}
    if not refined:
        hyp = _gt(m, t)
        # the proof passes through reg I^m > reg J
        return _finish("thm_bd", inputs, hyp, concl and reg_m > reg_J, q, payload)
    if d_prime == INF:
        return _finish("thm_bd", inputs, False, None, q, note="inapplicable")
    outside = [g for g in I.generators() if g not in J]
    I_prime = MonomialIdeal(I.dim, outside)
    pc = PowerCache(I_prime)
    K_top = pc[m]
    K_mix = pc[m - 1] * J
    mix_socle = socle_any(K_mix)
    mix_top = mix_socle[-1].degree if mix_socle else None
    mix_witness = {u for u in mix_socle if u.degree == mix_top}
    wJ = witness_set(J).monomials
    escaping = [u for u in wJ if not in_socle(K_top, u) and u not in mix_witness]
    q.update({"I'_gens": len(I_prime), "w(J)": len(wJ), "w(J)_escaping": len(escaping),
              "w(I'^(m-1)J)_degree": mix_top, "d'm>reg_J": d_prime * m > reg_J})
    payload["escaping"] = _mons(escaping[:3])
    return _finish("thm_bd_refined", inputs, bool(escaping), concl, q, payload)


def check_cor_dec(I: MonomialIdeal, m_max: int, cache: PowerCache | None = None) -> CheckReport:
    """e_{m+1} <= e_m + b always, and e_{m+1} <= e_m past reg(I_{<=d})/(d+b') and for m >= n."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    cache = _cache(I, cache)
    st = generator_degree_stats(I)
    n = I.dim
    low = truncate_below(I, st.d)
    T = monotone_threshold(I)
    rows = compute_rows(I, m_max, cache)
    e = {r.m: r.e for r in rows}
    failures = []
    checked_2 = []
    for m in range(1, m_max):
        if e[m + 1] > e[m] + st.b:
            failures.append({"part": "1", "m": m, "e_m": e[m], "e_m+1": e[m + 1], "b": st.b})
        if _gt(m, T):
            checked_2.append(m)
            if e[m + 1] > e[m]:
                failures.append({"part": "2", "m": m, "e_m": e[m], "e_m+1": e[m + 1]})
        if m >= n and e[m + 1] > e[m]:
            failures.append({"part": "2-dim", "m": m, "e_m": e[m], "e_m+1": e[m + 1]})
    below_n = T < n
    if not below_n:
        failures.append({"part": "threshold<n", "threshold": T, "n": n})
    q = {"d": st.d, "b": st.b, "b'": st.b_prime, "reg_I<=d": regularity(low),
         "threshold": T, "e": [r.e for r in rows], "monotone_checked_m": checked_2,
         "threshold<n": below_n}
    return _finish("cor_dec", {"I": _ideal_input(I), "m_max": m_max}, True, not failures, q,
                   {"failures": failures})


def check_strict_increase(I: MonomialIdeal, m_max: int, cache: PowerCache | None = None) -> CheckReport:
    """reg I^{m+1} > reg I^m, with steps bounded by d + b."""
    cache = _cache(I, cache)
    st = generator_degree_stats(I)
    rows = compute_rows(I, m_max, cache)
    regs = [r.reg for r in rows]
    steps = [b - a for a, b in zip(regs, regs[1:])]
    bad = [i + 1 for i, s in enumerate(steps) if not 1 <= s <= st.d + st.b]
    q = {"reg": regs, "steps": steps, "max_step": st.d + st.b}
    return _finish("strict_increase", {"I": _ideal_input(I), "m_max": m_max}, m_max >= 2,
                   not bad, q, {"m": bad, "reg": regs})


def check_nonnegative_defect(I: MonomialIdeal, m_max: int, cache: PowerCache | None = None) -> CheckReport:
    cache = _cache(I, cache)
    profile = pure_power_profile(I)
    rows = compute_rows(I, m_max, cache)
    bad = [r.m for r in rows if r.e < 0]
    # x^{dm-1} is outside I^m, which is where e_m >= 0 comes from
    x = profile.x_var
    outside = []
    for r in rows:
        u = [0] * I.dim
        u[x] = profile.d * r.m - 1
        if u in cache[r.m]:
            outside.append(r.m)
    q = {"e": [r.e for r in rows], "pure_power_witness_fails": outside}
    return _finish("nonnegative_defect", {"I": _ideal_input(I), "m_max": m_max}, True,
                   not bad and not outside, q, {"m": bad + outside})


def check_socle_descent(I: MonomialIdeal, m: int, cache: PowerCache | None = None) -> CheckReport:
    """Socle monomials of I^m lie in I^{m-1}; the socles of I^m and I^{m-1} are disjoint."""
    if m < 2:
        raise ValueError("m must be at least 2")
    cache = _cache(I, cache)
    soc = socle_monomials(cache[m]).monomials
    lower = cache[m - 1]
    escaped = [u for u in soc if u not in lower]
    prev = set(socle_monomials(lower).monomials)
    shared = [u for u in soc if u in prev]
    q = {"socle_size": len(soc), "not_in_I^(m-1)": len(escaped), "shared_with_m-1": len(shared)}
    return _finish("socle_descent", {"I": _ideal_input(I), "m": m}, True,
                   not escaped and not shared, q,
                   {"escaped": _mons(escaped[:3]), "shared": _mons(shared[:3])})


def check_witness_lemma(I: MonomialIdeal, J: MonomialIdeal) -> CheckReport:
    """A witness of I outside J and outside w(J) forces reg I < reg J."""
    if not (is_m_primary(I) and is_m_primary(J)):
        raise ValueError("both ideals must be m-primary")
    wI = witness_set(I).monomials
    wJ = set(witness_set(J).monomials)
    free = [u for u in wI if u not in J and u not in wJ]
    rI, rJ = regularity(I), regularity(J)
    q = {"reg_I": rI, "reg_J": rJ, "free_witnesses": len(free)}
    return _finish("witness_lemma", {"I": _ideal_input(I), "J": _ideal_input(J)}, bool(free),
                   rI < rJ, q, {"witness": _mons(free[:1]), "reg_I": rI, "reg_J": rJ})


MBARBD_REQUIRED = ("1", "2-lower", "2-upper", "2-chain", "3", "3-upper")
MBARBD_STRICT = ("2-upper-strict", "3-upper-strict")


def mbarbd_bounds(red, profile) -> dict[str, bool]:
    n, d, l, k = profile.dim, profile.d, profile.l, profile.k
    mb, deg = red.mbar, red.abar.degree
    cap = l * (d - 1) + sum(di - 1 for _, di in profile.z_vars)
    return {
        "1": 1 <= mb <= n - 1,
        "2-lower": mb * d - 1 <= deg,
        "2-upper": deg <= cap,
        "2-upper-strict": deg < cap,
        "2-chain": cap <= n * (d - 1) - k,
        "3": red.ord_Z <= deg - mb * d + 1,
        "3-upper": deg - mb * d + 1 <= (n - 1) * (d - 1),
        "3-upper-strict": deg - mb * d + 1 <= (n - 1) * (d - 1) - 1,
    }


def check_prop_mbarbd(I: MonomialIdeal, m: int, strict: bool = False,
                      cache: PowerCache | None = None) -> CheckReport:
    """Bounds on mbar, deg(abar) and ord_Z over the witnesses of I^m.

    The upper bound on deg(abar) is checked non-strictly unless ``strict``;
    the strict forms are always counted in the quantities.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    cache = _cache(I, cache)
    profile = pure_power_profile(I)
    w = witness_set(cache[m]).monomials
    fails = {key: 0 for key in MBARBD_REQUIRED + MBARBD_STRICT}
    first: dict[str, Any] = {}
    mbars = []
    for a in w:
        red = reduce_monomial(a, profile, m)
        mbars.append(red.mbar)
        for key, ok in mbarbd_bounds(red, profile).items():
            if not ok:
                fails[key] += 1
                first.setdefault(key, {"witness": list(a), "mbar": red.mbar,
                                       "abar": list(red.abar), "ord_Z": red.ord_Z})
    keys = MBARBD_REQUIRED + (MBARBD_STRICT if strict else ())
    concl = all(fails[k] == 0 for k in keys)
    q = {"witnesses": len(w), "mbar_min": min(mbars), "mbar_max": max(mbars),
         "failures": fails, "l": profile.l, "k": profile.k, "d": profile.d}
    return _finish("prop_mbarbd", {"I": _ideal_input(I), "m": m, "strict": strict}, True, concl,
                   q, {k: v for k, v in first.items() if k in keys})


def _lemma_common_prefix(I, cache, red, d, horizon=2) -> bool:
    """x^{dq} a_x outside I^{m_x + mbar + q} for q = 0..horizon."""
    x = red.x_var
    for q in range(horizon + 1):
        t = red.m_x + red.mbar + q
        if t <= 0:
            continue
        if red.a_x.times_var(x, d * q) in cache[t]:
            return False
    return True


def check_thm_inc(I: MonomialIdeal, m: int, cache: PowerCache | None = None) -> CheckReport:
    """e_{m+1} >= e_m once m > (n-1)(d-2) + (mu_m - 1)(l-1)(d-1).

    The shift-lemma hypothesis on individual witnesses gives the same
    conclusion and is evaluated alongside; when it fires, the witness must
    also have ord_Z = 0.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    cache = _cache(I, cache)
    profile = pure_power_profile(I)
    n, d, l = profile.dim, profile.d, profile.l
    rows = compute_rows(I, m + 1, cache)
    e_m, e_next = rows[m - 1].e, rows[m].e
    w = witness_set(cache[m]).monomials
    mu_m = min(reduce_monomial(a, profile, m).mbar for a in w)
    T = (n - 1) * (d - 2) + (mu_m - 1) * (l - 1) * (d - 1)
    lemma_hits = []
    common_hits = 0
    ordz_bad = []
    for x in profile.d_vars:
        prof = pure_power_profile(I, x)
        for a in w:
            red = reduce_monomial(a, prof, m)
            if abar2_holds(red, d):
                lemma_hits.append((x, list(a)))
                if red.ord_Z != 0:
                    ordz_bad.append(list(a))
            if _lemma_common_prefix(I, cache, red, d):
                common_hits += 1
    by_threshold = m > T
    hyp = by_threshold or bool(lemma_hits)
    concl = e_next >= e_m and not ordz_bad
    q = {"n": n, "d": d, "l": l, "mu_m": mu_m, "threshold": T, "e_m": e_m, "e_(m+1)": e_next,
         "threshold_crossed": by_threshold, "abar2_witnesses": len(lemma_hits),
         "common_prefix_witnesses": common_hits}
    return _finish("thm_inc", {"I": _ideal_input(I), "m": m}, hyp, concl, q,
                   {"m": m, "e_m": e_m, "e_(m+1)": e_next, "ord_Z_nonzero": ordz_bad[:3],
                    "abar2": lemma_hits[:3]})


def check_thm_simplebd(I: MonomialIdeal, budget: int = SIMPLEBD_BUDGET,
                       cache: PowerCache | None = None, extra: int = 2) -> CheckReport:
    """e_{m+1} = e_m for every m past max{n-1, (n-1)[l(d-1)-1]}.

    Checked directly up to ``bound + 1 + extra`` when that fits the budget;
    otherwise the report is skipped and records what the stabilization
    certificate says.
    """
    cache = _cache(I, cache)
    profile = pure_power_profile(I)
    B = simple_bound(profile)
    horizon = B + 1 + extra
    q: dict[str, Any] = {"bound": B, "horizon": horizon, "l": profile.l, "d": profile.d}
    inputs = {"I": _ideal_input(I), "budget": budget}
    if horizon > budget:
        rep = stable_defect(I, max_m=budget, cache=cache)
        q.update({"certificate": rep.certificate, "certified_from": rep.certified_stable_from,
                  "e_infinity": rep.e_infinity})
        return _finish("thm_simplebd", inputs, False, None, q, note="skipped")
    rows = compute_rows(I, horizon, cache)
    tail = [r.e for r in rows if r.m >= B + 1]
    q["tail"] = tail
    return _finish("thm_simplebd", inputs, True, len(set(tail)) == 1, q, {"tail": tail})


def pure_top_predicate(I: MonomialIdeal) -> tuple[bool, list[int]]:
    """For each degree-d pure generator x^d, is x^{d-1} * m inside I?"""
    profile = pure_power_profile(I)
    failing = []
    for x in profile.d_vars:
        for j in range(I.dim):
            u = [0] * I.dim
            u[x] = profile.d - 1
            u[j] += 1
            if u not in I:
                failing.append(x)
                break
    return not failing, failing


def check_einf_zero(I: MonomialIdeal, max_m: int | None = None, cache: PowerCache | None = None,
                    max_generators: int | None = None) -> CheckReport:
    """e_infinity = 0 exactly when x^{d-1} m lies in I for every degree-d pure x^d."""
    cache = _cache(I, cache)
    P, failing = pure_top_predicate(I)
    kw = {} if max_generators is None else {"max_generators": max_generators}
    rep = stable_defect(I, max_m=max_m, cache=cache, **kw)
    q = {"predicate": P, "failing_vars": failing, "certificate": rep.certificate,
         "certified_from": rep.certified_stable_from, "e_infinity": rep.e_infinity,
         "e": list(rep.e)}
    inputs = {"I": _ideal_input(I), "max_m": max_m}
    if not rep.certified:
        q["stop_reason"] = rep.stop_reason
        return _finish("einf_zero", inputs, False, None, q, note="inconclusive")
    concl = P == (rep.e_infinity == 0)
    if not P:
        # some x^{d-1} x_j outside I keeps every e_q >= 1
        concl = concl and all(v >= 1 for v in rep.e)
    return _finish("einf_zero", inputs, True, concl, q,
                   {"predicate": P, "e_infinity": rep.e_infinity})


def binomial_sides(n: int, d: int) -> tuple[int, int]:
    lhs = math.comb(n * d, n - 1)
    rhs = n * (math.comb((n - 1) * d, n - 1) - math.comb(d + n - 2, n - 1))
    return lhs, rhs


def check_binomial_inequality(n: int, d: int) -> CheckReport:
    """C(nd, n-1) <= n[C((n-1)d, n-1) - C(d+n-2, n-1)], predicted true exactly for n >= 4."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    lhs, rhs = binomial_sides(n, d)
    holds = lhs <= rhs
    predicted = n >= 4
    q = {"lhs": lhs, "rhs": rhs, "holds": holds, "predicted": predicted}
    return _finish("binomial_inequality", {"n": n, "d": d}, True, holds == predicted, q,
                   {"n": n, "d": d, "lhs": lhs, "rhs": rhs})


CHECKERS = {
    "first_difference": check_first_difference,
    "thm_bd": check_thm_bd,
    "cor_dec": check_cor_dec,
    "strict_increase": check_strict_increase,
    "nonnegative_defect": check_nonnegative_defect,
    "socle_descent": check_socle_descent,
    "witness_lemma": check_witness_lemma,
    "prop_mbarbd": check_prop_mbarbd,
    "thm_inc": check_thm_inc,
    "thm_simplebd": check_thm_simplebd,
    "einf_zero": check_einf_zero,
    "binomial_inequality": check_binomial_inequality,
}
