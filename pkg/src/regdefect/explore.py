"""Seeded random search for counterexamples among m-primary monomial ideals.

Sample ``i`` of a campaign with seed ``s`` is drawn from
``numpy.random.default_rng([s, i])``, so any sample can be reproduced on
its own and the report does not depend on how samples are scheduled.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterator

import numpy as np

from . import theorems as th
from .defect import asymptotic_degree, compute_rows, pure_power_profile
from .monomial import MonomialIdeal, PowerCache, truncate_below

__all__ = ["ExplorerConfig", "explore", "random_ideal", "run_sample", "summarize"]

THREADS_ENV = "REGDEFECT_THREADS"

ALL_CHECKERS = (
    "nonnegative_defect",
    "strict_increase",
    "first_difference",
    "thm_bd",
    "thm_bd_refined",
    "cor_dec",
    "socle_descent",
    "witness_lemma",
    "prop_mbarbd",
    "thm_inc",
    "einf_zero",
)

# violations here are recorded but do not make the campaign fail
LOGGED_ONLY = ("prop_mbarbd_strict", "thm_bd_refined")


@dataclass(frozen=True)
class ExplorerConfig:
    seed: int = 0
    samples: int = 100
    n_range: tuple[int, int] = (2, 4)
    pure_range: tuple[int, int] = (1, 5)
    extra_range: tuple[int, int] = (0, 6)
    # total-degree window for extra generators; None accepts any degree
    extra_degree: tuple[int, int] | None = None
    # share of extra candidates drawn as x_i^(p_i - 1) * x_j instead of uniformly
    shifted_fraction: float = 0.0
    # largest power computed for the pointwise checks; at least n + 1 is used
    m_max: int = 5
    # largest power the stabilization search may reach (einf_zero)
    stable_budget: int = 8
    max_generators: int = 200_000
    checkers: tuple[str, ...] = ALL_CHECKERS
    workers: int = 1

    def __post_init__(self):
        unknown = set(self.checkers) - set(ALL_CHECKERS)
        if unknown:
            raise ValueError(f"unknown checkers {sorted(unknown)}")
        for lo, hi in (self.n_range, self.pure_range, self.extra_range):
            if lo > hi:
                raise ValueError("empty range")
        if self.n_range[0] < 1 or self.pure_range[0] < 1 or self.extra_range[0] < 0:
            raise ValueError("ranges out of bounds")
        if not 0.0 <= self.shifted_fraction <= 1.0:
            raise ValueError("shifted_fraction must lie in [0, 1]")


def random_ideal(rng: np.random.Generator, config: ExplorerConfig) -> MonomialIdeal:
    """Pure powers uniform in range, plus extra monomials from the box below them.

    Candidates that are pure powers, the constant 1, or already in the ideal
    are rejected, so the pure-power profile is exactly the sampled one.  With
    ``shifted_fraction`` > 0 some candidates are x_i^(p_i - 1) * x_j, the
    shape that produces non-constant defect sequences most often.
    """
    n = int(rng.integers(config.n_range[0], config.n_range[1] + 1))
    pure = [int(rng.integers(config.pure_range[0], config.pure_range[1] + 1)) for _ in range(n)]
    extra = int(rng.integers(config.extra_range[0], config.extra_range[1] + 1))
    I = MonomialIdeal(n, np.diag(pure))
    tries = 0
    added = 0
    while added < extra and tries < 50 * (extra + 1):
        tries += 1
        if n > 1 and config.shifted_fraction and rng.random() < config.shifted_fraction:
            i, j = (int(v) for v in rng.choice(n, 2, replace=False))
            u = [0] * n
            u[i], u[j] = pure[i] - 1, 1
        else:
            u = [int(rng.integers(0, p)) for p in pure]
        if sum(1 for v in u if v) < 2 or u in I:
            continue
        if config.extra_degree and not config.extra_degree[0] <= sum(u) <= config.extra_degree[1]:
            continue
        I = I + MonomialIdeal(n, [u])
        added += 1
    return I


def _summary(reports: list[th.CheckReport], name: str) -> dict[str, Any]:
    out = {"name": name, "instances": len(reports), "vacuous": 0, "passed": 0,
           "violations": 0, "skipped": 0}
    for r in reports:
        s = r.status
        if s == "violation":
            out["violations"] += 1
        elif s == "pass":
            out["passed"] += 1
        elif s == "vacuous":
            out["vacuous"] += 1
        else:
            out["skipped"] += 1
    return out


def first_difference_probe(e: list[int]) -> dict[str, Any]:
    """Do first differences weakly decrease on the increasing prefix?

    The prefix runs up to the first index where e attains its maximum.
    """
    top = e.index(max(e))
    diffs = [b - a for a, b in zip(e[: top + 1], e[1: top + 1])]
    dips = [i for i in range(1, len(diffs)) if diffs[i] > diffs[i - 1]]
    return {"prefix_length": top + 1, "differences": diffs, "weakly_decreasing": not dips}


def run_sample(index: int, config: ExplorerConfig) -> dict[str, Any]:
    rng = np.random.default_rng([config.seed, index])
    I = random_ideal(rng, config)
    n = I.dim
    cache = PowerCache(I)
    record: dict[str, Any] = {
        "record": "sample",
        "index": index,
        "n": n,
        "gens": [list(map(int, r)) for r in I.gens.tolist()],
        "d": asymptotic_degree(I),
        "budget_exhausted": False,
    }
    m_max = max(config.m_max, n + 1)
    reached = 0
    for m in range(1, m_max + 1):
        if len(cache[m]) > config.max_generators:
            record["budget_exhausted"] = True
            break
        reached = m
    m_max = reached
    rows = compute_rows(I, m_max, cache)
    record["e"] = [r.e for r in rows]
    record["reg"] = [r.reg for r in rows]
    record["profile"] = pure_power_profile(I).relabeling()
    record["first_difference_probe"] = first_difference_probe(record["e"])

    d = asymptotic_degree(I)
    low = truncate_below(I, d)
    results: dict[str, list[th.CheckReport]] = {}
    on = set(config.checkers)

    def add(name, rep):
        results.setdefault(name, []).append(rep)

    if "nonnegative_defect" in on:
        add("nonnegative_defect", th.check_nonnegative_defect(I, m_max, cache))
    if m_max >= 2:
        if "strict_increase" in on:
            add("strict_increase", th.check_strict_increase(I, m_max, cache))
        if "cor_dec" in on:
            add("cor_dec", th.check_cor_dec(I, m_max, cache))
        for m in range(2, m_max + 1):
            for J in (low, I):
                if "first_difference" in on:
                    for mode in (th.WITNESS_MODE, th.REGULARITY_MODE):
                        add("first_difference", th.check_first_difference(I, J, m, mode, cache))
                if "thm_bd" in on:
                    add("thm_bd", th.check_thm_bd(I, J, m, False, cache))
            if "thm_bd_refined" in on and m <= 3:
                add("thm_bd_refined", th.check_thm_bd(I, low, m, True, cache))
            if "socle_descent" in on:
                add("socle_descent", th.check_socle_descent(I, m, cache))
    if "witness_lemma" in on:
        pairs = [(I, low), (low, I)]
        if m_max >= 2:
            pairs += [(cache[1], cache[2]), (cache[2], cache[1])]
        for A, B in pairs:
            add("witness_lemma", th.check_witness_lemma(A, B))
    for m in range(1, m_max + 1):
        if "prop_mbarbd" in on:
            rep = th.check_prop_mbarbd(I, m, False, cache)
            add("prop_mbarbd", rep)
            strict = th.check_prop_mbarbd(I, m, True, cache)
            add("prop_mbarbd_strict", strict)
        if "thm_inc" in on and m < m_max:
            add("thm_inc", th.check_thm_inc(I, m, cache))
    if "einf_zero" in on:
        add("einf_zero", th.check_einf_zero(I, max_m=config.stable_budget, cache=cache,
                                            max_generators=config.max_generators))
        rep = results["einf_zero"][-1]
        record["certificate"] = rep.quantities["certificate"]
        record["e_infinity"] = rep.quantities["e_infinity"]

    record["checks"] = [_summary(reps, name) for name, reps in sorted(results.items())]
    record["violations"] = [
        {"checker": name, **r.to_record()}
        for name, reps in sorted(results.items())
        for r in reps if r.violated
    ]
    return record


def _worker_count(config: ExplorerConfig) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, config.workers)


def _run_one(args):
    return run_sample(*args)


def explore(config: ExplorerConfig) -> Iterator[dict[str, Any]]:
    """Yield one record per sample, in index order."""
    jobs = [(i, config) for i in range(config.samples)]
    workers = _worker_count(config)
    if workers == 1:
        for job in jobs:
            yield _run_one(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order whatever the completion order
        yield from pool.map(_run_one, jobs, chunksize=4)


@dataclass
class CampaignSummary:
    samples: int = 0
    budget_exhausted: int = 0
    certified: int = 0
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    logged: list[dict[str, Any]] = field(default_factory=list)
    difference_flagged: list[int] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return len(self.counterexamples)

    def to_record(self) -> dict[str, Any]:
        out = asdict(self)
        out["record"] = "summary"
        out["violations"] = self.violations
        return out


def summarize(records) -> CampaignSummary:
    s = CampaignSummary()
    for rec in records:
        s.samples += 1
        s.budget_exhausted += rec["budget_exhausted"]
        if rec.get("certificate") not in (None, "uncertified"):
            s.certified += 1
        if not rec["first_difference_probe"]["weakly_decreasing"]:
            s.difference_flagged.append(rec["index"])
        for c in rec["checks"]:
            tot = s.counts.setdefault(c["name"], {"instances": 0, "vacuous": 0, "passed": 0,
                                                  "violations": 0, "skipped": 0})
            for k in tot:
                tot[k] += c[k]
        for v in rec["violations"]:
            entry = {"index": rec["index"], "gens": rec["gens"], **v}
            if v["checker"] in LOGGED_ONLY:
                s.logged.append(entry)
            else:
                s.counterexamples.append(entry)
    s.counts = dict(sorted(s.counts.items()))
    return s
