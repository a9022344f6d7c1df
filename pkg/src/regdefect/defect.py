"""Defect sequences e_m = reg I^m - d*m and their certified stable value.

The pure-power normal form splits the variables of an m-primary monomial
ideal into those whose pure power is the maximal degree ``d`` (one of
them singled out as ``x``, the others ``y``) and those with a smaller pure
power (the ``z`` block).  Reductions divide a monomial's exponents by
these pure powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .monomial import (
    DimensionMismatch,
    Monomial,
    MonomialIdeal,
    PowerCache,
    boxed_ideal,
    is_m_primary,
    truncate_below,
)
from .regularity import NotArtinian, regularity, witness_set

__all__ = [
    "CERT_THEOREM",
    "CERT_UNCERTIFIED",
    "CERT_WITNESS",
    "CERT_ZERO",
    "DefectReport",
    "DefectRow",
    "GeneratorStats",
    "PurePowerProfile",
    "ReductionData",
    "abar2_holds",
    "asymptotic_degree",
    "defect_sequence",
    "generator_degree_stats",
    "monotone_threshold",
    "mu",
    "pure_power_profile",
    "reduce_monomial",
    "simple_bound",
    "stable_defect",
]

INF = math.inf

CERT_ZERO = "reached-zero-after-monotone-threshold"
CERT_THEOREM = "reached-theorem-bound"
CERT_WITNESS = "witness-shift-after-monotone-threshold"
CERT_UNCERTIFIED = "uncertified"

DEFAULT_MAX_GENERATORS = 2_000_000


class DefectInvariantError(AssertionError):
    pass


def _require_primary(I: MonomialIdeal):
    if I.is_zero or I.is_unit or not is_m_primary(I):
        raise NotArtinian("expected a proper m-primary monomial ideal")


def asymptotic_degree(I: MonomialIdeal) -> int:
    """Largest pure-power degree among the minimal generators."""
    _require_primary(I)
    return max(I.pure_powers())


@dataclass(frozen=True)
class PurePowerProfile:
    dim: int
    d: int
    x_var: int
    y_vars: tuple[int, ...]
    z_vars: tuple[tuple[int, int], ...]
    pure: tuple[int, ...]

    @property
    def l(self) -> int:
        return 1 + len(self.y_vars)

    @property
    def k(self) -> int:
        return len(self.z_vars)

    @property
    def d_vars(self) -> tuple[int, ...]:
        return (self.x_var,) + self.y_vars

    def Y(self) -> MonomialIdeal:
        return _pure_subideal(self.dim, [(i, self.d) for i in self.y_vars])

    def Z(self) -> MonomialIdeal:
        return _pure_subideal(self.dim, list(self.z_vars))

    def relabeling(self) -> dict[str, object]:
        return {
            "x": f"x{self.x_var + 1}",
            "y": [f"x{i + 1}" for i in self.y_vars],
            "z": [[f"x{i + 1}", di] for i, di in self.z_vars],
        }


def _pure_subideal(n, pairs) -> MonomialIdeal:
    rows = []
    for i, p in pairs:
        e = [0] * n
        e[i] = p
        rows.append(e)
    return MonomialIdeal(n, rows) if rows else MonomialIdeal(n, [])


def pure_power_profile(I: MonomialIdeal, x_choice: int | None = None) -> PurePowerProfile:
    _require_primary(I)
    pure = tuple(I.pure_powers())
    d = max(pure)
    top = [i for i, p in enumerate(pure) if p == d]
    if x_choice is None:
        x_choice = top[0]
    elif x_choice not in top:
        raise ValueError(f"x{x_choice + 1} does not carry the pure power of degree {d}")
    ys = tuple(i for i in top if i != x_choice)
    zs = sorted(((i, p) for i, p in enumerate(pure) if p < d), key=lambda t: (-t[1], t[0]))
    return PurePowerProfile(I.dim, d, x_choice, ys, tuple(zs), pure)


@dataclass(frozen=True)
class ReductionData:
    monomial: Monomial
    m: int
    x_var: int
    quotients: tuple[int, ...]
    remainders: tuple[int, ...]
    abar: Monomial
    a_x: Monomial
    m_x: int
    ord_Y: int
    ord_Z: int
    mbar: int

    @property
    def abar_degree(self) -> int:
        return self.abar.degree


def reduce_monomial(a: Sequence[int], profile: PurePowerProfile, m: int) -> ReductionData:
    """Divide each exponent by its variable's pure power, quotient as large as possible."""
    a = Monomial(a)
    if len(a) != profile.dim:
        raise DimensionMismatch(f"monomial has {len(a)} variables, profile {profile.dim}")
    quot = tuple(e // p for e, p in zip(a, profile.pure))
    rem = tuple(e % p for e, p in zip(a, profile.pure))
    x = profile.x_var
    m_x = quot[x]
    ord_Y = sum(quot[i] for i in profile.y_vars)
    ord_Z = sum(quot[i] for i, _ in profile.z_vars)
    a_x = list(rem)
    a_x[x] += m_x * profile.d
    return ReductionData(
        monomial=a, m=m, x_var=x, quotients=quot, remainders=rem, abar=Monomial(rem),
        a_x=Monomial(a_x), m_x=m_x, ord_Y=ord_Y, ord_Z=ord_Z,
        mbar=m - m_x - ord_Y - ord_Z,
    )


def _cache_for(I, cache):
    if cache is None:
        return PowerCache(I)
    if cache.base != I:
        raise ValueError("cache belongs to a different ideal")
    return cache


def mu(I: MonomialIdeal, m: int, cache: PowerCache | None = None,
       x_choice: int | None = None) -> int:
    """Minimum of mbar over the witness monomials of I^m."""
    if m < 1:
        raise ValueError("m must be at least 1")
    profile = pure_power_profile(I, x_choice)
    cache = _cache_for(I, cache)
    w = witness_set(cache[m])
    return min(reduce_monomial(a, profile, m).mbar for a in w.monomials)


@dataclass(frozen=True)
class GeneratorStats:
    d: int
    b: int
    b_prime: float | int
    c: int | None = None
    c_prime: int | None = None
    d_prime: float | int | None = None


def generator_degree_stats(I: MonomialIdeal, J: MonomialIdeal | None = None) -> GeneratorStats:
    d = asymptotic_degree(I)
    degs = sorted(set(int(v) for v in I.degrees))
    b = degs[-1] - d
    above = [g for g in degs if g > d]
    b_prime = above[0] - d if above else INF
    if J is None:
        return GeneratorStats(d, b, b_prime)
    if not J.issubset(I):
        raise ValueError("J is not contained in I")
    if J.is_zero:
        raise ValueError("J must be nonzero")
    outside = [int(deg) for g, deg in zip(I.gens.tolist(), I.degrees) if g not in J]
    d_prime = min(outside) if outside else INF
    return GeneratorStats(d, b, b_prime, J.max_degree, J.min_degree, d_prime)


def ratio(num: int, den) -> Fraction:
    """num / den as an exact rational; an infinite denominator gives 0."""
    if den == INF:
        return Fraction(0)
    return Fraction(num, int(den))


def monotone_threshold(I: MonomialIdeal) -> Fraction:
    """reg(I_{<=d}) / (d + b'): beyond it the defect is nonincreasing."""
    st = generator_degree_stats(I)
    low = truncate_below(I, st.d)
    den = INF if st.b_prime == INF else st.d + st.b_prime
    return ratio(regularity(low), den)


def simple_bound(profile: PurePowerProfile) -> int:
    n, l, d = profile.dim, profile.l, profile.d
    return max(n - 1, (n - 1) * (l * (d - 1) - 1))


@dataclass(frozen=True)
class DefectRow:
    m: int
    reg: int
    e: int


@dataclass
class DefectReport:
    ideal: MonomialIdeal
    d: int
    rows: list[DefectRow] = field(default_factory=list)
    certified_stable_from: int | None = None
    e_infinity: int | None = None
    certificate: str = CERT_UNCERTIFIED
    # why the search stopped, when it did not certify
    stop_reason: str | None = None
    threshold: Fraction | None = None
    bound: int | None = None

    @property
    def e(self) -> tuple[int, ...]:
        return tuple(r.e for r in self.rows)

    @property
    def regs(self) -> tuple[int, ...]:
        return tuple(r.reg for r in self.rows)

    @property
    def certified(self) -> bool:
        return self.certificate != CERT_UNCERTIFIED

    def problems(self) -> list[str]:
        out = []
        for r in self.rows:
            if r.e != r.reg - self.d * r.m:
                out.append(f"m={r.m}: e does not equal reg - d*m")
            if r.e < 0:
                out.append(f"m={r.m}: negative defect {r.e}")
        for a, b in zip(self.rows, self.rows[1:]):
            if b.reg <= a.reg:
                out.append(f"m={b.m}: regularity did not increase ({a.reg} -> {b.reg})")
        if self.certified:
            for r in self.rows:
                if r.m >= self.certified_stable_from and r.e != self.e_infinity:
                    out.append(f"m={r.m}: defect {r.e} differs from certified {self.e_infinity}")
        return out

    def e_at(self, m: int) -> int:
        for r in self.rows:
            if r.m == m:
                return r.e
        if self.certified and m >= self.certified_stable_from:
            return self.e_infinity
        raise KeyError(m)


def compute_rows(I: MonomialIdeal, m_max: int, cache: PowerCache | None = None,
                 strategy: str = "corner") -> list[DefectRow]:
    """Rows without any invariant enforcement (the checkers want raw data)."""
    d = asymptotic_degree(I)
    cache = _cache_for(I, cache)
    rows = []
    for m in range(1, m_max + 1):
        r = regularity(cache[m], strategy)
        rows.append(DefectRow(m, r, r - d * m))
    return rows


def defect_sequence(I: MonomialIdeal, m_max: int, cache: PowerCache | None = None,
                    strategy: str = "corner") -> DefectReport:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    d = asymptotic_degree(I)
    report = DefectReport(I, d, compute_rows(I, m_max, cache, strategy))
    bad = report.problems()
    if bad:
        raise DefectInvariantError("; ".join(bad))
    return report


def abar2_holds(red: ReductionData, d: int) -> bool:
    """Hypothesis of the shift lemma: ord_x(abar) > mbar*d - (m_x + mbar + 1)."""
    return red.remainders[red.x_var] > red.mbar * d - (red.m_x + red.mbar + 1)


def witness_shift_certifies(I: MonomialIdeal, m: int, cache: PowerCache) -> bool:
    """Some witness of I^m and some degree-d variable satisfy the shift lemma.

    The lemma then gives e_{m'} >= e_m for all m' >= m.
    """
    w = witness_set(cache[m])
    for x in pure_power_profile(I).d_vars:
        prof = pure_power_profile(I, x)
        if any(abar2_holds(reduce_monomial(a, prof, m), prof.d) for a in w.monomials):
            return True
    return False


def stable_defect(I: MonomialIdeal, max_m: int | None = None,
                  max_generators: int = DEFAULT_MAX_GENERATORS,
                  cache: PowerCache | None = None, strategy: str = "corner") -> DefectReport:
    """Extend the defect sequence until its eventual value is certified.

    Certificates, tried in order at each m beyond the monotone threshold:
    e_m = 0; a witness satisfying the shift lemma; reaching the bound
    max{n-1, (n-1)[l(d-1)-1]} + 1.  Running past ``max_m`` or producing a
    power with more than ``max_generators`` generators leaves the report
    uncertified with ``stop_reason`` set.
    """
    _require_primary(I)
    cache = _cache_for(I, cache)
    profile = pure_power_profile(I)
    d = profile.d
    threshold = monotone_threshold(I)
    bound = simple_bound(profile)
    if max_m is None:
        max_m = bound + 1
    report = DefectReport(I, d, threshold=threshold, bound=bound)
    m = 0
    while True:
        m += 1
        if m > max_m:
            report.stop_reason = f"power budget exhausted at m={max_m}"
            break
        Im = cache[m]
        if len(Im) > max_generators:
            report.stop_reason = (f"generator ceiling {max_generators} exceeded at m={m} "
                                  f"({len(Im)} generators)")
            break
        r = regularity(Im, strategy)
        row = DefectRow(m, r, r - d * m)
        report.rows.append(row)
        past = m > threshold
        kind = None
        if past and row.e == 0:
            kind = CERT_ZERO
        elif past and witness_shift_certifies(I, m, cache):
            kind = CERT_WITNESS
        elif m >= bound + 1:
            kind = CERT_THEOREM
        if kind is not None:
            report.certificate = kind
            report.certified_stable_from = m
            report.e_infinity = row.e
            break
    bad = report.problems()
    if bad:
        raise DefectInvariantError("; ".join(bad))
    return report


def complete_intersection(n: int, d: int) -> MonomialIdeal:
    return boxed_ideal([d] * n)
