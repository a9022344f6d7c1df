"""Constructors for the four worked example families and their predicted defects."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .monomial import MonomialIdeal, boxed_ideal, max_ideal_power

__all__ = [
    "ExampleSpec",
    "FAMILIES",
    "example_fat_socle",
    "example_increasing",
    "example_mixed",
    "example_slow_decreasing",
]


@dataclass(frozen=True)
class ExampleSpec:
    """An ideal together with what is claimed about its defect sequence.

    ``predicted`` is an explicit prefix e_1, e_2, ...; ``stable_value`` (if
    known) is the value from ``stable_from`` on; ``pinned`` fixes isolated
    later entries.  ``alternatives`` holds competing readings of the same
    claim, each as (prefix, stable_value).
    """

    name: str
    parameters: dict[str, Any]
    ideal: MonomialIdeal
    predicted: tuple[int, ...]
    stable_value: int | None = None
    stable_from: int | None = None
    pinned: dict[int, int] = field(default_factory=dict)
    alternatives: tuple[tuple[tuple[int, ...], int | None], ...] = ()
    construction: str = ""
    extras: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        seqs = [(self.predicted, self.stable_value)] + list(self.alternatives)
        for prefix, stable in seqs:
            if any(v < 0 for v in prefix) or (stable is not None and stable < 0):
                raise ValueError(f"{self.name}: negative predicted defect")
        if self.stable_value is not None and self.stable_from is not None:
            tail = [v for i, v in enumerate(self.predicted, 1) if i >= self.stable_from]
            if any(v != self.stable_value for v in tail):
                raise ValueError(f"{self.name}: predicted tail is not constant")
        for m, v in self.pinned.items():
            if self.stable_from is not None and m >= self.stable_from and v != self.stable_value:
                raise ValueError(f"{self.name}: pinned e_{m} contradicts the stable value")

    def predicted_value(self, m: int) -> int | None:
        if 1 <= m <= len(self.predicted):
            return self.predicted[m - 1]
        if m in self.pinned:
            return self.pinned[m]
        if self.stable_from is not None and m >= self.stable_from:
            return self.stable_value
        return None

    def predicted_sequence(self, m_max: int) -> list[int | None]:
        return [self.predicted_value(m) for m in range(1, m_max + 1)]

    def comparable_range(self) -> int:
        """Largest m up to which every predicted value is known."""
        top = len(self.predicted)
        if self.stable_from is not None:
            top = max(top, self.stable_from + 2)
        return top


def _unit(n, i, e):
    v = [0] * n
    v[i] = e
    return v


def _shifted_max(n: int, i: int, e: int) -> list[list[int]]:
    """Generators of x_i^e * m."""
    rows = []
    for j in range(n):
        v = _unit(n, i, e)
        v[j] += 1
        rows.append(v)
    return rows


def example_fat_socle() -> ExampleSpec:
    """Three variables: J from x_i^8, x_i^7 x_j^2, x_i^7 x_j x_k, and I = J + m^10."""
    n = 3
    rows = []
    for i in range(n):
        rows.append(_unit(n, i, 8))
        for j in range(n):
            if j != i:
                v = _unit(n, i, 7)
                v[j] = 2
                rows.append(v)
        for j, k in itertools.combinations([v for v in range(n) if v != i], 2):
            v = _unit(n, i, 7)
            v[j] = v[k] = 1
            rows.append(v)
    J = MonomialIdeal(n, rows)
    I = J + max_ideal_power(n, 10)
    return ExampleSpec(
        name="fat-socle",
        parameters={"n": n},
        ideal=I,
        predicted=(2, 3, 3),
        stable_value=3,
        stable_from=2,
        construction="J = <x_i^8, x_i^7 x_j^2, x_i^7 x_j x_k>, I = J + m^10",
        extras={"J": J, "reg_I": 10, "reg_J": 19, "reg_I^2": 19,
                "socle_J": (6, 6, 6), "d": 8, "c": 9, "c'": 8, "d'": 10},
    )


def increasing_parameters(n: int, d: int, b: int) -> tuple[int, int]:
    top = n * (d - 1) + 1
    m0 = top // (d + b)
    delta = max(top - m0 * (d + b) - d, 0)
    return m0, delta


def example_increasing(n: int, d: int, b: int) -> ExampleSpec:
    """m^(d,...,d) + m^(d+b): e = (b, 2b, ..., m0 b, m0 b + delta, ...)."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    if not 1 <= b <= n * (d - 1) - d:
        raise ValueError(f"need 1 <= b <= n(d-1) - d = {n * (d - 1) - d}")
    m0, delta = increasing_parameters(n, d, b)
    prefix = tuple(b * m for m in range(1, m0 + 1)) + (m0 * b + delta,)
    I = boxed_ideal([d] * n) + max_ideal_power(n, d + b)
    return ExampleSpec(
        name="increasing",
        parameters={"n": n, "d": d, "b": b, "m0": m0, "delta": delta},
        ideal=I,
        predicted=prefix,
        stable_value=m0 * b + delta,
        stable_from=m0 + 1,
        construction="m^(d,...,d) + m^(d+b)",
    )


def example_slow_decreasing(n: int, d: int, raised: bool = False) -> ExampleSpec:
    """x^{d-1} m + (z_1^{d-1}, ..., z_k^{d-1}), with x = x1 and z = x2..xn.

    Two readings of the claimed sequence are recorded: the displayed one,
    ((n-1)(d-2), ..., 1, 0, 0, ...), and the one obtained from e_1 =
    (n-1)(d-2) with unit steps down for m < (n-1)(d-2), which stops at 1.
    With ``raised`` the z powers are d instead, and the claim is immediate
    stabilization at n(d-1) - 1.
    """
    if n < 2 or d < 3:
        raise ValueError("need n >= 2 and d >= 3")
    zpow = d if raised else d - 1
    rows = _shifted_max(n, 0, d - 1) + [_unit(n, i, zpow) for i in range(1, n)]
    I = MonomialIdeal(n, rows)
    top = (n - 1) * (d - 2)
    if raised:
        v = n * (d - 1) - 1
        return ExampleSpec(
            name="slow-decreasing-raised",
            parameters={"n": n, "d": d, "raised": True},
            ideal=I,
            predicted=(v,),
            stable_value=v,
            stable_from=1,
            construction="x^{d-1} m + (z_i^d)",
        )
    displayed = tuple(range(top, -1, -1))
    stepped = tuple(range(top, 0, -1))
    return ExampleSpec(
        name="slow-decreasing",
        parameters={"n": n, "d": d},
        ideal=I,
        predicted=displayed,
        stable_value=0,
        stable_from=top + 1,
        alternatives=((stepped, 1),),
        construction="x^{d-1} m + (z_i^{d-1})",
        extras={"witness": tuple([d - 2] * n)},
    )


MIXED_KNOWN = {
    (4, 5, 1): {"predicted": (1, 2, 2, 1, 1, 1, 1, 1, 0, 0), "stable_from": 9},
    (4, 5, 2): {"predicted": (2, 3, 2, 2, 2, 2, 2, 1, 0, 0), "stable_from": 9},
    (4, 6, 2): {"predicted": (2, 4, 4, 3), "pinned": {12: 0}, "stable_from": 12},
}


def example_mixed(n: int, d: int, b: int) -> ExampleSpec:
    """sum_i x_i^{d-1} m + m^{d+b}; the stable defect is always 0."""
    if n <= 2 or d < 3 or b < 1:
        raise ValueError("need n > 2, d >= 3, b >= 1")
    rows = [r for i in range(n) for r in _shifted_max(n, i, d - 1)]
    I = MonomialIdeal(n, rows) + max_ideal_power(n, d + b)
    known = MIXED_KNOWN.get((n, d, b), {})
    return ExampleSpec(
        name="mixed",
        parameters={"n": n, "d": d, "b": b},
        ideal=I,
        predicted=known.get("predicted", ()),
        stable_value=0,
        stable_from=known.get("stable_from"),
        pinned=known.get("pinned", {}),
        construction="sum_i x_i^{d-1} m + m^{d+b}",
    )


FAMILIES = {
    "fat-socle": example_fat_socle,
    "increasing": example_increasing,
    "slow-decreasing": example_slow_decreasing,
    "mixed": example_mixed,
}
