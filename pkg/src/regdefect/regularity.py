"""Regularity, socle and witness monomials of monomial quotients.

Two strategies compute the same data:

``box``
    Dense boolean membership over the box cut out by the pure powers,
    then a direct filter of the standard monomials.  Only valid for
    m-primary ideals; kept as the reference.
``corner``
    Staircase height map over all but one variable.  Socle candidates are
    drawn from the grid of generator coordinates minus one and tested
    against the map.  Works for any nonzero proper monomial ideal, which
    the theorem checkers need for quotients of infinite length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .monomial import Monomial, MonomialIdeal, is_m_primary

__all__ = [
    "NotArtinian",
    "SocleBasis",
    "WitnessSet",
    "in_socle",
    "regularity",
    "socle_monomials",
    "standard_monomials",
    "witness_set",
]

STRATEGIES = ("corner", "box")
_INF = np.iinfo(np.int64).max


class NotArtinian(ValueError):
    """Raised when an operation needs an m-primary proper ideal."""


@dataclass(frozen=True)
class SocleBasis:
    ideal: MonomialIdeal
    monomials: tuple[Monomial, ...]
    top_degree: int


@dataclass(frozen=True)
class WitnessSet:
    ideal: MonomialIdeal
    monomials: tuple[Monomial, ...]
    degree: int

    def __contains__(self, u):
        return Monomial(u) in set(self.monomials)


def _require_artinian(I: MonomialIdeal) -> None:
    if I.is_zero or I.is_unit:
        raise NotArtinian("the zero and unit ideals have no finite nonzero socle")
    if not is_m_primary(I):
        raise NotArtinian("ideal is not m-primary: some variable has no pure power")


def _sorted_monomials(rows) -> tuple[Monomial, ...]:
    mons = [Monomial(r) for r in rows]
    mons.sort(key=lambda u: (u.degree, tuple(u)))
    return tuple(mons)


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


# ---------------------------------------------------------------------------
# box strategy


def _membership_box(I: MonomialIdeal) -> np.ndarray:
    """Boolean array over ``[0, p_i]`` per axis, True where the cell is in I."""
    pp = I.pure_powers()
    shape = tuple(p + 1 for p in pp)
    U = np.zeros(shape, dtype=bool)
    G = I.gens
    # minimal generators never exceed the pure powers coordinatewise
    U[tuple(G.T)] = True
    for ax in range(I.dim):
        np.logical_or.accumulate(U, axis=ax, out=U)
    return U


def _box_data(I: MonomialIdeal):
    U = _membership_box(I)
    pp = I.pure_powers()
    inner = tuple(slice(0, p) for p in pp)
    standard = ~U[inner]
    socle = standard.copy()
    for ax in range(I.dim):
        shifted = list(inner)
        shifted[ax] = slice(1, pp[ax] + 1)
        socle &= U[tuple(shifted)]
    return standard, socle


def _degree_grid(shape) -> np.ndarray:
    grids = np.indices(shape, sparse=True)
    total = np.zeros(shape, dtype=np.int64)
    for g in grids:
        total = total + g
    return total


# ---------------------------------------------------------------------------
# corner strategy


class _Staircase:
    """Height map of an ideal along its longest axis."""

    def __init__(self, I: MonomialIdeal):
        G = I.gens
        self.n = I.dim
        top = G.max(axis=0)
        self.top = top
        self.axis = int(np.argmax(top))
        self.other = [i for i in range(self.n) if i != self.axis]
        self.shape = tuple(int(top[i]) + 1 for i in self.other)
        H = np.full(self.shape, _INF, dtype=np.int64)
        if self.other:
            np.minimum.at(H, tuple(G[:, self.other].T), G[:, self.axis])
            for ax in range(self.n - 1):
                np.minimum.accumulate(H, axis=ax, out=H)
        else:
            H[()] = int(G[:, 0].min())
        self.H = H

    def candidate_axes(self, I: MonomialIdeal) -> list[np.ndarray]:
        """Per remaining axis, the values g_i - 1 over generators with g_i > 0."""
        G = I.gens
        out = []
        for i in self.other:
            col = G[:, i]
            out.append(np.unique(col[col > 0] - 1))
        return out

    def socle_rows(self, I: MonomialIdeal) -> np.ndarray:
        n = self.n
        if not self.other:
            h = int(self.H[()])
            return np.array([[h - 1]], dtype=np.int64) if h >= 1 else np.zeros((0, 1), np.int64)
        axes = self.candidate_axes(I)
        if any(len(a) == 0 for a in axes):
            return np.zeros((0, n), dtype=np.int64)
        mesh = np.ix_(*axes)
        h = self.H[mesh]
        ok = (h < _INF) & (h >= 1)
        for j, vals in enumerate(axes):
            # x_i * u must land in the ideal: the height must drop one step over
            nxt = np.minimum(vals + 1, self.shape[j] - 1)
            idx = list(mesh)
            idx[j] = nxt.reshape(mesh[j].shape)
            ok &= self.H[tuple(idx)] < h
        pos = np.nonzero(ok)
        rows = np.empty((len(pos[0]), n), dtype=np.int64)
        for j, ax in enumerate(self.other):
            rows[:, ax] = axes[j][pos[j]]
        rows[:, self.axis] = h[pos] - 1
        return rows

    def top_standard_rows(self) -> np.ndarray:
        """Maximal-degree standard monomials (for m-primary ideals)."""
        H = self.H
        if not self.other:
            return np.array([[int(H[()]) - 1]], dtype=np.int64)
        deg = np.where((H < _INF) & (H >= 1), _degree_grid(self.shape) + H - 1, -1)
        best = int(deg.max())
        pos = np.nonzero(deg == best)
        rows = np.empty((len(pos[0]), self.n), dtype=np.int64)
        for j, ax in enumerate(self.other):
            rows[:, ax] = pos[j]
        rows[:, self.axis] = H[pos] - 1
        return rows


# ---------------------------------------------------------------------------
# public operations


def standard_monomials(I: MonomialIdeal) -> tuple[Monomial, ...]:
    """All monomials outside I, enumerated over the pure-power box."""
    _require_nonzero_primary(I)
    if I.is_unit:
        return ()
    standard, _ = _box_data(I)
    return _sorted_monomials(np.argwhere(standard).tolist())


def _require_nonzero_primary(I):
    if I.is_zero or not (I.is_unit or is_m_primary(I)):
        raise NotArtinian("standard monomials of a non-m-primary ideal form an infinite set")


def _socle_rows(I: MonomialIdeal, strategy: str) -> np.ndarray:
    key = ("socle", strategy)
    if key not in I.memo:
        I.memo[key] = _compute_socle_rows(I, strategy)
    return I.memo[key]


def _compute_socle_rows(I, strategy):
    if strategy == "box":
        _, socle = _box_data(I)
        return np.argwhere(socle)
    return _Staircase(I).socle_rows(I)


def socle_monomials(I: MonomialIdeal, strategy: str = "corner") -> SocleBasis:
    """Monomial basis of the socle of S/I."""
    _check_strategy(strategy)
    _require_artinian(I)
    mons = _sorted_monomials(_socle_rows(I, strategy).tolist())
    return SocleBasis(I, mons, mons[-1].degree)


def socle_any(K: MonomialIdeal) -> tuple[Monomial, ...]:
    """Socle monomials of S/K for any nonzero proper K (possibly infinite length).

    A socle monomial u has x_i*u in K for every i, so u_i + 1 is a generator
    coordinate; the candidate grid is therefore finite even when S/K is not.
    """
    if K.is_zero:
        return ()
    if K.is_unit:
        raise NotArtinian("the unit ideal has no socle")
    if "socle_any" not in K.memo:
        K.memo["socle_any"] = _sorted_monomials(_Staircase(K).socle_rows(K).tolist())
    return K.memo["socle_any"]


def in_socle(K: MonomialIdeal, u: Sequence[int]) -> bool:
    """u is outside K and every x_i * u lies in K."""
    u = Monomial(u)
    if u in K:
        return False
    return all(u.times_var(i) in K for i in range(K.dim))


def witness_set(I: MonomialIdeal, strategy: str = "corner") -> WitnessSet:
    """Top-degree socle monomials."""
    key = ("witness", strategy)
    if key not in I.memo:
        I.memo[key] = _compute_witness_set(I, strategy)
    return I.memo[key]


def _compute_witness_set(I, strategy):
    soc = socle_monomials(I, strategy)
    top = tuple(u for u in soc.monomials if u.degree == soc.top_degree)
    if strategy == "box":
        standard, _ = _box_data(I)
        deg = np.where(standard, _degree_grid(standard.shape), -1)
        alt = _sorted_monomials(np.argwhere(deg == deg.max()).tolist())
    else:
        alt = _sorted_monomials(_Staircase(I).top_standard_rows().tolist())
    assert alt == top, "top-degree standard monomials disagree with the socle slice"
    return WitnessSet(I, top, soc.top_degree)


def regularity(I: MonomialIdeal, strategy: str = "corner") -> int:
    """reg I = 1 + largest degree of a monomial outside I."""
    _check_strategy(strategy)
    _require_artinian(I)
    key = ("reg", strategy)
    if key not in I.memo:
        I.memo[key] = _compute_regularity(I, strategy)
    return I.memo[key]


def _compute_regularity(I, strategy):
    if strategy == "box":
        standard, _ = _box_data(I)
        return int(np.where(standard, _degree_grid(standard.shape), -1).max()) + 1
    st = _Staircase(I)
    if not st.other:
        return int(st.H[()])
    H = st.H
    deg = np.where(H >= 1, _degree_grid(st.shape) + H - 1, -1)
    return int(deg.max()) + 1


def socle_degree_max(K: MonomialIdeal) -> int | None:
    mons = socle_any(K)
    return mons[-1].degree if mons else None
