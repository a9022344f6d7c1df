"""Monomials and monomial ideals stored as canonical exponent arrays.

Every ideal keeps its minimal generators as a read-only 2-D integer array,
sorted by total degree and then lexicographically.  Two ideals are equal
exactly when their arrays are equal.

Minimalization works on a staircase height map: one axis is dropped and,
for every point of the remaining box, the map records the smallest
exponent along the dropped axis that lands in the ideal.  Minimal
generators are the cells where the height strictly drops.  When the box
would be too large (or exponents leave the int64 range) a sorted
pairwise filter takes over.
"""

from __future__ import annotations

import itertools
import math
import threading
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "DimensionMismatch",
    "Monomial",
    "MonomialIdeal",
    "PowerCache",
    "UndefinedOrder",
    "boxed_ideal",
    "contains_many",
    "contains_monomial",
    "format_monomial",
    "is_m_primary",
    "max_ideal_power",
    "minimalize",
    "order",
    "power",
    "product",
    "sum_ideals",
    "truncate_below",
    "unit_ideal",
    "zero_ideal",
]

# cells in the height map before falling back to pairwise filtering
DENSE_CELL_LIMIT = 20_000_000
# candidate rows materialized at once when multiplying ideals
PRODUCT_CHUNK = 4_000_000
# exponents above this go to Python ints (object arrays)
_FAST_LIMIT = 2**62
_INF = np.iinfo(np.int64).max


class DimensionMismatch(ValueError):
    pass


class UndefinedOrder(ValueError):
    pass


class Monomial(tuple):
    """An exponent vector; ``Monomial((2, 0, 1))`` is x1^2*x3."""

    __slots__ = ()

    def __new__(cls, exps: Iterable[int] = ()):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other):
        if len(other) != len(self):
            raise DimensionMismatch(f"{len(self)} vs {len(other)} variables")
        return Monomial(a + b for a, b in zip(self, other))

    __rmul__ = __mul__

    def divides(self, other: Sequence[int]) -> bool:
        if len(other) != len(self):
            raise DimensionMismatch(f"{len(self)} vs {len(other)} variables")
        return all(a <= b for a, b in zip(self, other))

    def times_var(self, i: int, power: int = 1) -> Monomial:
        exps = list(self)
        exps[i] += power
        return Monomial(exps)

    def __repr__(self):
        return f"Monomial({tuple(self)})"

    def __str__(self):
        return format_monomial(self)


def format_monomial(exps: Sequence[int], names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"x{i + 1}" for i in range(len(exps))]
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# array helpers


def _as_array(rows, dim: int | None) -> np.ndarray:
    rows = list(rows) if not isinstance(rows, np.ndarray) else rows
    if isinstance(rows, np.ndarray):
        arr = rows
        if arr.ndim != 2:
            if arr.size == 0 and dim is not None:
                return np.zeros((0, dim), dtype=np.int64)
            raise DimensionMismatch("expected a 2-D exponent array")
    else:
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise DimensionMismatch(f"monomials of mixed lengths {sorted(lengths)}")
        if not rows:
            if dim is None:
                raise ValueError("dimension required for an empty generator set")
            return np.zeros((0, dim), dtype=np.int64)
        big = any(int(e) >= _FAST_LIMIT for r in rows for e in r)
        arr = np.array([[int(e) for e in r] for r in rows], dtype=object if big else np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(len(rows), 0)
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatch(f"expected {dim} variables, got {arr.shape[1]}")
    if arr.dtype != object:
        arr = arr.astype(np.int64, copy=False)
    if arr.size and (arr < 0).any():
        raise ValueError("negative exponent")
    return arr


def _canonical(arr: np.ndarray) -> np.ndarray:
    """Sort rows by (degree, lexicographic exponents)."""
    if len(arr) <= 1:
        return arr
    if arr.dtype == object:
        rows = sorted(map(tuple, arr), key=lambda r: (sum(r), r))
        return np.array(rows, dtype=object).reshape(len(rows), arr.shape[1])
    deg = arr.sum(axis=1)
    keys = [arr[:, i] for i in reversed(range(arr.shape[1]))] + [deg]
    return arr[np.lexsort(keys)]


def _minimal_sparse(arr: np.ndarray) -> np.ndarray:
    """Pairwise divisibility filter, processed one degree at a time."""
    rows = _canonical(np.unique(arr, axis=0) if arr.dtype != object else
                      np.array(sorted(set(map(tuple, arr))), dtype=object).reshape(-1, arr.shape[1]))
    if len(rows) <= 1:
        return rows
    deg = rows.sum(axis=1)
    accepted = rows[:0]
    start = 0
    while start < len(rows):
        stop = start
        while stop < len(rows) and deg[stop] == deg[start]:
            stop += 1
        block = rows[start:stop]
        if len(accepted):
            keep = np.ones(len(block), dtype=bool)
            step = max(1, 2_000_000 // max(1, len(accepted)))
            for lo in range(0, len(block), step):
                sub = block[lo:lo + step]
                hit = (accepted[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
                keep[lo:lo + step] = ~hit
            block = block[keep]
        if len(block):
            accepted = np.concatenate([accepted, block])
        start = stop
    return accepted


class _HeightMap:
    """Scatter-min accumulator over the box ``[0, top]`` minus one axis."""

    def __init__(self, top: np.ndarray):
        self.n = len(top)
        self.axis = int(np.argmax(top))
        self.other = [i for i in range(self.n) if i != self.axis]
        self.shape = tuple(int(t) + 1 for t in top[self.other])
        self.H = np.full(math.prod(self.shape), _INF, dtype=np.int64)

    @staticmethod
    def fits(top: np.ndarray) -> bool:
        if len(top) == 0:
            return False
        if int(top.max()) >= _FAST_LIMIT:
            return False
        axis = int(np.argmax(top))
        cells = 1
        for i, t in enumerate(top):
            if i != axis:
                cells *= int(t) + 1
        return cells <= DENSE_CELL_LIMIT

    def add(self, rows: np.ndarray) -> None:
        if not len(rows):
            return
        if self.n == 1:
            self.H[0] = min(self.H[0], int(rows[:, 0].min()))
            return
        lin = np.ravel_multi_index(tuple(rows[:, self.other].T), self.shape)
        np.minimum.at(self.H, lin, rows[:, self.axis])

    def minimal_rows(self) -> np.ndarray:
        n = self.n
        if n == 1:
            if self.H[0] == _INF:
                return np.zeros((0, 1), dtype=np.int64)
            return np.array([[self.H[0]]], dtype=np.int64)
        H = self.H.reshape(self.shape)
        for ax in range(n - 1):
            np.minimum.accumulate(H, axis=ax, out=H)
        mask = H < _INF
        for ax in range(n - 1):
            below = np.full_like(H, _INF)
            dst = [slice(None)] * (n - 1)
            src = [slice(None)] * (n - 1)
            dst[ax] = slice(1, None)
            src[ax] = slice(None, -1)
            below[tuple(dst)] = H[tuple(src)]
            mask &= H < below
        idx = np.nonzero(mask)
        out = np.empty((len(idx[0]), n), dtype=np.int64)
        for j, ax in enumerate(self.other):
            out[:, ax] = idx[j]
        out[:, self.axis] = H[idx]
        return out


def _minimal_rows(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    if arr.dtype != object:
        top = arr.max(axis=0)
        if _HeightMap.fits(top):
            hm = _HeightMap(top)
            hm.add(arr)
            return _canonical(hm.minimal_rows())
    return _minimal_sparse(arr)


# ---------------------------------------------------------------------------
# ideals


class MonomialIdeal:
    """Immutable monomial ideal given by its minimal generators.

    An empty generator array is the zero ideal; the single generator
    ``(0, ..., 0)`` is the unit ideal.
    """

    __slots__ = ("dim", "_gens", "_degrees", "_key", "memo", "__weakref__")

    def __init__(self, dim: int, gens=()):
        if dim < 1:
            raise ValueError("ring dimension must be positive")
        arr = _minimal_rows(_as_array(gens, dim))
        self._set(dim, arr)

    @classmethod
    def _trusted(cls, dim: int, arr: np.ndarray) -> MonomialIdeal:
        obj = cls.__new__(cls)
        obj._set(dim, arr)
        return obj

    def _set(self, dim, arr):
        if arr.dtype != object and len(arr) and int(arr.max()) < _FAST_LIMIT:
            arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        self.dim = dim
        self._gens = arr
        self._degrees = arr.sum(axis=1) if len(arr) else np.zeros(0, dtype=np.int64)
        self._key = None
        # derived data (regularity, socle, ...) keyed by the computing module
        self.memo = {}

    # -- views -------------------------------------------------------------

    @property
    def gens(self) -> np.ndarray:
        """Read-only array of minimal generators, one row per monomial."""
        return self._gens

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def generators(self) -> list[Monomial]:
        return [Monomial(r) for r in self._gens.tolist()]

    def __len__(self):
        return len(self._gens)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.generators())

    @property
    def is_zero(self) -> bool:
        return len(self._gens) == 0

    @property
    def is_unit(self) -> bool:
        return len(self._gens) == 1 and self._degrees[0] == 0

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max())

    @property
    def min_degree(self) -> int:
        return int(self._degrees.min())

    def pure_powers(self) -> list[int | None]:
        """Exponent of the pure-power generator of each variable, if any."""
        out: list[int | None] = [None] * self.dim
        if self.is_zero:
            return out
        nz = self._gens != 0
        single = nz.sum(axis=1) == 1
        for row in self._gens[single]:
            i = int(np.flatnonzero(row)[0])
            out[i] = int(row[i])
        return out

    # -- comparisons -------------------------------------------------------

    def _hash_key(self):
        if self._key is None:
            self._key = (self.dim, tuple(map(tuple, self._gens.tolist())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return (self.dim == other.dim and self._gens.shape == other._gens.shape
                and bool((self._gens == other._gens).all()))

    def __hash__(self):
        return hash(self._hash_key())

    def __repr__(self):
        if self.is_zero:
            return f"MonomialIdeal(dim={self.dim}, zero)"
        shown = ", ".join(format_monomial(r) for r in self._gens[:8].tolist())
        more = f", ... ({len(self)} gens)" if len(self) > 8 else ""
        return f"MonomialIdeal({shown}{more})"

    # -- arithmetic --------------------------------------------------------

    def __contains__(self, u) -> bool:
        return contains_monomial(self, u)

    def __add__(self, other):
        return sum_ideals(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, m: int):
        return power(self, m)

    def issubset(self, other: MonomialIdeal) -> bool:
        """True when every generator of ``self`` lies in ``other``."""
        _check_dims(self, other)
        if self.is_zero:
            return True
        return bool(contains_many(other, self._gens).all())


def _check_dims(*ideals):
    dims = {I.dim for I in ideals}
    if len(dims) > 1:
        raise DimensionMismatch(f"ideals live in rings of dimensions {sorted(dims)}")


def minimalize(gens, dim: int | None = None) -> MonomialIdeal:
    """Inclusion-minimal generating set of the ideal spanned by ``gens``."""
    arr = _as_array(gens, dim)
    return MonomialIdeal(arr.shape[1], arr)


def zero_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal._trusted(dim, np.zeros((0, dim), dtype=np.int64))


def unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal._trusted(dim, np.zeros((1, dim), dtype=np.int64))


def contains_monomial(I: MonomialIdeal, u: Sequence[int]) -> bool:
    if len(u) != I.dim:
        raise DimensionMismatch(f"monomial has {len(u)} variables, ideal {I.dim}")
    if I.is_zero:
        return False
    # generators are sorted by degree: only those of degree <= deg u can divide
    k = int(np.searchsorted(I.degrees, sum(u), side="right"))
    if k == 0:
        return False
    G = I.gens[:k]
    target = np.array(list(u), dtype=G.dtype)
    return bool((G <= target).all(axis=1).any())


def contains_many(I: MonomialIdeal, U: np.ndarray) -> np.ndarray:
    """Vectorized membership for the rows of ``U``."""
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[1] != I.dim:
        raise DimensionMismatch("monomial array does not match the ideal dimension")
    out = np.zeros(len(U), dtype=bool)
    if I.is_zero or not len(U):
        return out
    G = I.gens
    step = max(1, 4_000_000 // (len(G) * I.dim or 1))
    for lo in range(0, len(U), step):
        sub = U[lo:lo + step]
        out[lo:lo + step] = (G[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
    return out


def sum_ideals(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_dims(I, J)
    if I.is_zero:
        return J
    if J.is_zero:
        return I
    both = np.concatenate([I.gens.astype(object) if J.gens.dtype == object else I.gens,
                           J.gens.astype(object) if I.gens.dtype == object else J.gens])
    return MonomialIdeal(I.dim, both)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Minimalized product; candidates are streamed through a height map."""
    _check_dims(I, J)
    n = I.dim
    if I.is_zero or J.is_zero:
        return zero_ideal(n)
    A, B = I.gens, J.gens
    if len(A) < len(B):
        A, B = B, A
    fast = A.dtype != object and B.dtype != object
    if fast:
        top = A.max(axis=0) + B.max(axis=0)
        fast = int(top.max()) < _FAST_LIMIT and _HeightMap.fits(top)
    if not fast:
        cand = (A.astype(object)[:, None, :] + B.astype(object)[None, :, :]).reshape(-1, n)
        return MonomialIdeal._trusted(n, _minimal_sparse(cand))
    hm = _HeightMap(top)
    step = max(1, PRODUCT_CHUNK // len(B))
    for lo in range(0, len(A), step):
        hm.add((A[lo:lo + step, None, :] + B[None, :, :]).reshape(-1, n))
    return MonomialIdeal._trusted(n, _canonical(hm.minimal_rows()))


class PowerCache:
    """Every power of a fixed base ideal computed so far.

    ``powers[t]`` is built as ``powers[t-1] * base``.  Reads are lock-free;
    extension happens under a lock and the first stored value wins.
    """

    def __init__(self, base: MonomialIdeal):
        self.base = base
        self.powers: dict[int, MonomialIdeal] = {0: unit_ideal(base.dim), 1: base}
        self._lock = threading.Lock()

    def __getitem__(self, t: int) -> MonomialIdeal:
        return self.get(t)

    @property
    def highest(self) -> int:
        return max(self.powers)

    def get(self, t: int) -> MonomialIdeal:
        if t < 0:
            raise ValueError("power must be non-negative")
        got = self.powers.get(t)
        if got is not None:
            return got
        while True:
            top = self.highest
            if top >= t:
                return self.powers[t]
            nxt = product(self.powers[top], self.base)
            with self._lock:
                self.powers.setdefault(top + 1, nxt)


def power(I: MonomialIdeal, m: int, cache: PowerCache | None = None) -> MonomialIdeal:
    if m < 0:
        raise ValueError("power must be non-negative")
    if cache is None:
        cache = PowerCache(I)
    elif cache.base != I:
        raise ValueError("cache belongs to a different ideal")
    return cache.get(m)


def boxed_ideal(a: Sequence[int]) -> MonomialIdeal:
    """The pure-power ideal (x1^a1, ..., xn^an)."""
    a = [int(v) for v in a]
    if not a or any(v <= 0 for v in a):
        raise ValueError(f"pure powers must be positive, got {a}")
    n = len(a)
    return MonomialIdeal(n, np.diag(np.array(a, dtype=np.int64)))


def _compositions(q: int, n: int) -> np.ndarray:
    rows = []
    for bars in itertools.combinations(range(q + n - 1), n - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(q + n - 1 - prev - 1)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def max_ideal_power(n: int, q: int) -> MonomialIdeal:
    """All monomials of degree q in n variables."""
    if n < 1 or q < 1:
        raise ValueError("need n >= 1 and q >= 1")
    return MonomialIdeal._trusted(n, _canonical(_compositions(q, n)))


def truncate_below(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """Subideal generated by the minimal generators of degree <= d."""
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    keep = I.degrees <= d
    return MonomialIdeal._trusted(I.dim, I.gens[keep])


def is_m_primary(I: MonomialIdeal) -> bool:
    return all(p is not None for p in I.pure_powers())


def order(J: MonomialIdeal, u: Sequence[int], cache: PowerCache | None = None) -> int:
    """Largest t with u in J^t."""
    if J.is_zero:
        raise UndefinedOrder("order with respect to the zero ideal is undefined")
    if J.is_unit:
        raise UndefinedOrder("order with respect to the unit ideal is infinite")
    if len(u) != J.dim:
        raise DimensionMismatch(f"monomial has {len(u)} variables, ideal {J.dim}")
    if cache is None:
        cache = PowerCache(J)
    deg = sum(u)
    t = 0
    # J^t is generated in degree >= t, so t never exceeds deg u
    while t < deg and contains_monomial(cache.get(t + 1), u):
        t += 1
    return t
