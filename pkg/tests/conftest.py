"""Brute-force oracles and shared strategies.

The oracles work on plain tuples with itertools and never touch the array
code they are compared against.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from regdefect import MonomialIdeal

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# oracles


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def bf_minimal(gens):
    gens = {tuple(g) for g in gens}
    return sorted(g for g in gens if not any(h != g and divides(h, g) for h in gens))


def bf_contains(gens, u):
    return any(divides(g, u) for g in gens)


def bf_product(A, B):
    return bf_minimal(tuple(a + b for a, b in zip(g, h)) for g in A for h in B)


def bf_power(gens, m, n):
    out = [tuple([0] * n)]
    for _ in range(m):
        out = bf_product(out, gens)
    return out


def bf_box(gens, n):
    """Exponent box large enough to contain all standard monomials."""
    tops = []
    for i in range(n):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(n) if j != i)]
        tops.append(min(pure))
    return tops


def bf_standard(gens, n):
    tops = bf_box(gens, n)
    return [u for u in itertools.product(*(range(t) for t in tops)) if not bf_contains(gens, u)]


def bf_socle(gens, n):
    out = []
    for u in bf_standard(gens, n):
        if all(bf_contains(gens, tuple(v + (j == i) for j, v in enumerate(u))) for i in range(n)):
            out.append(u)
    return sorted(out)


def bf_reg(gens, n):
    return 1 + max(sum(u) for u in bf_standard(gens, n))


def bf_witness(gens, n):
    top = bf_reg(gens, n) - 1
    return sorted(u for u in bf_standard(gens, n) if sum(u) == top)


def as_tuples(I: MonomialIdeal):
    return sorted(tuple(int(v) for v in g) for g in I.gens.tolist())


# ---------------------------------------------------------------------------
# strategies


@st.composite
def primary_ideals(draw, max_n=3, max_pure=4, max_extra=4, min_n=1):
    """m-primary ideals: pure powers plus a few monomials from the box below them."""
    n = draw(st.integers(min_n, max_n))
    pure = draw(st.lists(st.integers(1, max_pure), min_size=n, max_size=n))
    box = st.tuples(*(st.integers(0, p - 1) for p in pure))
    extra = draw(st.lists(box, max_size=max_extra))
    gens = [tuple(p if j == i else 0 for j in range(n)) for i, p in enumerate(pure)]
    gens += [u for u in extra if any(u)]
    return MonomialIdeal(n, gens), gens


@st.composite
def monomial_lists(draw, n, max_exp=4, max_size=5, min_size=1):
    rows = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * n),
                         min_size=min_size, max_size=max_size))
    return rows


@pytest.fixture
def xy_squares():
    return MonomialIdeal(2, [(2, 0), (0, 2)])
