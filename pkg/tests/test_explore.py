import json

import numpy as np
import pytest

from regdefect.explore import (
    ExplorerConfig,
    explore,
    first_difference_probe,
    random_ideal,
    run_sample,
    summarize,
)
from regdefect.monomial import is_m_primary


def test_random_ideal_shape():
    cfg = ExplorerConfig(pure_range=(2, 5), extra_range=(3, 3), extra_degree=(3, 6))
    for i in range(40):
        I = random_ideal(np.random.default_rng([5, i]), cfg)
        assert 2 <= I.dim <= 4 and is_m_primary(I)
        pure = I.pure_powers()
        assert all(2 <= p <= 5 for p in pure)
        for g in I.gens.tolist():
            if sum(1 for v in g if v) > 1:
                assert 3 <= sum(g) <= 6
                assert all(v < p for v, p in zip(g, pure))


def test_shifted_candidates():
    cfg = ExplorerConfig(pure_range=(3, 5), extra_range=(2, 2), shifted_fraction=1.0)
    for i in range(30):
        I = random_ideal(np.random.default_rng([6, i]), cfg)
        pure = I.pure_powers()
        for g in I.gens.tolist():
            support = [k for k, v in enumerate(g) if v]
            if len(support) > 1:
                assert sorted(g[k] for k in support) == [1, pure[max(support, key=lambda k: g[k])] - 1]
    with pytest.raises(ValueError):
        ExplorerConfig(shifted_fraction=1.5)


def test_samples_reproduce_individually():
    cfg = ExplorerConfig(seed=4, samples=6)
    recs = list(explore(cfg))
    assert json.dumps(run_sample(3, cfg)) == json.dumps(recs[3])


def test_worker_pool_keeps_order_and_content():
    serial = list(explore(ExplorerConfig(seed=9, samples=8)))
    pooled = list(explore(ExplorerConfig(seed=9, samples=8, workers=2)))
    assert json.dumps(serial) == json.dumps(pooled)


def test_thread_override(monkeypatch):
    monkeypatch.setenv("REGDEFECT_THREADS", "2")
    pooled = list(explore(ExplorerConfig(seed=2, samples=4)))
    monkeypatch.delenv("REGDEFECT_THREADS")
    assert json.dumps(pooled) == json.dumps(list(explore(ExplorerConfig(seed=2, samples=4))))


def test_first_difference_probe():
    assert first_difference_probe([1, 2, 2, 1])["weakly_decreasing"]
    probe = first_difference_probe([0, 3, 4, 6, 6])
    assert probe["differences"] == [3, 1, 2] and not probe["weakly_decreasing"]
    assert first_difference_probe([3, 2, 1])["prefix_length"] == 1


def test_summary_counts_and_budget():
    cfg = ExplorerConfig(seed=1, samples=10, max_generators=30)
    recs = list(explore(cfg))
    s = summarize(recs)
    assert s.samples == 10
    assert s.budget_exhausted == sum(r["budget_exhausted"] for r in recs) > 0
    assert s.violations == 0
    rec = s.to_record()
    assert rec["record"] == "summary" and rec["violations"] == 0


def test_config_validation():
    with pytest.raises(ValueError):
        ExplorerConfig(checkers=("nope",))
    with pytest.raises(ValueError):
        ExplorerConfig(n_range=(3, 2))
    with pytest.raises(ValueError):
        ExplorerConfig(pure_range=(0, 3))
