import csv
import io
from fractions import Fraction

import pytest

from lcislab import harness
from lcislab.errors import ParameterError
from lcislab.harness import LEMMAS, bench, rows_to_csv, verify_lemma

SMALL = {
    "inflation": {"trials": 20},
    "sep-len": {"k_max": 4},
    "sep-lcis": {"k_max": 2},
    "hat-suffix": {"k_max": 2},
    "vector-gadget": {"d_max": 2},
    "coordinate-gadget": {"d_max": 1},
    "combiner": {"trials": 10},
    "thm1": {"trials": 10, "n_max": 4, "d_max": 3},
    "thm2": {"trials": 10},
    "thm3": {"trials": 3, "n_max": 2, "d_max": 2},
    "k-sep": {"levels_max": 1, "pair_levels": 3},
    "thm4": {"trials": 5},
    "obs1": {"trials": 20},
    "dp-k": {"trials": 20, "dp2_trials": 5},
    "approx": {"trials": 30},
    "bp-sat": {"per_shape": 1, "family": [(2, 2, 0), (3, 2, 1), (2, 1, 2)]},
    "solvers": {"trials": 30},
}


def test_every_lemma_has_a_small_budget():
    assert set(SMALL) == set(LEMMAS)
    for name in ("inflation", "sep-len", "sep-lcis", "hat-suffix", "vector-gadget",
                 "coordinate-gadget", "combiner", "thm1", "thm2", "thm3", "thm4",
                 "obs1", "bp-sat", "dp-k", "approx"):
        assert name in LEMMAS


@pytest.mark.parametrize("name", sorted(SMALL))
def test_small_grids_pass(name):
    rep = verify_lemma(name, SMALL[name], seed=7)
    assert rep.ok, rep.summary()
    assert rep.instances > 0 and rep.seed == 7
    assert rep.summary().startswith(f"PASS {name}:")


def test_sep_lcis_counts_all_prefix_pairs():
    rep = verify_lemma("sep-lcis", {"k_max": 4})
    assert rep.ok
    # sum_k 4^k prefix pairs plus one shifted row per prefix of A
    assert rep.instances == sum(4**k for k in range(5)) + sum(2**k for k in range(5))


def test_unknown_and_bad_budget():
    with pytest.raises(ParameterError):
        verify_lemma("thm9")
    with pytest.raises(ParameterError):
        verify_lemma("inflation", {"bogus": 1})


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("LCISLAB_SEED", "99")
    assert harness.default_seed() == 99
    assert verify_lemma("obs1", {"trials": 4}).seed == 99
    monkeypatch.delenv("LCISLAB_SEED")
    assert harness.default_seed() == harness.DEFAULT_SEED


def test_report_deterministic():
    a = verify_lemma("thm1", {"trials": 5, "n_max": 3}, seed=3)
    b = verify_lemma("thm1", {"trials": 5, "n_max": 3}, seed=3)
    assert (a.instances, a.stats) == (b.instances, b.stats)


def test_report_failure_rendering():
    rep = harness.Report("demo", 1, {})
    rep.check(False, lambda: "broken cell")
    assert not rep.ok and "failure: broken cell" in rep.summary()


def test_bench_dp2_matching_agree():
    rows = bench(("dp2", "matching"), "sparse", (30, 60), repetitions=2, seed=1)
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], set()).add(r["result"])
        assert r["result"] == r["exact"]
    assert all(len(v) == 1 for v in by_n.values())


def test_bench_dpk_stable():
    rows = bench(("dpk",), "dense", (20, 40), repetitions=3, seed=2, k=3)
    assert all(r["stable"] == 1 and r["k"] == 3 for r in rows)


def test_bench_approx_ratio():
    eps = Fraction(1, 2)
    rows = bench(("approx",), "planted", (50, 100), repetitions=1, seed=3, eps=eps)
    assert all(r["ratio"] >= 1 / (1 + eps) for r in rows)


def test_bench_csv_and_errors():
    text = rows_to_csv(bench(("dp2",), "uniform", (10,), repetitions=1, seed=4))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["solver"] == "dp2" and set(rows[0]) >= {"solver", "n", "median_s", "result"}
    with pytest.raises(ParameterError):
        bench(("nope",), "sparse", (10,))
    with pytest.raises(ParameterError):
        bench(("dp2",), "sparse", (10,), k=3)
