import math
import os
import subprocess
from fractions import Fraction

import pytest

import nnstat


def test_pmf_exact_fractions():
    assert nnstat.pmf_reflexive(4) == {1: Fraction(2, 3), 2: Fraction(1, 3)}
    assert nnstat.pmf_reflexive(3) == {1: Fraction(1)}
    pmf = nnstat.pmf_reflexive(30)
    assert sum(pmf.values()) == 1
    assert sum(k * p for k, p in pmf.items()) == Fraction(30, 3)
    assert nnstat.brute_force_pmf_reflexive(7) == nnstat.pmf_reflexive(7)
    assert nnstat.enns_recurrence_pmf(12) == nnstat.pmf_reflexive(12)


def test_moments():
    assert nnstat.mean_reflexive(300) == Fraction(100)
    assert nnstat.var_reflexive(5) == Fraction(2, 9)
    assert nnstat.mean_shared(4) == Fraction(1)
    assert nnstat.var_shared(240) == Fraction(19)
    mean, var = nnstat.brute_force_moments_shared(8)
    assert mean == Fraction(2)
    assert var == Fraction(19 * 8, 240)
    assert nnstat.covariance_reflexive_indicators(1, 2, 8) == Fraction(-1, 6)
    assert nnstat.covariance_shared_indicators(2, 5, 8) == Fraction(1, 48)


def test_pair_counts():
    counts = nnstat.pair_counts([0.1, 0.2, 0.5, 0.9])
    assert counts.reflexive == 1
    assert counts.shared == 1
    assert counts.indegree_classes == {0: 1, 1: 2, 2: 1}

    counts2d = nnstat.pair_counts([[0, 0], [1, 0], [5, 5]])
    assert counts2d.reflexive == 1
    assert counts2d.shared == 1

    g = nnstat.build_nn_digraph([0.1, 0.2, 0.5, 0.9])
    assert list(g.nn_index) == [1, 0, 1, 2]
    assert not g.tie_flag

    with pytest.raises(ValueError):
        nnstat.pair_counts([0.5, 0.5])


def test_permutation_statistics():
    assert nnstat.rank_permutation([0.4, 0.1, 0.3]) == [3, 1, 2]
    assert nnstat.reflexive_indicator_count([6, 4, 1, 3, 5, 2]) == 2
    assert nnstat.shared_indicator_count([1, 2, 3]) == 1
    assert nnstat.longest_alternating_subsequence([6, 4, 1, 3, 5, 2]) == 4
    assert nnstat.local_extrema_counts([6.0, 4.0, 1.0, 3.0, 5.0, 2.0]) == (1, 1)
    with pytest.raises(ValueError):
        nnstat.rank_permutation([0.2, 0.2])


def test_simulation_deterministic():
    a = nnstat.run_simulation(n=200, reps=1500, seed=42, threads=1)
    b = nnstat.run_simulation(n=200, reps=1500, seed=42, threads=4)
    assert a.mean_R == b.mean_R
    assert a.var_Q == b.var_Q
    assert abs(a.mean_R - 200 / 3) < 5 * a.se_mean_R

    two = nnstat.run_simulation(n=2, reps=50, seed=0)
    assert two.mean_R == 1.0


def test_trace_and_constants():
    trace = nnstat.slln_trace(5000, seed=0)
    assert trace[0] == (2, 0.5, 0.0)
    assert trace[-1][0] == 5000
    assert abs(trace[-1][1] - 1 / 3) < 0.05

    assert math.isclose(nnstat.reflexive_constant(3), 8 / 27, rel_tol=1e-12)
    assert nnstat.shared_constant(1) == (0.25, True)
    with pytest.raises(Exception):
        nnstat.shared_constant(6)


def test_inference():
    r = nnstat.exact_test_reflexive(4, 2, "greater")
    assert r.p_value_exact == Fraction(1, 3)
    assert r.expected == Fraction(4, 3)
    assert r.method == "exact"

    test, counts = nnstat.analyze([0.1, 0.2, 0.5, 0.9], "greater")
    assert test.observed == 1
    assert counts.shared == 1

    with pytest.raises(nnstat.DegenerateDataError):
        nnstat.analyze([0.25 * i for i in range(10)], "less")

    n = nnstat.normal_approx_test_reflexive(300, 120, "greater")
    assert n.warning
    assert abs(n.p_value - nnstat.exact_test_reflexive(300, 120, "greater").p_value) < 0.01


def test_cli_available():
    cli = os.environ.get("NNSTAT_CLI")
    if not cli:
        pytest.skip("NNSTAT_CLI not set")
    out = subprocess.run([cli, "pmf", "--n", "4", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert '"2/3"' in out.stdout
