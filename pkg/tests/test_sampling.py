import math
from fractions import Fraction as F

import pytest

from graphlim import (
    ConvergenceReport,
    SizeStats,
    blowup,
    constant,
    convergence_experiment,
    density_exact,
    density_graph,
    describe_graph,
    multigraph,
    sample_wrandom,
    step_graphon,
    to_csv,
)
from graphlim.corpus import (
    complete_graph,
    cycle_graph,
    graphon_corpus,
    path_graph,
    star_graph,
)
from graphlim.sampling import _exact_median

B = step_graphon(["1/2", "1/2"], [["0", "1"], ["1", "0"]])
K2 = complete_graph(2)


def test_sample_is_deterministic_and_seed_sensitive():
    g1 = sample_wrandom(B, 40, 7)
    assert g1 == sample_wrandom(B, 40, 7)
    assert g1 != sample_wrandom(B, 40, 8)
    assert g1.node_count == 40 and g1.is_simple and g1.is_unlabeled


def test_growing_n_extends_the_sample():
    small = sample_wrandom(B, 50, 7)
    big = sample_wrandom(B, 80, 7)
    kept = {(u, v) for u, v, _ in big.edges if u < 50 and v < 50}
    assert {(u, v) for u, v, _ in small.edges} == kept


def test_sample_corner_cases():
    empty = sample_wrandom(constant(F(0)), 30, 1)
    assert len(empty.edges) == 0
    full = sample_wrandom(constant(F(1)), 30, 1)
    assert len(full.edges) == 30 * 29 // 2
    lone = sample_wrandom(B, 1, 3)
    assert lone.node_count == 1 and len(lone.edges) == 0


def test_sample_validation():
    with pytest.raises(ValueError, match="at least 1"):
        sample_wrandom(B, 0, 1)
    wide = step_graphon(
        ["1/2", "1/2"], [["0", "2"], ["2", "0"]], value_range=("0", "2")
    )
    with pytest.raises(ValueError, match="edge probability"):
        sample_wrandom(wide, 5, 1)


def test_sample_edge_rate_tracks_density():
    # E[t(K2, G_n)] = (n-1)/n * t(K2, H); check a 4 sigma band
    n, trials = 60, 500
    t = float(density_exact(K2, B).exact)
    mean_target = (n - 1) / n * t
    values = [
        float(density_graph(K2, sample_wrandom(B, n, seed)).exact)
        for seed in range(trials)
    ]
    mean = math.fsum(values) / trials
    var = math.fsum((v - mean) ** 2 for v in values) / (trials - 1)
    assert abs(mean - mean_target) < 4 * math.sqrt(var / trials)


def test_sample_respects_block_structure():
    # bipartite kernel: no edges inside a block class
    g = sample_wrandom(B, 200, 11)
    d = float(density_graph(cycle_graph(3), g).exact)
    assert d == 0.0


def test_exact_median():
    assert _exact_median([F(3), F(1), F(2)]) == F(2)
    assert _exact_median([F(1), F(2), F(3), F(10)]) == F(5, 2)
    assert _exact_median([F(7)]) == F(7)


def test_size_stats_validation():
    with pytest.raises(ValueError):
        SizeStats(10, 0, F(0), F(0))
    with pytest.raises(ValueError):
        SizeStats(10, 5, F(-1), F(0))


def test_convergence_experiment_shape_and_determinism():
    r = convergence_experiment(B, K2, [20, 40, 80], 6, 3)
    assert isinstance(r, ConvergenceReport)
    assert r.target == F(1, 2)
    assert [s.n for s in r.stats] == [20, 40, 80]
    assert all(s.rep_count == 6 for s in r.stats)
    assert all(s.max_err >= s.median_err for s in r.stats)
    again = convergence_experiment(B, K2, [20, 40, 80], 6, 3)
    assert r == again


def test_convergence_errors_shrink():
    r = convergence_experiment(B, K2, [30, 120, 480], 15, 5)
    meds = r.medians()
    assert meds[0] > meds[-1]
    assert r.monotone_decreasing()


def test_convergence_validation():
    with pytest.raises(ValueError, match="simple unlabeled"):
        convergence_experiment(B, multigraph(2, [(0, 1, 2)]), [10], 2, 0)
    with pytest.raises(ValueError, match="at least 1"):
        convergence_experiment(B, K2, [10], 0, 0)
    with pytest.raises(ValueError, match="at least one size"):
        convergence_experiment(B, K2, [], 2, 0)
    with pytest.raises(ValueError, match="smaller than the motif"):
        convergence_experiment(B, cycle_graph(4), [3], 2, 0)


def test_describe_graph_names():
    assert describe_graph(complete_graph(4)) == "K4"
    assert describe_graph(complete_graph(2)) == "K2"
    assert describe_graph(cycle_graph(5)) == "C5"
    assert describe_graph(path_graph(4)) == "P4"
    assert describe_graph(star_graph(4)) == "S4"
    paw = multigraph(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)])
    assert describe_graph(paw) == "g4n4e"


def test_to_csv_layout():
    r = convergence_experiment(B, K2, [20, 40], 4, 9)
    lines = to_csv(r).splitlines()
    assert lines[0] == "motif,n,rep_count,median_err,max_err"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "K2" and first[1] == "20" and first[2] == "4"
    assert float(first[3]) == pytest.approx(float(r.stats[0].median_err))


def test_blowup_samples_share_distribution():
    # same seed, weakly isomorphic graphons, identical node block marginals
    g1 = sample_wrandom(B, 400, 21)
    g2 = sample_wrandom(blowup(B, 2), 400, 21)
    d1 = float(density_graph(K2, g1).exact)
    d2 = float(density_graph(K2, g2).exact)
    assert abs(d1 - d2) < 0.1
