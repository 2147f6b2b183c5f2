import numpy as np
import pytest

from kpath import gf2e, paths
from kpath.errors import ExtractionError, ParameterError, UnsupportedError
from kpath.graph import Graph, complete_graph, generate_instance, is_simple_path, path_graph, star_graph
from kpath.oracle import brute_force_kpath, count_k_walks
from kpath.paths import detect, detect_trial, find, held_karp_path, t_inner, trial_outcomes, walk_sum
from kpath.rng import RngStream


def rate(g, k, trials=1000, seed=0):
    return trial_outcomes(g, k, trials, seed).mean()


def test_triangle_rate():
    assert rate(complete_graph(3), 3) >= 0.2


def test_star_never_has_four_path():
    assert not trial_outcomes(star_graph(3), 4, 1000, 1).any()


def test_path_graph_rates():
    g = path_graph(4)
    assert rate(g, 4) >= 0.2
    assert not trial_outcomes(g, 5, 200, 2).any()


def test_detect_trial_matches_stream_outcomes():
    g = generate_instance("random", 9, 0.4, 3)
    s = RngStream(4)
    want = trial_outcomes(g, 5, 20, s)
    got = [detect_trial(g, 5, s.child("detect", t)) for t in range(20)]
    assert list(want) == got


def test_outcomes_do_not_depend_on_batching(monkeypatch):
    g = generate_instance("random", 10, 0.4, 5)
    base = trial_outcomes(g, 6, 24, 7)
    monkeypatch.setattr(paths, "_BUDGET", 1)
    assert np.array_equal(trial_outcomes(g, 6, 24, 7), base)


def test_transform_and_linear_multiply_agree():
    g = generate_instance("random", 8, 0.5, 1)
    for t in range(30):
        # fresh streams: a stream object caches its generator state
        linear = detect_trial(g, 5, RngStream(2, ("x", t)), multiply="linear")
        assert linear == detect_trial(g, 5, RngStream(2, ("x", t)), multiply="transform")


def test_bit_sliced_accumulation_matches_direct():
    g = generate_instance("random", 9, 0.5, 4)
    for k, trials in ((3, 1), (6, 3), (9, 2)):
        spec = gf2e.field_for_k(k)
        layout = paths._Layout(g, k, spec.ell)
        gen = np.random.default_rng(k)
        z = gen.integers(0, spec.order, (trials, g.n, 1 << k)).astype(spec.dtype)
        y = gf2e.random_nonzero(spec, gen, size=(trials, layout.m))
        assert np.array_equal(paths._accumulate(spec, z, y, layout), paths._accumulate_direct(spec, z, y, layout))


def test_detect_examples():
    assert not detect(Graph.from_edges(5, []), 2).answer
    assert detect(complete_graph(3), 3).answer
    assert detect(generate_instance("hampath", 8, 0.0, 1), 8, trials=64).answer
    d = detect(path_graph(3), 1)
    assert d.answer and d.trials_used == 1
    assert not detect(path_graph(3), 4).answer


def test_detect_parameter_errors():
    with pytest.raises(ParameterError):
        detect(path_graph(3), 0)
    with pytest.raises(UnsupportedError):
        detect(path_graph(3), 63)
    with pytest.raises(ParameterError):
        detect(path_graph(3), 2, trials=0)


def test_detect_reports_seed_and_trials():
    d = detect(path_graph(6), 6, trials=64, seed=11)
    assert d.answer and 1 <= d.trials_used <= 64 and d.seed == 11
    assert detect(path_graph(6), 6, trials=64, seed=11) == d


def test_monotone_in_k():
    g = generate_instance("hampath", 9, 0.0, 2)
    assert all(detect(g, k, seed=k).answer for k in range(1, 10))


def test_directed_graphs():
    d = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4)], directed=True)
    assert detect(d, 4).answer
    assert find(d, 4) == [1, 2, 3, 4]
    back = Graph.from_edges(4, [(2, 1), (2, 3), (4, 3)], directed=True)
    assert not detect(back, 3).answer
    assert held_karp_path(back, 3) is None


def test_find_examples():
    assert find(path_graph(4), 4) in ([1, 2, 3, 4], [4, 3, 2, 1])
    p = find(complete_graph(3), 3)
    assert sorted(p) == [1, 2, 3] and is_simple_path(complete_graph(3), p)
    assert find(star_graph(3), 4) is None
    assert find(path_graph(3), 1) == [1]


def test_find_on_random_graphs():
    for seed in range(15):
        g = generate_instance("random", 10, 0.35, seed)
        for k in (4, 6):
            p = find(g, k, seed)
            assert (p is None) == (brute_force_kpath(g, k) is None)
            assert p is None or is_simple_path(g, p, k)


def test_find_retry_exhaustion(monkeypatch):
    monkeypatch.setattr(paths, "held_karp_path", lambda g, k: None)
    with pytest.raises(ExtractionError):
        find(complete_graph(4), 3, retries=2)


def test_held_karp():
    assert held_karp_path(path_graph(4), 4) in ([1, 2, 3, 4], [4, 3, 2, 1])
    assert held_karp_path(star_graph(3), 4) is None
    assert held_karp_path(path_graph(3), 5) is None
    with pytest.raises(UnsupportedError):
        held_karp_path(path_graph(26), 3)
    for seed in range(30):
        g = generate_instance("random", 7, 0.3, seed)
        for k in range(1, 8):
            p = held_karp_path(g, k)
            assert (p is None) == (brute_force_kpath(g, k) is None)
            assert p is None or is_simple_path(g, p, k)


def test_t_inner():
    assert t_inner(2) == 32
    assert t_inner(1024) == 80


def test_walk_sum():
    assert walk_sum(complete_graph(3), 3) == 12
    for seed in range(10):
        g = generate_instance("random", 8, 0.4, seed)
        for k in range(1, 6):
            assert walk_sum(g, k) == count_k_walks(g, k)
