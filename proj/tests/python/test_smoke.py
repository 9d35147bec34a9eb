import math

import numpy as np
import pytest

import svdd_bw


def two_clusters(n, seed):
    rng = np.random.default_rng(seed)
    centers = np.where(np.arange(n) % 2 == 0, -3.0, 3.0)
    return np.column_stack([centers + 0.5 * rng.standard_normal(n), 0.5 * rng.standard_normal(n)])


def test_mean_criterion_two_points():
    s = svdd_bw.mean_criterion(np.array([[0.0, 0.0], [1.0, 0.0]]))
    assert s == pytest.approx(1.0 / math.sqrt(math.log(1.0 / 2e-12)), rel=1e-12)


def test_median_criteria():
    x = np.array([[0.0], [1.0], [2.0]])
    assert svdd_bw.median2_criterion(x) == pytest.approx(1.0 / math.sqrt(2.0))
    assert svdd_bw.median_criterion(x) == pytest.approx(1.0 / math.sqrt(math.log(2.0 / 2e-12)), rel=1e-12)


def test_weighted_equal_weights_match_mean():
    x = np.random.default_rng(1).normal(size=(40, 3))
    w = [2.0] * 40
    assert svdd_bw.weighted_mean_criterion(x, w) == pytest.approx(svdd_bw.mean_criterion(x), rel=1e-12)


def test_kernel_matrix_is_symmetric_with_unit_diagonal():
    x = np.random.default_rng(2).normal(size=(15, 2))
    k = svdd_bw.kernel_matrix(x, 0.8)
    assert k.shape == (15, 15)
    np.testing.assert_array_equal(k, k.T)
    np.testing.assert_array_equal(np.diag(k), np.ones(15))


def test_two_point_model():
    m = svdd_bw.train(np.array([[0.0, 0.0], [1.0, 0.0]]), f=0.5, bandwidth=1.0)
    assert m.threshold == pytest.approx(0.5 * (1 - math.exp(-0.5)), rel=1e-9)
    assert m.n_support == 2
    assert m.positions == ["boundary", "boundary"]
    out = m.is_outlier(np.array([[0.0, 0.0], [40.0, 0.0]]))
    assert out.tolist() == [False, True]


def test_score_grid_shape_and_save_load(tmp_path):
    x = two_clusters(120, 3)
    m = svdd_bw.train(x)
    grid = m.score_grid(resolution=50)
    assert grid.shape == (2500, 4)
    path = tmp_path / "model.txt"
    m.save(path)
    back = svdd_bw.Model.load(path)
    probe = np.random.default_rng(4).uniform(-8, 8, size=(200, 2))
    np.testing.assert_array_equal(m.distance2(probe), back.distance2(probe))


def test_errors_carry_a_kind():
    with pytest.raises(svdd_bw.SvddError) as info:
        svdd_bw.mean_criterion(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert info.value.kind == "DegenerateData"
    with pytest.raises(ValueError):
        svdd_bw.train(np.array([[0.0], [1.0]]), f=1.5)


def test_grid_search_prefers_sane_bandwidth():
    x = two_clusters(200, 5)
    inl = two_clusters(200, 6)
    out = np.random.default_rng(7).uniform(-8, 8, size=(400, 2))
    out = out[np.minimum(np.hypot(out[:, 0] + 3, out[:, 1]), np.hypot(out[:, 0] - 3, out[:, 1])) > 2.5][:200]
    ev = np.vstack([inl, out])
    labels = [0] * len(inl) + [1] * len(out)
    r = svdd_bw.bandwidth_grid_search(x, ev, labels)
    assert len(r["grid"]) == 21
    assert r["best_f1"] > 0.9
    assert svdd_bw.f1_score(2, 1, 1) == pytest.approx(4 / 6)


def test_polygon_and_small_simulation():
    p = svdd_bw.generate_polygon(6, seed=3)
    assert p.contains(0.0, 0.0)
    pts = p.sample(50, seed=1)
    assert all(p.contains(a, b) for a, b in pts)
    rep = svdd_bw.run_simulation([5], polygons_per_count=2, n_sample=80, s_grid_size=4, resolution=30, seed=9)
    assert len(rep["polygons"]) == 2
    for r in rep["polygons"]:
        assert not r["failed"]
        assert r["ratio_mean"] <= 1.0
        assert r["ratio_median"] <= 1.0
