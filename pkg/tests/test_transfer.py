import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emotransfer.clustering import ClusterModel, fit_em
from emotransfer.colorspace import LAB_MAX, LAB_MIN, in_lab_box
from emotransfer.scheme import ColorCombination
from emotransfer.transfer import (
    ConvergenceWarning, apply_shifts, gradient_energy, gradient_mismatch,
    neg_laplacian, preserve_gradient, solve_box_shifts, solve_shifts,
    transfer_combination, transfer_single_color,
)

from oracles import (dense_operator, dense_screened_poisson, grid_search_shifts,
                     random_shift_instance, relative_residual)


def _model(means, bmin, bmax, weights=(0.5, 0.3, 0.2), assignments=None):
    means = np.asarray(means, float)
    if assignments is None:
        assignments = np.zeros((1, 1), int)
    return ClusterModel(np.asarray(weights, float), means, np.repeat(np.eye(3)[None], 3, 0),
                        assignments, np.asarray(bmin, float), np.asarray(bmax, float))


def _one_cluster(mean, lo, hi, target):
    """Cluster 0 set up as given; clusters 1 and 2 already on their targets."""
    means = np.array([mean, [50, 0, 0], [50, 0, 0]], float)
    bmin = np.array([lo, [50, 0, 0], [50, 0, 0]], float)
    bmax = np.array([hi, [50, 0, 0], [50, 0, 0]], float)
    targets = np.array([target, [50, 0, 0], [50, 0, 0]], float)
    return means, bmin, bmax, targets


# -- solve_shifts ------------------------------------------------------------

def test_target_equal_to_means_gives_zero():
    means = np.array([[50.0, 0, 0], [30, 10, -10], [70, -5, 5]])
    sol = solve_shifts(_model(means, means - 5, means + 5), ColorCombination.from_array(means))
    np.testing.assert_array_equal(sol.deltas, 0)
    assert sol.objective == 0


def test_shift_reaches_target_inside_range():
    means, bmin, bmax, targets = _one_cluster([50, 0, 0], [40, -5, -5], [60, 5, 5], [90, 0, 0])
    sol = solve_box_shifts(means, [0.5, 0.3, 0.2], bmin, bmax, targets)
    assert sol.deltas[0, 0] == pytest.approx(40)
    assert sol.achieved_targets[0, 0] == pytest.approx(90)
    oracle, obj = grid_search_shifts(means, [0.5, 0.3, 0.2], bmin, bmax, targets)
    np.testing.assert_allclose(sol.deltas, oracle, atol=1e-9)
    assert abs(sol.objective - obj) <= 1e-6


def test_shift_limited_by_cluster_extent():
    means, bmin, bmax, targets = _one_cluster([50, 0, 0], [5, -5, -5], [95, 5, 5], [100, 0, 0])
    sol = solve_box_shifts(means, [0.5, 0.3, 0.2], bmin, bmax, targets)
    assert sol.deltas[0, 0] == pytest.approx(5)
    assert sol.achieved_targets[0, 0] == pytest.approx(55)
    _, obj = grid_search_shifts(means, [0.5, 0.3, 0.2], bmin, bmax, targets)
    assert abs(sol.objective - obj) <= 1e-6
    assert sol.objective == pytest.approx(0.5 * 45 ** 2)


def test_empty_interval_zero_shift_with_warning():
    means, bmin, bmax, targets = _one_cluster([50, 0, 0], [-10, -5, -5], [110, 5, 5], [80, 0, 0])
    with pytest.warns(RuntimeWarning, match="exceeds the Lab box"):
        sol = solve_box_shifts(means, [0.5, 0.3, 0.2], bmin, bmax, targets)
    assert sol.infeasible[0, 0] and sol.infeasible.sum() == 1
    assert sol.deltas[0, 0] == 0


def test_matches_grid_oracle_on_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(100):
        means, w, bmin, bmax, targets = random_shift_instance(rng)
        sol = solve_box_shifts(means, w, bmin, bmax, targets)
        _, obj = grid_search_shifts(means, w, bmin, bmax, targets)
        assert abs(sol.objective - obj) <= 1e-6


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-300, 300), st.floats(-300, 300))
def test_box_constraints_hold_exactly(seed, t1, t2):
    rng = np.random.default_rng(seed)
    lo = rng.uniform(LAB_MIN, LAB_MAX, (3, 3))
    hi = rng.uniform(LAB_MIN, LAB_MAX, (3, 3))
    bmin, bmax = np.minimum(lo, hi), np.maximum(lo, hi)
    means = (bmin + bmax) / 2
    targets = rng.uniform(-300, 300, (3, 3))
    targets[0, 0], targets[2, 1] = t1, t2
    sol = solve_box_shifts(means, [0.6, 0.3, 0.1], bmin, bmax, targets)
    assert np.all(LAB_MIN <= bmin + sol.deltas)
    assert np.all(bmax + sol.deltas <= LAB_MAX)
    assert sol.objective >= 0
    np.testing.assert_array_equal(sol.achieved_targets, means + sol.deltas)
    # no feasible point does better
    for _ in range(20):
        d = rng.uniform(LAB_MIN - bmin, LAB_MAX - bmax)
        assert sol.objective <= np.dot([0.6, 0.3, 0.1],
                                       np.sum((means + d - targets) ** 2, axis=1)) + 1e-9


def test_weights_scale_objective_not_shifts():
    rng = np.random.default_rng(2)
    means, w, bmin, bmax, targets = random_shift_instance(rng)
    a = solve_box_shifts(means, w, bmin, bmax, targets)
    b = solve_box_shifts(means, [1 / 3] * 3, bmin, bmax, targets)
    np.testing.assert_array_equal(a.deltas, b.deltas)


# -- apply_shifts ------------------------------------------------------------

def test_zero_shift_is_identity(three_blocks):
    model = fit_em(three_blocks)
    sol = solve_shifts(model, ColorCombination.from_array(model.means))
    np.testing.assert_array_equal(apply_shifts(three_blocks, model, sol), three_blocks)


def test_uniform_translation():
    rng = np.random.default_rng(0)
    img = rng.uniform([20, -10, -10], [60, 10, 10], (6, 7, 3))
    m = _model(np.tile(img.reshape(-1, 3).mean(0), (3, 1)),
               np.tile(img.reshape(-1, 3).min(0), (3, 1)),
               np.tile(img.reshape(-1, 3).max(0), (3, 1)),
               weights=(1, 0, 0), assignments=np.zeros((6, 7), int))
    sol = solve_box_shifts(m.means, m.weights, m.bounds_min, m.bounds_max,
                           m.means + [10, 0, 0])
    out = apply_shifts(img, m, sol)
    np.testing.assert_allclose(out[..., 0] - img[..., 0], 10, atol=1e-12)
    np.testing.assert_array_equal(out[..., 1:], img[..., 1:])


def test_blocks_move_by_their_own_shift(three_blocks, block_colors):
    model = fit_em(three_blocks)
    targets = block_colors + np.array([[5, -3, 2], [-8, 4, 0], [1, 1, -6]])
    sol = solve_shifts(model, ColorCombination.from_array(targets))
    np.testing.assert_allclose(sol.deltas, targets - block_colors, atol=1e-9)
    out = apply_shifts(three_blocks, model, sol)
    for k in range(3):
        sel = np.all(three_blocks == block_colors[k], axis=2)
        np.testing.assert_array_equal(out[sel], three_blocks[sel] + sol.deltas[k])


def test_apply_shifts_stays_in_box_for_extreme_targets(block_colors):
    rng = np.random.default_rng(4)
    img = np.clip(rng.normal(block_colors[rng.integers(0, 3, (30, 30))], 8), LAB_MIN, LAB_MAX)
    model = fit_em(img)
    for target in ([[100, 127, 127]] * 3, [[0, -128, -128]] * 3, [[150, 300, -300]] * 3):
        sol = solve_shifts(model, ColorCombination.from_array(target))
        assert in_lab_box(apply_shifts(img, model, sol)).all()


# -- preserve_gradient -------------------------------------------------------

def test_neg_laplacian_matches_dense_operator():
    rng = np.random.default_rng(0)
    u = rng.normal(size=(5, 7))
    L = dense_operator(5, 7, 1.0) - np.eye(35)
    np.testing.assert_allclose(neg_laplacian(u).ravel(), L @ u.ravel(), atol=1e-12)


def test_lambda_zero_returns_intermediate():
    rng = np.random.default_rng(1)
    I, Ip = rng.uniform(0, 100, (2, 9, 8, 3))
    np.testing.assert_array_equal(preserve_gradient(I, Ip, 0.0), Ip)


@pytest.mark.parametrize("lam", [0.5, 20, 100])
def test_constant_shift_is_fixed_point(lam):
    rng = np.random.default_rng(2)
    I = rng.uniform(0, 100, (12, 10, 3))
    Ip = I + np.array([3.0, -7.0, 12.0])
    np.testing.assert_allclose(preserve_gradient(I, Ip, lam), Ip, atol=1e-9)


@pytest.mark.parametrize("precondition", [True, False])
def test_matches_dense_solve(precondition):
    rng = np.random.default_rng(3)
    I, Ip = rng.uniform(0, 100, (2, 16, 16, 3))
    out = preserve_gradient(I, Ip, 20, precondition=precondition)
    ref, A = dense_screened_poisson(I, Ip, 20)
    assert np.max(np.abs(out - ref)) <= 1e-5
    assert relative_residual(A, A - np.eye(256), out, I, Ip) <= 1e-4


def test_non_square_and_single_row():
    rng = np.random.default_rng(5)
    for shape in ((1, 9, 3), (7, 1, 3), (5, 11, 3)):
        I, Ip = rng.uniform(0, 100, (2,) + shape)
        ref, _ = dense_screened_poisson(I, Ip, 20)
        np.testing.assert_allclose(preserve_gradient(I, Ip, 20), ref, atol=1e-6)


def test_energy_never_worse_than_intermediate():
    rng = np.random.default_rng(6)
    I, Ip = rng.uniform(0, 100, (2, 20, 24, 3))
    for lam in (1, 20, 100):
        out = preserve_gradient(I, Ip, lam)
        for c in range(3):
            assert (gradient_energy(out[..., c], I[..., c], Ip[..., c], lam)
                    <= gradient_energy(Ip[..., c], I[..., c], Ip[..., c], lam))


def test_translation_equivariance():
    rng = np.random.default_rng(7)
    I, Ip = rng.uniform(0, 100, (2, 14, 15, 3))
    c = np.array([4.0, -2.0, 9.0])
    np.testing.assert_allclose(preserve_gradient(I + c, Ip + c, 20),
                               preserve_gradient(I, Ip, 20) + c, atol=1e-7)


def test_lambda_trend_on_small_pair():
    rng = np.random.default_rng(8)
    I, Ip = rng.uniform(0, 100, (2, 24, 24, 3))
    mism = [gradient_mismatch(preserve_gradient(I, Ip, lam), I) for lam in (0, 1, 20, 100)]
    assert all(b <= a * (1 + 1e-9) for a, b in zip(mism, mism[1:]))


def test_non_convergence_warns_and_returns():
    rng = np.random.default_rng(9)
    I, Ip = rng.uniform(0, 100, (2, 16, 16, 3))
    with pytest.warns(ConvergenceWarning, match="relative residual"):
        out, rel, iters = preserve_gradient(I, Ip, 20, precondition=False, max_iter=3,
                                            return_info=True)
    assert out.shape == I.shape and np.all(iters == 3) and np.all(rel > 1e-9)


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        preserve_gradient(np.zeros((3, 3, 3)), np.zeros((3, 4, 3)))


def test_channels_solved_independently():
    rng = np.random.default_rng(10)
    I, Ip = rng.uniform(0, 100, (2, 10, 12, 3))
    joint = preserve_gradient(I, Ip, 20)
    for c in range(3):
        alone = preserve_gradient(np.repeat(I[..., c:c + 1], 3, 2),
                                  np.repeat(Ip[..., c:c + 1], 3, 2), 20)[..., 0]
        np.testing.assert_allclose(joint[..., c], alone, atol=1e-9)


# -- full combination and single-color baseline ------------------------------

def test_transfer_combination_shapes(three_blocks, block_colors):
    model = fit_em(three_blocks)
    cand = transfer_combination(three_blocks, model,
                                ColorCombination.from_array(block_colors[::-1]), 3)
    assert cand.combination_index == 3
    assert cand.intermediate.shape == cand.output.shape == three_blocks.shape
    assert in_lab_box(cand.intermediate).all()


def test_single_color_identity_and_constant():
    rng = np.random.default_rng(0)
    img = rng.uniform(0, 80, (5, 6, 3))
    mean = img.reshape(-1, 3).mean(0)
    combo = ColorCombination(mean, mean, mean)
    np.testing.assert_allclose(transfer_single_color(img, combo), img, atol=1e-12)
    const = np.full((3, 4, 3), 20.0)
    t = np.array([70.0, 5, -30])
    np.testing.assert_allclose(transfer_single_color(const, ColorCombination(t, t, t)),
                               np.broadcast_to(t, const.shape), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_single_color_mean_lands_on_dominant(seed):
    rng = np.random.default_rng(seed)
    img = rng.uniform(LAB_MIN, LAB_MAX, (rng.integers(1, 20), rng.integers(1, 20), 3))
    t = rng.uniform(LAB_MIN, LAB_MAX)
    out = transfer_single_color(img, ColorCombination(t, -t, t))
    np.testing.assert_allclose(out.reshape(-1, 3).mean(0), t, atol=1e-6)
    # no re-boxing: the baseline may leave the box
    np.testing.assert_allclose(out - img, np.broadcast_to(out[0, 0] - img[0, 0], img.shape),
                               atol=1e-9)


def test_rounding_at_box_face_is_absorbed():
    # 127 - b rounds so that b + (127 - b) lands one ulp above 127
    b = -120.77848385790695
    assert b + (127 - b) > 127
    means = np.array([[50.0, 0, b], [50, 0, 0], [50, 0, 0]])
    sol = solve_box_shifts(means, [0.6, 0.3, 0.1], means, means,
                           means + [[0, 0, 500], [0, 0, 0], [0, 0, 0]])
    assert means[0, 2] + sol.deltas[0, 2] <= 127
    assert sol.deltas[0, 2] == pytest.approx(127 - b, abs=1e-12)
