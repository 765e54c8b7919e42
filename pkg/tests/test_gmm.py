import numpy as np
import pytest
from scipy import integrate, stats

from clustering.gmm import Component, GmmFit, assign_components, component_responsibilities, fit_gmm_1d
from clustering.separation import t_two_sided_p_value, welch_t_test
from utils.errors import InvalidArgumentError, InvalidStateError

DELTAS = [0, 0, 0, 0, 10, 10, 10, 10]


@pytest.fixture
def delta_fit() -> GmmFit:
    return fit_gmm_1d(DELTAS)


# ===== fit_gmm_1d =====

def test_well_separated_deltas(delta_fit):
    assert not delta_fit.degenerate
    assert delta_fit.means == pytest.approx((0.0, 10.0), abs=1e-6)
    assert delta_fit.mixture_weights == pytest.approx((0.5, 0.5), abs=1e-6)
    assert delta_fit.converged


def test_identical_values_are_degenerate():
    fit = fit_gmm_1d([1.0] * 8)
    assert fit.degenerate
    assert fit.log_likelihood_trace == ()
    assert fit.means == (1.0, 1.0)


def test_near_identical_values_are_degenerate():
    assert fit_gmm_1d(1.0 + 1e-13 * np.arange(10)).degenerate


def test_gaussian_blobs_are_recovered():
    rng = np.random.default_rng(7)
    values = np.concatenate([rng.normal(0.0, 1.0, 100), rng.normal(8.0, 1.0, 100)])
    fit = fit_gmm_1d(rng.permutation(values))
    assert abs(fit.means[0] - 0.0) < 0.5
    assert abs(fit.means[1] - 8.0) < 0.5
    assert fit.mixture_weights == pytest.approx((0.5, 0.5), abs=0.05)


def test_components_sorted_and_normalized():
    rng = np.random.default_rng(11)
    for _ in range(20):
        values = np.concatenate([rng.normal(3.0, 0.5, 30), rng.normal(-1.0, 2.0, 50)])
        fit = fit_gmm_1d(values)
        assert fit.means[0] <= fit.means[1]
        assert sum(fit.mixture_weights) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(fit.responsibilities.sum(axis=1), 1.0, atol=1e-12)
        assert fit.responsibilities.shape == (80, 2)
        assert min(fit.variances) > 0.0


def test_log_likelihood_is_monotone():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        size = int(rng.integers(4, 200))
        if rng.random() < 0.5:
            values = rng.normal(rng.normal(), rng.uniform(0.1, 3.0), size)
        else:
            split = size // 2
            values = np.concatenate([
                rng.normal(0.0, 1.0, split),
                rng.normal(rng.uniform(0.5, 6.0), rng.uniform(0.2, 2.0), size - split),
            ])
        fit = fit_gmm_1d(values)
        trace = np.asarray(fit.log_likelihood_trace)
        for previous, current in zip(trace[:-1], trace[1:]):
            assert current >= previous - 1e-10 * max(1.0, abs(previous))


def test_max_iter_caps_iterations():
    rng = np.random.default_rng(3)
    values = np.concatenate([rng.normal(0.0, 1.0, 50), rng.normal(1.5, 1.0, 50)])
    fit = fit_gmm_1d(values, tol=1e-300, max_iter=5)
    assert not fit.converged
    assert fit.n_iter == 6


def test_restarts_never_lower_the_likelihood():
    rng = np.random.default_rng(5)
    values = np.concatenate([rng.normal(0.0, 1.0, 40), rng.normal(2.5, 0.3, 15), rng.normal(5.0, 0.5, 25)])
    plain = fit_gmm_1d(values)
    restarted = fit_gmm_1d(values, seed=9, restarts=8)
    assert restarted.log_likelihood >= plain.log_likelihood
    again = fit_gmm_1d(values, seed=9, restarts=8)
    assert again.means == restarted.means


def test_fit_is_scale_equivariant():
    rng = np.random.default_rng(29)
    values = np.concatenate([rng.normal(1.0, 0.3, 40), rng.normal(4.0, 0.8, 25)])
    scale = 3.5
    base = fit_gmm_1d(values, tol=1e-300, max_iter=5)
    scaled = fit_gmm_1d(scale * values, tol=1e-300, max_iter=5)
    np.testing.assert_allclose(scaled.means, np.multiply(base.means, scale), rtol=1e-8)
    np.testing.assert_allclose(scaled.variances, np.multiply(base.variances, scale ** 2), rtol=1e-8)
    np.testing.assert_allclose(scaled.mixture_weights, base.mixture_weights, rtol=1e-8)


@pytest.mark.parametrize(
    "values, kwargs",
    [
        ([1.0, 2.0, 3.0], {}),
        ([1.0, 2.0, 3.0, float("nan")], {}),
        (DELTAS, {"tol": 0.0}),
        (DELTAS, {"max_iter": 0}),
        (DELTAS, {"restarts": -1}),
    ],
)
def test_invalid_inputs(values, kwargs):
    with pytest.raises(InvalidArgumentError):
        fit_gmm_1d(values, **kwargs)


def test_to_dict_is_plain(delta_fit):
    summary = delta_fit.to_dict()
    assert summary["means"] == list(delta_fit.means)
    assert summary["n_iter"] == delta_fit.n_iter
    assert summary["degenerate"] is False


# ===== assign_components =====

def test_assignment_by_responsibility(delta_fit):
    assert assign_components(delta_fit, [0.1, 9.9]) == [Component.LOW, Component.HIGH]
    assert assign_components(delta_fit, DELTAS) == [Component.LOW] * 4 + [Component.HIGH] * 4


def test_assignment_ignores_input_order():
    rng = np.random.default_rng(31)
    values = np.concatenate([rng.normal(0.0, 0.5, 30), rng.normal(3.0, 0.5, 30)])
    fit = fit_gmm_1d(values)
    labels = assign_components(fit, values)
    order = rng.permutation(values.size)
    assert assign_components(fit, values[order]) == [labels[i] for i in order]
    refit = fit_gmm_1d(values[order])
    assert assign_components(refit, values) == labels


def test_symmetric_tie_goes_low():
    tie = GmmFit(
        mixture_weights=(0.5, 0.5),
        means=(2.0, 2.0),
        variances=(1.0, 1.0),
        responsibilities=np.full((1, 2), 0.5),
        log_likelihood_trace=(0.0,),
        converged=True,
        degenerate=False,
    )
    assert assign_components(tie, [2.0, -5.0, 40.0]) == [Component.LOW] * 3
    np.testing.assert_allclose(component_responsibilities(tie, [7.0]), [[0.5, 0.5]])


def test_degenerate_fit_cannot_assign():
    with pytest.raises(InvalidStateError):
        assign_components(fit_gmm_1d([3.0] * 6), [3.0])


# ===== welch_t_test =====

def test_identical_samples():
    result = welch_t_test([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])
    assert result.t_statistic == 0.0
    assert result.p_value == pytest.approx(1.0, abs=1e-15)


def test_extreme_separation():
    result = welch_t_test([0, 0.1, -0.1, 0.05], [10, 10.1, 9.9, 10.05])
    assert result.p_value < 1e-6
    assert result.t_statistic < 0.0


def test_swapping_samples_negates_t():
    a = [0.3, 1.2, 0.8, 2.2, 1.1]
    b = [2.0, 2.9, 3.5, 2.2]
    forward, backward = welch_t_test(a, b), welch_t_test(b, a)
    assert backward.t_statistic == -forward.t_statistic
    assert backward.p_value == forward.p_value
    assert backward.dof == forward.dof


def test_matches_scipy_welch():
    rng = np.random.default_rng(17)
    for _ in range(25):
        a = rng.normal(0.0, rng.uniform(0.5, 2.0), int(rng.integers(2, 40)))
        b = rng.normal(rng.uniform(-1.0, 2.0), rng.uniform(0.5, 2.0), int(rng.integers(2, 40)))
        ours = welch_t_test(a, b)
        reference = stats.ttest_ind(a, b, equal_var=False)
        assert ours.t_statistic == pytest.approx(reference.statistic, rel=1e-10)
        assert ours.p_value == pytest.approx(reference.pvalue, rel=1e-8, abs=1e-300)


def test_p_value_of_t_distribution():
    assert t_two_sided_p_value(0.0, 7.0) == 1.0
    assert t_two_sided_p_value(2.0, 10.0) == pytest.approx(2 * stats.t.sf(2.0, 10.0), rel=1e-10)


def test_p_value_matches_quadrature():
    rng = np.random.default_rng(41)
    cases = [(0.0, 3.0), (1.0, 1.0), (-2.5, 4.5), (6.0, 30.0)]
    cases += [(float(rng.uniform(-6.0, 6.0)), float(rng.uniform(1.0, 60.0))) for _ in range(20)]
    for t, dof in cases:
        tail, _ = integrate.quad(stats.t.pdf, abs(t), np.inf, args=(dof,), epsabs=1e-14, epsrel=1e-12)
        assert t_two_sided_p_value(t, dof) == pytest.approx(2.0 * tail, abs=1e-9), (t, dof)


@pytest.mark.parametrize("a, b", [([1.0], [1.0, 2.0]), ([1.0, 2.0], []), ([1.0, 1.0, 1.0], [1.0, 2.0])])
def test_undersized_or_constant_samples(a, b):
    with pytest.raises(InvalidArgumentError):
        welch_t_test(a, b)
