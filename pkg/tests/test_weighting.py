import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from greymix.core import DegenerateError, GreyMixError
from greymix.weighting import (
    DegenerateMatrixError,
    EntropyDegenerateError,
    GreyWeightVector,
    aggregate_subjective,
    comprehensive_objective,
    entropy_values,
    final_weights,
    normalize_grey_fuzzy_weights,
    objective_entropy,
    objective_optimal,
)

from oracles import deviation_loops, entropy_weights_loops, sphere_maximizer


def random_matrix(rng, n, m):
    return np.sort(rng.uniform(0.05, 1.0, size=(n, m, 4)), axis=-1)


class TestSubjective:
    def test_single_expert(self):
        w = aggregate_subjective([[0.6, 0.4]])
        np.testing.assert_array_equal(w.lo, [0.6, 0.4])
        np.testing.assert_array_equal(w.hi, [0.6, 0.4])

    def test_two_experts(self):
        w = aggregate_subjective([[0.3, 0.7], [0.4, 0.6]])
        assert w.pairs() == [[0.3, 0.4], [0.6, 0.7]]

    def test_length_mismatch(self):
        with pytest.raises(GreyMixError, match="different lengths"):
            aggregate_subjective([[0.3, 0.7], [0.4, 0.3, 0.3]])

    def test_no_experts(self):
        with pytest.raises(GreyMixError):
            aggregate_subjective([])


class TestObjectiveOptimal:
    def test_constant_attribute_gets_zero(self):
        x = np.zeros((3, 2, 4))
        x[:, 0] = 0.5
        x[:, 1] = np.array([[0.1] * 4, [0.2] * 4, [0.4] * 4])
        np.testing.assert_allclose(objective_optimal(x), [0.0, 1.0])

    def test_sums_to_one(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            b = objective_optimal(random_matrix(rng, 4, 3))
            assert b.sum() == pytest.approx(1.0)
            assert np.all(b >= 0)

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(2)
        x = random_matrix(rng, 4, 3)
        dev = deviation_loops(x)
        np.testing.assert_allclose(objective_optimal(x), dev / dev.sum(), rtol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_sphere_maximizer(self, seed):
        rng = np.random.default_rng(100 + seed)
        x = random_matrix(rng, 3, 3)
        best = sphere_maximizer(deviation_loops(x), 3, step=1e-4)
        np.testing.assert_allclose(objective_optimal(x), best / best.sum(), atol=1e-4)

    def test_scale_invariant(self):
        rng = np.random.default_rng(3)
        x = random_matrix(rng, 4, 3)
        np.testing.assert_allclose(objective_optimal(x), objective_optimal(7.0 * x), rtol=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateMatrixError):
            objective_optimal(np.ones((3, 2, 4)))

    def test_needs_two_plans(self):
        with pytest.raises(GreyMixError):
            objective_optimal(np.ones((1, 2, 4)))


class TestEntropy:
    def test_uniform_column(self):
        x = np.ones((4, 1, 4))
        assert entropy_values(x, 1)[0] == pytest.approx(1.0)

    def test_single_nonzero_plan(self):
        x = np.zeros((4, 1, 4))
        x[2, 0] = 0.7
        assert entropy_values(x, 3)[0] == 0.0

    def test_two_equal_shares(self):
        x = np.full((2, 1, 4), 0.5)
        assert entropy_values(x, 2)[0] == pytest.approx(1.0)

    def test_weights_against_loops(self):
        rng = np.random.default_rng(4)
        x = random_matrix(rng, 5, 4)
        for k in range(1, 5):
            np.testing.assert_allclose(objective_entropy(x, k), entropy_weights_loops(x, k), rtol=1e-10)

    def test_uniform_column_zero_weight(self):
        x = np.ones((3, 2, 4))
        x[:, 1, :] = [[0.1] * 4, [0.5] * 4, [0.9] * 4]
        np.testing.assert_allclose(objective_entropy(x, 1), [0.0, 1.0])

    def test_all_uniform_is_degenerate(self):
        with pytest.raises(EntropyDegenerateError):
            objective_entropy(np.ones((3, 2, 4)), 2)

    def test_permuting_plans(self):
        rng = np.random.default_rng(5)
        x = random_matrix(rng, 5, 3)
        perm = rng.permutation(5)
        for k in range(1, 5):
            np.testing.assert_allclose(objective_entropy(x, k), objective_entropy(x[perm], k), rtol=1e-12)

    def test_duplicating_plans_keeps_eta_order(self):
        rng = np.random.default_rng(6)
        x = random_matrix(rng, 4, 4)
        doubled = np.concatenate([x, x])
        for k in range(1, 5):
            eta = 1 - entropy_values(x, k)
            eta2 = 1 - entropy_values(doubled, k)
            np.testing.assert_array_equal(np.argsort(eta), np.argsort(eta2))

    def test_bad_component(self):
        with pytest.raises(GreyMixError):
            entropy_values(np.ones((2, 1, 4)), 5)


class TestComprehensiveObjective:
    def test_envelope(self):
        w = comprehensive_objective([0.2], [0.25], [0.3], [0.22], [0.28])
        assert w.pairs() == [[0.2, 0.3]]

    def test_all_equal(self):
        w = comprehensive_objective(*([[0.4, 0.6]] * 5))
        np.testing.assert_array_equal(w.lo, w.hi)

    def test_permutation(self):
        vs = [[0.2, 0.8], [0.25, 0.75], [0.3, 0.7], [0.22, 0.78], [0.28, 0.72]]
        a = comprehensive_objective(*vs)
        b = comprehensive_objective(*vs[::-1])
        assert a.pairs() == b.pairs()

    def test_length_mismatch(self):
        with pytest.raises(GreyMixError):
            comprehensive_objective([0.2, 0.8], [1.0], [0.5, 0.5], [0.5, 0.5], [0.5, 0.5])


class TestFinalWeights:
    def test_crisp(self):
        a = GreyWeightVector.from_pairs([[0.5, 0.5], [0.3, 0.3], [0.2, 0.2]])
        b = GreyWeightVector.from_pairs([[0.2, 0.2], [0.4, 0.4], [0.4, 0.4]])
        w = final_weights(a, b)
        expected = np.array([0.1, 0.12, 0.08]) / 0.3
        np.testing.assert_allclose(w.lo, expected)
        np.testing.assert_allclose(w.hi, expected)

    def test_single_attribute(self):
        w = final_weights(GreyWeightVector.from_pairs([[0.7, 0.7]]), GreyWeightVector.from_pairs([[1, 1]]))
        assert w.pairs() == [[1.0, 1.0]]

    def test_interval_division(self):
        a = GreyWeightVector.from_pairs([[0.5, 0.5], [0.5, 0.5]])
        b = GreyWeightVector.from_pairs([[0.2, 0.4], [0.6, 0.8]])
        w = final_weights(a, b)
        # numerators [0.1, 0.2], [0.3, 0.4]; sums lo 0.4, hi 0.6
        np.testing.assert_allclose(w.lo, [0.1 / 0.6, 0.3 / 0.6])
        np.testing.assert_allclose(w.hi, [0.2 / 0.4, 0.4 / 0.4])
        assert w.lo[0] == pytest.approx(0.1667, abs=5e-5)

    def test_zero(self):
        z = GreyWeightVector.from_pairs([[0, 0], [0, 0]])
        with pytest.raises(DegenerateError):
            final_weights(z, z)

    def test_length_mismatch(self):
        with pytest.raises(GreyMixError):
            final_weights(GreyWeightVector.from_pairs([[0.5, 0.5]]), GreyWeightVector.from_pairs([[0.5, 0.5]] * 2))


class TestGreyFuzzyWeights:
    def test_normalized_crisp_unchanged(self):
        w = GreyWeightVector.from_pairs([[0.25, 0.25], [0.75, 0.75]])
        g = normalize_grey_fuzzy_weights(w)
        np.testing.assert_allclose(g.w_lo, [0.25, 0.75])
        np.testing.assert_allclose(g.w_hi, [0.25, 0.75])

    def test_default_grey_parts(self):
        g = normalize_grey_fuzzy_weights(GreyWeightVector.from_pairs([[0.4, 0.6], [0.4, 0.6]]))
        np.testing.assert_allclose(g.s_lo, [0.5, 0.5])
        np.testing.assert_allclose(g.s_hi, [0.5, 0.5])

    def test_fuzzy_parts(self):
        g = normalize_grey_fuzzy_weights(GreyWeightVector.from_pairs([[0.2, 0.4], [0.6, 0.8]]))
        np.testing.assert_allclose(g.w_lo, [0.2 / 1.2, 0.6 / 1.2])
        np.testing.assert_allclose(g.w_hi, [0.4 / 0.8, 0.8 / 0.8])

    def test_given_grey_parts(self):
        g = normalize_grey_fuzzy_weights(
            GreyWeightVector.from_pairs([[0.5, 0.5], [0.5, 0.5]]), [[0.2, 0.4], [0.6, 0.8]]
        )
        np.testing.assert_allclose(g.s_lo, [0.2 / 1.2, 0.6 / 1.2])
        np.testing.assert_allclose(g.s_hi, [0.5, 1.0])

    def test_zero_sums(self):
        with pytest.raises(DegenerateError):
            normalize_grey_fuzzy_weights(GreyWeightVector.from_pairs([[0, 0], [0, 0]]))


pairs = arrays(float, (4, 2), elements=st.floats(0.01, 1.0)).map(lambda a: np.sort(a, axis=1))


@settings(max_examples=100)
@given(pairs, pairs)
def test_final_weights_cross_normalization(a, b):
    w = final_weights(GreyWeightVector(a[:, 0], a[:, 1]), GreyWeightVector(b[:, 0], b[:, 1]))
    assert np.all(w.lo <= w.hi)
    assert w.lo.sum() <= 1 + 1e-12 <= w.hi.sum() + 2e-12


def test_bitwise_reproducible():
    rng = np.random.default_rng(8)
    x = random_matrix(rng, 5, 4)
    runs = [
        (objective_optimal(x).tobytes(), tuple(objective_entropy(x, k).tobytes() for k in range(1, 5)))
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
