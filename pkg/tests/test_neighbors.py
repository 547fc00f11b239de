"""Tests for the nearest-neighbor distance engines."""

import numpy as np
import pytest

from varentropy import nn_distances, pairwise_min_distance, substream
from varentropy.exceptions import (
    DuplicatePointsError,
    EmptySampleError,
    SampleValidationError,
)


def _random_sample(rng, max_n=500, max_d=8):
    n = int(rng.integers(2, max_n + 1))
    d = int(rng.integers(1, max_d + 1))
    scale = 10.0 ** rng.integers(-3, 4)
    return rng.normal(size=(n, d)) * scale + rng.normal() * scale


class TestBasics:
    def test_two_points_1d(self):
        """Each of two points has the other as neighbor."""
        nn = nn_distances([[0.0], [3.0]])
        assert np.array_equal(nn.rho, [3.0, 3.0])

    def test_three_points_1d(self):
        """Hand-checkable neighbor distances."""
        nn = nn_distances([[0.0], [1.0], [5.0]])
        assert np.array_equal(nn.rho, [1.0, 1.0, 4.0])
        assert list(nn.neighbor) == [1, 0, 1]

    def test_seeded_uniform_d3_engines_agree(self):
        """Tree engine matches the exhaustive-scan oracle exactly."""
        X = substream(7, 1).uniform(size=(100, 3))
        tree = nn_distances(X, engine="tree")
        brute = nn_distances(X, engine="brute")
        assert np.array_equal(tree.rho, brute.rho)

    def test_metadata(self):
        nn = nn_distances(np.arange(12, dtype=float).reshape(6, 2))
        assert (nn.n, nn.dim) == (6, 2)

    def test_one_dimensional_input_treated_as_column(self):
        nn = nn_distances([0.0, 1.0, 5.0])
        assert np.array_equal(nn.rho, [1.0, 1.0, 4.0])


class TestErrors:
    def test_single_point_rejected(self):
        with pytest.raises(EmptySampleError):
            nn_distances([[1.0]])

    def test_nan_rejected_with_position(self):
        X = np.ones((5, 2))
        X[3, 1] = np.nan
        with pytest.raises(SampleValidationError, match="row 3, column 1"):
            nn_distances(X)

    def test_duplicates_raise_with_pairs(self):
        X = np.array([[0.0, 0.0], [1.0, 2.0], [0.0, 0.0], [3.0, 4.0]])
        with pytest.raises(DuplicatePointsError) as excinfo:
            nn_distances(X)
        assert (0, 2) in excinfo.value.pairs

    def test_duplicates_raise_in_brute_engine(self):
        X = np.array([[1.0], [1.0], [2.0]])
        with pytest.raises(DuplicatePointsError):
            nn_distances(X, engine="brute")

    def test_duplicate_pairs_never_pair_a_point_with_itself(self):
        """Zero-distance ties must resolve to a genuine partner index."""
        X = np.array([[1.0], [1.0], [2.0]])
        for engine in ("tree", "brute"):
            with pytest.raises(DuplicatePointsError) as excinfo:
                nn_distances(X, engine=engine)
            assert excinfo.value.pairs == [(0, 1)]

    def test_bad_engine(self):
        with pytest.raises(ValueError):
            nn_distances([[0.0], [1.0]], engine="ball")


class TestJitter:
    def test_jitter_breaks_ties(self):
        X = np.zeros((20, 2))
        nn = nn_distances(X, duplicate_policy="jitter", jitter_width=1e-6,
                          jitter_seed=3)
        assert np.all(nn.rho > 0)

    def test_jitter_is_deterministic(self):
        X = np.zeros((10, 1))
        a = nn_distances(X, duplicate_policy="jitter", jitter_width=1e-9, jitter_seed=5)
        b = nn_distances(X, duplicate_policy="jitter", jitter_width=1e-9, jitter_seed=5)
        assert np.array_equal(a.rho, b.rho)

    def test_jitter_requires_width(self):
        with pytest.raises(ValueError):
            nn_distances(np.zeros((4, 1)), duplicate_policy="jitter")


class TestPairwiseMinDistance:
    def test_two_points(self):
        assert pairwise_min_distance([[0.0], [3.0]]) == 3.0

    def test_duplicate_detection(self):
        assert pairwise_min_distance([[0.0], [0.0]]) == 0.0

    def test_matches_double_loop_oracle(self):
        """Chunked scan equals the plain O(n^2) double loop."""
        X = substream(11, 2).normal(size=(50, 2))
        expected = min(
            float(np.sqrt(np.sum((X[i] - X[j]) ** 2)))
            for i in range(50) for j in range(i + 1, 50)
        )
        assert pairwise_min_distance(X) == pytest.approx(expected, rel=1e-15)


class TestEngineEquivalenceProperty:
    def test_random_samples(self):
        """Both engines return identical vectors on random data."""
        rng = substream(2024, 3)
        for _ in range(150):
            X = _random_sample(rng)
            a = nn_distances(X, engine="tree")
            b = nn_distances(X, engine="brute")
            assert np.array_equal(a.rho, b.rho), (X.shape,)


class TestGeometryProperties:
    def test_permutation_equivariance(self):
        """Permuting rows permutes rho identically."""
        rng = substream(5, 4)
        for _ in range(20):
            X = _random_sample(rng, max_n=200, max_d=4)
            perm = rng.permutation(X.shape[0])
            rho = nn_distances(X).rho
            rho_perm = nn_distances(X[perm]).rho
            assert np.array_equal(rho_perm, rho[perm])

    def test_isometry_invariance(self):
        """Orthogonal map plus shift leaves rho unchanged to 1e-12.

        The absolute floor is the representation limit of the shifted
        coordinates: a gap far below ulp(coordinate) cannot survive the
        translation exactly, for any implementation.
        """
        rng = substream(6, 5)
        eps = np.finfo(np.float64).eps
        for _ in range(20):
            X = _random_sample(rng, max_n=200, max_d=6)
            d = X.shape[1]
            Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
            shift = rng.normal(size=d) * float(np.abs(X).max())
            moved = X @ Q.T + shift
            rho = nn_distances(X).rho
            rho_t = nn_distances(moved).rho
            atol = 32 * eps * float(np.abs(moved).max())
            assert np.allclose(rho_t, rho, rtol=1e-12, atol=atol)

    def test_scaling_equivariance(self):
        """Scaling all points by c scales every rho by c to 1e-12."""
        rng = substream(7, 6)
        for _ in range(20):
            X = _random_sample(rng, max_n=200, max_d=6)
            c = float(np.exp(rng.uniform(-3, 3)))
            rho = nn_distances(X).rho
            rho_c = nn_distances(c * X).rho
            assert np.allclose(rho_c, c * rho, rtol=1e-12, atol=0.0)
