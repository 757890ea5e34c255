import numpy as np
import pytest
from hypothesis import given, strategies as st

from latclust.errors import ParameterError, ValidationError
from latclust.model import (
    DistanceMatrix,
    PointSet,
    build_weights,
    distances_from_points,
)


def random_distance_matrix(rng, n, dim=2):
    pts = rng.uniform(-10, 10, size=(n, dim))
    return distances_from_points(PointSet(pts))


class TestDistances:
    def test_two_points_one_dim(self):
        dm = distances_from_points(PointSet([[0.0], [3.0]]))
        assert dm.d.tolist() == [[0.0, 3.0], [3.0, 0.0]]

    def test_single_point(self):
        dm = distances_from_points(PointSet([[7.0]]))
        assert dm.d.tolist() == [[0.0]]

    def test_three_four_five(self):
        dm = distances_from_points(PointSet([[0.0, 0.0], [3.0, 4.0]]))
        assert dm.d[0][1] == 5.0

    def test_symmetry_is_bit_exact(self):
        rng = np.random.default_rng(0)
        dm = random_distance_matrix(rng, 37, dim=5)
        assert np.array_equal(dm.d, dm.d.T)
        assert (np.diagonal(dm.d) == 0.0).all()

    def test_nonfinite_feature_names_position(self):
        pts = np.zeros((3, 2))
        pts[1, 1] = np.nan
        with pytest.raises(ValidationError, match=r"row 1, column 1"):
            PointSet(pts)

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValidationError):
            PointSet(np.array([[1.0, 2.0], [3.0]], dtype=object))

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            PointSet(np.empty((0, 2)))

    def test_arrays_are_read_only_after_construction(self):
        dm = distances_from_points(PointSet([[0.0], [1.0]]))
        w = build_weights(dm, 1.0)
        for arr in (dm.d, w.w):
            with pytest.raises(ValueError):
                arr[0, 0] = 5.0


class TestDistanceMatrixValidation:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValidationError, match="asymmetric"):
            DistanceMatrix([[0.0, 1.0], [2.0, 0.0]])

    def test_negative_rejected(self):
        with pytest.raises(ValidationError, match="negative"):
            DistanceMatrix([[0.0, -1.0], [-1.0, 0.0]])

    def test_nonzero_diagonal_rejected(self):
        with pytest.raises(ValidationError, match="diagonal"):
            DistanceMatrix([[1.0, 2.0], [2.0, 0.0]])

    def test_nonsquare_rejected(self):
        with pytest.raises(ValidationError, match="square"):
            DistanceMatrix(np.zeros((2, 3)))


class TestWeights:
    def test_coincident_pair_gets_full_weight(self):
        dm = DistanceMatrix(np.zeros((2, 2)))
        w = build_weights(dm, 1.0)
        assert w.w[0][1] == 1.0

    def test_boundary_distance_gives_half(self):
        dm = distances_from_points(PointSet([[0.0], [2.5]]))
        w = build_weights(dm, 2.5)
        assert w.w[0][1] == 0.5

    def test_beyond_threshold_is_exact_zero(self):
        dm = distances_from_points(PointSet([[0.0], [2.0]]))
        w = build_weights(dm, 1.0)
        assert w.w[0][1] == 0.0

    def test_zero_threshold_is_identity(self):
        dm = DistanceMatrix(np.zeros((4, 4)))  # even coincident points
        w = build_weights(dm, 0.0)
        assert np.array_equal(w.w, np.eye(4))

    def test_negative_threshold_rejected(self):
        dm = distances_from_points(PointSet([[0.0], [1.0]]))
        with pytest.raises(ParameterError):
            build_weights(dm, -0.5)

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.0, 4.0, 100.0])
    def test_invariants_hold_for_random_matrix(self, t):
        rng = np.random.default_rng(42)
        dm = random_distance_matrix(rng, 25)
        w = build_weights(dm, t).w
        assert np.array_equal(w, w.T)
        assert (np.diagonal(w) == 1.0).all()
        off = ~np.eye(25, dtype=bool)
        vals = w[off]
        assert ((vals == 0.0) | ((vals >= 0.5) & (vals <= 1.0))).all()
        assert (w[off & (dm.d > t)] == 0.0).all()

    def test_scale_invariance_entrywise(self):
        rng = np.random.default_rng(3)
        dm = random_distance_matrix(rng, 20)
        t = 4.0
        base = build_weights(dm, t).w
        for c in (1e-3, 7.0, 1e3):
            scaled = build_weights(DistanceMatrix(c * dm.d), c * t).w
            np.testing.assert_allclose(scaled, base, rtol=1e-12, atol=0)

    @given(
        d=st.floats(min_value=1e-6, max_value=1e6),
        c=st.floats(min_value=1e-3, max_value=1e3),
    )
    def test_single_weight_depends_only_on_ratio(self, d, c):
        t = 2.0 * d  # inside the interacting branch
        dm = DistanceMatrix([[0.0, d], [d, 0.0]])
        dm_scaled = DistanceMatrix([[0.0, c * d], [c * d, 0.0]])
        a = build_weights(dm, t).w[0][1]
        b = build_weights(dm_scaled, c * t).w[0][1]
        assert b == pytest.approx(a, rel=1e-12)

    @given(d=st.floats(min_value=1e-3, max_value=1e3))
    def test_weight_nondecreasing_in_threshold(self, d):
        dm = DistanceMatrix([[0.0, d], [d, 0.0]])
        ts = np.linspace(0.0, 3.0 * d, 40)
        vals = [build_weights(dm, float(t)).w[0][1] for t in ts]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
