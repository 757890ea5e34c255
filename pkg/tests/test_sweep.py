import numpy as np
import pytest

from latclust.dynamics import DynamicsConfig
from latclust.errors import ParameterError
from latclust.model import DistanceMatrix, PointSet, distances_from_points
from latclust.sweep import (
    SweepCurve,
    SweepSample,
    detect_plateaus,
    make_grid,
    sweep,
)


def blob_line(*xs):
    return distances_from_points(PointSet([[float(x)] for x in xs]))


class TestMakeGrid:
    def test_uniform_includes_endpoints(self):
        dm = blob_line(0.0, 2.0)
        grid = make_grid(dm, steps=3, t_min=0.0, t_max=2.0)
        assert grid.t_values.tolist() == [0.0, 1.0, 2.0]

    def test_quantile_uses_midpoints(self):
        dm = blob_line(0.0, 1.0, 4.0)  # off-diagonal distances 1, 3, 4
        grid = make_grid(dm, mode="distance-quantile", t_min=0.0, t_max=5.0)
        assert 2.0 in grid.t_values  # midpoint of 1 and 3
        assert 3.5 in grid.t_values  # midpoint of 3 and 4
        assert grid.t_values[0] == 0.0
        assert grid.t_values[-1] == 5.0

    def test_grid_strictly_increasing(self):
        dm = blob_line(0.0, 1.0, 2.0, 5.0)
        for mode in ("uniform", "distance-quantile"):
            grid = make_grid(dm, mode=mode)
            assert (np.diff(grid.t_values) > 0).all()
            assert grid.t_values[-1] >= dm.max_distance()

    def test_default_ceiling_clears_max_distance(self):
        dm = blob_line(0.0, 10.0)
        grid = make_grid(dm)
        assert grid.t_max == pytest.approx(10.1)

    def test_single_step_rejected(self):
        with pytest.raises(ParameterError):
            make_grid(blob_line(0.0, 1.0), steps=1)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ParameterError):
            make_grid(blob_line(0.0, 1.0), t_min=2.0, t_max=2.0)
        with pytest.raises(ParameterError):
            make_grid(blob_line(0.0, 1.0), t_min=-1.0, t_max=2.0)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ParameterError):
            make_grid(blob_line(0.0, 1.0), mode="log")


class TestSweep:
    def test_limits_at_grid_ends(self):
        rng = np.random.default_rng(2)
        dm = distances_from_points(PointSet(rng.uniform(-4, 4, size=(15, 2))))
        curve = sweep(dm, make_grid(dm, steps=40))
        assert curve.samples[0].k_raw == 15  # t = 0
        assert curve.samples[-1].k_raw == 1  # t > max distance
        assert all(s.converged for s in curve.samples)

    def test_filter_off_means_equal_counts(self):
        dm = blob_line(0.0, 0.5, 4.0)
        curve = sweep(dm, make_grid(dm, steps=20), min_class_size=1)
        for s in curve.samples:
            assert s.k_filtered == s.k_raw

    def test_small_classes_drop_from_filtered_count(self):
        # two tight triples plus one faraway straggler
        dm = blob_line(0.0, 0.1, 0.2, 10.0, 10.1, 10.2, 55.0)
        curve = sweep(dm, make_grid(dm, steps=60), min_class_size=3)
        mid = [s for s in curve.samples if 1.0 <= s.t <= 4.0]
        assert mid
        for s in mid:
            assert s.k_raw == 3
            assert s.k_filtered == 2

    def test_bad_min_class_size_rejected(self):
        dm = blob_line(0.0, 1.0)
        with pytest.raises(ParameterError):
            sweep(dm, make_grid(dm, steps=5), min_class_size=0)

    def test_nonconvergence_is_flagged_not_fatal(self):
        rng = np.random.default_rng(6)
        dm = distances_from_points(PointSet(rng.uniform(-4, 4, size=(12, 2))))
        curve = sweep(dm, make_grid(dm, steps=25), DynamicsConfig(max_iters=2))
        assert any(not s.converged for s in curve.samples)
        flagged = [s for s in curve.samples if not s.converged]
        for s in flagged:
            assert s.k_raw == 0 and s.k_filtered == 0

    def test_identical_inputs_identical_curves(self):
        rng = np.random.default_rng(9)
        dm = distances_from_points(PointSet(rng.uniform(-4, 4, size=(14, 2))))
        grid = make_grid(dm, steps=30)
        assert sweep(dm, grid) == sweep(dm, grid)

    def test_scaled_sweep_has_same_k_sequence(self):
        rng = np.random.default_rng(12)
        dm = distances_from_points(PointSet(rng.uniform(-4, 4, size=(12, 2))))
        grid = make_grid(dm, steps=25)
        base = sweep(dm, grid)
        for c in (1e-3, 1e3):
            dm_c = DistanceMatrix(c * dm.d)
            grid_c = make_grid(dm_c, steps=25, t_min=0.0, t_max=c * grid.t_max)
            scaled = sweep(dm_c, grid_c)
            assert [s.k_raw for s in scaled.samples] == [s.k_raw for s in base.samples]


def curve_from(ks, ts=None, converged=None):
    ts = ts if ts is not None else list(range(1, len(ks) + 1))
    converged = converged if converged is not None else [True] * len(ks)
    samples = [SweepSample(float(t), k, k, c) for t, k, c in zip(ts, ks, converged)]
    return SweepCurve(samples=samples, min_class_size=1)


class TestDetectPlateaus:
    def test_run_lengths(self):
        plats = detect_plateaus(curve_from([5, 5, 5, 4, 4, 2]))
        assert [(p.k, p.width, p.sample_count) for p in plats] == [
            (5, 2.0, 3), (4, 1.0, 2), (2, 0.0, 1)]
        assert plats[0].t_start == 1.0 and plats[0].t_end == 3.0

    def test_constant_curve_is_one_plateau(self):
        plats = detect_plateaus(curve_from([3] * 7))
        assert len(plats) == 1
        assert plats[0].sample_count == 7

    def test_nonconverged_sample_breaks_runs(self):
        plats = detect_plateaus(curve_from([4, 4, 4, 4], converged=[True, True, False, True]))
        assert [(p.k, p.sample_count) for p in plats] == [(4, 2), (4, 1)]

    def test_ties_rank_smaller_k_then_smaller_t(self):
        plats = detect_plateaus(curve_from([7, 7, 3, 3, 5, 5]))
        assert [(p.k, p.t_start) for p in plats] == [(3, 3.0), (5, 5.0), (7, 1.0)]

    def test_intervals_disjoint_and_cover_converged_samples(self):
        ks = [9, 9, 6, 6, 6, 2, 9, 9]
        conv = [True, True, True, False, True, True, True, True]
        curve = curve_from(ks, converged=conv)
        plats = detect_plateaus(curve)
        covered = sum(p.sample_count for p in plats)
        assert covered == sum(conv)
        spans = sorted((p.t_start, p.t_end) for p in plats)
        for (_, end), (start, _) in zip(spans, spans[1:]):
            assert end < start

    def test_filtered_switch_uses_filtered_counts(self):
        samples = [SweepSample(1.0, 10, 2, True), SweepSample(2.0, 12, 2, True)]
        curve = SweepCurve(samples=samples, min_class_size=3)
        raw = detect_plateaus(curve, use_filtered=False)
        filt = detect_plateaus(curve, use_filtered=True)
        assert len(raw) == 2
        assert len(filt) == 1 and filt[0].k == 2

    def test_empty_curve_rejected(self):
        with pytest.raises(ParameterError):
            detect_plateaus(SweepCurve(samples=[], min_class_size=1))
