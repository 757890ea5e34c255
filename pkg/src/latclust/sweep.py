"""Threshold sweeps: the K(T) curve, plateau detection, and noise filtering.

The class count is not assumed monotone in T, so plateaus are plain maximal
runs of equal K over consecutive converged grid points. Small classes can be
discounted through min_class_size, which affects only the reported filtered
count, never the dynamics.
"""

from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from .dynamics import DynamicsConfig, cluster_at_threshold
from .errors import NonConvergenceError, ParameterError
from .model import DistanceMatrix

DEFAULT_STEPS = 200
T_MAX_MARGIN = 1.01


@dataclass(frozen=True)
class SweepGrid:
    """Strictly increasing thresholds to evaluate, plus how they were built."""

    t_values: np.ndarray
    mode: str
    steps: int
    t_min: float
    t_max: float


class SweepSample(NamedTuple):
    t: float
    k_raw: int
    k_filtered: int
    converged: bool


@dataclass(frozen=True)
class SweepCurve:
    """One sample per grid point, in grid order."""

    samples: List[SweepSample]
    min_class_size: int


@dataclass(frozen=True)
class Plateau:
    """Maximal interval of consecutive grid points sharing one class count."""

    k: int
    t_start: float
    t_end: float
    width: float
    sample_count: int


def resolve_t_max(dm: DistanceMatrix) -> float:
    """Default sweep ceiling: just above the largest pairwise distance."""
    return T_MAX_MARGIN * dm.max_distance()


def make_grid(dm: DistanceMatrix, mode: str = "uniform", steps: int = DEFAULT_STEPS,
              t_min: float = 0.0, t_max: float = None) -> SweepGrid:
    """Build the threshold axis.

    uniform: `steps` evenly spaced values including both endpoints.
    distance-quantile: midpoints between consecutive distinct pairwise
        distances, clipped to [t_min, t_max] with both endpoints added
        (`steps` is ignored).
    """
    if t_max is None:
        t_max = resolve_t_max(dm)
    if t_min < 0 or not t_min < t_max:
        raise ParameterError(f"need 0 <= t_min < t_max, got [{t_min}, {t_max}]")
    if mode == "uniform":
        if int(steps) < 2:
            raise ParameterError(f"uniform grid needs steps >= 2, got {steps}")
        values = np.linspace(t_min, t_max, int(steps))
    elif mode == "distance-quantile":
        d = dm.d[~np.eye(dm.n, dtype=bool)]
        uniq = np.unique(d)
        mids = (uniq[:-1] + uniq[1:]) / 2.0 if uniq.size > 1 else np.empty(0)
        values = np.clip(mids, t_min, t_max)
        values = np.unique(np.concatenate([[t_min], values, [t_max]]))
    else:
        raise ParameterError(f"unknown grid mode {mode!r}")
    return SweepGrid(t_values=values, mode=mode, steps=int(values.size),
                     t_min=float(t_min), t_max=float(t_max))


def sweep(dm: DistanceMatrix, grid: SweepGrid, cfg: DynamicsConfig = DynamicsConfig(),
          min_class_size: int = 1) -> SweepCurve:
    """Cluster at every grid threshold and record raw and filtered class counts.

    A threshold where the dynamics fail to converge is recorded with its flag
    cleared instead of aborting the sweep.
    """
    if int(min_class_size) < 1:
        raise ParameterError(f"min_class_size must be >= 1, got {min_class_size}")
    samples = []
    for t in grid.t_values:
        try:
            result = cluster_at_threshold(dm, float(t), cfg)
        except NonConvergenceError:
            samples.append(SweepSample(float(t), 0, 0, False))
            continue
        k_filtered = int((result.class_sizes >= min_class_size).sum())
        samples.append(SweepSample(float(t), result.k, k_filtered, True))
    return SweepCurve(samples=samples, min_class_size=int(min_class_size))


def detect_plateaus(curve: SweepCurve, use_filtered: bool = False) -> List[Plateau]:
    """Maximal constant-K runs, widest first (ties: smaller k, then smaller t).

    Nonconverged samples break runs. Single-sample runs are reported with
    width 0; callers decide what is wide enough to matter.
    """
    if not curve.samples:
        raise ParameterError("curve has no samples")
    plateaus = []
    run = []
    run_k = None
    for sample in curve.samples:
        k = sample.k_filtered if use_filtered else sample.k_raw
        if sample.converged and run and k == run_k:
            run.append(sample)
            continue
        if run:
            plateaus.append(_close_run(run, run_k))
        run = [sample] if sample.converged else []
        run_k = k if sample.converged else None
    if run:
        plateaus.append(_close_run(run, run_k))
    plateaus.sort(key=lambda p: (-p.width, p.k, p.t_start))
    return plateaus


def _close_run(run, k):
    return Plateau(
        k=int(k),
        t_start=run[0].t,
        t_end=run[-1].t,
        width=run[-1].t - run[0].t,
        sample_count=len(run),
    )
