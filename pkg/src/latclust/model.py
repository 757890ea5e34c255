"""Core data types: point sets, distance matrices, and interaction weights.

All types are immutable after construction (their arrays are marked
read-only) and safe to share across threads.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ValidationError


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PointSet:
    """N objects described by m-dimensional real feature vectors."""

    points: np.ndarray

    def __post_init__(self):
        try:
            pts = np.asarray(self.points, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"points are not a rectangular numeric array: {exc}") from None
        if pts.ndim != 2:
            raise ValidationError(f"points must be a 2-D array, got ndim={pts.ndim}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValidationError(f"need at least one point and one feature, got shape {pts.shape}")
        bad = np.argwhere(~np.isfinite(pts))
        if bad.size:
            i, j = bad[0]
            raise ValidationError(f"non-finite feature value at row {i}, column {j}")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def m(self):
        return self.points.shape[1]


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense symmetric matrix of pairwise distances with a zero diagonal."""

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError(f"distance matrix must be square, got shape {d.shape}")
        if not np.isfinite(d).all():
            raise ValidationError("distance matrix contains non-finite entries")
        if (d < 0).any():
            i, j = np.argwhere(d < 0)[0]
            raise ValidationError(f"negative distance at ({i}, {j})")
        if np.diagonal(d).any():
            i = int(np.flatnonzero(np.diagonal(d))[0])
            raise ValidationError(f"nonzero diagonal entry at ({i}, {i})")
        if not np.array_equal(d, d.T):
            i, j = np.argwhere(d != d.T)[0]
            raise ValidationError(f"asymmetric entries at ({i}, {j})/({j}, {i})")
        object.__setattr__(self, "d", _frozen(d))

    @property
    def n(self):
        return self.d.shape[0]

    def max_distance(self):
        return float(self.d.max())

    def min_offdiag_distance(self):
        """Smallest distance between two distinct objects (inf for a single object)."""
        if self.n < 2:
            return float("inf")
        masked = self.d + np.diag(np.full(self.n, np.inf))
        return float(masked.min())


@dataclass(frozen=True)
class InteractionWeights:
    """Threshold-gated neuron connection matrix for a given interaction threshold.

    Off-diagonal entries are t^2 / (d^2 + t^2) for pairs within distance t and
    exactly 0 beyond it; the diagonal is 1 by convention (also at t = 0, where
    the formula itself is undefined).
    """

    w: np.ndarray
    t: float = field(default=0.0)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValidationError(f"weight matrix must be square, got shape {w.shape}")
        if self.t < 0:
            raise ParameterError(f"interaction threshold must be >= 0, got {self.t}")
        object.__setattr__(self, "w", _frozen(w))
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self):
        return self.w.shape[0]


def distances_from_points(ps: PointSet) -> DistanceMatrix:
    """Euclidean distance matrix of a point set.

    Each pair is computed once and mirrored, so d[i, j] == d[j, i] bit-exactly.
    """
    pts = ps.points
    n = ps.n
    upper = np.zeros((n, n), dtype=np.float64)
    for i in range(n - 1):
        diff = pts[i + 1 :] - pts[i]
        upper[i, i + 1 :] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return DistanceMatrix(upper + upper.T)


def build_weights(dm: DistanceMatrix, t: float) -> InteractionWeights:
    """Interaction weights for distance matrix `dm` at threshold `t`.

    The boundary case d == t uses the interacting branch (weight 1/2); at
    t == 0 no pair interacts and the matrix is the identity.
    """
    if not np.isfinite(t) or t < 0:
        raise ParameterError(f"interaction threshold must be a finite value >= 0, got {t}")
    n = dm.n
    if t == 0.0:
        w = np.eye(n, dtype=np.float64)
    else:
        # 1 / (1 + (d/t)^2) == t^2 / (d^2 + t^2), but stays finite for any
        # threshold: d/t <= 1 wherever the interacting branch applies
        with np.errstate(over="ignore"):
            ratio = dm.d / t
            w = np.where(dm.d <= t, 1.0 / (1.0 + ratio * ratio), 0.0)
        np.fill_diagonal(w, 1.0)
    return InteractionWeights(w, t)
