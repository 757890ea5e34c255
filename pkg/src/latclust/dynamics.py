"""Lateral-inhibition activity transfer: the clustering dynamics.

Every neuron sits on one input object and starts with activity equal to its
row sum of interaction weights. Each synchronous step moves activity along
the gradient S_i - S_j scaled by alpha * w_ij, so better-connected neurons
drain their neighbours. A neuron whose activity would go negative is set to
0 and eliminated from the process in both roles (it neither gives nor
receives). The process ends when no two active neurons interact; the
survivors are the class centers and every object joins its nearest center.

Exactly balanced neighbourhoods (e.g. coincident points) are a fixed point
of the update. They are resolved deterministically: when a step moves no
active neuron by more than the stagnation tolerance, each connected group of
interacting active neurons keeps its strongest member (largest current
activity, then largest initial activity, then lowest index).
"""

from dataclasses import dataclass, field

import numpy as np

from ._backend import BACKEND, kernel  # noqa: F401  (BACKEND re-exported)
from .errors import NonConvergenceError, ParameterError
from .model import DistanceMatrix, InteractionWeights, build_weights

DEFAULT_ALPHA = 0.05
DEFAULT_MAX_ITERS = 100_000
DEFAULT_STAGNATION_EPS = 1e-12


@dataclass(frozen=True)
class DynamicsConfig:
    """Transfer-speed and termination parameters.

    alpha: transfer speed (> 0). Large values clip aggressively and can
        change the partition, so the value used is recorded in all outputs.
    max_iters: hard cap on transfer steps before giving up.
    stagnation_eps: absolute per-neuron activity change below which a step
        counts as stalled.
    """

    alpha: float = DEFAULT_ALPHA
    max_iters: int = DEFAULT_MAX_ITERS
    stagnation_eps: float = DEFAULT_STAGNATION_EPS

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")
        if int(self.max_iters) < 1:
            raise ParameterError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.stagnation_eps < 0:
            raise ParameterError(f"stagnation_eps must be >= 0, got {self.stagnation_eps}")


@dataclass
class ActivityState:
    """Neuron activities, live flags, and the step counter."""

    s: np.ndarray
    active: np.ndarray
    iter: int = 0

    @property
    def n(self):
        return self.s.shape[0]


@dataclass(frozen=True)
class ClusteringResult:
    """Partition produced at a single interaction threshold."""

    centers: list
    labels: np.ndarray
    k: int
    t: float
    alpha: float
    iters: int
    class_sizes: np.ndarray = field(default=None)


def init_activities(w: InteractionWeights) -> ActivityState:
    """Initial state: every neuron active with activity = row sum of weights."""
    s = w.w.sum(axis=1)
    return ActivityState(s=s, active=np.ones(w.n, dtype=bool), iter=0)


def step(state: ActivityState, w: InteractionWeights, cfg: DynamicsConfig):
    """One synchronous transfer step; returns (new_state, clipped_indices).

    The update for every neuron is computed from the pre-step state; sums run
    only over currently active neurons. After the full update, neurons whose
    new activity is negative are zeroed and deactivated.
    """
    if not state.active.any():
        raise ParameterError("step requires at least one active neuron")
    _, new_s, new_active, clipped, _ = kernel.step_once(
        w.w, state.s, state.active, cfg.alpha
    )
    return ActivityState(s=new_s, active=new_active, iter=state.iter + 1), [int(i) for i in clipped]


def _interacting_components(w, active):
    """Connected groups (size >= 2) of active neurons joined by nonzero weights."""
    idx = np.flatnonzero(active)
    sub = w[np.ix_(idx, idx)] > 0.0
    np.fill_diagonal(sub, False)
    seen = np.zeros(idx.size, dtype=bool)
    comps = []
    for start in range(idx.size):
        if seen[start] or not sub[start].any():
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(idx[u])
            for v in np.flatnonzero(sub[u]):
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _resolve_stagnation(w, s, s_init, active):
    # Keep one survivor per interacting component: largest current activity,
    # then largest initial activity, then lowest index.
    for comp in _interacting_components(w, active):
        survivor = max(comp, key=lambda i: (s[i], s_init[i], -i))
        for i in comp:
            if i != survivor:
                active[i] = False
                s[i] = 0.0


def run_dynamics(w: InteractionWeights, cfg: DynamicsConfig = DynamicsConfig(), *, kernel_module=None):
    """Run the transfer process to termination; returns (centers, iters).

    Centers are the indices of the surviving neurons in ascending order.
    Raises NonConvergenceError if the step cap is hit while interacting
    neurons remain. `kernel_module` overrides the selected backend (used by
    the benchmark and backend-parity tests).
    """
    k = kernel_module if kernel_module is not None else kernel
    s = w.w.sum(axis=1)
    s_init = s.copy()
    active = np.ones(w.n, dtype=bool)
    iters = 0
    while True:
        steps, status = k.advance(
            w.w, s, active, cfg.alpha, cfg.stagnation_eps, int(cfg.max_iters) - iters
        )
        iters += steps
        if status == k.STATUS_TERMINATED:
            break
        if status == k.STATUS_STAGNANT:
            _resolve_stagnation(w.w, s, s_init, active)
            continue
        raise NonConvergenceError(iters, int(active.sum()))
    return [int(i) for i in np.flatnonzero(active)], iters


def assign_to_centers(dm: DistanceMatrix, centers) -> np.ndarray:
    """Label every object with the position of its nearest center.

    Ties go to the center with the lowest object index; a center always
    belongs to its own class.
    """
    centers = np.asarray(centers, dtype=np.intp)
    if centers.size == 0:
        raise ParameterError("centers must be nonempty")
    if centers.min() < 0 or centers.max() >= dm.n:
        raise ParameterError(f"center index out of range for {dm.n} objects")
    if np.unique(centers).size != centers.size:
        raise ParameterError("center indices must be distinct")
    order = np.argsort(centers, kind="stable")
    nearest = dm.d[:, centers[order]].argmin(axis=1)
    labels = order[nearest]
    labels[centers] = np.arange(centers.size)
    return labels


def cluster_at_threshold(dm: DistanceMatrix, t: float, cfg: DynamicsConfig = DynamicsConfig()) -> ClusteringResult:
    """Full pipeline at one threshold: weights, transfer, center assignment."""
    w = build_weights(dm, t)
    centers, iters = run_dynamics(w, cfg)
    labels = assign_to_centers(dm, centers)
    sizes = np.bincount(labels, minlength=len(centers))
    return ClusteringResult(
        centers=centers,
        labels=labels,
        k=len(centers),
        t=float(t),
        alpha=cfg.alpha,
        iters=iters,
        class_sizes=sizes,
    )
