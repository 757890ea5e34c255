"""Pure-numpy implementation of the activity-transfer inner loops.

Mirrors the compiled kernel in latclust._core; selected automatically when
the extension is unavailable (see latclust._backend). The single-step entry
works on the full state (inactive neurons hold activity exactly 0, so they
contribute nothing to the received flow); the multi-step loop compacts to
the live submatrix so its cost tracks the number of surviving neurons.
"""

import numpy as np

STATUS_TERMINATED = 0
STATUS_STAGNANT = 1
STATUS_EXHAUSTED = 2


def _row_interaction_sums(w, active):
    # A[i] = sum of w[i, j] over active j; equals exactly 1.0 for an active
    # neuron with no live interaction partner (w[i, i] is 1, zeros elsewhere).
    return w @ active.astype(np.float64)


def step_once(w, s, active, alpha):
    """One synchronous transfer step.

    Returns (raw, new_s, new_active, clipped, max_delta): the unclipped update
    values, the clipped state, the updated active mask, the indices clipped in
    this step, and the largest per-neuron activity change.
    """
    a = _row_interaction_sums(w, active)
    b = w @ s
    raw = np.where(active, s + alpha * (s * a - b), 0.0)
    negative = active & (raw < 0.0)
    new_s = np.where(negative, 0.0, raw)
    new_active = active & ~negative
    clipped = np.flatnonzero(negative)
    deltas = np.abs(new_s - s)[active]
    max_delta = float(deltas.max()) if deltas.size else 0.0
    return raw, new_s, new_active, clipped, max_delta


def advance(w, s, active, alpha, stag_eps, max_steps):
    """Run transfer steps in place until termination, stagnation, or step budget.

    Returns (steps_taken, status). Termination means no two distinct active
    neurons interact; stagnation means a step moved no active neuron by more
    than stag_eps while interactions remain. The loop works on a compacted
    copy of the live submatrix (rebuilt whenever neurons clip) so the work
    per step tracks the number of surviving neurons, like the compiled
    kernel.
    """
    steps = 0
    idx = np.flatnonzero(active)
    w_sub = np.ascontiguousarray(w[np.ix_(idx, idx)])
    s_sub = s[idx].copy()
    a_sub = w_sub.sum(axis=1)
    while True:
        if not (a_sub > 1.0).any():
            s[idx] = s_sub
            return steps, STATUS_TERMINATED
        if steps >= max_steps:
            s[idx] = s_sub
            return steps, STATUS_EXHAUSTED
        b = w_sub @ s_sub
        raw = s_sub + alpha * (s_sub * a_sub - b)
        negative = raw < 0.0
        new_s = np.where(negative, 0.0, raw)
        max_delta = float(np.abs(new_s - s_sub).max()) if new_s.size else 0.0
        s_sub = new_s
        steps += 1
        if negative.any():
            s[idx] = s_sub
            active[idx[negative]] = False
            keep = ~negative
            idx = idx[keep]
            w_sub = np.ascontiguousarray(w_sub[np.ix_(keep, keep)])
            s_sub = s_sub[keep]
            a_sub = w_sub.sum(axis=1)
        if max_delta <= stag_eps:
            s[idx] = s_sub
            if not (a_sub > 1.0).any():
                return steps, STATUS_TERMINATED
            return steps, STATUS_STAGNANT
