# cython: language_level=3
"""Compiled inner loops for the activity-transfer dynamics.

Semantically identical to latclust._core_py; the loops run over a compacted
list of active neuron indices so eliminated neurons cost nothing.
"""

import numpy as np

from libc.math cimport fabs

STATUS_TERMINATED = 0
STATUS_STAGNANT = 1
STATUS_EXHAUSTED = 2


cdef bint _interaction_sums(const double[:, ::1] w, const Py_ssize_t[::1] act,
                            Py_ssize_t n_act, double[::1] out) noexcept nogil:
    # out[i] = sum of w[i, j] over active j. A row with no live interaction
    # partner sums to exactly 1.0 (the diagonal), anything above means the
    # neuron still interacts.
    cdef Py_ssize_t a, b, i
    cdef double acc
    cdef bint interacting = False
    for a in range(n_act):
        i = act[a]
        acc = 0.0
        for b in range(n_act):
            acc += w[i, act[b]]
        out[i] = acc
        if acc > 1.0:
            interacting = True
    return interacting


def step_once(w, s, active, double alpha):
    """One synchronous transfer step; see latclust._core_py.step_once."""
    cdef const double[:, ::1] wv = w
    cdef const double[::1] sv = s
    cdef const unsigned char[::1] av = active.view(np.uint8)
    cdef Py_ssize_t n = wv.shape[0]

    raw_arr = np.zeros(n, dtype=np.float64)
    new_s_arr = np.zeros(n, dtype=np.float64)
    new_active_arr = np.array(active, dtype=bool)
    act_arr = np.empty(n, dtype=np.intp)
    a_arr = np.empty(n, dtype=np.float64)

    cdef double[::1] raw = raw_arr
    cdef double[::1] new_s = new_s_arr
    cdef unsigned char[::1] new_av = new_active_arr.view(np.uint8)
    cdef Py_ssize_t[::1] act = act_arr
    cdef double[::1] asum = a_arr

    cdef Py_ssize_t n_act = 0, i, a, b
    cdef double acc_b, value, si, max_delta = 0.0
    clipped = []

    for i in range(n):
        if av[i]:
            act[n_act] = i
            n_act += 1
    _interaction_sums(wv, act, n_act, asum)

    for a in range(n_act):
        i = act[a]
        acc_b = 0.0
        for b in range(n_act):
            acc_b += wv[i, act[b]] * sv[act[b]]
        si = sv[i]
        value = si + alpha * (si * asum[i] - acc_b)
        raw[i] = value
        if value < 0.0:
            new_s[i] = 0.0
            new_av[i] = 0
            clipped.append(i)
        else:
            new_s[i] = value
        if fabs(new_s[i] - si) > max_delta:
            max_delta = fabs(new_s[i] - si)

    return raw_arr, new_s_arr, new_active_arr, np.array(clipped, dtype=np.intp), max_delta


def advance(w, s, active, double alpha, double stag_eps, Py_ssize_t max_steps):
    """Run transfer steps in place; see latclust._core_py.advance."""
    cdef const double[:, ::1] wv = w
    cdef double[::1] sv = s
    cdef unsigned char[::1] av = active.view(np.uint8)
    cdef Py_ssize_t n = wv.shape[0]

    act_arr = np.empty(n, dtype=np.intp)
    a_arr = np.empty(n, dtype=np.float64)
    news_arr = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t[::1] act = act_arr
    cdef double[::1] asum = a_arr
    cdef double[::1] news = news_arr

    cdef Py_ssize_t n_act = 0, n_new, i, a, b, steps = 0
    cdef double acc_b, value, si, max_delta
    cdef bint interacting, any_clip

    for i in range(n):
        if av[i]:
            act[n_act] = i
            n_act += 1
    interacting = _interaction_sums(wv, act, n_act, asum)

    while True:
        if not interacting:
            return steps, STATUS_TERMINATED
        if steps >= max_steps:
            return steps, STATUS_EXHAUSTED

        max_delta = 0.0
        any_clip = False
        with nogil:
            for a in range(n_act):
                i = act[a]
                acc_b = 0.0
                for b in range(n_act):
                    acc_b += wv[i, act[b]] * sv[act[b]]
                si = sv[i]
                value = si + alpha * (si * asum[i] - acc_b)
                if value < 0.0:
                    value = 0.0
                    av[i] = 0
                    any_clip = True
                news[i] = value
                if fabs(value - si) > max_delta:
                    max_delta = fabs(value - si)
            for a in range(n_act):
                sv[act[a]] = news[act[a]]
        steps += 1

        if any_clip:
            n_new = 0
            for a in range(n_act):
                if av[act[a]]:
                    act[n_new] = act[a]
                    n_new += 1
            n_act = n_new
            interacting = _interaction_sums(wv, act, n_act, asum)
        if max_delta <= stag_eps:
            if not interacting:
                return steps, STATUS_TERMINATED
            return steps, STATUS_STAGNANT
