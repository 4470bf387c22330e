"""Hot log-domain sweep kernels, in jitted and pure-numpy flavours.

All kernels work on a prefix-sum array S of log-magnitudes, where
S[t] = sum of the first t log-weights, so a length-n window landing at
offset k costs S[k+n] - S[k].  Row arrays A (added at the landing index)
and Bv (subtracted at the source index) are aligned to absolute offsets.
The sweep kernels fix the landing offset k and vary the length; the
max-window kernel fixes the source index k and takes the best length
ending there (windows S[k] - S[k-i], landing at k - i).

The numba versions parallelise over the n axis; each row's reduction is
independent and first-minimum semantics are preserved, so results are
bit-identical to the numpy path.
"""
from __future__ import annotations

import numpy as np

from ._backend import HAS_NUMBA


def _sweep_min_grid_np(S, A, Bv, ns, k0, k1):
    count = ns.shape[0]
    mins = np.empty(count, dtype=np.float64)
    argmins = np.empty(count, dtype=np.int64)
    for i in range(count):
        n = int(ns[i])
        g = (S[k0 + n : k1 + n + 1] - S[k0 : k1 + 1]) + (
            A[k0 : k1 + 1] - Bv[k0 + n : k1 + n + 1]
        )
        j = int(np.argmin(g))
        mins[i] = g[j]
        argmins[i] = k0 + j
    return mins, argmins


def _sweep_max_grid_np(S, A, Bv, ns, k0, k1):
    count = ns.shape[0]
    maxs = np.empty(count, dtype=np.float64)
    argmaxs = np.empty(count, dtype=np.int64)
    for i in range(count):
        n = int(ns[i])
        g = (S[k0 + n : k1 + n + 1] - S[k0 : k1 + 1]) + (
            A[k0 : k1 + 1] - Bv[k0 + n : k1 + n + 1]
        )
        j = int(np.argmax(g))
        maxs[i] = g[j]
        argmaxs[i] = k0 + j
    return maxs, argmaxs


def _max_window_min_np(S, A, Bv, n, k0, k1, k_floor):
    # g(k) = max over 1 <= i <= n (with k - i >= k_floor) of the i-window
    # quantity ENDING at k (source e_k, landing e_{k-i}), then (min, argmin)
    # of g over [k0, k1].
    ks = np.arange(k0, k1 + 1)
    best = np.full(ks.shape, -np.inf)
    for i in range(1, n + 1):
        lo = max(k0, k_floor + i)
        if lo > k1:
            break
        kk = ks[ks >= lo]
        g = (S[kk] - S[kk - i]) + (A[kk - i] - Bv[kk])
        best[lo - k0 :] = np.maximum(best[lo - k0 :], g)
    j = int(np.argmin(best))
    return float(best[j]), int(k0 + j)


if HAS_NUMBA:
    from numba import njit, prange

    @njit(cache=True, parallel=True)
    def _sweep_min_grid_nb(S, A, Bv, ns, k0, k1):  # pragma: no cover - jitted
        count = ns.shape[0]
        mins = np.empty(count, dtype=np.float64)
        argmins = np.empty(count, dtype=np.int64)
        for i in prange(count):
            n = ns[i]
            best = np.inf
            bestk = k0
            for k in range(k0, k1 + 1):
                g = (S[k + n] - S[k]) + (A[k] - Bv[k + n])
                if g < best:
                    best = g
                    bestk = k
            mins[i] = best
            argmins[i] = bestk
        return mins, argmins

    @njit(cache=True, parallel=True)
    def _sweep_max_grid_nb(S, A, Bv, ns, k0, k1):  # pragma: no cover - jitted
        count = ns.shape[0]
        maxs = np.empty(count, dtype=np.float64)
        argmaxs = np.empty(count, dtype=np.int64)
        for i in prange(count):
            n = ns[i]
            best = -np.inf
            bestk = k0
            for k in range(k0, k1 + 1):
                g = (S[k + n] - S[k]) + (A[k] - Bv[k + n])
                if g > best:
                    best = g
                    bestk = k
            maxs[i] = best
            argmaxs[i] = bestk
        return maxs, argmaxs

    @njit(cache=True)
    def _max_window_min_nb(S, A, Bv, n, k0, k1, k_floor):  # pragma: no cover - jitted
        best = np.inf
        bestk = k0
        for k in range(k0, k1 + 1):
            m = -np.inf
            top = n if n < k - k_floor else k - k_floor
            for i in range(1, top + 1):
                g = (S[k] - S[k - i]) + (A[k - i] - Bv[k])
                if g > m:
                    m = g
            if m < best:
                best = m
                bestk = k
        return best, bestk

    sweep_min_grid = _sweep_min_grid_nb
    sweep_max_grid = _sweep_max_grid_nb
    _max_window_min = _max_window_min_nb
else:
    sweep_min_grid = _sweep_min_grid_np
    sweep_max_grid = _sweep_max_grid_np
    _max_window_min = _max_window_min_np


def max_window_min(S, A, Bv, n, k0, k1, k_floor):
    v, k = _max_window_min(S, A, Bv, n, k0, k1, k_floor)
    return float(v), int(k)
