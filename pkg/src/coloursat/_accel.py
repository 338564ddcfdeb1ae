"""Numerics backend: numba-jitted kernels with a pure-numpy fallback.

Set COLOURSAT_NO_NUMBA=1 to force the numpy path (used by the benchmark
script to compare both).
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("COLOURSAT_NO_NUMBA", "") == ""
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False


def _hex_abs(dq: int, dr: int) -> int:
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def _pairwise_distances_loop(qr):
    n = qr.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            dq = qr[i, 0] - qr[j, 0]
            dr = qr[i, 1] - qr[j, 1]
            d = (abs(dq) + abs(dr) + abs(dq + dr)) // 2
            out[i, j] = d
            out[j, i] = d
    return out


def _pairwise_distances_numpy(qr):
    dq = qr[:, 0][:, None] - qr[:, 0][None, :]
    dr = qr[:, 1][:, None] - qr[:, 1][None, :]
    return (np.abs(dq) + np.abs(dr) + np.abs(dq + dr)) // 2


def _distances_to_set_loop(qr, targets):
    n = qr.shape[0]
    m = targets.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        best = np.int64(1 << 60)
        for j in range(m):
            dq = qr[i, 0] - targets[j, 0]
            dr = qr[i, 1] - targets[j, 1]
            d = (abs(dq) + abs(dr) + abs(dq + dr)) // 2
            if d < best:
                best = d
        out[i] = best
    return out


def _distances_to_set_numpy(qr, targets):
    dq = qr[:, 0][:, None] - targets[:, 0][None, :]
    dr = qr[:, 1][:, None] - targets[:, 1][None, :]
    return ((np.abs(dq) + np.abs(dr) + np.abs(dq + dr)) // 2).min(axis=1)


if USE_NUMBA:
    pairwise_distances = njit(cache=True)(_pairwise_distances_loop)
    distances_to_set = njit(cache=True)(_distances_to_set_loop)
else:
    pairwise_distances = _pairwise_distances_numpy
    distances_to_set = _distances_to_set_numpy
