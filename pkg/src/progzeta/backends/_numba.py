"""Numba-compiled kernels: strictly sequential compensated loops.

The sequential path accumulates term by term (outer index major, inner
offset minor) with Neumaier compensation; the chunked path computes the
same compensated sums per chunk in parallel, leaving the deterministic
combination of chunk results to the caller. No fastmath anywhere: the
Veltkamp split and the compensation both rely on strict IEEE semantics.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

__all__ = ["pow_inv", "weighted_prefix_sums", "weighted_chunk_sums"]

_SPLIT = 134217729.0  # 2**27 + 1


@njit(cache=True)
def _pow_inv(x: float, sigma: float, t: float) -> tuple[float, float]:
    L = math.log(x)
    r = x * math.exp(-L) - 1.0
    mag = math.exp(-sigma * L) * (1.0 - sigma * r)
    if t == 0.0:
        return mag, 0.0
    p = t * L
    ch = _SPLIT * t
    th = ch - (ch - t)
    tl = t - th
    cl = _SPLIT * L
    lh = cl - (cl - L)
    ll = L - lh
    e = ((th * lh - p) + th * ll + tl * lh) + tl * ll
    corr = e + t * r
    c0 = math.cos(p)
    s0 = math.sin(p)
    return mag * (c0 - s0 * corr), -mag * (s0 + c0 * corr)


def pow_inv(x: float, sigma: float, t: float) -> tuple[float, float]:
    """(re, im) of x**(-sigma-it) with double-double phase formation."""
    return _pow_inv(x, sigma, t)


@njit(cache=True)
def _range_sum(b, m, sigma, t, lo, hi):
    """Neumaier-compensated sum of weighted terms for outer indices [lo, hi)."""
    sr = 0.0
    cr = 0.0
    si = 0.0
    ci = 0.0
    mm = b.shape[0]
    for n in range(lo, hi):
        base = m * n
        for j in range(mm):
            w = b[j]
            if w == 0.0:
                continue
            re, im = _pow_inv(float(base + j + 1), sigma, t)
            x = w * re
            tot = sr + x
            if abs(sr) >= abs(x):
                cr += (sr - tot) + x
            else:
                cr += (x - tot) + sr
            sr = tot
            y = w * im
            tot = si + y
            if abs(si) >= abs(y):
                ci += (si - tot) + y
            else:
                ci += (y - tot) + si
            si = tot
    return sr + cr, si + ci


@njit(cache=True)
def _prefix_kernel(b, m, sigma, t, n0, ends):
    out_re = np.empty(ends.shape[0])
    out_im = np.empty(ends.shape[0])
    sr = 0.0
    cr = 0.0
    si = 0.0
    ci = 0.0
    mm = b.shape[0]
    n = n0
    for g in range(ends.shape[0]):
        end = ends[g]
        while n < end:
            base = m * n
            for j in range(mm):
                w = b[j]
                if w == 0.0:
                    continue
                re, im = _pow_inv(float(base + j + 1), sigma, t)
                x = w * re
                tot = sr + x
                if abs(sr) >= abs(x):
                    cr += (sr - tot) + x
                else:
                    cr += (x - tot) + sr
                sr = tot
                y = w * im
                tot = si + y
                if abs(si) >= abs(y):
                    ci += (si - tot) + y
                else:
                    ci += (y - tot) + si
                si = tot
            n += 1
        out_re[g] = sr + cr
        out_im[g] = si + ci
    return out_re, out_im


@njit(parallel=True, cache=True)
def _chunk_kernel(b, m, sigma, t, n0, n1, chunk):
    nchunks = (n1 - n0 + chunk - 1) // chunk
    if nchunks < 0:
        nchunks = 0
    out_re = np.zeros(nchunks)
    out_im = np.zeros(nchunks)
    for ci_ in prange(nchunks):
        lo = n0 + ci_ * chunk
        hi = min(lo + chunk, n1)
        out_re[ci_], out_im[ci_] = _range_sum(b, m, sigma, t, lo, hi)
    return out_re, out_im


def weighted_prefix_sums(
    b: np.ndarray, m: int, sigma: float, t: float, n0: int, ends: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Compensated partial sums snapshotted at each outer endpoint in ``ends``."""
    return _prefix_kernel(b, np.int64(m), sigma, t, np.int64(n0), ends.astype(np.int64))


def weighted_chunk_sums(
    b: np.ndarray, m: int, sigma: float, t: float, n0: int, n1: int, chunk: int
) -> tuple[np.ndarray, np.ndarray]:
    """Independent compensated sums over chunks of ``chunk`` outer indices."""
    return _chunk_kernel(
        b, np.int64(m), sigma, t, np.int64(n0), np.int64(n1), np.int64(chunk)
    )
