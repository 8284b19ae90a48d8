"""Pure-numpy fallback kernels.

Same contract as the numba backend. Terms are produced in blocks of outer
indices; block sums use numpy's pairwise reduction and are folded together
with Neumaier-compensated addition, so results match a strictly sequential
compensated loop to well below 1e-14 relative.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["pow_inv", "weighted_prefix_sums", "weighted_chunk_sums"]

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitting constant

# Outer indices per vectorized block; scaled down for large m so scratch
# arrays stay comfortably in cache.
_BLOCK_TARGET = 32768


def pow_inv(x: float, sigma: float, t: float) -> tuple[float, float]:
    """(re, im) of x**(-sigma-it) for real x >= 1.

    The phase t*ln(x) is formed in double-double precision: the rounding of
    ln(x) is recovered from the residual x*exp(-L) - 1 and the product t*L
    is split exactly, so the phase error stays near 1e-16*|t| instead of
    ulp(t*ln x).
    """
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


def _term_parts(x: np.ndarray, sigma: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized pow_inv over an array of bases."""
    L = np.log(x)
    r = x * np.exp(-L) - 1.0
    mag = np.exp(-sigma * L)
    mag *= 1.0 - sigma * r
    if t == 0.0:
        return mag, np.zeros_like(mag)
    p = t * L
    ch = _SPLIT * t
    th = ch - (ch - t)
    tl = t - th
    cl = _SPLIT * L
    lh = cl - (cl - L)
    ll = L - lh
    e = ((th * lh - p) + th * ll + tl * lh) + tl * ll
    corr = e + t * r
    c0 = np.cos(p)
    s0 = np.sin(p)
    return mag * (c0 - s0 * corr), -mag * (s0 + c0 * corr)


def _neumaier(s: float, c: float, x: float) -> tuple[float, float]:
    total = s + x
    if abs(s) >= abs(x):
        c += (s - total) + x
    else:
        c += (x - total) + s
    return total, c


def _block_sums(
    b: np.ndarray, m: int, sigma: float, t: float, lo: int, hi: int
) -> tuple[float, float]:
    """Plain (uncompensated) sums of weighted terms for outer indices [lo, hi)."""
    ks = np.nonzero(b)[0]
    w = b[ks]
    offs = (ks + 1).astype(np.float64)
    n = np.arange(lo, hi, dtype=np.float64)
    x = (m * n)[:, None] + offs[None, :]
    re, im = _term_parts(x, sigma, t)
    return float(np.sum(re * w)), float(np.sum(im * w))


def weighted_prefix_sums(
    b: np.ndarray, m: int, sigma: float, t: float, n0: int, ends: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Compensated partial sums snapshotted at each outer endpoint in ``ends``.

    ``ends`` is ascending with every entry >= n0; snapshot g covers outer
    indices [n0, ends[g]).
    """
    block = max(1, _BLOCK_TARGET // max(m, 1))
    out_re = np.empty(len(ends))
    out_im = np.empty(len(ends))
    sr = cr = si = ci = 0.0
    n = n0
    for g, end in enumerate(ends):
        while n < end:
            hi = min(n + block, int(end))
            bre, bim = _block_sums(b, m, sigma, t, n, hi)
            sr, cr = _neumaier(sr, cr, bre)
            si, ci = _neumaier(si, ci, bim)
            n = hi
        out_re[g] = sr + cr
        out_im[g] = si + ci
    return out_re, out_im


def weighted_chunk_sums(
    b: np.ndarray, m: int, sigma: float, t: float, n0: int, n1: int, chunk: int
) -> tuple[np.ndarray, np.ndarray]:
    """Independent sums over chunks of ``chunk`` outer indices each."""
    nchunks = max(0, -(-(n1 - n0) // chunk))
    out_re = np.zeros(nchunks)
    out_im = np.zeros(nchunks)
    for ci_ in range(nchunks):
        lo = n0 + ci_ * chunk
        hi = min(lo + chunk, n1)
        out_re[ci_], out_im[ci_] = _block_sums(b, m, sigma, t, lo, hi)
    return out_re, out_im
