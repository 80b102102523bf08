"""Hot inner loops, compiled with numba when available.

Every kernel exists twice: a plain-numpy implementation (``*_np``) and a
numba ``@njit`` one (``*_nb``). The public names bound at the bottom of this
module point at the numba versions unless numba is missing or the
environment variable ``ZETALAB_NO_NUMBA`` is set to a non-empty value other
than ``0``. Both paths are exercised by the test suite and compared in
``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, prange

    # The bundled TBB is often older than numba wants; skip it unless asked.
    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return decorator

    prange = range


def _flag_disabled() -> bool:
    v = os.environ.get("ZETALAB_NO_NUMBA", "")
    return v not in ("", "0")


USE_NUMBA = NUMBA_AVAILABLE and not _flag_disabled()

_CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# Dirichlet partial sums  sum_{n=lo}^{hi-1} n^{-s}  and  sum -ln(n) n^{-s}
# ---------------------------------------------------------------------------


def dirichlet_sums_np(s, lo, hi, deriv):
    s = np.asarray(s, dtype=np.complex128)
    hi = np.asarray(hi, dtype=np.int64)
    out = np.zeros(s.shape[0], dtype=np.complex128)
    dout = np.zeros(s.shape[0], dtype=np.complex128)
    for i in range(s.shape[0]):
        acc = 0j
        dacc = 0j
        for start in range(lo, int(hi[i]), _CHUNK):
            stop = min(start + _CHUNK, int(hi[i]))
            logn = np.log(np.arange(start, stop, dtype=np.float64))
            terms = np.exp(-s[i] * logn)
            acc += terms.sum()
            if deriv:
                dacc -= (logn * terms).sum()
        out[i] = acc
        dout[i] = dacc
    return out, dout


@njit(cache=True, parallel=True)
def dirichlet_sums_nb(s, lo, hi, deriv):
    m = s.shape[0]
    out = np.zeros(m, dtype=np.complex128)
    dout = np.zeros(m, dtype=np.complex128)
    for i in prange(m):
        acc = 0j
        dacc = 0j
        si = s[i]
        for n in range(lo, hi[i]):
            ln = np.log(n)
            term = np.exp(-si * ln)
            acc += term
            if deriv:
                dacc -= ln * term
        out[i] = acc
        dout[i] = dacc
    return out, dout


# ---------------------------------------------------------------------------
# Riemann-Siegel main sum  sum_{n<=N(t)} n^{-1/2} cos(theta - t ln n)
# ---------------------------------------------------------------------------


def rs_main_sum_np(t, theta, nterms):
    t = np.asarray(t, dtype=np.float64)
    out = np.empty(t.shape[0], dtype=np.float64)
    for i in range(t.shape[0]):
        n = np.arange(1, int(nterms[i]) + 1, dtype=np.float64)
        out[i] = np.sum(np.cos(theta[i] - t[i] * np.log(n)) / np.sqrt(n))
    return out


@njit(cache=True, parallel=True)
def rs_main_sum_nb(t, theta, nterms):
    m = t.shape[0]
    out = np.empty(m, dtype=np.float64)
    for i in prange(m):
        acc = 0.0
        for n in range(1, nterms[i] + 1):
            acc += np.cos(theta[i] - t[i] * np.log(n)) / np.sqrt(n)
        out[i] = acc
    return out


# ---------------------------------------------------------------------------
# Smallest-prime-factor sieve
# ---------------------------------------------------------------------------


def spf_sieve_np(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    r = int(limit ** 0.5)
    for p in range(2, r + 1):
        if spf[p] == 0:
            spf[p] = p
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return spf


@njit(cache=True)
def spf_sieve_nb(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    r = int(limit ** 0.5)
    for p in range(2, r + 1):
        if spf[p] == 0:
            spf[p] = p
            for m in range(p * p, limit + 1, p):
                if spf[m] == 0:
                    spf[m] = p
    for n in range(2, limit + 1):
        if spf[n] == 0:
            spf[n] = n
    return spf


# ---------------------------------------------------------------------------
# Gaussian-weighted sums  out[j] = sum_i w[i] * exp(-c[j] * e[i])
# (von Mangoldt sums in the explicit formula)
# ---------------------------------------------------------------------------


def gauss_sums_np(weights, expo, coef):
    weights = np.asarray(weights, dtype=np.float64)
    expo = np.asarray(expo, dtype=np.float64)
    out = np.empty(len(coef), dtype=np.float64)
    for j, c in enumerate(coef):
        acc = 0.0
        for start in range(0, expo.shape[0], _CHUNK):
            sl = slice(start, start + _CHUNK)
            acc += float(np.dot(weights[sl], np.exp(-c * expo[sl])))
        out[j] = acc
    return out


@njit(cache=True, parallel=True)
def gauss_sums_nb(weights, expo, coef):
    m = coef.shape[0]
    out = np.empty(m, dtype=np.float64)
    for j in prange(m):
        acc = 0.0
        c = coef[j]
        for i in range(expo.shape[0]):
            arg = c * expo[i]
            if arg < 745.0:
                acc += weights[i] * np.exp(-arg)
        out[j] = acc
    return out


if USE_NUMBA:
    dirichlet_sums = dirichlet_sums_nb
    rs_main_sum = rs_main_sum_nb
    spf_sieve = spf_sieve_nb
    gauss_sums = gauss_sums_nb
    BACKEND = "numba"
else:
    dirichlet_sums = dirichlet_sums_np
    rs_main_sum = rs_main_sum_np
    spf_sieve = spf_sieve_np
    gauss_sums = gauss_sums_np
    BACKEND = "numpy"
