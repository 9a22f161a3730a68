"""Counting and F_p linear-algebra kernels.

Each kernel has a numba ``@njit`` version and a pure-numpy version. Numba is
used when it imports and ``TIGHTCLOSE_DISABLE_NUMBA`` is unset (or "0").
Both paths must return identical integers; the benchmark in
``benchmarks/bench_kernels.py`` times one against the other.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("TIGHTCLOSE_DISABLE_NUMBA", "0") in ("", "0")

# Box points processed per numpy batch.
_CHUNK = 1 << 18


def as_lead_array(monos, nvars):
    if len(monos) == 0:
        return np.zeros((0, nvars), dtype=np.int64)
    return np.asarray(monos, dtype=np.int64).reshape(len(monos), nvars)


# -- numpy reference path ---------------------------------------------------


def _box_points(bounds, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    pts = np.empty((idx.size, len(bounds)), dtype=np.int64)
    for j in range(len(bounds) - 1, -1, -1):
        pts[:, j] = idx % bounds[j]
        idx //= bounds[j]
    return pts


def _outside(pts, leads):
    keep = np.ones(pts.shape[0], dtype=bool)
    for g in leads:
        keep &= ~np.all(pts >= g, axis=1)
    return keep


def count_standard_box_np(leads, bounds):
    bounds = np.asarray(bounds, dtype=np.int64)
    total = int(np.prod(bounds))
    count = 0
    for start in range(0, total, _CHUNK):
        pts = _box_points(bounds, start, min(total, start + _CHUNK))
        count += int(_outside(pts, leads).sum())
    return count


def _compositions(n, k):
    if k == 1:
        return np.array([[n]], dtype=np.int64)
    parts = []
    for first in range(n, -1, -1):
        rest = _compositions(n - first, k - 1)
        parts.append(np.hstack([np.full((rest.shape[0], 1), first, dtype=np.int64), rest]))
    return np.vstack(parts)


def count_standard_degree_np(leads, nvars, degree):
    pts = _compositions(degree, nvars)
    return int(_outside(pts, leads).sum())


def rank_mod_p_np(matrix, p):
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        factors = a[:, c].copy()
        factors[rank] = 0
        a = (a - np.outer(factors, a[rank])) % p
        rank += 1
    return rank


# -- numba path -----------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _is_standard(pt, leads):
        for g in range(leads.shape[0]):
            inside = True
            for j in range(leads.shape[1]):
                if pt[j] < leads[g, j]:
                    inside = False
                    break
            if inside:
                return False
        return True

    @njit(cache=True)
    def count_standard_box_nb(leads, bounds):
        n = bounds.shape[0]
        pt = np.zeros(n, dtype=np.int64)
        count = 0
        while True:
            if _is_standard(pt, leads):
                count += 1
            j = n - 1
            while j >= 0:
                pt[j] += 1
                if pt[j] < bounds[j]:
                    break
                pt[j] = 0
                j -= 1
            if j < 0:
                return count

    @njit(cache=True)
    def count_standard_degree_nb(leads, nvars, degree):
        pt = np.zeros(nvars, dtype=np.int64)
        if nvars == 1:
            pt[0] = degree
            return 1 if _is_standard(pt, leads) else 0
        count = 0
        # odometer over the first nvars-1 coordinates; the last absorbs the rest
        m = nvars - 1
        while True:
            s = 0
            for j in range(m):
                s += pt[j]
            if s <= degree:
                pt[m] = degree - s
                if _is_standard(pt, leads):
                    count += 1
            j = m - 1
            while j >= 0:
                pt[j] += 1
                if pt[j] <= degree:
                    break
                pt[j] = 0
                j -= 1
            if j < 0:
                return count

    @njit(cache=True)
    def _inv_mod(a, p):
        result = 1
        e = p - 2
        b = a % p
        while e > 0:
            if e & 1:
                result = (result * b) % p
            b = (b * b) % p
            e >>= 1
        return result

    @njit(cache=True)
    def rank_mod_p_nb(matrix, p):
        a = matrix.copy() % p
        rows, cols = a.shape
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            piv = -1
            for r in range(rank, rows):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            for j in range(cols):
                tmp = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = tmp
            inv = _inv_mod(a[rank, c], p)
            for j in range(cols):
                a[rank, j] = (a[rank, j] * inv) % p
            for r in range(rows):
                if r != rank and a[r, c] != 0:
                    f = a[r, c]
                    for j in range(cols):
                        a[r, j] = (a[r, j] - f * a[rank, j]) % p
            rank += 1
        return rank


# -- dispatch -------------------------------------------------------------


def count_standard_box(leads, bounds, use_numba=None):
    """Number of points of ``prod(range(b))`` not divisible by any row of ``leads``."""
    leads = np.ascontiguousarray(leads, dtype=np.int64)
    bounds = np.ascontiguousarray(bounds, dtype=np.int64)
    if np.any(bounds <= 0):
        return 0
    if USE_NUMBA if use_numba is None else use_numba:
        return int(count_standard_box_nb(leads, bounds))
    return count_standard_box_np(leads, bounds)


def count_standard_degree(leads, nvars, degree, use_numba=None):
    """Number of degree-``degree`` monomials not divisible by any row of ``leads``."""
    leads = np.ascontiguousarray(leads, dtype=np.int64)
    if degree < 0:
        return 0
    if USE_NUMBA if use_numba is None else use_numba:
        return int(count_standard_degree_nb(leads, nvars, degree))
    return count_standard_degree_np(leads, nvars, degree)


def rank_mod_p(matrix, p, use_numba=None):
    """Rank of an integer matrix over F_p."""
    a = np.ascontiguousarray(matrix, dtype=np.int64)
    if a.size == 0:
        return 0
    if USE_NUMBA if use_numba is None else use_numba:
        return int(rank_mod_p_nb(a, p))
    return rank_mod_p_np(a, p)
