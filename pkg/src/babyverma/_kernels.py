"""Compiled kernels for mod-p elimination, with a pure-numpy fallback.

Set ``BABYVERMA_DISABLE_NUMBA=1`` to force the numpy path (useful for
debugging and for the backend-agreement tests).  If numba cannot be
imported the numpy path is used automatically.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = "BABYVERMA_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


try:  # pragma: no cover - import guard
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path


def rref_numpy(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """In-place reduced row echelon form; entries must lie in ``[0, p)``."""
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(a, p):  # pragma: no cover - compiled
        t, new_t = 0, 1
        r, new_r = p, a % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        return t % p

    @njit(cache=True)
    def _rref_nb(a, p):  # pragma: no cover - compiled
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod(a[r, c], p)
            if inv != 1:
                for j in range(c, n):
                    a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()


def rref_inplace(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    if USE_NUMBA:
        return _rref_nb(a, np.int64(p))
    return rref_numpy(a, p)


def rref_with(a: np.ndarray, p: int, use_numba: bool) -> tuple[int, np.ndarray]:
    """Explicit backend choice, used by the benchmark and agreement tests."""
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return _rref_nb(a, np.int64(p))
    return rref_numpy(a, p)
