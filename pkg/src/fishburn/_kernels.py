"""Hot enumeration loops, compiled with numba when available.

Two brute-force oracles dominate the runtime of the verification suite: the
five-statistic histogram over all ascent sequences up to a given length, and
the scan over all relation bitmasks on ``n`` labeled points for strict partial
orders.  Each has a numba kernel and a vectorised numpy fallback producing
identical arrays.  Set ``FISHBURN_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLED = os.environ.get("FISHBURN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}
BACKEND = "numpy" if DISABLED or numba is None else "numba"


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def _resolve(backend: str | None) -> str:
    backend = backend or BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    return backend


# ascent sequence statistics -------------------------------------------------


@_njit
def _ascent_counts_numba(nmax):
    d = nmax + 1
    counts = np.zeros((d, d, d, d, d), dtype=np.int64)
    counts[0, 0, 0, 0, 0] = 1
    if nmax == 0:
        return counts
    val = np.zeros(d, dtype=np.int64)
    asc = np.zeros(d, dtype=np.int64)
    last = np.zeros(d, dtype=np.int64)
    zeros = np.zeros(d, dtype=np.int64)
    run = np.zeros(d, dtype=np.int64)
    allzero = np.zeros(d, dtype=np.bool_)
    allzero[0] = True
    # position 1 always holds 0
    asc[1] = 0
    last[1] = 0
    zeros[1] = 1
    run[1] = 0
    allzero[1] = True
    counts[1, 0, 0, 1, 0] += 1
    k = 1
    while True:
        if k < nmax:
            k += 1
            val[k] = 0
        else:
            while k > 1 and val[k] >= asc[k - 1] + 1:
                k -= 1
            if k == 1:
                break
            val[k] += 1
        x = val[k]
        asc[k] = asc[k - 1] + (1 if x > last[k - 1] else 0)
        last[k] = x
        zeros[k] = zeros[k - 1] + (1 if x == 0 else 0)
        allzero[k] = allzero[k - 1] and x == 0
        if allzero[k - 1] and x != 0:
            run[k] = k - 1
        elif allzero[k]:
            run[k] = 0
        else:
            run[k] = run[k - 1]
        counts[k, asc[k], last[k], zeros[k], run[k]] += 1
    return counts


def _ascent_counts_numpy(nmax: int) -> np.ndarray:
    d = nmax + 1
    counts = np.zeros((d,) * 5, dtype=np.int64)
    counts[0, 0, 0, 0, 0] = 1
    if nmax == 0:
        return counts
    asc = np.zeros(1, dtype=np.int64)
    last = np.zeros(1, dtype=np.int64)
    zeros = np.ones(1, dtype=np.int64)
    run = np.zeros(1, dtype=np.int64)
    allzero = np.ones(1, dtype=bool)
    counts[1, 0, 0, 1, 0] = 1
    for k in range(2, nmax + 1):
        fan = asc + 2
        parent = np.repeat(np.arange(asc.size), fan)
        starts = np.repeat(np.cumsum(fan) - fan, fan)
        x = np.arange(parent.size) - starts
        p_last = last[parent]
        p_allzero = allzero[parent]
        asc = asc[parent] + (x > p_last)
        last = x
        zeros = zeros[parent] + (x == 0)
        allzero = p_allzero & (x == 0)
        run = np.where(p_allzero & (x != 0), k - 1, np.where(allzero, 0, run[parent]))
        np.add.at(counts, (k, asc, last, zeros, run), 1)
    return counts


def ascent_stat_counts(nmax: int, backend: str | None = None) -> np.ndarray:
    """Histogram ``counts[length, asc, last, zeros, run]`` over all ascent sequences
    of length at most ``nmax`` (the empty sequence included)."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    if _resolve(backend) == "numba":
        return _ascent_counts_numba(nmax)
    return _ascent_counts_numpy(nmax)


# strict partial orders on labeled points ------------------------------------


def pair_bits(n: int) -> np.ndarray:
    """``bits[i, j]`` is the bit position encoding ``i < j`` (``-1`` on the diagonal)."""
    bits = -np.ones((n, n), dtype=np.int64)
    b = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                bits[i, j] = b
                b += 1
    return bits


@_njit
def _strict_orders_numba(n, bits):
    m = n * (n - 1)
    total = 1 << m
    keep = np.zeros(total, dtype=np.bool_)
    for mask in range(total):
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(n):
                if i == j or not (mask >> bits[i, j]) & 1:
                    continue
                if (mask >> bits[j, i]) & 1:
                    ok = False
                    break
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if (mask >> bits[j, k]) & 1 and not (mask >> bits[i, k]) & 1:
                        ok = False
                        break
                if not ok:
                    break
        keep[mask] = ok
    return np.nonzero(keep)[0].astype(np.int64)


def _strict_orders_numpy(n: int, bits: np.ndarray) -> np.ndarray:
    m = n * (n - 1)
    masks = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(masks.size, dtype=bool)
    rel = {
        (i, j): ((masks >> bits[i, j]) & 1).astype(bool)
        for i in range(n)
        for j in range(n)
        if i != j
    }
    for i in range(n):
        for j in range(i + 1, n):
            ok &= ~(rel[i, j] & rel[j, i])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) == 3:
                    ok &= ~(rel[i, j] & rel[j, k] & ~rel[i, k])
    return masks[ok]


def strict_order_masks(n: int, backend: str | None = None) -> np.ndarray:
    """All relation bitmasks (see :func:`pair_bits`) that are strict partial orders."""
    if not 0 <= n <= 5:
        raise ValueError("labeled strict order enumeration is limited to n <= 5")
    bits = pair_bits(n)
    if _resolve(backend) == "numba":
        return _strict_orders_numba(n, bits)
    return _strict_orders_numpy(n, bits)
