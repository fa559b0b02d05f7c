"""Brute-force generating functions obtained by enumerating ascent sequences."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _kernels
from .series import TruncatedSeries, substitute

MAX_ENUMERATION_ORDER = 10


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ENUMERATION_ORDER:
        raise ValueError(
            f"enumeration oracles are limited to order <= {MAX_ENUMERATION_ORDER}, got {order}"
        )


@lru_cache(maxsize=None)
def stat_counts(order: int) -> np.ndarray:
    _check_order(order)
    counts = _kernels.ascent_stat_counts(order)
    counts.setflags(write=False)
    return counts


def dp_G(order: int) -> TruncatedSeries:
    """``sum t^length u^asc v^last z^zeros x^run`` over ascent sequences of length <= order."""
    counts = stat_counts(order)
    idx = np.argwhere(counts)
    return TruncatedSeries(order, {tuple(int(d) for d in e): int(counts[tuple(e)]) for e in idx})


def g_r(order: int, r: int) -> TruncatedSeries:
    """``G_r(t,u,v,z)``: sequences starting with exactly ``r`` zeros followed by a 1."""
    if r < 1:
        raise ValueError("r must be at least 1")
    counts = stat_counts(order)
    if r > order:
        return TruncatedSeries.zero(order)
    idx = np.argwhere(counts[..., r])
    return TruncatedSeries(
        order, {(int(n), int(a), int(l), int(m), 0): int(counts[n, a, l, m, r]) for n, a, l, m in idx}
    )


def dp_H(order: int) -> TruncatedSeries:
    """``H(u,v,z,t)``: non-empty ascent sequences by asc, last, zeros and length."""
    return substitute(dp_G(order), "x", 1) - 1
