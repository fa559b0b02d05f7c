"""Finite strict partial orders and the level representation of (2+2)-free posets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import _kernels
from .ascent import StatVector


class NotTwoPlusTwoFree(ValueError):
    """The predecessor sets of ``witness[0]`` and ``witness[1]`` are incomparable."""

    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"elements {witness[0]} and {witness[1]} have incomparable down-sets")
        self.witness = witness


class StrictPoset:
    """A strict order on ``0..n-1`` given by a boolean matrix ``less[x, y] <=> x < y``."""

    __slots__ = ("n", "less", "_down", "_up")

    def __init__(self, less: np.ndarray | Sequence[Sequence[bool]]):
        m = np.array(less, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("relation matrix must be square")
        n = m.shape[0]
        if n and m.diagonal().any():
            raise ValueError("relation is not irreflexive")
        # transitivity: less @ less must be contained in less
        if n and ((m.astype(np.int64) @ m.astype(np.int64) > 0) & ~m).any():
            raise ValueError("relation is not transitive")
        m.setflags(write=False)
        self.n = n
        self.less = m
        self._down = tuple(frozenset(np.nonzero(m[:, x])[0].tolist()) for x in range(n))
        self._up = tuple(frozenset(np.nonzero(m[x, :])[0].tolist()) for x in range(n))

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]]) -> StrictPoset:
        """Transitive closure of the given ``(x, y)`` meaning ``x < y`` pairs."""
        m = np.zeros((n, n), dtype=bool)
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair ({x}, {y}) out of range for n={n}")
            m[x, y] = True
        for k in range(n):
            m |= np.outer(m[:, k], m[k, :])
        return cls(m)

    @classmethod
    def from_down_sets(cls, down: Sequence[Iterable[int]]) -> StrictPoset:
        n = len(down)
        m = np.zeros((n, n), dtype=bool)
        for x, ds in enumerate(down):
            for y in ds:
                m[y, x] = True
        return cls(m)

    @classmethod
    def chain(cls, n: int) -> StrictPoset:
        return cls.from_relations(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> StrictPoset:
        return cls(np.zeros((n, n), dtype=bool))

    def down(self, x: int) -> frozenset[int]:
        return self._down[x]

    def up(self, x: int) -> frozenset[int]:
        return self._up[x]

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.less[x, y] or self.less[y, x])

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if not self._down[x]]

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self._up[x]]

    def covers(self) -> list[tuple[int, int]]:
        """Cover relation (transitive reduction), sorted lexicographically."""
        out = []
        for x in range(self.n):
            for y in sorted(self._up[x]):
                if not any(self.less[w, y] for w in self._up[x] if w != y):
                    out.append((x, y))
        return out

    def relabel(self, perm: Sequence[int]) -> StrictPoset:
        """Poset in which element ``perm[x]`` plays the role of ``x``."""
        p = np.asarray(perm)
        m = np.zeros_like(self.less)
        m[np.ix_(p, p)] = self.less
        return StrictPoset(m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StrictPoset):
            return NotImplemented
        return self.n == other.n and bool((self.less == other.less).all())

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self.less).tobytes()))

    def __repr__(self) -> str:
        return f"StrictPoset(n={self.n}, covers={self.covers()})"

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers()]}

    @classmethod
    def from_json(cls, data: Mapping) -> StrictPoset:
        n = int(data["n"])
        return cls.from_relations(n, [(int(a), int(b)) for a, b in data.get("covers", [])])


@dataclass(frozen=True)
class LevelPoset:
    """A (2+2)-free poset as its chain of down-sets ``D_0 < ... < D_{k-1}`` and
    levels ``L_0, ..., L_{k-1}``.

    Elements are arbitrary non-negative integer labels; an element on level
    ``i`` has predecessor set ``D_i``.
    """

    chain: tuple[frozenset[int], ...]
    levels: tuple[frozenset[int], ...]
    level_of: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.chain) != len(self.levels):
            raise ValueError("chain and levels must have equal length")
        level_of: dict[int, int] = {}
        for i, lev in enumerate(self.levels):
            if not lev:
                raise ValueError(f"level {i} is empty")
            for x in lev:
                if x in level_of:
                    raise ValueError(f"element {x} occurs on two levels")
                level_of[x] = i
        if self.chain and self.chain[0]:
            raise ValueError("D_0 must be empty")
        for i in range(1, len(self.chain)):
            if not self.chain[i - 1] < self.chain[i]:
                raise ValueError(f"D_{i - 1} is not a proper subset of D_{i}")
        for i, d in enumerate(self.chain):
            for y in d:
                j = level_of.get(y)
                if j is None or j >= i:
                    raise ValueError(f"D_{i} contains {y}, which is not on a lower level")
                if not self.chain[j] <= d:
                    raise ValueError(f"D_{i} is not closed downward at {y}")
        object.__setattr__(self, "level_of", level_of)

    @classmethod
    def empty(cls) -> LevelPoset:
        return cls((), ())

    @property
    def n(self) -> int:
        return len(self.level_of)

    @property
    def rank(self) -> int:
        return len(self.chain)

    @property
    def elements(self) -> list[int]:
        return sorted(self.level_of)

    def down(self, x: int) -> frozenset[int]:
        return self.chain[self.level_of[x]]

    def maximal(self) -> list[int]:
        top = self.chain[-1] if self.chain else frozenset()
        return [x for x in self.elements if x not in top]

    @property
    def srank(self) -> int:
        """Level of a maximal element with the smallest predecessor set (0 if empty)."""
        if not self.chain:
            return 0
        return min(self.level_of[x] for x in self.maximal())

    def to_strict(self) -> StrictPoset:
        """Relabel elements in increasing label order to ``0..n-1``."""
        labels = self.elements
        index = {x: i for i, x in enumerate(labels)}
        return StrictPoset.from_down_sets([[index[y] for y in self.down(x)] for x in labels])

    def to_json(self) -> dict:
        labels = self.elements
        index = {x: i for i, x in enumerate(labels)}
        data = self.to_strict().to_json()
        data["chain"] = [sorted(index[y] for y in d) for d in self.chain]
        data["levels"] = [sorted(index[y] for y in lev) for lev in self.levels]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> LevelPoset:
        return down_set_chain(StrictPoset.from_json(data))


def down_set_chain(p: StrictPoset) -> LevelPoset:
    """Level representation of ``p``; raises :class:`NotTwoPlusTwoFree` otherwise."""
    distinct = sorted(set(p.down(x) for x in range(p.n)), key=len)
    for a, b in zip(distinct, distinct[1:]):
        if not a < b:
            x = next(x for x in range(p.n) if p.down(x) == a)
            y = next(y for y in range(p.n) if p.down(y) == b)
            raise NotTwoPlusTwoFree((x, y))
    index = {d: i for i, d in enumerate(distinct)}
    levels: list[set[int]] = [set() for _ in distinct]
    for x in range(p.n):
        levels[index[p.down(x)]].add(x)
    return LevelPoset(tuple(distinct), tuple(frozenset(lev) for lev in levels))


def is_two_plus_two_free(p: StrictPoset) -> bool:
    try:
        down_set_chain(p)
    except NotTwoPlusTwoFree:
        return False
    return True


def contains_two_plus_two(p: StrictPoset) -> bool:
    """Direct search for an induced pair of disjoint incomparable 2-chains."""
    rel = [(a, b) for a in range(p.n) for b in p.up(a)]
    for i, (a, b) in enumerate(rel):
        for c, d in rel[i + 1 :]:
            if len({a, b, c, d}) < 4:
                continue
            if not (
                p.comparable(a, c) or p.comparable(a, d) or p.comparable(b, c) or p.comparable(b, d)
            ):
                return True
    return False


def find_three_plus_one(p: StrictPoset) -> tuple[int, int, int, int] | None:
    """An induced 3-chain ``e < u < v`` with ``r`` incomparable to all three, or ``None``."""
    for u in range(p.n):
        for e in p.down(u):
            for v in p.up(u):
                for r in range(p.n):
                    if r in (e, u, v):
                        continue
                    if not (p.comparable(r, e) or p.comparable(r, u) or p.comparable(r, v)):
                        return (e, u, v, r)
    return None


def contains_three_plus_one(p: StrictPoset) -> bool:
    return find_three_plus_one(p) is not None


def poset_stats(lp: LevelPoset) -> StatVector:
    """``(size, levels, minmax, min, lds)`` with ``levels = rank - 1``."""
    from .bijection import decompose

    if lp.n == 0:
        return StatVector(0, 0, 0, 0, 0)
    lds = decompose(lp).lds
    return StatVector(lp.n, lp.rank - 1, lp.srank, len(lp.levels[0]), lds)


# isomorphism ------------------------------------------------------------------


def _invariants(p: StrictPoset) -> list[tuple[int, int]]:
    return [(len(p.down(x)), len(p.up(x))) for x in range(p.n)]


def fingerprint(p: StrictPoset) -> tuple:
    """Isomorphism invariant: sorted multiset of (down-degree, up-degree) pairs."""
    return (p.n, tuple(sorted(_invariants(p))))


def are_isomorphic(p: StrictPoset, q: StrictPoset) -> bool:
    if p.n != q.n or fingerprint(p) != fingerprint(q):
        return False
    n = p.n
    inv_p, inv_q = _invariants(p), _invariants(q)
    freq: dict[tuple[int, int], int] = {}
    for iv in inv_p:
        freq[iv] = freq.get(iv, 0) + 1
    order = sorted(range(n), key=lambda x: (freq[inv_p[x]], inv_p[x], x))
    cand = {x: [y for y in range(n) if inv_q[y] == inv_p[x]] for x in range(n)}
    image: dict[int, int] = {}
    used: set[int] = set()
    lp, lq = p.less, q.less

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for y in cand[x]:
            if y in used:
                continue
            if all(lp[x, w] == lq[y, image[w]] and lp[w, x] == lq[image[w], y] for w in image):
                image[x] = y
                used.add(y)
                if extend(pos + 1):
                    return True
                del image[x]
                used.discard(y)
        return False

    return extend(0)


def isomorphism_classes(posets: Iterable[StrictPoset]) -> list[StrictPoset]:
    """One representative per isomorphism class, in first-seen order."""
    buckets: dict[tuple, list[StrictPoset]] = {}
    reps: list[StrictPoset] = []
    for p in posets:
        bucket = buckets.setdefault(fingerprint(p), [])
        if not any(are_isomorphic(p, q) for q in bucket):
            bucket.append(p)
            reps.append(p)
    return reps


# labeled enumeration ------------------------------------------------------------


def from_mask(n: int, mask: int, bits: np.ndarray | None = None) -> StrictPoset:
    if bits is None:
        bits = _kernels.pair_bits(n)
    m = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and (mask >> int(bits[i, j])) & 1:
                m[i, j] = True
    return StrictPoset(m)


def enumerate_strict_posets(n: int, backend: str | None = None) -> Iterator[StrictPoset]:
    """All labeled strict orders on ``n <= 5`` points."""
    if not 0 <= n <= 5:
        raise ValueError("labeled strict order enumeration is limited to n <= 5")
    bits = _kernels.pair_bits(n)
    for mask in _kernels.strict_order_masks(n, backend):
        yield from_mask(n, int(mask), bits)


def unlabeled_two_plus_two_free(n: int, backend: str | None = None) -> list[StrictPoset]:
    """Representatives of the unlabeled (2+2)-free posets on ``n <= 5`` points."""
    return isomorphism_classes(
        p for p in enumerate_strict_posets(n, backend) if is_two_plus_two_free(p)
    )


def induced(p: StrictPoset, elements: Sequence[int]) -> StrictPoset:
    idx = list(elements)
    return StrictPoset(p.less[np.ix_(idx, idx)])
