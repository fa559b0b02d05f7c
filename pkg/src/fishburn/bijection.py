"""Addition and removal of elements on (2+2)-free posets, and the induced bijection
with ascent sequences.

Every poset built here carries integer labels: a new element receives the next
unused label and removal never relabels, so ``poset_to_sequence`` and
``sequence_to_poset`` are mutually inverse on labeled representatives, not only
up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .ascent import AscentSequence, validate
from .poset import LevelPoset


@dataclass(frozen=True)
class Step:
    rule: str
    level: int
    element: int


@dataclass(frozen=True)
class Decomposition:
    sequence: AscentSequence
    steps: tuple[Step, ...]  # in removal order
    lds: int


def _add(lp: LevelPoset, i: int, label: int | None = None) -> tuple[LevelPoset, str]:
    k = lp.rank
    if not 0 <= i <= k:
        raise ValueError(f"level {i} outside [0, {k}]")
    z = label if label is not None else (max(lp.level_of) + 1 if lp.level_of else 0)
    if z in lp.level_of:
        raise ValueError(f"label {z} already in use")
    if i == k:
        # new top level covering every maximal element
        everything = frozenset(lp.level_of)
        return LevelPoset(lp.chain + (everything,), lp.levels + (frozenset({z}),)), "Add2"
    s = lp.srank
    if i <= s:
        levels = list(lp.levels)
        levels[i] = levels[i] | {z}
        return LevelPoset(lp.chain, tuple(levels)), "Add1"
    covered = frozenset(x for x in lp.maximal() if lp.level_of[x] < i)
    chain = lp.chain[: i + 1] + tuple(d | covered for d in lp.chain[i:])
    levels = lp.levels[:i] + (frozenset({z}),) + lp.levels[i:]
    return LevelPoset(chain, levels), "Add3"


def add_element(lp: LevelPoset, i: int, label: int | None = None) -> LevelPoset:
    """Insert a new element so that the result has ``srank == i``."""
    return _add(lp, i, label)[0]


def _remove(lp: LevelPoset) -> tuple[LevelPoset, int, str, int, int]:
    if lp.n == 0:
        raise ValueError("cannot remove from the empty poset")
    s = lp.srank
    k = lp.rank
    # all maximal elements on level s share D_s; take the largest label
    h = max(x for x in lp.maximal() if lp.level_of[x] == s)
    ds = len(lp.chain[s])
    if len(lp.levels[s]) > 1:
        levels = list(lp.levels)
        levels[s] = levels[s] - {h}
        return LevelPoset(lp.chain, tuple(levels)), s, "Rem1", h, ds
    if s == k - 1:
        return LevelPoset(lp.chain[:-1], lp.levels[:-1]), s, "Rem2", h, ds
    freed = lp.chain[s + 1] - lp.chain[s]
    chain = lp.chain[:s] + tuple(d - freed for d in lp.chain[s + 1 :])
    levels = lp.levels[:s] + lp.levels[s + 1 :]
    return LevelPoset(chain, levels), s, "Rem3", h, ds


def remove_element(lp: LevelPoset) -> tuple[LevelPoset, int]:
    """Remove the chosen minimal-down-set maximal element; returns ``(Q, srank(lp))``."""
    q, i, *_ = _remove(lp)
    return q, i


def decompose(lp: LevelPoset) -> Decomposition:
    """Strip ``lp`` down to nothing, recording removal levels and the lds statistic."""
    steps = []
    lds = 0
    while lp.n:
        lp, i, rule, h, ds = _remove(lp)
        steps.append(Step(rule, i, h))
        if ds:
            lds = ds
    seq = validate(step.level for step in reversed(steps))
    return Decomposition(seq, tuple(steps), lds)


def poset_to_sequence(lp: LevelPoset) -> AscentSequence:
    return decompose(lp).sequence


def build(a: AscentSequence | Iterable[int]) -> tuple[LevelPoset, tuple[Step, ...]]:
    """Fold the addition rules over ``a``; also returns the per-step trace."""
    if not isinstance(a, AscentSequence):
        a = validate(a)
    lp = LevelPoset.empty()
    steps = []
    for label, x in enumerate(a.entries):
        # validity of the sequence guarantees x <= rank at every step
        assert x <= lp.rank, (a, label, x, lp.rank)
        lp, rule = _add(lp, x, label)
        steps.append(Step(rule, x, label))
    return lp, tuple(steps)


def sequence_to_poset(a: AscentSequence | Iterable[int]) -> LevelPoset:
    return build(a)[0]
