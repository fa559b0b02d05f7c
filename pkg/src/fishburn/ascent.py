"""Ascent sequences, restricted ascent sequences and the Catalan glue/split maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class InvalidSequence(ValueError):
    """A sequence failed validation; ``index`` is 1-based."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"index {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class StatVector:
    length: int
    ascents: int
    last: int
    zeros: int
    run: int

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "asc": self.ascents,
            "last": self.last,
            "zeros": self.zeros,
            "run": self.run,
        }

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.length, self.ascents, self.last, self.zeros, self.run)


@dataclass(frozen=True)
class AscentSequence:
    """A validated ascent sequence.  Construct with :func:`validate`."""

    entries: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        if all(0 <= x <= 9 for x in self.entries):
            return "".join(map(str, self.entries)) or "ε"
        return "(" + ",".join(map(str, self.entries)) + ")"

    def to_json(self) -> list[int]:
        return list(self.entries)


def asc(entries: Sequence[int]) -> int:
    """Number of strict rises ``entries[j] < entries[j+1]``."""
    return sum(1 for a, b in zip(entries, entries[1:]) if a < b)


def validate(entries: Iterable[int]) -> AscentSequence:
    xs = tuple(int(x) for x in entries)
    rises = 0
    for i, x in enumerate(xs):
        if x < 0:
            raise InvalidSequence(i + 1, f"negative entry {x}")
        if i == 0:
            if x != 0:
                raise InvalidSequence(1, f"first entry must be 0, got {x}")
            continue
        if x > 1 + rises:
            raise InvalidSequence(i + 1, f"entry {x} exceeds 1 + asc(prefix) = {1 + rises}")
        if x > xs[i - 1]:
            rises += 1
    return AscentSequence(xs)


def is_ascent_sequence(entries: Iterable[int]) -> bool:
    try:
        validate(entries)
    except InvalidSequence:
        return False
    return True


def parse(text: str) -> AscentSequence:
    """Parse compact digit notation (``"0101202"``) or comma-separated entries."""
    text = text.strip()
    if text in ("", "ε", "e", "eps"):
        return validate(())
    if "," in text or " " in text:
        return validate(int(p) for p in text.replace(",", " ").split())
    return validate(int(c) for c in text)


def stats(a: AscentSequence) -> StatVector:
    xs = a.entries
    if not xs:
        return StatVector(0, 0, 0, 0, 0)
    run = 0
    for i, x in enumerate(xs):
        if x:
            run = i
            break
    return StatVector(len(xs), asc(xs), xs[-1], xs.count(0), run)


def enumerate_ascent_sequences(n: int) -> Iterator[AscentSequence]:
    """All ascent sequences of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        yield AscentSequence(())
        return
    prefix = [0]

    def extend(rises: int) -> Iterator[AscentSequence]:
        if len(prefix) == n:
            yield AscentSequence(tuple(prefix))
            return
        prev = prefix[-1]
        for x in range(rises + 2):
            prefix.append(x)
            yield from extend(rises + (x > prev))
            prefix.pop()

    yield from extend(0)


def is_restricted(a: AscentSequence) -> bool:
    xs = a.entries
    top = 0
    for i, x in enumerate(xs):
        if i and x < top - 1:
            return False
        top = max(top, x)
    return True


def enumerate_restricted(n: int) -> Iterator[AscentSequence]:
    """Restricted ascent sequences of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        yield AscentSequence(())
        return
    prefix = [0]

    def extend(rises: int, top: int) -> Iterator[AscentSequence]:
        if len(prefix) == n:
            yield AscentSequence(tuple(prefix))
            return
        prev = prefix[-1]
        for x in range(max(top - 1, 0), rises + 2):
            prefix.append(x)
            yield from extend(rises + (x > prev), max(top, x))
            prefix.pop()

    yield from extend(0, 0)


def rightmost_maximum(a: AscentSequence) -> tuple[int, int] | None:
    """``(value, index)`` of the rightmost maximum, index 1-based.

    Candidates are the strict left-to-right maxima ``x_j`` with
    ``x_j == 1 + asc(x_1..x_{j-1})``; the last such candidate wins.  Strictness
    makes the returned index the leftmost occurrence of that value.
    """
    xs = a.entries
    found = None
    top = -1
    rises = 0
    for j, x in enumerate(xs):
        if j and x > xs[j - 1]:
            rises_before = rises
            rises += 1
        else:
            rises_before = rises
        if x > top:
            if x == 1 + rises_before:
                found = (x, j + 1)
            top = x
    return found


def _require_restricted(a: AscentSequence, name: str) -> None:
    if not is_restricted(a):
        raise ValueError(f"{name} = {a} is not a restricted ascent sequence")


def glue(d1: AscentSequence, d2: AscentSequence) -> AscentSequence:
    """Combine two restricted sequences into one of length ``|d1| + |d2| + 1``."""
    _require_restricted(d1, "d1")
    _require_restricted(d2, "d2")
    if d1.entries:
        a = asc(d1.entries)
        return AscentSequence(d1.entries + (1 + a,) + tuple(x + a for x in d2.entries))
    rm = rightmost_maximum(d2)
    if rm is None:
        return AscentSequence(d2.entries + (0,))
    _, j = rm
    xs = d2.entries
    return AscentSequence(xs[:j] + (xs[j - 1],) + xs[j:])


def split(a: AscentSequence) -> tuple[AscentSequence, AscentSequence]:
    """Inverse of :func:`glue` on non-empty restricted sequences."""
    if not a.entries:
        raise ValueError("cannot split the empty sequence")
    _require_restricted(a, "a")
    xs = a.entries
    rm = rightmost_maximum(a)
    if rm is None:
        return AscentSequence(()), AscentSequence(xs[:-1])
    value, j = rm
    if j < len(xs) and xs[j] == value:
        return AscentSequence(()), AscentSequence(xs[: j - 1] + xs[j:])
    d1 = xs[: j - 1]
    shift = asc(d1)
    return AscentSequence(d1), AscentSequence(tuple(x - shift for x in xs[j:]))


def catalan(n: int) -> int:
    """``C_n`` from ``C_{k+1} = sum C_i C_{k-i}``, ``C_0 = 1``."""
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[n]
