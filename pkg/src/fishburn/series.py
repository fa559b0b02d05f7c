"""Exact truncated power series in the five formal variables ``t, u, v, z, x``.

A :class:`TruncatedSeries` is a sparse polynomial with arbitrary-precision
integer coefficients in which every monomial having some exponent larger
than the truncation order ``N`` has been discarded.  The discarded monomials
generate an ideal, so ring arithmetic on representatives is exact modulo
that ideal and truncation never has to be undone.

Monomials are packed into a single Python ``int`` (seven bits per variable,
``t`` most significant), which makes exponent addition a single integer
addition and lets an ascending sort of packed keys coincide with the
lexicographic order on ``(e_t, e_u, e_v, e_z, e_x)``.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from itertools import islice
from typing import Iterable, Iterator, Mapping

VARIABLES = ("t", "u", "v", "z", "x")
NVARS = len(VARIABLES)
MAX_ORDER = 60

_BITS = 7
_FIELD = (1 << _BITS) - 1
_SHIFTS = tuple(_BITS * (NVARS - 1 - i) for i in range(NVARS))
_TSHIFT = _SHIFTS[0]
_CARRY = sum(1 << (_BITS - 1) << s for s in _SHIFTS)

Exponents = tuple[int, int, int, int, int]


def _pack(e: Iterable[int]) -> int:
    key = 0
    for d in e:
        key = (key << _BITS) | d
    return key


def _unpack(key: int) -> Exponents:
    return tuple((key >> s) & _FIELD for s in _SHIFTS)  # type: ignore[return-value]


def _overflow_add(order: int) -> int:
    # adding (63 - N) to every field sets bit 6 exactly in the fields exceeding N
    return sum(((1 << (_BITS - 1)) - 1 - order) << s for s in _SHIFTS)


def _var_index(var: str | int) -> int:
    if isinstance(var, int):
        return var
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARIABLES}") from None


class SeriesError(ValueError):
    """Raised when an operation's precondition on its operands fails."""


class TruncatedSeries:
    """Sparse multivariate integer series truncated at ``order`` in every variable."""

    __slots__ = ("order", "_c")

    def __init__(self, order: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if not 0 <= order <= MAX_ORDER:
            raise SeriesError(f"truncation order must lie in [0, {MAX_ORDER}], got {order}")
        self.order = order
        c: dict[int, int] = {}
        if terms:
            for e, coeff in terms.items():
                e = tuple(e)
                if len(e) != NVARS or min(e) < 0:
                    raise SeriesError(f"bad exponent vector {e!r}")
                if coeff and max(e) <= order:
                    k = _pack(e)
                    c[k] = c.get(k, 0) + int(coeff)
        self._c = {k: v for k, v in c.items() if v}

    @classmethod
    def _raw(cls, order: int, c: dict[int, int]) -> TruncatedSeries:
        s = cls.__new__(cls)
        s.order = order
        s._c = c
        return s

    # constructors

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls(order)

    @classmethod
    def constant(cls, value: int, order: int) -> TruncatedSeries:
        return cls(order, {(0,) * NVARS: value})

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, order: int, coeff: int = 1, **exps: int) -> TruncatedSeries:
        """``coeff * t^a u^b ...`` given as keyword exponents, e.g. ``monomial(N, t=2, z=1)``."""
        e = [0] * NVARS
        for name, d in exps.items():
            e[_var_index(name)] = d
        return cls(order, {tuple(e): coeff})

    @classmethod
    def var(cls, name: str, order: int) -> TruncatedSeries:
        return cls.monomial(order, **{name: 1})

    @classmethod
    def parse(cls, text: str, order: int) -> TruncatedSeries:
        """Build a series from a flat sum such as ``"u v x z + 3 u^2 v^2 x z - z^2 t^3"``."""
        return cls(order, parse_polynomial(text))

    # inspection

    @property
    def terms(self) -> dict[Exponents, int]:
        """Exponent-tuple view of the non-zero terms, in lexicographic order."""
        return {_unpack(k): self._c[k] for k in sorted(self._c)}

    def items(self) -> Iterator[tuple[Exponents, int]]:
        for k in sorted(self._c):
            yield _unpack(k), self._c[k]

    def coefficient(self, e: Iterable[int] | None = None, **exps: int) -> int:
        if e is None:
            v = [0] * NVARS
            for name, d in exps.items():
                v[_var_index(name)] = d
            e = v
        e = tuple(e)
        if max(e) > self.order:
            raise SeriesError(f"monomial {e} lies beyond truncation order {self.order}")
        return self._c.get(_pack(e), 0)

    def t_row(self, n: int) -> TruncatedSeries:
        """The part of the series of exact ``t``-degree ``n``."""
        return TruncatedSeries._raw(
            self.order, {k: c for k, c in self._c.items() if k >> _TSHIFT == n}
        )

    def restrict_t(self, tmax: int) -> TruncatedSeries:
        return TruncatedSeries._raw(
            self.order, {k: c for k, c in self._c.items() if k >> _TSHIFT <= tmax}
        )

    def truncate(self, order: int) -> TruncatedSeries:
        """Re-truncate at a (not larger) order."""
        if order > self.order:
            raise SeriesError("cannot raise the truncation order of a truncated series")
        carry, add = _CARRY, _overflow_add(order)
        return TruncatedSeries._raw(
            order, {k: c for k, c in self._c.items() if not (k + add) & carry}
        )

    def variables(self) -> set[str]:
        used = 0
        for k in self._c:
            used |= k
        return {VARIABLES[i] for i, s in enumerate(_SHIFTS) if (used >> s) & _FIELD}

    def is_zero(self) -> bool:
        return not self._c

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {format_series(self)})"

    # arithmetic

    def _coerce(self, other: TruncatedSeries | int) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise SeriesError(
                    f"truncation order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, int):
            return TruncatedSeries.constant(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: TruncatedSeries | int) -> TruncatedSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return TruncatedSeries._raw(self.order, c)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw(self.order, {k: -v for k, v in self._c.items()})

    def __sub__(self, other: TruncatedSeries | int) -> TruncatedSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: TruncatedSeries | int) -> TruncatedSeries:
        if isinstance(other, int):
            if not other:
                return TruncatedSeries.zero(self.order)
            return TruncatedSeries._raw(self.order, {k: v * other for k, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TruncatedSeries._raw(self.order, _mul(self._c, other._c, self.order, self.order))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        return power(self, k)

    # wire format

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "variables": list(VARIABLES),
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> TruncatedSeries:
        if list(data.get("variables", VARIABLES)) != list(VARIABLES):
            raise SeriesError(f"unsupported variable list {data.get('variables')!r}")
        return cls(int(data["order"]), {tuple(t["e"]): int(t["c"]) for t in data["terms"]})


def _mul(a: dict[int, int], b: dict[int, int], order: int, tmax: int) -> dict[int, int]:
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    items_b = sorted(b.items())
    tdeg = [k >> _TSHIFT for k, _ in items_b]
    # ends[d] = number of b-terms with t-degree <= d
    ends = [bisect_right(tdeg, d) for d in range(tmax + 1)]
    carry, add = _CARRY, _overflow_add(order)
    out: dict[int, int] = {}
    get = out.get
    for ka, ca in a.items():
        room = tmax - (ka >> _TSHIFT)
        if room < 0:
            continue
        for kb, cb in islice(items_b, ends[room]):
            k = ka + kb
            if (k + add) & carry:
                continue
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a - b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise SeriesError("negative powers are not supported; use invert()")
    result = TruncatedSeries.one(a.order)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse by t-adic Newton iteration.

    The t-degree-0 part of ``a`` must be exactly the constant 1.
    """
    t0 = {k: c for k, c in a._c.items() if k >> _TSHIFT == 0}
    if t0 != {0: 1}:
        raise SeriesError(
            "invert needs a series whose t^0 part is the constant 1; got t^0 part "
            + format_series(TruncatedSeries._raw(a.order, t0))
        )
    n = a.order
    x: dict[int, int] = {0: 1}
    prec = 1
    while prec <= n:
        prec = min(2 * prec, n + 1)
        tm = prec - 1
        ax = _mul(a._c, x, n, tm)
        err = {k: -c for k, c in ax.items() if k}
        if ax.get(0, 0) != 1:
            err[0] = 1 - ax.get(0, 0)
        corr = _mul(x, err, n, tm)
        for k, c in corr.items():
            s = x.get(k, 0) + c
            if s:
                x[k] = s
            else:
                x.pop(k, None)
    return TruncatedSeries._raw(n, x)


def _check_substitution(s: TruncatedSeries, idx: int) -> None:
    t0 = [(k, c) for k, c in s._c.items() if k >> _TSHIFT == 0]
    if not t0:
        return
    if len(t0) == 1:
        k, c = t0[0]
        if c == 1 and (k >> _SHIFTS[idx]) & _FIELD <= 1:
            return
    raise SeriesError(
        f"substitution for {VARIABLES[idx]} needs a t^0 part that is zero or a single "
        "unit monomial of degree <= 1 in that variable"
    )


def substitute(a: TruncatedSeries, var: str, s: TruncatedSeries | int) -> TruncatedSeries:
    """Replace ``var`` (one of u, v, z, x) by the series ``s`` and re-truncate."""
    idx = _var_index(var)
    if idx == 0:
        raise SeriesError("substitution for t is not supported")
    if isinstance(s, int):
        s = TruncatedSeries.constant(s, a.order)
    if s.order != a.order:
        raise SeriesError(f"truncation order mismatch: {a.order} vs {s.order}")
    _check_substitution(s, idx)
    shift = _SHIFTS[idx]
    groups: dict[int, dict[int, int]] = {}
    for k, c in a._c.items():
        e = (k >> shift) & _FIELD
        groups.setdefault(e, {})[k & ~(_FIELD << shift)] = c
    out = TruncatedSeries.zero(a.order)
    spow = TruncatedSeries.one(a.order)
    for e in range(max(groups, default=-1) + 1):
        if e:
            spow = spow * s
        if e in groups and spow:
            out = out + TruncatedSeries._raw(a.order, groups[e]) * spow
    return out


def coefficient(a: TruncatedSeries, e: Iterable[int]) -> int:
    return a.coefficient(e)


def partial_z_at_zero(a: TruncatedSeries) -> TruncatedSeries:
    """Coefficient of ``z^1``, re-emitted with the ``z`` exponent set to zero."""
    shift = _SHIFTS[3]
    return TruncatedSeries._raw(
        a.order,
        {k - (1 << shift): c for k, c in a._c.items() if (k >> shift) & _FIELD == 1},
    )


def divide_by_t(a: TruncatedSeries) -> TruncatedSeries:
    """Exact division by ``t``; the series must have no ``t^0`` terms."""
    if any(k >> _TSHIFT == 0 for k in a._c):
        raise SeriesError("series has t^0 terms; not divisible by t")
    return TruncatedSeries._raw(a.order, {k - (1 << _TSHIFT): c for k, c in a._c.items()})


def first_difference(a: TruncatedSeries, b: TruncatedSeries) -> tuple[Exponents, int, int] | None:
    """Lexicographically smallest monomial where ``a`` and ``b`` differ, with both coefficients."""
    if a.order != b.order:
        raise SeriesError(f"truncation order mismatch: {a.order} vs {b.order}")
    keys = [k for k in set(a._c) | set(b._c) if a._c.get(k, 0) != b._c.get(k, 0)]
    if not keys:
        return None
    k = min(keys)
    return _unpack(k), a._c.get(k, 0), b._c.get(k, 0)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^([a-z])(?:\^(\d+))?$")


def parse_polynomial(text: str) -> dict[Exponents, int]:
    """Parse a flat sum of monomials such as ``"u v x z + 3 u^2 v^2 x z - z^2"``.

    Factors are separated by whitespace or ``*``; an optional leading integer is the
    coefficient.  Parentheses are not supported.
    """
    out: dict[Exponents, int] = {}
    text = text.strip()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = 1
        e = [0] * NVARS
        for tok in m.group(2).replace("*", " ").split():
            if tok.isdigit():
                coeff *= int(tok)
                continue
            f = _FACTOR.match(tok)
            if not f:
                raise ValueError(f"bad factor {tok!r}")
            e[_var_index(f.group(1))] += int(f.group(2) or 1)
        key = tuple(e)
        out[key] = out.get(key, 0) + sign * coeff  # type: ignore[index]
    return {k: v for k, v in out.items() if v}


def format_monomial(e: Iterable[int]) -> str:
    parts = []
    for name, d in zip(VARIABLES, e):
        if d == 1:
            parts.append(name)
        elif d > 1:
            parts.append(f"{name}^{d}")
    return " ".join(parts) or "1"


def format_series(a: TruncatedSeries) -> str:
    if not a:
        return "0"
    out = []
    for e, c in a.items():
        mono = format_monomial(e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if mag == 1 and mono != "1" else (str(mag) if mono == "1" else f"{mag} {mono}")
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    return s + "".join(f" {sg} {b}" for sg, b in out[1:])
