"""Closed forms for the ascent-sequence generating functions and their checks.

Every infinite sum is cut at index ``order``; the comment beside each loop
gives the degree argument showing that the dropped tail vanishes modulo the
truncation.  Identities whose closed form divides by ``v*delta_1 - 1`` (t^0
part ``v - 1``) are checked multiplied through instead of divided.
"""

from __future__ import annotations

from functools import lru_cache

from . import oracle
from .report import VerificationReport, combine, compare
from .series import TruncatedSeries, divide_by_t, invert, partial_z_at_zero, substitute

MAX_FORMULA_ORDER = 14


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_FORMULA_ORDER:
        raise ValueError(f"formula orders are limited to <= {MAX_FORMULA_ORDER}, got {order}")


def _vars(order: int):
    return tuple(TruncatedSeries.var(name, order) for name in ("t", "u", "v", "z", "x"))


# building blocks --------------------------------------------------------------


def delta(k: int, order: int) -> TruncatedSeries:
    t, u, *_ = _vars(order)
    if k == 0:
        return TruncatedSeries.one(order)
    return u - (1 - t) ** k * (u - 1)


def gamma(k: int, order: int) -> TruncatedSeries:
    t, u, _, z, _ = _vars(order)
    if k == 0:
        return TruncatedSeries.one(order)
    return u - (1 - z * t) * (1 - t) ** (k - 1) * (u - 1)


def delta_bar(k: int, order: int) -> TruncatedSeries:
    _, u, v, *_ = _vars(order)
    return substitute(delta(k, order), "u", u * v)


def gamma_bar(k: int, order: int) -> TruncatedSeries:
    _, u, v, *_ = _vars(order)
    return substitute(gamma(k, order), "u", u * v)


@lru_cache(maxsize=None)
def _inverse_deltas(order: int) -> tuple[TruncatedSeries, ...]:
    return tuple(invert(delta(k, order)) for k in range(order + 2))


@lru_cache(maxsize=None)
def _inverse_gamma_products(order: int) -> tuple[TruncatedSeries, ...]:
    """``out[s] = 1 / (gamma_1 ... gamma_s)``."""
    out = [TruncatedSeries.one(order)]
    for i in range(1, order + 2):
        out.append(out[-1] * invert(gamma(i, order)))
    return tuple(out)


@lru_cache(maxsize=None)
def kernel_sum(order: int) -> TruncatedSeries:
    """``sum_s u^s (1-t)^s / (delta_s delta_{s+1} gamma_1 ... gamma_{s+1})``."""
    _check_order(order)
    t, u, *_ = _vars(order)
    inv_d = _inverse_deltas(order)
    inv_g = _inverse_gamma_products(order)
    total = TruncatedSeries.zero(order)
    step = u * (1 - t)
    weight = TruncatedSeries.one(order)
    # the s-th term is divisible by u^s, so s > order contributes nothing
    for s in range(order + 1):
        total = total + weight * inv_d[s] * inv_d[s + 1] * inv_g[s + 1]
        weight = weight * step
    assert weight.is_zero()
    return total


def kernel_sum_bar(order: int) -> TruncatedSeries:
    """The same sum with ``u`` replaced by ``u v`` throughout."""
    _, u, v, *_ = _vars(order)
    return substitute(kernel_sum(order), "u", u * v)


def _seed(r: int, order: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(order, t=r + 1, z=r)


def gr_u1(r: int, order: int) -> TruncatedSeries:
    """Closed form of ``G_r(t, u, 1, z)``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    _, u, *_ = _vars(order)
    return _seed(r, order) * u * (1 - u) * kernel_sum(order)


def theorem_bracket(order: int) -> TruncatedSeries:
    """``v(v-1) + t(1-u)(z(v-1)-v) S + u v^3 t (1-uv) S_bar``."""
    t, u, v, z, _ = _vars(order)
    return (
        v * (v - 1)
        + t * (1 - u) * (z * (v - 1) - v) * kernel_sum(order)
        + u * v**3 * t * (1 - u * v) * kernel_sum_bar(order)
    )


# G_r checks -------------------------------------------------------------------


def lemma2_sides(gr: TruncatedSeries, r: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    order = gr.order
    t, u, v, z, _ = _vars(order)
    gr1 = substitute(gr, "v", 1)
    gr_uv = substitute(gr1, "u", u * v)
    lhs = (v - 1 - t * v * (1 - u)) * gr
    rhs = (v - 1) * _seed(r, order) * u * v + t * ((v - 1) * z - v) * gr1 + t * u * v**2 * gr_uv
    return lhs, rhs


def check_lemma2(r: int, order: int, gr: TruncatedSeries | None = None) -> VerificationReport:
    """Functional equation for ``G_r`` against the enumeration oracle."""
    if gr is None:
        gr = oracle.g_r(order, r)
    lhs, rhs = lemma2_sides(gr, r)
    return compare("lemma2", lhs, rhs, {"r": r})


def kernel_relation_sides(r: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    t, u, _, z, _ = _vars(order)
    g = gr_u1(r, order)
    d1 = delta(1, order)
    lhs = d1 * gamma(1, order) * g
    rhs = _seed(r, order) * u * (1 - u) + u * substitute(g, "u", u * invert(d1))
    return lhs, rhs


def check_kernel_relation(r: int, order: int) -> VerificationReport:
    _check_order(order)
    lhs, rhs = kernel_relation_sides(r, order)
    return compare("kernel", lhs, rhs, {"r": r})


def theorem_gr_sides(gr: TruncatedSeries, r: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    order = gr.order
    _, u, v, *_ = _vars(order)
    lhs = (v * delta(1, order) - 1) * gr
    rhs = _seed(r, order) * u * theorem_bracket(order)
    return lhs, rhs


def check_theorem_gr(r: int, order: int, gr: TruncatedSeries | None = None) -> VerificationReport:
    """Closed form for ``G_r(t,u,v,z)`` multiplied through by ``v delta_1 - 1``."""
    if gr is None:
        gr = oracle.g_r(order, r)
    lhs, rhs = theorem_gr_sides(gr, r)
    return compare("theorem-gr", lhs, rhs, {"r": r})


def check_scaling(r: int, order: int) -> VerificationReport:
    """``G_r = (tz)^(r-1) G_1`` on the closed form at ``v = 1``."""
    t, _, _, z, _ = _vars(order)
    return compare("scaling", gr_u1(r, order), (t * z) ** (r - 1) * gr_u1(1, order), {"r": r})


# G ------------------------------------------------------------------------------


def theorem_main_sides(g: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    order = g.order
    t, u, v, z, x = _vars(order)
    lhs = (1 - t * z * x) * (v * delta(1, order) - 1) * (g - invert(1 - t * z))
    rhs = TruncatedSeries.monomial(order, t=2, z=1, x=1) * u * theorem_bracket(order)
    return lhs, rhs


def assemble_g(g1: TruncatedSeries) -> TruncatedSeries:
    """``1/(1-tz) + sum_r (tz)^(r-1) x^r G_1``."""
    order = g1.order
    t, _, _, z, x = _vars(order)
    total = invert(1 - t * z)
    # x^r vanishes for r > order
    for r in range(1, order + 1):
        total = total + (t * z) ** (r - 1) * x**r * g1
    return total


def check_theorem_main(order: int, g: TruncatedSeries | None = None) -> VerificationReport:
    if g is None:
        g = oracle.dp_G(order)
    lhs, rhs = theorem_main_sides(g)
    main = compare("theorem-main/closed-form", lhs, rhs)
    assembly = compare("theorem-main/assembly", g, assemble_g(_x_coefficient(g, 1)))
    return combine("theorem-main", order, {}, [main, assembly])


def _x_coefficient(g: TruncatedSeries, r: int) -> TruncatedSeries:
    return TruncatedSeries(g.order, {(n, a, l, m, 0): c for (n, a, l, m, e), c in g.items() if e == r})


# H and psi ----------------------------------------------------------------------


def h_closed(order: int) -> TruncatedSeries:
    """``H(u,1,z,t) = sum_s z t (1-u) u^s (1-t)^s / (delta_s gamma_1 ... gamma_{s+1})``."""
    _check_order(order)
    t, u, _, z, _ = _vars(order)
    inv_d = _inverse_deltas(order)
    inv_g = _inverse_gamma_products(order)
    total = TruncatedSeries.zero(order)
    weight = z * t * (1 - u)
    step = u * (1 - t)
    # the s-th term is divisible by u^s
    for s in range(order + 1):
        total = total + weight * inv_d[s] * inv_g[s + 1]
        weight = weight * step
    assert weight.is_zero()
    return total


def lemma_h_sides(h: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    order = h.order
    t, u, v, z, _ = _vars(order)
    h1 = substitute(h, "v", 1)
    h_uv = substitute(h1, "u", u * v)
    lhs = (v - 1 - t * v * (1 - u)) * h
    rhs = t * z * (v - 1) + t * (z * (v - 1) - v) * h1 + t * u * v**2 * h_uv
    return lhs, rhs


def check_lemma_h(order: int, h: TruncatedSeries | None = None) -> VerificationReport:
    if h is None:
        h = oracle.dp_H(order)
    lhs, rhs = lemma_h_sides(h)
    return compare("lemma-h", lhs, rhs)


def check_theorem_h(order: int) -> VerificationReport:
    """Closed form of ``H(u,1,z,t)`` against the oracle at ``v = 1``."""
    return compare("theorem-h", h_closed(order), substitute(oracle.dp_H(order), "v", 1))


def psi_series(m: int, order: int) -> TruncatedSeries:
    _check_order(order)
    t, u, _, z, _ = _vars(order)
    inv_g = _inverse_gamma_products(order)
    head = (u - 1) ** (m + 1) * (1 - z * t) ** (m + 1)
    step = u * (1 - t) ** (m + 1)
    weight = TruncatedSeries.one(order)
    total = TruncatedSeries.zero(order)
    # the k-th term is divisible by u^k
    for k in range(order + 1):
        total = total + head * weight * inv_g[k + 1]
        weight = weight * step
    assert weight.is_zero()
    return total


def psi_poly(m: int, order: int) -> TruncatedSeries:
    t, u, _, z, _ = _vars(order)
    total = TruncatedSeries.zero(order)
    for j in range(m + 1):
        prod = TruncatedSeries.one(order)
        for i in range(j + 1, m + 1):
            prod = prod * (1 - (1 - t) ** i)
        total = total + (u - 1) ** j * (1 - z * t) ** j * u ** (m - j) * prod
    return -total


def psi_recursion_sides(psi: TruncatedSeries, m: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    order = psi.order
    t, u, _, z, _ = _vars(order)
    d1 = delta(1, order)
    lhs = gamma(1, order) * psi
    rhs = (u - 1) ** (m + 1) * (1 - z * t) ** (m + 1) + u * d1**m * substitute(
        psi, "u", u * invert(d1)
    )
    return lhs, rhs


def check_psi(m: int, order: int) -> VerificationReport:
    series = psi_series(m, order)
    poly = psi_poly(m, order)
    parts = [
        compare("psi/series=poly", series, poly),
        compare("psi/recursion-series", *psi_recursion_sides(series, m)),
        compare("psi/recursion-poly", *psi_recursion_sides(poly, m)),
    ]
    return combine("psi", order, {"m": m}, parts)


# P(t, z) and P(t) ---------------------------------------------------------------


def p_tz(order: int) -> TruncatedSeries:
    """``1 + sum_n z t / (1-zt)^(n+1) prod_{i<=n} (1-(1-t)^i)``."""
    _check_order(order)
    return _p_tz(order)


def _p_tz(order: int) -> TruncatedSeries:
    t, _, _, z, _ = _vars(order)
    geo = invert(1 - z * t)
    scale = z * t * geo
    prod = TruncatedSeries.one(order)
    total = TruncatedSeries.one(order)
    # the product over i <= n has lowest t-degree n
    for n in range(order + 1):
        if n:
            prod = prod * (1 - (1 - t) ** n)
            scale = scale * geo
        total = total + scale * prod
    assert (prod * (1 - (1 - t) ** (order + 1))).is_zero()
    return total


def p_t(order: int) -> TruncatedSeries:
    """``sum_n prod_{i<=n} (1-(1-t)^i)``."""
    _check_order(order)
    t = TruncatedSeries.var("t", order)
    prod = TruncatedSeries.one(order)
    total = TruncatedSeries.one(order)
    # the n-th product has lowest t-degree n
    for n in range(1, order + 1):
        prod = prod * (1 - (1 - t) ** n)
        total = total + prod
    assert (prod * (1 - (1 - t) ** (order + 1))).is_zero()
    return total


def p_t_from_p_tz(order: int) -> TruncatedSeries:
    """``(1/t) dP(t,z)/dz`` at ``z = 0``, computed from ``p_tz`` one order higher."""
    _check_order(order)
    return divide_by_t(partial_z_at_zero(_p_tz(order + 1))).truncate(order)


def check_pt_from_ptz(order: int) -> VerificationReport:
    return compare("pt-from-ptz", p_t(order), p_t_from_p_tz(order))


def p_tz_conjecture(order: int) -> TruncatedSeries:
    """``sum_n prod_{i<=n} (1 - (1-t)^(i-1) (1-zt))``."""
    _check_order(order)
    t, _, _, z, _ = _vars(order)
    prod = TruncatedSeries.one(order)
    total = TruncatedSeries.one(order)
    # every factor is divisible by t
    for n in range(1, order + 1):
        prod = prod * (1 - (1 - t) ** (n - 1) * (1 - z * t))
        total = total + prod
    assert (prod * (1 - (1 - t) ** order * (1 - z * t))).is_zero()
    return total


def check_conjecture(order: int) -> VerificationReport:
    report = compare("conjecture", p_tz(order), p_tz_conjecture(order))
    report.note = (
        f"bounded-order evidence only: the two forms agree through t^{order}; "
        "this is not a proof of the identity"
        if report.passed
        else f"the two forms differ at order {order}"
    )
    return report
