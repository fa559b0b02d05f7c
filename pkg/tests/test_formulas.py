import pytest

from fishburn import formulas as F
from fishburn import oracle
from fishburn.report import compare
from fishburn.series import TruncatedSeries, divide_by_t, invert, partial_z_at_zero, substitute
from golden_rows import (
    F_ROWS,
    FISHBURN,
    G1_ROWS,
    G1_U1_ROWS,
    G_ROWS,
    PTZ_ROWS,
    rows_to_series,
)


def V(name, order):
    return TruncatedSeries.var(name, order)


# building blocks


def test_delta_gamma_low_index():
    order = 5
    t, u, v, z = (V(n, order) for n in "tuvz")
    assert F.delta(1, order) == 1 + t * (u - 1)
    assert F.gamma(1, order) == 1 + z * t * (u - 1)
    assert F.delta_bar(1, order) == 1 + t * (u * v - 1)
    assert F.delta(0, order) == 1 and F.gamma(0, order) == 1


def test_inverses():
    order = 8
    assert invert(F.gamma(2, order)) * F.gamma(2, order) == 1
    t, u = V("t", order), V("u", order)
    geometric = sum((((1 - u) * t) ** k for k in range(order + 1)), TruncatedSeries.zero(order))
    assert invert(F.delta(1, order)) == geometric


def test_u_minus_one_shift():
    order = 6
    u, t = V("u", order), V("t", order)
    for k in (1, 2, 3):
        dk = F.delta(k, order)
        assert substitute(u - 1, "u", u * invert(dk)) * dk == (1 - t) ** k * (u - 1)


# enumeration oracle against the reference rows


def test_oracle_g_rows():
    assert oracle.dp_G(5) == rows_to_series(G_ROWS, 5)
    assert oracle.dp_G(5).coefficient(t=5, u=2, v=2, x=1, z=1) == 3


def test_oracle_f_rows():
    g = oracle.dp_G(3)
    assert substitute(substitute(g, "z", 1), "x", 1) == rows_to_series(F_ROWS, 3)


def test_oracle_g1_rows():
    g1 = oracle.g_r(5, 1)
    assert g1 == rows_to_series(G1_ROWS, 5)
    t4u = {e: c for e, c in g1.t_row(4).items() if e[1] == 1}
    assert t4u == {(4, 1, 1, 1, 0): 1, (4, 1, 0, 2, 0): 1, (4, 1, 0, 3, 0): 1}


def test_oracle_specialisations():
    order = 7
    g = oracle.dp_G(order)
    h = oracle.dp_H(order)
    assert substitute(substitute(g, "v", 1), "x", 1) - 1 == substitute(h, "v", 1)
    gz = substitute(substitute(substitute(g, "u", 1), "v", 1), "x", 1)
    assert gz == F.p_tz(order)
    total = substitute(gz, "z", 1)
    assert [total.coefficient(t=n) for n in range(order + 1)] == FISHBURN[: order + 1]


def test_oracle_guard():
    with pytest.raises(ValueError):
        oracle.dp_G(11)


# G_r


def test_gr_u1_rows_and_coefficients():
    g = F.gr_u1(1, 5)
    assert g == rows_to_series(G1_U1_ROWS, 5)
    assert {e: c for e, c in g.t_row(4).items() if e[1] == 2} == {
        (4, 2, 0, 1, 0): 3, (4, 2, 0, 2, 0): 3,
    }


@pytest.mark.parametrize("r", [1, 2, 3])
def test_gr_u1_lowest_term_and_scaling(r):
    order = 7
    g = F.gr_u1(r, order)
    low = min(e[0] for e in g.terms)
    assert g.t_row(low) == TruncatedSeries.monomial(order, t=r + 1, u=1, z=r)
    t, z = V("t", order), V("z", order)
    assert F.gr_u1(r + 1, order) == t * z * g


def test_gr_u1_matches_oracle_at_v1():
    order = 7
    for r in (1, 2):
        assert F.gr_u1(r, order) == substitute(oracle.g_r(order, r), "v", 1)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_lemma2(r):
    assert F.check_lemma2(r, 6).passed


@pytest.mark.parametrize("r,order", [(1, 8), (2, 8), (3, 6)])
def test_kernel_relation(r, order):
    assert F.check_kernel_relation(r, order).passed


@pytest.mark.parametrize("r,order", [(1, 6), (2, 5), (3, 6)])
def test_theorem_gr(r, order):
    assert F.check_theorem_gr(r, order).passed


def test_lemma2_mutation_is_caught():
    order = 6
    t, u, v, z = (V(n, order) for n in "tuvz")
    lhs, rhs = F.lemma2_sides(oracle.g_r(order, 1), 1)
    dropped = rhs - (v - 1) * t**2 * z * u * v
    report = compare("lemma2", lhs, dropped)
    assert not report.passed
    assert report.witness["monomial"] == "t^2 u v z"


def test_kernel_mutation_is_caught():
    order = 6
    u = V("u", order)
    g = F.gr_u1(1, order)
    lhs, _ = F.kernel_relation_sides(1, order)
    seed = TruncatedSeries.monomial(order, t=2, z=1)
    wrong = seed * u * (1 - u) + u * substitute(g, "u", u * invert(F.delta(2, order)))
    assert not compare("kernel", lhs, wrong).passed


def test_theorem_gr_catches_perturbed_oracle():
    order = 6
    bumped = oracle.g_r(order, 1) + TruncatedSeries.monomial(order, t=5, u=2, v=1, z=2)
    report = F.check_theorem_gr(1, order, gr=bumped)
    assert not report.passed and report.witness is not None


# G


@pytest.mark.parametrize("order", [5, 6])
def test_theorem_main(order):
    assert F.check_theorem_main(order).passed


def test_assembly_from_closed_form_g1():
    order = 6
    g = oracle.dp_G(order)
    assert F.assemble_g(oracle.g_r(order, 1)) == g


def test_theorem_main_catches_perturbed_oracle():
    g = oracle.dp_G(5) + TruncatedSeries.monomial(5, t=4, u=1, x=1, z=3)
    report = F.check_theorem_main(5, g=g)
    assert not report.passed
    assert report.witness["part"].startswith("theorem-main/")


# H and psi


def test_lemma_h_and_theorem_h():
    assert F.check_lemma_h(6).passed
    assert F.check_theorem_h(6).passed


def test_h_closed_specialisations():
    order = 6
    h = F.h_closed(order)
    assert substitute(h, "u", 1) == F.p_tz(order) - 1
    t, z = V("t", order), V("z", order)
    assert substitute(h, "u", 0) == z * t * invert(1 - z * t)


@pytest.mark.parametrize("m", range(6))
def test_psi(m):
    assert F.check_psi(m, 8).passed


def test_psi_zero_is_minus_one():
    assert F.psi_series(0, 8) == -1
    assert F.psi_poly(0, 8) == -1


# P(t,z), P(t) and the product form


def test_p_tz_rows():
    assert F.p_tz(6) == rows_to_series(PTZ_ROWS, 6)
    assert F.p_tz(6).coefficient(t=6, z=1) == 53


def test_p_t():
    p = F.p_t(8)
    assert [p.coefficient(t=n) for n in range(9)] == FISHBURN[:9]
    assert F.check_pt_from_ptz(8).passed


def test_p_tz_diagonal():
    # the all-zero sequence is the only one whose length equals its number of zeros
    ptz = F.p_tz(8)
    assert all(ptz.coefficient(t=n, z=n) == 1 for n in range(9))
    assert all(e[3] <= e[0] for e in ptz.terms)


def test_p_t_log_convex():
    c = [F.p_t(8).coefficient(t=n) for n in range(9)]
    assert all(x > 0 for x in c)
    assert all(c[n] ** 2 <= c[n - 1] * c[n + 1] for n in range(1, 8))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_scaling(r):
    assert F.check_scaling(r, 8).passed


def test_z_linear_coefficients_shift():
    ptz = F.p_tz(8)
    p = F.p_t(7)
    for n in range(8):
        assert ptz.coefficient(t=n + 1, z=1) == p.coefficient(t=n)
    assert divide_by_t(partial_z_at_zero(F.p_tz(6))).coefficient(t=5) == 53


def test_power_helpers():
    t = V("t", 6)
    assert (1 - t) ** 3 == 1 - 3 * t + 3 * t**2 - t**3
    assert (1 + t) ** 0 == 1
    for i in range(1, 6):
        d = 1 - (1 - t) ** i
        assert d.t_row(0).is_zero() and d.coefficient(t=1) == i


def test_conjecture_bounded_evidence():
    report = F.check_conjecture(12)
    assert report.passed
    assert "bounded-order evidence" in report.note
    assert F.p_tz_conjecture(6) == F.p_tz(6)
    assert F.p_tz_conjecture(3).restrict_t(1) == 1 + V("z", 3) * V("t", 3)


def test_formula_guard():
    with pytest.raises(ValueError):
        F.p_tz(15)
