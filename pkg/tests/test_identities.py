from math import comb

import pytest

from qtouch.arith import ONE, ZERO, QRatFun, TruncSeries, q, rf_eq
from qtouch.checks import CATALOG, catalog_ids, run_check
from qtouch.contfrac import (
    general_d_spec,
    schroeder_type_spec,
    squared_spec,
    squared_z_spec,
    stable_expansion,
    touchard_z_spec,
)
from qtouch.identities import (
    GFKind,
    cigler_S,
    cigler_S_closed,
    coeff_ext_sides,
    coeff_identity_ext,
    coeff_identity_main,
    coeff_main_sides,
    general_d_closed_form,
    general_d_corrected_closed_form,
    riordan_coefficients,
    schroeder_type_closed_form,
    series_gf,
    series_s,
    series_s_squared,
    series_touchard_rhs,
    squared_closed_form,
    squared_z_coeffs,
    verify_recu1,
    verify_recu2,
    verify_zeilberger_recursion,
    zeilberger_coefficients,
)
from qtouch.qcomb import gauss_binom, qpoch
from qtouch.report import CheckReport, Mismatch

from perturb import FAMILIES


def conv(spec, order):
    return stable_expansion(spec, order).series


# -- series builders ----------------------------------------------------------------

def test_touchard_rhs():
    assert series_touchard_rhs(3).coeffs == (1, -q, q**3, -(q**6))
    assert series_touchard_rhs(0).coeffs == (1,)
    assert series_touchard_rhs(3).evaluate_q(1) == [1, -1, 1, -1]


def test_series_s():
    assert series_s(0, 2) == series_touchard_rhs(2)
    assert series_s(-1, 4) == TruncSeries.constant("v", 1, 4)
    assert series_s(1, 1).coeffs == (ONE, -(1 + q) * q)
    for n, c in enumerate(series_s(3, 6).coeffs):
        assert c == gauss_binom(n + 3, 3) * q ** comb(n + 1, 2) * (-1) ** n


def gf_by_recurrence(kind: str, n: int) -> list[int]:
    # coefficient recurrences read off the defining quadratics
    c = [1]
    for m in range(1, n + 1):
        if kind == "catalan":
            c.append(sum(c[j] * c[m - 1 - j] for j in range(m)))
        elif kind == "motzkin":
            c.append(c[m - 1] + sum(c[j] * c[m - 2 - j] for j in range(m - 1)))
        else:
            c.append(c[m - 1] + sum(c[j] * c[m - 1 - j] for j in range(m)))
    return c


@pytest.mark.parametrize("kind,order,expected", [
    (GFKind.catalan, 5, [1, 1, 2, 5, 14, 42]),
    (GFKind.motzkin, 5, [1, 1, 2, 4, 9, 21]),
    (GFKind.schroeder, 4, [1, 2, 6, 22, 90]),
])
def test_gf_coefficients(kind, order, expected):
    assert series_gf(kind, order).evaluate_q(0) == expected
    assert expected == gf_by_recurrence(kind.value, order)
    assert series_gf(kind, 12).evaluate_q(0) == gf_by_recurrence(kind.value, 12)


@pytest.mark.parametrize("kind", list(GFKind))
def test_gf_residuals_vanish(kind):
    g = series_gf(kind, 16)
    z = TruncSeries.gen("z", 16)
    residual = {
        GFKind.catalan: 1 + z * g * g - g,
        GFKind.motzkin: 1 + z * g + z * z * g * g - g,
        GFKind.schroeder: 1 + z * g + z * g * g - g,
    }[kind]
    assert residual == TruncSeries.constant("z", 0, 16)


# -- coefficient identities -------------------------------------------------------

def test_coeff_main_n1_by_hand():
    lhs = QRatFun(q, 1 - q)
    rhs = QRatFun(1, 1 - q) - 1
    assert rf_eq(lhs, rhs)
    assert coeff_identity_main(1)
    assert rf_eq(QRatFun(coeff_main_sides(2)[0], qpoch(1, 2)),
                 QRatFun(q, 1 - q) * gauss_binom(1, 0) + QRatFun(q**4, qpoch(1, 2)))


def test_coeff_main_through_20():
    assert all(coeff_identity_main(n) for n in range(1, 21))


def test_coeff_main_sign_flip_fails():
    lhs, rhs = coeff_main_sides(1)
    assert lhs != -rhs


def test_coeff_ext_reduces_to_main():
    for n in range(1, 16):
        assert coeff_ext_sides(n, 0) == coeff_main_sides(n)


def test_coeff_ext_grid():
    assert coeff_identity_ext(3, 2)
    assert all(coeff_identity_ext(n, i) for n in range(1, 21) for i in range(7))


def test_coeff_ext_against_rational_evaluation():
    n, i = 3, 2
    lhs = sum((QRatFun(q ** (k * k + i * k) * gauss_binom(n - 1, k - 1), qpoch(1, k)) for k in range(1, n + 1)),
              QRatFun(0))
    rhs = sum((QRatFun(q ** comb(k, 2) * gauss_binom(k + i, i) * (-1) ** k, qpoch(1, n - k)) for k in range(n + 1)),
              QRatFun(0))
    assert rf_eq(lhs, rhs)


# -- Zeilberger recurrence ----------------------------------------------------------

@pytest.mark.parametrize("side", ["lhs", "rhs"])
def test_zeilberger(side):
    assert verify_zeilberger_recursion(side, 10)


def test_zeilberger_without_constant_fails():
    def dropped(n):
        c0, c1, c2 = zeilberger_coefficients(n)
        return c0, c1 - 1, c2

    assert not verify_zeilberger_recursion("lhs", 1, dropped)
    assert not verify_zeilberger_recursion("rhs", 1, dropped)


# -- recursions --------------------------------------------------------------------

def test_recu1_at_zero():
    v = TruncSeries.gen("v", 10)
    assert (1 + v) * series_s(0, 10) - v * series_s(1, 10) * (1 - q) == TruncSeries.constant("v", 1, 10)


def test_recu1():
    assert verify_recu1(8, 16).passed
    assert verify_recu1(3, 0).passed


def test_recu1_wrong_ladder():
    rep = verify_recu1(8, 16, lambda k: 1 - q ** (k - 1))
    assert not rep.passed and rep.first_mismatch.power <= 2


def test_recu2():
    assert verify_recu2(0, 1).passed
    assert verify_recu2(6, 8).passed
    assert not verify_recu2(6, 8, lambda k: 1 - q**k).passed


# -- squared ladder ----------------------------------------------------------------

def test_squared_closed_form():
    assert squared_closed_form(0) == 1
    assert squared_closed_form(1) == q**2 - 2 * q
    series = TruncSeries("v", [squared_closed_form(N) for N in range(13)])
    assert conv(squared_spec(), 12) == series


def test_squared_z():
    assert squared_z_coeffs(0) == 1
    assert squared_z_coeffs(1) == 1 + q**2 - 2 * q
    expected = conv(squared_z_spec(), 8)
    assert [squared_z_coeffs(N) for N in range(9)] == list(expected.coeffs)


def test_s_squared():
    assert series_s_squared(0, 1).coeffs == (ONE, q**2 - 2 * q)
    assert series_s_squared(-1, 5) == TruncSeries.constant("v", 1, 5)
    s1 = series_s_squared(1, 1).coeff(1)
    assert s1 == q**2 * ((1 + q) ** 2 - 2 * q**-1 * (1 + q + q**2))


# -- Cigler's S_i -----------------------------------------------------------------

def test_cigler_small():
    v = TruncSeries.gen("v", 2)
    assert cigler_S(0) == TruncSeries.constant("v", 1, 0)
    assert cigler_S(1).coeffs == (1, 1)
    assert cigler_S(2) == (1 + v) ** 2 - v * (1 - q**-1) ** 2
    assert cigler_S(2) == cigler_S_closed(2)


def test_cigler_closed_and_binomial_theorem():
    for i in range(11):
        assert cigler_S(i) == cigler_S_closed(i)
        assert cigler_S(i).evaluate_q(1) == [comb(i, k) for k in range(i + 1)]


# -- Schroeder type and general d ----------------------------------------------------

def test_schroeder_type_closed_form():
    assert schroeder_type_closed_form(0).coeffs == (1,)
    assert conv(schroeder_type_spec(), 1) == schroeder_type_closed_form(1)
    assert conv(schroeder_type_spec(), 6) == schroeder_type_closed_form(6)
    for c in schroeder_type_closed_form(8).coeffs:
        assert c.valuation() >= 0


def test_general_d_displayed_form_at_order_zero():
    assert general_d_closed_form(2, 0).coeffs == (1,)
    with pytest.raises(ValueError):
        general_d_closed_form(1, 3)


def test_general_d_displayed_form_disagrees():
    # the displayed two-sum formula already fails at v^1; see the notes file
    form = general_d_closed_form(2, 4)
    assert form.first_difference(schroeder_type_closed_form(4)) == 1
    assert form.first_difference(conv(general_d_spec(3), 4)) is not None


@pytest.mark.parametrize("d", range(1, 7))
def test_general_d_corrected(d):
    assert general_d_corrected_closed_form(d, 8) == conv(general_d_spec(d), 8)


def test_general_d_corrected_special_cases():
    assert general_d_corrected_closed_form(2, 6) == schroeder_type_closed_form(6)
    assert general_d_corrected_closed_form(1, 6) == TruncSeries("v", [squared_closed_form(N) for N in range(7)])


# -- Riordan ------------------------------------------------------------------------

def test_riordan():
    assert riordan_coefficients(0) == 1
    assert riordan_coefficients(1) == 1 - q
    z_form = conv(touchard_z_spec(), 10)
    for n in range(11):
        r = riordan_coefficients(n)
        assert r == z_form.coeff(n)
        t_n = r.divexact((1 - q) ** n)
        assert t_n.valuation() >= 0


def test_riordan_q_zero_is_catalan():
    assert [riordan_coefficients(n).evaluate(0) for n in range(6)] == [1, 1, 2, 5, 14, 42]


# -- catalog -----------------------------------------------------------------------

def test_catalog_ids_are_stable():
    ids = catalog_ids()
    assert ids[0] == "touchard-main"
    assert len(ids) == len(set(ids)) == len(CATALOG)
    for required in ("touchard-main", "cauchy", "coeff-main", "coeff-ext", "zeil-lhs", "zeil-rhs",
                     "extension-quotient", "recu1", "gauss-basic-recursion", "b-functional", "motzkin-cf",
                     "motzkin-reduction", "schroeder-cf", "schroeder-aux", "riordan", "squared-cf",
                     "squared-z", "squared-b-functional", "squared-ext", "recu2", "cigler-S",
                     "schroeder-type", "schroeder-type-b", "general-d", "touchard-z-form"):
        assert required in CATALOG


def test_run_check_examples():
    assert run_check("touchard-main", 16).passed
    assert run_check("motzkin-cf", 12).passed
    assert run_check("schroeder-aux", 12).passed


def test_run_check_unknown():
    with pytest.raises(KeyError):
        run_check("no-such-id")


@pytest.mark.parametrize("id", [i for i in catalog_ids() if i != "general-d"])
def test_catalog_passes_at_small_order(id):
    rep = run_check(id, 6)
    assert rep.passed, rep.first_mismatch


def test_report_invariant():
    with pytest.raises(ValueError):
        CheckReport("x", 1, "pass", Mismatch(0, ONE, ZERO))
    with pytest.raises(ValueError):
        CheckReport("x", 1, "fail", None)
    rep = CheckReport("x", 3, "fail", Mismatch(2, q, ZERO, "i=1"), 5, 7)
    assert rep.to_json() == {"id": "x", "order": 3, "status": "fail",
                             "first_mismatch": {"power": 2, "lhs": "q", "rhs": "0"},
                             "depth_used": 5, "elapsed_ms": 7}


# -- perturbation suite ---------------------------------------------------------------

@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_perturbation_fails_early(family):
    check = FAMILIES[family]
    assert check(False) is None
    power = check(True)
    assert power is not None and power <= 4
