"""The check catalog: one entry per identity, each building both sides independently
and comparing them coefficient by coefficient."""

from __future__ import annotations

import time
from math import comb
from dataclasses import dataclass, replace
from typing import Callable

from . import identities as ids
from .arith import ONE, ZERO, LaurentPoly, TruncSeries, ts_compose
from .contfrac import (
    general_d_spec,
    motzkin_spec,
    schroeder_spec,
    schroeder_type_spec,
    shifted_spec,
    squared_spec,
    squared_z_spec,
    stable_expansion,
    touchard_spec,
    touchard_z_spec,
)
from .qcomb import gauss_binom, q_triangular
from .report import CheckReport, Mismatch, first_of, report, series_mismatch

__all__ = ["CATALOG", "CatalogEntry", "UnknownCheck", "run_check", "run_all", "catalog_ids"]

SERIES_ORDER = 16
COEFF_ORDER = 20
RECU2_ORDER = 8
EXT_SHIFTS = 6
GENERAL_D = (2, 3, 4, 5)


class UnknownCheck(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    default_order: int
    run: Callable[[int], CheckReport]
    summary: str


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _convergent_vs(id: str, spec, rhs: TruncSeries, order: int) -> CheckReport:
    res = stable_expansion(spec, order)
    m = series_mismatch(res.series, rhs)
    if m is None and not res.stabilized:
        m = Mismatch(order, res.series.coeff(order), rhs.coeff(order), "convergent not stabilized")
    return report(id, order, m, res.depth_used)


def _poly_grid(id: str, order: int, pairs) -> CheckReport:
    """``pairs`` yields (power, lhs, rhs, where)."""
    for power, lhs, rhs, where in pairs:
        if lhs != rhs:
            return report(id, order, Mismatch(power, lhs, rhs, where))
    return report(id, order, None)


# -- individual checks ---------------------------------------------------------

def check_touchard_main(order: int) -> CheckReport:
    return _convergent_vs("touchard-main", touchard_spec(), ids.series_touchard_rhs(order), order)


def touchard_z_rhs(order: int) -> TruncSeries:
    """(1/(1 - zC)) sum_k q^binom(k+1,2) (1 - C)^k."""
    C = ids.series_gf("catalan", order)
    z = TruncSeries.gen("z", order)
    one_minus_c = 1 - C
    acc = TruncSeries.constant("z", 0, order)
    power = TruncSeries.constant("z", 1, order)
    for k in range(order + 1):
        acc = acc + power * q_triangular(k, 1)
        power = power * one_minus_c
    return acc / (1 - z * C)


def check_touchard_z_form(order: int) -> CheckReport:
    return _convergent_vs("touchard-z-form", touchard_z_spec(), touchard_z_rhs(order), order)


def check_cauchy(order: int) -> CheckReport:
    def pairs():
        for N in range(order + 1):
            lhs, rhs = ids.cauchy_sides(N, order)
            yield N, lhs, rhs, ""
    return _poly_grid("cauchy", order, pairs())


def check_coeff_main(order: int) -> CheckReport:
    def pairs():
        for n in range(1, order + 1):
            yield (n, *ids.coeff_main_sides(n), "")
    return _poly_grid("coeff-main", order, pairs())


def check_coeff_ext(order: int) -> CheckReport:
    def pairs():
        for i in range(EXT_SHIFTS + 1):
            for n in range(1, order + 1):
                yield (n, *ids.coeff_ext_sides(n, i), f"i={i}")
    return _poly_grid("coeff-ext", order, pairs())


def _check_zeil(side: str, order: int) -> CheckReport:
    def pairs():
        for n in range(1, order + 1):
            r = ids.zeilberger_residual(side, n)
            # residual numerator must vanish; report it against zero
            yield n, r.num, ZERO, f"side={side}"
    return _poly_grid(f"zeil-{side}", order, pairs())


def check_extension_quotient(order: int) -> CheckReport:
    """F(q^i) three ways: shifted convergent, ratio s_i/s_{i-1} of the displayed sums,
    and B(q^{i+1})/B(q^i) from the a_n ansatz."""
    first = None
    depth = 0
    for i in range(EXT_SHIFTS + 1):
        res = stable_expansion(shifted_spec(touchard_spec(), i), order)
        depth = res.depth_used
        num = ids.series_s(i, order)
        den = ids.series_s(i - 1, order)
        ratio = num / den
        ansatz = ids.ansatz_B(i + 1, order).divexact(ids.ansatz_B(i, order))
        b_over_b1 = ids.ansatz_B(i + 1, order).divexact(ids.ansatz_B(0, order))
        first = first_of(
            series_mismatch(res.series, ratio, f"i={i} ratio"),
            series_mismatch(res.series, ansatz, f"i={i} ansatz"),
            series_mismatch(b_over_b1, num, f"i={i} B(q^(i+1))/B(1)"),
        )
        if first:
            break
    return report("extension-quotient", order, first, depth)


def check_recu1(order: int) -> CheckReport:
    return ids.verify_recu1(8, order)


def check_gauss_basic(order: int) -> CheckReport:
    def pairs():
        for i in range(1, order + 1):
            for n in range(1, order + 1):
                lhs = gauss_binom(n + i, i) - gauss_binom(n + i - 1, i).shift(i)
                yield n, lhs, gauss_binom(n + i - 1, i - 1), f"i={i}"
    return _poly_grid("gauss-basic-recursion", order, pairs())


def _functional_pairs(c, order, coefficient=None, where=""):
    for n in range(1, order + 1):
        residual = ids.beta_functional_residual(c, n, coefficient)
        if residual:
            k, lead = residual.items()[0]
            yield n, lead, ZERO, f"{where} v^{k}".strip()


def check_b_functional(order: int) -> CheckReport:
    rep = _poly_grid("b-functional", order, _functional_pairs(None, order, ids.ansatz_coefficient))
    if not rep.passed:
        return rep
    # F(1) = B(q)/B(1)
    quotient = ids.ansatz_B(1, order).divexact(ids.ansatz_B(0, order))
    return report("b-functional", order, series_mismatch(quotient, ids.series_touchard_rhs(order), "B(q)/B(1)"))


def motzkin_rhs(order: int) -> TruncSeries:
    """sum_k (-1)^k q^binom(k+1,2) z^{2k} M^{2k+1}."""
    M = ids.series_gf("motzkin", order)
    z2M2 = TruncSeries.gen("z", order) ** 2 * M * M
    acc = TruncSeries.constant("z", 0, order)
    power = M
    for k in range(order // 2 + 1):
        acc = acc + power * (q_triangular(k, 1) * _sign(k))
        power = power * z2M2
    return acc


def check_motzkin_cf(order: int) -> CheckReport:
    return _convergent_vs("motzkin-cf", motzkin_spec(), motzkin_rhs(order), order)


def check_motzkin_reduction(order: int) -> CheckReport:
    """Motzkin fraction at z = v/(1+v+v^2), divided by 1+v+v^2, is Touchard's in x = v^2."""
    res = stable_expansion(motzkin_spec(), order)
    v = TruncSeries.gen("v", order)
    trinomial = 1 + v + v * v
    sub = v / trinomial
    reduced = ts_compose(res.series, sub) / trinomial
    touchard = ids.series_touchard_rhs(order // 2, "x")
    expected = TruncSeries("v", [touchard.coeff(k // 2) if k % 2 == 0 else ZERO for k in range(order + 1)], order)
    m = series_mismatch(reduced, expected)
    if m is None:
        # M(z(v)) = 1 + v + v^2 is what makes the reduction work
        m = series_mismatch(ts_compose(ids.series_gf("motzkin", order), sub), trinomial, "M(z(v))")
    return report("motzkin-reduction", order, m, res.depth_used)


def schroeder_rhs(order: int) -> TruncSeries:
    """sum_k (-1)^k q^binom(k+1,2) z^k S^{2k+1}."""
    S = ids.series_gf("schroeder", order)
    zS2 = TruncSeries.gen("z", order) * S * S
    acc = TruncSeries.constant("z", 0, order)
    power = S
    for k in range(order + 1):
        acc = acc + power * (q_triangular(k, 1) * _sign(k))
        power = power * zS2
    return acc


def check_schroeder_cf(order: int) -> CheckReport:
    return _convergent_vs("schroeder-cf", schroeder_spec(), schroeder_rhs(order), order)


def schroeder_aux_sides(order: int) -> tuple[TruncSeries, TruncSeries]:
    """(1-z) S(z) (1 - y C(y)) and z S^2 - C(y) + 1 under y = z/(1-z)^2."""
    z = TruncSeries.gen("z", order)
    S = ids.series_gf("schroeder", order)
    y = z / ((1 - z) * (1 - z))
    Cy = ts_compose(ids.series_gf("catalan", order), y)
    return (1 - z) * S * (1 - y * Cy), z * S * S - Cy + 1


def check_schroeder_aux(order: int) -> CheckReport:
    first, second = schroeder_aux_sides(order)
    one = TruncSeries.constant("z", 1, order)
    zero = TruncSeries.constant("z", 0, order)
    m = first_of(series_mismatch(first, one, "(1-z)S(1-yC)"), series_mismatch(second, zero, "zS^2-C+1"))
    return report("schroeder-aux", order, m)


def check_riordan(order: int) -> CheckReport:
    res = stable_expansion(touchard_z_spec(), order)

    def pairs():
        for n in range(order + 1):
            formula = ids.riordan_coefficients(n)
            yield n, res.series.coeff(n), formula, ""
            try:
                formula.divexact((ONE - LaurentPoly.monomial(1)) ** n)
            except ArithmeticError:
                yield n, formula, ZERO, "not divisible by (1-q)^n"
    rep = _poly_grid("riordan", order, pairs())
    return replace(rep, depth_used=res.depth_used)


def check_squared_cf(order: int) -> CheckReport:
    rhs = TruncSeries("v", [ids.squared_closed_form(N) for N in range(order + 1)], order)
    return _convergent_vs("squared-cf", squared_spec(), rhs, order)


def check_squared_z(order: int) -> CheckReport:
    rhs = TruncSeries("z", [ids.squared_z_coeffs(N) for N in range(order + 1)], order)
    return _convergent_vs("squared-z", squared_z_spec(), rhs, order)


def check_squared_b_functional(order: int) -> CheckReport:
    return _poly_grid("squared-b-functional", order, _functional_pairs(0, order))


def check_squared_ext(order: int) -> CheckReport:
    first, depth = None, 0
    for i in range(EXT_SHIFTS + 1):
        res = stable_expansion(shifted_spec(squared_spec(), i), order)
        depth = res.depth_used
        quotient = ids.bonus_ratio_series(i + 1, order) / ids.bonus_ratio_series(i, order)
        first = series_mismatch(res.series, quotient, f"i={i}")
        if first:
            break
    return report("squared-ext", order, first, depth)


def check_recu2(order: int) -> CheckReport:
    return ids.verify_recu2(EXT_SHIFTS, order)


def check_cigler_S(order: int) -> CheckReport:
    def pairs():
        for i in range(order + 1):
            rec, closed = ids.cigler_S(i), ids.cigler_S_closed(i)
            k = rec.first_difference(closed)
            if k is not None:
                yield k, rec.coeff(k), closed.coeff(k), f"i={i}"
            at_one = rec.evaluate_q(1)
            for k, c in enumerate(at_one):
                yield k, LaurentPoly.constant(c), LaurentPoly.constant(comb(i, k)), f"i={i} q=1"
    return _poly_grid("cigler-S", order, pairs())


def check_schroeder_type(order: int) -> CheckReport:
    return _convergent_vs("schroeder-type", schroeder_type_spec(), ids.schroeder_type_closed_form(order), order)


def check_schroeder_type_b(order: int) -> CheckReport:
    return _poly_grid("schroeder-type-b", order, _functional_pairs(1, order))


def check_general_d(order: int) -> CheckReport:
    """The two-sum closed form for d = 2..5, its d = 2 agreement with the Schroeder-type
    form, and the beta_n functional equations."""
    depth = 0
    for d in GENERAL_D:
        rep = _poly_grid("general-d", order, _functional_pairs(d - 1, order, where=f"d={d} beta"))
        if not rep.passed:
            return rep
    for d in GENERAL_D:
        res = stable_expansion(general_d_spec(d), order)
        depth = res.depth_used
        m = series_mismatch(res.series, ids.general_d_closed_form(d, order), f"d={d}")
        if m:
            return report("general-d", order, m, depth)
    m = series_mismatch(ids.general_d_closed_form(2, order), ids.schroeder_type_closed_form(order), "d=2 vs (1-q^i)(1-q^(i+1))")
    return report("general-d", order, m, depth)


def check_general_d_corrected(order: int) -> CheckReport:
    depth = 0
    for d in (1, *GENERAL_D):
        res = stable_expansion(general_d_spec(d), order)
        depth = res.depth_used
        m = series_mismatch(res.series, ids.general_d_corrected_closed_form(d, order), f"d={d}")
        if m:
            return report("general-d-corrected", order, m, depth)
    m = series_mismatch(ids.general_d_corrected_closed_form(2, order), ids.schroeder_type_closed_form(order), "d=2")
    return report("general-d-corrected", order, m, depth)


_ENTRIES = [
    ("touchard-main", SERIES_ORDER, check_touchard_main, "Touchard T-fraction vs sum (-1)^k q^binom(k+1,2) v^k"),
    ("touchard-z-form", SERIES_ORDER, check_touchard_z_form, "z-fraction vs (1/(1-zC)) sum q^binom(k+1,2) (1-C)^k"),
    ("cauchy", COEFF_ORDER, check_cauchy, "Cauchy's sum, coefficientwise with 1/(v;q)_n by series division"),
    ("coeff-main", COEFF_ORDER, check_coeff_main, "main coefficient identity, denominators cleared"),
    ("coeff-ext", COEFF_ORDER, check_coeff_ext, "shifted coefficient identity, i <= 6"),
    ("zeil-lhs", COEFF_ORDER, lambda n: _check_zeil("lhs", n), "second-order recurrence, left-hand sum"),
    ("zeil-rhs", COEFF_ORDER, lambda n: _check_zeil("rhs", n), "second-order recurrence, right-hand sum"),
    ("extension-quotient", SERIES_ORDER, check_extension_quotient, "F(q^i) = s_i/s_{i-1} = B(q^{i+1})/B(q^i), i <= 6"),
    ("recu1", SERIES_ORDER, check_recu1, "(1+v)s_i - (1-q^{i+1}) v s_{i+1} = s_{i-1}, i <= 8"),
    ("gauss-basic-recursion", COEFF_ORDER, check_gauss_basic, "[n+i,i] - q^i [n+i-1,i] = [n+i-1,i-1]"),
    ("b-functional", SERIES_ORDER, check_b_functional, "a_n solves the B(t) functional equation; F(1) = B(q)/B(1)"),
    ("motzkin-cf", SERIES_ORDER, check_motzkin_cf, "Motzkin fraction vs sum (-1)^k q^binom(k+1,2) z^{2k} M^{2k+1}"),
    ("motzkin-reduction", SERIES_ORDER, check_motzkin_reduction, "z = v/(1+v+v^2) reduces to Touchard in x = v^2"),
    ("schroeder-cf", SERIES_ORDER, check_schroeder_cf, "Schroeder fraction vs sum (-1)^k q^binom(k+1,2) z^k S^{2k+1}"),
    ("schroeder-aux", SERIES_ORDER, check_schroeder_aux, "(1-z)S = 1/(1-yC(y)), zS^2 = C(y)-1, y = z/(1-z)^2"),
    ("riordan", SERIES_ORDER, check_riordan, "Riordan's formula for T_n(q)(1-q)^n"),
    ("squared-cf", SERIES_ORDER, check_squared_cf, "(1-q^i)^2 ladder vs q^{N(N+1)} sum (-1)^n q^{-n^2}"),
    ("squared-z", SERIES_ORDER, check_squared_z, "(1-q^i)^2 ladder in z vs the ballot-number translation"),
    ("squared-b-functional", SERIES_ORDER, check_squared_b_functional, "beta_n solves (1-t)beta(t) = ..."),
    ("squared-ext", SERIES_ORDER, check_squared_ext, "shifted (1-q^i)^2 fraction vs quotient of double sums"),
    ("recu2", RECU2_ORDER, check_recu2, "s_{i,N} recursion on the grid i <= 6"),
    ("cigler-S", SERIES_ORDER, check_cigler_S, "S_i recurrence vs closed form; (1+v)^i at q = 1"),
    ("schroeder-type", SERIES_ORDER, check_schroeder_type, "(1-q^i)(1-q^{i+1}) ladder vs its closed form"),
    ("schroeder-type-b", SERIES_ORDER, check_schroeder_type_b, "beta_n solves (1-qt)beta(t) = ..."),
    ("general-d", SERIES_ORDER, check_general_d, "(1-q^i)(1-q^{d+i-1}) ladder vs the two-sum form, d = 2..5"),
    ("general-d-corrected", SERIES_ORDER, check_general_d_corrected, "same ladder vs the re-derived closed form, d = 1..5"),
]

CATALOG: dict[str, CatalogEntry] = {i: CatalogEntry(i, o, f, s) for i, o, f, s in _ENTRIES}


def catalog_ids() -> list[str]:
    return list(CATALOG)


def run_check(id: str, order: int | None = None) -> CheckReport:
    try:
        entry = CATALOG[id]
    except KeyError:
        raise UnknownCheck(id) from None
    order = entry.default_order if order is None else order
    if order < 0:
        raise ValueError("order must be nonnegative")
    start = time.perf_counter()
    rep = entry.run(order)
    elapsed = int((time.perf_counter() - start) * 1000)
    return replace(rep, id=id, order=order, elapsed_ms=elapsed)


def run_all(order: int | None = None) -> list[CheckReport]:
    return [run_check(i, order) for i in CATALOG]
