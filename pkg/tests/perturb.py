"""One deliberately broken variant per identity family.

Each entry is ``f(perturbed) -> first failing power or None``. Unperturbed, every
family must hold; perturbed, it must fail at a power (or index) of at most 4.
"""

from __future__ import annotations

from math import comb

from qtouch.arith import ZERO, TruncSeries, q
from qtouch.contfrac import (
    general_d_spec,
    motzkin_spec,
    schroeder_spec,
    schroeder_type_spec,
    shifted_spec,
    squared_spec,
    stable_expansion,
    touchard_spec,
    touchard_z_spec,
)
from qtouch.identities import (
    GFKind,
    beta_coefficient,
    beta_functional_residual,
    bonus_ratio_series,
    cigler_S,
    cigler_S_closed,
    coeff_ext_sides,
    general_d_corrected_closed_form,
    schroeder_type_closed_form,
    series_gf,
    series_s,
    verify_recu1,
    verify_recu2,
    zeilberger_coefficients,
    zeilberger_residual,
)
from qtouch.qcomb import gauss_binom, qpoch

ORDER = 6


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def first_diff(a: TruncSeries, b: TruncSeries) -> int | None:
    return a.first_difference(b)


def conv(spec, order: int = ORDER) -> TruncSeries:
    return stable_expansion(spec, order).series


def touchard_main(perturbed: bool) -> int | None:
    flip = 2 if perturbed else None
    rhs = TruncSeries("v", [q ** comb(k + 1, 2) * (sign(k) * (-1 if k == flip else 1)) for k in range(ORDER + 1)])
    return first_diff(conv(touchard_spec()), rhs)


def coeff_main(perturbed: bool) -> int | None:
    for n in range(1, 9):
        lhs = sum((q ** (k * k) * qpoch(k + 1, n - k) * gauss_binom(n - 1, k - 1) for k in range(1, n + 1)), ZERO)
        rhs = sum((q ** comb(k, 2) * qpoch(n - k + 1, k) * sign(k) for k in range(n + 1)), ZERO)
        if perturbed:
            rhs = -rhs
        if lhs != rhs:
            return n
    return None


def coeff_ext(perturbed: bool) -> int | None:
    for n in range(1, 9):
        lhs, rhs = coeff_ext_sides(n, 2)
        if perturbed:
            # [k+i, i] -> [k+i+1, i]
            rhs = sum((q ** comb(k, 2) * qpoch(n - k + 1, k) * gauss_binom(k + 3, 2) * sign(k)
                       for k in range(n + 1)), ZERO)
        if lhs != rhs:
            return n
    return None


def zeilberger(perturbed: bool) -> int | None:
    def coefficients(n):
        c0, c1, c2 = zeilberger_coefficients(n)
        return (c0, c1 - 1, c2) if perturbed else (c0, c1, c2)

    for n in range(1, 6):
        for side in ("lhs", "rhs"):
            if not zeilberger_residual(side, n, coefficients).is_zero():
                return n
    return None


def recu1(perturbed: bool) -> int | None:
    ladder = (lambda k: 1 - q ** (k - 1)) if perturbed else None
    rep = verify_recu1(6, 10, ladder)
    return None if rep.passed else rep.first_mismatch.power


def recu2(perturbed: bool) -> int | None:
    ladder = (lambda k: 1 - q**k) if perturbed else None
    rep = verify_recu2(4, 6, ladder)
    return None if rep.passed else rep.first_mismatch.power


def cauchy(perturbed: bool) -> int | None:
    # [v^N] sum_n v^n q^{n^2-n}/((q;q)_n (v;q)_n) = 1/(q;q)_N, using
    # 1/(v;q)_n = sum_k [n+k-1, k] v^k; both sides times (q;q)_N
    for N in range(1, 9):
        lhs = ZERO
        for n in range(N + 1):
            e = n * n - (0 if perturbed else n)
            lhs = lhs + q**e * qpoch(n + 1, N - n) * gauss_binom(N - 1, N - n)
        if lhs != 1:
            return N
    return None


def _alt_gf_sum(kind: GFKind, zpow: int, tri_shift: int) -> TruncSeries:
    g = series_gf(kind, ORDER)
    z = TruncSeries.gen("z", ORDER)
    total = TruncSeries.constant("z", 0, ORDER)
    for k in range(ORDER + 1):
        total = total + (z ** (zpow * k)) * g ** (2 * k + 1) * (q ** comb(k + tri_shift, 2) * sign(k))
    return total


def motzkin(perturbed: bool) -> int | None:
    return first_diff(conv(motzkin_spec()), _alt_gf_sum(GFKind.motzkin, 2, 0 if perturbed else 1))


def schroeder(perturbed: bool) -> int | None:
    return first_diff(conv(schroeder_spec()), _alt_gf_sum(GFKind.schroeder, 1, 0 if perturbed else 1))


def riordan(perturbed: bool) -> int | None:
    lhs = conv(touchard_z_spec())
    for n in range(ORDER + 1):
        drop = 2 if perturbed else 1
        rhs = sum((q ** comb(k + 1, 2) * sign(k) * (comb(2 * n, n - k) - (comb(2 * n, n - k - drop) if n - k - drop >= 0 else 0))
                   for k in range(n + 1)), ZERO)
        if lhs.coeff(n) != rhs:
            return n
    return None


def squared(perturbed: bool) -> int | None:
    width = -1 if perturbed else 0
    rhs = TruncSeries("v", [
        sum((q ** (N * (N + 1) - n * n) * sign(n) for n in range(-N - width, N + width + 1)), ZERO)
        for N in range(ORDER + 1)])
    return first_diff(conv(squared_spec()), rhs)


def squared_ext(perturbed: bool) -> int | None:
    # F shifted by i equals B(q^{i+1})/B(q^i); compare F>>i against the bonus ratio
    for i in range(0, 4):
        shift = i + 1 if perturbed else i
        lhs = conv(shifted_spec(squared_spec(), shift), 4)
        ratio = bonus_ratio_series(i + 1, 4) / bonus_ratio_series(i, 4)
        k = first_diff(lhs, ratio)
        if k is not None:
            return k
    return None


def extension_quotient(perturbed: bool) -> int | None:
    for i in range(0, 5):
        shift = i + 1 if perturbed else i
        k = first_diff(conv(shifted_spec(touchard_spec(), shift)), series_s(i, ORDER) / series_s(i - 1, ORDER))
        if k is not None:
            return k
    return None


def cigler(perturbed: bool) -> int | None:
    for i in range(0, 7):
        rec = cigler_S(i)
        if perturbed and i >= 2:
            v = TruncSeries.gen("v", i)
            rec = (1 + v) * cigler_S(i - 1) - v * cigler_S(i - 2) * (1 - q ** (-i)) ** 2
        k = first_diff(rec, cigler_S_closed(i))
        if k is not None:
            return k
    return None


def schroeder_type(perturbed: bool) -> int | None:
    spec = general_d_spec(3) if perturbed else schroeder_type_spec()
    return first_diff(conv(spec), schroeder_type_closed_form(ORDER))


def general_d(perturbed: bool) -> int | None:
    for d in (2, 3, 4, 5):
        k = first_diff(conv(general_d_spec(d + 1 if perturbed else d)), general_d_corrected_closed_form(d, ORDER))
        if k is not None:
            return k
    return None


def beta_functional(perturbed: bool) -> int | None:
    for c in range(0, 5):
        for n in range(1, 6):
            coefficient = (lambda k, c=c: beta_coefficient(c + 1, k)) if perturbed else None
            if beta_functional_residual(c, n, coefficient):
                return n
    return None


FAMILIES = {
    "touchard-main": touchard_main,
    "coeff-main": coeff_main,
    "coeff-ext": coeff_ext,
    "zeilberger": zeilberger,
    "recu1": recu1,
    "recu2": recu2,
    "cauchy": cauchy,
    "motzkin-cf": motzkin,
    "schroeder-cf": schroeder,
    "riordan": riordan,
    "squared-cf": squared,
    "squared-ext": squared_ext,
    "extension-quotient": extension_quotient,
    "cigler-S": cigler,
    "schroeder-type": schroeder_type,
    "general-d": general_d,
    "beta-functional": beta_functional,
}
