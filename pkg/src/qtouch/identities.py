"""Independent builders for the series and closed forms around Touchard's
continued fraction, and exact checkers for the recurrences they satisfy.

Every builder here works from an explicit sum or recurrence; none of them
calls the continued-fraction evaluator, so comparing a builder against a
convergent is a genuine two-route check.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from math import comb
from typing import Callable

from .arith import ONE, LaurentPoly, QRatFun, TruncSeries, VPoly, ZERO
from .qcomb import QMonomialBase, gauss_binom, q_pochhammer, q_triangular, qpoch
from .report import CheckReport, Mismatch, report

__all__ = [
    "GFKind",
    "series_touchard_rhs",
    "series_s",
    "series_gf",
    "coeff_main_sides",
    "coeff_identity_main",
    "coeff_ext_sides",
    "coeff_identity_ext",
    "zeilberger_T",
    "zeilberger_coefficients",
    "zeilberger_residual",
    "verify_zeilberger_recursion",
    "verify_recu1",
    "squared_closed_form",
    "squared_z_coeffs",
    "s_squared_coeff",
    "series_s_squared",
    "bonus_ratio_series",
    "verify_recu2",
    "cigler_S",
    "cigler_S_closed",
    "schroeder_type_closed_form",
    "general_d_closed_form",
    "general_d_corrected_coeff",
    "general_d_corrected_closed_form",
    "riordan_coefficients",
    "cauchy_sides",
    "ansatz_B",
    "ansatz_coefficient",
    "beta_coefficient",
    "beta_functional_residual",
]


def _mono(e: int, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(e, c)


def _one_minus_q(k: int) -> LaurentPoly:
    return ONE - _mono(k)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# -- series ------------------------------------------------------------------

def series_touchard_rhs(order: int, var: str = "v") -> TruncSeries:
    """sum_k (-1)^k q^binom(k+1,2) var^k."""
    return TruncSeries(var, [q_triangular(k, 1) * _sign(k) for k in range(order + 1)], order)


def series_s(i: int, order: int) -> TruncSeries:
    """s_i = sum_n (-1)^n [n+i, i] q^binom(n+1,2) v^n; s_{-1} = 1."""
    if i < -1:
        raise ValueError("i must be >= -1")
    if i == -1:
        return TruncSeries.constant("v", 1, order)
    return TruncSeries(
        "v", [gauss_binom(n + i, i) * q_triangular(n, 1) * _sign(n) for n in range(order + 1)], order
    )


class GFKind(str, Enum):
    catalan = "catalan"
    motzkin = "motzkin"
    schroeder = "schroeder"


def _gf_step(kind: GFKind, f: TruncSeries, z: TruncSeries) -> TruncSeries:
    if kind is GFKind.catalan:
        return 1 + z * f * f
    if kind is GFKind.motzkin:
        return 1 + z * f + z * z * f * f
    return 1 + z * f + z * f * f


def series_gf(kind: GFKind | str, order: int) -> TruncSeries:
    """Catalan C, Motzkin M or Schroeder S as the power-series root with constant term 1 of

        C = 1 + z C^2,   M = 1 + z M + z^2 M^2,   S = 1 + z S + z S^2.

    Built by fixed-point iteration (each pass fixes one more coefficient).
    """
    kind = GFKind(kind)
    z = TruncSeries.gen("z", order)
    f = TruncSeries.constant("z", 1, order)
    for _ in range(order + 1):
        f = _gf_step(kind, f, z)
    residual = _gf_step(kind, f, z) - f
    assert not any(residual.coeffs), f"{kind.value} fixed point did not converge"
    return f


# -- coefficient identities ----------------------------------------------------

def coeff_main_sides(n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of

        sum_{k=1}^n q^{k^2}/(q;q)_k [n-1, k-1] = sum_{k=0}^n (-1)^k q^binom(k,2)/(q;q)_{n-k}

    multiplied by (q;q)_n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = sum((_mono(k * k) * qpoch(k + 1, n - k) * gauss_binom(n - 1, k - 1) for k in range(1, n + 1)), ZERO)
    rhs = sum((q_triangular(k, 0) * qpoch(n - k + 1, k) * _sign(k) for k in range(n + 1)), ZERO)
    return lhs, rhs


def coeff_identity_main(n: int) -> bool:
    lhs, rhs = coeff_main_sides(n)
    return lhs == rhs


def coeff_ext_sides(n: int, i: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The shifted version with q^{k^2+ik} on the left and [k+i, i] on the right, times (q;q)_n."""
    if n < 1 or i < 0:
        raise ValueError("need n >= 1 and i >= 0")
    lhs = sum((_mono(k * k + i * k) * qpoch(k + 1, n - k) * gauss_binom(n - 1, k - 1)
               for k in range(1, n + 1)), ZERO)
    rhs = sum((q_triangular(k, 0) * qpoch(n - k + 1, k) * gauss_binom(k + i, i) * _sign(k)
               for k in range(n + 1)), ZERO)
    return lhs, rhs


def coeff_identity_ext(n: int, i: int) -> bool:
    lhs, rhs = coeff_ext_sides(n, i)
    return lhs == rhs


def zeilberger_T(side: str, n: int) -> QRatFun:
    """Either side of the main coefficient identity as an unreduced sum of QRatFun terms."""
    if side == "lhs":
        return sum((QRatFun(_mono(k * k) * gauss_binom(n - 1, k - 1), qpoch(1, k)) for k in range(1, n + 1)),
                   QRatFun(0))
    if side == "rhs":
        return sum((QRatFun(q_triangular(k, 0) * _sign(k), qpoch(1, n - k)) for k in range(n + 1)), QRatFun(0))
    raise ValueError(f"side must be 'lhs' or 'rhs', got {side!r}")


def zeilberger_coefficients(n: int) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Polynomial coefficients of T(n), T(n+1), T(n+2) in the second-order recurrence."""
    c0 = _mono(n + 1) - _mono(1)
    c1 = _mono(2 * n + 3) - _mono(n + 2) + _mono(1) - _mono(n + 1) + 1
    c2 = _mono(n + 2) - 1
    return c0, c1, c2


def zeilberger_residual(side: str, n: int,
                        coefficients: Callable[[int], tuple] = zeilberger_coefficients) -> QRatFun:
    c0, c1, c2 = coefficients(n)
    return zeilberger_T(side, n) * c0 + zeilberger_T(side, n + 1) * c1 + zeilberger_T(side, n + 2) * c2


def verify_zeilberger_recursion(side: str, n_max: int,
                                coefficients: Callable[[int], tuple] = zeilberger_coefficients) -> bool:
    """The recurrence holds (as a rational-function identity) for 1 <= n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return all(zeilberger_residual(side, n, coefficients) == 0 for n in range(1, n_max + 1))


# -- the induction recursions ---------------------------------------------------

def verify_recu1(i_max: int, order: int, ladder: Callable[[int], LaurentPoly] | None = None) -> CheckReport:
    """(1+v) s_i - a_{i+1} v s_{i+1} = s_{i-1} for 0 <= i <= i_max, to ``order``.

    ``ladder(k)`` gives a_k; default 1 - q^k.
    """
    ladder = ladder or _one_minus_q
    v = TruncSeries.gen("v", order)
    s = {j: series_s(j, order) for j in range(-1, i_max + 2)}
    for i in range(i_max + 1):
        lhs = (1 + v) * s[i] - v * s[i + 1] * ladder(i + 1)
        k = lhs.first_difference(s[i - 1])
        if k is not None:
            return report("recu1", order, Mismatch(k, lhs.coeff(k), s[i - 1].coeff(k), f"i={i}"))
    return report("recu1", order, None)


def squared_closed_form(N: int) -> LaurentPoly:
    """[v^N] of the squared-ladder fraction: q^{N(N+1)} sum_{|n|<=N} (-1)^n q^{-n^2}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    inner = sum((_mono(-n * n, _sign(n)) for n in range(-N, N + 1)), ZERO)
    out = inner.shift(N * (N + 1))
    assert out.valuation() >= 0, "negative exponent in squared closed form"
    return out


def squared_z_coeffs(N: int) -> LaurentPoly:
    """[z^N] of the squared ladder in the z-form, via the v -> z translation."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    out = ZERO
    for k in range(N + 1):
        ballot = comb(2 * N, N - k) - (comb(2 * N, N - k - 1) if N - k - 1 >= 0 else 0)
        if ballot:
            inner = sum((_mono(-j * j, _sign(j)) for j in range(-k, k + 1)), ZERO)
            out = out + inner.shift(k * (k + 1)) * ballot
    return out


def s_squared_coeff(i: int, N: int) -> LaurentPoly:
    """q^{N(N+1)} sum_{|n|<=N} [i+N-n, i][i+N+n, i] q^{-n^2} (-1)^n, with s_{-1} = 1."""
    if N < 0:
        return ZERO
    if i == -1:
        return ONE if N == 0 else ZERO
    if i < -1:
        raise ValueError("i must be >= -1")
    acc = ZERO
    for n in range(-N, N + 1):
        acc = acc + gauss_binom(i + N - n, i) * gauss_binom(i + N + n, i) * _mono(-n * n, _sign(n))
    return acc.shift(N * (N + 1))


def series_s_squared(i: int, order: int) -> TruncSeries:
    out = TruncSeries("v", [s_squared_coeff(i, N) for N in range(order + 1)], order)
    for c in out.coeffs:
        assert not c or c.valuation() >= 0, "negative exponent in s_i"
    return out


def bonus_ratio_series(i: int, order: int) -> TruncSeries:
    """B(q^i)/B(1) for the squared ladder, from the double sum over (N, n).

    Uses [i+N-n-1, i-1][i+N+n-1, i-1]; i = 0 gives the constant 1.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    if i == 0:
        return TruncSeries.constant("v", 1, order)
    coeffs = []
    for N in range(order + 1):
        acc = ZERO
        for n in range(-N, N + 1):
            acc = acc + (gauss_binom(i + N - n - 1, i - 1) * gauss_binom(i + N + n - 1, i - 1)
                         * _mono(-n * n, _sign(n)))
        coeffs.append(acc.shift(N * (N + 1)))
    return TruncSeries("v", coeffs, order)


def verify_recu2(i_max: int, N_max: int, ladder: Callable[[int], LaurentPoly] | None = None) -> CheckReport:
    """s_{i,N} + s_{i,N-1} - a_{i+1} s_{i+1,N-1} - s_{i-1,N} = 0 on the grid.

    ``ladder(k)`` gives a_k; default (1 - q^k)^2.
    """
    ladder = ladder or (lambda k: _one_minus_q(k) ** 2)
    for i in range(i_max + 1):
        for N in range(1, N_max + 1):
            resid = (s_squared_coeff(i, N) + s_squared_coeff(i, N - 1)
                     - ladder(i + 1) * s_squared_coeff(i + 1, N - 1) - s_squared_coeff(i - 1, N))
            if resid:
                return report("recu2", N_max, Mismatch(N, resid, ZERO, f"i={i}"))
    return report("recu2", N_max, None)


def cigler_S(i: int, order: int | None = None) -> TruncSeries:
    """S_i from S_i = (1+v) S_{i-1} - (1-q^{1-i})^2 v S_{i-2}, S_0 = 1, S_1 = 1+v."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    order = i if order is None else order
    v = TruncSeries.gen("v", order)
    prev, cur = None, TruncSeries.constant("v", 1, order)
    if i == 0:
        return cur
    prev, cur = cur, 1 + v
    for k in range(2, i + 1):
        prev, cur = cur, (1 + v) * cur - v * prev * _one_minus_q(1 - k) ** 2
    return cur


def cigler_S_closed(i: int, order: int | None = None) -> TruncSeries:
    """sum_{N<=i} v^N q^{2N^2-2Ni} sum_{|n|<=N} (-1)^n [i, N-n][i, N+n]."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    order = i if order is None else order
    coeffs = []
    for N in range(min(i, order) + 1):
        acc = ZERO
        for n in range(-N, N + 1):
            acc = acc + gauss_binom(i, N - n) * gauss_binom(i, N + n) * _sign(n)
        coeffs.append(acc.shift(2 * N * N - 2 * N * i))
    return TruncSeries("v", coeffs, order)


def schroeder_type_closed_form(order: int) -> TruncSeries:
    """F(1) for the ladder (1-q^i)(1-q^{i+1}), as the difference of two sums over |n| <= N
    divided by (1 - q)."""
    coeffs = []
    for N in range(order + 1):
        first = sum((_one_minus_q(n + N + 1) * _mono(-n * (n + 1), _sign(n)) for n in range(-N, N + 1)), ZERO)
        second = sum((_one_minus_q(n + N) * _mono(-n * n, _sign(n)) for n in range(-N, N + 1)), ZERO)
        total = first.shift(N * (N + 1)) - second.shift(N * N)
        c = total.divexact(_one_minus_q(1))
        assert not c or c.valuation() >= 0, "negative exponent after division by 1-q"
        coeffs.append(c)
    return TruncSeries("v", coeffs, order)


def general_d_closed_form(d: int, order: int) -> TruncSeries:
    """Two-sum form of F(1) for the ladder (1-q^i)(1-q^{d+i-1}), d >= 2.

    Evaluated exactly as written: first sum over 1 <= n <= 2N with 1/(q;q)_{n-1},
    second over 0 <= n <= 2N with (1-q^{n+1})/(q;q)_n, both over (1-q). This form
    does NOT agree with the continued fraction beyond v^0 (its derivation drops
    the (-i sqrt(v) q^{1-d/2}; q)_{d-1} prefactor and a sign); the catalog keeps it
    so the disagreement stays visible. ``general_d_corrected_closed_form`` is the
    version that matches.
    """
    if d < 2:
        raise ValueError("closed form requires d >= 2")
    coeffs = []
    for N in range(order + 1):
        # common denominator (1-q)(q;q)_{2N}
        num = ZERO
        for n in range(1, 2 * N + 1):
            e = n * (2 * N - n) + N * d - n * d
            num = num + qpoch(d, n) * qpoch(n, 2 * N - n + 1) * _mono(e, _sign(N + n))
        for n in range(2 * N + 1):
            e = (1 + n) * (2 * N - n) + N * d - n * d
            num = num + qpoch(d, n) * _one_minus_q(n + 1) * qpoch(n + 1, 2 * N - n) * _mono(e, _sign(N + n))
        coeffs.append(QRatFun(num, _one_minus_q(1) * qpoch(1, 2 * N)).to_laurent())
    return TruncSeries("v", coeffs, order)


def general_d_corrected_coeff(d: int, N: int) -> LaurentPoly:
    """[v^N] of the (1-q^i)(1-q^{d+i-1}) fraction, d >= 1, from

        F(1) = (-u q^{1-d/2}; q)_{d-1} sum_n (q^d;q)_n / ((q;q)_n (1 - u q^{d/2+n})) (-u q^{1-d/2})^n

    with u = i sqrt(v): expand the geometric factor, collect u^{2N} and use v = -u^2.
    Odd powers of u cancel, so only the even part is assembled.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    out = ZERO
    for j in range(d):
        inner = ZERO
        for n in range(2 * N - j + 1):
            inner = inner + gauss_binom(n + d - 1, d - 1) * _mono(n + (2 * N - j) * n - n * d - n * n, _sign(n))
        out = out + gauss_binom(d - 1, j) * inner.shift(j * (j - 1) // 2 + j - j * d + N * d)
    return out * _sign(N)


def general_d_corrected_closed_form(d: int, order: int) -> TruncSeries:
    return TruncSeries("v", [general_d_corrected_coeff(d, N) for N in range(order + 1)], order)


def riordan_coefficients(n: int) -> LaurentPoly:
    """T_n(q) (1-q)^n = sum_k (-1)^k q^binom(k+1,2) [binom(2n, n-k) - binom(2n, n-k-1)]."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ZERO
    for k in range(n + 1):
        ballot = comb(2 * n, n - k) - (comb(2 * n, n - k - 1) if n - k - 1 >= 0 else 0)
        out = out + q_triangular(k, 1) * (_sign(k) * ballot)
    return out


@lru_cache(maxsize=None)
def _inverse_v_pochhammer(qexp: int, n: int, order: int) -> TruncSeries:
    """1/(v q^qexp; q)_n to ``order`` by series division."""
    return 1 / q_pochhammer(QMonomialBase(1, qexp, 1), 1, n).extend(order)


def cauchy_sides(N: int, order: int | None = None) -> tuple[LaurentPoly, LaurentPoly]:
    """[v^N] of sum_n v^n q^{n^2-n}/((q;q)_n (v;q)_n) and of sum_n v^n/(q;q)_n, both times (q;q)_N.

    1/(v;q)_n is expanded by series division, not by the q-binomial theorem.
    """
    lhs = ZERO
    for n in range(N + 1):
        inv = _inverse_v_pochhammer(0, n, max(N, order or 0))
        lhs = lhs + _mono(n * n - n) * qpoch(n + 1, N - n) * inv.coeff(N - n)
    return lhs, ONE


def ansatz_coefficient(n: int) -> tuple[VPoly, VPoly]:
    """a_n = v^n q^{n^2} / ((q;q)_n (vq;q)_n) as (numerator, denominator)."""
    num = VPoly.monomial(n * n, n)
    den = VPoly.coerce(qpoch(1, n)) * VPoly.coerce(q_pochhammer(QMonomialBase(1, 1, 1), 1, n))
    return num, den


def ansatz_B(texp: int, order: int) -> TruncSeries:
    """(q;q)_order * B(q^texp) as a v-series, B(t) = sum_n a_n t^n."""
    coeffs = [ZERO] * (order + 1)
    for n in range(order + 1):
        inv = _inverse_v_pochhammer(1, n, order - n)
        scale = _mono(n * n + texp * n) * qpoch(n + 1, order - n)
        for m in range(order - n + 1):
            coeffs[n + m] = coeffs[n + m] + scale * inv.coeff(m)
    return TruncSeries("v", coeffs, order)


def beta_coefficient(c: int, n: int) -> tuple[VPoly, VPoly]:
    """beta_n = q^{cn} (-v q^{1-c}; q^2)_n / ((q;q)_n (vq;q)_n) as (numerator, denominator).

    c = 0: squared ladder; c = 1: the (1-q^i)(1-q^{i+1}) ladder; c = d-1: general d.
    """
    num = VPoly.coerce(q_pochhammer(QMonomialBase(-1, 1 - c, 1), 2, n)) * VPoly.monomial(c * n, 0)
    den = VPoly.coerce(qpoch(1, n)) * VPoly.coerce(q_pochhammer(QMonomialBase(1, 1, 1), 1, n))
    return num, den


def beta_functional_residual(c: int | None, n: int, coefficient=None) -> VPoly:
    """Cleared residual at t^n of

        (1 - q^c t) beta(t) = (1+v) beta(qt) - (1-qt) v beta(q^2 t),

    i.e. beta_n (1 - (1+v) q^n + v q^{2n}) - beta_{n-1} (q^c + v q^{2n-1}), multiplied
    through by both denominators. ``c=None`` drops the (1 - q^c t) factor, which is
    the functional equation of B itself with ``coefficient=ansatz_coefficient``.
    """
    if coefficient is None:
        if c is None:
            raise ValueError("c=None needs an explicit coefficient builder")
        coefficient = lambda k: beta_coefficient(c, k)  # noqa: E731
    pn, dn = coefficient(n)
    pm, dm = coefficient(n - 1)
    v = VPoly.monomial(0, 1)
    left = pn * (1 - (1 + v) * VPoly.monomial(n, 0) + VPoly.monomial(2 * n, 1)) * dm
    carry = VPoly.monomial(2 * n - 1, 1)
    if c is not None:
        carry = carry + VPoly.monomial(c, 0)
    return left - pm * carry * dn
