"""Exact q-arithmetic: Laurent polynomials, Gaussian binomials, truncated series."""

from qtouch.arith import QRatFun, TruncSeries, q, rf_eq
from qtouch.qcomb import gauss_binom, qpoch

# [4,2] is a polynomial in q whose value at q = 1 is binom(4, 2)
g = gauss_binom(4, 2)
print("[4,2] =", g, "  at q=1:", g.evaluate(1))

# (q;q)_3 expanded exactly
print("(q;q)_3 =", qpoch(1, 3))

# rational functions compare by cross-multiplication, no gcd needed
lhs = QRatFun(q, 1 - q)
rhs = QRatFun(1, 1 - q) - 1
print("q/(1-q) == 1/(1-q) - 1:", rf_eq(lhs, rhs))

# series in v with polynomial-in-q coefficients
v = TruncSeries.gen("v", 5)
print("1/(1 + q v) =", 1 / (1 + q * v))
