"""q-Pochhammer symbols, Gaussian binomials and triangular q-powers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import LaurentPoly, TruncSeries, ONE

__all__ = [
    "QMonomialBase",
    "q_pochhammer",
    "qpoch",
    "gauss_binom",
    "q_triangular",
]


@dataclass(frozen=True)
class QMonomialBase:
    """The base scalar * q^qexp * v^vexp of a Pochhammer symbol (x; q^step)_n."""

    scalar: int | Fraction = 1
    qexp: int = 0
    vexp: int = 0


def q_pochhammer(x: QMonomialBase, step: int, n: int, var: str = "v") -> TruncSeries:
    """prod_{j<n} (1 - x q^(step*j)) as an exact polynomial series in ``var``."""
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    if step < 1:
        raise ValueError("step must be positive")
    degree = n * x.vexp
    coeffs = [ONE] + [LaurentPoly()] * degree
    for j in range(n):
        factor = LaurentPoly.monomial(x.qexp + step * j, x.scalar)
        shifted = [LaurentPoly()] * x.vexp + [c * factor for c in coeffs]
        coeffs = [c - s for c, s in zip(coeffs, shifted)]
    return TruncSeries(var, coeffs, degree)


@lru_cache(maxsize=None)
def qpoch(qexp: int, n: int, step: int = 1, scalar: int = 1) -> LaurentPoly:
    """(scalar q^qexp; q^step)_n for a pure-q base."""
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    out = ONE
    for j in range(n):
        out = out * (ONE - LaurentPoly.monomial(qexp + step * j, scalar))
    return out


@lru_cache(maxsize=None)
def gauss_binom(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n, k]_q, by exact division of Pochhammer products."""
    if n < 0:
        raise ValueError("negative upper index is not supported")
    if k < 0 or k > n:
        return LaurentPoly()
    k = min(k, n - k)
    # (q^(n-k+1); q)_k / (q; q)_k
    return qpoch(n - k + 1, k).divexact(qpoch(1, k))


def q_triangular(k: int, shift: int = 1) -> LaurentPoly:
    """q^binom(k+shift, 2): shift=1 gives q^(k(k+1)/2), shift=0 gives q^(k(k-1)/2)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    m = k + shift
    return LaurentPoly.monomial(m * (m - 1) // 2)
