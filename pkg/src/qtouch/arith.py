"""Exact arithmetic in q: Laurent polynomials, rational functions and
truncated power series with Laurent-polynomial coefficients.

Coefficients are ``int`` where integral and ``fractions.Fraction`` otherwise.
All values are immutable.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import reduce
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "LaurentPoly",
    "QRatFun",
    "VPoly",
    "TruncSeries",
    "SeriesError",
    "lp",
    "lp_dot",
    "q",
    "q_max",
    "VARIABLES",
    "ONE",
    "ZERO",
    "format_poly",
    "rf_eq",
    "ts_compose",
]

VARIABLES = ("v", "z", "t", "x", "y")

DEFAULT_Q_MAX = 256


def q_max() -> int:
    """q-degree bound used when a series divisor has a non-monomial constant term.

    Overridden by the ``QTOUCH_QMAX`` environment variable.
    """
    raw = os.environ.get("QTOUCH_QMAX")
    if raw is None:
        return DEFAULT_Q_MAX
    value = int(raw)
    if value < 0:
        raise ValueError(f"QTOUCH_QMAX must be nonnegative, got {value}")
    return value


class SeriesError(ArithmeticError):
    """Invalid series operation (variable mismatch, non-invertible divisor...)."""


def _norm(c) -> int | Fraction:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"unsupported coefficient {c!r}")


# -- dense integer convolution by Kronecker substitution ---------------------

def _rep(nbytes: int, n: int) -> int:
    return int.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * n, "little")


def _pack(dense: Sequence[int], nbytes: int) -> int:
    h = 1 << (8 * nbytes - 1)
    raw = b"".join((c + h).to_bytes(nbytes, "little") for c in dense)
    return int.from_bytes(raw, "little") - h * _rep(nbytes, len(dense))


def _unpack(value: int, nbytes: int, m: int) -> list[int]:
    h = 1 << (8 * nbytes - 1)
    raw = (value + h * _rep(nbytes, m)).to_bytes(nbytes * m, "little")
    return [int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - h for k in range(m)]


def _int_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    if len(a) * len(b) <= 32:
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return {e: c for e, c in out.items() if c}
    alo, ahi = min(a), max(a)
    blo, bhi = min(b), max(b)
    bound = max(map(abs, a.values())) * max(map(abs, b.values())) * min(len(a), len(b))
    lo = alo + blo
    if bound < 1 << 62:
        # every partial sum fits in int64, so the C convolution is exact
        da = np.zeros(ahi - alo + 1, dtype=np.int64)
        db = np.zeros(bhi - blo + 1, dtype=np.int64)
        da[np.fromiter(a.keys(), np.int64, len(a)) - alo] = np.fromiter(a.values(), np.int64, len(a))
        db[np.fromiter(b.keys(), np.int64, len(b)) - blo] = np.fromiter(b.values(), np.int64, len(b))
        prod = np.convolve(da, db)
        nz = np.flatnonzero(prod)
        return dict(zip((nz + lo).tolist(), prod[nz].tolist()))
    nbytes = (bound.bit_length() + 1) // 8 + 1
    da = [a.get(e, 0) for e in range(alo, ahi + 1)]
    db = [b.get(e, 0) for e in range(blo, bhi + 1)]
    m = len(da) + len(db) - 1
    digits = _unpack(_pack(da, nbytes) * _pack(db, nbytes), nbytes, m)
    return {lo + k: c for k, c in enumerate(digits) if c}


def _denominator(terms: Mapping[int, int | Fraction]) -> int:
    return reduce(lcm, (c.denominator for c in terms.values() if type(c) is not int), 1)


class LaurentPoly:
    """Finite sparse sum of c_e q^e, e a (possibly negative) integer."""

    __slots__ = ("_terms", "_hash", "_den", "_arr")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, int | Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _norm(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None
        self._den = None
        self._arr = None

    @classmethod
    def _raw(cls, terms: dict[int, int | Fraction]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._den = None
        obj._arr = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, shift: int = 0) -> LaurentPoly:
        """``coeffs[k]`` is the coefficient of q^(k + shift)."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return cls({0: other})
        raise TypeError(f"cannot interpret {other!r} as a Laurent polynomial")

    # -- inspection
    @property
    def terms(self) -> dict[int, int | Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int | Fraction]]:
        """Terms in ascending exponent order."""
        return iter(sorted(self._terms.items()))

    def coeff(self, exp: int) -> int | Fraction:
        return self._terms.get(exp, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def _denominator(self) -> int:
        if self._den is None:
            self._den = _denominator(self._terms)
        return self._den

    def is_integral(self) -> bool:
        return self._denominator() == 1

    def _dense(self) -> tuple[int, np.ndarray, int] | None:
        """(valuation, int64 coefficient array, max |c|) for small integral values, else None."""
        if self._arr is None:
            t = self._terms
            big = max(map(abs, t.values())) if t else 0
            if not t or self._denominator() != 1 or big >= 1 << 62:
                self._arr = False
            else:
                lo = min(t)
                arr = np.zeros(max(t) - lo + 1, dtype=np.int64)
                arr[np.fromiter(t.keys(), np.int64, len(t)) - lo] = np.fromiter(t.values(), np.int64, len(t))
                self._arr = (lo, arr, big)
        return self._arr or None

    def evaluate(self, x) -> int | Fraction:
        """Value at q = x (exact for rational x; x must be nonzero if negative exponents occur)."""
        x = Fraction(x)
        return _norm(sum((c * x**e for e, c in self._terms.items()), Fraction(0)))

    def subs_power(self, k: int) -> LaurentPoly:
        """q -> q^k."""
        if k == 0:
            return LaurentPoly.constant(sum(self._terms.values()))
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    # -- arithmetic
    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> LaurentPoly:
        return self

    def __add__(self, other) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s if type(s) is int else _norm(s)
            else:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self._terms.items()})
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly()
        da, db = self._denominator(), other._denominator()
        if da == 1 and db == 1:
            return LaurentPoly._raw(_int_mul(self._terms, other._terms))
        a = {e: int(c * da) for e, c in self._terms.items()}
        b = {e: int(c * db) for e, c in other._terms.items()}
        scale = da * db
        return LaurentPoly._raw({e: _norm(Fraction(c, scale)) for e, c in _int_mul(a, b).items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({e * k: _norm(Fraction(1) / Fraction(c) ** -k)})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Long division from the top degree down.

        Quotient exponents run from ``deg(self) - deg(other)`` down to
        ``val(self) - val(other)``; whatever survives is the remainder, which
        is zero exactly when ``other`` divides ``self`` in the Laurent ring.
        """
        other = LaurentPoly.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return LaurentPoly(), LaurentPoly()
        ov, od = other.valuation(), other.degree()
        va, da = self.valuation(), self.degree()
        lead = other._terms[od]
        rest = [(e, c) for e, c in other._terms.items() if e != od]
        rem = [self._terms.get(e, 0) for e in range(va, da + 1)]
        quo: dict[int, int | Fraction] = {}
        for qe in range(da - od, va - ov - 1, -1):
            c = rem[qe + od - va]
            if not c:
                continue
            if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
                f = c // lead
            else:
                f = _norm(Fraction(c) / lead)
            quo[qe] = f
            rem[qe + od - va] = 0
            for e, cb in rest:
                k = qe + e - va
                rem[k] = _norm(rem[k] - f * cb)
        return (LaurentPoly._raw(quo),
                LaurentPoly({va + k: c for k, c in enumerate(rem) if c}))

    def divexact(self, other) -> LaurentPoly:
        """Exact quotient; raises ArithmeticError if ``other`` does not divide ``self``."""
        other = LaurentPoly.coerce(other)
        if other.is_monomial():
            (e, c), = other._terms.items()
            inv = Fraction(1) / Fraction(c)
            return LaurentPoly._raw({k - e: _norm(v * inv) for k, v in self._terms.items()})
        quo, rem = self.divmod(other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quo

    def inverse_series(self, bound: int | None = None) -> LaurentPoly:
        """Inverse as a power series in q, truncated above ``val + bound``.

        Exact for monomials. Otherwise the lowest term c q^e is factored out
        and 1/(1 + r) is expanded up to q-degree ``bound`` relative to q^-e.
        """
        if not self._terms:
            raise ZeroDivisionError("inverse of the zero polynomial")
        if self.is_monomial():
            return self ** -1
        bound = q_max() if bound is None else bound
        e0 = self.valuation()
        c0 = Fraction(self._terms[e0])
        rest = {e - e0: Fraction(c) / c0 for e, c in self._terms.items() if e != e0}
        inv = [Fraction(0)] * (bound + 1)
        inv[0] = Fraction(1)
        for k in range(1, bound + 1):
            inv[k] = -sum((c * inv[k - e] for e, c in rest.items() if e <= k), Fraction(0))
        return LaurentPoly({k - e0: c / c0 for k, c in enumerate(inv)})

    # -- comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def lp(obj=None) -> LaurentPoly:
    """Shorthand constructor: ``lp({0: 1, 2: -1})`` or ``lp(3)``."""
    if obj is None:
        return LaurentPoly()
    if isinstance(obj, Mapping):
        return LaurentPoly(obj)
    return LaurentPoly.coerce(obj)


q = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def _format_coeff(c) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def lp_dot(pairs: Iterable[tuple[LaurentPoly, LaurentPoly]]) -> LaurentPoly:
    """sum(a * b for a, b in pairs), fused into one int64 buffer when that is exact."""
    pairs = [(a, b) for a, b in pairs if a._terms and b._terms]
    if len(pairs) < 2:
        return pairs[0][0] * pairs[0][1] if pairs else LaurentPoly()
    dense = []
    bound = 0
    for a, b in pairs:
        da, db = a._dense(), b._dense()
        if da is None or db is None:
            break
        bound += da[2] * db[2] * min(len(da[1]), len(db[1]))
        if bound >= 1 << 62:
            break
        dense.append((da, db))
    else:
        lo = min(da[0] + db[0] for da, db in dense)
        hi = max(da[0] + db[0] + len(da[1]) + len(db[1]) - 2 for da, db in dense)
        acc = np.zeros(hi - lo + 1, dtype=np.int64)
        for (ea, xa, _), (eb, xb, _) in dense:
            off = ea + eb - lo
            acc[off:off + len(xa) + len(xb) - 1] += np.convolve(xa, xb)
        nz = np.flatnonzero(acc)
        return LaurentPoly._raw(dict(zip((nz + lo).tolist(), acc[nz].tolist())))
    total = LaurentPoly()
    for a, b in pairs:
        total = total + a * b
    return total


def format_poly(p: LaurentPoly, symbol: str = "q") -> str:
    """Ascending exponents, ``p/q`` rationals, explicit ``q^-2``; zero prints as ``0``."""
    if not p:
        return "0"
    parts: list[str] = []
    for e, c in p.items():
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = _format_coeff(mag)
        else:
            mono = symbol if e == 1 else f"{symbol}^{e}"
            body = mono if mag == 1 else f"{_format_coeff(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


class QRatFun:
    """Formal quotient num/den of Laurent polynomials, never reduced.

    Equality is cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("QRatFun with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, other) -> QRatFun:
        if isinstance(other, QRatFun):
            return other
        return cls(LaurentPoly.coerce(other))

    def __add__(self, other) -> QRatFun:
        other = QRatFun.coerce(other)
        if self.den == other.den:
            return QRatFun(self.num + other.num, self.den)
        return QRatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> QRatFun:
        return QRatFun(-self.num, self.den)

    def __sub__(self, other) -> QRatFun:
        return self + (-QRatFun.coerce(other))

    def __rsub__(self, other) -> QRatFun:
        return QRatFun.coerce(other) - self

    def __mul__(self, other) -> QRatFun:
        other = QRatFun.coerce(other)
        return QRatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QRatFun:
        other = QRatFun.coerce(other)
        return QRatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> QRatFun:
        return QRatFun.coerce(other) / self

    def is_zero(self) -> bool:
        return not self.num

    def to_laurent(self) -> LaurentPoly:
        """The quotient as a Laurent polynomial; raises ArithmeticError if not exact."""
        return self.num.divexact(self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (QRatFun, LaurentPoly, int, Fraction)):
            return rf_eq(self, QRatFun.coerce(other))
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"QRatFun(({self.num}) / ({self.den}))"


def rf_eq(a: QRatFun, b: QRatFun) -> bool:
    return a.num * b.den == b.num * a.den


class VPoly:
    """Polynomial in a second variable v with Laurent-polynomial coefficients in q.

    Keys are v-exponents (nonnegative). Used where both q and v must be carried
    exactly without truncation.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, LaurentPoly] | None = None):
        self._c = {k: LaurentPoly.coerce(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def coerce(cls, other) -> VPoly:
        if isinstance(other, VPoly):
            return other
        if isinstance(other, TruncSeries):
            return cls(dict(enumerate(other.coeffs)))
        return cls({0: LaurentPoly.coerce(other)})

    @classmethod
    def monomial(cls, qexp: int, vexp: int, coeff=1) -> VPoly:
        return cls({vexp: LaurentPoly.monomial(qexp, coeff)})

    def coeff(self, k: int) -> LaurentPoly:
        return self._c.get(k, ZERO)

    def items(self) -> list[tuple[int, LaurentPoly]]:
        return sorted(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other) -> VPoly:
        other = VPoly.coerce(other)
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, ZERO) + c
        return VPoly(out)

    __radd__ = __add__

    def __neg__(self) -> VPoly:
        return VPoly({k: -c for k, c in self._c.items()})

    def __sub__(self, other) -> VPoly:
        return self + (-VPoly.coerce(other))

    def __rsub__(self, other) -> VPoly:
        return VPoly.coerce(other) - self

    def __mul__(self, other) -> VPoly:
        other = VPoly.coerce(other)
        groups: dict[int, list[tuple[LaurentPoly, LaurentPoly]]] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                groups.setdefault(i + j, []).append((a, b))
        return VPoly({k: lp_dot(pairs) for k, pairs in groups.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> VPoly:
        result = VPoly.coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        try:
            other = VPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._c == other._c

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"v^{k}: {c}" for k, c in sorted(self._c.items()))
        return f"VPoly({{{body}}})"


class TruncSeries:
    """Power series sum_{k<=order} c_k x^k in one formal variable, c_k Laurent in q."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, coeffs: Iterable, order: int | None = None):
        if var not in VARIABLES:
            raise ValueError(f"unknown series variable {var!r}")
        cs = [LaurentPoly.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = cs[: order + 1] + [ZERO] * (order + 1 - len(cs))
        self.var = var
        self.order = order
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)

    @classmethod
    def constant(cls, var: str, c, order: int) -> TruncSeries:
        return cls(var, [c], order)

    @classmethod
    def gen(cls, var: str, order: int) -> TruncSeries:
        """The series variable itself."""
        return cls(var, [0, 1], order)

    def coeff(self, k: int) -> LaurentPoly:
        return self.coeffs[k] if 0 <= k <= self.order else ZERO

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries(self.var, self.coeffs, order)

    def extend(self, order: int) -> TruncSeries:
        """Re-truncate at ``order``, padding with zeros; only valid for polynomial data."""
        return TruncSeries(self.var, self.coeffs, order)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def _check(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return TruncSeries.constant(self.var, LaurentPoly.coerce(other), self.order)

    def __add__(self, other) -> TruncSeries:
        other = self._check(other)
        n = min(self.order, other.order)
        return TruncSeries(self.var, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.var, [-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> TruncSeries:
        return self + (-self._check(other))

    def __rsub__(self, other) -> TruncSeries:
        return self._check(other) - self

    def __mul__(self, other) -> TruncSeries:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            c = LaurentPoly.coerce(other)
            return TruncSeries(self.var, [c * a for a in self.coeffs], self.order)
        other = self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [lp_dot((a[i], b[k - i]) for i in range(k + 1)) for k in range(n + 1)]
        return TruncSeries(self.var, out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncSeries:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = TruncSeries.constant(self.var, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> TruncSeries:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = TruncSeries.constant(self.var, other, self.order)
        other = self._check(other)
        return _series_div(self, other, exact=False)

    def __rtruediv__(self, other) -> TruncSeries:
        return TruncSeries.constant(self.var, LaurentPoly.coerce(other), self.order) / self

    def divexact(self, other: TruncSeries) -> TruncSeries:
        """Quotient whose coefficients are known to be Laurent polynomials.

        Each coefficient is obtained by exact polynomial division by the
        divisor's constant term, so that term need not be a unit.
        """
        other = self._check(other)
        return _series_div(self, other, exact=True)

    def subs_scale(self, c: LaurentPoly | int) -> TruncSeries:
        """x -> c*x for a constant c (multiplies the k-th coefficient by c^k)."""
        c = LaurentPoly.coerce(c)
        out, p = [], ONE
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return TruncSeries(self.var, out, self.order)

    def evaluate_q(self, x) -> list[int | Fraction]:
        """Coefficient list with q specialized to ``x``."""
        return [c.evaluate(x) for c in self.coeffs]

    def relabel(self, var: str) -> TruncSeries:
        return TruncSeries(var, self.coeffs, self.order)

    def first_difference(self, other: TruncSeries) -> int | None:
        """Smallest power where the two series differ (up to the common order)."""
        other = self._check(other)
        for k in range(min(self.order, other.order) + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = ", ".join(f"{self.var}^{k}: {c}" for k, c in enumerate(self.coeffs) if c)
        return f"TruncSeries[{self.var}, O({self.order + 1})]({{{terms}}})"


def _series_div(a: TruncSeries, b: TruncSeries, exact: bool) -> TruncSeries:
    n = min(a.order, b.order)
    b0 = b.coeffs[0]
    if not b0:
        raise SeriesError("divisor has zero constant term")
    if exact:
        def solve(x: LaurentPoly) -> LaurentPoly:
            return x.divexact(b0)
    elif b0.is_monomial():
        inv = b0 ** -1

        def solve(x: LaurentPoly) -> LaurentPoly:
            return x * inv
    elif b0.coeff(0) and b0.valuation() == 0:
        inv = b0.inverse_series()
        bound = q_max()

        def solve(x: LaurentPoly) -> LaurentPoly:
            prod = x * inv
            return LaurentPoly({e: c for e, c in prod.terms.items() if e <= bound})
    else:
        raise SeriesError(f"constant term {b0} of the divisor is not invertible")
    bs = [(j, c) for j, c in enumerate(b.coeffs[1: n + 1], start=1) if c]
    out: list[LaurentPoly] = []
    for k in range(n + 1):
        acc = a.coeffs[k] - lp_dot((c, out[k - j]) for j, c in bs if j <= k)
        out.append(solve(acc))
    return TruncSeries(a.var, out, n)


def ts_compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner(y)), exact through y^min(outer.order, inner.order).

    ``inner`` must have zero constant term; the result uses its variable.
    """
    if inner.coeffs[0]:
        raise SeriesError("inner series of a composition must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    result = TruncSeries.constant(inner.var, outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        result = result * inner + outer.coeffs[k]
    return result
