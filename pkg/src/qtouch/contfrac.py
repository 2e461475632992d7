"""Truncated-series convergents of ladder continued fractions

    1 / (b - a_1 w / (b - a_2 w / (b - ...)))

where b and w are polynomials in the series variable and the ladder values
a_i are Laurent polynomials in q.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from .arith import LaurentPoly, SeriesError, TruncSeries, ONE, q

__all__ = [
    "CFSpec",
    "ConvergentResult",
    "DegenerateSpec",
    "convergent",
    "stable_expansion",
    "shifted_spec",
    "touchard_spec",
    "touchard_z_spec",
    "motzkin_spec",
    "schroeder_spec",
    "squared_spec",
    "squared_z_spec",
    "schroeder_type_spec",
    "general_d_spec",
    "PAPER_SPECS",
]

Ladder = Callable[[int], LaurentPoly]


class DegenerateSpec(SeriesError):
    """A convergent denominator lost its invertible constant term."""


@dataclass(frozen=True)
class CFSpec:
    """Symbolic ladder fraction.

    ``b`` and ``weight`` are coefficient tuples of polynomials in ``variable``
    (index = power); ``ladder(i)`` gives a_i for i >= 1.
    """

    variable: str
    b: tuple[LaurentPoly, ...]
    weight: tuple[LaurentPoly, ...]
    ladder: Ladder = field(compare=False)
    name: str = ""

    def __post_init__(self):
        b = tuple(LaurentPoly.coerce(c) for c in self.b)
        w = tuple(LaurentPoly.coerce(c) for c in self.weight)
        if not b or b[0] != ONE:
            raise DegenerateSpec("partial denominator must have constant term 1")
        if not w or w[0]:
            raise DegenerateSpec("weight must have zero constant term")
        if not any(w):
            raise DegenerateSpec("weight must be nonzero")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "weight", w)

    def b_series(self, order: int) -> TruncSeries:
        return TruncSeries(self.variable, self.b, order)

    def weight_series(self, order: int) -> TruncSeries:
        return TruncSeries(self.variable, self.weight, order)

    @property
    def weight_valuation(self) -> int:
        return next(k for k, c in enumerate(self.weight) if c)


@dataclass(frozen=True)
class ConvergentResult:
    series: TruncSeries
    depth_used: int
    stabilized: bool


def convergent(spec: CFSpec, depth: int, order: int, tail: TruncSeries | None = None) -> TruncSeries:
    """Bottom-up evaluation G_depth = tail, G_{j-1} = 1/(b - a_j w G_j), truncated at ``order``.

    Level j only influences powers >= j * val(w), so G_j is carried to order
    ``order - j*val(w)`` (never below 0); the result is the same as evaluating
    every level at full order.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    var = spec.variable
    if tail is None:
        tail = TruncSeries.constant(var, 0, order)
    elif tail.var != var:
        raise SeriesError(f"tail variable {tail.var} does not match {var}")
    wv = spec.weight_valuation

    def need(j: int) -> int:
        return max(0, order - j * wv)

    top = need(depth)
    g = tail.extend(top) if tail.order < top else tail.truncate(top)
    for j in range(depth, 0, -1):
        n = need(j - 1)
        denom = spec.b_series(n) - spec.weight_series(n) * spec.ladder(j) * g.extend(n)
        if denom.coeffs[0] != ONE:
            raise DegenerateSpec(f"denominator at level {j} has constant term {denom.coeffs[0]}")
        g = 1 / denom
    return g


def stable_expansion(spec: CFSpec, order: int) -> ConvergentResult:
    """Convergent at depth order+2 with tail 0, cross-checked against tail 1 and depth+1."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    depth = order + 2
    var = spec.variable
    base = convergent(spec, depth, order)
    one = TruncSeries.constant(var, 1, order)
    stabilized = (
        convergent(spec, depth, order, tail=one) == base
        and convergent(spec, depth + 1, order) == base
    )
    return ConvergentResult(base, depth, stabilized)


def shifted_spec(spec: CFSpec, i: int) -> CFSpec:
    """The fraction with the first i levels removed: ladder j -> a_{i+j}."""
    if i < 0:
        raise ValueError("shift must be nonnegative")
    if i == 0:
        return spec
    base = spec.ladder
    return replace(spec, ladder=lambda j: base(i + j), name=f"{spec.name}>>{i}" if spec.name else "")


def _one_minus_q(k: int) -> LaurentPoly:
    return ONE - LaurentPoly.monomial(k)


def _poly(*coeffs) -> tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.coerce(c) for c in coeffs)


def touchard_spec() -> CFSpec:
    return CFSpec("v", _poly(1, 1), _poly(0, 1), _one_minus_q, "touchard")


def touchard_z_spec() -> CFSpec:
    """1/(1 - (1-q)z/(1 - (1-q^2)z/...)), the form before z = v/(1+v)^2."""
    return CFSpec("z", _poly(1), _poly(0, 1), _one_minus_q, "touchard-z")


def motzkin_spec() -> CFSpec:
    return CFSpec("z", _poly(1, -1), _poly(0, 0, 1), _one_minus_q, "motzkin")


def schroeder_spec() -> CFSpec:
    return CFSpec("z", _poly(1, -1), _poly(0, 1), _one_minus_q, "schroeder")


def squared_spec() -> CFSpec:
    return CFSpec("v", _poly(1, 1), _poly(0, 1), lambda i: _one_minus_q(i) ** 2, "squared")


def squared_z_spec() -> CFSpec:
    return CFSpec("z", _poly(1), _poly(0, 1), lambda i: _one_minus_q(i) ** 2, "squared-z")


def schroeder_type_spec() -> CFSpec:
    return CFSpec("v", _poly(1, 1), _poly(0, 1),
                  lambda i: _one_minus_q(i) * _one_minus_q(i + 1), "schroeder-type")


def general_d_spec(d: int) -> CFSpec:
    """Ladder (1-q^i)(1-q^(d+i-1)); d=1 is the squared ladder, d=2 the Schroeder type."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return CFSpec("v", _poly(1, 1), _poly(0, 1),
                  lambda i: _one_minus_q(i) * _one_minus_q(d + i - 1), f"general-d{d}")


PAPER_SPECS: dict[str, Callable[[], CFSpec]] = {
    "touchard": touchard_spec,
    "touchard-z": touchard_z_spec,
    "motzkin": motzkin_spec,
    "schroeder": schroeder_spec,
    "squared": squared_spec,
    "squared-z": squared_z_spec,
    "schroeder-type": schroeder_type_spec,
    "general-d3": lambda: general_d_spec(3),
}
