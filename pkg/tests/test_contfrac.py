import pytest

from qtouch.arith import ONE, SeriesError, TruncSeries, q
from qtouch.checks import motzkin_rhs
from qtouch.contfrac import (
    PAPER_SPECS,
    CFSpec,
    DegenerateSpec,
    convergent,
    general_d_spec,
    shifted_spec,
    squared_spec,
    stable_expansion,
    touchard_spec,
    motzkin_spec,
    schroeder_type_spec,
)
from qtouch.identities import schroeder_type_closed_form, series_s, squared_closed_form


def zero(var: str, order: int) -> TruncSeries:
    return TruncSeries.constant(var, 0, order)


def test_touchard_at_q_zero_is_one():
    # every a_i becomes 1 and F solves v F^2 - (1+v) F + 1 = 0, root F = 1;
    # a depth-d convergent with tail 0 is only exact below v^d
    spec = CFSpec("v", (1, 1), (0, 1), lambda i: ONE)
    for depth in (5, 6, 9):
        assert convergent(spec, depth, 4) == TruncSeries.constant("v", 1, 4)
    assert convergent(spec, 2, 4).coeffs == (1, 0, -1, 1, 0)


def test_touchard_depth_five():
    assert convergent(touchard_spec(), 5, 3).coeffs == (1, -q, q**3, -(q**6))


def test_squared_first_order_by_hand():
    # 1/(1 + v - (1-q)^2 v) = 1 - (v - (1-q)^2 v) + ... = 1 + (q^2 - 2q) v
    s = convergent(squared_spec(), 3, 1)
    assert s.coeffs == (ONE, q**2 - 2 * q)
    assert s.coeff(1) == squared_closed_form(1)


def test_stable_expansion_order_zero():
    res = stable_expansion(touchard_spec(), 0)
    assert res.series.coeffs == (1,)
    assert res.stabilized and res.depth_used == 2


def test_motzkin_order_four():
    res = stable_expansion(motzkin_spec(), 4)
    assert res.stabilized
    # q = 0 gives the Motzkin numbers 1, 1, 2, 4, 9; the z^2 term of the
    # right-hand side is M_2 - q
    assert res.series.coeffs == (1, 1, 2 - q, 4 - 3 * q, 9 - 9 * q + q**3)
    assert res.series == motzkin_rhs(4)


def test_schroeder_type_order_two():
    res = stable_expansion(schroeder_type_spec(), 2)
    assert res.series == schroeder_type_closed_form(2)


@pytest.mark.parametrize("name", sorted(PAPER_SPECS))
def test_stabilization_every_paper_spec(name):
    spec = PAPER_SPECS[name]()
    for order in (0, 1, 5, 12, 24):
        base = convergent(spec, order + 2, order)
        one = TruncSeries.constant(spec.variable, 1, order)
        assert convergent(spec, order + 2, order, tail=one) == base
        assert convergent(spec, order + 3, order) == base
        assert convergent(spec, order + 3, order, tail=one) == base


def test_shallow_depth_does_differ():
    # the stabilization claim is not vacuous: depth 1 misses level-2 terms
    spec = touchard_spec()
    assert convergent(spec, 1, 3) != convergent(spec, 5, 3)


def test_shift_zero_is_identity():
    spec = touchard_spec()
    assert shifted_spec(spec, 0) is spec


def test_shift_moves_the_ladder():
    spec = squared_spec()
    for i in range(1, 6):
        assert shifted_spec(spec, i - 1).ladder(1) == (1 - q**i) ** 2
        assert shifted_spec(spec, i).ladder(3) == spec.ladder(i + 3)


@pytest.mark.parametrize("i", range(0, 7))
def test_quotient_law(i):
    for order in (4, 12):
        lhs = stable_expansion(shifted_spec(touchard_spec(), i), order).series
        assert lhs == series_s(i, order) / series_s(i - 1, order)


def test_general_d_one_is_squared():
    a = stable_expansion(general_d_spec(1), 12).series
    b = stable_expansion(squared_spec(), 12).series
    assert a == b


def test_spec_validation():
    with pytest.raises(DegenerateSpec):
        CFSpec("v", (2, 1), (0, 1), lambda i: ONE)
    with pytest.raises(DegenerateSpec):
        CFSpec("v", (1, 1), (1, 1), lambda i: ONE)
    with pytest.raises(DegenerateSpec):
        CFSpec("v", (1, 1), (0, 0), lambda i: ONE)


def test_bad_depth_and_order():
    spec = touchard_spec()
    with pytest.raises(ValueError):
        convergent(spec, 0, 2)
    with pytest.raises(ValueError):
        stable_expansion(spec, -1)


def test_tail_variable_must_match():
    with pytest.raises(SeriesError):
        convergent(touchard_spec(), 3, 2, tail=zero("z", 2))
