import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusedtl.scalars import (
    CycScalar,
    U_tau,
    chebyshev_U,
    cyclotomic_poly,
    make_field,
    parse_rational,
    q_value,
    tau_value,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def elements(ell):
    ctx = make_field(ell)
    return st.lists(small, min_size=ctx.phi_N, max_size=ctx.phi_N).map(ctx.from_coeffs)


@pytest.mark.parametrize("n, poly", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (8, (1, 0, 0, 0, 1))])
def test_cyclotomic_poly(n, poly):
    assert cyclotomic_poly(n) == poly


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_tau_and_q(ell):
    ctx = make_field(ell)
    q = q_value(ctx)
    tau = tau_value(ctx)
    assert tau == -q - q.inverse()
    assert abs(tau.to_complex() - 2 * math.cos(math.pi / (ell + 2))) < 1e-12
    assert abs(q.to_complex() + cmath.exp(1j * math.pi / (ell + 2))) < 1e-12
    assert U_tau(ctx, ell) == ctx.one
    assert not U_tau(ctx, ell + 1)
    for j in range(ell + 1):
        assert U_tau(ctx, j) == U_tau(ctx, ell - j)


def test_golden_ratio():
    ctx = make_field(3)
    tau = tau_value(ctx)
    assert tau * tau == tau + 1
    assert tau.is_real()


def test_chebyshev_small():
    ctx = make_field(2)
    x = ctx.from_int(3)
    assert chebyshev_U(0, x) == ctx.one
    assert chebyshev_U(2, x) == ctx.from_int(8)
    assert chebyshev_U(3, x) == ctx.from_int(21)


@settings(max_examples=60, deadline=None)
@given(elements(2), elements(2), elements(2))
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == a.ctx.zero
    if a:
        assert a * a.inverse() == a.ctx.one
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(elements(3))
def test_galois_and_json_roundtrip(a):
    assert CycScalar.from_json(a.to_json()) == a
    assert a.conjugate().conjugate() == a
    assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-9


def test_mixed_operands():
    ctx = make_field(1)
    x = ctx.from_fraction(Fraction(1, 3))
    assert x + 1 == ctx.from_fraction(Fraction(4, 3))
    assert 2 - x == ctx.from_fraction(Fraction(5, 3))
    assert (x * Fraction(3)).to_fraction() == 1
    assert x ** -2 == ctx.from_int(9)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(2).zero.inverse()


@pytest.mark.parametrize("s, val", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), ("5/1", Fraction(5))])
def test_parse_rational(s, val):
    assert parse_rational(s) == val
