from fractions import Fraction

import pytest

from fusedtl.exceptions import DomainError
from fusedtl.schur import (
    TABLE1,
    YoungDiagramY,
    schur_all_ones,
    schur_eval,
    schur_numerator,
    wheel_point,
)
from fusedtl.scalars import make_field


def ssyt_sum(shape, z):
    """Sum of z^T over semistandard tableaux T of the given shape."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    n = len(z)
    total = Fraction(0)

    def rec(k, filling):
        nonlocal total
        if k == len(cells):
            w = Fraction(1)
            for v in filling.values():
                w *= z[v]
            total += w
            return
        r, c = cells[k]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, n):
            filling[(r, c)] = v
            rec(k + 1, filling)
        filling.pop((r, c), None)

    rec(0, {})
    return total


def test_shape():
    Y = YoungDiagramY(2, 3)
    assert Y.rows == (4, 4, 2, 2, 0, 0)
    assert Y.h == (0, 1, 4, 5, 8, 9)
    assert all(h - i == r for i, (h, r) in enumerate(zip(Y.h, reversed(Y.rows))))
    with pytest.raises(DomainError):
        YoungDiagramY(0, 2)


@pytest.mark.parametrize("ell,m", [(1, 2), (2, 2), (1, 3)])
def test_bialternant_matches_tableaux(ell, m):
    Y = YoungDiagramY(ell, m)
    z = [Fraction(2) ** k for k in range(2 * m)]
    assert schur_eval(Y, z).to_fraction() == ssyt_sum([r for r in Y.rows if r], z)


def test_known_value():
    assert schur_eval(YoungDiagramY(1, 2), [1, 2, 3, 4]).to_fraction() == 35


@pytest.mark.parametrize("ell,m", [(1, 2), (2, 2)])
def test_symmetric(ell, m):
    Y = YoungDiagramY(ell, m)
    z = [Fraction(3), Fraction(1, 2), Fraction(5), Fraction(7, 3)]
    base = schur_eval(Y, z)
    for perm in ([1, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]):
        assert schur_eval(Y, [z[p] for p in perm]) == base


def test_per_variable_degree():
    Y = YoungDiagramY(2, 2)
    others = [Fraction(2), Fraction(3), Fraction(5)]
    ts = range(7, 14)
    vals = [schur_eval(Y, [Fraction(t)] + others).to_fraction() for t in ts]
    diffs = vals
    for _ in range(Y.ell * (Y.m - 1)):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    assert len(set(diffs)) == 1 and diffs[0] != 0
    assert all(d == 0 for d in [b - a for a, b in zip(diffs, diffs[1:])])


def test_table_fixture_matches_product_formula():
    for (ell, m), value in TABLE1.items():
        assert schur_all_ones(YoungDiagramY(ell, m)) == value


@pytest.mark.parametrize("ell,m", [(1, 2), (2, 2)])
def test_all_ones_limit(ell, m):
    # s_Y(1 + k eps) tends to the dimension formula as eps -> 0
    Y = YoungDiagramY(ell, m)
    vals = []
    for e in (Fraction(1, 10 ** 6), Fraction(1, 10 ** 9)):
        vals.append(schur_eval(Y, [1 + k * e for k in range(2 * m)]).to_fraction())
    assert abs(vals[1] - schur_all_ones(Y)) < abs(vals[0] - schur_all_ones(Y)) < 1


@pytest.mark.parametrize("ell,k,kp", [(1, 1, 1), (2, 1, 1), (2, 2, 1)])
def test_wheel_vanishing(ell, k, kp):
    Y = YoungDiagramY(ell, 2)
    z = wheel_point(Y, Fraction(3, 2), k, kp)
    assert not schur_numerator(Y, z)
    assert not schur_eval(Y, z, make_field(ell))


def test_needs_distinct_variables():
    Y = YoungDiagramY(1, 2)
    with pytest.raises(DomainError):
        schur_eval(Y, [1, 1, 2, 3])
    with pytest.raises(DomainError):
        schur_eval(Y, [1, 2, 3])
