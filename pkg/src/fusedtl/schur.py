"""Schur functions of the doubled staircase Y_{l,m}."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from . import linalg
from .exceptions import DomainError
from .scalars import CycScalar, FieldCtx, make_field

# Z(1,...,1) keyed by (l, m), l <= 5, m <= 6.
TABLE1: dict[tuple[int, int], int] = {}
_TABLE1_ROWS = {
    1: [1, 6, 189, 30618, 25332021, 106698472452],
    2: [1, 20, 6720, 36900864, 3280676585472, 4702058148658151424],
    3: [1, 50, 103125, 8507812500, 27783325195312500, 3574209022521972656250000],
    4: [1, 105, 945945, 707814508401, 43505367274327463505, 218541150429748620278689395225],
    5: [
        1,
        196,
        6117748,
        29406803321896,
        21520945685492367246132,
        2385377935975138162776292257847164,
    ],
}
for _ell, _row in _TABLE1_ROWS.items():
    for _m, _val in enumerate(_row, 1):
        TABLE1[(_ell, _m)] = _val


@dataclass(frozen=True)
class YoungDiagramY:
    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 1 or self.m < 1:
            raise DomainError("ell and m must be positive")

    @property
    def rows(self) -> tuple[int, ...]:
        """((m-1)l, (m-1)l, ..., l, l, 0, 0)."""
        return tuple(self.ell * (self.m - 1 - i // 2) for i in range(2 * self.m))

    @property
    def h(self) -> tuple[int, ...]:
        """Exponents h_{2i-1} = (i-1)(l+2), h_{2i} = (i-1)(l+2)+1, increasing."""
        out = []
        for i in range(1, self.m + 1):
            out += [(i - 1) * (self.ell + 2), (i - 1) * (self.ell + 2) + 1]
        return tuple(out)


def schur_eval(Y: YoungDiagramY, z: Sequence, ctx: FieldCtx | None = None) -> CycScalar:
    """s_Y(z) = det(z_j^{h_i}) / prod_{i<j} (z_j - z_i).

    Rows and columns both run in increasing order, which makes the
    denominator the Vandermonde determinant det(z_j^{i-1}).
    """
    ctx = ctx or make_field(Y.ell)
    if len(z) != 2 * Y.m:
        raise DomainError(f"expected {2 * Y.m} variables")
    zs = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z]
    den = ctx.one
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            d = zs[j] - zs[i]
            if not d:
                raise DomainError("schur_eval needs pairwise distinct variables")
            den = den * d
    M = [[x ** h for x in zs] for h in Y.h]
    return linalg.det(M, ctx) / den


def schur_numerator(Y: YoungDiagramY, z: Sequence, ctx: FieldCtx | None = None) -> CycScalar:
    """The alternant det(z_j^{h_i}); defined for any z, zero when the Schur value is forced to vanish."""
    ctx = ctx or make_field(Y.ell)
    zs = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z]
    return linalg.det([[x ** h for x in zs] for h in Y.h], ctx)


def schur_all_ones(Y: YoungDiagramY) -> int:
    """Dimension formula prod_{i<j} (h_j - h_i) / (j - i)."""
    h = Y.h
    n = len(h)
    num = prod(h[j] - h[i] for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    val = Fraction(num, den)
    assert val.denominator == 1 and val > 0
    return int(val)


def wheel_point(Y: YoungDiagramY, z1, k: int, kp: int, positions=(1, 2, 3), ctx: FieldCtx | None = None):
    """Spectral point with z_{i'} = q^{2k} z_i and z_{i''} = q^{2k'} z_{i'}; others 2, 3, 4, ..."""
    from .scalars import q_value

    ctx = ctx or make_field(Y.ell)
    q2 = q_value(ctx) ** 2
    i, ip, ipp = positions
    z = [ctx.coerce(Fraction(t + 2)) for t in range(2 * Y.m)]
    z[i - 1] = ctx.coerce(z1)
    z[ip - 1] = z[i - 1] * q2 ** k
    z[ipp - 1] = z[ip - 1] * q2 ** kp
    return z
