"""Exact arithmetic in the cyclotomic field Q(zeta_N), N = 2(ell + 2).

Elements are stored as an integer numerator polynomial (residue modulo the
cyclotomic polynomial Phi_N) over a single positive integer denominator.
Keeping one common denominator instead of a vector of Fractions makes
multiplication a plain integer convolution, which is what dominates the
cost of every matrix built elsewhere in the package.

The root of unity is fixed once and for all: zeta is the residue class of x,
q = zeta**(ell + 3) = -zeta and tau = zeta + 1/zeta = 2 cos(pi / (ell + 2)).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction

Number = Union[int, Fraction, "CycScalar"]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den monic, ascending coefficients
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for t in range(dq + 1):
                num[k - dq + t] -= c * den[t]
    rem = num[:dq] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class FieldCtx:
    """Read-only description of Q(zeta_N) for a given ell."""

    def __init__(self, ell: int):
        if ell < 1:
            raise ValueError(f"ell must be >= 1, got {ell}")
        self.ell = ell
        self.N = 2 * (ell + 2)
        self.minpoly = cyclotomic_poly(self.N)
        self.phi_N = len(self.minpoly) - 1
        assert self.phi_N == _totient(self.N)
        # x**k mod Phi_N for k < max(N, 2*phi_N - 1)
        d = self.phi_N
        table = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(max(self.N, 2 * d - 1)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for t in range(d):
                    cur[t] -= top * self.minpoly[t]
        self._xpow = table
        self._zeta_pow: list[CycScalar] = []
        self.zero = CycScalar._raw(self, (0,) * d, 1)
        self.one = self.from_int(1)

    def __repr__(self) -> str:
        return f"FieldCtx(ell={self.ell}, N={self.N})"

    def __reduce__(self):
        return (make_field, (self.ell,))

    # construction helpers -------------------------------------------------

    def from_int(self, k: int) -> CycScalar:
        num = [0] * self.phi_N
        num[0] = int(k)
        return CycScalar._raw(self, tuple(num), 1)

    def from_fraction(self, x: Fraction) -> CycScalar:
        x = Fraction(x)
        num = [0] * self.phi_N
        num[0] = x.numerator
        return CycScalar._raw(self, tuple(num), x.denominator)

    def coerce(self, x: Number) -> CycScalar:
        if isinstance(x, CycScalar):
            if x.ctx is not self:
                raise ValueError("scalars from different fields")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def from_coeffs(self, coeffs: Iterable[Number]) -> CycScalar:
        """Element sum_k coeffs[k] * zeta**k; any length is accepted and reduced."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        return CycScalar._from_long(self, ints, den)

    def zeta_pow(self, k: int) -> CycScalar:
        if not self._zeta_pow:
            self._zeta_pow = [
                CycScalar._from_long(self, [0] * j + [1], 1) for j in range(self.N)
            ]
        return self._zeta_pow[k % self.N]

    @property
    def zeta(self) -> CycScalar:
        return self.zeta_pow(1)


class CycScalar:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("ctx", "num", "den", "_hash")

    ctx: FieldCtx
    num: tuple[int, ...]
    den: int

    @classmethod
    def _raw(cls, ctx: FieldCtx, num: tuple[int, ...], den: int) -> CycScalar:
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _normalized(cls, ctx: FieldCtx, num: list[int], den: int) -> CycScalar:
        if den != 1:
            g = math.gcd(den, *num)
            if den < 0:
                g = -g
            if g != 1:
                num = [c // g for c in num]
                den //= g
        if not any(num):
            return ctx.zero
        return cls._raw(ctx, tuple(num), den)

    @classmethod
    def _from_long(cls, ctx: FieldCtx, ints: Sequence[int], den: int) -> CycScalar:
        d = ctx.phi_N
        out = [0] * d
        xp = ctx._xpow
        for k, c in enumerate(ints):
            if not c:
                continue
            row = xp[k] if k < len(xp) else xp[k % ctx.N]
            for t in range(d):
                if row[t]:
                    out[t] += c * row[t]
        return cls._normalized(ctx, out, den)

    # basic protocol -------------------------------------------------------

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def __bool__(self) -> bool:
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return self.ctx is other.ctx and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.ctx.N, self.num, self.den))
        return self._hash

    def _other(self, other) -> CycScalar | None:
        if isinstance(other, CycScalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> CycScalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not any(o.num):
            return self
        if not any(self.num):
            return o
        if self.den == o.den:
            return CycScalar._normalized(
                self.ctx, [a + b for a, b in zip(self.num, o.num)], self.den
            )
        d1, d2 = self.den, o.den
        return CycScalar._normalized(
            self.ctx, [a * d2 + b * d1 for a, b in zip(self.num, o.num)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> CycScalar:
        return CycScalar._raw(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other) -> CycScalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CycScalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> CycScalar:
        if isinstance(other, int):
            if other == 0:
                return self.ctx.zero
            return CycScalar._normalized(self.ctx, [a * other for a in self.num], self.den)
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        if not any(a) or not any(b):
            return self.ctx.zero
        if not any(b[1:]):
            s = b[0]
            return CycScalar._normalized(self.ctx, [c * s for c in a], self.den * o.den)
        if not any(a[1:]):
            s = a[0]
            return CycScalar._normalized(self.ctx, [c * s for c in b], self.den * o.den)
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        mp = self.ctx.minpoly
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for t in range(d):
                    if mp[t]:
                        prod[base + t] -= c * mp[t]
        return CycScalar._normalized(self.ctx, prod[:d], self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.ctx.from_fraction(Fraction(self.den, self.num[0]))
        # extended Euclid over Q[x]: s*a + t*Phi = 1
        a = [Fraction(c) for c in self.num]
        s = _poly_inverse_mod(a, [Fraction(c) for c in self.ctx.minpoly])
        return self.ctx.from_coeffs(c * self.den for c in s)

    def __truediv__(self, other) -> CycScalar:
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            sign = -1 if other < 0 else 1
            return CycScalar._normalized(
                self.ctx, [sign * a for a in self.num], self.den * abs(other)
            )
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> CycScalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> CycScalar:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # Galois action and embeddings ------------------------------------------

    def galois(self, j: int) -> CycScalar:
        """Image under zeta -> zeta**j (j coprime to N)."""
        N = self.ctx.N
        if math.gcd(j, N) != 1:
            raise ValueError(f"{j} is not a unit modulo {N}")
        ints = [0] * N
        for k, c in enumerate(self.num):
            ints[(k * j) % N] += c
        return CycScalar._from_long(self.ctx, ints, self.den)

    def conjugate(self) -> CycScalar:
        return self.galois(-1 % self.ctx.N)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def to_complex(self) -> complex:
        """Floating-point value; debugging aid only."""
        z = complex(math.cos(2 * math.pi / self.ctx.N), math.sin(2 * math.pi / self.ctx.N))
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"CycScalar[N={self.ctx.N}]({body})"

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"N": self.ctx.N, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CycScalar:
        N = int(data["N"])
        if N % 2 or N < 6:
            raise ValueError(f"N={N} is not of the form 2(ell+2)")
        ctx = make_field(N // 2 - 2)
        coeffs = [parse_rational(s) for s in data["coeffs"]]
        if len(coeffs) != ctx.phi_N:
            raise ValueError(f"expected {ctx.phi_N} coefficients, got {len(coeffs)}")
        return ctx.from_coeffs(coeffs)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s: str | int | Fraction) -> Fraction:
    """Parse "p/q", "p" or a number into a Fraction."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


# polynomial helpers over Q (ascending coefficient lists) -------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for t, bt in enumerate(b):
                a[k + t] -= c * bt
    return q, _trim(a[: len(b) - 1] or [Fraction(0)])


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0] != 0:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the minimal polynomial")
    c = r0[0]
    _, s = _pdivmod(s0, m)
    return [x / c for x in s]


# public operations ---------------------------------------------------------

@lru_cache(maxsize=None)
def make_field(ell: int) -> FieldCtx:
    """Shared field context for the combinatorial point of level ``ell``."""
    return FieldCtx(ell)


def q_value(ctx: FieldCtx) -> CycScalar:
    return ctx.zeta_pow(ctx.ell + 3)


def tau_value(ctx: FieldCtx) -> CycScalar:
    return ctx.zeta_pow(1) + ctx.zeta_pow(-1)


def chebyshev_U(k: int, x: CycScalar) -> CycScalar:
    """Chebyshev polynomial of the second kind U_k evaluated at x."""
    if k < 0:
        raise ValueError("k must be non-negative")
    prev, cur = x.ctx.one, x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, x * cur - prev
    return cur


@lru_cache(maxsize=None)
def U_tau(ctx: FieldCtx, k: int) -> CycScalar:
    """Cached U_k(tau) at the combinatorial point of ``ctx``."""
    return chebyshev_U(k, tau_value(ctx))
