"""Periodic Temperley-Lieb action on link patterns and the gluing form.

Vectors of the ambient space are sparse dicts ``{LinkPattern: CycScalar}``
holding only nonzero coefficients. Operators are never stored as matrices
here; they are action functions, and ``operator_matrix`` materializes one on
demand.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .patterns import LinkPattern, enumerate_all
from .scalars import CycScalar, FieldCtx, tau_value

TLVector = dict  # LinkPattern -> CycScalar, zero entries dropped


@lru_cache(maxsize=200_000)
def _e_on_pattern(i: int, p: LinkPattern) -> LinkPattern | None:
    """Image of a single pattern under e_i, or None when a loop closes."""
    L = len(p)
    a, b = i, i % L + 1
    pa, pb = p[a - 1], p[b - 1]
    if pa == b:
        return None
    out = list(p)
    out[a - 1], out[b - 1] = b, a
    out[pa - 1], out[pb - 1] = pb, pa
    return LinkPattern(out)


def generator_index(i: int, npoints: int) -> int:
    """Reduce a generator index to 1..2n; index 2n joins sites 2n and 1."""
    return (i - 1) % npoints + 1


def basis_vector(p: LinkPattern, ctx: FieldCtx) -> TLVector:
    return {LinkPattern(p): ctx.one}


def add_into(acc: TLVector, v: Mapping, c: CycScalar | None = None) -> TLVector:
    """acc += c * v, in place; drops cancelled entries."""
    for p, x in v.items():
        y = x if c is None else x * c
        if p in acc:
            s = acc[p] + y
            if s:
                acc[p] = s
            else:
                del acc[p]
        elif y:
            acc[p] = y
    return acc


def scale(v: Mapping, c: CycScalar) -> TLVector:
    if not c:
        return {}
    return {p: x * c for p, x in v.items()}


def combine(*terms: tuple[CycScalar, Mapping]) -> TLVector:
    acc: TLVector = {}
    for c, v in terms:
        add_into(acc, v, c)
    return acc


def apply_e(i: int, v: Mapping, ctx: FieldCtx) -> TLVector:
    """Action of the generator e_i (periodic, 1 <= i <= 2n)."""
    if not v:
        return {}
    L = len(next(iter(v)))
    i = generator_index(i, L)
    tau = tau_value(ctx)
    out: TLVector = {}
    for p, x in v.items():
        q = _e_on_pattern(i, p)
        if q is None:
            add_into(out, {p: x * tau})
        else:
            add_into(out, {q: x})
    return out


def apply_word(word: Sequence[int], v: Mapping, ctx: FieldCtx) -> TLVector:
    """Apply the product e_{w[0]} e_{w[1]} ... e_{w[-1]}; the last letter acts first."""
    out = dict(v)
    for i in reversed(word):
        out = apply_e(i, out, ctx)
    return out


def mirror(word: Sequence[int]) -> tuple[int, ...]:
    """Image of a word under the anti-automorphism fixing every e_i."""
    return tuple(reversed(word))


def loop_count(a: LinkPattern, b: LinkPattern) -> int:
    """Closed loops formed by gluing ``a`` to the mirror image of ``b``."""
    if len(a) != len(b):
        raise ValueError("patterns of different sizes")
    L = len(a)
    seen = [False] * L
    loops = 0
    for start in range(L):
        if seen[start]:
            continue
        loops += 1
        x = start
        while not seen[x]:
            seen[x] = True
            y = a[x] - 1
            seen[y] = True
            x = b[y] - 1
    return loops


def pairing(a: LinkPattern, b: LinkPattern, ctx: FieldCtx) -> CycScalar:
    return tau_value(ctx) ** loop_count(a, b)


def pair_vectors(u: Mapping, v: Mapping, ctx: FieldCtx) -> CycScalar:
    """Bilinear extension of ``pairing``."""
    tau = tau_value(ctx)
    powers: dict[int, CycScalar] = {}
    total = ctx.zero
    for a, x in u.items():
        for b, y in v.items():
            k = loop_count(a, b)
            if k not in powers:
                powers[k] = tau ** k
            total = total + x * y * powers[k]
    return total


def gram_matrix(n: int, ctx: FieldCtx) -> list[list[CycScalar]]:
    basis = enumerate_all(n)
    tau = tau_value(ctx)
    powers = [tau ** k for k in range(n + 1)]
    return [[powers[loop_count(a, b)] for b in basis] for a in basis]


def operator_matrix(
    action: Callable[[TLVector], Mapping],
    basis: Sequence[LinkPattern],
    ctx: FieldCtx,
    columns: Iterable[LinkPattern] | None = None,
) -> list[list[CycScalar]]:
    """Dense matrix M with M[r][c] = coefficient of basis[r] in action(basis[c])."""
    index = {p: k for k, p in enumerate(basis)}
    cols = list(basis if columns is None else columns)
    M = [[ctx.zero] * len(cols) for _ in basis]
    for c, p in enumerate(cols):
        for q, x in action({p: ctx.one}).items():
            M[index[q]][c] = x
    return M
