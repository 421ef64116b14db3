"""Jones-Wenzl projectors, the block projector P and the tilde basis.

The projector p^(k) on generators e_j, ..., e_{j+k-2} is applied through its
recursive definition, with results memoized per basis pattern. Its expansion
as a combination of words is never formed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .diagram_algebra import (
    TLVector,
    add_into,
    apply_e,
    generator_index,
    pair_vectors,
)
from .exceptions import DegenerateParameterError, NotInSubspaceError
from .patterns import (
    BlockStructure,
    LinkPattern,
    cells,
    enumerate_block,
    is_admissible,
    zero_pattern,
)
from .scalars import CycScalar, FieldCtx, U_tau, make_field


@dataclass(frozen=True)
class ProjectorSpec:
    """p^(k) built on e_start, ..., e_{start+k-2} (indices taken cyclically)."""

    k: int
    start: int
    ell: int  # selects the field

    @property
    def ctx(self) -> FieldCtx:
        return make_field(self.ell)

    @property
    def mu(self) -> list[CycScalar]:
        return [mu_k(self.ctx, j) for j in range(1, self.k)]


def mu_k(ctx: FieldCtx, k: int) -> CycScalar:
    """mu_k = U_{k-1}(tau) / U_k(tau)."""
    den = U_tau(ctx, k)
    if not den:
        raise DegenerateParameterError(f"U_{k}(tau) vanishes for ell={ctx.ell}")
    return U_tau(ctx, k - 1) / den


@lru_cache(maxsize=None)
def _jw_basis(k: int, start: int, right: bool, p: LinkPattern, ell: int) -> tuple:
    ctx = make_field(ell)
    v = {p: ctx.one}
    if k == 1:
        return tuple(v.items())
    L = len(p)
    if right:
        # p^(k) on e_start.. = p^(k-1)(e_{start+1}..) (1 - mu e_start) p^(k-1)(e_{start+1}..)
        inner_start, gen = start + 1, start
    else:
        inner_start, gen = start, start + k - 2
    gen = generator_index(gen, L)
    mu = mu_k(ctx, k - 1)
    w = _apply_jw_raw(k - 1, inner_start, right, v, ell)
    u = add_into(dict(w), apply_e(gen, w, ctx), -mu)
    return tuple(_apply_jw_raw(k - 1, inner_start, right, u, ell).items())


def _apply_jw_raw(k: int, start: int, right: bool, v: Mapping, ell: int) -> TLVector:
    if k == 1:
        return dict(v)
    out: TLVector = {}
    for p, x in v.items():
        L = len(p)
        s = generator_index(start, L)
        add_into(out, dict(_jw_basis(k, s, right, p, ell)), x)
    return out


def apply_jw(spec: ProjectorSpec, v: Mapping, from_right: bool = False) -> TLVector:
    """Apply p^(k); ``from_right`` uses the mirror recursion peeling e_start."""
    if spec.k < 1:
        raise ValueError("k must be >= 1")
    for j in range(1, spec.k):
        if not U_tau(spec.ctx, j):
            raise DegenerateParameterError(f"U_{j}(tau) vanishes for ell={spec.ell}")
    return _apply_jw_raw(spec.k, spec.start, from_right, v, spec.ell)


def block_projector(blocks: BlockStructure, i: int) -> ProjectorSpec:
    return ProjectorSpec(blocks.ell, blocks.ell * (i - 1) + 1, blocks.ell)


def apply_P(blocks: BlockStructure, v: Mapping) -> TLVector:
    """Apply every block projector p_1 ... p_2m (they commute)."""
    out = dict(v)
    if blocks.ell == 1:
        return out
    for i in range(1, 2 * blocks.m + 1):
        out = apply_jw(block_projector(blocks, i), out)
    return out


@lru_cache(maxsize=None)
def _tilde(ell: int, m: int, p: LinkPattern) -> tuple:
    ctx = make_field(ell)
    return tuple(apply_P(BlockStructure(ell, m), {p: ctx.one}).items())


def tilde_vector(blocks: BlockStructure, p: LinkPattern) -> TLVector:
    """|p~> = P|p> in the ambient basis."""
    return dict(_tilde(blocks.ell, blocks.m, LinkPattern(p)))


def to_tilde(blocks: BlockStructure, v: Mapping, check: bool = True) -> list[CycScalar]:
    """Coordinates of ``v`` in the basis {|a~> : a in L_{ell,2m}}.

    Each |a~> equals |a> plus patterns outside L_{ell,2m}, so the coordinates
    are read off directly; ``check`` verifies that v is reproduced.
    """
    ctx = make_field(blocks.ell)
    basis = enumerate_block(blocks.ell, blocks.m)
    coords = [v.get(a, ctx.zero) for a in basis]
    if check:
        resid = dict(v)
        for a, c in zip(basis, coords):
            if c:
                add_into(resid, tilde_vector(blocks, a), -c)
        if resid:
            raise NotInSubspaceError(
                f"vector has {len(resid)} residual entries outside the projected space"
            )
    return coords


def from_tilde(blocks: BlockStructure, coords) -> TLVector:
    basis = enumerate_block(blocks.ell, blocks.m)
    out: TLVector = {}
    for a, c in zip(basis, coords):
        if c:
            add_into(out, tilde_vector(blocks, a), c)
    return out


def gram_tilde(blocks: BlockStructure) -> list[list[CycScalar]]:
    """Matrix <a|P|b> over L_{ell,2m}, one projection per column."""
    ctx = make_field(blocks.ell)
    basis = enumerate_block(blocks.ell, blocks.m)
    cols = [tilde_vector(blocks, b) for b in basis]
    return [[pair_vectors({a: ctx.one}, col, ctx) for col in cols] for a in basis]


def v_component(p: LinkPattern, blocks: BlockStructure) -> CycScalar:
    """Closed form for <0|p~> from the cell decomposition of ``p``."""
    ctx = make_field(blocks.ell)
    if not is_admissible(p, blocks):
        return ctx.zero
    val = ctx.one
    for c in cells(p, blocks).interior():
        e = 1 - c.l // 2
        if e:
            val = val * U_tau(ctx, c.k) ** e
    return val


def left_vector_v(blocks: BlockStructure) -> list[CycScalar]:
    return [v_component(p, blocks) for p in enumerate_block(blocks.ell, blocks.m)]


def left_vector_from_pairing(blocks: BlockStructure) -> list[CycScalar]:
    """<0|P|a> computed through the projector, for cross-checking."""
    ctx = make_field(blocks.ell)
    zero = zero_pattern(blocks)
    return [
        pair_vectors({zero: ctx.one}, tilde_vector(blocks, a), ctx)
        for a in enumerate_block(blocks.ell, blocks.m)
    ]
