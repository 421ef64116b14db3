"""Fused generators, fused R-matrices, scattering matrices and the Hamiltonian.

Every operator here preserves the projected space and is stored as a dense
matrix on the tilde basis {|a~> : a in L_{ell,2m}}, with rows and columns in
canonical pattern order. Columns are obtained by acting on |b~> in the
ambient space and reading off coordinates on L_{ell,2m}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import linalg
from .diagram_algebra import TLVector, add_into, apply_e, apply_word, generator_index
from .exceptions import DomainError, SingularParameterError
from .patterns import BlockStructure, enumerate_block, rotate
from .projectors import tilde_vector
from .scalars import CycScalar, FieldCtx, U_tau, make_field, q_value

Number = int | Fraction | CycScalar


@dataclass
class FusedOperator:
    """Square matrix on the tilde basis of H_{ell,2m}."""

    blocks: BlockStructure
    entries: list
    label: str = ""

    @property
    def ctx(self) -> FieldCtx:
        return make_field(self.blocks.ell)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: FusedOperator) -> FusedOperator:
        return FusedOperator(
            self.blocks,
            linalg.matmul(self.entries, other.entries, self.ctx),
            f"{self.label}*{other.label}",
        )

    def __add__(self, other: FusedOperator) -> FusedOperator:
        return FusedOperator(
            self.blocks, linalg.mat_add(self.entries, other.entries), f"{self.label}+{other.label}"
        )

    def __sub__(self, other: FusedOperator) -> FusedOperator:
        return FusedOperator(
            self.blocks, linalg.mat_add(self.entries, other.entries, -1), f"{self.label}-{other.label}"
        )

    def scaled(self, c: Number) -> FusedOperator:
        return FusedOperator(self.blocks, linalg.mat_scale(self.entries, c), self.label)

    def apply(self, x: Sequence[CycScalar]) -> list[CycScalar]:
        return linalg.matvec(self.entries, x, self.ctx)

    def apply_left(self, x: Sequence[CycScalar]) -> list[CycScalar]:
        """Row vector times matrix."""
        return linalg.vecmat(x, self.entries, self.ctx)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusedOperator):
            return NotImplemented
        return self.blocks == other.blocks and self.entries == other.entries

    def is_identity(self) -> bool:
        return self.entries == linalg.identity(self.size, self.ctx)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, blocks: BlockStructure, data: dict) -> FusedOperator:
        ents = [[CycScalar.from_json(x) for x in row] for row in data["entries"]]
        return cls(blocks, ents, data.get("label", ""))


def identity_operator(blocks: BlockStructure) -> FusedOperator:
    n = len(enumerate_block(blocks.ell, blocks.m))
    return FusedOperator(blocks, linalg.identity(n, make_field(blocks.ell)), "1")


def operator_from_action(
    blocks: BlockStructure, action: Callable[[TLVector], TLVector], label: str
) -> FusedOperator:
    """Matrix of an operator X commuting with P: column b holds X|b~> restricted to L."""
    ctx = make_field(blocks.ell)
    basis = enumerate_block(blocks.ell, blocks.m)
    index = {p: k for k, p in enumerate(basis)}
    M = linalg.zeros(len(basis), len(basis), ctx)
    for c, b in enumerate(basis):
        for p, x in action(tilde_vector(blocks, b)).items():
            r = index.get(p)
            if r is not None:
                M[r][c] = x
    return FusedOperator(blocks, M, label)


# fused generators

def diamond_word(blocks: BlockStructure, i: int, j: int) -> tuple[int, ...]:
    """Generators of the diamond joining j pairs between S_i and S_{i+1}.

    Layer k holds e_{l i - k + 1}, e_{l i - k + 3}, ..., e_{l i + k - 1}; the
    word climbs layers 1..j and comes back down.
    """
    if not 0 <= j <= blocks.ell:
        raise DomainError(f"j must lie in 0..{blocks.ell}")
    L = blocks.npoints
    c = blocks.ell * i
    layers = [[generator_index(c - k + 1 + 2 * t, L) for t in range(k)] for k in range(1, j + 1)]
    order = layers + layers[-2::-1]
    return tuple(g for layer in order for g in layer)


@lru_cache(maxsize=None)
def _e_fused(ell: int, m: int, i: int, j: int) -> FusedOperator:
    blocks = BlockStructure(ell, m)
    ctx = make_field(ell)
    word = diamond_word(blocks, i, j)
    return operator_from_action(blocks, lambda v: apply_word(word, v, ctx), f"e_{i}^({j})")


def e_fused(blocks: BlockStructure, i: int, j: int) -> FusedOperator:
    i = (i - 1) % (2 * blocks.m) + 1
    op = _e_fused(blocks.ell, blocks.m, i, j)
    return FusedOperator(op.blocks, [list(r) for r in op.entries], op.label)


# spectral parameters

def _coerce(ctx: FieldCtx, x: Number) -> CycScalar:
    return x if isinstance(x, CycScalar) else ctx.coerce(x)


def r_coefficients(ctx: FieldCtx, z: Number, w: Number) -> tuple[CycScalar, CycScalar]:
    """Coefficients (c1, c2) of r(z,w) = c1 + c2 e."""
    z, w = _coerce(ctx, z), _coerce(ctx, w)
    q = q_value(ctx)
    qi = q.inverse()
    den = q * w - qi * z
    if not den:
        raise SingularParameterError("r(z,w) has a pole at q w = q^-1 z")
    return (q * z - qi * w) / den, (z - w) / den


def r_elementary(i: int, z: Number, w: Number, ctx: FieldCtx) -> Callable[[TLVector], TLVector]:
    """Action of the unfused R-matrix r_i(z,w) on ambient vectors."""
    c1, c2 = r_coefficients(ctx, z, w)

    def act(v: Mapping) -> TLVector:
        out = {p: x * c1 for p, x in v.items()} if c1 else {}
        if c2:
            add_into(out, apply_e(i, v, ctx), c2)
        return out

    return act


def fusion_network(blocks: BlockStructure, i: int) -> list[list[tuple[int, int, int]]]:
    """Rows of the l x l crossing grid joining S_i and S_{i+1}.

    Each crossing is (generator, a, b): strand a of S_i meets strand b of
    S_{i+1}. Rows are listed as they appear from left to right in the
    operator product. Strand a of S_i carries q^{l+1-2a} z, strand b of
    S_{i+1} carries q^{l+1-2b} w.
    """
    ell = blocks.ell
    strands = [("z", a) for a in range(1, ell + 1)] + [("w", b) for b in range(1, ell + 1)]
    rows = []
    for t in range(1, 2 * ell):
        s = ell - 1 - abs(t - ell)
        row = []
        for g in range(ell - s, ell + s + 1, 2):
            left, right = strands[g - 1], strands[g]
            assert left[0] == "z" and right[0] == "w"
            row.append((generator_index(ell * (i - 1) + g, blocks.npoints), left[1], right[1]))
            strands[g - 1], strands[g] = right, left
        rows.append(row)
    return rows


def _q_pow(ctx: FieldCtx, k: int) -> CycScalar:
    return q_value(ctx) ** k


def fusion_prefactor(ctx: FieldCtx, ell: int, z: CycScalar, w: CycScalar) -> CycScalar:
    """Scalar making the projected product satisfy v R = v and R(z,z) = 1.

    The product runs over k = 1..l-1; with the upper limit l the two
    constructions of R disagree by a z,w-dependent factor.
    """
    val = ctx.one
    for k in range(1, ell):
        den = _q_pow(ctx, k) * z - _q_pow(ctx, -k) * w
        if not den:
            raise SingularParameterError("fusion prefactor has a pole")
        val = val * (_q_pow(ctx, -k) * z - _q_pow(ctx, k) * w) / den
    return val


def R_product(blocks: BlockStructure, i: int, z: Number, w: Number, normalize: bool = True) -> FusedOperator:
    """Fused R-matrix as the projected product of l^2 elementary r's.

    With ``normalize`` the product is scaled by the scalar through which the
    left vector v is an eigenvector, so that v R = v.
    """
    ctx = make_field(blocks.ell)
    z, w = _coerce(ctx, z), _coerce(ctx, w)
    ell = blocks.ell
    factors = []
    for row in fusion_network(blocks, i):
        for g, a, b in row:
            factors.append(
                r_elementary(g, _q_pow(ctx, ell + 1 - 2 * a) * z, _q_pow(ctx, ell + 1 - 2 * b) * w, ctx)
            )

    def act(v: TLVector) -> TLVector:
        for f in reversed(factors):
            v = f(v)
        return v

    op = operator_from_action(blocks, act, f"R_{i}")
    if normalize:
        op = op.scaled(fusion_prefactor(ctx, ell, z, w))
    return op


def defrb_coefficient(ctx: FieldCtx, ell: int, j: int, z: CycScalar, w: CycScalar) -> CycScalar:
    """Coefficient of e^(j) in the explicit form of R, without the a_j factor."""
    val = ctx.one
    for k in range(0, ell - j + 1):
        num = _q_pow(ctx, k) * z - _q_pow(ctx, -k) * w
        den = _q_pow(ctx, k - ell) * z - _q_pow(ctx, ell - k) * w
        if j == 0 and k == 0:
            num = None  # cancels the k = l denominator, both equal z - w
        if j == 0 and k == ell:
            den = None
        if num is not None:
            val = val * num
        if den is not None:
            if not den:
                raise SingularParameterError(f"R(z,w) has a pole at w/z = q^{2 * (k - ell)}")
            val = val / den
    return val


def a_coefficient(ctx: FieldCtx, ell: int, j: int) -> CycScalar:
    val = ctx.one
    for k in range(1, j + 1):
        val = val * U_tau(ctx, ell - k) / U_tau(ctx, k - 1)
    return val


def defrb_sign(ell: int, j: int) -> int:
    """Sign (-1)^(l + j(l+1)) needed for v R = v and R(z,z) = 1."""
    return -1 if (ell + j * (ell + 1)) % 2 else 1


def R_fused(blocks: BlockStructure, i: int, z: Number, w: Number) -> FusedOperator:
    """Fused R-matrix as a combination of the e_i^(j)."""
    ctx = make_field(blocks.ell)
    z, w = _coerce(ctx, z), _coerce(ctx, w)
    ell = blocks.ell
    n = len(enumerate_block(ell, blocks.m))
    M = linalg.zeros(n, n, ctx)
    for j in range(ell + 1):
        c = defrb_sign(ell, j) * a_coefficient(ctx, ell, j) * defrb_coefficient(ctx, ell, j, z, w)
        if c:
            M = linalg.mat_add(M, e_fused(blocks, i, j).entries, c)
    return FusedOperator(blocks, M, f"R_{i}")


# rotation, scattering matrices, Hamiltonian

def rho_operator(blocks: BlockStructure, times: int = 1) -> FusedOperator:
    """Rotation sending S_i to S_{i+1}; a permutation matrix on the tilde basis."""
    ctx = make_field(blocks.ell)
    basis = enumerate_block(blocks.ell, blocks.m)
    index = {p: k for k, p in enumerate(basis)}
    M = linalg.zeros(len(basis), len(basis), ctx)
    for c, p in enumerate(basis):
        M[index[rotate(p, blocks, times)]][c] = ctx.one
    return FusedOperator(blocks, M, "rho" if times == 1 else f"rho^{times}")


def scattering(blocks: BlockStructure, i: int, z: Sequence[Number]) -> FusedOperator:
    """T'_i = R_i(z_i,z_{i+1}) R_{i+1}(z_i,z_{i+2}) ... R_{i-2}(z_i,z_{i-1}) rho^{-1}.

    Factors are listed left to right, so rho^{-1} acts first. The rotation
    enters inversely: with the forward shift the product has no common
    eigenvector with the other T'_j once m >= 3.
    """
    m2 = 2 * blocks.m
    if len(z) != m2:
        raise DomainError(f"expected {m2} spectral parameters")
    ctx = make_field(blocks.ell)
    zs = [_coerce(ctx, x) for x in z]
    op = rho_operator(blocks, -1)
    for k in reversed(range(i, i + m2 - 1)):
        op = R_fused(blocks, (k - 1) % m2 + 1, zs[i - 1], zs[k % m2]) @ op
    op.label = f"T'_{i}"
    return op


def hamiltonian(blocks: BlockStructure) -> FusedOperator:
    """H = sum_i sum_{j=1..l} e_i^(j) / U_{j-1}(tau)."""
    ctx = make_field(blocks.ell)
    n = len(enumerate_block(blocks.ell, blocks.m))
    M = linalg.zeros(n, n, ctx)
    for i in range(1, 2 * blocks.m + 1):
        for j in range(1, blocks.ell + 1):
            M = linalg.mat_add(M, e_fused(blocks, i, j).entries, U_tau(ctx, j - 1).inverse())
    return FusedOperator(blocks, M, "H")
