"""Ground states, specializations, sum rules and conjecture probes.

Components of the ground state are polynomials in the spectral parameters
once the rainbow component is fixed to its factorized form. At a generic
point they are obtained from an exact nullspace. At special points, where
the scattering matrices have poles, they are evaluated by interpolating the
polynomial along a line of generic points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import linalg
from .exceptions import DegeneracyError, FusedTLError, SingularParameterError
from .fused import R_fused, hamiltonian, scattering
from .patterns import (
    BlockStructure,
    LinkPattern,
    arches_within_range,
    base_pattern,
    enumerate_block,
    zero_pattern,
)
from .projectors import left_vector_v
from .reports import Report, status
from .scalars import CycScalar, FieldCtx, make_field, q_value, tau_value
from .schur import YoungDiagramY, schur_all_ones, schur_eval


# spectral points

def random_point(count: int, rng: random.Random, exclude: Sequence[Fraction] = ()) -> list[Fraction]:
    """Distinct positive rationals p/q with 1 <= p, q <= 20."""
    out: list[Fraction] = []
    seen = set(exclude)
    while len(out) < count:
        x = Fraction(rng.randint(1, 20), rng.randint(1, 20))
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def is_generic(ctx: FieldCtx, z: Sequence) -> bool:
    """No z_j / z_i equal to q^{2k} with |k| <= l (including k = 0)."""
    zs = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z]
    if any(not x for x in zs):
        return False
    q2 = q_value(ctx) ** 2
    powers = [q2 ** k for k in range(-ctx.ell, ctx.ell + 1)]
    for i, a in enumerate(zs):
        for j, b in enumerate(zs):
            if i < j and any(b == a * p for p in powers):
                return False
    return True


def base_value(blocks: BlockStructure, z: Sequence) -> CycScalar:
    """Omega * prod over i<j in the same half of prod_k (q^k z_i - q^-k z_j)."""
    ctx = make_field(blocks.ell)
    zs = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z]
    q = q_value(ctx)
    m, ell = blocks.m, blocks.ell
    val = ctx.one if (ell * m * (m - 1) // 2) % 2 == 0 else -ctx.one
    for half in (range(0, m), range(m, 2 * m)):
        for a in half:
            for b in half:
                if a < b:
                    for k in range(1, ell + 1):
                        val = val * (q ** k * zs[a] - q ** (-k) * zs[b])
    return val


def homogeneous_delta_value(blocks: BlockStructure) -> CycScalar:
    """((l+2)^2 / (4 - tau^2))^{m(m-1)/2}, the rainbow component at z = 1."""
    ctx = make_field(blocks.ell)
    tau = tau_value(ctx)
    base = ctx.from_int((blocks.ell + 2) ** 2) / (4 - tau * tau)
    return base ** (blocks.m * (blocks.m - 1) // 2)


# ground states

@dataclass
class GroundState:
    blocks: BlockStructure
    psi: list
    mode: str  # "homogeneous" or "at-point"
    z: tuple | None = None
    normalization: dict = field(default_factory=dict)

    def component(self, p: LinkPattern) -> CycScalar:
        return self.psi[enumerate_block(self.blocks.ell, self.blocks.m).index(p)]

    def to_json(self) -> dict:
        basis = enumerate_block(self.blocks.ell, self.blocks.m)
        return {
            "ell": self.blocks.ell,
            "m": self.blocks.m,
            "mode": self.mode,
            "z": None if self.z is None else [_scalar_json(x) for x in self.z],
            "normalization": self.normalization,
            "components": [
                {"pattern": p.to_json(), "value": x.to_json()} for p, x in zip(basis, self.psi)
            ],
        }


def _scalar_json(x):
    if isinstance(x, CycScalar):
        return x.to_json()
    return str(Fraction(x))


def _delta_index(blocks: BlockStructure) -> int:
    return enumerate_block(blocks.ell, blocks.m).index(base_pattern(blocks))


def _omega_sign(blocks: BlockStructure) -> int:
    m = blocks.m
    return -1 if (blocks.ell * m * (m - 1) // 2) % 2 else 1


def _normalize(blocks: BlockStructure, vec: list, target: CycScalar) -> list:
    d = vec[_delta_index(blocks)]
    if not d:
        raise DegeneracyError("rainbow component vanishes; cannot normalize")
    s = target / d
    return [x * s for x in vec]


def ground_state_homogeneous(blocks: BlockStructure) -> GroundState:
    """Kernel of H - 2 m tau, scaled to the homogeneous rainbow value."""
    ctx = make_field(blocks.ell)
    H = hamiltonian(blocks)
    shift = tau_value(ctx) * (2 * blocks.m)
    A = [[x - shift if r == c else x for c, x in enumerate(row)] for r, row in enumerate(H.entries)]
    ker = linalg.nullspace(A, ctx)
    if len(ker) != 1:
        raise DegeneracyError(f"kernel of H - 2m tau has dimension {len(ker)}")
    psi = _normalize(blocks, ker[0], homogeneous_delta_value(blocks))
    return GroundState(
        blocks, psi, "homogeneous", None,
        {"convention": "delta-normalized", "omega_sign": _omega_sign(blocks)},
    )


def ground_state_raw(blocks: BlockStructure, z: Sequence) -> list[CycScalar]:
    """Common eigenvalue-1 eigenvector of every T'_i, unnormalized."""
    ctx = make_field(blocks.ell)
    m2 = 2 * blocks.m
    if blocks.m == 1:
        return [ctx.one]
    ops = [scattering(blocks, 1, z)]
    ident = linalg.identity(ops[0].size, ctx)
    ker = linalg.nullspace(linalg.mat_add(ops[0].entries, ident, -1), ctx)
    rest = list(range(2, m2 + 1))
    while len(ker) > 1 and rest:
        # intersect with the next kernel
        T = scattering(blocks, rest.pop(0), z)
        B = linalg.transpose(ker)
        D = linalg.mat_add(linalg.matmul(T.entries, B, ctx), B, -1)
        coef = linalg.nullspace(D, ctx)
        ker = [linalg.matvec(B, c, ctx) for c in coef]
    if not ker:
        raise FusedTLError("no common eigenvalue-1 eigenvector")
    if len(ker) > 1:
        raise DegeneracyError(f"eigenvalue-1 eigenspace has dimension {len(ker)}")
    psi = ker[0]
    for i in rest:
        if scattering(blocks, i, z).apply(psi) != psi:
            raise FusedTLError(f"T'_{i} does not fix the T'_1 eigenvector")
    return psi


def ground_state_at(blocks: BlockStructure, z: Sequence) -> GroundState:
    """Ground state at a generic point, with the rainbow component set to its product form."""
    ctx = make_field(blocks.ell)
    if not is_generic(ctx, z):
        raise SingularParameterError("spectral point is not generic; use evaluate_at_special")
    psi = _normalize(blocks, ground_state_raw(blocks, z), base_value(blocks, z))
    return GroundState(
        blocks, psi, "at-point", tuple(z),
        {"convention": "delta-normalized", "omega_sign": _omega_sign(blocks)},
    )


# polynomial interpolation

def interpolate(ts: Sequence, ys: Sequence, ctx: FieldCtx) -> list[CycScalar]:
    """Monomial coefficients (low to high) of the interpolant through (ts, ys)."""
    ts = [t if isinstance(t, CycScalar) else ctx.coerce(t) for t in ts]
    n = len(ts)
    dd = list(ys)
    newton = [dd[0]]
    for k in range(1, n):
        dd = [(dd[i + 1] - dd[i]) / (ts[i + k] - ts[i]) for i in range(n - k)]
        newton.append(dd[0])
    coeffs = [ctx.zero] * n
    for k in reversed(range(n)):
        # coeffs = coeffs * (x - t_k) + newton[k]
        shifted = [ctx.zero] + coeffs[:-1]
        coeffs = [s - c * ts[k] for s, c in zip(shifted, coeffs)]
        coeffs[0] = coeffs[0] + newton[k]
    return coeffs


def poly_eval(coeffs: Sequence[CycScalar], t, ctx: FieldCtx) -> CycScalar:
    t = t if isinstance(t, CycScalar) else ctx.coerce(t)
    val = ctx.zero
    for c in reversed(coeffs):
        val = val * t + c
    return val


def poly_degree(coeffs: Sequence[CycScalar]) -> int:
    """Degree, with -1 for the zero polynomial."""
    for k in reversed(range(len(coeffs))):
        if coeffs[k]:
            return k
    return -1


@dataclass
class LineEvaluation:
    psi: list
    degree: int
    consistent: bool


def evaluate_on_line(
    blocks: BlockStructure,
    z0: Sequence,
    direction: Sequence,
    target,
    degree_bound: int,
    rng: random.Random,
) -> LineEvaluation:
    """Evaluate the normalized ground state at z0 + target * direction.

    The components along the line are polynomials of degree <= degree_bound;
    they are interpolated from degree_bound + 1 generic samples and one more
    sample confirms the fit.
    """
    ctx = make_field(blocks.ell)
    z0 = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z0]
    direction = [ctx.coerce(x) if not isinstance(x, CycScalar) else x for x in direction]
    ts: list[Fraction] = []
    samples = []
    while len(ts) < degree_bound + 2:
        t = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        if t in ts:
            continue
        z = [a + b * t for a, b in zip(z0, direction)]
        if not is_generic(ctx, z):
            continue
        ts.append(t)
        samples.append(ground_state_at(blocks, z).psi)
    dim = len(samples[0])
    out, deg, ok = [], -1, True
    for a in range(dim):
        ys = [s[a] for s in samples]
        coeffs = interpolate(ts[:-1], ys[:-1], ctx)
        if poly_eval(coeffs, ts[-1], ctx) != ys[-1]:
            ok = False
        deg = max(deg, poly_degree(coeffs))
        out.append(poly_eval(coeffs, target, ctx))
    return LineEvaluation(out, deg, ok)


def evaluate_at_special(
    blocks: BlockStructure, z: Sequence, vary: int, rng: random.Random
) -> LineEvaluation:
    """Ground state at a possibly special point by interpolation in z_vary alone.

    The other coordinates of ``z`` must be generic among themselves.
    """
    ctx = make_field(blocks.ell)
    z0 = [x if isinstance(x, CycScalar) else ctx.coerce(x) for x in z]
    target = z0[vary - 1]
    z0[vary - 1] = ctx.zero
    direction = [0] * len(z0)
    direction[vary - 1] = 1
    return evaluate_on_line(blocks, z0, direction, target, blocks.ell * (blocks.m - 1), rng)


# checks

def check_vanishing(
    blocks: BlockStructure, i: int, j: int, k: int, rng: random.Random
) -> Report:
    """z_j = q^{2k} z_i: components with fewer than l-k+1 arches in S_{i,j} vanish."""
    ctx = make_field(blocks.ell)
    z = [ctx.coerce(x) for x in random_point(2 * blocks.m, rng)]
    z[j - 1] = z[i - 1] * q_value(ctx) ** (2 * k)
    ev = evaluate_at_special(blocks, z, j, rng)
    need = blocks.ell - k + 1
    basis = enumerate_block(blocks.ell, blocks.m)
    bad, nonzero = [], 0
    for p, x in zip(basis, ev.psi):
        if arches_within_range(p, blocks, i, j) < need:
            if x:
                bad.append(p.to_json())
        elif x:
            nonzero += 1
    ok = ev.consistent and not bad
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "i": i, "j": j, "k": k},
        "vanishing-at-q-shifted-pair",
        status(ok),
        {"violations": bad, "surviving_nonzero": nonzero, "interpolation_consistent": ev.consistent},
    )


def check_wheel(
    blocks: BlockStructure, positions: tuple[int, int, int], k: int, kp: int, rng: random.Random
) -> Report:
    """Whole-vector vanishing when z_i, z_i', z_i'' form a q-wheel in cyclic order.

    The vector is evaluated along a line through the wheel point, using the
    per-variable degree bound summed over all variables.
    """
    ctx = make_field(blocks.ell)
    i, ip, ipp = positions
    m2 = 2 * blocks.m
    z = [ctx.coerce(x) for x in random_point(m2, rng)]
    q2 = q_value(ctx) ** 2
    z[ip - 1] = z[i - 1] * q2 ** k
    z[ipp - 1] = z[ip - 1] * q2 ** kp
    direction = random_point(m2, rng)
    bound = m2 * blocks.ell * (blocks.m - 1)
    z0 = list(z)
    ev = evaluate_on_line(blocks, z0, direction, 0, bound, rng)
    ok = ev.consistent and not any(ev.psi)
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "positions": list(positions), "k": k, "k_prime": kp},
        "whole-vector-vanishing-at-wheel",
        status(ok),
        {"nonzero_components": sum(1 for x in ev.psi if x), "interpolation_consistent": ev.consistent},
    )


def embed_pattern(p: LinkPattern, blocks: BlockStructure, i: int) -> LinkPattern:
    """phi_i: insert S_i, S_{i+1} fully connected to each other into a size m-1 pattern."""
    ell, m = blocks.ell, blocks.m
    L = 2 * ell * m
    # big block index receiving small block b
    targets = [b for b in range(1, 2 * m + 1) if b not in (i, i % (2 * m) + 1)]
    if i == 2 * m:
        targets = list(range(2, 2 * m))

    def site(s: int) -> int:
        b, r = divmod(s - 1, ell)
        return ell * (targets[b] - 1) + r + 1

    out = [0] * L
    for a in range(1, len(p) + 1):
        out[site(a) - 1] = site(p[a - 1])
    j = i % (2 * m) + 1
    for r in range(ell):
        a = ell * (i - 1) + ell - r
        b = ell * (j - 1) + 1 + r
        out[a - 1], out[b - 1] = b, a
    return LinkPattern(out)


def recursion_factor(
    blocks: BlockStructure, i: int, z: Sequence[CycScalar], q_exponent: int | None = None
) -> CycScalar:
    """q^{2l(m-1)} prod_{j != i,i+1} prod_k (z_i - q^{2k} z_j).

    ``q_exponent`` overrides the power of q; 2(m-1) only matches for l = 1.
    """
    ctx = make_field(blocks.ell)
    q = q_value(ctx)
    m2 = 2 * blocks.m
    ip = i % m2 + 1
    if q_exponent is None:
        q_exponent = 2 * blocks.ell * (blocks.m - 1)
    val = q ** q_exponent
    for j in range(1, m2 + 1):
        if j not in (i, ip):
            for k in range(1, blocks.ell + 1):
                val = val * (z[i - 1] - q ** (2 * k) * z[j - 1])
    return val


def check_recursion(blocks: BlockStructure, i: int, rng: random.Random) -> Report:
    """Components at z_{i+1} = q^2 z_i against the size m-1 ground state."""
    ctx = make_field(blocks.ell)
    m2 = 2 * blocks.m
    ip = i % m2 + 1
    z = [ctx.coerce(x) for x in random_point(m2, rng)]
    z[ip - 1] = z[i - 1] * q_value(ctx) ** 2
    ev = evaluate_at_special(blocks, z, ip, rng)
    small = BlockStructure(blocks.ell, blocks.m - 1)
    zs = [x for t, x in enumerate(z, 1) if t not in (i, ip)]
    small_psi = ground_state_at(small, zs).psi
    factor = recursion_factor(blocks, i, z)
    big = enumerate_block(blocks.ell, blocks.m)
    index = {p: t for t, p in enumerate(big)}
    image = set()
    mismatches = 0
    ratios = set()
    for p, x in zip(enumerate_block(small.ell, small.m), small_psi):
        e = embed_pattern(p, blocks, i)
        image.add(e)
        lhs = ev.psi[index[e]]
        if lhs != factor * x:
            mismatches += 1
        if x:
            ratios.add(lhs / (factor * x))
    outside = sum(1 for p, x in zip(big, ev.psi) if p not in image and x)
    ok = ev.consistent and mismatches == 0 and outside == 0
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "i": i},
        "recursion-at-q2-shift",
        status(ok),
        {
            "mismatches": mismatches,
            "nonzero_outside_image": outside,
            "interpolation_consistent": ev.consistent,
            "distinct_ratios": len(ratios),
            "ratio": next(iter(ratios)).to_json() if len(ratios) == 1 else None,
        },
    )


def check_exchange(blocks: BlockStructure, i: int, rng: random.Random) -> Report:
    """R_i(z_i, z_{i+1}) Psi(.., z_{i+1}, z_i, ..) = Psi(.., z_i, z_{i+1}, ..)."""
    m2 = 2 * blocks.m
    ip = i % m2 + 1
    z = random_point(m2, rng)
    zs = list(z)
    zs[i - 1], zs[ip - 1] = zs[ip - 1], zs[i - 1]
    lhs = R_fused(blocks, i, z[i - 1], z[ip - 1]).apply(ground_state_at(blocks, zs).psi)
    rhs = ground_state_at(blocks, z).psi
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "i": i, "z": [str(x) for x in z]},
        "exchange-relation",
        status(lhs == rhs),
    )


@dataclass
class SumRuleReport:
    Z: CycScalar
    schur_value: CycScalar
    match: bool
    params: dict
    norm_consistent: bool = True

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "Z": self.Z.to_json(),
            "schur_value": self.schur_value.to_json(),
            "match": self.match,
            "norm_consistent": self.norm_consistent,
        }


def pairing_with_v(blocks: BlockStructure, psi: Sequence[CycScalar]) -> CycScalar:
    ctx = make_field(blocks.ell)
    total = ctx.zero
    for a, b in zip(left_vector_v(blocks), psi):
        if a and b:
            total = total + a * b
    return total


def norm_squared(blocks: BlockStructure, psi: Sequence[CycScalar]) -> CycScalar:
    """<Psi|Psi> through the projected Gram matrix."""
    from .projectors import gram_tilde

    ctx = make_field(blocks.ell)
    g = gram_tilde(blocks)
    return sum((a * b for a, b in zip(psi, linalg.matvec(g, psi, ctx))), ctx.zero)


def sum_rule(blocks: BlockStructure, z: Sequence | None = None, check_norm: bool = False) -> SumRuleReport:
    """Z = sum_a v_a Psi_a compared with s_Y(z), or with the dimension formula when z is None."""
    ctx = make_field(blocks.ell)
    Y = YoungDiagramY(blocks.ell, blocks.m)
    if z is None:
        gs = ground_state_homogeneous(blocks)
        s = ctx.from_int(schur_all_ones(Y))
        params = {"ell": blocks.ell, "m": blocks.m, "z": "homogeneous"}
    else:
        gs = ground_state_at(blocks, z)
        s = schur_eval(Y, z, ctx)
        params = {"ell": blocks.ell, "m": blocks.m, "z": [_scalar_json(x) for x in z]}
    Z = pairing_with_v(blocks, gs.psi)
    norm_ok = True
    if check_norm:
        norm_ok = norm_squared(blocks, gs.psi) == Z * Z
    return SumRuleReport(Z, s, Z == s, params, norm_ok)


def degree_probe(blocks: BlockStructure, i: int, rng: random.Random) -> Report:
    """Maximum degree in z_i over all components, with one extra sample as a check."""
    ctx = make_field(blocks.ell)
    bound = blocks.ell * (blocks.m - 1)
    z = [ctx.coerce(x) for x in random_point(2 * blocks.m, rng)]
    ev = evaluate_at_special(blocks, z, i, rng)
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "variable": i},
        "per-variable-degree-probe",
        status(ev.consistent and ev.degree == bound),
        {"degree": ev.degree, "expected": bound, "extra_point_reproduced": ev.consistent},
    )


# real embedding for sign tests

def real_interval(x: CycScalar, prec: int) -> mpmath.iv.mpf:
    """Interval enclosure of a real element of Q(zeta) (its real part, exactly)."""
    N = x.ctx.N
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = prec
    try:
        total = iv.mpf(0)
        for k, c in enumerate(x.coeffs):
            if c:
                total += iv.mpf(c.numerator) / c.denominator * iv.cos(iv.pi * (2 * k) / N)
        return total
    finally:
        iv.prec = saved


def sign(x: CycScalar) -> int:
    """Exact sign of a real element: zero test, then refine intervals until decided."""
    if not x:
        return 0
    if not x.is_real():
        raise ValueError("sign of a non-real number")
    prec = 64
    while True:
        iv = real_interval(x, prec)
        if iv.a > 0:
            return 1
        if iv.b < 0:
            return -1
        prec *= 2


def conjecture_largest(blocks: BlockStructure) -> Report:
    """Conjecture check: Psi_0 is the largest entry and Psi_0/Psi_delta = Z(m-1)/Psi_delta(m-1)."""
    ctx = make_field(blocks.ell)
    gs = ground_state_homogeneous(blocks)
    basis = enumerate_block(blocks.ell, blocks.m)
    p0 = gs.psi[basis.index(zero_pattern(blocks))]
    largest = all(sign(p0 - x) >= 0 for x in gs.psi)
    pdelta = gs.psi[basis.index(base_pattern(blocks))]
    if blocks.m == 1:
        rhs = ctx.one
    else:
        small = BlockStructure(blocks.ell, blocks.m - 1)
        sg = ground_state_homogeneous(small)
        rhs = pairing_with_v(small, sg.psi) / homogeneous_delta_value(small)
    lhs = p0 / pdelta
    ok = largest and lhs == rhs
    return Report(
        {"ell": blocks.ell, "m": blocks.m},
        "conjecture check: largest entry and ratio",
        status(ok),
        {
            "largest_entry_is_psi_0": largest,
            "ratio_clause": lhs == rhs,
            "psi_0_over_psi_delta": lhs.to_json(),
            "expected_ratio": rhs.to_json(),
            "all_real": all(x.is_real() for x in gs.psi),
        },
    )
