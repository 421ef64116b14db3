"""Structural checks run by the ``verify`` command and the acceptance suite."""
from __future__ import annotations

import random

from . import linalg
from .diagram_algebra import apply_e, apply_word, pair_vectors, scale
from .fused import R_fused, R_product, e_fused, hamiltonian, scattering
from .patterns import BlockStructure, arches_between, enumerate_all, enumerate_block
from .projectors import ProjectorSpec, apply_jw, gram_tilde, left_vector_v, mu_k
from .reports import Report, status
from .scalars import U_tau, make_field, q_value, tau_value
from .spectra import random_point


def check_tl_relations(n: int, ell: int) -> Report:
    """e_i^2 = tau e_i and e_i e_{i+-1} e_i = e_i on the periodic ring of 2n sites."""
    ctx = make_field(ell)
    tau = tau_value(ctx)
    L = 2 * n
    bad = []
    for p in enumerate_all(n):
        v = {p: ctx.one}
        for i in range(1, L + 1):
            ev = apply_e(i, v, ctx)
            if apply_e(i, ev, ctx) != scale(ev, tau):
                bad.append(("square", i))
            if L > 2:
                for j in (i - 1, i + 1):
                    if apply_word([i, j, i], v, ctx) != ev:
                        bad.append(("braid", i, j))
    return Report({"n": n, "ell": ell}, "temperley-lieb-relations", status(not bad), {"failures": len(bad)})


def _range_gens(start: int, k: int, L: int) -> list[int]:
    return [(start + t - 1) % L + 1 for t in range(k - 1)]


def check_projector_properties(kmax: int = 4, nmax: int = 4, ell: int = 4) -> Report:
    """Recurrence properties (a)-(e) of the Jones-Wenzl projectors as operator identities."""
    ctx = make_field(ell)
    failures: dict[str, int] = {p: 0 for p in "abcde"}
    cases = 0
    for n in range(1, nmax + 1):
        L = 2 * n
        basis = enumerate_all(n)
        for k in range(1, kmax + 1):
            if k > L - 1:
                continue
            for start in range(1, L + 1):
                spec = ProjectorSpec(k, start, ell)
                gens = _range_gens(start, k, L)
                nxt = (start + k - 2) % L + 1
                P = lambda v: apply_jw(spec, v)  # noqa: E731
                cols = {}
                for b in basis:
                    v = {b: ctx.one}
                    w = P(v)
                    cols[b] = w
                    cases += 1
                    # (a)
                    if P(w) != w:
                        failures["a"] += 1
                    pe = P(apply_e(nxt, v, ctx))
                    if P(apply_e(nxt, pe, ctx)) != scale(pe, mu_k(ctx, k).inverse()):
                        failures["a"] += 1
                    # (c)
                    for g in gens:
                        if apply_e(g, w, ctx) or P(apply_e(g, v, ctx)):
                            failures["c"] += 1
                    # (d)
                    if apply_jw(spec, v, from_right=True) != w:
                        failures["d"] += 1
                    # (e)
                    for kp in range(1, k + 1):
                        for off in range(0, k - kp + 1):
                            sub = ProjectorSpec(kp, (start + off - 1) % L + 1, ell)
                            if apply_jw(sub, w) != w or P(apply_jw(sub, v)) != w:
                                failures["e"] += 1
                # (b): <a|p b> = <p a|b> for the invariant loop pairing
                for a in basis:
                    for b in basis:
                        lhs = pair_vectors({a: ctx.one}, cols[b], ctx)
                        rhs = pair_vectors(cols[a], {b: ctx.one}, ctx)
                        if lhs != rhs:
                            failures["b"] += 1
    ok = not any(failures.values())
    return Report(
        {"kmax": kmax, "nmax": nmax, "ell": ell},
        "jones-wenzl-properties",
        status(ok),
        {"failures": failures, "cases": cases},
    )


def check_fused_generators(blocks: BlockStructure) -> Report:
    """Image support, eigenvalue on fully connected patterns, and e^(j) e^(l) = (U_l/U_{l-j}) e^(l)."""
    ctx = make_field(blocks.ell)
    ell = blocks.ell
    basis = enumerate_block(ell, blocks.m)
    bad = 0
    for i in range(1, 2 * blocks.m + 1):
        ip = i % (2 * blocks.m) + 1
        El = e_fused(blocks, i, ell)
        for j in range(ell + 1):
            E = e_fused(blocks, i, j)
            for c in range(len(basis)):
                if any(E.entries[r][c] for r in range(len(basis)) if arches_between(basis[r], blocks, i, ip) < j):
                    bad += 1
            ratio = U_tau(ctx, ell) / U_tau(ctx, ell - j)
            for c, a in enumerate(basis):
                if arches_between(a, blocks, i, ip) == ell:
                    col = [E.entries[r][c] for r in range(len(basis))]
                    if col != [ratio if r == c else ctx.zero for r in range(len(basis))]:
                        bad += 1
            if E @ El != El.scaled(ratio):
                bad += 1
    return Report({"ell": ell, "m": blocks.m}, "fused-generator-properties", status(bad == 0), {"failures": bad})


def check_rank_one(blocks: BlockStructure) -> Report:
    """The projected Gram matrix has rank one and equals v (x) v."""
    g = gram_tilde(blocks)
    v = left_vector_v(blocks)
    rk = linalg.rank(g)
    outer = all(g[a][b] == v[a] * v[b] for a in range(len(v)) for b in range(len(v)))
    return Report(
        {"ell": blocks.ell, "m": blocks.m},
        "rank-one-gram",
        status(rk == 1 and outer),
        {"rank": rk, "outer_product": outer, "dimension": len(v)},
    )


def check_left_eigenvector(blocks: BlockStructure, rng: random.Random) -> Report:
    """v e^(j) = v / U_j, v R = v, v T' = v and v H = 2 m tau v."""
    ctx = make_field(blocks.ell)
    v = left_vector_v(blocks)
    m2 = 2 * blocks.m
    fails = []
    for i in range(1, m2 + 1):
        for j in range(blocks.ell + 1):
            if e_fused(blocks, i, j).apply_left(v) != [x / U_tau(ctx, j) for x in v]:
                fails.append(f"e_{i}^({j})")
    z = random_point(m2, rng)
    for i in range(1, m2 + 1):
        if R_fused(blocks, i, z[0], z[1]).apply_left(v) != v:
            fails.append(f"R_{i}")
        if scattering(blocks, i, z).apply_left(v) != v:
            fails.append(f"T'_{i}")
    tau = tau_value(ctx)
    if hamiltonian(blocks).apply_left(v) != [x * tau * m2 for x in v]:
        fails.append("H")
    return Report(
        {"ell": blocks.ell, "m": blocks.m, "z": [str(x) for x in z]},
        "left-eigenvector",
        status(not fails),
        {"failures": fails},
    )


def check_unitarity(blocks: BlockStructure, rng: random.Random) -> Report:
    """R_i(z,w) R_i(w,z) = 1, R_i(z,z) = 1 and R_i(z, q^2 z) proportional to e_i^(l)."""
    ctx = make_field(blocks.ell)
    fails = []
    for i in range(1, 2 * blocks.m + 1):
        z, w = random_point(2, rng)
        if not (R_fused(blocks, i, z, w) @ R_fused(blocks, i, w, z)).is_identity():
            fails.append(f"unitarity_{i}")
        if not R_fused(blocks, i, z, z).is_identity():
            fails.append(f"regularity_{i}")
        zq = ctx.coerce(z)
        C = R_fused(blocks, i, zq, zq * q_value(ctx) ** 2)
        E = e_fused(blocks, i, blocks.ell)
        r, c = next((r, c) for r, row in enumerate(E.entries) for c, x in enumerate(row) if x)
        if C != E.scaled(C.entries[r][c] / E.entries[r][c]):
            fails.append(f"projector_point_{i}")
    return Report({"ell": blocks.ell, "m": blocks.m}, "r-matrix-unitarity", status(not fails), {"failures": fails})


def check_r_agreement(blocks: BlockStructure, rng: random.Random) -> Report:
    """The explicit combination of fused generators equals the projected product of r's."""
    fails = []
    for i in range(1, 2 * blocks.m + 1):
        z, w = random_point(2, rng)
        if R_fused(blocks, i, z, w) != R_product(blocks, i, z, w):
            fails.append(i)
    return Report({"ell": blocks.ell, "m": blocks.m}, "r-matrix-two-constructions", status(not fails), {"failures": fails})


def run_suite(blocks: BlockStructure, seed: int = 0) -> list[Report]:
    rng = random.Random(seed)
    ell = max(blocks.ell, 4)
    return [
        check_tl_relations(min(blocks.n, 4), blocks.ell),
        check_projector_properties(min(blocks.ell, 4), min(blocks.n, 4), ell),
        check_fused_generators(blocks),
        check_rank_one(blocks),
        check_left_eigenvector(blocks, rng),
        check_unitarity(blocks, rng),
        check_r_agreement(blocks, rng),
    ]
