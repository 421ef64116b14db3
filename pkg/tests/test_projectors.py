import math

import pytest

from fusedtl.diagram_algebra import add_into, apply_e, pair_vectors
from fusedtl.exceptions import NotInSubspaceError
from fusedtl.patterns import (
    BlockStructure,
    LinkPattern,
    cells,
    enumerate_admissible,
    enumerate_all,
    enumerate_block,
    is_block_restricted,
    zero_pattern,
)
from fusedtl.projectors import (
    ProjectorSpec,
    apply_P,
    apply_jw,
    from_tilde,
    gram_tilde,
    left_vector_from_pairing,
    left_vector_v,
    mu_k,
    tilde_vector,
    to_tilde,
)
from fusedtl.scalars import U_tau, make_field, tau_value


@pytest.mark.parametrize("n", [2, 3])
def test_two_strand_projector_is_one_minus_e_over_tau(n):
    ctx = make_field(3)
    tau = tau_value(ctx)
    for start in range(1, 2 * n + 1):
        spec = ProjectorSpec(2, start, 3)
        for p in enumerate_all(n):
            v = {p: ctx.one}
            expected = add_into(dict(v), apply_e(start, v, ctx), -tau.inverse())
            assert apply_jw(spec, v) == expected


def test_mu_values():
    ctx = make_field(4)
    assert mu_k(ctx, 1) == U_tau(ctx, 1).inverse()
    assert mu_k(ctx, 2) * U_tau(ctx, 2) == U_tau(ctx, 1)


def test_small_tilde_vector():
    blocks = BlockStructure(2, 1)
    ctx = make_field(2)
    nested = LinkPattern.from_arches(2, [(1, 4), (2, 3)])
    adjacent = LinkPattern.from_arches(2, [(1, 2), (3, 4)])
    assert enumerate_block(2, 1) == [nested]
    assert tilde_vector(blocks, nested) == {nested: ctx.one, adjacent: -tau_value(ctx).inverse()}
    assert apply_P(blocks, {adjacent: ctx.one}) == {}


@pytest.mark.parametrize("ell,m", [(2, 2), (3, 2), (2, 3)])
def test_P_kills_non_block_patterns_and_is_idempotent(ell, m):
    blocks = BlockStructure(ell, m)
    ctx = make_field(ell)
    for p in enumerate_all(blocks.n):
        img = apply_P(blocks, {p: ctx.one})
        if not is_block_restricted(p, blocks):
            assert img == {}
        else:
            assert img.get(p) == ctx.one
            assert all(q == p or not is_block_restricted(q, blocks) for q in img)
            assert apply_P(blocks, img) == img


def test_tilde_coordinates_round_trip():
    blocks = BlockStructure(2, 2)
    ctx = make_field(2)
    coords = [ctx.from_int(k + 1) for k in range(len(enumerate_block(2, 2)))]
    assert to_tilde(blocks, from_tilde(blocks, coords)) == coords


def test_to_tilde_rejects_vectors_outside_the_image():
    blocks = BlockStructure(2, 2)
    ctx = make_field(2)
    bad = next(p for p in enumerate_all(blocks.n) if not is_block_restricted(p, blocks))
    with pytest.raises(NotInSubspaceError):
        to_tilde(blocks, {bad: ctx.one})
    p = enumerate_block(2, 2)[0]
    with pytest.raises(NotInSubspaceError):
        to_tilde(blocks, {p: ctx.one})
    assert to_tilde(blocks, {p: ctx.one}, check=False)[0] == ctx.one


@pytest.mark.parametrize("ell,m", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)])
def test_v_matches_pairing_with_zero_pattern(ell, m):
    blocks = BlockStructure(ell, m)
    ctx = make_field(ell)
    v = left_vector_v(blocks)
    assert v == left_vector_from_pairing(blocks)
    assert v[enumerate_block(ell, m).index(zero_pattern(blocks))] == ctx.one
    z0 = zero_pattern(blocks)
    assert pair_vectors({z0: ctx.one}, tilde_vector(blocks, z0), ctx) == ctx.one


def test_v_vanishes_off_admissible():
    blocks = BlockStructure(2, 3)
    adm = set(enumerate_admissible(2, 3))
    for p, x in zip(enumerate_block(2, 3), left_vector_v(blocks)):
        assert bool(x) == (p in adm)


def test_golden_ratio_value_occurs():
    blocks = BlockStructure(3, 3)
    ctx = make_field(3)
    target = U_tau(ctx, 1) ** -2
    assert target in left_vector_v(blocks)
    assert target.to_complex().real == pytest.approx(((1 + math.sqrt(5)) / 2) ** -2)


def test_mixed_distance_value_at_level_four():
    blocks = BlockStructure(4, 3)
    ctx = make_field(4)
    target = (U_tau(ctx, 1) * U_tau(ctx, 2)).inverse()
    assert target in left_vector_v(blocks)
    assert target.to_complex().real == pytest.approx(1 / (2 * math.sqrt(3)))


def _interior_components(p, blocks):
    cs = cells(p, blocks).interior()
    parent = list(range(len(cs)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i in range(len(cs)):
        for j in range(i):
            if set(cs[i].chord_edges) & set(cs[j].chord_edges):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(cs))})


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_low_level_v_is_tau_power(ell, m):
    blocks = BlockStructure(ell, m)
    tau = tau_value(make_field(ell))
    v = dict(zip(enumerate_block(ell, m), left_vector_v(blocks)))
    for p in enumerate_admissible(ell, m):
        assert v[p] == tau ** (_interior_components(p, blocks) - m)


@pytest.mark.parametrize("ell,m", [(2, 2), (3, 2), (2, 3)])
def test_gram_is_symmetric_outer_product(ell, m):
    blocks = BlockStructure(ell, m)
    g = gram_tilde(blocks)
    v = left_vector_v(blocks)
    for a in range(len(v)):
        for b in range(len(v)):
            assert g[a][b] == g[b][a] == v[a] * v[b]


def test_projected_vectors_pair_through_P():
    blocks = BlockStructure(2, 2)
    ctx = make_field(2)
    basis = enumerate_block(2, 2)
    for a in basis:
        for b in basis:
            lhs = pair_vectors({a: ctx.one}, tilde_vector(blocks, b), ctx)
            rhs = pair_vectors(tilde_vector(blocks, a), tilde_vector(blocks, b), ctx)
            assert lhs == rhs
