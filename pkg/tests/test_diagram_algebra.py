import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusedtl import linalg
from fusedtl.diagram_algebra import (
    apply_e,
    apply_word,
    gram_matrix,
    loop_count,
    mirror,
    operator_matrix,
    pair_vectors,
    pairing,
    scale,
)
from fusedtl.patterns import LinkPattern, enumerate_all
from fusedtl.scalars import make_field, tau_value

NESTED = LinkPattern.from_arches(2, [(1, 4), (2, 3)])
ADJACENT = LinkPattern.from_arches(2, [(1, 2), (3, 4)])


def test_small_action():
    ctx = make_field(2)
    tau = tau_value(ctx)
    assert apply_e(1, {ADJACENT: ctx.one}, ctx) == {ADJACENT: tau}
    assert apply_e(2, {ADJACENT: ctx.one}, ctx) == {NESTED: ctx.one}
    # e_4 joins sites 4 and 1
    assert apply_e(4, {ADJACENT: ctx.one}, ctx) == {NESTED: ctx.one}
    assert apply_e(4, {NESTED: ctx.one}, ctx) == {NESTED: tau}


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_tl_relations(n, ell):
    ctx = make_field(ell)
    tau = tau_value(ctx)
    L = 2 * n
    for p in enumerate_all(n):
        v = {p: ctx.one}
        for i in range(1, L + 1):
            ev = apply_e(i, v, ctx)
            assert apply_e(i, ev, ctx) == scale(ev, tau)
            nxt = i % L + 1
            assert apply_word([i, nxt, i], v, ctx) == ev
            assert apply_word([nxt, i, nxt], v, ctx) == apply_e(nxt, v, ctx)
            for j in range(1, L + 1):
                if min((i - j) % L, (j - i) % L) >= 2:
                    assert apply_word([i, j], v, ctx) == apply_word([j, i], v, ctx)


def _loop_oracle(a, b):
    # union-find on the 2n points, joined by both matchings
    parent = list(range(len(a)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for pat in (a, b):
        for i, j in enumerate(pat):
            parent[find(i)] = find(j - 1)
    return len({find(x) for x in range(len(a))})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_loop_count_against_union_find(n):
    pats = enumerate_all(n)
    for a in pats:
        assert loop_count(a, a) == n
        for b in pats:
            assert loop_count(a, b) == _loop_oracle(a, b) == loop_count(b, a)


def test_gram_determinant_two_arches():
    ctx = make_field(3)
    tau = tau_value(ctx)
    assert linalg.det(gram_matrix(2, ctx), ctx) == tau ** 4 - tau ** 2


def test_gram_rank_one_at_tau_one():
    ctx = make_field(1)
    assert tau_value(ctx) == ctx.one
    assert linalg.rank(gram_matrix(3, ctx)) == 1


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(2, 4),
    word=st.lists(st.integers(1, 8), min_size=1, max_size=5),
    ia=st.integers(0, 13),
    ib=st.integers(0, 13),
)
def test_pairing_invariance(n, word, ia, ib):
    ctx = make_field(2)
    pats = enumerate_all(n)
    L = 2 * n
    word = [(w - 1) % L + 1 for w in word]
    a = {pats[ia % len(pats)]: ctx.one}
    b = {pats[ib % len(pats)]: ctx.one}
    lhs = pair_vectors(a, apply_word(word, b, ctx), ctx)
    rhs = pair_vectors(apply_word(mirror(word), a, ctx), b, ctx)
    assert lhs == rhs


def test_pairing_is_tau_power():
    ctx = make_field(2)
    tau = tau_value(ctx)
    assert pairing(NESTED, ADJACENT, ctx) == tau
    assert pairing(NESTED, NESTED, ctx) == tau ** 2


def test_operator_matrix_of_e1():
    ctx = make_field(2)
    tau = tau_value(ctx)
    basis = enumerate_all(2)
    M = operator_matrix(lambda v: apply_e(1, v, ctx), basis, ctx)
    i_adj, i_nest = basis.index(ADJACENT), basis.index(NESTED)
    assert M[i_adj][i_adj] == tau
    assert M[i_adj][i_nest] == ctx.one
    assert not M[i_nest][i_adj] and not M[i_nest][i_nest]
