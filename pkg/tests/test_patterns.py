import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusedtl.exceptions import CapacityError, DomainError
from fusedtl.patterns import (
    BlockStructure,
    LinkPattern,
    admissible_count_formula,
    arches_between,
    base_pattern,
    catalan,
    cells,
    enumerate_admissible,
    enumerate_all,
    enumerate_block,
    enumerate_words,
    from_word,
    is_admissible,
    is_block_restricted,
    is_lukasiewicz,
    parity_residues,
    reflect,
    rotate,
    to_word,
    zero_pattern,
)


def brute_noncrossing(n):
    """All perfect matchings of 1..2n, filtered for noncrossing."""
    out = []

    def rec(free, pairs):
        if not free:
            ok = all(
                not (a < c < b < d or c < a < d < b) for (a, b) in pairs for (c, d) in pairs
            )
            if ok:
                out.append(LinkPattern.from_arches(n, pairs))
            return
        a = free[0]
        for b in free[1:]:
            rec([x for x in free if x not in (a, b)], pairs + [(a, b)])

    rec(list(range(1, 2 * n + 1)), [])
    return out


def residue_distance(p, blocks, face):
    """Oracle for k(c): min over arcs a of the cell of min(r(a)+1, l-1-r(a))."""
    return min(min((a - 1) % blocks.ell + 1, blocks.ell - 1 - (a - 1) % blocks.ell) for a in face)


@pytest.mark.parametrize("n", range(1, 6))
def test_catalan_counts(n):
    assert len(enumerate_all(n)) == catalan(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_enumeration_matches_brute_force(n):
    assert set(enumerate_all(n)) == set(brute_noncrossing(n))
    assert enumerate_all(n) == sorted(enumerate_all(n))


@pytest.mark.parametrize("ell, m", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_block_enumeration_is_the_filter(ell, m):
    blocks = BlockStructure(ell, m)
    filtered = [p for p in enumerate_all(ell * m) if is_block_restricted(p, blocks)]
    assert enumerate_block(ell, m) == filtered


def test_small_examples():
    assert len(enumerate_block(2, 3)) == 15
    assert len(enumerate_admissible(2, 3)) == 12
    assert [len(enumerate_block(1, m)) for m in range(1, 5)] == [catalan(m) for m in range(1, 5)]


@pytest.mark.parametrize("ell", range(1, 5))
@pytest.mark.parametrize("m", range(1, 4))
def test_admissible_count(ell, m):
    assert len(enumerate_admissible(ell, m)) == admissible_count_formula(ell, m)
    assert len(enumerate_words(ell, m)) == admissible_count_formula(ell, m)


@pytest.mark.parametrize("ell, m", [(2, 3), (3, 3), (4, 2), (5, 2), (2, 4)])
def test_cell_distance_matches_residue_oracle(ell, m):
    from fusedtl.patterns import _faces

    blocks = BlockStructure(ell, m)
    for p in enumerate_admissible(ell, m):
        faces = _faces(p)
        dec = cells(p, blocks)
        for face, cell in zip(faces, dec.cells):
            assert cell.k == residue_distance(p, blocks, face)


@pytest.mark.parametrize("ell, m", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_admissible_implies_parity(ell, m):
    blocks = BlockStructure(ell, m)
    for p in enumerate_admissible(ell, m):
        assert parity_residues(p, blocks)


def test_parity_is_not_sufficient():
    blocks = BlockStructure(2, 3)
    p = LinkPattern.from_arches(6, [(1, 6), (2, 3), (4, 5), (7, 12), (8, 9), (10, 11)])
    assert parity_residues(p, blocks)
    assert not is_admissible(p, blocks)


def test_special_patterns():
    blocks = BlockStructure(2, 2)
    z = zero_pattern(blocks)
    assert z.arches() == [(1, 4), (2, 3), (5, 8), (6, 7)]
    assert base_pattern(blocks).arches() == [(1, 8), (2, 7), (3, 6), (4, 5)]
    assert arches_between(z, blocks, 1, 2) == 2
    # the 2-gons between nested arches are interior but contribute U^0
    assert all(c.l == 2 for c in cells(z, blocks).interior())


@pytest.mark.parametrize("ell, m", [(1, 3), (2, 3), (3, 2)])
def test_rotation_and_reflection(ell, m):
    blocks = BlockStructure(ell, m)
    L = set(enumerate_block(ell, m))
    for p in L:
        assert rotate(p, blocks) in L
        assert rotate(p, blocks, 2 * m) == p
        assert rotate(rotate(p, blocks), blocks, -1) == p
        assert reflect(reflect(p)) == p
        assert reflect(p) in L
        assert is_admissible(rotate(p, blocks), blocks) == is_admissible(p, blocks)


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_word_bijection(ell, m):
    blocks = BlockStructure(ell, m)
    words = set()
    for p in enumerate_admissible(ell, m):
        w = to_word(p, blocks)
        assert is_lukasiewicz(w, ell, m)
        assert from_word(w, blocks) == p
        words.add(w)
    assert words == set(enumerate_words(ell, m))


def test_word_errors():
    blocks = BlockStructure(2, 3)
    bad = [p for p in enumerate_block(2, 3) if not is_admissible(p, blocks)]
    with pytest.raises(DomainError):
        to_word(bad[0], blocks)
    with pytest.raises(DomainError):
        from_word((2, 2, 2), blocks)


def test_capacity(monkeypatch):
    monkeypatch.setenv("FUSED_TL_MAX_DIM", "10")
    with pytest.raises(CapacityError):
        enumerate_all(6)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.data())
def test_json_roundtrip(n, data):
    p = data.draw(st.sampled_from(enumerate_all(n)))
    assert LinkPattern.from_json(p.to_json()) == p
    assert p.validate() == p
