"""Link patterns, block restriction, cell geometry and Lukasiewicz words.

A link pattern on 2n points is stored as the tuple of partners, 1-based:
``p[i - 1]`` is the point paired with ``i``.
"""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .exceptions import CapacityError, DomainError

DEFAULT_MAX_DIM = 1500


def max_dim() -> int:
    """Cap on the ambient Catalan dimension, from FUSED_TL_MAX_DIM."""
    return int(os.environ.get("FUSED_TL_MAX_DIM", DEFAULT_MAX_DIM))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


class LinkPattern(tuple):
    """Noncrossing perfect matching of {1..2n}, as a tuple of 1-based partners."""

    __slots__ = ()

    def __new__(cls, partner):
        return super().__new__(cls, partner)

    @property
    def size(self) -> int:
        return len(self) // 2

    def partner(self, i: int) -> int:
        return self[i - 1]

    def arches(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self, 1) if i < j]

    def validate(self) -> LinkPattern:
        L = len(self)
        if L % 2:
            raise DomainError("odd number of points")
        for i, j in enumerate(self, 1):
            if not 1 <= j <= L or j == i or self[j - 1] != i:
                raise DomainError(f"not a fixed-point-free involution at {i}")
        for a, b in self.arches():
            for c, d in self.arches():
                if a < c < b < d:
                    raise DomainError(f"arches ({a},{b}) and ({c},{d}) cross")
        return self

    @classmethod
    def from_arches(cls, n: int, arches) -> LinkPattern:
        partner = [0] * (2 * n)
        for a, b in arches:
            partner[a - 1] = b
            partner[b - 1] = a
        return cls(partner).validate()

    def to_json(self) -> dict:
        return {"n": self.size, "partner": list(self)}

    @classmethod
    def from_json(cls, data: dict) -> LinkPattern:
        p = cls(int(x) for x in data["partner"]).validate()
        if p.size != int(data["n"]):
            raise DomainError("size field does not match partner array")
        return p


@dataclass(frozen=True)
class BlockStructure:
    """The 2m consecutive blocks S_i = {ell(i-1)+1, ..., ell*i}."""

    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 1 or self.m < 1:
            raise ValueError("ell and m must be positive")

    @property
    def n(self) -> int:
        return self.ell * self.m

    @property
    def npoints(self) -> int:
        return 2 * self.n

    def block_of(self, site: int) -> int:
        return (site - 1) // self.ell + 1

    def block(self, i: int) -> range:
        i = (i - 1) % (2 * self.m) + 1
        return range(self.ell * (i - 1) + 1, self.ell * i + 1)

    def residue(self, site: int) -> int:
        return (site - 1) % self.ell


def _noncrossing(points: tuple[int, ...]):
    if not points:
        yield ()
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inner, outer = points[1:k], points[k + 1:]
        for a in _noncrossing(inner):
            for b in _noncrossing(outer):
                yield ((first, points[k]),) + a + b


def _check_capacity(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if catalan(n) > max_dim():
        raise CapacityError(
            f"ambient dimension c_{n} = {catalan(n)} exceeds cap {max_dim()} "
            "(set FUSED_TL_MAX_DIM to raise it)"
        )


@lru_cache(maxsize=None)
def _enumerate_all(n: int) -> tuple[LinkPattern, ...]:
    out = []
    for arches in _noncrossing(tuple(range(1, 2 * n + 1))):
        partner = [0] * (2 * n)
        for a, b in arches:
            partner[a - 1] = b
            partner[b - 1] = a
        out.append(LinkPattern(partner))
    out.sort()
    return tuple(out)


def enumerate_all(n: int) -> list[LinkPattern]:
    """All c_n link patterns on 2n points, sorted lexicographically."""
    _check_capacity(n)
    return list(_enumerate_all(n))


def is_block_restricted(p: LinkPattern, blocks: BlockStructure) -> bool:
    return all(blocks.block_of(i) != blocks.block_of(j) for i, j in enumerate(p, 1))


MAX_ENUM_N = 16


def _block_matchings(points: tuple[int, ...], ell: int):
    if not points:
        yield ()
        return
    first = points[0]
    fb = (first - 1) // ell
    for k in range(1, len(points), 2):
        if (points[k] - 1) // ell == fb:
            continue
        inner, outer = points[1:k], points[k + 1:]
        for a in _block_matchings(inner, ell):
            for b in _block_matchings(outer, ell):
                yield ((first, points[k]),) + a + b


@lru_cache(maxsize=None)
def _enumerate_block(ell: int, m: int) -> tuple[LinkPattern, ...]:
    n = ell * m
    out = []
    for arches in _block_matchings(tuple(range(1, 2 * n + 1)), ell):
        partner = [0] * (2 * n)
        for a, b in arches:
            partner[a - 1] = b
            partner[b - 1] = a
        out.append(LinkPattern(partner))
    out.sort()
    return tuple(out)


def enumerate_block(ell: int, m: int) -> list[LinkPattern]:
    """Patterns with no arch inside any block, in canonical order.

    Generated directly, so the ambient cap does not apply; sizes are bounded
    by ``MAX_ENUM_N`` instead.
    """
    if ell < 1 or m < 1:
        raise ValueError("ell and m must be positive")
    if ell * m > MAX_ENUM_N:
        raise CapacityError(f"n = {ell * m} exceeds the enumeration bound {MAX_ENUM_N}")
    return list(_enumerate_block(ell, m))


# cells ----------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    chord_edges: tuple[tuple[int, int], ...]
    boundary_edges: int
    k: int

    @property
    def exterior(self) -> bool:
        return self.boundary_edges > 0

    @property
    def l(self) -> int:
        """Edge count after merging the points of each block into one vertex."""
        return len(self.chord_edges) + self.boundary_edges


@dataclass(frozen=True)
class CellDecomposition:
    cells: tuple[Cell, ...]

    def interior(self) -> list[Cell]:
        return [c for c in self.cells if not c.exterior]


def _faces(p: LinkPattern) -> list[list[int]]:
    # arc a joins points a and a+1 (cyclically); the face boundary walk is
    # arc a -> point a+1 -> chord -> point p(a+1) -> arc p(a+1)
    L = len(p)
    seen = [False] * (L + 1)
    faces = []
    for start in range(1, L + 1):
        if seen[start]:
            continue
        face = []
        a = start
        while not seen[a]:
            seen[a] = True
            face.append(a)
            a = p[a % L]
        faces.append(face)
    return faces


@lru_cache(maxsize=None)
def _cells(p: LinkPattern, ell: int, m: int) -> CellDecomposition:
    L = len(p)
    faces = _faces(p)
    face_of_arc = {}
    for idx, face in enumerate(faces):
        for a in face:
            face_of_arc[a] = idx
    chords = []
    boundary = []
    for face in faces:
        chords.append(tuple(sorted(
            (min(a % L + 1, p[a % L]), max(a % L + 1, p[a % L])) for a in face
        )))
        boundary.append(sum(1 for a in face if a % ell == 0))
    adj = [set() for _ in faces]
    for i, j in p.arches():
        f, g = face_of_arc[(i - 2) % L + 1], face_of_arc[(j - 2) % L + 1]
        adj[f].add(g)
        adj[g].add(f)
    dist = [-1] * len(faces)
    queue = deque()
    for idx, b in enumerate(boundary):
        if b:
            dist[idx] = 0
            queue.append(idx)
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if dist[g] < 0:
                dist[g] = dist[f] + 1
                queue.append(g)
    return CellDecomposition(tuple(
        Cell(chords[idx], boundary[idx], dist[idx]) for idx in range(len(faces))
    ))


def cells(p: LinkPattern, blocks: BlockStructure) -> CellDecomposition:
    """Faces of the chord diagram with blocks merged into single vertices.

    A face is exterior when it keeps a piece of circle between two different
    blocks; k is the number of chords crossed to reach an exterior face.
    """
    if len(p) != blocks.npoints or not is_block_restricted(p, blocks):
        raise DomainError("pattern is not block-restricted for these blocks")
    return _cells(LinkPattern(p), blocks.ell, blocks.m)


def is_admissible(p: LinkPattern, blocks: BlockStructure) -> bool:
    return all(c.l % 2 == 0 for c in cells(p, blocks).cells)


def enumerate_admissible(ell: int, m: int) -> list[LinkPattern]:
    blocks = BlockStructure(ell, m)
    return [p for p in enumerate_block(ell, m) if is_admissible(p, blocks)]


def admissible_count_formula(ell: int, m: int) -> int:
    return math.factorial((ell + 1) * m) // (math.factorial(ell * m + 1) * math.factorial(m))


def parity_residues(p: LinkPattern, blocks: BlockStructure) -> bool:
    """True iff r(i) + r(p(i)) = ell - 1 for every site, r(i) = (i-1) mod ell."""
    return all(
        blocks.residue(i) + blocks.residue(j) == blocks.ell - 1 for i, j in enumerate(p, 1)
    )


# symmetries -------------------------------------------------------------------

def rotate(p: LinkPattern, blocks: BlockStructure, times: int = 1) -> LinkPattern:
    """Shift every arch by ``times`` blocks: (rho p)(i) = p(i - ell) + ell mod 2n."""
    L = len(p)
    s = (blocks.ell * times) % L
    out = [0] * L
    for i, j in enumerate(p, 1):
        out[(i - 1 + s) % L] = (j - 1 + s) % L + 1
    return LinkPattern(out)


def reflect(p: LinkPattern) -> LinkPattern:
    """(s p)(i) = 2n + 1 - p(2n + 1 - i)."""
    L = len(p)
    return LinkPattern(L + 1 - p[L - i] for i in range(1, L + 1))


def zero_pattern(blocks: BlockStructure) -> LinkPattern:
    """Pattern fully connecting S_{2i-1} with S_{2i}."""
    ell = blocks.ell
    arches = []
    for i in range(blocks.m):
        lo = 2 * ell * i
        arches += [(lo + ell - t, lo + ell + 1 + t) for t in range(ell)]
    return LinkPattern.from_arches(blocks.n, arches)


def base_pattern(blocks: BlockStructure) -> LinkPattern:
    """The rainbow pattern delta(i) = 2n + 1 - i."""
    L = blocks.npoints
    return LinkPattern(L + 1 - i for i in range(1, L + 1))


def arches_between(p: LinkPattern, blocks: BlockStructure, i: int, j: int) -> int:
    """Number of arches joining S_i and S_j."""
    Si, Sj = set(blocks.block(i)), set(blocks.block(j))
    return sum(1 for a, b in p.arches() if (a in Si and b in Sj) or (a in Sj and b in Si))


def arches_within_range(p: LinkPattern, blocks: BlockStructure, i: int, j: int) -> int:
    """Arches with both ends in the cyclic range of blocks S_i, S_{i+1}, ..., S_j."""
    twom = 2 * blocks.m
    sites = set()
    b = i
    while True:
        sites.update(blocks.block(b))
        if (b - 1) % twom + 1 == (j - 1) % twom + 1:
            break
        b += 1
    return sum(1 for a, c in p.arches() if a in sites and c in sites)


# Lukasiewicz words ------------------------------------------------------------

def dyck_word(p: LinkPattern) -> list[int]:
    return [1 if i < j else -1 for i, j in enumerate(p, 1)]


def is_lukasiewicz(w, ell: int, m: int) -> bool:
    if len(w) != (ell + 1) * m or any(x not in (ell, -1) for x in w):
        return False
    s = 0
    for x in w[:-1]:
        s += x
        if s < 0:
            return False
    return s + w[-1] == 0


def enumerate_words(ell: int, m: int) -> list[tuple[int, ...]]:
    """All words of W_{ell,m} in lexicographic order (with ell sorted before -1)."""
    L = (ell + 1) * m
    out = []

    def rec(prefix, s, nl):
        if len(prefix) == L:
            if s == 0:
                out.append(tuple(prefix))
            return
        if nl < m:
            rec(prefix + [ell], s + ell, nl + 1)
        if s >= 1:
            rec(prefix + [-1], s - 1, nl)

    rec([], 0, 0)
    return out


def to_word(p: LinkPattern, blocks: BlockStructure) -> tuple[int, ...]:
    """Condense an admissible pattern into its Lukasiewicz word."""
    if not is_block_restricted(p, blocks) or not is_admissible(p, blocks):
        raise DomainError("to_word needs an admissible pattern")
    ell = blocks.ell
    w = dyck_word(p)
    flagged: set[int] = set()
    out: list[int] = []
    for b in range(2 * blocks.m):
        chunk = w[b * ell:(b + 1) * ell]
        k = chunk.count(-1)
        if chunk != [-1] * k + [1] * (ell - k):
            raise DomainError("block is not closers-then-openers")
        out += [-1] * k
        if k == ell:
            continue
        first = b * ell + k + 1
        if k == 0:
            out.append(ell)
            continue
        ups = set(range(first, (b + 1) * ell + 1))
        if ups <= flagged:
            continue
        if ups & flagged:
            raise DomainError("partially flagged block")
        out.append(ell)
        close = p[first - 1]
        target = set(range(close + 1, close + 1 + k))
        if any(w[t - 1] != 1 for t in target):
            raise DomainError("flag target is not a run of openers")
        flagged |= target
    return tuple(out)


def from_word(w, blocks: BlockStructure) -> LinkPattern:
    """Expand a Lukasiewicz word back into the admissible pattern."""
    ell = blocks.ell
    if not is_lukasiewicz(list(w), ell, blocks.m):
        raise DomainError("not a Lukasiewicz word of the right shape")
    # tokens: None marks a letter ell still to expand
    seq: list[int | None] = [None if x == ell else -1 for x in w]
    i = 0
    while i < len(seq):
        if seq[i] is not None:
            i += 1
            continue
        k = i % ell
        if k == 0:
            seq[i:i + 1] = [1] * ell
            i += ell
            continue
        seq[i:i + 1] = [1] * (ell - k)
        # locate the closer matching the opener at i
        s = 0
        j = i + 1
        while True:
            x = seq[j]
            s += ell if x is None else x
            if s < 0:
                break
            j += 1
        seq[j + 1:j + 1] = [1] * k
        i += ell - k
    dyck = seq
    if len(dyck) != blocks.npoints:
        raise DomainError("expansion has the wrong length")
    partner = [0] * len(dyck)
    stack = []
    for pos, x in enumerate(dyck, 1):
        if x == 1:
            stack.append(pos)
        else:
            a = stack.pop()
            partner[a - 1] = pos
            partner[pos - 1] = a
    return LinkPattern(partner)
