"""Combinatorics of the n-gon with dihedral structure.

Edges are labelled 1..n cyclically and vertex (i) sits between edges i and
i+1.  A chord {i,j} joins two non-adjacent vertices; cutting along it
splits the edge set into two contiguous blocks.  These objects index the
dihedral coordinates, the faces of the associahedron, and the boundary
divisors used everywhere else in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


def _mod(i, n):
    return (i - 1) % n + 1


@dataclass(frozen=True)
class DihedralNGon:
    """The n-gon carrying the standard dihedral structure."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("need n >= 4, got %d" % self.n)

    @property
    def ell(self):
        return self.n - 3

    def vertices(self):
        return range(1, self.n + 1)

    def rotations_and_reflections(self):
        """The 2n maps of the dihedral group as vertex permutations."""
        n = self.n
        maps = []
        for s in range(n):
            maps.append({i: _mod(i + s, n) for i in self.vertices()})
        for s in range(n):
            maps.append({i: _mod(s - i, n) for i in self.vertices()})
        return maps


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair {i,j} of non-adjacent vertices, stored with i < j."""

    i: int
    j: int

    @classmethod
    def of(cls, i, j, n):
        i, j = _mod(i, n), _mod(j, n)
        if i > j:
            i, j = j, i
        c = cls(i, j)
        if not c.is_valid(n):
            raise ValueError("{%d,%d} is not a chord of the %d-gon" % (i, j, n))
        return c

    def is_valid(self, n):
        i, j = self.i, self.j
        return 1 <= i < j <= n and j - i >= 2 and not (i == 1 and j == n)

    def __str__(self):
        return "{%d,%d}" % (self.i, self.j)


def chords(g: DihedralNGon):
    """All n(n-3)/2 chords in canonical (lexicographic) order."""
    n = g.n
    out = []
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            if i == 1 and j == n:
                continue
            out.append(Chord(i, j))
    return out


def crosses(a: Chord, b: Chord, g: DihedralNGon) -> bool:
    """True iff the chords cross in the interior of the polygon."""
    if a == b:
        return False
    i, j = a.i, a.j

    def side(v):
        return 0 if i < v < j else 1

    if b.i in (i, j) or b.j in (i, j):
        return False
    return side(b.i) != side(b.j)


def crossing_set(a: Chord, g: DihedralNGon):
    """All chords crossing ``a``; together with {a} they cross completely."""
    return [b for b in chords(g) if crosses(a, b, g)]


def is_noncrossing(chordset, g) -> bool:
    return all(not crosses(a, b, g)
               for a, b in itertools.combinations(chordset, 2))


def enumerate_partial_triangulations(g: DihedralNGon, k: int):
    """All sets of k pairwise non-crossing chords, lexicographically ordered.

    For k = n-3 these are the full triangulations (associahedron vertices).
    """
    if not 1 <= k <= g.ell:
        raise ValueError("k must lie in 1..%d" % g.ell)
    all_chords = chords(g)
    out = []

    def extend(start, chosen):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for idx in range(start, len(all_chords)):
            c = all_chords[idx]
            if all(not crosses(c, d, g) for d in chosen):
                chosen.append(c)
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


def cut_along_chord(g: DihedralNGon, a: Chord):
    """Edge labels of the two sub-polygons obtained by cutting along ``a``.

    Each piece consists of the original edges on one side plus the new edge
    'e' given by the chord itself; sizes add up to n + 2.
    """
    n = g.n
    side1 = [_mod(v, n) for v in range(a.i + 1, a.j + 1)]
    side2 = [_mod(v, n) for v in range(a.j + 1, a.i + n + 1)]
    return tuple(side1) + ('e',), tuple(side2) + ('e',)


@dataclass(frozen=True)
class StablePartition:
    """Two-block partition of {1..n} with both blocks of size >= 2."""

    block1: frozenset
    block2: frozenset

    @classmethod
    def of(cls, block1, n):
        b1 = frozenset(block1)
        b2 = frozenset(range(1, n + 1)) - b1
        if len(b1) < 2 or len(b2) < 2:
            raise ValueError("both blocks need at least two elements")
        # canonical orientation: block containing 1 goes first
        if 1 in b2:
            b1, b2 = b2, b1
        return cls(b1, b2)

    @property
    def n(self):
        return len(self.block1) + len(self.block2)

    def indicator(self, i, j):
        """1 if i,j lie in a common block, else 0."""
        s = {i, j}
        return int(s <= self.block1) + int(s <= self.block2)

    def __str__(self):
        return "%s|%s" % (sorted(self.block1), sorted(self.block2))


def stable_partitions(n):
    """All 2^(n-1) - n - 1 stable partitions of {1..n}."""
    rest = list(range(2, n + 1))
    out = []
    for r in range(1, n - 2):
        for extra in itertools.combinations(rest, r):
            p = StablePartition.of({1} | set(extra), n)
            if len(p.block2) >= 2:
                out.append(p)
    return out


def stable_partition_of_chord(g: DihedralNGon, a: Chord) -> StablePartition:
    """The edge partition cut out by a chord: {i+1..j} against {j+1..i}."""
    n = g.n
    block = frozenset(_mod(v, n) for v in range(a.i + 1, a.j + 1))
    return StablePartition.of(block, n)


def chord_of_stable_partition(p: StablePartition):
    """Inverse of the above when a block is contiguous; None otherwise."""
    n = p.n
    for block in (p.block1, p.block2):
        m = len(block)
        for start in block:
            if all(_mod(start + t, n) in block for t in range(m)):
                i = _mod(start - 1, n)
                j = _mod(start + m - 1, n)
                try:
                    return Chord.of(i, j, n)
                except ValueError:
                    return None
    return None


def _gaps(T, n):
    """Vertices of the contracted |T|-gon as blocks of original vertices.

    T is the retained edge set in dihedral order; the vertex between
    consecutive retained edges t and t' collects original vertices t..t'-1.
    """
    T = sorted(T)
    out = []
    for idx, t in enumerate(T):
        t_next = T[(idx + 1) % len(T)]
        block = []
        v = t
        while v != t_next:
            block.append(v)
            v = _mod(v + 1, n)
        out.append(tuple(block))
    return out


def forgetful_pullback(g: DihedralNGon, T, c: Chord):
    """Preimage in the n-gon of a chord of the contracted T-gon.

    ``T`` is a subset of edges of size >= 4 and ``c`` a chord of the T-gon
    labelled by positions 1..|T| in the induced dihedral order.  Returns
    the chords of g whose contraction is c.
    """
    T = sorted(set(T))
    if len(T) < 4:
        raise ValueError("need |T| >= 4")
    small = DihedralNGon(len(T))
    if not c.is_valid(small.n):
        raise ValueError("%s is not a chord of the %d-gon" % (c, small.n))
    gaps = _gaps(T, g.n)
    out = []
    for p in gaps[c.i - 1]:
        for q in gaps[c.j - 1]:
            out.append(Chord.of(p, q, g.n))
    return sorted(out)


def contract_chord(g: DihedralNGon, T, a: Chord):
    """Image of an n-gon chord in the T-gon; None if it degenerates."""
    T = sorted(set(T))
    gaps = _gaps(T, g.n)
    pos = {}
    for idx, block in enumerate(gaps):
        for v in block:
            pos[v] = idx + 1
    pi, pj = pos[a.i], pos[a.j]
    if pi == pj:
        return None
    try:
        return Chord.of(pi, pj, len(T))
    except ValueError:
        return None


def apply_symmetry(sigma, c: Chord, n) -> Chord:
    return Chord.of(sigma[c.i], sigma[c.j], n)


@lru_cache(maxsize=None)
def catalan(m):
    if m <= 1:
        return 1
    return catalan(m - 1) * 2 * (2 * m - 1) // (m + 1)
