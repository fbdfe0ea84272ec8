"""Degree-two checks for the dihedral braid relations.

Generators delta_{ij} are indexed by chords; t_{ab} symbols by arbitrary
pairs, with t expressed through delta by

    t_ij = d_{i,j-1} + d_{i-1,j} - d_{i-1,j-1} - d_ij,   d_ii = d_{i,i+1} = 0,

and inversely d_ij = sum of t_ab over i < a < b <= j.  All relations in
sight are commutators of such linear forms, so ideal membership in degree
two reduces to linear algebra over the rationals on the basis of ordered
chord pairs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .ngon import Chord, DihedralNGon, chords, crosses


def _delta(n, i, j):
    """The delta symbol as a chord, or None when it degenerates to zero."""
    i, j = (i - 1) % n + 1, (j - 1) % n + 1
    if i == j or (j - i) % n == 1 or (i - j) % n == 1:
        return None
    return Chord.of(i, j, n)


def t_from_delta(n, i, j):
    """t_{ij} as a map chord -> coefficient."""
    out = {}
    for c, s in ((_delta(n, i, j - 1), 1), (_delta(n, i - 1, j), 1),
                 (_delta(n, i - 1, j - 1), -1), (_delta(n, i, j), -1)):
        if c is not None:
            out[c] = out.get(c, 0) + s
    return {c: Fraction(v) for c, v in out.items() if v}


def delta_from_t(n, i, j):
    """delta_{ij} as a map pair (a,b) -> coefficient, a < b."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    out = {}
    for a in range(i + 1, j + 1):
        for b in range(a + 1, j + 1):
            out[(a, b)] = Fraction(1)
    return out


def _t_pairs(n):
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def delta_roundtrip_is_identity(n):
    """Substituting t_from_delta into delta_from_t returns delta_{ij}."""
    for c in chords(DihedralNGon(n)):
        acc = {}
        for (a, b), coeff in delta_from_t(n, c.i, c.j).items():
            for ch, s in t_from_delta(n, a, b).items():
                acc[ch] = acc.get(ch, Fraction(0)) + coeff * s
        acc = {ch: v for ch, v in acc.items() if v}
        if acc != {c: Fraction(1)}:
            return False
    return True


def t_column_sums_vanish(n):
    """sum_k t_{kl} = 0 identically after the delta substitution."""
    for l in range(1, n + 1):
        acc = {}
        for k in range(1, n + 1):
            if k == l:
                continue
            a, b = min(k, l), max(k, l)
            for ch, s in t_from_delta(n, a, b).items():
                acc[ch] = acc.get(ch, Fraction(0)) + s
        if any(v for v in acc.values()):
            return False
    return True


def _commutator_vector(form1, form2, basis_index):
    """[form1, form2] as a vector on ordered chord pairs."""
    vec = {}
    for c1, s1 in form1.items():
        for c2, s2 in form2.items():
            if c1 == c2:
                continue
            vec[(c1, c2)] = vec.get((c1, c2), Fraction(0)) + s1 * s2
            vec[(c2, c1)] = vec.get((c2, c1), Fraction(0)) - s1 * s2
    out = [Fraction(0)] * len(basis_index)
    for key, v in vec.items():
        if v:
            out[basis_index[key]] = v
    return out


class _RowSpace:
    """Row space over QQ with incremental reduced-echelon insertion."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # (pivot index, row)

    def reduce(self, vec):
        vec = vec[:]
        for piv, row in self.rows:
            if vec[piv]:
                f = vec[piv]
                for t in range(self.dim):
                    if row[t]:
                        vec[t] -= f * row[t]
        return vec

    def insert(self, vec):
        vec = self.reduce(vec)
        piv = next((t for t, v in enumerate(vec) if v), None)
        if piv is None:
            return False
        inv = 1 / vec[piv]
        vec = [v * inv for v in vec]
        self.rows.append((piv, vec))
        return True

    def contains(self, vec):
        return all(not v for v in self.reduce(vec))

    @property
    def rank(self):
        return len(self.rows)


def _pair_basis(n):
    cs = chords(DihedralNGon(n))
    pairs = [(a, b) for a in cs for b in cs if a != b]
    return {p: t for t, p in enumerate(pairs)}


def _dihedral_relation_span(n, basis_index):
    """Span of the dihedral relations in delta coordinates: commutators of
    the four-term delta combinations over all index pairs with four
    distinct entries (pairs t_{i,i+1} of adjacent labels included)."""
    space = _RowSpace(len(basis_index))
    for (i, j), (k, l) in itertools.combinations(_t_pairs(n), 2):
        if len({i, j, k, l}) != 4:
            continue
        space.insert(_commutator_vector(t_from_delta(n, i, j),
                                        t_from_delta(n, k, l), basis_index))
    return space


def _abstract_t_rank(n):
    """Rank of the distinct-index commutator span computed on primitive
    t-symbols modulo the column-sum identities, without using deltas."""
    pairs = _t_pairs(n)
    pidx = {p: t for t, p in enumerate(pairs)}
    npairs = len(pairs)
    dim = npairs * npairs

    def tensor(p, q):
        return pidx[p] * npairs + pidx[q]

    null = _RowSpace(dim)
    # (sum_k t_{kl}) tensor t_p and t_p tensor (sum_k t_{kl})
    for l in range(1, n + 1):
        col = [tuple(sorted((k, l))) for k in range(1, n + 1) if k != l]
        for p in pairs:
            vec = [Fraction(0)] * dim
            for q in col:
                vec[tensor(q, p)] += 1
            null.insert(vec)
            vec = [Fraction(0)] * dim
            for q in col:
                vec[tensor(p, q)] += 1
            null.insert(vec)
    nrank = null.rank
    space = _RowSpace(dim)
    for row in [r for _, r in null.rows]:
        space.insert(row[:])
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if len({i, j, k, l}) != 4:
            continue
        vec = [Fraction(0)] * dim
        vec[tensor((i, j), (k, l))] += 1
        vec[tensor((k, l), (i, j))] -= 1
        space.insert(vec)
    return space.rank - nrank


def relation_span_equivalence(n) -> bool:
    """The relation span computed on primitive t-symbols modulo the
    column-sum identities has the same dimension as its image under the
    delta substitution, i.e. the two presentations generate the same
    degree-two relation space."""
    if not 4 <= n <= 8:
        raise ValueError("supported for 4 <= n <= 8")
    basis_index = _pair_basis(n)
    b = _dihedral_relation_span(n, basis_index)
    return _abstract_t_rank(n) == b.rank


def dihedral_span(n) -> "_RowSpace":
    basis_index = _pair_basis(n)
    return _dihedral_relation_span(n, basis_index)


def in_dihedral_span(n, element) -> bool:
    """Membership of a chord-pair tensor given as {(chord, chord): coeff}."""
    basis_index = _pair_basis(n)
    span = _dihedral_relation_span(n, basis_index)
    vec = [Fraction(0)] * len(basis_index)
    for key, v in element.items():
        vec[basis_index[key]] += Fraction(v)
    return span.contains(vec)


def commutator_element(c1: Chord, c2: Chord):
    return {(c1, c2): Fraction(1), (c2, c1): Fraction(-1)}


def five_term_element(n=5):
    """[d13,d24] + [d24,d35] + [d35,d41] + [d41,d52] + [d52,d13]."""
    seq = [(1, 3), (2, 4), (3, 5), (4, 1), (5, 2)]
    out = {}
    for t in range(5):
        c1 = Chord.of(*seq[t], n)
        c2 = Chord.of(*seq[(t + 1) % 5], n)
        for key, v in commutator_element(c1, c2).items():
            out[key] = out.get(key, Fraction(0)) + v
    return {k: v for k, v in out.items() if v}


def noncrossing_commutators_in_span(n) -> bool:
    """[delta_ij, delta_kl] lies in the relation span for non-crossing
    chord pairs (sharing a vertex included)."""
    g = DihedralNGon(n)
    basis_index = _pair_basis(n)
    span = _dihedral_relation_span(n, basis_index)
    for c1, c2 in itertools.combinations(chords(g), 2):
        if crosses(c1, c2, g):
            continue
        vec = [Fraction(0)] * len(basis_index)
        for key, v in commutator_element(c1, c2).items():
            vec[basis_index[key]] += v
        if not span.contains(vec):
            return False
    return True


def crossing_commutator_in_span(n, c1: Chord, c2: Chord) -> bool:
    return in_dihedral_span(n, commutator_element(c1, c2))
