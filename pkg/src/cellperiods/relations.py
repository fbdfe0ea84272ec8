"""Reduction of zeta combinations by the stored double-shuffle relations.

Purely a display aid: the engine itself never substitutes relations.  The
relation span at each weight up to five is row-reduced over the
composition basis ordered depth-first, so reduction prefers to eliminate
high-depth values in favour of low-depth ones.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .mzv import MzvCombination, double_shuffle_relations

MAX_REDUCE_WEIGHT = 5


@lru_cache(maxsize=None)
def _echelon(weight):
    comps = sorted({c for rel in double_shuffle_relations(weight)
                    for c in rel.terms},
                   key=lambda c: (-len(c), c))
    index = {c: i for i, c in enumerate(comps)}
    rows = []
    for rel in double_shuffle_relations(weight):
        vec = [Fraction(0)] * len(comps)
        for c, v in rel.terms.items():
            vec[index[c]] = v
        for piv, row in rows:
            if vec[piv]:
                f = vec[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is not None:
            inv = 1 / vec[piv]
            rows.append((piv, [v * inv for v in vec]))
    # back-substitute to reduced echelon form
    for t in range(len(rows) - 1, -1, -1):
        piv, row = rows[t]
        for s in range(t):
            ps, rs = rows[s]
            if rs[piv]:
                f = rs[piv]
                rows[s] = (ps, [a - f * b for a, b in zip(rs, row)])
    return comps, rows


def reduce_by_double_shuffle(comb: MzvCombination) -> MzvCombination:
    by_weight = {}
    for comp, v in comb.terms.items():
        by_weight.setdefault(sum(comp), {})[comp] = v
    out = MzvCombination.zero()
    for w, terms in by_weight.items():
        part = MzvCombination(terms)
        if 2 <= w <= MAX_REDUCE_WEIGHT:
            comps, rows = _echelon(w)
            index = {c: i for i, c in enumerate(comps)}
            vec = [Fraction(0)] * len(comps)
            extra = {}
            for c, v in terms.items():
                if c in index:
                    vec[index[c]] = v
                else:
                    extra[c] = v
            for piv, row in rows:
                if vec[piv]:
                    f = vec[piv]
                    vec = [a - f * b for a, b in zip(vec, row)]
            part = MzvCombination(extra) + MzvCombination(
                {c: v for c, v in zip(comps, vec) if v})
        out = out + part
    return out
