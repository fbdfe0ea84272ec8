"""Free word algebras: shuffle and quasi-shuffle products, truncation.

Words are tuples of hashable letters; linear combinations are dicts mapping
words to Fractions with zero coefficients pruned.  The shuffle product is
the recursive interleaving sum; compositions (tuples of positive integers)
carry the quasi-shuffle (stuffle) product.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def combination(pairs=None):
    out = {}
    for w, c in (pairs or {}).items() if isinstance(pairs, dict) else (pairs or []):
        c = Fraction(c)
        if c:
            out[w] = out.get(w, Fraction(0)) + c
            if not out[w]:
                del out[w]
    return out


def comb_add(a, b, factor=1):
    out = dict(a)
    f = Fraction(factor)
    for w, c in b.items():
        nc = out.get(w, Fraction(0)) + f * c
        if nc:
            out[w] = nc
        else:
            out.pop(w, None)
    return out


def comb_scale(a, factor):
    f = Fraction(factor)
    if not f:
        return {}
    return {w: f * c for w, c in a.items()}


@lru_cache(maxsize=None)
def _shuffle_words(u, v):
    if not u:
        return {v: Fraction(1)}
    if not v:
        return {u: Fraction(1)}
    out = {}
    for w, c in _shuffle_words(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, Fraction(0)) + c
    for w, c in _shuffle_words(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, Fraction(0)) + c
    return out


def shuffle(u, v):
    """Shuffle product of two words (tuples); returns a combination."""
    return dict(_shuffle_words(tuple(u), tuple(v)))


def shuffle_combinations(a, b):
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in _shuffle_words(u, v).items():
                nc = out.get(w, Fraction(0)) + cu * cv * c
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
    return out


def shuffle_power(w, k):
    """k-fold shuffle power of a single word."""
    out = {(): Fraction(1)}
    for _ in range(k):
        out = shuffle_combinations(out, {tuple(w): Fraction(1)})
    return out


def truncate_left(letter, w):
    """Remove a matching leading letter, else None (the zero map).

    This is the shuffle derivation dual to prepending the letter.
    """
    w = tuple(w)
    if w and w[0] == letter:
        return w[1:]
    return None


def truncate_left_combination(letter, a):
    out = {}
    for w, c in a.items():
        t = truncate_left(letter, w)
        if t is not None:
            nc = out.get(t, Fraction(0)) + c
            if nc:
                out[t] = nc
            else:
                out.pop(t, None)
    return out


def deconcatenate(w):
    """Deconcatenation coproduct: list of (prefix, suffix) pairs."""
    w = tuple(w)
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


@lru_cache(maxsize=None)
def _leading_decomposition(w, letter):
    """Write w as sum_k (1/k!) letter^(sh k) sh v_k with v_k not starting
    with the letter.  Returns a tuple of (k, word, coeff) triples.

    The decomposition drives both endpoint regularizations: the v_0 part is
    the finite piece and k counts powers of the divergent logarithm.
    """
    w = tuple(w)
    if not w or w[0] != letter:
        return ((0, w, Fraction(1)),)
    j = 0
    while j < len(w) and w[j] == letter:
        j += 1
    u = w[j:]
    # letter^(sh j) sh u  =  j! * w + (words with fewer leading letters)
    expansion = shuffle_power((letter,), j)
    expansion = shuffle_combinations(expansion, {u: Fraction(1)})
    fact = Fraction(1)
    for t in range(1, j + 1):
        fact *= t
    out = {}

    def add(k, word, coeff):
        key = (k, word)
        out[key] = out.get(key, Fraction(0)) + coeff

    add(j, u, Fraction(1) / fact)
    for word, c in expansion.items():
        if word == w:
            c = c - fact
        if not c:
            continue
        for k, v, cv in _leading_decomposition(word, letter):
            add(k, v, -cv * c / fact)
    return tuple((k, word, c) for (k, word), c in out.items() if c)


def extract_leading(w, letter):
    """Group the leading-letter decomposition by the power k."""
    out = {}
    for k, v, c in _leading_decomposition(tuple(w), letter):
        out.setdefault(k, {})
        out[k][v] = out[k].get(v, Fraction(0)) + c
    return {k: {v: c for v, c in d.items() if c} for k, d in out.items()}


def extract_trailing(w, letter):
    """Same decomposition on reversed words: trailing-letter powers."""
    rev = extract_leading(tuple(reversed(w)), letter)
    return {k: {tuple(reversed(v)): c for v, c in d.items()}
            for k, d in rev.items()}


def stuffle(u, v):
    """Quasi-shuffle product of two compositions.

    (a,u) * (b,v) = (a, u*(b,v)) + (b, (a,u)*v) + (a+b, u*v).
    """
    u, v = tuple(u), tuple(v)
    if any(p < 1 for p in u + v):
        raise ValueError("composition parts must be positive")
    return dict(_stuffle(u, v))


@lru_cache(maxsize=None)
def _stuffle(u, v):
    if not u:
        return {v: Fraction(1)}
    if not v:
        return {u: Fraction(1)}
    out = {}

    def add(first, tail_comb):
        for w, c in tail_comb.items():
            key = (first,) + w
            out[key] = out.get(key, Fraction(0)) + c

    add(u[0], _stuffle(u[1:], v))
    add(v[0], _stuffle(u, v[1:]))
    add(u[0] + v[0], _stuffle(u[1:], v[1:]))
    return out


def weight(composition):
    return sum(composition)
