"""Multiple zeta values as words in {x0, x1}, exact combinations, numerics.

A word is a tuple of bits (0 for x0 = dlog t, 1 for x1 = dlog 1/(1-t)).
Admissible words start with x0 and end with x1 and correspond bijectively
to compositions (n_1,...,n_r) with n_r >= 2, reading blocks x0^{n-1} x1
from the left as n_r, n_{r-1}, ..., n_1.  The value is the nested sum over
0 < k_1 < ... < k_r of 1/(k_1^{n_1} ... k_r^{n_r}).

Numerical evaluation uses the Hoelder convolution at 1/2, which turns any
admissible word into a bilinear combination of power series with geometric
ratio 1/2, so 100-digit values cost a few hundred terms.  Shuffle
regularization kills the two letters x0, x1 and projects any word onto the
admissible span; no relations between admissible values are ever applied.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

import mpmath as mp

from .words import (comb_add, extract_leading, extract_trailing, shuffle,
                    shuffle_combinations, stuffle)

X0, X1 = 0, 1
PRECISION_CAP = 100


class PrecisionError(Exception):
    """Requested precision not attainable under the configured budget."""


def is_admissible(word):
    word = tuple(word)
    return bool(word) and word[0] == X0 and word[-1] == X1


def word_to_composition(word):
    """Blocks of an admissible word, returned as (n_1,...,n_r)."""
    word = tuple(word)
    if not is_admissible(word):
        raise ValueError("word %s is not admissible" % (word,))
    ns = []
    run = 0
    for letter in word:
        if letter == X0:
            run += 1
        else:
            ns.append(run + 1)
            run = 0
    ns.reverse()
    return tuple(ns)


def composition_to_word(ns):
    ns = tuple(ns)
    if not ns or any(n < 1 for n in ns) or ns[-1] < 2:
        raise ValueError("composition %s is not admissible" % (ns,))
    word = []
    for n in reversed(ns):
        word.extend([X0] * (n - 1))
        word.append(X1)
    return tuple(word)


class MzvCombination:
    """Exact rational combination of admissible zeta values plus a constant.

    Keys are compositions; the empty composition () holds the rational
    constant term.  Instances are immutable in spirit: mutating helpers are
    module-private.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        for comp, c in (terms or {}).items():
            comp = tuple(comp)
            c = Fraction(c)
            if comp and (any(n < 1 for n in comp) or comp[-1] < 2):
                raise ValueError("non-admissible composition %s" % (comp,))
            if c:
                cleaned[comp] = cleaned.get(comp, Fraction(0)) + c
        self.terms = {k: v for k, v in cleaned.items() if v}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c)})

    @classmethod
    def zeta(cls, *ns):
        return cls({tuple(ns): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def weight(self):
        return max((sum(c) for c in self.terms), default=0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MzvCombination.const(other)
        return MzvCombination(comb_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MzvCombination({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MzvCombination.const(other)
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return MzvCombination({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        """Product, expanded by the stuffle so the result stays admissible."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for c1, v1 in self.terms.items():
            for c2, v2 in other.terms.items():
                if not c1 or not c2:
                    prod = {c1 or c2: Fraction(1)}
                else:
                    prod = stuffle(c1, c2)
                for comp, mult in prod.items():
                    out[comp] = out.get(comp, Fraction(0)) + v1 * v2 * mult
        return MzvCombination(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, MzvCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for comp in sorted(self.terms, key=lambda c: (sum(c), len(c), c)):
            coeff = self.terms[comp]
            if comp == ():
                body = str(abs(coeff))
            else:
                z = "z(%s)" % ",".join(str(n) for n in comp)
                a = abs(coeff)
                body = z if a == 1 else "%s*%s" % (a, z)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms = {}
        for sign, body in _TERM_RE.findall(text):
            s = -1 if sign == "-" else 1
            m = re.fullmatch(r"(?:([0-9]+(?:/[0-9]+)?)\*)?z\(([0-9,]+)\)", body)
            if m:
                coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
                comp = tuple(int(t) for t in m.group(2).split(","))
                terms[comp] = terms.get(comp, Fraction(0)) + s * coeff
            else:
                terms[()] = terms.get((), Fraction(0)) + s * Fraction(body)
        return cls(terms)

    def to_structured(self):
        return {"terms": [{"coeff": str(c), "word": list(comp)}
                          for comp, c in sorted(self.terms.items())]}

    def to_json(self):
        return json.dumps(self.to_structured())

    @classmethod
    def from_structured(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls({tuple(t["word"]): Fraction(t["coeff"])
                    for t in data["terms"]})

    def __str__(self):
        return self.to_text()

    __repr__ = __str__


_TERM_RE = re.compile(r"\s*([+-]?)\s*([0-9/]*\*?z\([0-9,]+\)|[0-9]+(?:/[0-9]+)?)")


def shuffle_regularize(word):
    """Project a {x0,x1} word onto admissible words, killing x0 and x1.

    First extract trailing x0 powers, then leading x1 powers; what survives
    both without a logarithm factor is admissible (or empty) and is the
    regularized value.
    """
    out = {}
    for k0, d0 in extract_trailing(tuple(word), X0).items():
        if k0 != 0:
            continue
        for v, c in d0.items():
            for k1, d1 in extract_leading(v, X1).items():
                if k1 != 0:
                    continue
                for u, cu in d1.items():
                    out[u] = out.get(u, Fraction(0)) + c * cu
    terms = {}
    for u, c in out.items():
        if not c:
            continue
        comp = () if u == () else word_to_composition(u)
        terms[comp] = terms.get(comp, Fraction(0)) + c
    return MzvCombination(terms)


def shuffle_regularize_combination(comb):
    total = MzvCombination.zero()
    for w, c in comb.items():
        total = total + shuffle_regularize(w).scale(c)
    return total


def zeta_of_word_combination(comb):
    """Exact map word -> zeta for combinations of admissible words."""
    terms = {}
    for w, c in comb.items():
        comp = word_to_composition(w)
        terms[comp] = terms.get(comp, Fraction(0)) + c
    return MzvCombination(terms)


# ---------------------------------------------------------------------------
# numerics


_LI_CACHE = {}
_SERIES_BUDGET = 200000


def _li_half(word, wp):
    """Li_w(1/2) for a word ending in x1, by the iterated nested sum."""
    key = (word, wp)
    if key in _LI_CACHE:
        return _LI_CACHE[key]
    ns = word_to_composition_loose(word)
    r = len(ns)
    with mp.workprec(wp):
        half = mp.mpf(1) / 2
        # S[j] accumulates the depth-(j+1) inner partial sum A_{j+1}(m)
        S = [mp.mpf(0)] * max(r - 1, 0)
        total = mp.mpf(0)
        eps = mp.mpf(2) ** (-wp - 5)
        q = mp.mpf(1)
        m = 0
        while True:
            m += 1
            q = q * half
            term = (S[r - 2] if r > 1 else mp.mpf(1)) * q / mp.mpf(m) ** ns[-1]
            total += term
            for j in range(r - 2, 0, -1):
                S[j] += S[j - 1] / mp.mpf(m) ** ns[j]
            if r > 1:
                S[0] += mp.mpf(1) / mp.mpf(m) ** ns[0]
            if m > 40 and abs(term) < eps:
                break
            if m > _SERIES_BUDGET:
                raise PrecisionError("series budget exhausted at %d terms" % m)
        result = total
    _LI_CACHE[key] = result
    return result


def word_to_composition_loose(word):
    """Blocks of any word ending in x1 (leading x1 blocks give parts 1)."""
    word = tuple(word)
    if not word or word[-1] != X1:
        raise ValueError("word must end in x1")
    ns = []
    run = 0
    for letter in word:
        if letter == X0:
            run += 1
        else:
            ns.append(run + 1)
            run = 0
    ns.reverse()
    return tuple(ns)


def _dual_prefix(u):
    """Reverse the word and swap the letters (path reversal at 1/2)."""
    return tuple(1 - a for a in reversed(u))


def zeta_numeric(comp, digits=30):
    """zeta(n_1,...,n_r) by Hoelder convolution; error within 10^-digits."""
    if digits > PRECISION_CAP:
        raise PrecisionError("precision cap is %d digits" % PRECISION_CAP)
    word = composition_to_word(comp)
    wp = int((digits + 12) * 3.33) + 10
    with mp.workprec(wp):
        total = mp.mpf(0)
        for cut in range(len(word) + 1):
            u, v = word[:cut], word[cut:]
            fu = _li_half(_dual_prefix(u), wp) if u else mp.mpf(1)
            fv = _li_half(v, wp) if v else mp.mpf(1)
            total += fu * fv
        return +total


def eval_numeric(comb: MzvCombination, digits=30):
    """Evaluate an exact combination to ``digits`` digits (mpf result)."""
    if digits > PRECISION_CAP:
        raise PrecisionError("precision cap is %d digits" % PRECISION_CAP)
    wp = int((digits + 12) * 3.33) + 10
    with mp.workprec(wp):
        total = mp.mpf(0)
        for comp, c in comb.terms.items():
            val = mp.mpf(1) if comp == () else zeta_numeric(comp, digits + 6)
            total += mp.mpf(c.numerator) / c.denominator * val
        return +total


def zeta_euler_maclaurin(n, digits=30):
    """Depth-one zeta by direct summation with Euler-Maclaurin tail.

    Independent of the Hoelder route; used to cross-check the evaluator.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    wp = int((digits + 10) * 3.33) + 10
    with mp.workprec(wp):
        N = max(20, digits)
        total = mp.fsum(mp.mpf(1) / mp.mpf(k) ** n for k in range(1, N))
        total += mp.mpf(N) ** (1 - n) / (n - 1) + mp.mpf(N) ** (-n) / 2
        # correction terms B_2j/(2j)! * (n)(n+1)...(n+2j-2) * N^(-n-2j+1)
        rising = mp.mpf(n)
        fact = mp.mpf(2)
        power = mp.mpf(N) ** (-n - 1)
        j = 1
        while True:
            term = mp.bernoulli(2 * j) / fact * rising * power
            total += term
            if abs(term) < mp.mpf(2) ** (-wp):
                break
            j += 1
            rising *= (n + 2 * j - 3) * (n + 2 * j - 2)
            fact *= (2 * j - 1) * (2 * j)
            power /= N * N
            if j > 200:
                break
        return +total


def numerically_zero(comb: MzvCombination, digits=20):
    return abs(eval_numeric(comb, digits)) < mp.mpf(10) ** (-digits)


def admissible_words_of_weight(weight):
    out = []
    for bits in range(2 ** weight):
        w = tuple((bits >> t) & 1 for t in range(weight))
        if is_admissible(w):
            out.append(w)
    return sorted(out)


def double_shuffle_relations(weight):
    """All stuffle-minus-shuffle relations from products at a given weight.

    For every unordered pair of admissible words with weights summing to
    the target, the shuffle and stuffle expansions of the product give two
    expressions for the same number; their difference is returned.
    """
    if not 2 <= weight <= 8:
        raise ValueError("weight must lie in 2..8")
    relations = []
    seen = set()
    for w1 in range(2, weight - 1):
        w2 = weight - w1
        if w2 < 2:
            continue
        for u in admissible_words_of_weight(w1):
            for v in admissible_words_of_weight(w2):
                key = frozenset([(u, v), (v, u)])
                if key in seen:
                    continue
                seen.add(key)
                sh = zeta_of_word_combination(shuffle(u, v))
                st = MzvCombination(
                    stuffle(word_to_composition(u), word_to_composition(v)))
                rel = sh - st
                if not rel.is_zero():
                    relations.append(rel)
    return relations
