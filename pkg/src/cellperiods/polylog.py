"""The canonical polylogarithm algebra on the cubical coordinate cube.

An expression is a sum of terms

    coeff(x) * scalar * L_{w_1}(x_1) * L_{w_2}(x_2) * ... * L_{w_l}(x_l)

where coeff is a CubicalRational, scalar an exact zeta combination, and
w_k a word over the slot-k alphabet: letter 0 stands for dlog x_k and
letter i (1 <= i <= k) for dlog(1 - x_i...x_k).  L_w is the iterated
integral in x_k from 0 with its leading letter outermost, so d/dx_k strips
the first letter; all regularized constants vanish at the origin, which
makes the representation unique.

The three pillars are:

* ``primitive_in_slot`` -- partial fractions in x_k; simple poles prepend a
  letter, higher poles integrate by parts, polynomials integrate termwise,
  always normalising to value zero at x_k = 0;
* ``diff`` -- the slot-k letter strips off, while slots j > k are handled
  by differentiating under the integral sign: differentiate the first-letter
  decomposition, recurse, and integrate back in x_j with zero constant;
* ``restrict_last_to_one`` -- the regularized limit at x_l = 1.  Leading
  letters dlog(1-x_l) are the only source of divergence; their coefficient
  must restrict to zero.  Words in the remaining letters either substitute
  directly (1-x_i..x_l -> 1-x_i..x_{l-1}), reduce to zeta values when only
  the singularities 0,1 remain, or are rebuilt from their derivative in the
  new last variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import mzv as mzvmod
from .mzv import MzvCombination
from .rational import (CubicalRational, Poly, atom_g, atom_x,
                       partial_fractions, _invert_unit)
from .words import extract_leading, extract_trailing, shuffle


class PoleRequiredError(Exception):
    """A primitive would need a pure log power: the input diverges."""


class DivergentRestrictionError(Exception):
    """Log-divergent parts at a face failed to cancel."""


class LogDivergenceError(Exception):
    """A pure log power survives a regularized limit with nonzero weight."""


LOG_X = 0


@dataclass(frozen=True)
class FiberLetter:
    """Public face of a slot letter: dlog x_k or dlog(1 - x_i...x_k)."""

    slot: int
    index: int  # 0 for dlog x_k, else the start i of the atom

    @classmethod
    def log_x(cls, slot):
        return cls(slot, LOG_X)

    @classmethod
    def log_one_minus(cls, i, slot):
        if not 1 <= i <= slot:
            raise ValueError("need 1 <= i <= slot")
        return cls(slot, i)

    def __str__(self):
        if self.index == LOG_X:
            return "dlog x%d" % self.slot
        if self.index == self.slot:
            return "dlog(1-x%d)" % self.slot
        return "dlog(1-x%d..x%d)" % (self.index, self.slot)


def _letter_coeff(ell, k, letter) -> CubicalRational:
    """The rational function f with dL_{letter w} = f L_w dx_k."""
    if letter == LOG_X:
        return CubicalRational(ell, Poly.const(ell, 1), {atom_x(k): 1},
                               normalize=False)
    i = letter
    mono = tuple(1 if i - 1 <= t <= k - 2 else 0 for t in range(ell))
    return CubicalRational(ell, Poly(ell, {mono: Fraction(-1)}),
                           {atom_g(i, k): 1}, normalize=False)


@dataclass(frozen=True)
class PolylogTerm:
    coeff: CubicalRational
    words: tuple  # one word (tuple of ints) per slot
    scalar: MzvCombination

    def word_weight(self):
        return sum(len(w) for w in self.words)

    def weight(self):
        return self.word_weight() + self.scalar.weight()


class PolylogExpr:
    """Normalized sum of PolylogTerms over a fixed number of slots."""

    __slots__ = ("nslots", "terms")

    def __init__(self, nslots, terms=()):
        self.nslots = nslots
        merged = {}
        for t in terms:
            if t.coeff.is_zero() or t.scalar.is_zero():
                continue
            if len(t.words) != nslots:
                raise ValueError("term has %d slots, expression has %d"
                                 % (len(t.words), nslots))
            key = (t.words, t.scalar)
            if key in merged:
                merged[key] = merged[key] + t.coeff
            else:
                merged[key] = t.coeff
        self.terms = tuple(PolylogTerm(c, w, s)
                           for (w, s), c in merged.items() if not c.is_zero())

    @classmethod
    def zero(cls, nslots):
        return cls(nslots, ())

    @classmethod
    def from_rational(cls, coeff: CubicalRational):
        ell = coeff.nvars
        return cls(ell, (PolylogTerm(coeff, ((),) * ell, MzvCombination.const(1)),))

    @classmethod
    def constant(cls, nslots, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = MzvCombination.const(scalar)
        return cls(nslots, (PolylogTerm(CubicalRational.const(nslots, 1),
                                        ((),) * nslots, scalar),))

    @classmethod
    def single_word(cls, nslots, slot, word, coeff=None, scalar=None):
        words = [()] * nslots
        words[slot - 1] = tuple(word)
        return cls(nslots, (PolylogTerm(
            coeff if coeff is not None else CubicalRational.const(nslots, 1),
            tuple(words),
            scalar if scalar is not None else MzvCombination.const(1)),))

    def is_zero(self):
        return not self.terms

    def word_weight(self):
        return max((t.word_weight() for t in self.terms), default=0)

    def weight(self):
        return max((t.weight() for t in self.terms), default=0)

    def __add__(self, other):
        if self.nslots != other.nslots:
            raise ValueError("slot mismatch")
        return PolylogExpr(self.nslots, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = CubicalRational.const(self.nslots, Fraction(c))
        return PolylogExpr(self.nslots, tuple(
            PolylogTerm(t.coeff * c, t.words, t.scalar) for t in self.terms))

    def scale_scalar(self, z: MzvCombination):
        return PolylogExpr(self.nslots, tuple(
            PolylogTerm(t.coeff, t.words, t.scalar * z) for t in self.terms))

    def map_terms(self, fn):
        out = []
        for t in self.terms:
            out.extend(fn(t))
        return PolylogExpr(self.nslots, out)

    def to_text(self):
        if not self.terms:
            return "0"
        lines = []
        for t in sorted(self.terms, key=lambda t: (t.word_weight(), str(t.words))):
            ws = " ".join("[%s]" % ",".join(str(a) for a in w) for w in t.words)
            s = "" if t.scalar == MzvCombination.const(1) else " * (%s)" % t.scalar
            lines.append("(%s)%s * %s" % (t.coeff, s, ws))
        return "\n".join(lines)

    def __repr__(self):
        return "PolylogExpr(%d slots, %d terms)" % (self.nslots, len(self.terms))


def multiply(e1: PolylogExpr, e2: PolylogExpr) -> PolylogExpr:
    """Product of realizations: coefficients multiply, slots shuffle."""
    if e1.nslots != e2.nslots:
        raise ValueError("slot mismatch")
    ell = e1.nslots
    out = []
    for t1 in e1.terms:
        for t2 in e2.terms:
            coeff = t1.coeff * t2.coeff
            scalar = t1.scalar * t2.scalar
            combos = [(tuple(), Fraction(1))]
            for s in range(ell):
                sh = shuffle(t1.words[s], t2.words[s])
                combos = [(prev + (w,), c * cw)
                          for prev, c in combos for w, cw in sh.items()]
            for words, c in combos:
                out.append(PolylogTerm(coeff * c, words, scalar))
    return PolylogExpr(ell, out)


# ---------------------------------------------------------------------------
# primitives


def primitive_in_slot(e: PolylogExpr, k: int) -> PolylogExpr:
    """Primitive with respect to x_k, regularized to vanish at x_k = 0.

    Every other slot must be a spectator: words in slots above k may not
    contain letters whose atom involves x_k.
    """
    ell = e.nslots
    out = []
    divergent = {}
    # tasks: (rational coeff, slot-k word, full spectator words, scalar)
    tasks = []
    for t in e.terms:
        for j in range(k, ell):
            if any(LOG_X < a <= k for a in t.words[j]):
                raise ValueError("slot %d word involves x_%d" % (j + 1, k))
        tasks.append((t.coeff, t.words[k - 1], t.words, t.scalar))

    def emit(coeff, word, words, scalar):
        new_words = words[:k - 1] + (tuple(word),) + words[k:]
        out.append(PolylogTerm(coeff, new_words, scalar))

    while tasks:
        coeff, word, words, scalar = tasks.pop()
        poles, polys = partial_fractions(coeff, k)
        for atom, m, R in poles:
            if m == 1:
                if atom == atom_x(k):
                    if all(a == LOG_X for a in word):
                        key = (word, words, scalar)
                        acc = divergent.get(key, CubicalRational.const(ell, 0))
                        divergent[key] = acc + R
                        continue
                    emit(R, (LOG_X,) + word, words, scalar)
                else:
                    i = atom[1]
                    inv_mu = _invert_unit(ell, Poly(ell, {
                        tuple(1 if i - 1 <= t <= k - 2 else 0
                              for t in range(ell)): Fraction(1)}))
                    emit(R * inv_mu * Fraction(-1), (i,) + word, words, scalar)
            else:
                ct, dt = _atom_linear(ell, atom, k)
                inv_d = _invert_unit(ell, dt)
                scale = inv_d * Fraction(-1, m - 1)
                boundary = R * scale
                boundary = boundary.div_atom(atom, m - 1)
                if not word:
                    if atom == atom_x(k):
                        key = ((), words, scalar)
                        acc = divergent.get(key, CubicalRational.const(ell, 0))
                        divergent[key] = acc + R
                        continue
                    # constant: subtract value at x_k = 0 where the atom is 1
                    emit(boundary, (), words, scalar)
                    emit(R * scale * Fraction(-1), (), words, scalar)
                else:
                    emit(boundary, word, words, scalar)
                    b = word[0]
                    fb = _letter_coeff(ell, k, b)
                    back = R * scale * Fraction(-1) * fb
                    tasks.append((back.div_atom(atom, m - 1), word[1:], words, scalar))
        for deg, R in polys:
            if not word:
                mono = tuple(deg + 1 if t == k - 1 else 0 for t in range(ell))
                emit(R * CubicalRational(ell, Poly(ell, {mono: Fraction(1, deg + 1)})),
                     (), words, scalar)
            else:
                mono = tuple(deg + 1 if t == k - 1 else 0 for t in range(ell))
                xpow = CubicalRational(ell, Poly(ell, {mono: Fraction(1, deg + 1)}))
                emit(R * xpow, word, words, scalar)
                b = word[0]
                fb = _letter_coeff(ell, k, b)
                tasks.append((R * xpow * Fraction(-1) * fb, word[1:], words, scalar))
    for (word, words, scalar), R in divergent.items():
        if not R.is_zero():
            raise PoleRequiredError(
                "pole 1/x%d against a pure log word: divergent input" % k)
    return PolylogExpr(ell, out)


def _atom_linear(ell, atom, k):
    if atom == atom_x(k):
        return Poly.const(ell, 0), Poly.const(ell, 1)
    i = atom[1]
    mono = tuple(1 if i - 1 <= t <= k - 2 else 0 for t in range(ell))
    return Poly.const(ell, 1), Poly(ell, {mono: Fraction(-1)})


# ---------------------------------------------------------------------------
# differentiation


_INTEGRATE_BACK_CACHE = {}


def _integrate_back(ell, word, j, k):
    """d/dx_k of the slot-j word function, as [(coeff, slot-j word)].

    Differentiate the first-letter decomposition, recurse on the shorter
    word, and take the x_j primitive with vanishing regularized constant.
    """
    key = (ell, tuple(word), j, k)
    if key in _INTEGRATE_BACK_CACHE:
        return _INTEGRATE_BACK_CACHE[key]
    word = tuple(word)
    if not word:
        return ()
    b, rest = word[0], word[1:]
    fb = _letter_coeff(ell, j, b)
    pieces = []
    dfb = fb.deriv(k)
    if not dfb.is_zero() and rest is not None:
        pieces.append((dfb, rest))
    for c, v in _integrate_back(ell, rest, j, k):
        pieces.append((c * fb, v))
    inner = PolylogExpr(ell, [
        PolylogTerm(c, tuple(tuple(v) if s == j - 1 else ()
                             for s in range(ell)), MzvCombination.const(1))
        for c, v in pieces])
    prim = primitive_in_slot(inner, j)
    result = tuple((t.coeff, t.words[j - 1]) for t in prim.terms)
    _INTEGRATE_BACK_CACHE[key] = result
    return result


def diff(e: PolylogExpr, k: int) -> PolylogExpr:
    """Exact partial derivative of the realization with respect to x_k."""
    ell = e.nslots
    if not 1 <= k <= ell:
        raise ValueError("slot out of range")
    out = []
    for t in e.terms:
        dc = t.coeff.deriv(k)
        if not dc.is_zero():
            out.append(PolylogTerm(dc, t.words, t.scalar))
        wk = t.words[k - 1]
        if wk:
            f = _letter_coeff(ell, k, wk[0])
            new_words = t.words[:k - 1] + (wk[1:],) + t.words[k:]
            out.append(PolylogTerm(t.coeff * f, new_words, t.scalar))
        for j in range(k + 1, ell + 1):
            wj = t.words[j - 1]
            if not any(LOG_X < a <= k for a in wj):
                continue
            for c, v in _integrate_back(ell, wj, j, k):
                new_words = t.words[:j - 1] + (tuple(v),) + t.words[j:]
                out.append(PolylogTerm(t.coeff * c, new_words, t.scalar))
    return PolylogExpr(ell, out)


# ---------------------------------------------------------------------------
# regularized limits and restriction


def limit_at_origin(e: PolylogExpr, k: int) -> PolylogExpr:
    """Regularized limit x_k -> 0+ (slot count unchanged).

    Words in slot k vanish unless they are pure log powers, which must
    carry vanishing coefficients.  Letters in higher slots whose
    singularity runs to infinity kill their term.  Only terms whose
    coefficient is regular at x_k = 0 survive structurally; a pole against
    a vanishing word is not representable and raises.
    """
    ell = e.nslots
    out = []
    for t in e.terms:
        wk = t.words[k - 1]
        escaping = any(
            any(LOG_X < a <= k for a in t.words[j])
            for j in range(k, ell))
        if wk and not all(a == LOG_X for a in wk):
            if t.coeff.has_pole_at_zero(k):
                raise LogDivergenceError(
                    "pole at x%d = 0 against a vanishing word" % k)
            continue
        if wk:  # pure log power
            if t.coeff.has_pole_at_zero(k):
                raise LogDivergenceError("pole times log power at x%d = 0" % k)
            if not t.coeff.subs_zero(k).is_zero():
                raise LogDivergenceError(
                    "log^%d(x%d) survives the limit" % (len(wk), k))
            continue
        if escaping:
            if t.coeff.has_pole_at_zero(k):
                raise LogDivergenceError(
                    "pole at x%d = 0 against an escaping-singularity word" % k)
            continue
        coeff = t.coeff.subs_zero(k)
        if not coeff.is_zero():
            out.append(PolylogTerm(coeff, t.words, t.scalar))
    return PolylogExpr(ell, out)


_RESTRICT_WORD_CACHE = {}


def _restrict_word(ell, v):
    """Canonical form over l-1 slots of the slot-l word v at x_l = 1.

    v must not start with the letter l (no leading divergence).
    """
    key = (ell, tuple(v))
    if key in _RESTRICT_WORD_CACHE:
        return _RESTRICT_WORD_CACHE[key]
    v = tuple(v)
    if not v:
        res = PolylogExpr.constant(ell - 1, 1)
    elif all(LOG_X < a < ell for a in v):
        # every letter survives substitution: 1-x_i..x_l -> 1-x_i..x_{l-1}
        res = PolylogExpr.single_word(ell - 1, ell - 1, v)
    elif all(a == LOG_X or a == ell for a in v):
        # only the fixed singularities 0 and 1 remain: a zeta value
        bits = tuple(0 if a == LOG_X else 1 for a in v)
        sign = Fraction(-1) ** sum(bits)
        res = PolylogExpr.constant(
            ell - 1, mzvmod.shuffle_regularize(bits).scale(sign))
    else:
        # rebuild from the derivative in the new last variable; the
        # regularized constant at x_{l-1} = 0 vanishes because v contains
        # a letter whose singularity escapes to infinity there
        d = PolylogExpr(ell, [
            PolylogTerm(c, tuple(tuple(v2) if s == ell - 1 else ()
                                 for s in range(ell)), MzvCombination.const(1))
            for c, v2 in _integrate_back(ell, v, ell, ell - 1)])
        drest = restrict_last_to_one(d)
        res = primitive_in_slot(drest, ell - 1)
    _RESTRICT_WORD_CACHE[key] = res
    return res


def restrict_last_to_one(e: PolylogExpr) -> PolylogExpr:
    """Regularized restriction to the face x_l = 1, in canonical form.

    Raises DivergentRestrictionError if the coefficient of any positive
    power of log(1-x_l) fails to vanish on the face, or if a term has a
    polar singularity there.
    """
    ell = e.nslots
    if ell < 1:
        raise ValueError("no slot to restrict")
    main = []
    diverging = {}
    for t in e.terms:
        if t.coeff.has_pole_at_one(ell):
            raise DivergentRestrictionError(
                "pole along the face x%d = 1" % ell)
        wl = t.words[ell - 1]
        for kpow, comb in extract_leading(wl, ell).items():
            for v, c in comb.items():
                entry = (t.coeff * c, t.words[:ell - 1], v, t.scalar)
                if kpow == 0:
                    main.append(entry)
                else:
                    diverging.setdefault(kpow, []).append(entry)
    for kpow, entries in sorted(diverging.items()):
        expr_k = PolylogExpr(ell, [
            PolylogTerm(c, spect + (v,), s) for c, spect, v, s in entries])
        rest_k = restrict_last_to_one(expr_k)
        if not rest_k.is_zero() and not _is_numerically_zero(rest_k):
            raise DivergentRestrictionError(
                "log^%d(1-x%d) coefficient does not vanish" % (kpow, ell))
    total = PolylogExpr.zero(ell - 1)
    for coeff, spect, v, scalar in main:
        base = PolylogExpr(ell - 1, [PolylogTerm(coeff.subs_one(ell), spect, scalar)])
        total = total + multiply(base, _restrict_word(ell, v))
    return total


def _is_numerically_zero(e: PolylogExpr, digits=22):
    """Numeric guard: formally nonzero combinations may still vanish via
    relations between the zeta scalars."""
    import random
    rng = random.Random(1729)
    for _ in range(3):
        point = [Fraction(rng.randint(20, 60), 100) for _ in range(e.nslots)]
        val = eval_numeric(e, point, digits)
        if abs(val) > mp.mpf(10) ** (-digits + 4):
            return False
    return True


# ---------------------------------------------------------------------------
# numeric evaluation


def _sigma_values(point, k, letter, wp):
    if letter == LOG_X:
        return mp.mpf(0)
    prod = mp.mpf(1)
    for t in range(letter, k):
        prod *= point[t - 1]
    return 1 / prod


def _word_value(point, k, word, wp, digits=30):
    """L_w(x_k) for a slot-k word at a numeric point inside the cube."""
    word = tuple(word)
    if not word:
        return mp.mpf(1)
    z = point[k - 1]
    total = mp.mpf(0)
    logz = mp.log(z)
    for kpow, comb in extract_trailing(word, LOG_X).items():
        for v, c in comb.items():
            cval = mp.mpf(c.numerator) / c.denominator
            total += cval * logz ** kpow * _convergent_word_value(point, k, v,
                                                                  wp, digits)
    return total


def _word_blocks(v):
    blocks = []
    run = 0
    for a in v:
        if a == LOG_X:
            run += 1
        else:
            blocks.append((run, a))
            run = 0
    if run:
        raise ValueError("word ends in the log letter")
    blocks.reverse()  # innermost first: (p_1, s_1), ..., (p_r, s_r)
    return blocks


def _convergent_word_value(point, k, v, wp, digits=30):
    """Nested-series value for a word not ending in the log letter."""
    v = tuple(v)
    if not v:
        return mp.mpf(1)
    z = point[k - 1]
    blocks = _word_blocks(v)
    r = len(blocks)
    ys = [z / _sigma_values(point, k, s, wp) for _, s in blocks]
    ps = [p for p, _ in blocks]
    maxy = max(abs(y) for y in ys)
    eps = mp.mpf(2) ** (-wp - 5)
    if maxy >= 1:
        raise ValueError("series does not converge at this point")
    needed = (wp * 0.694 + 12) / float(-mp.log(maxy))
    if needed > mzvmod._SERIES_BUDGET:
        if digits <= 12:
            return mp.mpf(_convergent_word_value_f64(
                [float(y) for y in ys], ps, 10.0 ** (-digits - 2)))
        raise mzvmod.PrecisionError(
            "series needs ~%.2g terms; lower the precision request" % needed)
    # T[j] = sum over chains m_1 < ... < m_{j+1} = m of
    #        prod y_t^(m_t - m_{t-1}) / m_t^(p_t + 1)
    # via the geometric accumulators U[j](m) = sum_{m'<m} y_j^(m-m') T[j-1](m')
    U = [mp.mpf(0)] * r
    Tprev = [mp.mpf(0)] * r
    T = [mp.mpf(0)] * r
    total = mp.mpf(0)
    y1pow = mp.mpf(1)
    m = 0
    budget = mzvmod._SERIES_BUDGET
    while True:
        m += 1
        for j in range(r - 1, 0, -1):
            U[j] = ys[j] * (U[j] + Tprev[j - 1])
        y1pow *= ys[0]
        T[0] = y1pow / mp.mpf(m) ** (ps[0] + 1)
        for j in range(1, r):
            T[j] = U[j] / mp.mpf(m) ** (ps[j] + 1)
        term = T[r - 1]
        total += term
        Tprev, T = T, Tprev
        if m > r + 30 and abs(term) < eps * (1 - maxy):
            break
        if m > budget:
            raise mzvmod.PrecisionError("series budget exhausted")
    return total * (-1) ** r


def _convergent_word_value_f64(ys, ps, eps):
    """Chunked float64 nested series for slow (near-boundary) ratios.

    The level-j accumulator satisfies U_j(m) = y_j (U_j(m-1) + T_{j-1}(m-1)),
    an order-one IIR filter, so each chunk is a single lfilter call.
    """
    import numpy as np
    from scipy.signal import lfilter
    r = len(ys)
    chunk = 1 << 15
    total = 0.0
    m0 = 1
    ucarry = [0.0] * r
    tcarry = [0.0] * r  # T_j at the last index of the previous chunk
    y1carry = 1.0  # y_1^(m0 - 1)
    maxy = max(ys)
    hard_cap = 2 * 10 ** 8
    done = False
    while m0 < hard_cap and not done:
        idx = np.arange(m0, m0 + chunk, dtype=np.float64)
        with np.errstate(under='ignore'):
            ts = (y1carry * ys[0]) * np.power(ys[0], idx - m0) \
                / idx ** (ps[0] + 1)
            y1carry *= ys[0] ** chunk
            for j in range(1, r):
                yj = ys[j]
                b = np.empty(chunk)
                b[0] = yj * tcarry[j - 1]
                b[1:] = yj * ts[:-1]
                tcarry[j - 1] = float(ts[-1])
                u, zf = lfilter([1.0], [1.0, -yj], b, zi=[yj * ucarry[j]])
                ucarry[j] = float(u[-1])
                ts = u / idx ** (ps[j] + 1)
            tcarry[r - 1] = float(ts[-1])
            total += float(np.sum(ts))
            tail = float(np.max(np.abs(ts[-8:])))
        m0 += chunk
        if m0 > 50 and tail < eps * max(1e-9, 1 - maxy) / 8:
            done = True
    if not done:
        raise mzvmod.PrecisionError("float series budget exhausted")
    return total * (-1) ** r


def eval_numeric(e: PolylogExpr, point, digits=30):
    """Evaluate at a point strictly inside the unit cube."""
    if any(not 0 < p < 1 for p in point):
        raise ValueError("point must lie strictly inside the cube")
    wp = int((digits + 12) * 3.33) + 10
    with mp.workprec(wp):
        pt = [mp.mpf(p.numerator) / p.denominator if isinstance(p, Fraction)
              else mp.mpf(p) for p in point]
        total = mp.mpf(0)
        for t in e.terms:
            val = t.coeff.eval(pt)
            if isinstance(val, Fraction):
                val = mp.mpf(val.numerator) / val.denominator
            for s in range(e.nslots):
                if t.words[s]:
                    val *= _word_value(pt, s + 1, t.words[s], wp, digits)
            if t.scalar != MzvCombination.const(1):
                val *= mzvmod.eval_numeric(t.scalar, digits + 5)
            total += val
        return +total
