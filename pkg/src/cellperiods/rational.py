"""Exact rational-function arithmetic in cubical coordinates.

The coordinate ring we work in is generated by x_1..x_l together with the
inverses of the "atoms"

    x_i          (i = 1..l)
    1 - x_i...x_j    (1 <= i <= j <= l)

Every function is stored as a multivariate polynomial numerator over QQ
divided by a multiset of atoms.  Since distinct atoms are coprime
irreducible polynomials, cancelling every atom that divides the numerator
yields a unique normal form, so equality is structural.

All atoms are linear in the innermost variable x_l, which is what makes
exact partial-fraction decomposition in x_l possible without leaving the
ring: differences of the roots 0, (x_i...x_{l-1})^{-1} factor as monomial
units times single atoms.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# An atom is ('x', i) for x_i or ('g', i, j) for 1 - x_i...x_j (i <= j).
def atom_x(i):
    return ('x', i)


def atom_g(i, j):
    if i > j:
        raise ValueError("atom 1-x_i..x_j needs i <= j, got (%d, %d)" % (i, j))
    return ('g', i, j)


def atom_str(a):
    if a[0] == 'x':
        return "x%d" % a[1]
    i, j = a[1], a[2]
    if i == j:
        return "(1-x%d)" % i
    return "(1-%s)" % "*".join("x%d" % k for k in range(i, j + 1))


class Poly:
    """Sparse multivariate polynomial over Fraction.

    Monomials are exponent tuples of fixed length ``nvars``.  Instances are
    treated as immutable; all operations return new objects.
    """

    __slots__ = ("nvars", "coeffs", "_hash")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        cleaned = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c:
                    cleaned[mono] = cleaned.get(mono, Fraction(0)) + c
            cleaned = {m: c for m, c in cleaned.items() if c}
        self.coeffs = cleaned
        self._hash = None

    @classmethod
    def const(cls, nvars, c):
        c = Fraction(c)
        if not c:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        """The variable x_i (1-based)."""
        mono = tuple(1 if k == i - 1 else 0 for k in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def from_atom(cls, nvars, atom):
        if atom[0] == 'x':
            return cls.var(nvars, atom[1])
        i, j = atom[1], atom[2]
        mono = tuple(1 if i - 1 <= k <= j - 1 else 0 for k in range(nvars))
        return cls(nvars, {(0,) * nvars: Fraction(1), mono: Fraction(-1)})

    def is_zero(self):
        return not self.coeffs

    def is_const(self):
        return all(not any(m) for m in self.coeffs)

    def const_value(self):
        if not self.coeffs:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant: %s" % self)
        return self.coeffs[(0,) * self.nvars]

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.coeffs.items())))
        return self._hash

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Poly(self.nvars, {m: c * f for m, c in self.coeffs.items()})
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def deriv(self, i):
        """Partial derivative with respect to x_i (1-based)."""
        out = {}
        k = i - 1
        for m, c in self.coeffs.items():
            e = m[k]
            if e:
                m2 = m[:k] + (e - 1,) + m[k + 1:]
                out[m2] = out.get(m2, Fraction(0)) + c * e
        return Poly(self.nvars, out)

    def subs_value(self, i, val):
        """Substitute x_i = val (a Fraction)."""
        val = Fraction(val)
        k = i - 1
        out = {}
        for m, c in self.coeffs.items():
            m2 = m[:k] + (0,) + m[k + 1:]
            out[m2] = out.get(m2, Fraction(0)) + c * val ** m[k]
        return Poly(self.nvars, out)

    def drop_var(self, i):
        """Remove variable x_i, which must not occur."""
        k = i - 1
        out = {}
        for m, c in self.coeffs.items():
            if m[k]:
                raise ValueError("variable x%d still occurs" % i)
            out[m[:k] + m[k + 1:]] = c
        return Poly(self.nvars - 1, out)

    def degree_in(self, i):
        k = i - 1
        return max((m[k] for m in self.coeffs), default=0)

    def coeffs_in(self, i):
        """Split as a polynomial in x_i: dict degree -> Poly (x_i-free)."""
        k = i - 1
        out = {}
        for m, c in self.coeffs.items():
            e = m[k]
            m2 = m[:k] + (0,) + m[k + 1:]
            out.setdefault(e, {})[m2] = c
        return {e: Poly(self.nvars, cs) for e, cs in out.items()}

    def divide_exact(self, other):
        """Exact division; returns None if ``other`` does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return Poly(self.nvars)
        rem = dict(self.coeffs)
        lead_m, lead_c = max(other.coeffs.items())
        quot = {}
        while rem:
            m, c = max(rem.items())
            qm = tuple(a - b for a, b in zip(m, lead_m))
            if any(e < 0 for e in qm):
                return None
            qc = c / lead_c
            quot[qm] = qc
            for m2, c2 in other.coeffs.items():
                mm = tuple(a + b for a, b in zip(qm, m2))
                nc = rem.get(mm, Fraction(0)) - qc * c2
                if nc:
                    rem[mm] = nc
                else:
                    rem.pop(mm, None)
        return Poly(self.nvars, quot)

    def eval(self, point):
        """Evaluate at a point (sequence of numbers); exact for Fractions."""
        total = None
        for m, c in self.coeffs.items():
            term = c
            for e, v in zip(m, point):
                if e:
                    term = term * v ** e
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) if all(isinstance(v, (int, Fraction)) for v in point) else 0.0
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in sorted(self.coeffs.items()):
            vs = "*".join("x%d^%d" % (k + 1, e) if e > 1 else "x%d" % (k + 1)
                          for k, e in enumerate(m) if e)
            parts.append(str(c) + ("*" + vs if vs else ""))
        return " + ".join(parts)

    __repr__ = __str__


class CubicalRational:
    """Numerator polynomial over a multiset of atom denominators.

    Normal form: every atom power that divides the numerator is cancelled.
    """

    __slots__ = ("nvars", "num", "den", "_hash")

    def __init__(self, nvars, num, den=None, normalize=True):
        self.nvars = nvars
        self.num = num
        den = dict(den or {})
        for a, e in list(den.items()):
            if e < 0:
                raise ValueError("denominator exponents must be positive")
            if e == 0:
                del den[a]
        if normalize and den and not num.is_zero():
            for a in sorted(den):
                p = Poly.from_atom(nvars, a)
                while den.get(a, 0) > 0:
                    q = num.divide_exact(p)
                    if q is None:
                        break
                    num = q
                    den[a] -= 1
                if den.get(a) == 0:
                    del den[a]
        if num.is_zero():
            den = {}
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, Poly.const(nvars, c), normalize=False)

    @classmethod
    def from_poly(cls, p):
        return cls(p.nvars, p, normalize=False)

    @classmethod
    def from_atom_powers(cls, nvars, powers):
        """Product of atoms with integer (possibly negative) exponents."""
        num = Poly.const(nvars, 1)
        den = {}
        for a, e in powers.items():
            if e > 0:
                num = num * Poly.from_atom(nvars, a) ** e
            elif e < 0:
                den[a] = den.get(a, 0) - e
        return cls(nvars, num, den)

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return not self.den and self.num.is_const()

    def const_value(self):
        if self.den:
            raise ValueError("not constant")
        return self.num.const_value()

    def __eq__(self, other):
        return (isinstance(other, CubicalRational) and self.nvars == other.nvars
                and self.den == other.den and self.num == other.num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.num, frozenset(self.den.items())))
        return self._hash

    def _den_poly(self):
        p = Poly.const(self.nvars, 1)
        for a, e in self.den.items():
            p = p * Poly.from_atom(self.nvars, a) ** e
        return p

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CubicalRational.const(self.nvars, other)
        den = dict(self.den)
        for a, e in other.den.items():
            den[a] = max(den.get(a, 0), e)
        extra_self = Poly.const(self.nvars, 1)
        for a, e in den.items():
            d = e - self.den.get(a, 0)
            if d:
                extra_self = extra_self * Poly.from_atom(self.nvars, a) ** d
        extra_other = Poly.const(self.nvars, 1)
        for a, e in den.items():
            d = e - other.den.get(a, 0)
            if d:
                extra_other = extra_other * Poly.from_atom(self.nvars, a) ** d
        return CubicalRational(self.nvars,
                               self.num * extra_self + other.num * extra_other,
                               den)

    __radd__ = __add__

    def __neg__(self):
        return CubicalRational(self.nvars, -self.num, self.den, normalize=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CubicalRational.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CubicalRational(self.nvars, self.num * Fraction(other),
                                   self.den, normalize=False)
        den = dict(self.den)
        for a, e in other.den.items():
            den[a] = den.get(a, 0) + e
        return CubicalRational(self.nvars, self.num * other.num, den)

    __rmul__ = __mul__

    def div_atom(self, atom, power=1):
        den = dict(self.den)
        den[atom] = den.get(atom, 0) + power
        return CubicalRational(self.nvars, self.num, den)

    def __pow__(self, n):
        out = CubicalRational.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def deriv(self, i):
        """Partial derivative with respect to x_i (quotient rule on atoms)."""
        out = CubicalRational(self.nvars, self.num.deriv(i), self.den)
        for a, e in self.den.items():
            pa = Poly.from_atom(self.nvars, a).deriv(i)
            if pa.is_zero():
                continue
            den = dict(self.den)
            den[a] = den.get(a, 0) + 1
            out = out + CubicalRational(self.nvars, self.num * pa * Fraction(-e), den)
        return out

    def involves_var(self, i):
        k = i - 1
        if any(m[k] for m in self.num.coeffs):
            return True
        return any(a[0] == 'x' and a[1] == i or
                   a[0] == 'g' and a[1] <= i <= a[2] for a in self.den)

    def has_pole_at_zero(self, i):
        return atom_x(i) in self.den

    def has_pole_at_one(self, i):
        """Pole along x_i = 1, i.e. the atom 1-x_i in the denominator."""
        return ('g', i, i) in self.den

    def subs_one(self, i):
        """Substitute x_i = 1 and drop the variable (result has nvars-1).

        Atoms ('g', a, b) with a <= i <= b become ('g', a', b') on the
        remaining variables; a pole 1-x_i must have been excluded upstream.
        """
        if self.has_pole_at_one(i):
            raise ZeroDivisionError("pole along x%d = 1" % i)
        num = self.num.subs_value(i, 1).drop_var(i)
        den = {}
        for a, e in self.den.items():
            den[_atom_subs_one(a, i)] = den.get(_atom_subs_one(a, i), 0) + e
        den.pop(None, None)
        return CubicalRational(self.nvars - 1, num, den)

    def subs_zero(self, i):
        """Substitute x_i = 0 keeping the variable slot (nvars unchanged)."""
        if self.has_pole_at_zero(i):
            raise ZeroDivisionError("pole along x%d = 0" % i)
        num = self.num.subs_value(i, 0)
        den = {}
        for a, e in self.den.items():
            if a[0] == 'g' and a[1] <= i <= a[2]:
                continue  # 1 - x_a..x_b -> 1
            den[a] = den.get(a, 0) + e
        return CubicalRational(self.nvars, num, den)

    def eval(self, point):
        num = self.num.eval(point)
        for a, e in self.den.items():
            num = num / Poly.from_atom(self.nvars, a).eval(point) ** e
        return num

    def __str__(self):
        s = "(%s)" % self.num
        if self.den:
            s += " / (" + "*".join(
                atom_str(a) + ("^%d" % e if e > 1 else "")
                for a, e in sorted(self.den.items())) + ")"
        return s

    __repr__ = __str__


def _atom_subs_one(a, i):
    """Image of an atom under x_i = 1, re-indexed to nvars-1 variables.

    Variables above i shift down by one.  Returns None if the atom becomes 1.
    """
    def sh(k):
        return k - 1 if k > i else k
    if a[0] == 'x':
        if a[1] == i:
            return None
        return ('x', sh(a[1]))
    lo, hi = a[1], a[2]
    if lo <= i <= hi:
        if lo == hi:  # 1 - x_i would be zero; excluded by pole check
            raise ZeroDivisionError
        return ('g', lo, hi - 1)
    return ('g', sh(lo), sh(hi))


def _linear_parts(nvars, atom, k):
    """Write an atom containing x_k as c + d*x_k with c, d Poly in the rest."""
    if atom == ('x', k):
        return Poly.const(nvars, 0), Poly.const(nvars, 1)
    if atom[0] == 'g' and atom[1] <= k <= atom[2]:
        if atom[2] != k:
            raise ValueError("atom %s is not linear-in-x%d within scope"
                             % (atom_str(atom), k))
        mono = tuple(1 if atom[1] - 1 <= t <= k - 2 else 0 for t in range(nvars))
        return Poly.const(nvars, 1), Poly(nvars, {mono: Fraction(-1)})
    raise ValueError("atom %s does not involve x%d" % (atom_str(atom), k))


def partial_fractions(f, k):
    """Decompose ``f`` with respect to x_k.

    Returns (pole_terms, poly_terms) where

    * pole_terms is a list of (atom, m, R): R / atom^m with R free of x_k,
    * poly_terms is a list of (e, R): R * x_k^e with R free of x_k.

    Requires every denominator atom involving x_k to be linear in x_k, which
    holds whenever x_k is the innermost active variable.
    """
    nvars = f.nvars
    k_atoms = {a: e for a, e in f.den.items()
               if (a[0] == 'x' and a[1] == k) or (a[0] == 'g' and a[1] <= k <= a[2])}
    rest = {a: e for a, e in f.den.items() if a not in k_atoms}
    pole_terms = []
    poly_terms = []
    # stack entries: (numerator Poly, x_k atom powers, x_k-free extra denominator)
    stack = [(f.num, dict(k_atoms), {})]
    while stack:
        num, katoms, extra = stack.pop()
        katoms = {a: e for a, e in katoms.items() if e > 0}
        distinct = sorted(katoms)
        if len(distinct) >= 2:
            # 1/(t*s) = (d_t/t - d_s/s) / (c_s*d_t - c_t*d_s)
            t, s = distinct[0], distinct[1]
            ct, dt = _linear_parts(nvars, t, k)
            cs, ds = _linear_parts(nvars, s, k)
            inv_w = _invert_unit(nvars, cs * dt - ct * ds)
            kt = dict(katoms)
            kt[s] -= 1
            ks = dict(katoms)
            ks[t] -= 1
            stack.append((num * dt * inv_w.num, kt, _merge(extra, inv_w.den)))
            stack.append((num * ds * Fraction(-1) * inv_w.num, ks,
                          _merge(extra, inv_w.den)))
            continue
        if len(distinct) == 1:
            t = distinct[0]
            m = katoms[t]
            ct, dt = _linear_parts(nvars, t, k)
            # expand num in powers of t via x_k = (t - c)/d; d is a unit
            inv_d = _invert_unit(nvars, dt)
            acc = {}  # power of t -> CubicalRational free of x_k
            for e, pe in num.coeffs_in(k).items():
                coeff_unit = inv_d ** e
                for s in range(e + 1):
                    binom = Fraction(_binomial(e, s)) * (Fraction(-1) ** (e - s))
                    piece = CubicalRational(nvars,
                                            pe * binom * (ct ** (e - s)) * coeff_unit.num,
                                            _merge(coeff_unit.den, extra))
                    acc[s] = acc.get(s, CubicalRational.const(nvars, 0)) + piece
            for s, R in acc.items():
                if R.is_zero():
                    continue
                if s < m:
                    pole_terms.append((t, m - s, R))
                else:
                    # residual positive power of t: re-expand into x_k powers
                    tp = Poly.from_atom(nvars, t) ** (s - m)
                    stack.append((R.num * tp, {}, dict(R.den)))
            continue
        # no x_k left in the denominator: plain polynomial in x_k
        for e, pe in num.coeffs_in(k).items():
            if not pe.is_zero():
                poly_terms.append((e, CubicalRational(nvars, pe, extra)))
    # attach the x_k-free denominator part and merge duplicates
    merged_poles = {}
    for t, m, R in pole_terms:
        R = CubicalRational(nvars, R.num, _merge(R.den, rest))
        key = (t, m)
        merged_poles[key] = merged_poles.get(key, CubicalRational.const(nvars, 0)) + R
    merged_poly = {}
    for e, R in poly_terms:
        R = CubicalRational(nvars, R.num, _merge(R.den, rest))
        merged_poly[e] = merged_poly.get(e, CubicalRational.const(nvars, 0)) + R
    poles = [(t, m, R) for (t, m), R in sorted(merged_poles.items()) if not R.is_zero()]
    polys = [(e, R) for e, R in sorted(merged_poly.items()) if not R.is_zero()]
    return poles, polys


def _merge(d1, d2):
    out = dict(d1)
    for a, e in d2.items():
        out[a] = out.get(a, 0) + e
    return {a: e for a, e in out.items() if e}


def _binomial(n, r):
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


def _invert_unit(nvars, w):
    """Invert a polynomial known to be a monomial times a product of atoms.

    Root differences in partial fractions always have this shape; anything
    else means the input left the cubical coordinate ring.
    """
    if w.is_zero():
        raise ZeroDivisionError
    if len(w.coeffs) == 1:
        (mono, c), = w.coeffs.items()
        num_mono = tuple(0 for _ in range(nvars))
        den = {}
        for idx, e in enumerate(mono):
            if e:
                den[atom_x(idx + 1)] = e
        return CubicalRational(nvars, Poly(nvars, {num_mono: 1 / c}), den,
                               normalize=False)
    # try w = unit-monomial * atom for some atom 1 - x_i..x_j
    for i in range(1, nvars + 1):
        for j in range(i, nvars + 1):
            g = Poly.from_atom(nvars, atom_g(i, j))
            q = w.divide_exact(g)
            if q is not None and len(q.coeffs) == 1:
                inv_q = _invert_unit(nvars, q)
                return inv_q.div_atom(atom_g(i, j))
            nq = (-w).divide_exact(g)
            if nq is not None and len(nq.coeffs) == 1:
                inv_q = _invert_unit(nvars, -nq)
                return inv_q.div_atom(atom_g(i, j)) * Fraction(-1)
    raise ValueError("cannot invert %s as a unit of the cubical ring" % w)


class _CRPower:
    pass


def cr_pow(base, n):
    out = base
    for _ in range(n - 1):
        out = out * base
    return out
