"""Dihedral coordinates as exact rational functions of cubical coordinates.

The marked points are gauge-fixed to z_1 = 1, z_2 = infinity, z_3 = 0 and
z_{m+3} = x_m * x_{m+1} * ... * x_l.  Every difference z_a - z_b then
factors into a signed monomial times at most one atom 1 - x_i..x_j, so each
cross-ratio -- in particular each dihedral coordinate u_ij -- is an exact
product of atom powers.  This module exposes those factorizations together
with the divisor-order bookkeeping for forms u^alpha * omega.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .ngon import (Chord, DihedralNGon, StablePartition, chords, crossing_set,
                   stable_partitions)
from .rational import CubicalRational, Poly, atom_g, atom_x


class AtomProduct:
    """A signed product of atom powers: sign * prod x_i^a * prod (1-x..x)^c."""

    __slots__ = ("sign", "powers")

    def __init__(self, sign=1, powers=None):
        self.sign = sign
        self.powers = {a: e for a, e in (powers or {}).items() if e}

    def __mul__(self, other):
        powers = dict(self.powers)
        for a, e in other.powers.items():
            powers[a] = powers.get(a, 0) + e
        return AtomProduct(self.sign * other.sign, powers)

    def inv(self):
        return AtomProduct(self.sign, {a: -e for a, e in self.powers.items()})

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = AtomProduct()
        for _ in range(n):
            out = out * self
        return out

    def to_rational(self, nvars) -> CubicalRational:
        r = CubicalRational.from_atom_powers(nvars, self.powers)
        return r * self.sign

    def __eq__(self, other):
        return self.sign == other.sign and self.powers == other.powers

    def __repr__(self):
        return "AtomProduct(%d, %r)" % (self.sign, self.powers)


def _z_diff(a, b, ell):
    """Factorization of z_a - z_b for labels in 1..n, neither equal to 2."""
    if a == b:
        raise ValueError("coincident points")
    if a == 1 and b == 3:
        return AtomProduct(1, {})
    if a == 3 and b == 1:
        return AtomProduct(-1, {})
    if b == 1 or (a != 1 and a > b):
        return AtomProduct(-1, {}) * _z_diff(b, a, ell)
    if a == 1:
        # 1 - x_m..x_l
        m = b - 3
        return AtomProduct(1, {atom_g(m, ell): 1})
    if a == 3:
        # 0 - x_m..x_l
        m = b - 3
        return AtomProduct(-1, {atom_x(i): 1 for i in range(m, ell + 1)})
    # x_m..x_l - x_m'..x_l with m < m'
    m, mp = a - 3, b - 3
    powers = {atom_x(i): 1 for i in range(mp, ell + 1)}
    powers[atom_g(m, mp - 1)] = 1
    return AtomProduct(-1, powers)


def cross_ratio_cubical(n, i, j, k, l) -> AtomProduct:
    """The cross-ratio [ij|kl] = (z_i-z_k)(z_j-z_l)/((z_i-z_l)(z_j-z_k))."""
    ell = n - 3
    if len({i, j, k, l}) != 4:
        raise ValueError("indices must be distinct")
    if i == 2:
        return _z_diff(j, l, ell) * _z_diff(j, k, ell).inv()
    if j == 2:
        return _z_diff(i, k, ell) * _z_diff(i, l, ell).inv()
    if k == 2:
        return _z_diff(j, l, ell) * _z_diff(i, l, ell).inv()
    if l == 2:
        return _z_diff(i, k, ell) * _z_diff(j, k, ell).inv()
    return (_z_diff(i, k, ell) * _z_diff(j, l, ell)
            * _z_diff(i, l, ell).inv() * _z_diff(j, k, ell).inv())


@lru_cache(maxsize=None)
def u_factorization(n, i, j) -> AtomProduct:
    """Atom factorization of u_ij = [i i+1 | j+1 j]; positive on the cell."""
    c = Chord.of(i, j, n)
    ip = c.i % n + 1
    jp = c.j % n + 1
    fac = cross_ratio_cubical(n, c.i, ip, jp, c.j)
    if fac.sign != 1:
        raise AssertionError("u_%d%d should be positive on the open cell" % (i, j))
    return fac


def u_to_cubical(g: DihedralNGon, c: Chord) -> CubicalRational:
    """The dihedral coordinate u_c as an exact rational function."""
    return u_factorization(g.n, c.i, c.j).to_rational(g.ell)


@dataclass(frozen=True)
class DihedralMonomial:
    """Exponent assignment alpha on the chords of an n-gon."""

    n: int
    alpha: tuple  # sorted tuple of (Chord, int), zero entries omitted

    @classmethod
    def of(cls, n, alpha=None):
        g = DihedralNGon(n)
        valid = set(chords(g))
        items = []
        for c, e in (alpha or {}).items():
            if not isinstance(c, Chord):
                c = Chord.of(c[0], c[1], n)
            if c not in valid:
                raise ValueError("%s is not a chord of the %d-gon" % (c, n))
            if e:
                items.append((c, int(e)))
        return cls(n, tuple(sorted(items)))

    @property
    def g(self):
        return DihedralNGon(self.n)

    def exponent(self, c: Chord):
        for cc, e in self.alpha:
            if cc == c:
                return e
        return 0

    def total_degree(self):
        return sum(e for _, e in self.alpha)

    def permuted(self, sigma):
        """Pull back along a vertex permutation of the dihedral group."""
        return DihedralMonomial.of(
            self.n, {Chord.of(sigma[c.i], sigma[c.j], self.n): e
                     for c, e in self.alpha})

    def to_json(self):
        return json.dumps({"n": self.n,
                           "alpha": {"%d,%d" % (c.i, c.j): e
                                     for c, e in self.alpha}})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        alpha = {}
        for key, e in data.get("alpha", {}).items():
            i, j = (int(t) for t in key.split(","))
            alpha[(i, j)] = e
        return cls.of(int(data["n"]), alpha)

    def __str__(self):
        if not self.alpha:
            return "1"
        return " * ".join("u(%d,%d)^%d" % (c.i, c.j, e) if e != 1
                          else "u(%d,%d)" % (c.i, c.j) for c, e in self.alpha)


@dataclass(frozen=True)
class CubicalIntegrand:
    """Exponents of prod x^a (1-x)^b prod (1-x_i..x_j)^c, measure dx."""

    a: tuple
    b: tuple
    c: tuple  # tuple of ((i, j), exponent) with i < j

    @property
    def ell(self):
        return len(self.a)

    def c_dict(self):
        return dict(self.c)

    def atom_powers(self):
        powers = {}
        for i, e in enumerate(self.a, start=1):
            if e:
                powers[atom_x(i)] = e
        for i, e in enumerate(self.b, start=1):
            if e:
                powers[atom_g(i, i)] = e
        for (i, j), e in self.c:
            if e:
                powers[atom_g(i, j)] = e
        return powers

    def to_rational(self) -> CubicalRational:
        return CubicalRational.from_atom_powers(self.ell, self.atom_powers())

    def to_json(self):
        return json.dumps({
            "a": list(self.a), "b": list(self.b),
            "c": {"%d,%d" % ij: e for ij, e in self.c}})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        c = {}
        for key, e in data.get("c", {}).items():
            i, j = (int(t) for t in key.split(","))
            c[(i, j)] = e
        return cls(tuple(data["a"]), tuple(data["b"]),
                   tuple(sorted((ij, e) for ij, e in c.items() if e)))


def monomial_to_cubical(m: DihedralMonomial) -> CubicalIntegrand:
    """Exponents of prod u^alpha * omega in cubical coordinates.

    Computed from the atom factorizations of the u_ij and of the canonical
    form omega (denominators 1-x_i*x_{i+1}); the closed-form index change is
    checked against this in the test suite.
    """
    n, ell = m.n, m.g.ell
    fac = AtomProduct()
    for c, e in m.alpha:
        fac = fac * u_factorization(n, c.i, c.j) ** e
    for i in range(1, ell):
        fac = fac * AtomProduct(1, {atom_g(i, i + 1): -1})
    if fac.sign != 1:
        raise AssertionError("integrand should be positive")
    a = [0] * ell
    b = [0] * ell
    c = {}
    for atom, e in fac.powers.items():
        if atom[0] == 'x':
            a[atom[1] - 1] = e
        elif atom[1] == atom[2]:
            b[atom[1] - 1] = e
        else:
            c[(atom[1], atom[2])] = e
    return CubicalIntegrand(tuple(a), tuple(b),
                            tuple(sorted((ij, e) for ij, e in c.items() if e)))


def cubical_index_map(m: DihedralMonomial) -> CubicalIntegrand:
    """The closed-form integer-linear index change alpha -> (a, b, c)."""
    n, ell = m.n, m.g.ell

    def al(i, j):
        i, j = (i - 1) % n + 1, (j - 1) % n + 1
        if i == j or (j - i) % n == 1 or (i - j) % n == 1:
            return 0
        return m.exponent(Chord.of(i, j, n))

    a = tuple(al(2, i + 3) for i in range(1, ell + 1))
    b = tuple(al(i + 2, i + 4) for i in range(1, ell + 1))
    c = {}
    for i in range(1, ell + 1):
        for j in range(i + 1, ell + 1):
            if j == i + 1:
                e = al(i + 2, i + 5) - al(i + 2, i + 4) - al(i + 3, i + 5) - 1
            else:
                e = (al(i + 3, j + 3) + al(i + 2, j + 4)
                     - al(i + 2, j + 3) - al(i + 3, j + 4))
            if e:
                c[(i, j)] = e
    return CubicalIntegrand(a, b, tuple(sorted(c.items())))


def convergence_check(m: DihedralMonomial) -> bool:
    """The cell integral of u^alpha * omega converges iff all alpha >= 0."""
    return all(e >= 0 for _, e in m.alpha)


def verify_complete_crossing_relation(g: DihedralNGon, A, B) -> bool:
    """Check u_A + u_B = 1 exactly for completely crossing chord sets."""
    from .ngon import crosses
    for a in A:
        for b in B:
            if not crosses(a, b, g):
                raise ValueError("%s and %s do not cross" % (a, b))
    ua = AtomProduct()
    for a in A:
        ua = ua * u_factorization(g.n, a.i, a.j)
    ub = AtomProduct()
    for b in B:
        ub = ub * u_factorization(g.n, b.i, b.j)
    total = ua.to_rational(g.ell) + ub.to_rational(g.ell)
    return total == CubicalRational.const(g.ell, 1)


def ord_cross_ratio(p: StablePartition, i, j, k, l) -> int:
    """Order of vanishing of [ij|kl] along the divisor of the partition."""
    if len({i, j, k, l}) != 4:
        raise ValueError("indices must be distinct")
    twice = (p.indicator(i, k) + p.indicator(j, l)
             - p.indicator(i, l) - p.indicator(j, k))
    if twice % 2:
        raise AssertionError("cross-ratio order must be an integer")
    return twice // 2


def ord_u(p: StablePartition, c: Chord, n) -> int:
    ip = c.i % n + 1
    jp = c.j % n + 1
    return ord_cross_ratio(p, c.i, ip, jp, c.j)


def ord_form(m: DihedralMonomial, p: StablePartition) -> int:
    """Order of prod u^alpha * omega along the divisor of ``p``."""
    n, ell = m.n, m.g.ell
    twice = ell - 1 - sum(p.indicator(i, (i + 1) % n + 1)
                          for i in range(1, n + 1))
    for c, e in m.alpha:
        twice += 2 * e * ord_u(p, c, n)
    if twice % 2:
        raise AssertionError("form order must be an integer")
    return twice // 2


@dataclass(frozen=True)
class DivisorOrderReport:
    partition: StablePartition
    order: int


def divisor_table(m: DihedralMonomial):
    """Orders of u^alpha * omega along every boundary divisor."""
    return [DivisorOrderReport(p, ord_form(m, p))
            for p in stable_partitions(m.n)]


def kontsevich_factorization(eps) -> AtomProduct:
    """Atom factorization of the 0/1 iterated-integral form over omega.

    Up to sign the wedge of dt_i/(eps_i - t_i) equals prod u^alpha * omega;
    on the open cell the wedge has sign (-1)^(number of zero entries).
    Cross-ratio factors with coincident indices are identically 1.
    """
    ell = len(eps)
    if ell < 2:
        raise ValueError("need at least two entries")
    if any(e not in (0, 1) for e in eps):
        raise ValueError("entries must be 0 or 1")
    n = ell + 3
    fac = AtomProduct()
    if n > 5:
        fac = fac * cross_ratio_cubical(n, 5, n, 3, 2)
    if eps[ell - 1] == 1:
        fac = fac * cross_ratio_cubical(n, 2, n, 1, 3)
    for i in range(1, ell):
        gamma = 3 - 2 * eps[i - 1]
        a = (i + 5 - 1) % n + 1
        if a == gamma:
            continue  # degenerate cross-ratio, defined to be 1
        fac = fac * cross_ratio_cubical(n, a, gamma, i + 3, 2)
    return fac


def kontsevich_to_monomial(eps) -> DihedralMonomial:
    """Dihedral exponents whose form u^alpha * omega is the absolute value
    of the wedge of dt_i/(eps_i - t_i)."""
    fac = kontsevich_factorization(eps)
    alpha = _atoms_to_alpha(len(eps) + 3, fac)
    return DihedralMonomial.of(len(eps) + 3, alpha)


def _atoms_to_alpha(n, fac: AtomProduct):
    """Invert the atom factorization over the chord exponents.

    The map alpha -> atom powers is integer-linear and invertible; we peel
    off chords one at a time using the triangular structure x_m = u_{2,m+3}.
    """
    g = DihedralNGon(n)
    remaining = AtomProduct(fac.sign, dict(fac.powers))
    alpha = {}
    # greedy elimination ordered so each chord's factorization introduces a
    # fresh atom: order chords by their atom support size
    basis = []
    for c in chords(g):
        basis.append((c, u_factorization(n, c.i, c.j)))
    # solve the integer-linear system by Gaussian elimination over QQ
    atoms = sorted({a for _, f in basis for a in f.powers})
    idx = {a: t for t, a in enumerate(atoms)}
    rows = len(atoms)
    cols = len(basis)
    mat = [[Fraction(0)] * cols for _ in range(rows)]
    for col, (c, f) in enumerate(basis):
        for a, e in f.powers.items():
            mat[idx[a]][col] = Fraction(e)
    target = [Fraction(0)] * rows
    for a, e in remaining.powers.items():
        if a not in idx:
            raise ValueError("atom %s not generated by any chord" % (a,))
        target[idx[a]] = Fraction(e)
    sol = _solve_exact(mat, target)
    if sol is None:
        raise ValueError("form is not a monomial in the dihedral coordinates")
    for col, (c, _) in enumerate(basis):
        if sol[col]:
            if sol[col].denominator != 1:
                raise ValueError("non-integer exponent in factorization")
            alpha[c] = int(sol[col])
    return alpha


def _solve_exact(mat, target):
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [row[:] + [t] for row, t in zip(mat, target)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        inv = 1 / pr[c]
        aug[r] = [v * inv for v in pr]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    # consistency: rows beyond rank must have zero rhs
    for i in range(len(pivots), rows):
        if aug[i][cols]:
            return None
    # verify (guards the free-variable case)
    for i in range(rows):
        s = sum(mat[i][c] * sol[c] for c in range(cols))
        if s != target[i]:
            return None
    return sol


def kontsevich_singular_divisors(eps):
    """Orders of the 0/1 iterated-integral form along all divisors.

    Each stable partition falls into one of four cases according to how it
    splits the three gauge-fixed points s1, s2, s3; the order is a count of
    the eps-marked points in the small block.
    """
    ell = len(eps)
    n = ell + 3
    zero_marks = {i + 3 for i in range(1, ell + 1) if eps[i - 1] == 0}
    one_marks = {i + 3 for i in range(1, ell + 1) if eps[i - 1] == 1}
    out = []
    for p in stable_partitions(n):
        b1, b2 = set(p.block1), set(p.block2)
        first = {1, 2, 3}
        in1 = first & b1
        if len(in1) in (0, 3):
            big, small = (b1, b2) if len(in1) == 3 else (b2, b1)
            order = len(small) - 2
        elif (first & b1 == {1, 3}) or (first & b2 == {1, 3}):
            order = -1
        elif (first & b1 == {1, 2}) or (first & b2 == {1, 2}):
            small = b2 if first & b1 == {1, 2} else b1
            order = len(small & one_marks) - 1
        else:  # s2, s3 together, s1 alone
            small = b2 if first & b1 == {2, 3} else b1
            order = len(small & zero_marks) - 1
        out.append((p, order))
    return out
