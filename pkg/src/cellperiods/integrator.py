"""Top-level period computation over the associahedron cell.

The pipeline works in cubical coordinates, where the cell is the unit
hypercube.  Starting from the exact rational integrand of u^alpha * omega,
it repeatedly takes the canonical primitive in the highest remaining
variable (normalized to vanish at 0) and restricts to the face x_k = 1;
all other faces contribute nothing by construction.  After the last stage
the expression is a pure scalar: an exact rational combination of zeta
values of weight at most the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from . import mzv as mzvmod
from .dihedral import (CubicalIntegrand, DihedralMonomial, convergence_check,
                       kontsevich_to_monomial, monomial_to_cubical,
                       u_factorization)
from .mzv import MzvCombination
from .ngon import Chord, DihedralNGon, chords
from .polylog import (DivergentRestrictionError, LogDivergenceError,
                      PoleRequiredError, PolylogExpr, PolylogTerm, multiply,
                      primitive_in_slot, restrict_last_to_one)
from .rational import CubicalRational, Poly, atom_g

MAX_N = 8
MAX_ALPHA_TOTAL = 12  # enforced from dimension 3 up; low dimensions are cheap


class NonConvergentError(Exception):
    """The requested integral diverges (negative exponent or bad face)."""


class InternalDivergenceError(Exception):
    """A divergence appeared mid-pipeline on a convergent input."""


class LimitsExceededError(Exception):
    """Input outside the documented practical limits."""


@dataclass
class PeriodResult:
    value: MzvCombination
    weight_bound: int
    trace: list = field(default_factory=list)
    sign: int = 1  # orientation factor for wedge-normalized integrands

    def numeric(self, digits=30):
        return mzvmod.eval_numeric(self.value, digits)

    def __str__(self):
        return self.value.to_text()


def _omega_rational(ell) -> CubicalRational:
    den = {}
    for i in range(1, ell):
        den[atom_g(i, i + 1)] = den.get(atom_g(i, i + 1), 0) + 1
    return CubicalRational(ell, Poly.const(ell, 1), den, normalize=False)


def _run_pipeline(e: PolylogExpr, trace=None):
    """Primitive + face restriction, last slot first, down to a scalar."""
    while e.nslots:
        k = e.nslots
        p = primitive_in_slot(e, k)
        if trace is not None:
            trace.append(("primitive", k, len(p.terms)))
        e = restrict_last_to_one(p)
        if trace is not None:
            trace.append(("restrict", k, len(e.terms)))
    total = MzvCombination.zero()
    for t in e.terms:
        total = total + t.scalar.scale(t.coeff.const_value())
    return total


def integrate_cell(m: DihedralMonomial, keep_trace=True,
                   check_positive=True) -> PeriodResult:
    """The cell integral of u^alpha * omega as an exact zeta combination."""
    if not convergence_check(m):
        bad = [c for c, e in m.alpha if e < 0]
        raise NonConvergentError(
            "negative exponent on %s" % ", ".join(str(c) for c in bad))
    if m.n > MAX_N:
        raise LimitsExceededError("n is capped at %d" % MAX_N)
    if m.n >= 6 and m.total_degree() > MAX_ALPHA_TOTAL:
        raise LimitsExceededError(
            "total exponent degree is capped at %d for n >= 6" % MAX_ALPHA_TOTAL)
    ell = m.g.ell
    integrand = PolylogExpr.from_rational(monomial_to_cubical(m).to_rational())
    trace = [] if keep_trace else None
    try:
        value = _run_pipeline(integrand, trace)
    except (PoleRequiredError, DivergentRestrictionError,
            LogDivergenceError) as exc:
        raise InternalDivergenceError(str(exc)) from exc
    if value.weight() > ell:
        raise AssertionError("weight bound %d violated: %s" % (ell, value))
    if check_positive and not m.alpha and value.is_zero():
        raise AssertionError("cell volume cannot vanish")
    if check_positive and not value.is_zero():
        if mzvmod.eval_numeric(value, 15) <= 0:
            raise AssertionError("cell integral must be positive: %s" % value)
    return PeriodResult(value, ell, trace or [])


def integrate_kontsevich(eps) -> PeriodResult:
    """Integral of the 0/1 iterated-integral form, checked against the
    closed-form zeta value.

    The engine integrates the positive form u^alpha * omega; the wedge of
    dt_i/(eps_i - t_i) carries the extra orientation sign (-1)^(number of
    zero entries), reported in the ``sign`` field.
    """
    eps = tuple(int(b) for b in eps)
    ell = len(eps)
    if ell < 2 or eps[0] != 1 or eps[-1] != 0:
        raise NonConvergentError(
            "convergence requires eps_1 = 1 and eps_l = 0")
    m = kontsevich_to_monomial(eps)
    if not convergence_check(m):
        raise NonConvergentError("factorization has a negative exponent")
    engine = integrate_cell(m)
    word = tuple(eps[::-1])
    closed = MzvCombination.zeta(*mzvmod.word_to_composition(word))
    if engine.value != closed:
        # the pipeline may output a double-shuffle-equivalent representative;
        # certify agreement numerically before returning the closed form
        gap = mzvmod.eval_numeric(engine.value - closed, 25)
        if abs(gap) > mp.mpf(10) ** -22:
            raise AssertionError(
                "engine %s disagrees with closed form %s" % (engine.value, closed))
    result = PeriodResult(closed, ell, engine.trace)
    result.sign = (-1) ** (ell - sum(eps))
    result.trace.append(("engine-form", engine.value.to_text()))
    return result


def integrate_beta(a13, a24) -> Fraction:
    """The weight-one cell integral of x^a24 (1-x)^a13 dx, exactly."""
    if a13 < 0 or a24 < 0:
        raise NonConvergentError("exponents must be non-negative")
    m = DihedralMonomial.of(4, {(1, 3): a13, (2, 4): a24})
    result = integrate_cell(m, check_positive=False)
    value = result.value
    if set(value.terms) - {()}:
        raise AssertionError("beta integral must be rational: %s" % value)
    got = value.constant_term()
    expect = (Fraction(_factorial(a13) * _factorial(a24),
                       _factorial(a13 + a24 + 1)))
    if got != expect:
        raise AssertionError("beta mismatch: %s vs %s" % (got, expect))
    return got


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def integrate_polylog(e: PolylogExpr, n, keep_trace=True) -> PeriodResult:
    """Integral of a polylogarithm against the canonical cell form."""
    g = DihedralNGon(n)
    ell = g.ell
    if e.nslots != ell:
        raise ValueError("expression has %d slots, cell needs %d"
                         % (e.nslots, ell))
    k = e.weight()
    integrand = multiply(e, PolylogExpr.from_rational(_omega_rational(ell)))
    trace = [] if keep_trace else None
    try:
        value = _run_pipeline(integrand, trace)
    except (PoleRequiredError, DivergentRestrictionError,
            LogDivergenceError) as exc:
        raise NonConvergentError(str(exc)) from exc
    if value.weight() > ell + k:
        raise AssertionError("weight bound %d violated" % (ell + k))
    return PeriodResult(value, ell + k, trace or [])


def log_u_expression(n, c: Chord) -> PolylogExpr:
    """log u_c in the canonical basis: a sum of single-letter words."""
    ell = DihedralNGon(n).ell
    total = PolylogExpr.zero(ell)
    for atom, e in u_factorization(n, c.i, c.j).powers.items():
        if atom[0] == 'x':
            w = PolylogExpr.single_word(ell, atom[1], (0,))
        else:
            i, j = atom[1], atom[2]
            w = PolylogExpr.single_word(ell, j, (i,))
        total = total + w.scale(Fraction(e))
    return total


def taylor_multibeta(m: DihedralMonomial, order):
    """Taylor coefficients of the exponent-deformed cell integral.

    Returns a map from multi-indices kappa (tuples of ((i,j), power)) to
    the coefficient of prod (s_ij - alpha_ij)^kappa_ij / kappa_ij!, i.e.
    the integral of u^alpha * prod log^kappa(u_ij) * omega.
    """
    if order < 0 or order > 3:
        raise LimitsExceededError("expansion order is capped at 3")
    if not convergence_check(m):
        raise NonConvergentError("negative exponent")
    n = m.n
    ell = m.g.ell
    base = PolylogExpr.from_rational(
        CubicalRational.from_atom_powers(
            ell, {a: e for a, e in _alpha_atom_powers(m).items()}))
    out = {}
    for kappa in _multi_indices(chords(m.g), order):
        e = base
        for c, p in kappa:
            lg = log_u_expression(n, c)
            for _ in range(p):
                e = multiply(e, lg)
        out[kappa] = integrate_polylog(e, n, keep_trace=False).value
    return out


def _alpha_atom_powers(m: DihedralMonomial):
    from .dihedral import AtomProduct
    fac = AtomProduct()
    for c, e in m.alpha:
        fac = fac * u_factorization(m.n, c.i, c.j) ** e
    return fac.powers


def _multi_indices(chord_list, order):
    out = [()]
    def extend(start, left, acc):
        for idx in range(start, len(chord_list)):
            for p in range(1, left + 1):
                item = acc + ((chord_list[idx], p),)
                out.append(item)
                extend(idx + 1, left - p, item)
    extend(0, order, ())
    return out
