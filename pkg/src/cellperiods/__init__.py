"""Exact periods of the associahedron cell in terms of multiple zeta values.

The package computes integrals of monomials in the dihedral coordinates
u_ij against the canonical cell form over the compactified cell, returning
exact rational combinations of multiple zeta values of weight at most n-3,
together with divisor/convergence analysis and independent numerical
cross-validation.
"""

from .ngon import (Chord, ChordSetError, DihedralNGon, StablePartition,
                   chords, crosses, crossing_set, cut_along_chord,
                   enumerate_partial_triangulations, forgetful_pullback,
                   stable_partition_of_chord, stable_partitions) \
    if False else None

from .ngon import (Chord, DihedralNGon, StablePartition, chords, crosses,
                   crossing_set, cut_along_chord,
                   enumerate_partial_triangulations, forgetful_pullback,
                   stable_partition_of_chord, stable_partitions)
from .dihedral import (CubicalIntegrand, DihedralMonomial, DivisorOrderReport,
                       convergence_check, divisor_table,
                       kontsevich_singular_divisors, kontsevich_to_monomial,
                       monomial_to_cubical, ord_cross_ratio, ord_form,
                       u_to_cubical, verify_complete_crossing_relation)
from .mzv import MzvCombination, shuffle_regularize, word_to_composition, \
    composition_to_word, double_shuffle_relations
from .polylog import (FiberLetter, PolylogExpr, PolylogTerm, diff,
                      eval_numeric, limit_at_origin, multiply,
                      primitive_in_slot, restrict_last_to_one)
from .integrator import (PeriodResult, integrate_beta, integrate_cell,
                         integrate_kontsevich, integrate_polylog,
                         taylor_multibeta)
from .numcheck import QuadratureReport, numeric_integrate, verify

__version__ = "1.0.0"
