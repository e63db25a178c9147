"""Exact Hilbert-Kunz multiplicities, Frobenius Tor lengths and regularity
checks for standard graded rings over prime fields."""
from .charp import (
    FreeComplex, ModulePresentation, QuotientRing, bi_surjection_bound, frobenius_twist,
    homology_length, koszul_complex, minimal_generators, quotient_ring, resolve_ideal,
    resolve_module, tor_length,
)
from .errors import ExponentOverflow, InfiniteLength, ParseError, PreconditionError, TaskTimeout
from .field import Fp, PrimeField
from .groebner import (
    IdealHandle, ModuleGB, bracket_power, buchberger, colength, hilbert_series, is_member,
    krull_dimension, lift, normal_form, syzygies,
)
from .hilbert import HilbertSeries
from .invariants import (
    LengthSequence, LimitEstimate, cm_depth, corollary_check, ehk_sequence, extrapolate,
    inequality_suite, kunz_test, lemma_check, monomial_ehk_exact, regularity_report, ti_sequence,
)
from .matrix import PolyMatrix
from .monomials import MonomialOrder
from .polynomial import PolyRing, Polynomial
from .runner import emit, run_task
from .taskfile import TaskSpec, format_taskfile, parse_taskfile

__version__ = "0.1.0"

__all__ = [
    "Fp", "PrimeField", "MonomialOrder", "PolyRing", "Polynomial", "PolyMatrix",
    "IdealHandle", "ModuleGB", "buchberger", "normal_form", "is_member", "bracket_power",
    "colength", "krull_dimension", "hilbert_series", "syzygies", "lift", "HilbertSeries",
    "QuotientRing", "quotient_ring", "FreeComplex", "ModulePresentation", "koszul_complex",
    "minimal_generators", "resolve_ideal", "resolve_module", "frobenius_twist",
    "homology_length", "tor_length", "bi_surjection_bound",
    "LengthSequence", "LimitEstimate", "extrapolate", "ehk_sequence", "ti_sequence",
    "kunz_test", "monomial_ehk_exact", "cm_depth", "regularity_report", "inequality_suite",
    "lemma_check", "corollary_check",
    "TaskSpec", "parse_taskfile", "format_taskfile", "run_task", "emit",
    "ParseError", "PreconditionError", "InfiniteLength", "ExponentOverflow", "TaskTimeout",
]
