"""Length sequences, limit estimates, and the regularity criteria built on them.

Every length is an exact integer and every normalized value an exact
``Fraction``; floats only appear when a report is rendered.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .charp import (
    QuotientRing, frobenius_twist, homology_length, koszul_complex, resolve_ideal,
    tor_length,
)
from .errors import PreconditionError
from .field import is_power_of
from .groebner import IdealHandle, bracket_power, colength
from .hilbert import InfiniteLength, hs_multiplicity, minimalize_monomials

log = logging.getLogger(__name__)

DEFAULT_TOL = Fraction(1, 20)
DEFAULT_N_MAX = 3


def _ideal_key(ideal: IdealHandle) -> tuple[str, ...]:
    return tuple(sorted(str(g) for g in ideal.generators))


def _memo(R: QuotientRing) -> dict:
    if not hasattr(R, "_lengths"):
        R._lengths = {}
    return R._lengths


def bracket_colength(R: QuotientRing, ideal: IdealHandle, q: int) -> int:
    """Length of R/I^[q], i.e. colength of J + (lifted I)^[q] in S."""
    key = ("colength", _ideal_key(ideal), q)
    memo = _memo(R)
    if key not in memo:
        memo[key] = colength(R.J + bracket_power(ideal, q))
    return memo[key]


def cached_tor_length(R: QuotientRing, ideal: IdealHandle, i: int, n: int) -> int:
    key = ("tor", _ideal_key(ideal), i, n)
    memo = _memo(R)
    if key not in memo:
        memo[key] = tor_length(R, ideal, i, n)
    return memo[key]


# ---------------------------------------------------------------------------
# sequences and extrapolation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LengthSequence:
    ring: str
    ideal: str
    kind: str
    p: int
    d: int
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a length sequence needs at least one term")
        if any(v < 0 for v in self.values):
            raise ValueError("lengths are non-negative")

    @property
    def n_values(self) -> tuple[int, ...]:
        return tuple(range(1, len(self.values) + 1))

    @property
    def normalized(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.p ** (n * self.d)) for n, v in zip(self.n_values, self.values))


@dataclass(frozen=True)
class LimitEstimate:
    raw_last: Fraction
    richardson: Fraction
    error_indicator: Fraction
    n_used: int

    @property
    def value(self) -> Fraction:
        return self.richardson


def extrapolate(s: LengthSequence) -> LimitEstimate:
    """Fit l_n = a p^{nd} + b p^{n(d-1)} through the last two terms and report a."""
    a = s.normalized
    N = len(a)
    if N == 1:
        return LimitEstimate(a[0], a[0], Fraction(0), 1)
    p, d = s.p, s.d
    pd1 = Fraction(p) ** (d - 1)
    num = s.values[-1] - pd1 * s.values[-2]
    den = Fraction(p) ** (N * d) - Fraction(p) ** ((N - 1) * d) * pd1
    return LimitEstimate(a[-1], Fraction(num) / den, abs(a[-1] - a[-2]), N)


def _ring_label(R: QuotientRing) -> str:
    return repr(R)


def _ideal_label(ideal: IdealHandle) -> str:
    return "(" + ", ".join(str(g) for g in ideal.generators) + ")"


def ehk_sequence(R: QuotientRing, ideal: IdealHandle | None = None, n_max: int = DEFAULT_N_MAX) -> LengthSequence:
    """l_n = length R/I^[p^n] for n = 1..n_max."""
    ideal = ideal if ideal is not None else R.maximal_ideal()
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not R.is_m_primary(ideal):
        raise PreconditionError(f"{_ideal_label(ideal)} is not primary to the maximal ideal")
    values = tuple(bracket_colength(R, ideal, R.p ** n) for n in range(1, n_max + 1))
    return LengthSequence(_ring_label(R), _ideal_label(ideal), "colength", R.p, R.dim, values)


def ti_sequence(R: QuotientRing, ideal: IdealHandle | None, i: int, n_max: int = DEFAULT_N_MAX) -> LengthSequence:
    """l_n = length Tor_i(R/I, ^{f^n}R) for n = 1..n_max."""
    ideal = ideal if ideal is not None else R.maximal_ideal()
    if i < 1:
        raise ValueError("i must be at least 1")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    values = tuple(cached_tor_length(R, ideal, i, n) for n in range(1, n_max + 1))
    return LengthSequence(_ring_label(R), _ideal_label(ideal), f"tor_{i}", R.p, R.dim, values)


def successive_differences_shrink(s: LengthSequence) -> bool:
    """|a_{n+1} - a_n| <= |a_n - a_{n-1}| along the whole sequence."""
    a = s.normalized
    diffs = [abs(a[k + 1] - a[k]) for k in range(len(a) - 1)]
    ok = all(diffs[k + 1] <= diffs[k] for k in range(len(diffs) - 1))
    if not ok:
        log.warning("normalized %s sequence of %s does not settle monotonically", s.kind, s.ring)
    return ok


# ---------------------------------------------------------------------------
# exact tests
# ---------------------------------------------------------------------------

def kunz_test(R: QuotientRing) -> bool:
    """Regular iff length R/m^[p] = p^d."""
    return bracket_colength(R, R.maximal_ideal(), R.p) == R.p ** R.dim


def monomial_ehk_exact(generators) -> Fraction:
    """e_HK of an m-primary monomial ideal of a polynomial ring.

    The volume of the region of [0, inf)^m left uncovered by the orthants
    a + [0, inf)^m, by inclusion-exclusion over generator subsets inside the
    box cut out by the pure powers.
    """
    gens = minimalize_monomials(generators)
    if not gens:
        raise PreconditionError("empty monomial ideal")
    m = len(gens[0])
    box = [None] * m
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if not support:
            return Fraction(0)
        if len(support) == 1:
            box[support[0]] = g[support[0]]
    if any(b is None for b in box):
        raise PreconditionError("monomial ideal is not primary to the maximal ideal")
    total = 1
    for b in box:
        total *= b
    covered = 0
    for k in range(1, len(gens) + 1):
        sign = 1 if k % 2 else -1
        for subset in combinations(gens, k):
            vol = 1
            for i in range(m):
                vol *= box[i] - max(g[i] for g in subset)
            covered += sign * vol
    return Fraction(total - covered)


def cm_depth(R: QuotientRing) -> tuple[int, bool]:
    """(depth R, R is Cohen-Macaulay) via Auslander-Buchsbaum over S."""
    if not hasattr(R, "_cm_depth"):
        S = QuotientRing(R.p, R.variables, ())
        J = IdealHandle(S.S, list(R.J.gb))
        C = resolve_ideal(S, J, R.nvars + 1)
        pd = max(k for k, r in enumerate(C.ranks) if r)
        depth = R.nvars - pd
        R._cm_depth = (depth, depth == R.dim)
    return R._cm_depth


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    holds: bool
    lhs: Fraction | int | None = None
    rhs: Fraction | int | None = None
    tolerance: Fraction | None = None
    note: str = ""


def _tol(tol, *estimates: LimitEstimate) -> Fraction:
    err = sum((e.error_indicator for e in estimates), Fraction(0))
    return max(Fraction(tol), 2 * err)


@dataclass
class RegularityReport:
    kunz_exact: bool
    d: int
    e_hk: LimitEstimate
    t1: LimitEstimate
    t2: LimitEstimate
    criteria: dict[str, Check]
    verdict: str
    sequences: dict[str, LengthSequence] = field(default_factory=dict)


def regularity_report(R: QuotientRing, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> RegularityReport:
    m = R.maximal_ideal()
    seqs = {
        "ehk": ehk_sequence(R, m, n_max),
        "tor_1": ti_sequence(R, m, 1, n_max),
        "tor_2": ti_sequence(R, m, 2, n_max),
    }
    e, t1, t2 = (extrapolate(seqs[k]) for k in ("ehk", "tor_1", "tor_2"))
    kunz = kunz_test(R)
    q = R.p
    criteria = {
        "kunz regular": Check("kunz regular", kunz, bracket_colength(R, m, q), q ** R.dim,
                                    note="exact: length R/m^[p] = p^d"),
    }
    tol2 = _tol(tol, t1)
    criteria["t_1 = 0"] = Check("t_1 = 0", abs(t1.value) <= tol2, t1.value, 0, tol2)
    tol3 = _tol(tol, t2)
    criteria["t_2 = 0"] = Check("t_2 = 0", abs(t2.value) <= tol3, t2.value, 0, tol3)
    tol4 = _tol(tol, e, t1)
    criteria["e_HK - 1 = t_1"] = Check("e_HK - 1 = t_1", abs(e.value - 1 - t1.value) <= tol4,
                                            e.value - 1, t1.value, tol4)
    numeric = [criteria[k].holds for k in ("t_1 = 0", "t_2 = 0", "e_HK - 1 = t_1")]
    if kunz and all(numeric):
        verdict = "regular"
    elif not kunz and not all(numeric):
        verdict = "non-regular"
    else:
        verdict = "inconclusive"
    return RegularityReport(kunz, R.dim, e, t1, t2, criteria, verdict, seqs)


@dataclass(frozen=True)
class FiniteLevelRow:
    n: int
    q: int
    colength_q: int
    tor1_k: int
    tor2_k: int
    frobenius_colength: int
    frobenius_k: int
    tor1_quotient: int
    tor1_bound: bool
    tor2_bound: bool
    tor1_gap: int
    tor2_gap: int


@dataclass
class InequalityReport:
    rows: list[FiniteLevelRow]
    estimate_checks: list[Check]
    cohen_macaulay: bool
    estimates: dict[str, LimitEstimate]
    sequences: dict[str, LengthSequence] = field(default_factory=dict)

    @property
    def all_finite_hold(self) -> bool:
        return all(r.tor1_bound and r.tor2_bound for r in self.rows)


def finite_level_row(R: QuotientRing, ideal: IdealHandle, n: int, q: int) -> FiniteLevelRow:
    """Both sides of the two finite-level inequalities at one (n, q)."""
    if not is_power_of(q, R.p):
        raise ValueError(f"{q} is not a power of {R.p}")
    m = R.maximal_ideal()
    pn = R.p ** n
    L = bracket_colength(R, ideal, q)
    t1k = cached_tor_length(R, m, 1, n)
    t2k = cached_tor_length(R, m, 2, n)
    fnI = bracket_colength(R, ideal, q * pn)
    fnk = bracket_colength(R, m, pn)
    t1I = cached_tor_length(R, bracket_power(ideal, q), 1, n)
    gap1 = (L - 1) * t1k + fnI - L * fnk
    gap2 = (L - 1) * t2k + t1I + L * fnk - (L * t1k + fnI)
    return FiniteLevelRow(n, q, L, t1k, t2k, fnI, fnk, t1I, gap1 >= 0, gap2 >= 0, gap1, gap2)


def inequality_suite(R: QuotientRing, ideal: IdealHandle | None = None, n_max: int = 2,
                     q_list=None, tol=DEFAULT_TOL, remark_bound: int = 2,
                     estimate_n_max: int | None = None) -> InequalityReport:
    """Finite-level inequalities for n <= n_max and q in q_list, plus the
    limit-level checks on estimates from sequences of length estimate_n_max
    (default n_max)."""
    ideal = ideal if ideal is not None else R.maximal_ideal()
    if not R.is_m_primary(ideal):
        raise PreconditionError(f"{_ideal_label(ideal)} is not primary to the maximal ideal")
    q_list = list(q_list) if q_list is not None else [R.p, R.p ** 2]
    rows = [finite_level_row(R, ideal, n, q) for n in range(1, n_max + 1) for q in q_list]

    m = R.maximal_ideal()
    n_est = estimate_n_max or n_max
    seqs = {"ehk": ehk_sequence(R, m, n_est)}
    for i in range(1, max(2, remark_bound) + 1):
        seqs[f"tor_{i}"] = ti_sequence(R, m, i, n_est)
    est = {k: extrapolate(s) for k, s in seqs.items()}
    e, t = est["ehk"], [None] + [est[f"tor_{i}"] for i in range(1, max(2, remark_bound) + 1)]
    _, cm = cm_depth(R)
    checks = []
    tol_a = _tol(tol, e, t[1])
    checks.append(Check("e_HK - 1 <= t_1", e.value - 1 <= t[1].value + tol_a,
                        e.value - 1, t[1].value, tol_a))
    tol_b = _tol(tol, e, t[1], t[2])
    checks.append(Check("t_1 - e_HK + 1 <= t_2", t[1].value - e.value + 1 <= t[2].value + tol_b,
                        t[1].value - e.value + 1, t[2].value, tol_b))
    for i in range(1, remark_bound + 1):
        total = sum(((-1) ** (i - j) * t[j].value for j in range(1, i + 1)), Fraction(0))
        total += (-1) ** i * e.value + (-1) ** (i + 1)
        tol_i = _tol(tol, e, *t[1:i + 1])
        checks.append(Check(f"alternating sum i={i} >= 0", total >= -tol_i, total, 0, tol_i,
                            note="" if cm else "informational: ring is not Cohen-Macaulay"))
    return InequalityReport(rows, checks, cm, est, seqs)


@dataclass
class LemmaReport:
    tor1: LengthSequence
    koszul_h1: LengthSequence
    bound_holds: list[bool]
    tor_trend_to_zero: bool
    koszul_trend_to_zero: bool


def _trends_down(s: LengthSequence) -> bool:
    a = s.normalized
    return all(v == 0 for v in a) or a[-1] < a[0]


def lemma_check(R: QuotientRing, sop, n_max: int = DEFAULT_N_MAX) -> LemmaReport:
    """Tor_1 against Frobenius for an ideal generated by a system of parameters."""
    sop = [R.S.parse(f) if isinstance(f, str) else f for f in sop]
    if len(sop) != R.dim:
        raise PreconditionError(f"a system of parameters needs {R.dim} elements, got {len(sop)}")
    for f in sop:
        if not f.is_homogeneous() or f.is_constant():
            raise PreconditionError(f"{f} is not a homogeneous element of positive degree")
    ideal = IdealHandle(R.S, sop)
    if not R.is_m_primary(ideal):
        raise PreconditionError(f"{_ideal_label(ideal)} is not primary to the maximal ideal")
    tor = ti_sequence(R, ideal, 1, n_max)
    K = koszul_complex(R, sop)
    h1 = tuple(homology_length(frobenius_twist(K, R.p ** n), 1) for n in range(1, n_max + 1))
    kos = LengthSequence(_ring_label(R), _ideal_label(ideal), "koszul_h1", R.p, R.dim, h1)
    bound = [a >= b for a, b in zip(kos.values, tor.values)]
    return LemmaReport(tor, kos, bound, _trends_down(tor), _trends_down(kos))


@dataclass
class CorollaryReport:
    skipped: bool
    notice: str
    depth: int
    dim: int
    multiplicity: int | None = None
    e_hk: LimitEstimate | None = None
    t1: LimitEstimate | None = None
    bound: Check | None = None
    implied_t1_lower: Fraction | None = None


def corollary_check(R: QuotientRing, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> CorollaryReport:
    """e_HK - 1 <= ((e - 1)/e) t_1 for Cohen-Macaulay R; skipped otherwise."""
    depth, cm = cm_depth(R)
    if not cm:
        return CorollaryReport(True, f"skipped: ring is not Cohen-Macaulay (depth {depth} < dim {R.dim})",
                               depth, R.dim)
    e = hs_multiplicity(R.hilbert_series())
    m = R.maximal_ideal()
    ehk = extrapolate(ehk_sequence(R, m, n_max))
    t1 = extrapolate(ti_sequence(R, m, 1, n_max))
    rhs = Fraction(e - 1, e) * t1.value
    tolc = _tol(tol, ehk, t1)
    bound = Check("e_HK - 1 <= ((e-1)/e) t_1", ehk.value - 1 <= rhs + tolc, ehk.value - 1, rhs, tolc)
    implied = Fraction(e, e - 1) * (ehk.value - 1) if e > 1 else None
    return CorollaryReport(False, "", depth, R.dim, e, ehk, t1, bound, implied)


__all__ = [
    "LengthSequence", "LimitEstimate", "extrapolate", "ehk_sequence", "ti_sequence",
    "kunz_test", "monomial_ehk_exact", "cm_depth", "regularity_report", "RegularityReport",
    "inequality_suite", "InequalityReport", "finite_level_row", "lemma_check", "LemmaReport",
    "corollary_check", "CorollaryReport", "Check", "successive_differences_shrink",
    "bracket_colength", "InfiniteLength",
]
