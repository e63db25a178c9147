"""Hilbert series of monomial ideals and of graded quotient modules."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


class InfiniteLength(ArithmeticError):
    """A module that was required to have finite length does not."""


def _padd(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pshift(a, k):
    return [0] * k + list(a)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def minimalize_monomials(gens) -> tuple[tuple[int, ...], ...]:
    """Minimal generators of the monomial ideal generated by ``gens``."""
    gens = sorted(set(map(tuple, gens)), key=lambda g: (sum(g), g))
    kept: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@lru_cache(maxsize=4096)
def _numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    # gens minimal; returns K(t) with HS(S/I) = K(t) / (1 - t)^m
    if not gens:
        return (1,)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i)):
        out = [1]
        for g in gens:
            out = _padd(out, [-c for c in _pshift(out, sum(g))])
        return tuple(_trim(out))
    nvars = len(gens[0])
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    counts = [sum(1 for g in mixed if g[i]) for i in range(nvars)]
    var = max(range(nvars), key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g in mixed if g[var])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(nvars))
    plus = minimalize_monomials(list(gens) + [pivot])
    colon = minimalize_monomials(
        tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens)
    return tuple(_trim(_padd(_numerator(plus), _pshift(_numerator(colon), e))))


def monomial_hilbert_numerator(gens, nvars: int) -> tuple[int, ...]:
    gens = [tuple(g) for g in gens]
    if any(len(g) != nvars for g in gens):
        raise ValueError("generator arity mismatch")
    if any(not any(g) for g in gens):
        return ()
    return _numerator(minimalize_monomials(gens))


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^denominator`` with integer coefficients."""

    numerator: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(_trim(self.numerator)))

    @classmethod
    def of_monomial_ideal(cls, gens, nvars: int) -> "HilbertSeries":
        return cls(monomial_hilbert_numerator(gens, nvars), nvars)

    @classmethod
    def of_module(cls, component_gens, shifts, nvars: int) -> "HilbertSeries":
        """Series of ``(+)_c S(-shift_c) / M_c`` for monomial ideals ``M_c``."""
        total: list[int] = []
        for gens, s in zip(component_gens, shifts):
            if s < 0:
                raise ValueError("negative degree shifts are not supported")
            total = _padd(total, _pshift(monomial_hilbert_numerator(gens, nvars), s))
        return cls(tuple(total), nvars)

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        m = max(self.denominator, other.denominator)
        a = self._lift(m)
        b = other._lift(m)
        return HilbertSeries(tuple(_padd(a, b)), m)

    def __neg__(self):
        return HilbertSeries(tuple(-c for c in self.numerator), self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def _lift(self, m: int) -> list[int]:
        out = list(self.numerator)
        for _ in range(m - self.denominator):
            out = _padd(out, [-c for c in _pshift(out, 1)])
        return out

    def reduced(self) -> "HilbertSeries":
        num, m = list(self.numerator), self.denominator
        while m > 0 and num and sum(num) == 0:
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num, m = _trim(q), m - 1
        return HilbertSeries(tuple(num), m)

    @property
    def dimension(self) -> int:
        r = self.reduced()
        return r.denominator if r.numerator else -1

    def coefficient(self, t: int) -> int:
        """Value of the Hilbert function in degree ``t``."""
        from math import comb
        m = self.denominator
        if m == 0:
            return self.numerator[t] if 0 <= t < len(self.numerator) else 0
        return sum(c * comb(t - i + m - 1, m - 1) for i, c in enumerate(self.numerator) if i <= t)

    def length(self) -> int:
        r = self.reduced()
        if r.denominator and r.numerator:
            raise InfiniteLength(f"module has dimension {r.denominator}, not finite length")
        return sum(r.numerator)


def hs_multiplicity(h: HilbertSeries) -> int:
    r = h.reduced()
    return sum(r.numerator)


def count_standard_monomials(gens, nvars: int) -> int:
    """Number of monomials outside the monomial ideal; must be finite."""
    gens = minimalize_monomials(gens)
    bounds = [None] * nvars
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) == 1:
            i = support[0]
            bounds[i] = g[i] if bounds[i] is None else min(bounds[i], g[i])
        elif not support:
            return 0
    missing = [i for i, b in enumerate(bounds) if b is None]
    if missing:
        raise InfiniteLength(f"no pure power of variable(s) {missing} among leading terms")
    last = nvars - 1
    total = 0
    for prefix in product(*(range(b) for b in bounds[:last])):
        top = bounds[last]
        for g in gens:
            if g[last] < top and all(a <= b for a, b in zip(g[:last], prefix)):
                top = g[last]
        total += top
    return total
