"""Exponent vectors, monomial orders and the packed-integer monomial codec.

Outside the Groebner engine a monomial is a plain tuple of non-negative ints.
Inside it, a (module) monomial is a single Python int laid out as::

    [ component | order key | exponents ]

The order key is a linear image of the exponent vector chosen so that integer
comparison of packed monomials *is* the monomial order (position over term for
module monomials).  Because both the order key and the exponent block are
linear in the exponents, multiplying monomials is integer addition and
divisibility is a guard-bit test on the exponent block.
"""
from __future__ import annotations

import enum
from itertools import accumulate

EXP_BITS = 64
MAX_EXPONENT = 2**63 - 1
_ORDER_BITS = 72
_COMP_MAX = 2**24


class ExponentOverflow(OverflowError):
    """An exponent left the signed 64-bit range."""


class MonomialOrder(str, enum.Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"


def check_exponents(exps, nvars: int | None = None) -> tuple[int, ...]:
    exps = tuple(exps)
    if nvars is not None and len(exps) != nvars:
        raise ValueError(f"exponent vector {exps} has arity {len(exps)}, expected {nvars}")
    for e in exps:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponents must be non-negative ints, got {exps}")
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds 2^63 - 1")
    return exps


def monomial_compare(a, b, order=MonomialOrder.DEGREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller, equal or greater than ``b``.

    Works on exponent tuples directly (variables ordered x_1 > x_2 > ...).
    """
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    order = MonomialOrder(order)
    if order is MonomialOrder.LEX:
        return (a > b) - (a < b)
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return 1 if x < y else -1
    return 0


class MonomialCodec:
    """Packs exponent vectors of a fixed arity into order-compatible ints."""

    def __init__(self, nvars: int, order=MonomialOrder.DEGREVLEX):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self.order = MonomialOrder(order)
        self.ebits = nvars * EXP_BITS
        self.cshift = self.ebits + nvars * _ORDER_BITS
        self.emask = (1 << self.ebits) - 1
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(nvars))
        self.one = self.encode((0,) * nvars)

    def encode(self, exps) -> int:
        e = 0
        for x in exps:
            e = (e << EXP_BITS) | x
        if self.order is MonomialOrder.LEX:
            fields = exps
        else:
            sums = list(accumulate(exps))
            fields = [sums[-1]] + sums[-2::-1]
        o = 0
        for f in fields:
            o = (o << _ORDER_BITS) | f
        return (o << self.ebits) | e

    def decode(self, key: int) -> tuple[int, ...]:
        e = key & self.emask
        out = []
        mask = (1 << EXP_BITS) - 1
        for i in range(self.nvars - 1, -1, -1):
            out.append((e >> (EXP_BITS * i)) & mask)
        return tuple(out)

    # -- module monomials -------------------------------------------------
    def comp_offset(self, comp: int) -> int:
        if not 0 <= comp < _COMP_MAX:
            raise ValueError(f"component index {comp} out of range")
        return (_COMP_MAX - comp) << self.cshift

    def component(self, key: int) -> int:
        return _COMP_MAX - (key >> self.cshift)

    def strip(self, key: int) -> int:
        """Drop the component field, leaving the ring monomial."""
        return key & ((1 << self.cshift) - 1)

    def divides(self, a: int, b: int) -> bool:
        """Does module monomial ``a`` divide ``b``?"""
        if (a >> self.cshift) != (b >> self.cshift):
            return False
        g = self.guard
        return (((b & self.emask) | g) - (a & self.emask)) & g == g

    def overflowed(self, key: int) -> bool:
        return bool(key & self.emask & self.guard)

    def degree(self, key: int) -> int:
        return sum(self.decode(key))

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return (a >> self.cshift << self.cshift) | self.encode(tuple(map(max, ea, eb)))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))
