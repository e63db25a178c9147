"""Multivariate polynomials over F_p and their text syntax."""
from __future__ import annotations

import re
from functools import cached_property

from .field import check_characteristic, is_power_of
from .monomials import (
    ExponentOverflow,
    MAX_EXPONENT,
    MonomialCodec,
    MonomialOrder,
    check_exponents,
)

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_FACTOR = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(.*))?\Z")


class ParseError(ValueError):
    pass


class PolyRing:
    """F_p[x_1, ..., x_m] with a fixed monomial order."""

    def __init__(self, p: int, variables, order=MonomialOrder.DEGREVLEX):
        self.p = check_characteristic(p)
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        self.variables = tuple(variables)
        if not self.variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in self.variables:
            if not _NAME.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.order = MonomialOrder(order)
        self.codec = MonomialCodec(len(self.variables), self.order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and (self.p, self.variables, self.order) == (other.p, other.variables, other.order)
        )

    def __hash__(self):
        return hash((self.p, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing(F_{self.p}[{', '.join(self.variables)}], {self.order.value})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.p, self.variables, order)

    # -- constructors -----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self.codec.one: c} if c else {})

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        exps = check_exponents(exps, self.nvars)
        coeff %= self.p
        return Polynomial(self, {self.codec.encode(exps): coeff} if coeff else {})

    def from_dict(self, terms) -> "Polynomial":
        out: dict[int, int] = {}
        enc = self.codec.encode
        for exps, c in terms.items():
            k = enc(check_exponents(exps, self.nvars))
            c = (out.get(k, 0) + c) % self.p
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return Polynomial(self, out)

    @cached_property
    def gens(self) -> tuple["Polynomial", ...]:
        m = self.nvars
        return tuple(self.monomial([int(i == j) for j in range(m)]) for i in range(m))

    def var(self, name: str) -> "Polynomial":
        return self.gens[self.variables.index(name)]

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)

    # -- text syntax --------------------------------------------------------
    def parse(self, text: str) -> "Polynomial":
        """Parse ``2*x^2*y - z^3 + 1`` style input (whitespace is ignored)."""
        s = "".join(text.split())
        if not s:
            raise ParseError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])([^+-]*)", s)
        if "".join(a + b for a, b in pieces) != s:
            raise ParseError(f"cannot parse {text!r}")
        terms: dict[tuple, int] = {}
        for sign, body in pieces:
            if not body:
                raise ParseError(f"dangling sign in {text!r}")
            coeff, exps = self._parse_term(body, text)
            if sign == "-":
                coeff = -coeff
            terms[exps] = terms.get(exps, 0) + coeff
        return self.from_dict(terms)

    def _parse_term(self, body: str, text: str):
        coeff = 1
        exps = [0] * self.nvars
        for factor in body.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ParseError(f"malformed factor {factor!r} in {text!r}")
            name, power = m.groups()
            if name not in self.variables:
                raise ParseError(f"undeclared variable {name!r} in {text!r}")
            if power is None:
                e = 1
            elif power.isdigit():
                e = int(power)
            else:
                raise ParseError(f"malformed exponent {power!r} in {text!r}")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds 2^63 - 1")
            exps[self.variables.index(name)] += e
        return coeff, tuple(exps)

    def format_monomial(self, exps) -> str:
        parts = []
        for name, e in zip(self.variables, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


class Polynomial:
    """Immutable element of a :class:`PolyRing`.

    Terms live in a dict keyed by packed monomials; :meth:`terms` gives the
    strictly descending ``(exponents, coefficient)`` view.
    """

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self._t = terms
        self._hash = None

    # -- views --------------------------------------------------------------
    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        dec = self.ring.codec.decode
        return [(dec(k), self._t[k]) for k in sorted(self._t, reverse=True)]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        dec = self.ring.codec.decode
        return {dec(k): c for k, c in self._t.items()}

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def leading_monomial(self) -> tuple[int, ...]:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        return self.ring.codec.decode(max(self._t))

    @property
    def leading_coefficient(self) -> int:
        return self._t[max(self._t)] if self._t else 0

    def degree(self) -> int:
        if not self._t:
            return -1
        return max(self.ring.codec.degree(k) for k in self._t)

    def degrees(self) -> set[int]:
        deg = self.ring.codec.degree
        return {deg(k) for k in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and self.ring.codec.one in self._t)

    def constant_term(self) -> int:
        return self._t.get(self.ring.codec.one, 0)

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._t)
        for k, c in other._t.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                del out[k]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {k: p - c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: v * c % p for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        codec, p = self.ring.codec, self.ring.p
        base = codec.one
        out: dict[int, int] = {}
        for ka, ca in self._t.items():
            for kb, cb in other._t.items():
                k = ka + kb - base
                out[k] = (out.get(k, 0) + ca * cb) % p
        for k in out:
            if codec.overflowed(k):
                raise ExponentOverflow("exponent overflow in polynomial product")
        return Polynomial(self.ring, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """``self ** q`` for q a power of p, computed termwise."""
        if not is_power_of(q, self.ring.p):
            raise ValueError(f"{q} is not a power of the characteristic {self.ring.p}")
        if q == 1:
            return self
        enc, dec = self.ring.codec.encode, self.ring.codec.decode
        out = {}
        for k, c in self._t.items():
            exps = tuple(e * q for e in dec(k))
            check_exponents(exps)
            out[enc(exps)] = c
        return Polynomial(self.ring, out)

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self.scale(pow(self.leading_coefficient, -1, self.ring.p))

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        if ring.variables != self.ring.variables or ring.p != self.ring.p:
            raise ValueError("can only change the monomial order")
        if ring.order == self.ring.order:
            return Polynomial(ring, self._t)
        return ring.from_dict(self.as_dict())

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __str__(self):
        if not self._t:
            return "0"
        p = self.ring.p
        out = []
        for exps, c in self.terms():
            s = c if c <= p // 2 else c - p
            mono = self.ring.format_monomial(exps)
            mag = abs(s)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(("-" if s < 0 else "") + body)
            else:
                out.append((" - " if s < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"
