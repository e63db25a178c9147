"""Prime field arithmetic.

Coefficients everywhere else in the package are plain ``int`` values kept in
``[0, p)``; :class:`PrimeField` only bundles the modulus with the few helpers
that need it.  :class:`Fp` is a small value type used at API boundaries and in
property tests.
"""
from __future__ import annotations

from dataclasses import dataclass

MAX_PRIME = 2**31 - 1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_characteristic(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"characteristic must be an int, got {p!r}")
    if not 2 <= p <= MAX_PRIME:
        raise ValueError(f"characteristic {p} outside [2, 2^31 - 1]")
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    return p


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_characteristic(self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def __call__(self, value: int) -> "Fp":
        return Fp(value % self.p, self.p)

    def __contains__(self, a) -> bool:
        return isinstance(a, Fp) and a.p == self.p


@dataclass(frozen=True, order=False)
class Fp:
    """An element of F_p."""

    value: int
    p: int

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Fp((self.value + b) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Fp((self.value - b) % self.p, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Fp((b - self.value) % self.p, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Fp(self.value * b % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value % self.p, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * Fp(b, self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return Fp(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
