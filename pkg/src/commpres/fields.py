"""Exact scalars: arbitrary-precision rationals and prime fields.

Rational scalars are plain :class:`fractions.Fraction` values; prime-field
scalars are :class:`PrimeScalar` instances that carry their modulus.  Both
kinds support the ordinary arithmetic operators, so all code downstream is
generic over the field.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeScalar:
    """An element of F_p, normalized to 0 <= value < p.

    Arithmetic mixes freely with Python ints; equality is strict (only
    another PrimeScalar of the same modulus compares equal).
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, PrimeScalar):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p} scalars")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(v - self.value, self.p)

    def __mul__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._lift(other)
        if v is None:
            return NotImplemented
        return PrimeScalar(v * pow(self.value, -1, self.p), self.p)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return PrimeScalar(pow(pow(self.value, -1, self.p), -exponent, self.p), self.p)
        return PrimeScalar(pow(self.value, exponent, self.p), self.p)

    def __neg__(self):
        return PrimeScalar(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        return (
            isinstance(other, PrimeScalar)
            and other.p == self.p
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class Field:
    """The rationals (p is None) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def size(self) -> int | None:
        """Number of elements, or None for the rationals."""
        return self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else PrimeScalar(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.p is None else PrimeScalar(1, self.p)

    def of(self, n) -> Fraction | PrimeScalar:
        """Embed an integer (or Fraction, over Q) into the field."""
        if self.p is None:
            return Fraction(n)
        if isinstance(n, PrimeScalar):
            if n.p != self.p:
                raise ValueError(f"scalar lives in F_{n.p}, not F_{self.p}")
            return n
        if not isinstance(n, int):
            raise TypeError(f"cannot embed {n!r} into F_{self.p}")
        return PrimeScalar(n, self.p)

    def contains(self, s) -> bool:
        if self.p is None:
            return isinstance(s, Fraction)
        return isinstance(s, PrimeScalar) and s.p == self.p

    def elements(self):
        """All scalars, in residue order.  Prime fields only."""
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return [PrimeScalar(v, self.p) for v in range(self.p)]

    def random(self, rng):
        if self.p is None:
            return Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        return PrimeScalar(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng):
        while True:
            s = self.random(rng)
            if s:
                return s

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"


RATIONALS = Field()


def rationals() -> Field:
    return RATIONALS


def prime_field(p: int) -> Field:
    return Field(p)
