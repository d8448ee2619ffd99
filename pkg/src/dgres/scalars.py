"""Exact coefficient fields: the rationals and prime fields F_p.

Rational scalars are `fractions.Fraction`; prime-field scalars are ints in
[0, p).  Nothing in the package ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DgresError


def _is_prime(p: int) -> bool:
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


class Field:
    """ℚ (`Field.rationals()`) or F_p (`Field.prime(p)`)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None):
        if p is not None:
            if not (2 <= p < 2**31 and _is_prime(p)):
                raise DgresError(f"modulus {p} is not a prime below 2^31")
        self.p = p

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(p)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def of_int(self, n: int):
        return n % self.p if self.p is not None else Fraction(n)

    def of_fraction(self, q: Fraction):
        if self.p is None:
            return q
        den = q.denominator % self.p
        if den == 0:
            raise DgresError(f"denominator {q.denominator} not invertible mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.p is not None:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, -1, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scalar_repr(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"
