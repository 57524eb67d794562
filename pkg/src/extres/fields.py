"""Exact coefficient fields: the rationals and prime fields GF(p).

Field objects operate on raw values (int for GF(p), Fraction/int for the
rationals) so that hot loops avoid wrapper objects.  All arithmetic is
exact; floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


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


class RationalField:
    """The field of rational numbers, values are int or Fraction."""

    char = 0
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return x
        raise FieldError(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1, 1) / a

    def div(self, a, b):
        return Fraction(a) / b

    @staticmethod
    def is_zero(a):
        return a == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) with values stored as ints in 0..p-1."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        raise FieldError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    @staticmethod
    def is_zero(a):
        return a == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()
GF2 = PrimeField(2)


def parse_field(spec: str):
    """Parse a CLI field spec: ``gf2``, ``gfp:P`` or ``qq``."""
    s = spec.strip().lower()
    if s in ("qq", "q", "rationals"):
        return QQ
    if s == "gf2":
        return GF2
    if s.startswith("gfp:"):
        try:
            p = int(s[4:])
        except ValueError:
            raise FieldError(f"bad prime in field spec {spec!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown field spec {spec!r} (expected gf2, gfp:P or qq)")
