"""Exact monomial arithmetic in an exterior algebra K<e_1,...,e_n>.

A monomial is a squarefree index set mu of [n] stored as a bit mask
(bit k-1 represents the index k) together with a sign in {+1,-1}; the
empty set with sign +1 is the unit 1.  The sign rule for products is
carried by the crossing count sigma(tau, mu) = #{(i,j) : i in tau,
j in mu, i > j}, so e_tau e_mu = (-1)^sigma(tau,mu) e_{tau cup mu} when
the supports are disjoint and 0 otherwise.

n is capped at 63 so a single machine-word-sized bit mask always
suffices; raising the cap is a non-goal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

MAX_VARIABLES = 63


class AmbientMismatchError(ValueError):
    """Objects from ambients with different n were mixed."""


class DivisibilityError(ValueError):
    """Quotient of monomials whose supports are not nested."""


class ParseError(ValueError):
    """Malformed monomial or ideal text."""


@dataclass(frozen=True)
class Ambient:
    """The exterior algebra on n variables; everything hangs off this."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_VARIABLES:
            raise ValueError(f"need 1 <= n <= {MAX_VARIABLES}, got {self.n!r}")

    def unit(self) -> "Monomial":
        return Monomial(self, 0, 1)

    def variable(self, k: int) -> "Monomial":
        return self.monomial((k,))

    def monomial(self, indices, sign: int = 1) -> "Monomial":
        """Monomial on the given (distinct) indices, 1-based."""
        bits = 0
        for k in indices:
            if not 1 <= k <= self.n:
                raise ValueError(f"index {k} out of range 1..{self.n}")
            b = 1 << (k - 1)
            if bits & b:
                raise ValueError(f"repeated index {k}")
            bits |= b
        return Monomial(self, bits, sign)

    def from_bits(self, bits: int, sign: int = 1) -> "Monomial":
        return Monomial(self, bits, sign)

    def support_sets(self, degree=None):
        """All index sets as bit masks, every degree or one fixed degree."""
        if degree is None:
            return range(1 << self.n)
        return (
            bits_of(c) for c in combinations(range(1, self.n + 1), degree)
        )


def bits_of(indices) -> int:
    bits = 0
    for k in indices:
        bits |= 1 << (k - 1)
    return bits


def indices_of(bits: int) -> tuple:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)


def sigma(tau: int, mu: int) -> int:
    """Number of crossings: pairs (i, j) with i in tau, j in mu, i > j."""
    total = 0
    t = tau
    while t:
        low = t & -t
        total += (mu & (low - 1)).bit_count()
        t ^= low
    return total


@dataclass(frozen=True)
class Monomial:
    """A signed squarefree monomial; immutable and hashable."""

    ambient: Ambient
    bits: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.bits < 0 or self.bits >> self.ambient.n:
            raise ValueError(
                f"support {self.bits:#x} out of range for n={self.ambient.n}"
            )

    @property
    def degree(self) -> int:
        return self.bits.bit_count()

    @property
    def support(self) -> tuple:
        return indices_of(self.bits)

    @property
    def maxindex(self) -> int:
        """m(u): the largest index in the support, 0 for the unit."""
        return self.bits.bit_length()

    @property
    def is_unit(self) -> bool:
        return self.bits == 0

    def abs(self) -> "Monomial":
        return self if self.sign == 1 else Monomial(self.ambient, self.bits, 1)

    def __neg__(self) -> "Monomial":
        return Monomial(self.ambient, self.bits, -self.sign)

    def __str__(self):
        body = "*".join(f"e{k}" for k in self.support) if self.bits else "1"
        return body if self.sign == 1 else "-" + body

    def __repr__(self):
        return f"Monomial({self})"


def _check_ambients(u: Monomial, v: Monomial):
    if u.ambient.n != v.ambient.n:
        raise AmbientMismatchError(
            f"mixed ambients n={u.ambient.n} and n={v.ambient.n}"
        )


def wedge(u: Monomial, v: Monomial):
    """u ^ v; returns None when the supports intersect (the zero product)."""
    _check_ambients(u, v)
    if u.bits & v.bits:
        return None
    s = u.sign * v.sign
    if sigma(u.bits, v.bits) & 1:
        s = -s
    return Monomial(u.ambient, u.bits | v.bits, s)


def quotient(u: Monomial, v: Monomial) -> Monomial:
    """The unique signed monomial w with wedge(w, v) == u."""
    _check_ambients(u, v)
    if v.bits & ~u.bits:
        raise DivisibilityError(f"{v} does not divide {u}")
    wbits = u.bits ^ v.bits
    s = u.sign * v.sign
    if sigma(wbits, v.bits) & 1:
        s = -s
    return Monomial(u.ambient, wbits, s)


def parse_monomial(text: str, ambient: Ambient) -> Monomial:
    """Parse ``e1*e3*e4``, bracket form ``[1,3,4]`` or the unit ``1``."""
    s = text.strip()
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:].strip()
    if s == "1":
        return Monomial(ambient, 0, sign)
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unbalanced brackets in {text!r}")
        inner = s[1:-1].strip()
        parts = [p for p in inner.split(",") if p.strip()] if inner else []
    else:
        parts = s.split("*")
    indices = []
    for p in parts:
        p = p.strip()
        if p.startswith("e"):
            p = p[1:]
        if not p.isdigit():
            raise ParseError(f"bad index {p!r} in monomial {text!r}")
        indices.append(int(p))
    if not indices:
        raise ParseError(f"empty monomial {text!r}")
    try:
        return ambient.monomial(indices, sign)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


class Element:
    """A K-linear combination of monomials: map from bit masks to coefficients.

    The zero element has an empty map; no stored coefficient is zero.
    Coefficient arithmetic is delegated to a field object.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1):
        if coeff == 0:
            return cls()
        return cls({m.bits: coeff * m.sign})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get(0, 0)

    def add_into(self, other: "Element", field, scale=1):
        """In-place self += scale * other (used by matrix assembly)."""
        for bits, c in other.terms.items():
            v = field.add(self.terms.get(bits, field.zero), field.mul(scale, c))
            if field.is_zero(v):
                self.terms.pop(bits, None)
            else:
                self.terms[bits] = v

    def add_term(self, bits: int, coeff, field):
        v = field.add(self.terms.get(bits, field.zero), coeff)
        if field.is_zero(v):
            self.terms.pop(bits, None)
        else:
            self.terms[bits] = v

    def scaled(self, coeff, field) -> "Element":
        if field.is_zero(coeff):
            return Element()
        return Element({b: field.mul(coeff, c) for b, c in self.terms.items()})

    def wedge(self, other: "Element", field) -> "Element":
        out = Element()
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                if b1 & b2:
                    continue
                c = field.mul(c1, c2)
                if sigma(b1, b2) & 1:
                    c = field.neg(c)
                out.add_term(b1 | b2, c, field)
        return out

    def wedge_monomial_left(self, bits: int, coeff, field) -> "Element":
        """(coeff * e_bits) ^ self, the common case in differentials."""
        out = Element()
        for b, c in self.terms.items():
            if bits & b:
                continue
            v = field.mul(coeff, c)
            if sigma(bits, b) & 1:
                v = field.neg(v)
            out.add_term(bits | b, v, field)
        return out

    def degrees(self):
        return {b.bit_count() for b in self.terms}

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Element is not hashable")

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for bits in sorted(self.terms, key=lambda b: (b.bit_count(), indices_of(b))):
            c = self.terms[bits]
            mono = "*".join(f"e{k}" for k in indices_of(bits)) if bits else "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            elif bits == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Element({self.text()})"
