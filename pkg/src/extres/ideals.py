"""Monomial ideals of the exterior algebra.

Covers minimal generating sets, membership, colon ideals by a monomial,
linear-quotient detection (with the set(u) data the Betti formulas need)
and the stable / strongly stable predicates.

The colon computation is combinatorial: for a monomial u,

    I : (u) = (e_s : s in supp u) + sum over v in G(I) of (e_{supp v \\ supp u}),

then minimalized.  In particular 0 : (u) = (supp u).  This is checked
against a brute-force membership scan in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exterior import (
    Ambient,
    Monomial,
    ParseError,
    bits_of,
    indices_of,
)


class ColonByUnitError(ValueError):
    """I : (1) is the whole ring; callers must handle this separately."""


class NotLinearQuotientsError(ValueError):
    pass


class MonomialIdeal:
    """A monomial ideal given by its minimal monomial generators.

    Generators are normalized to sign +1 and kept in insertion order after
    dropping the non-minimal ones.  The zero ideal (no generators) and the
    unit ideal (the unit monomial as sole generator) are both valid values;
    the unit ideal only ever arises from colon computations.
    """

    __slots__ = ("ambient", "gens", "gen_bits")

    def __init__(self, ambient: Ambient, gens):
        self.ambient = ambient
        bits = []
        for g in gens:
            if g.ambient.n != ambient.n:
                raise ValueError("generator from a different ambient")
            if g.bits not in bits:
                bits.append(g.bits)
        minimal = [
            b
            for b in bits
            if not any(o != b and o & ~b == 0 for o in bits)
        ]
        self.gen_bits = tuple(minimal)
        self.gens = tuple(Monomial(ambient, b, 1) for b in minimal)

    @property
    def n(self) -> int:
        return self.ambient.n

    @property
    def is_zero(self) -> bool:
        return not self.gen_bits

    @property
    def is_unit(self) -> bool:
        return 0 in self.gen_bits

    def __len__(self):
        return len(self.gen_bits)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and other.n == self.n
            and frozenset(other.gen_bits) == frozenset(self.gen_bits)
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.gen_bits)))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, {self})"

    def gens_by_degree(self) -> dict:
        out = {}
        for g in self.gens:
            out.setdefault(g.degree, []).append(g)
        return out

    def degrees(self) -> tuple:
        return tuple(sorted({g.degree for g in self.gens}))

    def contains_bits(self, bits: int) -> bool:
        return any(g & ~bits == 0 for g in self.gen_bits)

    def contains(self, u: Monomial) -> bool:
        """Membership: some generator's support is contained in supp(u)."""
        if u.ambient.n != self.n:
            raise ValueError("monomial from a different ambient")
        return self.contains_bits(u.bits)

    def colon(self, u: Monomial) -> "MonomialIdeal":
        """The colon ideal I : (u) for a monomial u."""
        if u.ambient.n != self.n:
            raise ValueError("monomial from a different ambient")
        if u.is_unit:
            raise ColonByUnitError("colon by the unit is the whole ring")
        gens = [Monomial(self.ambient, 1 << (k - 1), 1) for k in u.support]
        gens += [
            Monomial(self.ambient, g & ~u.bits, 1) for g in self.gen_bits
        ]
        return MonomialIdeal(self.ambient, gens)


def minimalize(gens) -> MonomialIdeal:
    """Build a MonomialIdeal from an arbitrary generating list."""
    gens = list(gens)
    if not gens:
        raise ValueError("cannot infer the ambient from an empty list; "
                         "use MonomialIdeal(ambient, [])")
    return MonomialIdeal(gens[0].ambient, gens)


def colon_by_monomial(ideal: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    return ideal.colon(u)


def contains(ideal: MonomialIdeal, u: Monomial) -> bool:
    return ideal.contains(u)


@dataclass(frozen=True)
class LQViolation:
    """Witness that an order fails linear quotients at step j (0-based)."""

    j: int
    offender: Monomial

    def __str__(self):
        return (
            f"colon at position {self.j + 1} needs the degree-"
            f"{self.offender.degree} generator {self.offender}"
        )


class LinearQuotientOrder:
    """A validated linear-quotient order with its set(u) data.

    sets[j] is the bit mask of set(u_{j+1}); set(u_1) = supp(u_1) and in
    the exterior algebra supp(u_j) is always contained in set(u_j).
    Degrees are non-decreasing along the order.
    """

    __slots__ = ("ideal", "order", "sets")

    def __init__(self, ideal: MonomialIdeal, order, sets):
        self.ideal = ideal
        self.order = tuple(order)
        self.sets = tuple(sets)

    @property
    def ambient(self) -> Ambient:
        return self.ideal.ambient

    @property
    def n(self) -> int:
        return self.ideal.n

    def __len__(self):
        return len(self.order)

    def set_of(self, j: int) -> tuple:
        return indices_of(self.sets[j])

    def set_sizes(self) -> tuple:
        return tuple(s.bit_count() for s in self.sets)

    def __repr__(self):
        parts = ", ".join(
            f"{u}:{{{','.join(map(str, indices_of(s)))}}}"
            for u, s in zip(self.order, self.sets)
        )
        return f"LinearQuotientOrder({parts})"


def _lq_step(prior_bits, ubits):
    """set(u) bits if the colon by u of (prior) is variable-generated, else
    an LQViolation offender bit mask."""
    singles = 0
    bigs = []
    for pb in prior_bits:
        d = pb & ~ubits
        if d.bit_count() == 1:
            singles |= d
        else:
            bigs.append(d)
    for d in bigs:
        if not d & singles:
            return None, d
    return ubits | singles, None


def check_linear_quotients(ideal: MonomialIdeal, order=None):
    """Validate an order of G(I) for linear quotients.

    Returns a LinearQuotientOrder on success and an LQViolation naming the
    first position whose colon is not variable-generated otherwise.  The
    colon checks run for any permutation of the minimal generators, but a
    passing order must also be degree increasing to yield a value (every
    ideal with linear quotients has such an order, and all the resolution
    machinery relies on it); a passing non-monotone order raises.
    """
    if ideal.is_unit:
        raise ValueError("linear quotients are not defined for the unit ideal")
    if order is None:
        order = ideal.gens
    order = tuple(m.abs() for m in order)
    if sorted(m.bits for m in order) != sorted(ideal.gen_bits):
        raise ValueError("order is not a permutation of the minimal generators")
    sets = []
    seen = []
    for j, u in enumerate(order):
        s, bad = _lq_step(seen, u.bits)
        if bad is not None:
            return LQViolation(j, Monomial(ideal.ambient, bad, 1))
        sets.append(s)
        seen.append(u.bits)
    degs = [m.degree for m in order]
    if any(a > b for a, b in zip(degs, degs[1:])):
        raise ValueError(
            "order has linear quotients but is not degree increasing; "
            "rearrange it (a degree-increasing order always exists)"
        )
    return LinearQuotientOrder(ideal, order, sets)


def find_lq_order(ideal: MonomialIdeal):
    """Search degree-increasing orders for linear quotients.

    Backtracking over each degree block, trying candidates in lexicographic
    order (by support tuple) first so results are reproducible.  Whether a
    partial order can be extended only depends on the set of generators
    already placed, so dead prefixes are memoized by that set.  Returns a
    LinearQuotientOrder or None.
    """
    if ideal.is_unit:
        raise ValueError("linear quotients are not defined for the unit ideal")
    by_deg = {}
    for g in ideal.gens:
        by_deg.setdefault(g.degree, []).append(g.bits)
    blocks = [sorted(by_deg[d], key=indices_of) for d in sorted(by_deg)]
    order_bits = []
    sets = []
    dead = set()

    def extend(block_idx, remaining):
        if block_idx == len(blocks):
            return True
        state = (block_idx, frozenset(remaining))
        if state in dead:
            return False
        if not remaining:
            return extend(block_idx + 1, tuple(blocks[block_idx + 1])
                          if block_idx + 1 < len(blocks) else ())
        for b in remaining:
            s, bad = _lq_step(order_bits, b)
            if bad is not None:
                continue
            order_bits.append(b)
            sets.append(s)
            rest = tuple(x for x in remaining if x != b)
            if extend(block_idx, rest):
                return True
            order_bits.pop()
            sets.pop()
        dead.add(state)
        return False

    start = tuple(blocks[0]) if blocks else ()
    if not extend(0, start):
        return None
    order = [Monomial(ideal.ambient, b, 1) for b in order_bits]
    return LinearQuotientOrder(ideal, order, sets)


def reverse_deglex_order(ideal: MonomialIdeal) -> tuple:
    """Generators sorted by degree, then by descending reverse-lex.

    This is the order under which stable ideals have linear quotients with
    set(u) = [m(u)].
    """
    return tuple(
        sorted(
            ideal.gens,
            key=lambda g: (g.degree, tuple(sorted(g.support, reverse=True))),
        )
    )


def is_stable(ideal: MonomialIdeal) -> bool:
    """Exchange-closed at the maximal index, checked on generators."""
    if ideal.is_unit:
        return True
    for g in ideal.gen_bits:
        if not g:
            continue
        m = g.bit_length()
        stem = g ^ (1 << (m - 1))
        for j in range(1, m):
            jb = 1 << (j - 1)
            if stem & jb:
                continue
            if not ideal.contains_bits(stem | jb):
                return False
    return True


def is_strongly_stable(ideal: MonomialIdeal) -> bool:
    """Exchange-closed at every index, checked on generators."""
    if ideal.is_unit:
        return True
    for g in ideal.gen_bits:
        for j in indices_of(g):
            stem = g ^ (1 << (j - 1))
            for i in range(1, j):
                ib = 1 << (i - 1)
                if stem & ib:
                    continue
                if not ideal.contains_bits(stem | ib):
                    return False
    return True


# ---------------------------------------------------------------------------
# text / JSON formats
#
#   n=6; gens=[1,3],[1,4],[2,4,6]          (zero ideal: "n=6; gens=")
#   {"n": 6, "gens": [[1,3],[1,4],[2,4,6]]}


def parse_ideal(text: str) -> MonomialIdeal:
    s = text.strip()
    if not s:
        raise ParseError("empty ideal description")
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON ideal: {exc}") from None
        if not isinstance(data, dict) or "n" not in data or "gens" not in data:
            raise ParseError('JSON ideal needs keys "n" and "gens"')
        ambient = Ambient(int(data["n"]))
        gens = [ambient.monomial(g) for g in data["gens"]]
        return MonomialIdeal(ambient, gens)
    parts = s.split(";")
    if len(parts) != 2:
        raise ParseError(f"expected 'n=N; gens=...', got {text!r}")
    left, right = parts[0].strip(), parts[1].strip()
    if not left.startswith("n="):
        raise ParseError(f"expected 'n=N', got {left!r}")
    try:
        n = int(left[2:])
    except ValueError:
        raise ParseError(f"bad variable count in {left!r}") from None
    ambient = Ambient(n)
    if not right.startswith("gens="):
        raise ParseError(f"expected 'gens=...', got {right!r}")
    body = right[5:].strip()
    gens = []
    for grp in _split_bracket_groups(body):
        gens.append(parse_ideal_generator(grp, ambient))
    return MonomialIdeal(ambient, gens)


def parse_ideal_generator(grp: str, ambient: Ambient) -> Monomial:
    grp = grp.strip()
    if not (grp.startswith("[") and grp.endswith("]")):
        raise ParseError(f"generator {grp!r} is not in bracket form")
    inner = grp[1:-1].strip()
    if not inner:
        raise ParseError("the unit monomial [] is not a valid generator")
    try:
        indices = [int(p) for p in inner.split(",")]
    except ValueError:
        raise ParseError(f"bad index list {grp!r}") from None
    try:
        return ambient.monomial(indices)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _split_bracket_groups(body: str):
    groups = []
    depth = 0
    cur = ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {body!r}")
        if ch == "," and depth == 0:
            if cur.strip():
                groups.append(cur)
            cur = ""
        else:
            cur += ch
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {body!r}")
    if cur.strip():
        groups.append(cur)
    return groups


def format_ideal(ideal: MonomialIdeal) -> str:
    gens = ",".join(
        "[" + ",".join(map(str, g.support)) + "]" for g in ideal.gens
    )
    return f"n={ideal.n}; gens={gens}"


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"n": ideal.n, "gens": [list(g.support) for g in ideal.gens]}


def ideal_from_support_sets(n: int, supports) -> MonomialIdeal:
    ambient = Ambient(n)
    return MonomialIdeal(
        ambient, [Monomial(ambient, bits_of(s) if not isinstance(s, int) else s, 1)
                  for s in supports]
    )
