"""Graded Betti numbers from the closed formulas, plus derived invariants.

For an ideal with linear quotients the graded Betti numbers only depend on
the sizes of the set(u):

    beta_{i,i+j}(I) = sum over u in G(I)_j of C(i + |set(u)| - 1, |set(u)| - 1),

the count of weak compositions of i into |set(u)| parts.  For stable
ideals |set(u)| = m(u) in the reverse-deglex order and the formula
specializes accordingly.  Resolutions over an exterior algebra are
infinite, so every table is an explicit truncation.

Binomials use exact big integers throughout (the growth is polynomial of
degree |set(u)|-1, which overflows machine words quickly).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ideals import (
    LinearQuotientOrder,
    MonomialIdeal,
    check_linear_quotients,
    is_stable,
    reverse_deglex_order,
)


class NotStableError(ValueError):
    pass


def weak_compositions_count(total: int, parts: int) -> int:
    """Number of tuples of `parts` nonnegative integers summing to `total`."""
    if total < 0 or parts < 1:
        raise ValueError("need total >= 0 and parts >= 1")
    return comb(total + parts - 1, parts - 1)


class BettiTable:
    """Graded Betti numbers beta_{i,j} indexed by (homological, internal)
    degree, truncated at i_max (and optionally at internal degree j_max)."""

    __slots__ = ("entries", "i_max", "j_max")

    def __init__(self, entries, i_max: int, j_max=None):
        self.entries = {k: v for k, v in entries.items() if v}
        self.i_max = i_max
        self.j_max = j_max

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total(self, i: int) -> int:
        return sum(v for (ii, _), v in self.entries.items() if ii == i)

    def totals(self) -> list:
        return [self.total(i) for i in range(self.i_max + 1)]

    def row(self, slope: int) -> list:
        """The Macaulay2 row `slope`: beta_{i, i+slope} for i = 0..i_max."""
        return [self.beta(i, i + slope) for i in range(self.i_max + 1)]

    def slopes(self) -> list:
        return sorted({j - i for (i, j) in self.entries})

    def __eq__(self, other):
        return isinstance(other, BettiTable) and other.entries == self.entries

    def __repr__(self):
        return f"BettiTable(i<= {self.i_max}, {self.entries})"

    def render_text(self) -> str:
        """Aligned text in the Macaulay2 layout: header of i, a total: row,
        then one row per slope j - i; zero cells print as '.'."""
        cols = list(range(self.i_max + 1))
        slopes = self.slopes()
        grid = [["", *[str(i) for i in cols]],
                ["total:", *[str(self.total(i)) for i in cols]]]
        for s in slopes:
            grid.append(
                [f"{s}:", *[str(v) if (v := self.beta(i, i + s)) else "."
                            for i in cols]]
            )
        widths = [max(len(r[k]) for r in grid) for k in range(len(cols) + 1)]
        return "\n".join(
            " ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
            for row in grid
        )

    def to_json_entries(self) -> list:
        return [
            {"i": i, "j": j, "beta": v}
            for (i, j), v in sorted(self.entries.items())
        ]


def betti_lq(lq: LinearQuotientOrder, i_max: int, j_max=None) -> BettiTable:
    """Betti table of I from the set-size formula for a linear-quotient
    order; exact for every homological degree in the truncation."""
    entries = {}
    for u, s in zip(lq.order, lq.sets):
        size = s.bit_count()
        d = u.degree
        for i in range(i_max + 1):
            j = i + d
            if j_max is not None and j > j_max:
                break
            entries[(i, j)] = entries.get((i, j), 0) + weak_compositions_count(
                i, size
            )
    return BettiTable(entries, i_max, j_max)


def betti_stable(ideal: MonomialIdeal, i_max: int, j_max=None) -> BettiTable:
    """Betti table of a stable ideal from the m(u) formula."""
    if not is_stable(ideal):
        raise NotStableError(f"{ideal} is not stable")
    entries = {}
    for u in ideal.gens:
        m = u.maxindex
        d = u.degree
        for i in range(i_max + 1):
            j = i + d
            if j_max is not None and j > j_max:
                break
            entries[(i, j)] = entries.get((i, j), 0) + comb(m + i - 1, m - 1)
    return BettiTable(entries, i_max, j_max)


def stable_lq_order(ideal: MonomialIdeal) -> LinearQuotientOrder:
    """The reverse-deglex linear-quotient order of a stable ideal."""
    if not is_stable(ideal):
        raise NotStableError(f"{ideal} is not stable")
    result = check_linear_quotients(ideal, reverse_deglex_order(ideal))
    if not isinstance(result, LinearQuotientOrder):
        raise NotStableError(
            f"stable ideal rejected its reverse-deglex order at {result}"
        )
    return result


@dataclass(frozen=True)
class PoincareTruncation:
    """Truncation of the double series P_I(s,t) = sum beta_{i,j} t^i s^j.

    The (i, j) coefficient is exactly the Betti table entry; the closed
    form is left to the table, this is just the series view of it.
    """

    coefficients: dict
    i_max: int
    j_max: int

    def coefficient(self, i: int, j: int) -> int:
        return self.coefficients.get((i, j), 0)

    def render_text(self) -> str:
        if not self.coefficients:
            return "0"
        by_j = {}
        for (i, j), c in sorted(self.coefficients.items()):
            by_j.setdefault(j, []).append((i, c))
        parts = []
        for j in sorted(by_j):
            terms = []
            for i, c in by_j[j]:
                if i == 0:
                    terms.append(str(c))
                else:
                    t = "t" if i == 1 else f"t^{i}"
                    terms.append(t if c == 1 else f"{c}*{t}")
            parts.append(f"({' + '.join(terms)})*s^{j}")
        return " + ".join(parts)


def poincare(lq: LinearQuotientOrder, i_max: int, j_max=None) -> PoincareTruncation:
    table = betti_lq(lq, i_max, j_max)
    jm = j_max
    if jm is None:
        jm = max((j for (_, j) in table.entries), default=0)
    return PoincareTruncation(dict(table.entries), i_max, jm)


@dataclass(frozen=True)
class CxDepth:
    """Complexity and depth of E/I; cx + depth = n.

    The depth value relies on the ground field being infinite; the flag
    records that hypothesis for reporting layers.
    """

    cx: int
    depth: int
    n: int
    depth_assumes_infinite_field: bool = True


def complexity_and_depth(lq: LinearQuotientOrder) -> CxDepth:
    """cx_E(E/I) = max |set(u)| and depth_E(E/I) = n - cx."""
    if len(lq) == 0:
        raise ValueError(
            "E/0 = E is free: complexity 0 and depth n, outside the "
            "linear-quotient formula"
        )
    cx = max(s.bit_count() for s in lq.sets)
    return CxDepth(cx=cx, depth=lq.n - cx, n=lq.n)
