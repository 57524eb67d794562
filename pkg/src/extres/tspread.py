"""t-spread monomials and t-spread strongly stable ideals.

A monomial e_{i_1} ... e_{i_l} (indices increasing) is t-spread for
t = (t_1, ..., t_{d-1}) when i_{j+1} - i_j >= t_j for every j; t = (1,...,1)
imposes nothing beyond squarefreeness, so every monomial ideal is 1-spread
and the 1-spread strongly stable ideals are the ordinary strongly stable
ones.  The class is closed under the exchange moves that keep the spread
condition, and membership of all exchanged generators is exactly the
strongly stable test relative to t.

For such ideals the lexicographic order on the generators (largest first;
a flag flips the direction) has linear quotients, and set(u) for
u = e_{j_1} ... e_{j_l} is the interval [m(u)] with the gaps
[j_h + 1, j_h + t_h - 1] removed, of size m(u) - sum (t_h - 1).  That
closed description feeds the specialized Betti formula.
"""

from __future__ import annotations

from collections import deque
from functools import cmp_to_key
from math import comb

from .betti import BettiTable
from .exterior import Monomial, indices_of
from .ideals import (
    LinearQuotientOrder,
    MonomialIdeal,
    check_linear_quotients,
)


class TSpreadError(ValueError):
    pass


def ones(length: int) -> tuple:
    return (1,) * length


def validate_t(t) -> tuple:
    t = tuple(int(x) for x in t)
    if len(t) < 1:
        raise TSpreadError("t must have at least one entry (d >= 2)")
    if any(x < 0 for x in t):
        raise TSpreadError("t entries must be nonnegative")
    return t


def is_tspread(u: Monomial, t) -> bool:
    """Gap test on the support; monomials of degree above len(t)+1 have
    no threshold defined and are rejected."""
    t = validate_t(t)
    supp = u.support
    if len(supp) > len(t) + 1:
        raise TSpreadError(
            f"degree {len(supp)} monomial exceeds the spread vector "
            f"(d = {len(t) + 1})"
        )
    return all(supp[j + 1] - supp[j] >= t[j] for j in range(len(supp) - 1))


def is_tspread_ideal(ideal: MonomialIdeal, t) -> bool:
    return all(is_tspread(g, t) for g in ideal.gens)


def _exchanges(bits: int, t):
    """All t-spread results of swapping one index j for a smaller i."""
    supp = indices_of(bits)
    for j in supp:
        stem = bits ^ (1 << (j - 1))
        for i in range(1, j):
            ib = 1 << (i - 1)
            if stem & ib:
                continue
            cand = stem | ib
            if _bits_tspread(cand, t):
                yield cand


def _bits_tspread(bits: int, t) -> bool:
    supp = indices_of(bits)
    if len(supp) > len(t) + 1:
        return False
    return all(supp[j + 1] - supp[j] >= t[j] for j in range(len(supp) - 1))


def is_tspread_strongly_stable(ideal: MonomialIdeal, t) -> bool:
    """Exchange closure relative to t, checked on the generators (which
    suffices).  Raises if some generator is not itself t-spread."""
    t = validate_t(t)
    for g in ideal.gens:
        if not is_tspread(g, t):
            raise TSpreadError(f"generator {g} is not t-spread for t={t}")
    for g in ideal.gen_bits:
        for cand in _exchanges(g, t):
            if not ideal.contains_bits(cand):
                return False
    return True


def tspread_closure(seeds, t) -> MonomialIdeal:
    """Smallest t-spread strongly stable ideal containing the seeds.

    Breadth-first fixed point of the exchange move with memoization on
    support sets; exchanges strictly decrease supports lexicographically,
    so this terminates, and the result passes the predicate by
    construction.
    """
    t = validate_t(t)
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed monomial")
    ambient = seeds[0].ambient
    for s in seeds:
        if not is_tspread(s, t):
            raise TSpreadError(f"seed {s} is not t-spread for t={t}")
    seen = set()
    queue = deque(s.bits for s in seeds)
    while queue:
        bits = queue.popleft()
        if bits in seen:
            continue
        seen.add(bits)
        for cand in _exchanges(bits, t):
            if cand not in seen:
                queue.append(cand)
    return MonomialIdeal(ambient, [Monomial(ambient, b, 1) for b in seen])


def set_E_formula(u: Monomial, t) -> int:
    """set(u) for a generator of a t-spread strongly stable ideal, as a
    bit mask: [m(u)] minus the gap intervals [j_h + 1, j_h + t_h - 1]."""
    t = validate_t(t)
    supp = u.support
    if len(supp) > len(t) + 1:
        raise TSpreadError(
            f"degree {len(supp)} monomial exceeds the spread vector"
        )
    m = u.maxindex
    mask = (1 << m) - 1
    for h in range(len(supp) - 1):
        lo = supp[h] + 1
        hi = supp[h] + t[h] - 1
        for k in range(lo, min(hi, m) + 1):
            mask &= ~(1 << (k - 1))
    return mask


def betti_tspread(ideal: MonomialIdeal, t, i_max: int, j_max=None) -> BettiTable:
    """Graded Betti numbers of a t-spread strongly stable ideal from the
    closed formula beta_{i,i+j} = sum C(m(u) - sum(t_h - 1) + i - 1, i)."""
    t = validate_t(t)
    if not is_tspread_strongly_stable(ideal, t):
        raise TSpreadError(f"{ideal} is not t-spread strongly stable for t={t}")
    entries = {}
    for u in ideal.gens:
        d = u.degree
        shift = u.maxindex - sum(t[h] - 1 for h in range(d - 1))
        for i in range(i_max + 1):
            j = i + d
            if j_max is not None and j > j_max:
                break
            entries[(i, j)] = entries.get((i, j), 0) + comb(shift + i - 1, i)
    return BettiTable(entries, i_max, j_max)


def _lex_cmp(ubits: int, vbits: int) -> int:
    """Pure lexicographic comparison (e_1 > e_2 > ...): the monomial
    owning the smallest differing index is the larger one."""
    if ubits == vbits:
        return 0
    low = (ubits ^ vbits) & -(ubits ^ vbits)
    return 1 if ubits & low else -1


def lex_order(gens, increasing: bool = False):
    """Generators sorted in pure lexicographic order, largest first by
    default (the direction validated against the worked examples)."""
    key = cmp_to_key(lambda a, b: _lex_cmp(a.bits, b.bits))
    return tuple(sorted(gens, key=key, reverse=not increasing))


def lex_lq_order(
    ideal: MonomialIdeal, t, increasing: bool = False
) -> LinearQuotientOrder:
    """The lexicographic linear-quotient order of a t-spread strongly
    stable ideal, validated; the computed set(u) must match the closed
    formula for every generator."""
    t = validate_t(t)
    if not is_tspread_strongly_stable(ideal, t):
        raise TSpreadError(f"{ideal} is not t-spread strongly stable for t={t}")
    order = lex_order(ideal.gens, increasing=increasing)
    try:
        result = check_linear_quotients(ideal, order)
    except ValueError as exc:
        raise TSpreadError(
            f"lexicographic order is unusable ({exc}); "
            "try the opposite lex direction"
        ) from None
    if not isinstance(result, LinearQuotientOrder):
        raise TSpreadError(
            f"lexicographic order failed linear quotients at {result}; "
            "try the opposite lex direction"
        )
    for u, s in zip(result.order, result.sets):
        expected = set_E_formula(u, t)
        if s != expected:
            raise TSpreadError(
                f"set({u}) = {indices_of(s)} differs from the closed formula "
                f"{indices_of(expected)}"
            )
    return result
