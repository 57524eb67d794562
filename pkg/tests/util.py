"""Shared test helpers: brute-force oracles kept independent of the
library's production code paths, and seeded random ideal generators."""

from fractions import Fraction
from itertools import combinations

from extres import Ambient, Monomial, MonomialIdeal, tspread_closure, wedge


def sigma_bruteforce(tau_indices, mu_indices) -> int:
    return sum(1 for i in tau_indices for j in mu_indices if i > j)


def colon_bruteforce(ideal: MonomialIdeal, u: Monomial):
    """All support sets w with w ^ u in I or zero, by full enumeration."""
    members = set()
    for bits in range(1 << ideal.n):
        w = Monomial(ideal.ambient, bits, 1)
        prod = wedge(w, u)
        if prod is None or ideal.contains_bits(prod.bits):
            members.add(bits)
    return members


def ideal_monomial_sets(ideal: MonomialIdeal):
    """All support sets of monomials lying in the ideal."""
    return {
        bits
        for bits in range(1 << ideal.n)
        if ideal.contains_bits(bits)
    }


def minimal_sets(sets):
    """Inclusion-minimal bit masks of a collection."""
    sets = set(sets)
    return {
        b for b in sets if not any(o != b and o & ~b == 0 for o in sets)
    }


def rank_fraction_dense(rows, ncols) -> int:
    """Reference rank over the rationals: dense Fraction elimination."""
    mat = []
    for r in rows:
        row = [Fraction(0)] * ncols
        for c, v in r.items():
            row[c] = Fraction(v)
        mat.append(row)
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][c]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c]:
                f = mat[r][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def random_monomial(rng, ambient: Ambient, degree: int) -> Monomial:
    return ambient.monomial(rng.sample(range(1, ambient.n + 1), degree))


def random_monomial_ideal(rng, n: int, max_gens: int = 4) -> MonomialIdeal:
    ambient = Ambient(n)
    gens = [
        random_monomial(rng, ambient, rng.randint(1, max(1, n - 1)))
        for _ in range(rng.randint(1, max_gens))
    ]
    return MonomialIdeal(ambient, gens)


def random_tspread_seed(rng, n: int, t) -> Monomial:
    """A random t-spread monomial of degree >= 2, None-free by retry."""
    ambient = Ambient(n)
    for _ in range(200):
        degree = rng.randint(2, len(t) + 1)
        need = 1 + sum(t[: degree - 1])
        if need > n:
            continue
        idx = [rng.randint(1, n - sum(t[: degree - 1]))]
        ok = True
        for h in range(degree - 1):
            lo = idx[-1] + t[h]
            if lo > n:
                ok = False
                break
            idx.append(rng.randint(lo, n - sum(t[h + 1: degree - 1])))
        if ok:
            return ambient.monomial(idx)
    raise AssertionError(f"no t-spread seed for n={n}, t={t}")


def random_strongly_stable(rng, n: int, seeds: int = 1, max_gens=None) -> MonomialIdeal:
    t = (1,) * (n - 1)
    mons = [random_tspread_seed(rng, n, t) for _ in range(seeds)]
    ideal = tspread_closure(mons, t)
    if max_gens is not None and len(ideal) > max_gens:
        return random_strongly_stable(rng, n, seeds=1, max_gens=max_gens)
    return ideal


def random_tspread_strongly_stable(rng, n: int, t, seeds: int = 1) -> MonomialIdeal:
    mons = [random_tspread_seed(rng, n, t) for _ in range(seeds)]
    return tspread_closure(mons, t)


def stable_closure(seeds) -> MonomialIdeal:
    """Smallest stable ideal containing the seeds: close the top-index
    exchange move only (independent of the package's t-spread closure)."""
    seeds = list(seeds)
    ambient = seeds[0].ambient
    seen = set()
    queue = [s.bits for s in seeds]
    while queue:
        bits = queue.pop()
        if bits in seen or not bits:
            continue
        seen.add(bits)
        m = bits.bit_length()
        stem = bits ^ (1 << (m - 1))
        for j in range(1, m):
            jb = 1 << (j - 1)
            if stem & jb:
                continue
            cand = stem | jb
            if cand not in seen:
                queue.append(cand)
    return MonomialIdeal(ambient, [Monomial(ambient, b, 1) for b in seen])


def random_stable(rng, n: int, seeds: int = 1) -> MonomialIdeal:
    ambient = Ambient(n)
    mons = [
        random_monomial(rng, ambient, rng.randint(1, max(2, n // 2)))
        for _ in range(seeds)
    ]
    return stable_closure(mons)


def all_monomials(ambient: Ambient, degree=None):
    if degree is None:
        return [Monomial(ambient, b, 1) for b in range(1 << ambient.n)]
    return [
        ambient.monomial(c)
        for c in combinations(range(1, ambient.n + 1), degree)
    ]
