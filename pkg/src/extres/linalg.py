"""Exact rank and solve kernels used by the homology oracle and the
complex verifier.

Three elimination engines:

* GF(2): rows are Python-int bit masks, reduced by pivot insertion.
* GF(p): dense row elimination mod p.
* rationals: sparse integer elimination; rows are cleared of
  denominators, updates use cross-multiplication followed by a gcd
  renormalization of the row, so every division is exact and no floating
  point or Fraction churn happens in the loop.

A compiled extension (`extres._speedups`, built from Cython) provides the
GF(2) and GF(p) inner loops; at import time it is used when present and
the pure-Python code otherwise.  Set EXTRES_PURE=1 to force the fallback
(the benchmark uses this to compare both).  Results are identical either
way and the test suite cross-checks them.
"""

from __future__ import annotations

import os
import sys
from array import array
from fractions import Fraction
from math import gcd

try:  # pragma: no cover - exercised via the benchmark and parity tests
    from . import _speedups
except ImportError:  # pragma: no cover
    _speedups = None

if os.environ.get("EXTRES_PURE") == "1" or sys.byteorder != "little":
    _speedups = None

HAVE_SPEEDUPS = _speedups is not None

# GF(p) entries must fit products in a signed 64-bit word inside the kernel
_KERNEL_PRIME_LIMIT = 1 << 31


def rank_gf2(rows, ncols: int) -> int:
    """Rank over GF(2) of rows given as bit masks."""
    if HAVE_SPEEDUPS and ncols > 0:
        nrows = sum(1 for r in rows if r)
        if nrows == 0:
            return 0
        nwords = (ncols + 63) // 64
        buf = bytearray(nrows * nwords * 8)
        k = 0
        span = nwords * 8
        for r in rows:
            if r:
                buf[k * span: (k + 1) * span] = r.to_bytes(span, "little")
                k += 1
        words = array("Q")
        words.frombytes(bytes(buf))
        return _speedups.rank_gf2_words(words, nrows, nwords)
    return _rank_gf2_py(rows)


def _rank_gf2_py(rows) -> int:
    pivots = {}
    rank = 0
    for r in rows:
        while r:
            low = r & -r
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                rank += 1
                break
            r ^= p
    return rank


def rank_gfp(rows, p: int) -> int:
    """Rank over GF(p) of dense rows (lists of ints)."""
    rows = [r for r in rows if any(v % p for v in r)]
    if not rows:
        return 0
    if HAVE_SPEEDUPS and p < _KERNEL_PRIME_LIMIT:
        ncols = len(rows[0])
        flat = array("q")
        for r in rows:
            flat.extend(v % p for v in r)
        return _speedups.rank_gfp_dense(flat, len(rows), ncols, p)
    return _rank_gfp_py([list(r) for r in rows], p)


def _rank_gfp_py(rows, p: int) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if rows[r][c] % p:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c] % p, p - 2, p)
        for r in range(rank + 1, nrows):
            f = rows[r][c] % p
            if f:
                f = f * inv % p
                row = rows[r]
                for k in range(c, ncols):
                    row[k] = (row[k] - f * prow[k]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def _integerize(row: dict) -> dict:
    """Clear denominators and strip the content of a sparse row."""
    if any(isinstance(v, Fraction) for v in row.values()):
        mult = 1
        for v in row.values():
            if isinstance(v, Fraction):
                d = v.denominator
                mult = mult * d // gcd(mult, d)
        row = {c: int(v * mult) for c, v in row.items()}
    row = {c: v for c, v in row.items() if v}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def rank_int_sparse(rows) -> int:
    """Rank over the rationals of sparse rows (dicts column -> value).

    Entries may be ints or Fractions; each row is scaled to integers first
    (row scaling does not change rank).  Pivots are chosen Markowitz-style
    (sparsest column, then sparsest row, unit entries preferred) and rows
    are renormalized by their gcd after every update, which keeps the
    integers small on the incidence-like matrices this package produces.
    """
    store = {}
    colmap = {}
    for r in rows:
        r = _integerize(dict(r))
        if r:
            rid = len(store)
            store[rid] = r
            for c in r:
                colmap.setdefault(c, set()).add(rid)
    rank = 0
    while store:
        c_piv = min(colmap, key=lambda c: (len(colmap[c]), c))
        rid_piv = min(
            colmap[c_piv],
            key=lambda rid: (abs(store[rid][c_piv]) != 1, len(store[rid]), rid),
        )
        piv = store.pop(rid_piv)
        for c in piv:
            ids = colmap[c]
            ids.discard(rid_piv)
            if not ids:
                del colmap[c]
        pv = piv[c_piv]
        rank += 1
        for rid in list(colmap.get(c_piv, ())):
            row = store[rid]
            f = row[c_piv]
            merged = {}
            for c, v in row.items():
                merged[c] = pv * v
            for c, v in piv.items():
                w = merged.get(c, 0) - f * v
                if w:
                    merged[c] = w
                elif c in merged:
                    del merged[c]
            g = 0
            for v in merged.values():
                g = gcd(g, v)
            if g > 1:
                merged = {c: v // g for c, v in merged.items()}
            for c in row:
                if c not in merged:
                    ids = colmap[c]
                    ids.discard(rid)
                    if not ids:
                        del colmap[c]
            for c in merged:
                if c not in row:
                    colmap.setdefault(c, set()).add(rid)
            if merged:
                store[rid] = merged
            else:
                del store[rid]
    return rank


def rank_over(field, rows, ncols: int) -> int:
    """Rank of sparse rows (dicts column -> coefficient) over a field."""
    if field.char == 0:
        return rank_int_sparse(rows)
    p = field.char
    if p == 2:
        masks = []
        for r in rows:
            m = 0
            for c, v in r.items():
                if field.coerce(v) & 1:
                    m |= 1 << c
            masks.append(m)
        return rank_gf2(masks, ncols)
    dense = []
    for r in rows:
        if r:
            row = [0] * ncols
            for c, v in r.items():
                row[c] = field.coerce(v)
            dense.append(row)
    return rank_gfp(dense, p)


class InconsistentSystemError(ValueError):
    pass


class LinearSolver:
    """Gauss-Jordan factorization of a dense matrix over a field, reused
    across many right-hand sides (the comparison-map lifts solve one
    system per basis element in the same internal degree)."""

    def __init__(self, field, rows, ncols: int):
        self.field = field
        self.ncols = ncols
        m = len(rows)
        self.nrows = m
        r_mat = [list(r) for r in rows]
        e_mat = [[field.one if i == j else field.zero for j in range(m)]
                 for i in range(m)]
        pivots = []
        pr = 0
        for c in range(ncols):
            piv = None
            for r in range(pr, m):
                if not field.is_zero(r_mat[r][c]):
                    piv = r
                    break
            if piv is None:
                continue
            r_mat[pr], r_mat[piv] = r_mat[piv], r_mat[pr]
            e_mat[pr], e_mat[piv] = e_mat[piv], e_mat[pr]
            inv = field.inv(r_mat[pr][c])
            r_mat[pr] = [field.mul(inv, v) for v in r_mat[pr]]
            e_mat[pr] = [field.mul(inv, v) for v in e_mat[pr]]
            for r in range(m):
                if r == pr:
                    continue
                f = r_mat[r][c]
                if field.is_zero(f):
                    continue
                r_mat[r] = [
                    field.sub(a, field.mul(f, b))
                    for a, b in zip(r_mat[r], r_mat[pr])
                ]
                e_mat[r] = [
                    field.sub(a, field.mul(f, b))
                    for a, b in zip(e_mat[r], e_mat[pr])
                ]
            pivots.append((pr, c))
            pr += 1
        self.pivots = pivots
        self.transform = e_mat
        self.rank = pr

    def solve(self, b):
        """One solution of A x = b (free variables set to zero) or None."""
        field = self.field
        if len(b) != self.nrows:
            raise ValueError("right-hand side has the wrong length")
        y = []
        for row in self.transform:
            acc = field.zero
            for ev, bv in zip(row, b):
                if not field.is_zero(ev) and not field.is_zero(bv):
                    acc = field.add(acc, field.mul(ev, bv))
            y.append(acc)
        for r in range(self.rank, self.nrows):
            if not field.is_zero(y[r]):
                return None
        x = [field.zero] * self.ncols
        for r, c in self.pivots:
            x[c] = y[r]
        return x
