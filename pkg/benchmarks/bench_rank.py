"""Benchmark the exact rank kernels: compiled extension vs pure Python.

Builds real homology blocks (the kind the oracle eliminates) for a spread
strongly stable ideal and times rank computations over GF(2) and GF(p).
The rational path is pure Python in both configurations and is timed once
for scale.

Usage: python benchmarks/bench_rank.py [n]
"""

import sys
import time
from array import array

from extres import Ambient, MonomialIdeal, tspread_closure
from extres.cartan import _BlockComputer
from extres.fields import QQ
from extres.linalg import _rank_gf2_py, _rank_gfp_py, rank_int_sparse

try:
    from extres import _speedups
except ImportError:
    _speedups = None


def build_blocks(n):
    ambient = Ambient(n)
    seed = ambient.monomial(tuple(range(2, 2 * min(3, (n + 1) // 2) + 1, 2)))
    ideal = tspread_closure([seed], (2,) * (seed.degree - 1)) if seed.degree > 1 \
        else MonomialIdeal(ambient, [seed])
    comp = _BlockComputer(ideal, QQ, 10 ** 9)
    blocks = []
    for i in (3, 4, 5):
        for d in (i + 1, i + 2):
            rows, cols = comp.dim(i - 1, d), comp.dim(i, d)
            if rows and cols:
                blocks.append((ideal, i, d, rows, cols))
    return blocks


def assemble_sparse(ideal, i, d):
    comp = _BlockComputer(ideal, QQ, 10 ** 9)
    # reuse the oracle's assembly by probing its internals honestly: build
    # the sparse rows exactly how the rank path does
    from math import comb

    from extres.cartan import exponents_on
    from extres.exterior import sigma

    n = ideal.n
    exps = list(exponents_on(i, range(1, n + 1), n))
    exp_prev_index = {
        a: k for k, a in enumerate(exponents_on(i - 1, range(1, n + 1), n))
    }
    mus = comp.monomials(d - i)
    mu_prev_index = {m: k for k, m in enumerate(comp.monomials(d - i + 1))}
    nrows = comb(n + i - 2, i - 1) * len(mu_prev_index)
    rows = [dict() for _ in range(nrows)]
    col = 0
    for mu in mus:
        for a in exps:
            for k, ak in enumerate(a, start=1):
                if not ak:
                    continue
                kb = 1 << (k - 1)
                if kb & mu or ideal.contains_bits(kb | mu):
                    continue
                b = list(a)
                b[k - 1] -= 1
                r = mu_prev_index[kb | mu] * len(exp_prev_index) + \
                    exp_prev_index[tuple(b)]
                rows[r][col] = rows[r].get(col, 0) + (
                    -1 if sigma(kb, mu) & 1 else 1
                )
            col += 1
    return rows, col


def timeit(fn, repeats=3):
    best = None
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return value, best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    print(f"homology blocks at n={n}; times are best of 3")
    header = (
        f"{'block':>18} {'shape':>12} {'gf2 pure':>10} {'gf2 ext':>10} "
        f"{'gfp pure':>10} {'gfp ext':>10} {'qq sparse':>10}"
    )
    print(header)
    print("-" * len(header))
    p = 32003
    for ideal, i, d, nrows, ncols in build_blocks(n):
        rows, ncols2 = assemble_sparse(ideal, i, d)
        assert ncols2 == ncols
        masks = []
        for r in rows:
            m = 0
            for c, v in r.items():
                if v & 1:
                    m |= 1 << c
            masks.append(m)
        rank2, t_gf2_py = timeit(lambda: _rank_gf2_py(masks))
        if _speedups is not None:
            nwords = (ncols + 63) // 64
            span = nwords * 8

            def kernel_gf2():
                buf = bytearray(len(masks) * span)
                for k, m in enumerate(masks):
                    buf[k * span:(k + 1) * span] = m.to_bytes(span, "little")
                words = array("Q")
                words.frombytes(bytes(buf))
                return _speedups.rank_gf2_words(words, len(masks), nwords)

            rank2x, t_gf2_ext = timeit(kernel_gf2)
            assert rank2x == rank2
        else:
            t_gf2_ext = None
        dense = []
        for r in rows:
            row = [0] * ncols
            for c, v in r.items():
                row[c] = v % p
            dense.append(row)
        rankp, t_gfp_py = timeit(
            lambda: _rank_gfp_py([r[:] for r in dense], p), repeats=1
        )
        if _speedups is not None:

            def kernel_gfp():
                flat = array("q")
                for r in dense:
                    flat.extend(r)
                return _speedups.rank_gfp_dense(flat, len(dense), ncols, p)

            rankpx, t_gfp_ext = timeit(kernel_gfp)
            assert rankpx == rankp
        else:
            t_gfp_ext = None
        rankq, t_qq = timeit(lambda: rank_int_sparse(rows), repeats=1)
        assert rank2 <= rankq and rankp <= rankq  # mod-p ranks bound below

        def fmt(t):
            return f"{t * 1000:9.1f}m" if t is not None else "      n/a "

        print(
            f"  d_{i} at degree {d:>2} {nrows:>5}x{ncols:<6} "
            f"{fmt(t_gf2_py)} {fmt(t_gf2_ext)} {fmt(t_gfp_py)} "
            f"{fmt(t_gfp_ext)} {fmt(t_qq)}"
        )
    if _speedups is None:
        print("compiled kernels not built; rerun after building the extension")


if __name__ == "__main__":
    main()
