# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels: rank over GF(2) on packed bit rows and
rank over GF(p) on dense rows.  Pure-Python equivalents live in
extres.linalg; this module only speeds up the inner loops."""


from libc.stdlib cimport free, malloc


def rank_gf2_words(unsigned long long[::1] words, Py_ssize_t nrows,
                   Py_ssize_t nwords):
    """Rank of an nrows x (64*nwords) bit matrix stored row-major as
    little-endian 64-bit words.  The buffer is clobbered.

    Pivot-insertion elimination: each row is reduced against the pivot
    rows sharing its lowest set bit until it vanishes or claims a new
    pivot, so the work tracks the actual fill instead of the dense shape.
    """
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t r, w, wi, bit, piv
    cdef unsigned long long word
    cdef Py_ssize_t ncols = nwords * 64
    cdef Py_ssize_t *pivot_of_bit = <Py_ssize_t *> malloc(
        ncols * sizeof(Py_ssize_t))
    if pivot_of_bit == NULL:
        raise MemoryError()
    for bit in range(ncols):
        pivot_of_bit[bit] = -1
    cdef Py_ssize_t start
    try:
        for r in range(nrows):
            start = 0
            while True:
                wi = -1
                for w in range(start, nwords):
                    if words[r * nwords + w]:
                        wi = w
                        break
                if wi < 0:
                    break  # row reduced to zero
                start = wi  # the low bit only moves up
                word = words[r * nwords + wi]
                bit = wi * 64
                while not word & 1:
                    word >>= 1
                    bit += 1
                piv = pivot_of_bit[bit]
                if piv < 0:
                    pivot_of_bit[bit] = r
                    rank += 1
                    break
                for w in range(wi, nwords):
                    words[r * nwords + w] ^= words[piv * nwords + w]
    finally:
        free(pivot_of_bit)
    return rank


def rank_gfp_dense(long long[::1] a, Py_ssize_t nrows, Py_ssize_t ncols,
                   long long p):
    """Rank of an nrows x ncols matrix over GF(p), entries row-major in
    0..p-1 with p < 2**31.  The buffer is clobbered."""
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t c, r, k, piv
    cdef long long inv, f, v, tmp
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r * ncols + c] % p:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(ncols):
                tmp = a[rank * ncols + k]
                a[rank * ncols + k] = a[piv * ncols + k]
                a[piv * ncols + k] = tmp
        inv = _modinv(a[rank * ncols + c], p)
        for r in range(rank + 1, nrows):
            f = a[r * ncols + c] % p
            if f:
                f = f * inv % p
                for k in range(c, ncols):
                    v = (a[r * ncols + k] - f * a[rank * ncols + k]) % p
                    if v < 0:
                        v += p
                    a[r * ncols + k] = v
        rank += 1
    return rank


cdef long long _modinv(long long x, long long p):
    cdef long long result = 1
    cdef long long base = x % p
    cdef long long e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result
