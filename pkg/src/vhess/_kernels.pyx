# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p kernels (primes below 2**63); mirrors ``_kernels_py``."""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    typedef unsigned long long vh_u64;
    static inline vh_u64 vh_mulmod(vh_u64 a, vh_u64 b, vh_u64 m) {
        return (vh_u64)(((unsigned __int128)a * b) % m);
    }
    """
    ctypedef unsigned long long vh_u64
    vh_u64 vh_mulmod(vh_u64 a, vh_u64 b, vh_u64 m) nogil


cdef inline vh_u64 _powmod(vh_u64 a, vh_u64 e, vh_u64 m) nogil:
    cdef vh_u64 r = 1
    a %= m
    while e:
        if e & 1:
            r = vh_mulmod(r, a, m)
        a = vh_mulmod(a, a, m)
        e >>= 1
    return r


cdef inline vh_u64 _submod(vh_u64 a, vh_u64 b, vh_u64 m) nogil:
    return a - b if a >= b else a + (m - b)


cdef vh_u64* _load(rows, Py_ssize_t nrows, Py_ssize_t ncols, vh_u64 p) except NULL:
    cdef vh_u64* a = <vh_u64*> malloc(nrows * ncols * sizeof(vh_u64) + 1)
    cdef Py_ssize_t i, j
    if a == NULL:
        raise MemoryError()
    for i in range(nrows):
        r = rows[i]
        if len(r) != ncols:
            free(a)
            raise ValueError("ragged matrix")
        for j in range(ncols):
            a[i * ncols + j] = <vh_u64> (r[j] % p)
    return a


def rank_mod_p(rows, p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    cdef vh_u64 m = p
    cdef vh_u64* a = _load(rows, nrows, ncols, m)
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef vh_u64 inv, f, tmp
    with nogil:
        for c in range(ncols):
            piv = -1
            for i in range(rank, nrows):
                if a[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    tmp = a[rank * ncols + j]
                    a[rank * ncols + j] = a[piv * ncols + j]
                    a[piv * ncols + j] = tmp
            inv = _powmod(a[rank * ncols + c], m - 2, m)
            for j in range(c, ncols):
                a[rank * ncols + j] = vh_mulmod(a[rank * ncols + j], inv, m)
            for i in range(rank + 1, nrows):
                f = a[i * ncols + c]
                if f:
                    for j in range(c, ncols):
                        a[i * ncols + j] = _submod(
                            a[i * ncols + j], vh_mulmod(f, a[rank * ncols + j], m), m)
            rank += 1
            if rank == nrows:
                break
    free(a)
    return rank


def det_mod_p(rows, p):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef vh_u64 m = p
    cdef vh_u64* a = _load(rows, n, n, m)
    cdef Py_ssize_t c, i, j, piv
    cdef vh_u64 det = 1, inv, f, tmp
    cdef bint zero = False
    with nogil:
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[i * n + c]:
                    piv = i
                    break
            if piv < 0:
                zero = True
                break
            if piv != c:
                for j in range(n):
                    tmp = a[c * n + j]
                    a[c * n + j] = a[piv * n + j]
                    a[piv * n + j] = tmp
                det = _submod(0, det, m)
            det = vh_mulmod(det, a[c * n + c], m)
            inv = _powmod(a[c * n + c], m - 2, m)
            for i in range(c + 1, n):
                f = vh_mulmod(a[i * n + c], inv, m)
                if f:
                    for j in range(c, n):
                        a[i * n + j] = _submod(a[i * n + j], vh_mulmod(f, a[c * n + j], m), m)
    free(a)
    return 0 if zero else int(det)


cdef class PolyBatch:
    """Polynomials packed for repeated evaluation over F_p."""

    cdef vh_u64 m
    cdef Py_ssize_t nvars, width, nterms, npolys
    cdef unsigned int* ex
    cdef vh_u64* co
    cdef Py_ssize_t* off
    cdef vh_u64* table

    def __cinit__(self, exps, coefs, offsets, Py_ssize_t nvars, Py_ssize_t maxdeg, p):
        cdef Py_ssize_t t, k
        self.ex = NULL
        self.co = NULL
        self.off = NULL
        self.table = NULL
        self.m = p
        self.nvars = nvars
        self.width = maxdeg + 1
        self.nterms = len(coefs)
        self.npolys = len(offsets) - 1
        self.ex = <unsigned int*> malloc((self.nterms * nvars + 1) * sizeof(unsigned int))
        self.co = <vh_u64*> malloc((self.nterms + 1) * sizeof(vh_u64))
        self.off = <Py_ssize_t*> malloc((self.npolys + 2) * sizeof(Py_ssize_t))
        self.table = <vh_u64*> malloc((nvars * self.width + 1) * sizeof(vh_u64))
        if not (self.ex and self.co and self.off and self.table):
            raise MemoryError()
        for t in range(self.nterms * nvars):
            self.ex[t] = exps[t]
        for t in range(self.nterms):
            self.co[t] = <vh_u64> (coefs[t] % p)
        for k in range(self.npolys + 1):
            self.off[k] = offsets[k]

    def __dealloc__(self):
        free(self.ex)
        free(self.co)
        free(self.off)
        free(self.table)

    def evaluate(self, point):
        cdef Py_ssize_t i, k, t, e
        cdef vh_u64 x, v, acc
        cdef vh_u64 m = self.m
        cdef Py_ssize_t width = self.width, nvars = self.nvars
        if len(point) != nvars:
            raise ValueError("point length mismatch")
        for i in range(nvars):
            x = <vh_u64> (point[i] % self.m)
            self.table[i * width] = 1 % m
            for k in range(1, width):
                self.table[i * width + k] = vh_mulmod(self.table[i * width + k - 1], x, m)
        out = [0] * self.npolys
        for k in range(self.npolys):
            acc = 0
            with nogil:
                for t in range(self.off[k], self.off[k + 1]):
                    v = self.co[t]
                    for i in range(nvars):
                        e = self.ex[t * nvars + i]
                        if e:
                            v = vh_mulmod(v, self.table[i * width + e], m)
                    acc = acc + v
                    if acc >= m:
                        acc -= m
            out[k] = int(acc)
        return out
