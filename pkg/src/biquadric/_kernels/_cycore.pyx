# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of pycore: identical functions, C integer fast paths.

Arguments outside the 62-bit range fall back to the pure implementations
so semantics never depend on which backend is active.
"""

from libc.stdlib cimport free, malloc

from . import pycore

BACKEND = "cython"

DEF LIMIT = 4611686018427387904  # 2^62


cdef inline bint _fits(object n):
    return -LIMIT < n < LIMIT


cdef inline long long _c_valuation(long long n, long long p, long long *unit):
    cdef long long v = 0
    while n % p == 0:
        n //= p
        v += 1
    unit[0] = n
    return v


def valuation_unit(n, p):
    """(v, u) with n = p^v * u and p not dividing u.  n must be nonzero."""
    if not _fits(n):
        return pycore.valuation_unit(n, p)
    cdef long long u = 0
    cdef long long v = _c_valuation(n, p, &u)
    return v, u


cdef inline long long _c_powmod(long long base, long long e, long long m):
    cdef long long out = 1
    base %= m
    if base < 0:
        base += m
    while e:
        if e & 1:
            out = (out * base) % m
        base = (base * base) % m
        e >>= 1
    return out


cdef inline int _c_legendre(long long a, long long p):
    a %= p
    if a < 0:
        a += p
    if a == 0:
        return 0
    return 1 if _c_powmod(a, (p - 1) >> 1, p) == 1 else -1


def legendre_int(a, p):
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion."""
    if not _fits(a) or p >= 3037000499:  # p*p must stay in 63 bits
        return pycore.legendre_int(a, p)
    return _c_legendre(a, p)


def squarefree_int(n):
    """Signed squarefree part of a nonzero integer (trial division)."""
    if not _fits(n):
        return pycore.squarefree_int(n)
    cdef long long s = 1
    cdef long long m = n
    cdef long long d = 2, dd
    if m < 0:
        s = -1
        m = -m
    while d * d <= m:
        dd = d * d
        while m % dd == 0:
            m //= dd
        if m % d == 0:
            s *= d
            m //= d
        d += 1 if d == 2 else 2
    return s * m


cdef int _c_hilbert(long long a, long long b, long long place):
    cdef long long al, be, u, w, p
    cdef int s, e
    if place == 0:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    al = _c_valuation(a if a > 0 else -a, p, &u)
    be = _c_valuation(b if b > 0 else -b, p, &w)
    if a < 0:
        u = -u
    if b < 0:
        w = -w
    if p != 2:
        s = 1
        if al & 1:
            if (be & 1) and (p & 3) == 3:
                s = -s
            s *= _c_legendre(w, p)
        if be & 1:
            s *= _c_legendre(u, p)
        return s
    e = 0
    if (u & 3) == 3 and (w & 3) == 3:
        e = 1
    if (al & 1) and ((w & 7) == 3 or (w & 7) == 5):
        e ^= 1
    if (be & 1) and ((u & 7) == 3 or (u & 7) == 5):
        e ^= 1
    return -1 if e else 1


def hilbert_int(a, b, place):
    """Hilbert symbol (a,b) at a place of Q; place 0 means the real place."""
    if not _fits(a) or not _fits(b):
        return pycore.hilbert_int(a, b, place)
    return _c_hilbert(a, b, place)


def conic_soluble(a, b, p, depth):
    """Primitive solubility of z^2 = a x^2 + b y^2 modulo p^depth; see pycore."""
    cdef long long m = 1
    cdef long long i, av, bv, val
    cdef int d
    if not _fits(a) or not _fits(b):
        return pycore.conic_soluble(a, b, p, depth)
    for d in range(depth):
        if m > LIMIT // p:
            return pycore.conic_soluble(a, b, p, depth)
        m *= p
    if m > 2147483647:  # squares table would not fit comfortably
        return pycore.conic_soluble(a, b, p, depth)
    av = a % m
    if av < 0:
        av += m
    bv = b % m
    if bv < 0:
        bv += m
    cdef unsigned char *squares = <unsigned char *> malloc(m)
    if squares == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            squares[i] = 0
        for i in range((m >> 1) + 1):
            squares[(i * i) % m] = 1
        for i in range(m):
            if squares[(av + bv * i * i) % m]:
                return True
        for i in range(m):
            if squares[(av * i * i + bv) % m]:
                return True
        return False
    finally:
        free(squares)


def isotropy_search(coeffs, bound):
    """Meet-in-the-middle zero search for a diagonal form; see pycore.

    The compiled path covers ranks up to 4 with value arithmetic kept in
    C; anything else delegates.
    """
    cdef int n = len(coeffs)
    cdef long long c0, c1, c2, c3, x0, x1, v, w, bnd
    if n < 2 or n > 4 or bound < 1 or bound > 1000000:
        return pycore.isotropy_search(coeffs, bound)
    for c in coeffs:
        if not _fits(c):
            return pycore.isotropy_search(coeffs, bound)
        # bound^2 * |c| * rank must stay far from overflow
        if abs(c) > LIMIT // (bound * bound) // 8:
            return pycore.isotropy_search(coeffs, bound)
    bnd = bound
    table = {}
    if n == 2:
        c0, c1 = coeffs[0], coeffs[1]
        for x0 in range(bnd + 1):
            v = c0 * x0 * x0
            prev = table.get(v)
            if prev is None or (prev == 0 and x0):
                table[v] = x0
        for x1 in range(bnd + 1):
            w = c1 * x1 * x1
            got = table.get(-w)
            if got is not None and (got or x1):
                return (got, x1)
        return None
    if n == 3:
        c0, c1, c2 = coeffs[0], coeffs[1], coeffs[2]
        for x0 in range(bnd + 1):
            v = c0 * x0 * x0
            prev = table.get(v)
            if prev is None or (prev == 0 and x0):
                table[v] = x0
        for x0 in range(bnd + 1):
            for x1 in range(bnd + 1):
                w = c1 * x0 * x0 + c2 * x1 * x1
                got = table.get(-w)
                if got is not None and (got or x0 or x1):
                    return (got, x0, x1)
        return None
    c0, c1, c2, c3 = coeffs[0], coeffs[1], coeffs[2], coeffs[3]
    for x0 in range(bnd + 1):
        for x1 in range(bnd + 1):
            v = c0 * x0 * x0 + c1 * x1 * x1
            prev = table.get(v)
            if prev is None or (prev == (0, 0) and (x0 or x1)):
                table[v] = (x0, x1)
    for x0 in range(bnd + 1):
        for x1 in range(bnd + 1):
            w = c2 * x0 * x0 + c3 * x1 * x1
            got = table.get(-w)
            if got is not None and (got != (0, 0) or x0 or x1):
                return got + (x0, x1)
    return None


def scan_hilbert_table(classes, local_idx, table, place):
    """Pairwise formula-vs-table comparison; see pycore."""
    cdef Py_ssize_t n = len(classes)
    cdef Py_ssize_t i, j
    cdef long long mismatches = 0
    cdef Py_ssize_t fi = -1, fj = -1
    cdef long long pl = place
    cdef long long ai
    cdef long long *cls
    cdef long long *idx
    cdef signed char *tbl
    cdef Py_ssize_t size = len(table)
    for c in classes:
        if not _fits(c):
            return pycore.scan_hilbert_table(classes, local_idx, table, place)
    cls = <long long *> malloc(n * sizeof(long long))
    idx = <long long *> malloc(n * sizeof(long long))
    tbl = <signed char *> malloc(size * size)
    if cls == NULL or idx == NULL or tbl == NULL:
        free(cls); free(idx); free(tbl)
        raise MemoryError()
    try:
        for i in range(n):
            cls[i] = classes[i]
            idx[i] = local_idx[i]
        for i in range(size):
            row = table[i]
            for j in range(size):
                tbl[i * size + j] = row[j]
        for i in range(n):
            ai = cls[i]
            for j in range(n):
                if _c_hilbert(ai, cls[j], pl) != tbl[idx[i] * size + idx[j]]:
                    if mismatches == 0:
                        fi = i
                        fj = j
                    mismatches += 1
        return mismatches, fi, fj
    finally:
        free(cls)
        free(idx)
        free(tbl)
