# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the mod-p hot loops.

Mirror of qweyl._speedups_py; see that module for the conventions.  All
arithmetic fits in 64-bit signed integers for p < 2^20, far above any prime
this package is used with.
"""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"


def poly_mul(a, b, long p):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef Py_ssize_t i, j
    cdef long ai
    out = [0] * (la + lb - 1)
    cdef long* av = <long*> malloc(la * sizeof(long))
    cdef long* bv = <long*> malloc(lb * sizeof(long))
    cdef long* ov = <long*> malloc((la + lb - 1) * sizeof(long))
    try:
        for i in range(la):
            av[i] = a[i]
        for j in range(lb):
            bv[j] = b[j]
        for i in range(la + lb - 1):
            ov[i] = 0
        for i in range(la):
            ai = av[i]
            if ai:
                for j in range(lb):
                    if bv[j]:
                        ov[i + j] = (ov[i + j] + ai * bv[j]) % p
        for i in range(la + lb - 1):
            out[i] = ov[i]
    finally:
        free(av)
        free(bv)
        free(ov)
    return out


cdef void _ext_mul_raw(long* a, long* b, long* out, long n, long p, long s) noexcept:
    cdef long i, j, k
    cdef long ai
    for i in range(n):
        out[i] = 0
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                if b[j]:
                    k = i + j
                    if k < n:
                        out[k] = (out[k] + ai * b[j]) % p
                    else:
                        out[k - n] = (out[k - n] + ai * b[j] % p * s) % p


cdef void _ext_sigma_raw(long* a, long* out, long n, long p, long qk) noexcept:
    cdef long i, t = 1
    for i in range(n):
        out[i] = (a[i] * t) % p
        t = (t * qk) % p


cdef void _ext_norm_raw(long* a, long* acc, long* scratch, long* scratch2,
                        long n, long p, long s, long q) noexcept:
    # acc <- prod sigma^k(a); scratch/scratch2 are working buffers of size n
    cdef long i, k
    for i in range(n):
        acc[i] = a[i]
        scratch[i] = a[i]
    for k in range(n - 1):
        _ext_sigma_raw(scratch, scratch2, n, p, q)
        for i in range(n):
            scratch[i] = scratch2[i]
        _ext_mul_raw(acc, scratch, scratch2, n, p, s)
        for i in range(n):
            acc[i] = scratch2[i]


def ext_mul(a, b, long n, long p, long s):
    cdef long* buf = <long*> malloc(3 * n * sizeof(long))
    cdef long i
    try:
        for i in range(n):
            buf[i] = a[i]
            buf[n + i] = b[i]
        _ext_mul_raw(buf, buf + n, buf + 2 * n, n, p, s)
        return [buf[2 * n + i] for i in range(n)]
    finally:
        free(buf)


def ext_sigma(a, long n, long p, long qk):
    cdef long* buf = <long*> malloc(2 * n * sizeof(long))
    cdef long i
    try:
        for i in range(n):
            buf[i] = a[i]
        _ext_sigma_raw(buf, buf + n, n, p, qk)
        return [buf[n + i] for i in range(n)]
    finally:
        free(buf)


def ext_norm(a, long n, long p, long s, long q):
    cdef long* buf = <long*> malloc(4 * n * sizeof(long))
    cdef long i
    try:
        for i in range(n):
            buf[i] = a[i]
        _ext_norm_raw(buf, buf + n, buf + 2 * n, buf + 3 * n, n, p, s, q)
        return [buf[n + i] for i in range(n)]
    finally:
        free(buf)


def ext_norm_witness(long n, long p, long s, long q, long target, long limit):
    cdef long size = 1
    cdef long i, k
    for i in range(n):
        size *= p
        if size > 1 << 60:
            break
    cdef long stop = limit if limit < size - 1 else size - 1
    cdef long* buf = <long*> malloc(4 * n * sizeof(long))
    cdef long* b = buf
    cdef long* acc = buf + n
    cdef bint ok
    try:
        for i in range(n):
            b[i] = 0
        for k in range(stop):
            i = 0
            while True:
                b[i] += 1
                if b[i] < p:
                    break
                b[i] = 0
                i += 1
            _ext_norm_raw(b, acc, buf + 2 * n, buf + 3 * n, n, p, s, q)
            if acc[0] == target:
                ok = True
                for i in range(1, n):
                    if acc[i]:
                        ok = False
                        break
                if ok:
                    return [b[i] for i in range(n)]
        return None
    finally:
        free(buf)


def ext_norm_image(long n, long p, long s, long q, long cap):
    cdef long size = 1
    cdef long i, k
    for i in range(n):
        size *= p
    if size > cap:
        raise ValueError("ring too large for norm-image enumeration")
    cdef long* buf = <long*> malloc(4 * n * sizeof(long))
    cdef long* b = buf
    cdef long* acc = buf + n
    image = {0}
    try:
        for i in range(n):
            b[i] = 0
        for k in range(size - 1):
            i = 0
            while True:
                b[i] += 1
                if b[i] < p:
                    break
                b[i] = 0
                i += 1
            _ext_norm_raw(b, acc, buf + 2 * n, buf + 3 * n, n, p, s, q)
            for i in range(1, n):
                if acc[i]:
                    raise ArithmeticError("norm left the scalar line")
            image.add(acc[0])
        return image
    finally:
        free(buf)


def ce_mul(u, v, long n, long p, long s, long a, qpows):
    cdef long nn = n * n
    cdef long* uu = <long*> malloc(nn * sizeof(long))
    cdef long* vv = <long*> malloc(nn * sizeof(long))
    cdef long* oo = <long*> malloc(nn * sizeof(long))
    cdef long* qp = <long*> malloc(n * sizeof(long))
    cdef long i1, j1, i2, j2, ii, jj, base1, base2, obase
    cdef long c1, c2, tw, w
    try:
        for i1 in range(nn):
            uu[i1] = u[i1]
            vv[i1] = v[i1]
            oo[i1] = 0
        for i1 in range(n):
            qp[i1] = qpows[i1]
        for i1 in range(n):
            base1 = i1 * n
            for j1 in range(n):
                c1 = uu[base1 + j1]
                if not c1:
                    continue
                for i2 in range(n):
                    tw = (c1 * qp[(j1 * i2) % n]) % p
                    if not tw:
                        continue
                    base2 = i2 * n
                    ii = i1 + i2
                    if ii >= n:
                        ii -= n
                        tw = (tw * s) % p
                        if not tw:
                            continue
                    obase = ii * n
                    for j2 in range(n):
                        c2 = vv[base2 + j2]
                        if not c2:
                            continue
                        jj = j1 + j2
                        w = (tw * c2) % p
                        if jj >= n:
                            jj -= n
                            w = (w * a) % p
                        oo[obase + jj] = (oo[obase + jj] + w) % p
        return [oo[i1] for i1 in range(nn)]
    finally:
        free(uu)
        free(vv)
        free(oo)
        free(qp)
