# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(q) kernels; same signatures and results as ``_pure``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline i64 gmul(i64 a, i64 b, const i64[::1] exp, const i64[::1] log) nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


cdef inline i64 ginv(i64 a, i64 q, const i64[::1] exp, const i64[::1] log) nogil:
    return exp[(q - 1 - log[a]) % (q - 1)]


cdef inline i64 gadd(i64 a, i64 b, i64 p) nogil:
    if p == 2:
        return a ^ b
    return (a + b) % p


cdef inline i64 gsub(i64 a, i64 b, i64 p) nogil:
    if p == 2:
        return a ^ b
    return (a - b + p) % p


cdef int _rank_inplace(i64[:, ::1] m, i64 p, i64 q,
                       const i64[::1] exp, const i64[::1] log) nogil:
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef i64 inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                tmp = m[r, j]
                m[r, j] = m[k, j]
                m[k, j] = tmp
        inv = ginv(m[r, c], q, exp, log)
        for i in range(r + 1, rows):
            if m[i, c] != 0:
                f = gmul(m[i, c], inv, exp, log)
                for j in range(c, cols):
                    if m[r, j] != 0:
                        m[i, j] = gsub(m[i, j], gmul(f, m[r, j], exp, log), p)
        r += 1
    return r


def rank(a, i64 p, const i64[::1] exp, const i64[::1] log):
    cdef i64[:, ::1] m = np.array(a, dtype=np.int64, order="C", copy=True)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return _rank_inplace(m, p, log.shape[0], exp, log)


def rref(a, i64 p, const i64[::1] exp, const i64[::1] log):
    out = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef i64[:, ::1] m = out
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef i64 q = log.shape[0]
    cdef i64 inv, f, tmp, piv
    cdef i64 d = 1
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[k, j]
                m[k, j] = tmp
            if p != 2:
                d = (p - d) % p
        piv = m[r, c]
        d = gmul(d, piv, exp, log)
        inv = ginv(piv, q, exp, log)
        for j in range(cols):
            m[r, j] = gmul(m[r, j], inv, exp, log)
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(cols):
                    if m[r, j] != 0:
                        m[i, j] = gsub(m[i, j], gmul(f, m[r, j], exp, log), p)
        pivots.append(c)
        r += 1
    return out, pivots, d


def det(a, i64 p, const i64[::1] exp, const i64[::1] log):
    n, n2 = a.shape
    if n != n2:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    reduced, pivots, d = rref(a, p, exp, log)
    return d if len(pivots) == n else 0


def matmul(a, b, i64 p, const i64[::1] exp, const i64[::1] log):
    cdef const i64[:, ::1] x = np.ascontiguousarray(a, dtype=np.int64)
    cdef const i64[:, ::1] y = np.ascontiguousarray(b, dtype=np.int64)
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    cdef i64[:, ::1] z = out
    cdef Py_ssize_t i, j, k
    cdef i64 v
    with nogil:
        for i in range(x.shape[0]):
            for k in range(x.shape[1]):
                v = x[i, k]
                if v == 0:
                    continue
                for j in range(y.shape[1]):
                    if y[k, j] != 0:
                        z[i, j] = gadd(z[i, j], gmul(v, y[k, j], exp, log), p)
    return out


def transfer(f, order, i64 p, const i64[::1] exp, const i64[::1] log):
    cdef const i64[:, ::1] fm = np.ascontiguousarray(f, dtype=np.int64)
    cdef const i64[::1] ord_ = np.ascontiguousarray(order, dtype=np.int64)
    cdef Py_ssize_t n = fm.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, ::1] t = out
    cdef Py_ssize_t idx, i, j, k
    cdef i64 c
    with nogil:
        for idx in range(ord_.shape[0] - 1, -1, -1):
            i = ord_[idx]
            t[i, i] = 1
            for j in range(n):
                c = fm[i, j]
                if c == 0:
                    continue
                for k in range(n):
                    if t[j, k] != 0:
                        t[i, k] = gadd(t[i, k], gmul(c, t[j, k], exp, log), p)
    return out


def mincut_enum(inc, out_owner, in_owner, others, Py_ssize_t s, Py_ssize_t t,
                Py_ssize_t n_nodes, i64 p, const i64[::1] exp, const i64[::1] log):
    cdef const i64[:, ::1] g = np.ascontiguousarray(inc, dtype=np.int64)
    cdef const i64[::1] oo = np.ascontiguousarray(out_owner, dtype=np.int64)
    cdef const i64[::1] io = np.ascontiguousarray(in_owner, dtype=np.int64)
    cdef const i64[::1] oth = np.ascontiguousarray(others, dtype=np.int64)
    cdef Py_ssize_t n_out = g.shape[0], n_in = g.shape[1], n_oth = oth.shape[0]
    cdef i64[:, ::1] buf = np.zeros((max(n_out, 1), max(n_in, 1)), dtype=np.int64)
    cdef unsigned char[::1] side = np.zeros(max(n_nodes, 1), dtype=np.uint8)
    cdef i64[::1] rsel = np.zeros(max(n_out, 1), dtype=np.int64)
    cdef i64[::1] csel = np.zeros(max(n_in, 1), dtype=np.int64)
    cdef i64 q = log.shape[0]
    cdef long long mask, total = 1LL << n_oth, best_mask = 0
    cdef int best = -1, r
    cdef Py_ssize_t k, nr, nc, i, j
    with nogil:
        for mask in range(total):
            for k in range(n_nodes):
                side[k] = 0
            side[s] = 1
            for k in range(n_oth):
                if (mask >> k) & 1:
                    side[oth[k]] = 1
            nr = 0
            for i in range(n_out):
                if side[oo[i]]:
                    rsel[nr] = i
                    nr += 1
            nc = 0
            for j in range(n_in):
                if not side[io[j]]:
                    csel[nc] = j
                    nc += 1
            if nr == 0 or nc == 0:
                r = 0
            else:
                for i in range(nr):
                    for j in range(nc):
                        buf[i, j] = g[rsel[i], csel[j]]
                r = _rank_inplace(buf[:nr, :nc], p, q, exp, log)
            if best < 0 or r < best:
                best = r
                best_mask = mask
                if r == 0:
                    break
    return best, best_mask
