"""Numpy implementations of the GF(q) kernels.

Every function takes the field as ``(p, exp, log)``: characteristic plus the
exp/log tables of :mod:`adtnc.galois`.  Matrices are int64 arrays of element
codes.  Inputs are never modified.
"""

from __future__ import annotations

import numpy as np


def _scale(row, c, p, exp, log):
    if c == 0:
        return np.zeros_like(row)
    out = exp[log[row] + log[c]]
    return np.where(row == 0, 0, out)


def _axpy(y, c, x, p, exp, log):
    """y - c*x."""
    cx = _scale(x, c, p, exp, log)
    if p == 2:
        return y ^ cx
    return (y - cx) % p


def _inv(a, q, exp, log):
    return exp[(q - 1 - log[a]) % (q - 1)]


def rref(a, p, exp, log):
    """Reduced row echelon form; returns ``(reduced, pivot_columns, det_factor)``.

    ``det_factor`` is the product of pivots times the sign of the row
    permutation, so for a square nonsingular input it equals the determinant.
    """
    m = np.array(a, dtype=np.int64, copy=True)
    rows, cols = m.shape
    q = len(log)
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
            if p != 2:
                det = (-det) % p
        piv = int(m[r, c])
        det = int(exp[log[det] + log[piv]]) if det else 0
        m[r] = _scale(m[r], int(_inv(piv, q, exp, log)), p, exp, log)
        col = m[:, c].copy()
        col[r] = 0
        for i in np.nonzero(col)[0]:
            m[i] = _axpy(m[i], int(col[i]), m[r], p, exp, log)
        pivots.append(c)
        r += 1
    return m, pivots, det


def rank(a, p, exp, log):
    m = np.array(a, dtype=np.int64, copy=True)
    rows, cols = m.shape
    q = len(log)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = int(_inv(int(m[r, c]), q, exp, log))
        for i in range(r + 1, rows):
            v = int(m[i, c])
            if v:
                m[i] = _axpy(m[i], int(exp[log[v] + log[inv]]), m[r], p, exp, log)
        r += 1
    return r


def det(a, p, exp, log):
    n, n2 = a.shape
    if n != n2:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    reduced, pivots, d = rref(a, p, exp, log)
    return d if len(pivots) == n else 0


def matmul(a, b, p, exp, log):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        col = a[:, k]
        if not col.any():
            continue
        prod = exp[log[col][:, None] + log[b[k]][None, :]]
        prod = np.where((col[:, None] == 0) | (b[k][None, :] == 0), 0, prod)
        out = out ^ prod if p == 2 else (out + prod) % p
    return out


def transfer(f, order, p, exp, log):
    """(I - F)^-1 for F whose support is acyclic under ``order``.

    Rows are filled in reverse topological order using T = I + F T.
    """
    f = np.asarray(f, dtype=np.int64)
    n = f.shape[0]
    t = np.zeros((n, n), dtype=np.int64)
    for i in order[::-1]:
        row = np.zeros(n, dtype=np.int64)
        row[i] = 1
        for j in np.nonzero(f[i])[0]:
            c = int(f[i, j])
            cx = _scale(t[j], c, p, exp, log)
            row = row ^ cx if p == 2 else (row + cx) % p
        t[i] = row
    return t


def mincut_enum(inc, out_owner, in_owner, others, s, t, n_nodes, p, exp, log):
    """Minimum cut rank over all node partitions with s inside and t outside.

    ``inc`` is the 0/1 output-port x input-port edge incidence matrix.  Bit k
    of the enumeration mask puts ``others[k]`` on the source side.  Returns
    ``(value, mask)`` of the first minimising partition.
    """
    others = np.asarray(others, dtype=np.int64)
    best, best_mask = None, 0
    side = np.zeros(n_nodes, dtype=bool)
    for mask in range(1 << len(others)):
        side[:] = False
        side[s] = True
        for k in range(len(others)):
            if (mask >> k) & 1:
                side[others[k]] = True
        rows = side[out_owner]
        cols = ~side[in_owner]
        sub = inc[np.ix_(rows, cols)]
        r = rank(sub, p, exp, log) if sub.size else 0
        if best is None or r < best:
            best, best_mask = r, mask
            if r == 0:
                break
    return best, best_mask
