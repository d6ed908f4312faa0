"""Dense matrices over GF(q) or GF(q)(D).

GF(q) matrices hold int64 element codes and run on the compiled kernels;
GF(q)(D) matrices hold :class:`RationalFunction` objects and run on the
generic elimination below, which also serves as an independent check of the
kernels for GF(q).  Pivot rule everywhere: first nonzero entry, scanning
rows top-down within the current column.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .galois import GF, FieldElement, RationalField
from .netmodel import CodeAssignment, Network, NetworkError, _toposort

__all__ = [
    "Matrix",
    "NotNilpotentError",
    "SingularMatrixError",
    "build_F",
    "det",
    "independent_columns",
    "inverse",
    "null_space",
    "rank",
    "transfer_matrix",
]


class SingularMatrixError(ArithmeticError):
    def __init__(self, msg: str, rank: int):
        super().__init__(msg)
        self.rank = rank


class NotNilpotentError(ValueError):
    """F has a cycle in its support; (I-F)^-1 is not a finite path sum."""


def _tables(field: GF):
    return field.p, field.exp, field.log


class Matrix:
    """Rectangular matrix whose entries share one field."""

    __slots__ = ("field", "data")

    def __init__(self, field, rows):
        self.field = field
        if isinstance(field, GF):
            if isinstance(rows, np.ndarray) and rows.dtype.kind in "iu":
                arr = np.array(rows, dtype=np.int64)
                if field.m == 1:
                    arr %= field.p
                elif arr.size and (arr.min() < 0 or arr.max() >= field.q):
                    raise ValueError(f"entries out of range for {field!r}")
            else:
                rows = [list(r) for r in rows]
                arr = np.array(
                    [[field.coerce(x) for x in r] for r in rows], dtype=np.int64
                ).reshape(len(rows), len(rows[0]) if rows else 0)
        elif isinstance(field, RationalField):
            rows = [list(r) for r in rows] if not isinstance(rows, np.ndarray) else rows
            n = len(rows)
            c = len(rows[0]) if n else 0
            arr = np.empty((n, c), dtype=object)
            for i in range(n):
                for j in range(c):
                    arr[i, j] = field(rows[i][j])
        else:
            raise TypeError(f"unsupported field {field!r}")
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def _wrap(cls, field, arr: np.ndarray) -> "Matrix":
        obj = object.__new__(cls)
        obj.field = field
        arr.setflags(write=False)
        obj.data = arr
        return obj

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        if isinstance(field, GF):
            return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(field.zero)
        return cls._wrap(field, arr)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        if isinstance(field, GF):
            return cls._wrap(field, np.eye(n, dtype=np.int64))
        arr = np.empty((n, n), dtype=object)
        arr.fill(field.zero)
        for i in range(n):
            arr[i, i] = field.one
        return cls._wrap(field, arr)

    @property
    def finite(self) -> bool:
        return isinstance(self.field, GF)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape  # type: ignore[return-value]

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, (int, np.integer)) for k in key):
            v = self.data[key]
            return FieldElement(self.field, int(v)) if self.finite else v
        sub = self.data[key]
        if sub.ndim == 1:
            sub = sub.reshape(1, -1) if isinstance(key, (int, np.integer)) else sub.reshape(-1, 1)
        return Matrix._wrap(self.field, np.array(sub))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self.field, np.array(self.data[np.ix_(list(rows), list(cols))]))

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, np.array(self.data.T))

    def _same(self, other: "Matrix"):
        if not isinstance(other, Matrix) or other.field != self.field:
            raise TypeError("matrices over different fields")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.finite:
            return Matrix._wrap(
                self.field, _kernels.matmul(self.data, other.data, *_tables(self.field))
            )
        n, k = self.shape
        c = other.shape[1]
        out = np.empty((n, c), dtype=object)
        zero = self.field.zero
        for i in range(n):
            for j in range(c):
                acc = zero
                for t in range(k):
                    a = self.data[i, t]
                    if a:
                        b = other.data[t, j]
                        if b:
                            acc = acc + a * b
                out[i, j] = acc
        return Matrix._wrap(self.field, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.finite:
            return Matrix._wrap(self.field, self.field.vadd(self.data, other.data))
        return Matrix._wrap(self.field, self.data + other.data)

    def __neg__(self) -> "Matrix":
        if self.finite:
            return Matrix._wrap(self.field, np.array(self.field.vneg(self.data)))
        return Matrix._wrap(self.field, np.vectorize(lambda x: -x, otypes=[object])(self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        if self.finite:
            return Matrix._wrap(self.field, self.field.vmul(self.data, self.field.coerce(c)))
        c = self.field(c)
        return Matrix._wrap(self.field, np.vectorize(lambda x: x * c, otypes=[object])(self.data))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.data == other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape))

    def is_zero(self) -> bool:
        if self.finite:
            return not self.data.any()
        return not any(bool(x) for x in self.data.flat)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix._wrap(self.field, np.hstack([self.data, other.data]))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix._wrap(self.field, np.vstack([self.data, other.data]))

    def tolist(self) -> list[list]:
        if self.finite:
            return self.data.tolist()
        return [[str(x) for x in row] for row in self.data]

    def to_text(self) -> str:
        """Fixed row-major text form: one row per line, entries space-separated."""
        rows = self.tolist()
        return "\n".join(" ".join(str(x) for x in r) for r in rows)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.shape[0]}x{self.shape[1]})"

    def __str__(self):
        return self.to_text()

    # -- linear algebra ---------------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def det(self):
        return det(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def rref(self) -> tuple["Matrix", list[int]]:
        if self.finite:
            red, piv, _ = _kernels.rref(self.data, *_tables(self.field))
            return Matrix._wrap(self.field, red), list(piv)
        red, piv, _ = _generic_rref(self.data, self.field.one, self.field.zero)
        return Matrix._wrap(self.field, red), piv

    def solve(self, rhs: "Matrix") -> "Matrix":
        """X with self @ X = rhs for square nonsingular self."""
        inv = inverse(self)
        return inv @ rhs

    def evaluate(self, d) -> "Matrix":
        """Substitute D = d in every rational entry."""
        if self.finite:
            return self
        base = self.field.base
        out = np.zeros(self.shape, dtype=np.int64)
        for (i, j), x in np.ndenumerate(self.data):
            out[i, j] = x(d).value
        return Matrix._wrap(base, out)

    def as_rational(self) -> "Matrix":
        """View a GF(q) matrix as constants in GF(q)(D)."""
        if not self.finite:
            return self
        rf = RationalField(self.field)
        return Matrix(rf, self.data.tolist())

    def to_elements(self) -> list[list]:
        """Entries as field-element objects (for the generic elimination path)."""
        if self.finite:
            return [[FieldElement(self.field, int(v)) for v in row] for row in self.data]
        return [list(r) for r in self.data]


def _generic_rref(data, one, zero):
    """Gauss-Jordan over any field whose elements support + - * / and bool."""
    m = [list(r) for r in data]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    det_acc = one
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if m[i][c]), None)
        if k is None:
            continue
        if k != r:
            m[r], m[k] = m[k], m[r]
            det_acc = -det_acc
        piv = m[r][c]
        det_acc = det_acc * piv
        m[r] = [x / piv if x else x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = m[i][j]
    return out, pivots, det_acc


def generic_rank(M: Matrix) -> int:
    """Rank through the object-level elimination (oracle for the kernels)."""
    one = M.field.one
    zero = M.field.zero
    _, piv, _ = _generic_rref(M.to_elements(), one, zero)
    return len(piv)


def generic_det(M: Matrix):
    n, c = M.shape
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    _, piv, d = _generic_rref(M.to_elements(), M.field.one, M.field.zero)
    return d if len(piv) == n else M.field.zero


def rank(M: Matrix) -> int:
    if M.finite:
        if 0 in M.shape:
            return 0
        return int(_kernels.rank(M.data, *_tables(M.field)))
    _, piv, _ = _generic_rref(M.data, M.field.one, M.field.zero)
    return len(piv)


def det(M: Matrix):
    n, c = M.shape
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if M.finite:
        return FieldElement(M.field, int(_kernels.det(M.data, *_tables(M.field))))
    if n == 0:
        return M.field.one
    _, piv, d = _generic_rref(M.data, M.field.one, M.field.zero)
    return d if len(piv) == n else M.field.zero


def null_space(M: Matrix) -> Matrix:
    """Basis of {x : M x = 0} as the columns of an (n x d) matrix."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return Matrix.identity(M.field, n)
    red, piv = M.rref()
    free = [j for j in range(n) if j not in piv]
    out = Matrix.zeros(M.field, n, len(free)).data.copy()
    neg = (lambda x: M.field.neg(int(x))) if M.finite else (lambda x: -x)
    for k, j in enumerate(free):
        out[j, k] = 1 if M.finite else M.field.one
        for r, pc in enumerate(piv):
            v = red.data[r, j]
            if v:
                out[pc, k] = neg(v)
    return Matrix._wrap(M.field, out)


def independent_columns(M: Matrix) -> list[int]:
    """Pivot columns of M: the first maximal independent set, scanning left to right."""
    if 0 in M.shape:
        return []
    return M.rref()[1]


def inverse(M: Matrix) -> Matrix:
    n, c = M.shape
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = M.hstack(Matrix.identity(M.field, n))
    red, piv = aug.rref()
    r = sum(1 for p in piv if p < n)
    if r < n:
        raise SingularMatrixError(f"singular {n}x{n} matrix (rank {r})", r)
    return Matrix._wrap(M.field, np.array(red.data[:, n:]))


# ---------------------------------------------------------------------------
# Network matrices
# ---------------------------------------------------------------------------


def build_F(net: Network, code: CodeAssignment | None = None) -> Matrix:
    """Port adjacency matrix: 1 on physical edges, beta on intra-node pairs."""
    code = code or CodeAssignment()
    f = net.field
    owner = net.port_owner
    ports = net.ports
    F = np.zeros((net.n_ports, net.n_ports), dtype=np.int64)
    for (a, b), v in code.beta.items():
        if not (
            0 <= a < net.n_ports
            and 0 <= b < net.n_ports
            and owner[a] == owner[b]
            and ports[a].direction == "in"
            and ports[b].direction == "out"
        ):
            raise NetworkError(f"beta assigned to cross-node pair (e{a + 1}, e{b + 1})")
        F[a, b] = f.coerce(v)
    for e in net.edges:
        F[e] = f.coerce(code.links.get(e, 1))
    return Matrix._wrap(f, F)


def support_order(F: Matrix) -> list[int] | None:
    """Topological order of the nonzero pattern of F, None if it has a cycle."""
    n = F.shape[0]
    nz = F.data != 0 if F.finite else np.vectorize(bool, otypes=[bool])(F.data)
    succ = {i: list(np.nonzero(nz[i])[0]) for i in range(n)}
    return _toposort(n, succ)


def transfer_matrix(F: Matrix) -> Matrix:
    """(I - F)^-1 = I + F + F^2 + ... for nilpotent F, by back-substitution."""
    if F.shape[0] != F.shape[1]:
        raise ValueError("F must be square")
    order = support_order(F)
    if order is None:
        raise NotNilpotentError(
            "F is not nilpotent (cyclic support); use adtnc.delaynet.delayed_transfer"
        )
    if F.finite:
        t = _kernels.transfer(F.data, np.array(order, dtype=np.int64), *_tables(F.field))
        return Matrix._wrap(F.field, t)
    n = F.shape[0]
    rows: list = [None] * n
    for i in reversed(order):
        row = [F.field.zero] * n
        row[i] = F.field.one
        for j in range(n):
            c = F.data[i, j]
            if c:
                row = [a + c * b if b else a for a, b in zip(row, rows[j])]
        rows[i] = row
    return Matrix(F.field, rows)


def power_sum(F: Matrix, k: int) -> Matrix:
    """I + F + ... + F^k (direct, for cross-checking transfer_matrix)."""
    n = F.shape[0]
    acc = Matrix.identity(F.field, n)
    term = Matrix.identity(F.field, n)
    for _ in range(k):
        term = term @ F
        acc = acc + term
    return acc
