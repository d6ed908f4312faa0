"""Networks with unit delays, including cyclic ones.

Every hop through F (a physical edge or an intra-node beta) takes one time
step; alpha and epsilon act within a step.  The transfer becomes

    (I - D F)^-1    over GF(q)(D),

which exists for any F because I - D F has determinant 1 at D = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .galois import GF, Polynomial, RationalField, make_rng, poly_gcd
from .linalg import Matrix, build_F, inverse
from .netmodel import CodeAssignment, ConnectionSet, Network, NetworkError, random_assignment, validate

__all__ = [
    "NonsingularReport",
    "SeriesMatrix",
    "TimeSeries",
    "delayed_F",
    "delayed_system_matrix",
    "delayed_transfer",
    "delayed_verify",
    "nonsingular",
    "random_delay_code",
    "rational_text",
    "simulate_time",
]


def _check_structure(net: Network) -> None:
    rep = validate(net)
    structural = [*rep.direction_errors, *rep.ownership_errors, *rep.duplicate_edges]
    if structural:
        raise NetworkError("; ".join(structural))


def delayed_F(F: Matrix) -> Matrix:
    """D F as a matrix over GF(q)(D)."""
    rf = RationalField(F.field)
    D = rf.D
    n, c = F.shape
    rows = [[D * rf(int(F.data[i, j])) if F.data[i, j] else rf.zero for j in range(c)] for i in range(n)]
    return Matrix(rf, rows)


@dataclass(frozen=True)
class SeriesMatrix:
    """Truncated power series sum_k C_k D^k with GF(q) coefficient matrices."""

    coeffs: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def entry(self, i: int, j: int) -> Polynomial:
        f = self.coeffs[0].field
        return Polynomial(f, [int(c.data[i, j]) for c in self.coeffs])

    def to_rational(self) -> Matrix:
        n, m = self.coeffs[0].shape
        rf = RationalField(self.coeffs[0].field)
        return Matrix(rf, [[rf(self.entry(i, j)) for j in range(m)] for i in range(n)])

    def to_text(self) -> str:
        n, m = self.coeffs[0].shape
        return "\n".join(" ".join(str(self.entry(i, j)) for j in range(m)) for i in range(n))


def _series_of(F: Matrix, order: int) -> SeriesMatrix:
    n = F.shape[0]
    term = Matrix.identity(F.field, n)
    out = [term]
    for _ in range(1, order):
        term = term @ F
        out.append(term)
    return SeriesMatrix(tuple(out))


def delayed_transfer(F: Matrix, mode: str = "exact", order: int | None = None):
    """(I - D F)^-1, exactly over GF(q)(D) or as a series modulo D^order.

    The series order defaults to twice the number of ports.
    """
    if F.shape[0] != F.shape[1]:
        raise ValueError("F must be square")
    if mode == "series":
        if order is None:
            order = 2 * F.shape[0]
        if order < 1:
            raise ValueError("order must be positive")
        return _series_of(F, order)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    n = F.shape[0]
    rf = RationalField(F.field)
    return inverse(Matrix.identity(rf, n) - delayed_F(F))


def _as_rational(m: Matrix) -> Matrix:
    return m.as_rational() if m.finite else m


def delayed_system_matrix(
    net: Network,
    code: CodeAssignment,
    alpha: Matrix | None = None,
    eps: Matrix | None = None,
) -> Matrix:
    """M(D) = A (I - D F)^-1 B^T over GF(q)(D).

    ``alpha`` (|X| x P) and ``eps`` (|Z| x P) may be rational matrices that
    replace the constant A and B from ``code``.
    """
    from .codecon import build_A, build_B

    _check_structure(net)
    code.check(net)
    F = build_F(net, code)
    T = delayed_transfer(F)
    A = _as_rational(alpha if alpha is not None else build_A(net, code))
    B = _as_rational(eps if eps is not None else build_B(net, code))
    return A @ T @ B.T


@dataclass(frozen=True)
class TimeSeries:
    Y: np.ndarray  # (steps, P) port symbols
    Z: np.ndarray  # (steps, |Z|) destination outputs


def simulate_time(net: Network, code: CodeAssignment, X: np.ndarray, steps: int | None = None) -> TimeSeries:
    """Run the network one step at a time.

    ``X`` is (steps, |X|): the symbol each source process emits at each time.
    An input port at time t holds the sum over its edges of the sending
    port's time t-1 value; an output port holds beta-weighted t-1 input values
    plus alpha-weighted processes of time t.
    """
    _check_structure(net)
    f = net.field
    X = np.atleast_2d(np.asarray(X, dtype=np.int64))
    steps = steps if steps is not None else X.shape[0]
    n_proc = len(net.processes)
    if X.shape[1] != n_proc:
        raise ValueError(f"X has {X.shape[1]} columns for {n_proc} processes")
    pad = np.zeros((steps, n_proc), dtype=np.int64)
    pad[: min(steps, X.shape[0])] = X[:steps]
    F = build_F(net, code).data
    preds = [[(a, int(F[a, b])) for a in np.nonzero(F[:, b])[0]] for b in range(net.n_ports)]
    alpha_in: dict[int, list] = {}
    for (i, e), v in code.alpha.items():
        if v:
            alpha_in.setdefault(e, []).append((net.process_row(net.port_owner[e], i), f.coerce(v)))
    eps_of: list[tuple[int, int, int]] = [
        (e, net.output_cols(net.port_owner[e])[k], f.coerce(v)) for (e, k), v in code.eps.items() if v
    ]
    Y = np.zeros((steps, net.n_ports), dtype=np.int64)
    Z = np.zeros((steps, len(net.outputs)), dtype=np.int64)
    prev = np.zeros(net.n_ports, dtype=np.int64)
    for t in range(steps):
        cur = np.zeros(net.n_ports, dtype=np.int64)
        for b in range(net.n_ports):
            acc = 0
            for a, c in preds[b]:
                acc = f.add(acc, f.mul(c, int(prev[a])))
            for r, c in alpha_in.get(b, ()):
                acc = f.add(acc, f.mul(c, int(pad[t, r])))
            cur[b] = acc
        for e, col, c in eps_of:
            Z[t, col] = f.add(int(Z[t, col]), f.mul(c, int(cur[e])))
        Y[t] = cur
        prev = cur
    return TimeSeries(Y, Z)


# ---------------------------------------------------------------------------
# Nonsingularity over GF(q)(D)
# ---------------------------------------------------------------------------


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b // poly_gcd(a, b)).monic()


def _polynomial_rows(M: Matrix) -> list[list[Polynomial]]:
    """Scale each row by the lcm of its denominators so every entry is a polynomial."""
    out = []
    for row in M.data:
        den = Polynomial.constant(M.field.base, 1)
        for x in row:
            den = _lcm(den, x.den)
        out.append([x.num * (den // x.den) for x in row])
    return out


@dataclass(frozen=True)
class NonsingularReport:
    nonsingular: bool
    method: str
    degree_bound: int | None = None
    points: int = 0
    over: str = ""
    det: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"nonsingular": self.nonsingular, "method": self.method}
        if self.degree_bound is not None:
            d.update(degree_bound=self.degree_bound, points=self.points, field=self.over)
        if self.det is not None:
            d["det"] = self.det
        return d


def _evaluation_field(base: GF, need: int) -> tuple[GF, np.ndarray] | None:
    """A field with at least ``need`` elements containing ``base``, with the embedding table."""
    if base.q >= need:
        return base, np.arange(base.q, dtype=np.int64)
    if base.p != 2:
        return None
    m = base.m
    while 2**m < need:
        m += base.m
    if m > 16:
        return None
    big = GF(2, m)
    return big, base.embedding_into(big)


def nonsingular(M: Matrix, method: str = "evaluation") -> NonsingularReport:
    """Whether a square matrix over GF(q)(D) is invertible.

    ``symbolic`` computes the determinant.  ``evaluation`` clears row
    denominators, bounds the determinant's degree by the sum of row degrees,
    and evaluates at one more point than that bound: a polynomial of degree
    at most d with d+1 roots is zero.  Small base fields are lifted to an
    extension; if none is available the symbolic route is used.
    """
    n, c = M.shape
    if n != c:
        raise ValueError("nonsingularity of a non-square matrix")
    if M.finite:
        M = M.as_rational()
    if method == "symbolic" or n == 0:
        d = M.det()
        return NonsingularReport(bool(d), "symbolic", det=str(d))
    if method != "evaluation":
        raise ValueError(f"unknown method {method!r}")
    rows = _polynomial_rows(M)
    bound = sum(max((p.degree for p in row), default=-1) for row in rows)
    if bound < 0:
        return NonsingularReport(False, "evaluation", bound, 0, repr(M.field.base))
    picked = _evaluation_field(M.field.base, bound + 1)
    if picked is None:
        rep = nonsingular(M, "symbolic")
        return NonsingularReport(rep.nonsingular, "symbolic", bound, 0, repr(M.field.base), rep.det, {"fallback": True})
    big, emb = picked
    lifted = [[Polynomial(big, [int(emb[c]) for c in p.coeffs]) for p in row] for row in rows]
    used = 0
    for x in range(bound + 1):
        used += 1
        val = np.array([[int(p(x).value) for p in row] for row in lifted], dtype=np.int64)
        if Matrix(big, val).rank() == n:
            return NonsingularReport(True, "evaluation", bound, used, repr(big))
    return NonsingularReport(False, "evaluation", bound, used, repr(big))


@dataclass
class DelayVerdict:
    feasible: bool
    receivers: list[dict]

    def to_dict(self) -> dict:
        return {"feasible": self.feasible, "receivers": self.receivers}


def delayed_verify(
    net: Network, code: CodeAssignment, conns: ConnectionSet | None = None, method: str = "evaluation"
) -> DelayVerdict:
    """Receiver conditions on M(D): no undemanded leakage, demanded block invertible."""
    from .codecon import _demanded_rows, _proc_name

    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    conns.check(net)
    M = delayed_system_matrix(net, code)
    n_proc = len(net.processes)
    out = []
    for t in conns.receivers:
        Drows = _demanded_rows(net, conns, t)
        U = [r for r in range(n_proc) if r not in Drows]
        cols = net.output_cols(t)
        leaks = [_proc_name(net, r) for r in U if any(bool(M.data[r, c]) for c in cols)]
        if len(Drows) != len(cols):
            ok, rep = False, None
        else:
            rep = nonsingular(M.submatrix(Drows, cols), method)
            ok = rep.nonsingular and not leaks
        out.append(
            {
                "dest": t,
                "demanded": [_proc_name(net, r) for r in Drows],
                "interference": leaks,
                "ok": ok,
                "nonsingular": rep.to_dict() if rep else None,
            }
        )
    return DelayVerdict(all(r["ok"] for r in out), out)


def random_delay_code(
    net: Network, conns: ConnectionSet | None = None, trials: int = 8, rng=None, method: str = "evaluation"
) -> tuple[CodeAssignment | None, DelayVerdict | None, int]:
    """Uniform alpha, beta, epsilon until ``delayed_verify`` passes."""
    rng = make_rng(rng)
    verdict = None
    code = None
    for k, child in enumerate(rng.spawn(trials), start=1):
        code = random_assignment(net, child)
        verdict = delayed_verify(net, code, conns, method)
        if verdict.feasible:
            return code, verdict, k
    return code, verdict, trials


def rational_text(M: Matrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in M.data)

