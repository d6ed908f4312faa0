"""Linear codes on ADT networks: system matrix, verification and construction.

Conventions (row vectors): X is the 1 x |X| vector of source processes in
``Network.processes`` order, Z the 1 x |Z| vector of destination outputs in
``Network.outputs`` order, and Z = X M with

    M = A (I - F)^-1 B^T,

A (|X| x P) holding alpha on source output ports and B (|Z| x P) holding
epsilon on destination input ports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .galois import GF, make_rng
from .linalg import (
    Matrix,
    build_F,
    independent_columns,
    null_space,
    transfer_matrix,
)
from .netmodel import (
    CodeAssignment,
    ConnectionSet,
    Network,
    NetworkError,
    add_super_destination,
    add_super_source,
    random_assignment,
    require_static,
)

DEFAULT_TRIALS = 8
DEFAULT_RETRIES = 32


class InfeasibleError(Exception):
    """The demanded connections violate a min-cut condition."""

    def __init__(self, msg: str, detail: Mapping | None = None):
        super().__init__(msg)
        self.detail = dict(detail or {})


# ---------------------------------------------------------------------------
# System matrix
# ---------------------------------------------------------------------------


def build_A(net: Network, code: CodeAssignment) -> Matrix:
    f = net.field
    A = np.zeros((len(net.processes), net.n_ports), dtype=np.int64)
    for (i, e), v in code.alpha.items():
        A[net.process_row(net.port_owner[e], i), e] = f.coerce(v)
    return Matrix._wrap(f, A)


def build_B(net: Network, code: CodeAssignment) -> Matrix:
    f = net.field
    B = np.zeros((len(net.outputs), net.n_ports), dtype=np.int64)
    for (e, k), v in code.eps.items():
        B[net.output_cols(net.port_owner[e])[k], e] = f.coerce(v)
    return Matrix._wrap(f, B)


@dataclass(frozen=True)
class SystemMatrix:
    M: Matrix
    A: Matrix
    F: Matrix
    T: Matrix  # (I - F)^-1
    B: Matrix
    net: Network

    def block(self, dest: str, rows: Sequence[int] | None = None) -> Matrix:
        """Columns of ``dest``; all process rows unless ``rows`` is given."""
        r = range(self.M.shape[0]) if rows is None else rows
        return self.M.submatrix(list(r), self.net.output_cols(dest))

    def to_dict(self) -> dict:
        return {
            "rows": [f"X({s},{i + 1})" for s, i in self.net.processes],
            "cols": [f"Z({t},{k + 1})" for t, k in self.net.outputs],
            "M": self.M.tolist(),
        }


def system_matrix(net: Network, code: CodeAssignment) -> SystemMatrix:
    require_static(net)
    code.check(net)
    F = build_F(net, code)
    T = transfer_matrix(F)
    A = build_A(net, code)
    B = build_B(net, code)
    return SystemMatrix(A @ T @ B.T, A, F, T, B, net)


def simulate_ports(net: Network, code: CodeAssignment, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Propagate payloads port by port, independently of any matrix algebra.

    ``X`` is (|X| x L) element codes.  Returns (Y, Z): Y is (P x L) with the
    symbol on every port, Z is (|Z| x L).  Output ports combine the node's
    inputs with beta (plus alpha-weighted processes at a source), input ports
    sum everything arriving on their edges.
    """
    order = require_static(net)
    f = net.field
    X = np.asarray(X, dtype=np.int64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    L = X.shape[1]
    incoming: dict[int, list[tuple[int, int]]] = {}
    for e in net.edges:
        incoming.setdefault(e[1], []).append((e[0], f.coerce(code.links.get(e, 1))))
    beta_in: dict[int, list[tuple[int, int]]] = {}
    for (a, b), v in code.beta.items():
        if v:
            beta_in.setdefault(b, []).append((a, f.coerce(v)))
    alpha_in: dict[int, list[tuple[int, int]]] = {}
    for (i, e), v in code.alpha.items():
        if v:
            alpha_in.setdefault(e, []).append((net.process_row(net.port_owner[e], i), f.coerce(v)))
    Y = np.zeros((net.n_ports, L), dtype=np.int64)
    for p in order:
        acc = np.zeros(L, dtype=np.int64)
        if net.ports[p].direction == "in":
            for a, c in incoming.get(p, ()):
                acc = f.vadd(acc, f.vmul(Y[a], c))
        else:
            for a, c in beta_in.get(p, ()):
                acc = f.vadd(acc, f.vmul(Y[a], c))
            for r, c in alpha_in.get(p, ()):
                acc = f.vadd(acc, f.vmul(X[r], c))
        Y[p] = acc
    Z = np.zeros((len(net.outputs), L), dtype=np.int64)
    for (e, k), v in code.eps.items():
        if v:
            r = net.output_cols(net.port_owner[e])[k]
            Z[r] = f.vadd(Z[r], f.vmul(Y[e], f.coerce(v)))
    return Y, Z


def simulated_system_matrix(net: Network, code: CodeAssignment) -> Matrix:
    """M read off a simulation with unit impulses on every process."""
    n = len(net.processes)
    _, Z = simulate_ports(net, code, np.eye(n, dtype=np.int64))
    return Matrix(net.field, Z.T)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _demanded_rows(net: Network, conns: ConnectionSet, dest: str) -> list[int]:
    return [
        net.process_row(c.source, i - 1) for c in conns.into(dest) for i in sorted(c.processes)
    ]


def _proc_name(net: Network, row: int) -> str:
    s, i = net.processes[row]
    return f"X({s},{i + 1})"


@dataclass(frozen=True)
class ReceiverDiagnostic:
    dest: str
    demanded: tuple[str, ...]
    outputs: int
    rank: int
    interference: tuple[str, ...]
    ok: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "dest": self.dest,
            "demanded": list(self.demanded),
            "outputs": self.outputs,
            "rank": self.rank,
            "interference": list(self.interference),
            "ok": self.ok,
            "reason": self.reason,
        }


@dataclass
class CodeVerdict:
    feasible: bool
    kind: str
    receivers: list[ReceiverDiagnostic]
    decoders: dict[str, Matrix] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def failing(self) -> list[ReceiverDiagnostic]:
        return [r for r in self.receivers if not r.ok]

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "class": self.kind,
            "receivers": [r.to_dict() for r in self.receivers],
            "decoders": {t: W.tolist() for t, W in self.decoders.items()},
            "notes": list(self.notes),
        }


def verify(net: Network, code: CodeAssignment, conns: ConnectionSet | None = None) -> CodeVerdict:
    """Check that every receiver gets exactly its demanded processes.

    For each receiver T the rows of M outside its demand must vanish on T's
    columns, and the demanded rows must form a square nonsingular block.
    Passing receivers get a decoder W with X_D = W^T y, y the symbols on I(T).
    """
    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    conns.check(net)
    sm = system_matrix(net, code)
    n_proc = len(net.processes)
    receivers = []
    decoders = {}
    for t in conns.receivers:
        D = _demanded_rows(net, conns, t)
        U = [r for r in range(n_proc) if r not in D]
        cols = net.output_cols(t)
        blk_D = sm.M.submatrix(D, cols)
        rank = blk_D.rank()
        leaks = []
        if U and cols:
            blk_U = sm.M.submatrix(U, cols)
            leaks = [_proc_name(net, U[k]) for k in range(len(U)) if blk_U.data[k].any()]
        square = len(D) == len(cols)
        reasons = []
        if leaks:
            reasons.append("undemanded processes reach the outputs: " + ", ".join(leaks))
        if not square:
            reasons.append(f"{len(D)} demanded processes but nu({t})={len(cols)}")
        elif rank < len(D):
            reasons.append(f"demanded block has rank {rank} < {len(D)}")
        ok = not reasons
        if ok:
            E = sm.B.submatrix(cols, net.inputs_of[t]).T
            decoders[t] = E @ blk_D.inverse()
        receivers.append(
            ReceiverDiagnostic(
                t,
                tuple(_proc_name(net, r) for r in D),
                len(cols),
                rank,
                tuple(leaks),
                ok,
                "; ".join(reasons),
            )
        )
    return CodeVerdict(all(r.ok for r in receivers), conns.kind, receivers, decoders)


def decode(net: Network, verdict: CodeVerdict, Y: np.ndarray) -> dict[str, np.ndarray]:
    """Recover each passing receiver's demanded processes from port symbols Y (P x L)."""
    out = {}
    for t, W in verdict.decoders.items():
        y = Matrix(net.field, np.asarray(Y)[list(net.inputs_of[t])])
        out[t] = (W.T @ y).data
    return out


# ---------------------------------------------------------------------------
# Random coding
# ---------------------------------------------------------------------------


def coding_bound(q: int, receivers: int, eta: int) -> float:
    """Lower bound (1 - N/q)^eta on the per-draw success probability."""
    return max(0.0, 1.0 - receivers / q) ** eta


def select_field(net: Network, receivers: int, q: int | None = None) -> GF:
    """Explicit q, else the network's field when q > N, else the smallest 2^m > N."""
    if q is not None:
        return GF.from_order(q)
    if net.field.q > receivers:
        return net.field
    m = max(1, int(receivers).bit_length())
    return GF(2, m)


def receiver_eps(net: Network, code: CodeAssignment, conns: ConnectionSet, dests=None) -> dict:
    """Decoder-side epsilon: each receiver inverts what it sees of its demand.

    With H the map from processes to T's input ports, epsilon is picked in the
    null space of the undemanded rows so that the demanded block becomes the
    identity.  Receivers for which no such choice exists get epsilon = 0.
    """
    F = build_F(net, code)
    T = transfer_matrix(F)
    AT = build_A(net, code) @ T
    n_proc = len(net.processes)
    eps = {k: v for k, v in code.eps.items()}
    for t in dests if dests is not None else conns.receivers:
        ins = list(net.inputs_of[t])
        for e in ins:
            for k in range(net.destinations[t]):
                eps.pop((e, k), None)
        D = _demanded_rows(net, conns, t)
        U = [r for r in range(n_proc) if r not in D]
        if not ins or len(D) > net.destinations[t]:
            continue
        H = AT.submatrix(range(n_proc), ins)
        N = null_space(H.submatrix(U, range(len(ins))))
        G = H.submatrix(D, range(len(ins))) @ N
        piv = independent_columns(G)
        if len(piv) < len(D):
            continue
        sel = piv[: len(D)]
        E = N.submatrix(range(len(ins)), sel) @ G.submatrix(range(len(D)), sel).inverse()
        for a, e in enumerate(ins):
            for k in range(len(D)):
                v = int(E.data[a, k])
                if v:
                    eps[(e, k)] = v
    return eps


@dataclass
class CodeResult:
    code: CodeAssignment
    verdict: CodeVerdict
    net: Network  # the network over the field actually used
    attempts: int = 0
    successes: int = 0
    bound: float | None = None
    eta: int = 0
    method: str = "random"

    @property
    def success_rate(self) -> float:
        return self.successes / self.attempts if self.attempts else 0.0

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "q": self.net.field.q,
            "attempts": self.attempts,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "bound": self.bound,
            "eta": self.eta,
            "verdict": self.verdict.to_dict(),
            "assignment": self.code.to_dict(),
        }


def _sources_of(conns: ConnectionSet, dest: str) -> list[str]:
    return list(dict.fromkeys(c.source for c in conns.into(dest)))


def annotate_mincuts(net: Network, conns: ConnectionSet, verdict: CodeVerdict, rng=None) -> None:
    """Add a note comparing demanded rate and min-cut for each failing receiver."""
    from .mincut import mincut_from_set

    for r in verdict.failing():
        srcs = _sources_of(conns, r.dest)
        try:
            cut = mincut_from_set(net, srcs, r.dest, rng=rng).value
        except (ValueError, NetworkError):
            continue
        rate = len(r.demanded)
        rel = ">" if rate > cut else "<="
        verdict.notes.append(f"{r.dest}: demanded rate {rate} {rel} mincut({','.join(srcs)}, {r.dest}) = {cut}")


def random_code(
    net: Network,
    conns: ConnectionSet | None = None,
    q: int | None = None,
    trials: int = DEFAULT_TRIALS,
    rng=None,
    *,
    stop_on_success: bool = True,
    random_eps: bool = False,
) -> CodeResult:
    """Draw alpha and beta uniformly until a draw passes ``verify``.

    Epsilon is chosen by the receivers unless ``random_eps`` is set, in which
    case it is drawn uniformly too.  With ``stop_on_success=False`` all
    ``trials`` draws run, which gives an empirical success rate.
    """
    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    N = len(conns.receivers)
    net = net.replace(field=select_field(net, N, q))
    conns.check(net)
    require_static(net)
    rng = make_rng(rng)
    best = None
    successes = 0
    attempts = 0
    for child in rng.spawn(trials):
        attempts += 1
        code = random_assignment(net, child, eps=random_eps)
        if not random_eps:
            code = code.replace(eps=receiver_eps(net, code, conns))
        verdict = verify(net, code, conns)
        if verdict.feasible:
            successes += 1
            if best is None or not best[1].feasible:
                best = (code, verdict)
            if stop_on_success:
                break
        elif best is None:
            best = (code, verdict)
    code, verdict = best
    if not verdict.feasible:
        annotate_mincuts(net, conns, verdict)
    eta = len(net.edges)
    return CodeResult(code, verdict, net, attempts, successes, coding_bound(net.field.q, N, eta), eta)


# ---------------------------------------------------------------------------
# Structured constructions
# ---------------------------------------------------------------------------


def _cut(net, S, dests, rng):
    from .mincut import mincut_to_set

    return mincut_to_set(net, S, list(dests), rng=rng).value


def _tier_split(net: Network, conns: ConnectionSet):
    S = conns.sources[0]
    full = tuple(range(1, net.sources[S] + 1))
    if conns.kind == "disjoint-multicast":
        return S, list(conns), []
    tier = [c for c in conns if tuple(sorted(c.processes)) != full]
    top = [c for c in conns if tuple(sorted(c.processes)) == full]
    return S, tier, top


def check_tiered_feasibility(net: Network, conns: ConnectionSet, rng=None) -> list[dict]:
    """Min-cut conditions for disjoint / two-level multicast.

    Every nonempty subset of disjoint receivers needs mincut(S, subset) at
    least its total rate; every full receiver needs mincut(S, T) >= mu(S).
    Raises InfeasibleError naming the first violated condition.
    """
    S, tier, top = _tier_split(net, conns)
    mu = net.sources[S]
    rng = make_rng(rng)
    checked = []
    for size in range(1, len(tier) + 1):
        for sub in itertools.combinations(tier, size):
            need = sum(c.rate for c in sub)
            names = [c.dest for c in sub]
            have = _cut(net, S, names, rng)
            checked.append({"receivers": names, "rate": need, "mincut": have})
            if have < need:
                raise InfeasibleError(
                    f"mincut({S}, {{{', '.join(names)}}}) = {have} < total rate {need}",
                    {"receivers": names, "rate": need, "mincut": have},
                )
    for c in top:
        have = _cut(net, S, [c.dest], rng)
        checked.append({"receivers": [c.dest], "rate": mu, "mincut": have})
        if have < mu:
            raise InfeasibleError(
                f"mincut({S}, {c.dest}) = {have} < mu({S}) = {mu}",
                {"receivers": [c.dest], "rate": mu, "mincut": have},
            )
    return checked


def _construct_tiered(net, conns, q, rng, retries) -> CodeResult:
    conns.check(net)
    net = net.replace(field=select_field(net, len(conns.receivers), q))
    require_static(net)
    rng = make_rng(rng)
    S, tier, top = _tier_split(net, conns)
    mu = net.sources[S]
    for c in tier:
        if net.destinations[c.dest] != c.rate:
            raise NetworkError(f"nu({c.dest}) = {net.destinations[c.dest]} but it demands {c.rate} processes")
    for c in top:
        if net.destinations[c.dest] != mu:
            raise NetworkError(f"nu({c.dest}) must equal mu({S}) = {mu}")
    check_tiered_feasibility(net, conns, rng)
    if not tier:
        res = random_code(net, conns, trials=retries, rng=rng)
        if not res.verdict.feasible:
            raise InfeasibleError(f"no valid code found in {retries} attempts over GF({net.field.q}); try a larger q")
        res.method = conns.kind
        return res
    f = net.field
    R = sum(c.rate for c in tier)
    tier_dests = [c.dest for c in tier]
    sd, mp = add_super_destination(net, tier_dests, processes=R)
    inv = {v: k for k, v in mp.port_map.items()}
    outs_new = [mp.port_map[e] for e in net.outputs_of[S]]
    n = len(outs_new)
    star_ins = list(sd.inputs_of[mp.super_node])
    col_of = {}
    for c in tier:
        for k, i in enumerate(sorted(c.processes)):
            col_of[(c.dest, k)] = len(col_of)
    P_d = np.zeros((mu, R), dtype=np.int64)
    for c in tier:
        for k, i in enumerate(sorted(c.processes)):
            P_d[i - 1, col_of[(c.dest, k)]] = 1
    P_d = Matrix._wrap(f, P_d)
    attempts = 0
    for child in rng.spawn(retries):
        attempts += 1
        code_sd = random_assignment(sd, child, alpha=False, eps=False)
        Tm = transfer_matrix(build_F(sd, code_sd))
        eps_star = np.zeros((len(star_ins), R), dtype=np.int64)
        for a, (sp, t, mirror, e) in enumerate(mp.links):
            for k in range(net.destinations[t]):
                eps_star[a, col_of[(t, k)]] = f.random(child, 1)[0]
        eps_star = Matrix._wrap(f, eps_star)
        K = Tm.submatrix(outs_new, star_ins) @ eps_star
        rows = independent_columns(K.T)
        if len(rows) < R:
            continue
        rows = rows[:R]
        base = np.zeros((mu, n), dtype=np.int64)
        base[:, rows] = (P_d @ K.submatrix(rows, range(R)).inverse()).data
        base = Matrix._wrap(f, base)
        left = null_space(K.T)
        alpha = None
        for _ in range(retries):
            Z = Matrix._wrap(f, f.random(child, (mu, left.shape[1])).astype(np.int64).reshape(mu, left.shape[1]))
            cand = base + (Z @ left.T if left.shape[1] else Matrix.zeros(f, mu, n))
            if all(
                (cand @ Tm.submatrix(outs_new, [mp.port_map[e] for e in net.inputs_of[c.dest]])).rank() == mu
                for c in top
            ):
                alpha = cand
                break
        if alpha is None:
            continue
        beta = {
            (inv[a], inv[b]): v for (a, b), v in code_sd.beta.items() if a in inv and b in inv and v
        }
        al = {
            (i, net.outputs_of[S][j]): int(alpha.data[i, j])
            for i in range(mu)
            for j in range(n)
            if alpha.data[i, j]
        }
        eps = {}
        for c in tier:
            mirrors = [(a, mirror) for a, (sp, t, mirror, e) in enumerate(mp.links) if t == c.dest]
            for e in net.inputs_of[c.dest]:
                for k in range(c.rate):
                    acc = 0
                    for a, mirror in mirrors:
                        b = code_sd.beta.get((mp.port_map[e], mirror), 0)
                        acc = f.add(acc, f.mul(b, int(eps_star.data[a, col_of[(c.dest, k)]])))
                    if acc:
                        eps[(e, k)] = acc
        code = CodeAssignment(beta=beta, alpha=al, eps=eps)
        if top:
            code = code.replace(eps=receiver_eps(net, code, conns, [c.dest for c in top]))
        verdict = verify(net, code, conns)
        if verdict.feasible:
            return CodeResult(code, verdict, net, attempts, 1, None, len(net.edges), conns.kind)
    raise InfeasibleError(f"no valid code found in {retries} attempts over GF({f.q}); try a larger q")


def construct_disjoint_multicast(
    net: Network, conns: ConnectionSet | None = None, q: int | None = None, rng=None, retries: int = DEFAULT_RETRIES
) -> CodeResult:
    """Code for one source sending pairwise-disjoint process subsets to several receivers.

    Works on the super-destination network: the receivers' inputs are joined
    into T*, alpha is solved so T* sees exactly its demand, and the result is
    mapped back onto the original receivers.
    """
    conns = conns if conns is not None else net.connections
    if conns is None or conns.kind != "disjoint-multicast":
        raise NetworkError("expected a disjoint-multicast connection set")
    return _construct_tiered(net, conns, q, rng, retries)


def construct_two_level(
    net: Network, conns: ConnectionSet | None = None, q: int | None = None, rng=None, retries: int = DEFAULT_RETRIES
) -> CodeResult:
    """Disjoint receivers plus full receivers that want all of X(S).

    The disjoint part is solved as in :func:`construct_disjoint_multicast`;
    the remaining freedom in alpha (its left-null-space component) is drawn
    until every full receiver sees an invertible block.
    """
    conns = conns if conns is not None else net.connections
    if conns is None or conns.kind != "two-level-multicast":
        raise NetworkError("expected a two-level-multicast connection set")
    return _construct_tiered(net, conns, q, rng, retries)


def solve_multiple_multicast(
    net: Network, conns: ConnectionSet | None = None, q: int | None = None, rng=None, trials: int = DEFAULT_TRIALS
) -> CodeResult:
    """Several sources multicasting everything to every receiver.

    The sources are merged behind a super-source; a feasibility failure names
    the receiver whose min-cut from S* is below the total rate.
    """
    from .mincut import mincut

    conns = conns if conns is not None else net.connections
    if conns is None or conns.kind != "multiple-multicast":
        raise NetworkError("expected a multiple-multicast connection set")
    conns.check(net)
    net = net.replace(field=select_field(net, len(conns.receivers), q))
    require_static(net)
    rng = make_rng(rng)
    f = net.field
    srcs = conns.sources
    ss, mp = add_super_source(net, srcs)
    total = sum(net.sources[s] for s in srcs)
    for t in conns.receivers:
        have = mincut(ss, mp.super_node, t, rng=rng).value
        if have < total:
            raise InfeasibleError(
                f"mincut({mp.super_node}, {t}) = {have} < total rate {total}",
                {"receivers": [t], "rate": total, "mincut": have},
            )
    inv = {v: k for k, v in mp.port_map.items()}
    attempts = successes = 0
    for child in rng.spawn(trials):
        attempts += 1
        code_ss = random_assignment(ss, child, alpha=False, eps=False)
        alpha = {}
        for s in srcs:
            sps = [(sp, fresh) for sp, node, fresh, e in mp.links if node == s]
            astar = f.random(child, (net.sources[s], len(sps))).reshape(net.sources[s], len(sps))
            for e in net.outputs_of[s]:
                for i in range(net.sources[s]):
                    acc = 0
                    for k, (sp, fresh) in enumerate(sps):
                        b = code_ss.beta.get((fresh, mp.port_map[e]), 0)
                        acc = f.add(acc, f.mul(int(astar[i, k]), b))
                    if acc:
                        alpha[(i, e)] = acc
        beta = {(inv[a], inv[b]): v for (a, b), v in code_ss.beta.items() if a in inv and b in inv and v}
        code = CodeAssignment(beta=beta, alpha=alpha)
        code = code.replace(eps=receiver_eps(net, code, conns))
        verdict = verify(net, code, conns)
        if verdict.feasible:
            successes += 1
            return CodeResult(code, verdict, net, attempts, successes, None, len(net.edges), conns.kind)
    annotate_mincuts(net, conns, verdict)
    raise InfeasibleError(f"no valid code found in {trials} trials over GF({f.q}); try a larger q")


def construct(
    net: Network, conns: ConnectionSet | None = None, q: int | None = None, trials: int = DEFAULT_TRIALS, rng=None
) -> CodeResult:
    """Dispatch on the connection class."""
    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    if conns.kind == "disjoint-multicast":
        return construct_disjoint_multicast(net, conns, q, rng, max(trials, DEFAULT_RETRIES))
    if conns.kind == "two-level-multicast":
        return construct_two_level(net, conns, q, rng, max(trials, DEFAULT_RETRIES))
    if conns.kind == "multiple-multicast":
        return solve_multiple_multicast(net, conns, q, rng, trials)
    return random_code(net, conns, q, trials, rng)


__all__ = [
    "CodeResult",
    "CodeVerdict",
    "InfeasibleError",
    "ReceiverDiagnostic",
    "SystemMatrix",
    "build_A",
    "build_B",
    "check_tiered_feasibility",
    "coding_bound",
    "construct",
    "construct_disjoint_multicast",
    "construct_two_level",
    "decode",
    "random_code",
    "receiver_eps",
    "select_field",
    "simulate_ports",
    "simulated_system_matrix",
    "solve_multiple_multicast",
    "system_matrix",
    "verify",
]
