"""Min-cut of an ADT network, computed two independent ways.

``mincut_enumeration`` minimises the rank of the cut incidence matrix over
all node partitions; ``mincut_algebraic`` maximises rank(A (I-F)^-1 B^T) over
random code draws.  The algebraic value is a lower bound that equals the
enumeration value with high probability once q is large.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .galois import GF, make_rng
from .linalg import Matrix, build_F, transfer_matrix
from .netmodel import (
    CodeAssignment,
    Network,
    NetworkError,
    add_super_destination,
    add_super_source,
    random_assignment,
    require_static,
)

ENUMERATION_CAP = 20
AUTO_ENUMERATION_MAX = 12
DEFAULT_TRIALS = 8


@dataclass(frozen=True)
class CutValueReport:
    value: int
    method: str  # "enumeration" | "algebraic"
    source: str
    dest: str
    witness: object = None  # tuple of node ids (Omega) or a CodeAssignment
    trials: int = 0
    confidence: float | None = None  # per-trial success bound (1 - 1/q)^eta
    q: int = 0
    low_field: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "source": self.source,
            "dest": self.dest,
            "value": self.value,
            "method": self.method,
            "q": self.q,
        }
        if self.method == "enumeration":
            d["cut"] = list(self.witness) if self.witness is not None else None
        else:
            d["trials"] = self.trials
            d["per_trial_bound"] = self.confidence
            d["low_field"] = self.low_field
            d["assignment"] = self.witness.to_dict() if self.witness is not None else None
        return d


def _check_pair(net: Network, S: str, T: str) -> None:
    if S == T:
        raise NetworkError("source and destination must differ")
    for v in (S, T):
        if v not in net.node_index:
            raise NetworkError(f"unknown node {v!r}")


def cut_rank(net: Network, omega: Sequence[str]) -> int:
    """Rank of G_Omega: edges from ports owned by Omega to ports owned by its complement."""
    inside = set(omega)
    rows = [a for a in range(net.n_ports) if net.port_owner[a] in inside and net.ports[a].direction == "out"]
    cols = [b for b in range(net.n_ports) if net.port_owner[b] not in inside and net.ports[b].direction == "in"]
    g = np.zeros((len(rows), len(cols)), dtype=np.int64)
    ri = {a: k for k, a in enumerate(rows)}
    ci = {b: k for k, b in enumerate(cols)}
    for a, b in net.edges:
        if a in ri and b in ci:
            g[ri[a], ci[b]] = 1
    if g.size == 0:
        return 0
    return Matrix(net.field, g).rank()


def mincut_enumeration(net: Network, S: str, T: str, cap: int = ENUMERATION_CAP) -> CutValueReport:
    """Minimum of rank(G_Omega) over the 2^(|V|-2) partitions with S in Omega, T outside.

    Ties resolve to the first partition in enumeration order ({S} first).
    Cut ranks depend only on the edge set, so cyclic networks are accepted.
    """
    _check_pair(net, S, T)
    if net.n_nodes > cap:
        raise ValueError(
            f"{net.n_nodes} nodes exceed the enumeration cap of {cap}; use the algebraic method"
        )
    outs = [p.id for p in net.ports if p.direction == "out"]
    ins = [p.id for p in net.ports if p.direction == "in"]
    oi = {a: k for k, a in enumerate(outs)}
    ii = {b: k for k, b in enumerate(ins)}
    inc = np.zeros((len(outs), len(ins)), dtype=np.int64)
    for a, b in net.edges:
        if a in oi and b in ii:
            inc[oi[a], ii[b]] = 1
    idx = net.node_index
    out_owner = np.array([idx[net.port_owner[a]] for a in outs], dtype=np.int64)
    in_owner = np.array([idx[net.port_owner[b]] for b in ins], dtype=np.int64)
    others = [k for k, n in enumerate(net.nodes) if n.id not in (S, T)]
    f = net.field
    if inc.size == 0:
        value, mask = 0, 0
    else:
        value, mask = _kernels.mincut_enum(
            inc, out_owner, in_owner, np.array(others, dtype=np.int64),
            idx[S], idx[T], net.n_nodes, f.p, f.exp, f.log,
        )
    omega = (S,) + tuple(net.nodes[others[k]].id for k in range(len(others)) if (mask >> k) & 1)
    return CutValueReport(int(value), "enumeration", S, T, witness=omega, q=f.q)


def pair_view(net: Network, S: str, T: str) -> Network:
    """The network with S as sole source (mu = |O(S)|) and T as sole destination (nu = |I(T)|)."""
    return net.replace(
        sources={S: len(net.outputs_of[S])},
        destinations={T: len(net.inputs_of[T])},
        connections=None,
    )


def per_trial_bound(q: int, eta: int, receivers: int = 1) -> float:
    return max(0.0, 1.0 - receivers / q) ** eta


def algebraic_rank(net: Network, S: str, T: str, code: CodeAssignment) -> int:
    """rank(M) for the full-size single-pair system matrix under ``code``."""
    from .codecon import system_matrix

    view = pair_view(net, S, T)
    return system_matrix(view, code).M.rank()


def mincut_algebraic(
    net: Network,
    S: str,
    T: str,
    trials: int = DEFAULT_TRIALS,
    rng: np.random.Generator | int | None = None,
) -> CutValueReport:
    """Largest rank(M) seen over ``trials`` uniform draws of alpha, beta, epsilon."""
    _check_pair(net, S, T)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = make_rng(rng)
    require_static(net)
    view = pair_view(net, S, T)
    f = net.field
    outs = list(view.outputs_of[S])
    ins = list(view.inputs_of[T])
    best, best_code = -1, None
    eta = len(net.edges)
    bound = per_trial_bound(f.q, eta)
    if outs and ins:
        for child in rng.spawn(trials):
            code = random_assignment(view, child)
            F = build_F(view, code)
            Tm = transfer_matrix(F)
            A = np.zeros((len(outs), len(outs)), dtype=np.int64)
            for (i, e), v in code.alpha.items():
                A[i, outs.index(e)] = v
            E = np.zeros((len(ins), len(ins)), dtype=np.int64)
            for (e, k), v in code.eps.items():
                E[ins.index(e), k] = v
            sub = Tm.submatrix(outs, ins)
            M = Matrix(f, A) @ sub @ Matrix(f, E)
            r = M.rank()
            if r > best:
                best, best_code = r, code
            if r == min(len(outs), len(ins)):
                break
    else:
        best, best_code = 0, CodeAssignment()
    return CutValueReport(
        int(best),
        "algebraic",
        S,
        T,
        witness=best_code,
        trials=trials,
        confidence=bound,
        q=f.q,
        low_field=bound < 0.5,
    )


def mincut(
    net: Network,
    S: str,
    T: str,
    method: str = "auto",
    trials: int = DEFAULT_TRIALS,
    rng=None,
) -> CutValueReport:
    if method == "auto":
        method = "enumeration" if net.n_nodes <= AUTO_ENUMERATION_MAX else "algebraic"
    if method in ("enumeration", "enum"):
        return mincut_enumeration(net, S, T)
    if method in ("algebraic", "alg"):
        return mincut_algebraic(net, S, T, trials, rng)
    raise ValueError(f"unknown min-cut method {method!r}")


def mincut_all_pairs(
    net: Network,
    pairs: Sequence[tuple[str, str]],
    method: str = "auto",
    trials: int = DEFAULT_TRIALS,
    rng=None,
) -> list[CutValueReport]:
    """One report per (S, T) pair; each pair gets its own spawned rng stream."""
    rng = make_rng(rng)
    streams = rng.spawn(len(pairs)) if pairs else []
    return [mincut(net, s, t, method, trials, r) for (s, t), r in zip(pairs, streams)]


def mincut_to_set(net: Network, S: str, dests: Sequence[str], method: str = "auto", trials: int = DEFAULT_TRIALS, rng=None) -> CutValueReport:
    """mincut(S, T') for a destination set, via a super-destination over ``dests``."""
    if len(dests) == 1:
        return mincut(net, S, dests[0], method, trials, rng)
    sd, mapping = add_super_destination(net, dests)
    return mincut(sd, S, mapping.super_node, method, trials, rng)


def mincut_from_set(net: Network, sources: Sequence[str], T: str, method: str = "auto", trials: int = DEFAULT_TRIALS, rng=None) -> CutValueReport:
    """mincut(S_set, T) via a super-source over ``sources``."""
    if len(sources) == 1:
        return mincut(net, sources[0], T, method, trials, rng)
    view = net.replace(sources={s: len(net.outputs_of[s]) for s in sources}, connections=None)
    ss, mapping = add_super_source(view, sources)
    return mincut(ss, mapping.super_node, T, method, trials, rng)


def field_for(net: Network, q: int | None) -> Network:
    """``net`` over GF(q) when ``q`` is given."""
    if q is None or q == net.field.q:
        return net
    return net.replace(field=GF.from_order(q))
