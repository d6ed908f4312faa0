"""Link failures: failure models, failed networks, static codes, time-averaged min-cut.

A failure pattern is a set of physical edges that are down.  Failing an edge
is modelled two equivalent ways: removing it from the network, or keeping the
network and zeroing the edge's link coefficient in the code.  The second form
lets one code assignment be evaluated under every pattern.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .galois import make_rng
from .netmodel import CodeAssignment, ConnectionSet, Network, NetworkError, random_assignment, require_static

EXPANSION_CAP = 2**16
PROB_TOL = 1e-9


@dataclass(frozen=True)
class FailurePattern:
    failed: tuple[tuple[int, int], ...]  # sorted edge list
    p: float

    @classmethod
    def of(cls, failed: Iterable[tuple[int, int]], p: float) -> "FailurePattern":
        return cls(tuple(sorted((int(a), int(b)) for a, b in failed)), float(p))

    def names(self, net: Network) -> list[list[str]]:
        return [[net.port_name(a), net.port_name(b)] for a, b in self.failed]


@dataclass(frozen=True)
class FailureModel:
    """Either an explicit list of patterns with probabilities, or iid edge failure.

    Explicit probabilities must sum to one; list the empty pattern to give
    "nothing fails" its share.
    """

    patterns: tuple[FailurePattern, ...] = ()
    iid: float | None = None

    def __post_init__(self):
        if self.iid is not None:
            if self.patterns:
                raise NetworkError("failure model: give patterns or iid, not both")
            if not 0.0 <= self.iid <= 1.0:
                raise NetworkError(f"failure model: iid probability {self.iid} outside [0, 1]")
            return
        total = 0.0
        for pat in self.patterns:
            if not 0.0 <= pat.p <= 1.0:
                raise NetworkError(f"failure model: probability {pat.p} outside [0, 1]")
            total += pat.p
        if self.patterns and abs(total - 1.0) > PROB_TOL:
            raise NetworkError(f"failure model: probabilities sum to {total}, not 1")

    @classmethod
    def iid_model(cls, p: float) -> "FailureModel":
        return cls(iid=float(p))

    @classmethod
    def explicit(cls, patterns: Iterable[tuple[Iterable[tuple[int, int]], float]]) -> "FailureModel":
        return cls(tuple(FailurePattern.of(f, p) for f, p in patterns))

    def check(self, net: Network) -> None:
        edges = set(net.edges)
        for pat in self.patterns:
            for e in pat.failed:
                if e not in edges:
                    raise NetworkError(f"failure pattern names a non-edge (e{e[0] + 1}, e{e[1] + 1})")

    def expand(self, net: Network, cap: int = EXPANSION_CAP) -> list[FailurePattern]:
        """All patterns with their probabilities (iid is enumerated lazily up to ``cap``)."""
        if self.iid is None:
            return [p for p in self.patterns if p.p > 0]
        n = len(net.edges)
        if 2**n > cap:
            raise ValueError(f"iid model over {n} edges has 2^{n} patterns (cap {cap}); use Monte Carlo")
        return list(self.iter_iid(net))

    def iter_iid(self, net: Network):
        p = self.iid
        edges = list(net.edges)
        n = len(edges)
        for bits in itertools.product((0, 1), repeat=n):
            k = sum(bits)
            if (p == 0 and k) or (p == 1 and k < n):
                continue
            yield FailurePattern(
                tuple(sorted(e for e, b in zip(edges, bits) if b)), p**k * (1 - p) ** (n - k)
            )

    def sample(self, net: Network, rng: np.random.Generator, n: int) -> list[tuple[tuple[int, int], ...]]:
        edges = list(net.edges)
        if self.iid is not None:
            mask = rng.random((n, len(edges))) < self.iid
            return [tuple(sorted(e for e, m in zip(edges, row) if m)) for row in mask]
        pats = self.expand(net)
        probs = np.array([p.p for p in pats], dtype=float)
        idx = rng.choice(len(pats), size=n, p=probs / probs.sum())
        return [pats[i].failed for i in idx]

    def to_json(self, net: Network | None = None):
        if self.iid is not None:
            return {"iid": self.iid}

        def ref(p):
            return net.port_name(p) if net is not None else p + 1

        return [{"pattern": [[ref(a), ref(b)] for a, b in pat.failed], "p": pat.p} for pat in self.patterns]

    @classmethod
    def from_json(cls, obj, resolve=lambda r: int(r) - 1) -> "FailureModel":
        """Parse ``{"iid": p}`` or ``[{"pattern": [[o, i], ...], "p": p}, ...]``."""
        if isinstance(obj, Mapping):
            if set(obj) != {"iid"}:
                raise NetworkError('failure model object must be {"iid": p}')
            return cls.iid_model(float(obj["iid"]))
        if not isinstance(obj, list):
            raise NetworkError("failure model must be a list of patterns or {\"iid\": p}")
        pats = []
        for k, item in enumerate(obj):
            if not isinstance(item, Mapping) or "pattern" not in item or "p" not in item:
                raise NetworkError(f"failure pattern {k + 1}: needs 'pattern' and 'p'")
            failed = [(resolve(a), resolve(b)) for a, b in item["pattern"]]
            pats.append(FailurePattern.of(failed, float(item["p"])))
        return cls(tuple(pats))


# ---------------------------------------------------------------------------
# Failed networks and codes
# ---------------------------------------------------------------------------


def _edges_of(net: Network, failed) -> tuple[tuple[int, int], ...]:
    if isinstance(failed, FailurePattern):
        failed = failed.failed
    failed = tuple(tuple(e) for e in failed)
    edges = set(net.edges)
    for a, b in failed:
        if (a, b) not in edges:
            raise NetworkError(f"(e{a + 1}, e{b + 1}) is not an edge")
    return failed


def apply_failure(
    net: Network, code: CodeAssignment, failed: Iterable[tuple[int, int]] | FailurePattern
) -> tuple[Network, CodeAssignment]:
    """Both views of a failure: the edge-deleted network, and ``code`` with the
    failed links zeroed (for use on the original network).

    ``code`` (minus any link entries on failed edges) is also valid on the
    deleted network; the two give the same system matrix.
    """
    failed = _edges_of(net, failed)
    return net.without_edges(failed), fail_code(code, failed)


def restrict_code(code: CodeAssignment, failed) -> CodeAssignment:
    """``code`` without link entries on the failed edges."""
    if isinstance(failed, FailurePattern):
        failed = failed.failed
    drop = set(tuple(e) for e in failed)
    return code.replace(links={e: v for e, v in code.links.items() if e not in drop})


def fail_code(code: CodeAssignment, failed: Iterable[tuple[int, int]] | FailurePattern) -> CodeAssignment:
    """The code with the failed edges' link coefficients set to zero."""
    if isinstance(failed, FailurePattern):
        failed = failed.failed
    links = dict(code.links)
    for e in failed:
        links[tuple(e)] = 0
    return code.replace(links=links)


def model_of(net: Network, model: FailureModel | None) -> FailureModel:
    model = model if model is not None else net.erasures
    if model is None:
        raise NetworkError("no failure model")
    model.check(net)
    return model


# ---------------------------------------------------------------------------
# Static codes
# ---------------------------------------------------------------------------


def _is_multicast(net: Network, conns: ConnectionSet) -> bool:
    if len(conns.sources) != 1:
        return False
    S = conns.sources[0]
    full = tuple(range(1, net.sources[S] + 1))
    return all(tuple(sorted(c.processes)) == full for c in conns)


@dataclass
class StaticResult:
    feasible: bool
    code: CodeAssignment | None
    net: Network
    per_pattern: list[dict] = field(default_factory=list)
    attempts: int = 0
    reason: str = ""
    bound: float | None = None  # per-draw success bound (1 - N|F|/q)^eta

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "q": self.net.field.q,
            "attempts": self.attempts,
            "bound": self.bound,
            "reason": self.reason,
            "patterns": self.per_pattern,
            "assignment": self.code.to_dict() if self.code is not None else None,
        }


def static_solution(
    net: Network,
    conns: ConnectionSet | None = None,
    model: FailureModel | None = None,
    q: int | None = None,
    trials: int = 16,
    rng=None,
) -> StaticResult:
    """One code (alpha, beta, epsilon all fixed) that decodes under every failure pattern.

    Only multicast connection sets qualify.  Each pattern with positive
    probability must leave mincut(S, T) >= mu(S) for every receiver; the first
    pattern that does not is reported.  Receivers do not learn the pattern,
    so epsilon is part of the static code.
    """
    from .codecon import select_field, verify
    from .mincut import mincut

    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    if not _is_multicast(net, conns):
        raise NetworkError("static erasure codes need a multicast connection set")
    model = model_of(net, model)
    patterns = [p for p in model.expand(net) if p.p > 0]
    n_recv = len(conns.receivers)
    net = net.replace(field=select_field(net, n_recv * max(1, len(patterns)), q))
    require_static(net)
    rng = make_rng(rng)
    S = conns.sources[0]
    mu = net.sources[S]
    rows = []
    for pat in patterns:
        failed = net.without_edges(pat.failed)
        cuts = {t: mincut(failed, S, t, rng=rng).value for t in conns.receivers}
        rows.append({"pattern": pat.names(net), "p": pat.p, "mincut": cuts})
        bad = [t for t, c in cuts.items() if c < mu]
        if bad:
            return StaticResult(
                False,
                None,
                net,
                rows,
                0,
                f"pattern {pat.names(net)} leaves mincut({S}, {bad[0]}) = {cuts[bad[0]]} < {mu}",
            )
    bound = max(0.0, 1.0 - n_recv * len(patterns) / net.field.q) ** len(net.edges)
    attempts = 0
    for child in rng.spawn(trials):
        attempts += 1
        code = random_assignment(net, child)
        if all(verify(net, fail_code(code, pat), conns).feasible for pat in patterns):
            for r in rows:
                r["decodes"] = True
            return StaticResult(True, code, net, rows, attempts, bound=bound)
    return StaticResult(
        False, None, net, rows, attempts, f"no static code in {trials} draws over GF({net.field.q})", bound
    )


# ---------------------------------------------------------------------------
# Time-varying failures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AverageCut:
    value: float
    stderr: float
    method: str
    samples: int
    cut_method: str = "enumeration"  # how each per-pattern min-cut was computed

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "method": self.method,
            "samples": self.samples,
            "cut_method": self.cut_method,
        }


def time_average_mincut(
    net: Network,
    S: str,
    T: str,
    model: FailureModel | None = None,
    method: str = "exact",
    samples: int = 1000,
    rng=None,
) -> AverageCut:
    """E_f[mincut(G_f, S, T)]; exact by enumeration or Monte Carlo with standard error."""
    from .mincut import AUTO_ENUMERATION_MAX, mincut

    model = model_of(net, model)
    rng = make_rng(rng)
    cache: dict[tuple, int] = {}
    cut_method = "enumeration" if net.n_nodes <= AUTO_ENUMERATION_MAX else "algebraic"

    def cut(failed):
        if failed not in cache:
            cache[failed] = mincut(net.without_edges(failed), S, T, rng=rng).value
        return cache[failed]

    if method == "exact":
        pats = model.expand(net)
        total = math.fsum(p.p for p in pats)
        value = math.fsum(p.p * cut(p.failed) for p in pats) / total
        return AverageCut(value, 0.0, "exact", len(pats), cut_method)
    if method in ("monte-carlo", "mc"):
        if samples < 2:
            raise ValueError("Monte Carlo needs at least 2 samples")
        vals = np.array([cut(f) for f in model.sample(net, rng, samples)], dtype=float)
        se = float(vals.std(ddof=1) / math.sqrt(samples))
        return AverageCut(float(vals.mean()), se, "monte-carlo", samples, cut_method)
    raise ValueError(f"unknown method {method!r}")


def feasibility_time_varying(
    net: Network,
    conns: ConnectionSet | None = None,
    model: FailureModel | None = None,
    method: str = "exact",
    samples: int = 1000,
    rng=None,
) -> dict:
    """Multicast over time-varying failures: feasible iff every receiver's
    average min-cut is at least mu(S).  Lists each receiver's margin."""
    conns = conns if conns is not None else net.connections
    if conns is None:
        raise NetworkError("no connection set")
    if not _is_multicast(net, conns):
        raise NetworkError("the time-varying criterion applies to multicast connection sets")
    rng = make_rng(rng)
    rows = []
    for c in conns:
        avg = time_average_mincut(net, c.source, c.dest, model, method, samples, rng)
        rows.append(
            {
                "source": c.source,
                "dest": c.dest,
                "rate": c.rate,
                "average_mincut": avg.value,
                "stderr": avg.stderr,
                "margin": avg.value - c.rate,
                "cut_method": avg.cut_method,
                "ok": c.rate <= avg.value + 1e-12,
            }
        )
    return {"feasible": all(r["ok"] for r in rows), "method": method, "connections": rows}


__all__ = [
    "AverageCut",
    "FailureModel",
    "FailurePattern",
    "StaticResult",
    "apply_failure",
    "fail_code",
    "feasibility_time_varying",
    "restrict_code",
    "static_solution",
    "time_average_mincut",
]
