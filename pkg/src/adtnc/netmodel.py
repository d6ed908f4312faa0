"""ADT network model: nodes with input/output ports, port-to-port edges,
sources and destinations, connection sets and code assignments.

Ports are numbered 0..P-1 in node order, inputs before outputs within a node;
that numbering fixes the row/column order of every matrix in the package.
External formats show ports 1-based as ``e1..eP``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .galois import GF

IN = "in"
OUT = "out"

CONNECTION_CLASSES = (
    "unicast",
    "single-multicast",
    "multiple-multicast",
    "disjoint-multicast",
    "two-level-multicast",
    "general",
)


class NetworkError(ValueError):
    """A network, connection set or assignment violates the model's rules."""


@dataclass(frozen=True)
class Node:
    id: str
    inputs: int = 0
    outputs: int = 0
    labels: tuple[str, ...] = ()  # optional port names: inputs then outputs

    def __post_init__(self):
        if self.inputs < 0 or self.outputs < 0:
            raise NetworkError(f"node {self.id!r}: negative port count")
        if self.labels and len(self.labels) != self.inputs + self.outputs:
            raise NetworkError(
                f"node {self.id!r}: {len(self.labels)} labels for {self.inputs + self.outputs} ports"
            )


@dataclass(frozen=True)
class Port:
    id: int
    owner: str
    direction: str
    index: int
    label: str | None = None

    @property
    def name(self) -> str:
        return self.label or f"e{self.id + 1}"


@dataclass(frozen=True)
class Connection:
    """(S, T, X(S,T)); ``processes`` holds 1-based indices into X(S)."""

    source: str
    dest: str
    processes: tuple[int, ...]

    @property
    def rate(self) -> int:
        return len(self.processes)


@dataclass(frozen=True)
class ConnectionSet:
    connections: tuple[Connection, ...]
    kind: str = "general"

    def __post_init__(self):
        if self.kind not in CONNECTION_CLASSES:
            raise NetworkError(f"unknown connection class {self.kind!r}")

    def __iter__(self):
        return iter(self.connections)

    def __len__(self):
        return len(self.connections)

    @property
    def sources(self) -> list[str]:
        return list(dict.fromkeys(c.source for c in self.connections))

    @property
    def receivers(self) -> list[str]:
        return list(dict.fromkeys(c.dest for c in self.connections))

    def into(self, dest: str) -> list[Connection]:
        return [c for c in self.connections if c.dest == dest]

    def check(self, net: "Network") -> None:
        """Raise NetworkError unless the set is well formed for ``net`` and its class."""
        seen = set()
        for c in self.connections:
            if c.source not in net.sources:
                raise NetworkError(f"connection source {c.source!r} is not a source")
            if c.dest not in net.destinations:
                raise NetworkError(f"connection destination {c.dest!r} is not a destination")
            if (c.source, c.dest) in seen:
                raise NetworkError(f"duplicate connection {c.source}->{c.dest}")
            seen.add((c.source, c.dest))
            mu = net.sources[c.source]
            if not c.processes or any(not 1 <= i <= mu for i in c.processes):
                raise NetworkError(
                    f"connection {c.source}->{c.dest}: process indices must lie in 1..{mu}"
                )
            if len(set(c.processes)) != len(c.processes):
                raise NetworkError(f"connection {c.source}->{c.dest}: repeated process index")
        kind = self.kind
        srcs = self.sources
        full = {s: tuple(range(1, net.sources[s] + 1)) for s in srcs}

        def is_full(c):
            return tuple(sorted(c.processes)) == full[c.source]

        if kind == "unicast":
            if len(self.connections) != 1:
                raise NetworkError("unicast needs exactly one connection")
        elif kind == "single-multicast":
            if len(srcs) != 1 or not all(is_full(c) for c in self.connections):
                raise NetworkError("single multicast: one source, every receiver demands all of X(S)")
        elif kind == "multiple-multicast":
            dests = self.receivers
            if not all(is_full(c) for c in self.connections) or len(self.connections) != len(
                srcs
            ) * len(dests):
                raise NetworkError(
                    "multiple multicast: every receiver demands all processes of every source"
                )
        elif kind in ("disjoint-multicast", "two-level-multicast"):
            if len(srcs) != 1:
                raise NetworkError(f"{kind}: exactly one source")
            tier = (
                self.connections
                if kind == "disjoint-multicast"
                else [c for c in self.connections if not is_full(c)]
            )
            used: dict[int, str] = {}
            for c in tier:
                for i in c.processes:
                    if i in used:
                        raise NetworkError(
                            f"{kind}: X(S,{used[i]}) and X(S,{c.dest}) share process {i}"
                        )
                    used[i] = c.dest

    def to_list(self) -> list[dict]:
        return [
            {"source": c.source, "dest": c.dest, "subset": list(c.processes), "class": self.kind}
            for c in self.connections
        ]


@dataclass(frozen=True)
class ValidationReport:
    acyclic: bool
    direction_errors: tuple[str, ...] = ()
    ownership_errors: tuple[str, ...] = ()
    duplicate_edges: tuple[str, ...] = ()
    process_errors: tuple[str, ...] = ()
    cycle: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        """No structural rule is broken (cycles are allowed here)."""
        return not (
            self.direction_errors or self.ownership_errors or self.duplicate_edges or self.process_errors
        )

    @property
    def static_ok(self) -> bool:
        return self.ok and self.acyclic

    def errors(self) -> list[str]:
        return [
            *self.direction_errors,
            *self.ownership_errors,
            *self.duplicate_edges,
            *self.process_errors,
        ]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "acyclic": self.acyclic,
            "errors": self.errors(),
            "cycle": [f"e{p + 1}" for p in self.cycle],
        }


@dataclass(frozen=True)
class CodeAssignment:
    """Values (element codes) of the free coding variables.

    ``beta[(e_in, e_out)]``  intra-node coefficient, both ports on one node.
    ``alpha[(i, e)]``        process i (0-based, of the source owning e) onto output port e.
    ``eps[(e, k)]``          destination input port e into output process k (0-based).
    ``links[(e_out, e_in)]`` coefficient of a physical edge; absent means 1.
    Missing beta/alpha/eps entries are 0.
    """

    beta: Mapping[tuple[int, int], int] = field(default_factory=dict)
    alpha: Mapping[tuple[int, int], int] = field(default_factory=dict)
    eps: Mapping[tuple[int, int], int] = field(default_factory=dict)
    links: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def check(self, net: "Network") -> None:
        owner = net.port_owner
        q = net.field.q
        for name, table in (("beta", self.beta), ("alpha", self.alpha), ("epsilon", self.eps), ("link", self.links)):
            for key, v in table.items():
                if not 0 <= int(v) < q:
                    raise NetworkError(f"{name} value {v} at {key} is not an element of GF({q})")
        for (a, b), v in self.beta.items():
            if not (
                0 <= a < net.n_ports
                and 0 <= b < net.n_ports
                and net.ports[a].direction == IN
                and net.ports[b].direction == OUT
                and owner[a] == owner[b]
            ):
                raise NetworkError(f"beta assigned to cross-node or misdirected pair (e{a + 1}, e{b + 1})")
        for (i, e), v in self.alpha.items():
            if not 0 <= e < net.n_ports:
                raise NetworkError(f"alpha on unknown port e{e + 1}")
            s = owner[e]
            if net.ports[e].direction != OUT or s not in net.sources or not 0 <= i < net.sources[s]:
                raise NetworkError(f"alpha ({i + 1}, e{e + 1}) is not a source output slot")
        for (e, k), v in self.eps.items():
            if not 0 <= e < net.n_ports:
                raise NetworkError(f"epsilon on unknown port e{e + 1}")
            t = owner[e]
            if (
                net.ports[e].direction != IN
                or t not in net.destinations
                or not 0 <= k < net.destinations[t]
            ):
                raise NetworkError(f"epsilon (e{e + 1}, {k + 1}) is not a destination input slot")
        edges = set(net.edges)
        for e in self.links:
            if e not in edges:
                raise NetworkError(f"link coefficient on unknown edge (e{e[0] + 1}, e{e[1] + 1})")

    def replace(self, **kw) -> "CodeAssignment":
        d = {"beta": self.beta, "alpha": self.alpha, "eps": self.eps, "links": self.links}
        d.update(kw)
        return CodeAssignment(**d)

    def to_dict(self) -> dict:
        def enc(m):
            return {f"{a + 1},{b + 1}": int(v) for (a, b), v in sorted(m.items()) if v}

        out = {"beta": enc(self.beta), "alpha": enc(self.alpha), "epsilon": enc(self.eps)}
        if self.links:
            out["links"] = {f"{a + 1},{b + 1}": int(v) for (a, b), v in sorted(self.links.items())}
        return out

    @classmethod
    def from_dict(cls, d: Mapping) -> "CodeAssignment":
        def dec(m):
            out = {}
            for key, v in (m or {}).items():
                a, b = (int(x) for x in str(key).split(","))
                out[(a - 1, b - 1)] = int(v)
            return out

        return cls(
            beta=dec(d.get("beta")),
            alpha=dec(d.get("alpha")),
            eps=dec(d.get("epsilon", d.get("eps"))),
            links=dec(d.get("links")),
        )


class Network:
    """An ADT network G = (V, E) with its traffic description.

    Treated as immutable: transforms and failures return new instances.
    """

    def __init__(
        self,
        nodes: Sequence[Node],
        edges: Iterable[tuple[int, int]],
        sources: Mapping[str, int] | None = None,
        destinations: Mapping[str, int] | None = None,
        field: GF | None = None,
        connections: ConnectionSet | None = None,
        erasures=None,
        delay: bool = False,
    ):
        self.nodes = tuple(nodes)
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise NetworkError("duplicate node id")
        self.node_index = {n.id: k for k, n in enumerate(self.nodes)}
        ports: list[Port] = []
        self.inputs_of: dict[str, tuple[int, ...]] = {}
        self.outputs_of: dict[str, tuple[int, ...]] = {}
        for n in self.nodes:
            labels = n.labels or (None,) * (n.inputs + n.outputs)
            ins = []
            for k in range(n.inputs):
                ins.append(len(ports))
                ports.append(Port(len(ports), n.id, IN, k, labels[k]))
            outs = []
            for k in range(n.outputs):
                outs.append(len(ports))
                ports.append(Port(len(ports), n.id, OUT, k, labels[n.inputs + k]))
            self.inputs_of[n.id] = tuple(ins)
            self.outputs_of[n.id] = tuple(outs)
        self.ports = tuple(ports)
        self.n_ports = len(ports)
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        self.sources = dict(sources or {})
        self.destinations = dict(destinations or {})
        for s in self.sources:
            if s not in self.node_index:
                raise NetworkError(f"source {s!r} is not a node")
        for t in self.destinations:
            if t not in self.node_index:
                raise NetworkError(f"destination {t!r} is not a node")
        self.field = field if field is not None else GF(2)
        self.connections = connections
        self.erasures = erasures
        self.delay = bool(delay)
        self.port_owner = tuple(p.owner for p in self.ports)
        self._label_index = {p.label: p.id for p in self.ports if p.label}

    # -- lookups ----------------------------------------------------------
    def port(self, ref) -> int:
        """Port id from a 0-based int, an ``"e<k>"`` name or a label."""
        pid = None
        if isinstance(ref, (int, np.integer)):
            pid = int(ref)
        elif ref in self._label_index:
            return self._label_index[ref]
        elif isinstance(ref, str) and ref.startswith("e") and ref[1:].isdigit():
            pid = int(ref[1:]) - 1
        if pid is None or not 0 <= pid < self.n_ports:
            raise NetworkError(f"unknown port {ref!r}")
        return pid

    def port_name(self, pid: int) -> str:
        return self.ports[pid].name

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def beta_slots(self) -> list[tuple[int, int]]:
        """Every intra-node (input, output) pair; connectivity is total within a node."""
        return [(a, b) for n in self.nodes for a in self.inputs_of[n.id] for b in self.outputs_of[n.id]]

    @property
    def alpha_slots(self) -> list[tuple[int, int]]:
        return [
            (i, e)
            for s, mu in self.sources.items()
            for i in range(mu)
            for e in self.outputs_of[s]
        ]

    @property
    def eps_slots(self) -> list[tuple[int, int]]:
        return [
            (e, k)
            for t, nu in self.destinations.items()
            for e in self.inputs_of[t]
            for k in range(nu)
        ]

    @property
    def processes(self) -> list[tuple[str, int]]:
        """Global source-process order: (source, 0-based index)."""
        return [(s, i) for s, mu in self.sources.items() for i in range(mu)]

    @property
    def outputs(self) -> list[tuple[str, int]]:
        """Global destination-process order Z: (destination, 0-based index)."""
        return [(t, k) for t, nu in self.destinations.items() for k in range(nu)]

    def process_row(self, source: str, i: int) -> int:
        """Row of X(source, i) (0-based i) in the global process order."""
        off = 0
        for s, mu in self.sources.items():
            if s == source:
                return off + i
            off += mu
        raise NetworkError(f"{source!r} is not a source")

    def output_cols(self, dest: str) -> list[int]:
        off = 0
        for t, nu in self.destinations.items():
            if t == dest:
                return list(range(off, off + nu))
            off += nu
        raise NetworkError(f"{dest!r} is not a destination")

    def replace(self, **kw) -> "Network":
        d = dict(
            nodes=self.nodes,
            edges=self.edges,
            sources=self.sources,
            destinations=self.destinations,
            field=self.field,
            connections=self.connections,
            erasures=self.erasures,
            delay=self.delay,
        )
        d.update(kw)
        return Network(**d)

    def without_edges(self, failed: Iterable[tuple[int, int]]) -> "Network":
        drop = set(failed)
        return self.replace(edges=[e for e in self.edges if e not in drop])

    def _key(self):
        return (
            self.nodes,
            self.edges,
            tuple(self.sources.items()),
            tuple(self.destinations.items()),
            self.field,
            self.connections,
            repr(self.erasures),
            self.delay,
        )

    def __eq__(self, other):
        return isinstance(other, Network) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key()[:2])

    def __repr__(self):
        return f"Network({self.n_nodes} nodes, {self.n_ports} ports, {len(self.edges)} edges, {self.field!r})"

    # -- structure --------------------------------------------------------
    def port_graph(self) -> dict[int, list[int]]:
        """Port-level successor lists: physical edges plus intra-node in->out pairs."""
        succ: dict[int, list[int]] = defaultdict(list)
        for a, b in self.edges:
            if 0 <= a < self.n_ports and 0 <= b < self.n_ports:
                succ[a].append(b)
        for a, b in self.beta_slots:
            succ[a].append(b)
        return succ

    def topological_ports(self) -> list[int] | None:
        """Topological order of the port graph, or None if it has a cycle."""
        return _toposort(self.n_ports, self.port_graph())

    def hyperedges(self) -> list[tuple[int, tuple[int, ...]]]:
        return hyperedges(self)

    def incidence(self) -> np.ndarray:
        """0/1 matrix over (all ports) x (all ports) of physical edges."""
        g = np.zeros((self.n_ports, self.n_ports), dtype=np.int64)
        for a, b in self.edges:
            g[a, b] = 1
        return g


def _toposort(n: int, succ: Mapping[int, Sequence[int]]) -> list[int] | None:
    indeg = [0] * n
    for a in range(n):
        for b in succ.get(a, ()):
            indeg[b] += 1
    ready = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while ready:
        a = ready.popleft()
        order.append(a)
        for b in succ.get(a, ()):
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    return order if len(order) == n else None


def _find_cycle(n: int, succ: Mapping[int, Sequence[int]]) -> tuple[int, ...]:
    color = [0] * n
    stack_pos: dict[int, int] = {}
    path: list[int] = []

    def dfs(u):
        color[u] = 1
        stack_pos[u] = len(path)
        path.append(u)
        for v in succ.get(u, ()):
            if color[v] == 1:
                return tuple(path[stack_pos[v] :])
            if color[v] == 0:
                found = dfs(v)
                if found:
                    return found
        path.pop()
        color[u] = 2
        return ()

    for u in range(n):
        if color[u] == 0:
            found = dfs(u)
            if found:
                return found
    return ()


def validate(net: Network) -> ValidationReport:
    """Check edge direction, port ownership, duplicates, process counts and acyclicity."""
    direction, ownership, dups, procs = [], [], [], []
    seen = set()
    for a, b in net.edges:
        if not (0 <= a < net.n_ports) or not (0 <= b < net.n_ports):
            ownership.append(f"edge ({a + 1}, {b + 1}) references a port that no node owns")
            continue
        pa, pb = net.ports[a], net.ports[b]
        if pa.direction != OUT or pb.direction != IN:
            direction.append(
                f"edge ({pa.name}, {pb.name}) goes {pa.direction}->{pb.direction}; edges must go output->input"
            )
        if (a, b) in seen:
            dups.append(f"duplicate edge ({pa.name}, {pb.name})")
        seen.add((a, b))
    for s, mu in net.sources.items():
        if mu > len(net.outputs_of[s]):
            procs.append(f"source {s}: mu(S)={mu} exceeds |O(S)|={len(net.outputs_of[s])}")
        if mu < 0:
            procs.append(f"source {s}: negative process count")
    for t, nu in net.destinations.items():
        if nu < 0:
            procs.append(f"destination {t}: negative process count")
    if ownership:
        return ValidationReport(False, tuple(direction), tuple(ownership), tuple(dups), tuple(procs))
    succ = net.port_graph()
    order = _toposort(net.n_ports, succ)
    cycle = () if order is not None else _find_cycle(net.n_ports, succ)
    return ValidationReport(
        order is not None, tuple(direction), tuple(ownership), tuple(dups), tuple(procs), cycle
    )


def require_static(net: Network) -> list[int]:
    """Topological port order, raising NetworkError for malformed or cyclic networks.

    Process-count problems are left to the caller: an over-demanding rate is
    reported through the min-cut rather than refused up front.
    """
    rep = validate(net)
    structural = [*rep.direction_errors, *rep.ownership_errors, *rep.duplicate_edges]
    if structural:
        raise NetworkError("; ".join(structural))
    if not rep.acyclic:
        raise NetworkError(
            "network has a port-level cycle ("
            + " -> ".join(net.port_name(p) for p in rep.cycle)
            + "); use the delay model"
        )
    return net.topological_ports()  # type: ignore[return-value]


def hyperedges(net: Network) -> list[tuple[int, tuple[int, ...]]]:
    """(output port, receiving input ports) for every output port that transmits."""
    groups: dict[int, list[int]] = defaultdict(list)
    for a, b in net.edges:
        groups[a].append(b)
    return [(a, tuple(sorted(groups[a]))) for a in sorted(groups)]


# ---------------------------------------------------------------------------
# Super-node transforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformMapping:
    """Port correspondence produced by a super-node transform.

    ``port_map`` sends every original port id to its id in the new network.
    ``links`` lists (super-node port, original node, new port on that node,
    original port it mirrors), all ids in the new network except the last.
    """

    kind: str
    super_node: str
    port_map: Mapping[int, int]
    links: tuple[tuple[int, str, int, int], ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "super_node": self.super_node,
            "port_map": {str(k + 1): v + 1 for k, v in sorted(self.port_map.items())},
            "links": [
                {"super_port": a + 1, "node": n, "port": b + 1, "mirrors": c + 1}
                for a, n, b, c in self.links
            ],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "TransformMapping":
        return cls(
            kind=d["kind"],
            super_node=d["super_node"],
            port_map={int(k) - 1: int(v) - 1 for k, v in d["port_map"].items()},
            links=tuple(
                (int(x["super_port"]) - 1, x["node"], int(x["port"]) - 1, int(x["mirrors"]) - 1)
                for x in d["links"]
            ),
        )


def _fresh_id(net: Network, base: str) -> str:
    name = base
    while name in net.node_index:
        name += "'"
    return name


def _renumber(old: Network, new_nodes: Sequence[Node]) -> dict[int, int]:
    """Map old port ids to ids under new node list (old ports keep their slot order)."""
    probe = Network(new_nodes, [], field=old.field)
    m = {}
    for n in old.nodes:
        for k, p in enumerate(old.inputs_of[n.id]):
            m[p] = probe.inputs_of[n.id][k]
        for k, p in enumerate(old.outputs_of[n.id]):
            m[p] = probe.outputs_of[n.id][k]
    return m


def add_super_source(
    net: Network, sources: Sequence[str] | None = None, name: str = "S*"
) -> tuple[Network, TransformMapping]:
    """Merge ``sources`` behind one super-source with sum |O(S_i)| outputs.

    Each original source output port gets a fresh input port on its node, fed
    one-to-one by a super-source output; the originals become relays.
    """
    sources = list(sources if sources is not None else net.sources)
    if not sources:
        raise NetworkError("need at least one source")
    for s in sources:
        if s not in net.sources:
            raise NetworkError(f"{s!r} is not a source")
    sid = _fresh_id(net, name)
    n_super = sum(len(net.outputs_of[s]) for s in sources)
    new_nodes = [Node(sid, 0, n_super)]
    for n in net.nodes:
        if n.id in sources:
            extra = len(net.outputs_of[n.id])
            labels = ()
            if n.labels:
                labels = (
                    n.labels[: n.inputs]
                    + tuple(f"{n.id}.in*{k + 1}" for k in range(extra))
                    + n.labels[n.inputs :]
                )
            new_nodes.append(Node(n.id, n.inputs + extra, n.outputs, labels))
        else:
            new_nodes.append(n)
    pmap = _renumber(net, new_nodes)
    probe = Network(new_nodes, [], field=net.field)
    edges = [(pmap[a], pmap[b]) for a, b in net.edges]
    links = []
    k = 0
    for s in sources:
        for j, e in enumerate(net.outputs_of[s]):
            sp = probe.outputs_of[sid][k]
            fresh = probe.inputs_of[s][net.nodes[net.node_index[s]].inputs + j]
            edges.append((sp, fresh))
            links.append((sp, s, fresh, e))
            k += 1
    mu = sum(net.sources[s] for s in sources)
    new_sources = {sid: mu}
    new_sources.update({s: m for s, m in net.sources.items() if s not in sources})
    new_net = net.replace(
        nodes=new_nodes,
        edges=edges,
        sources=new_sources,
        connections=None,
        erasures=None,
    )
    return new_net, TransformMapping("super-source", sid, pmap, tuple(links))


def add_super_destination(
    net: Network, dests: Sequence[str] | None = None, name: str = "T*", processes: int | None = None
) -> tuple[Network, TransformMapping]:
    """Join ``dests`` into one super-destination with sum |I(T_i)| inputs.

    Each original destination input port gets a mirror output port on its
    node, wired one-to-one into the super-destination.  The originals are
    demoted to relays; the super-destination demands ``processes`` outputs
    (default: the sum of the originals' counts).
    """
    dests = list(dests if dests is not None else net.destinations)
    if not dests:
        raise NetworkError("need at least one destination")
    tid = _fresh_id(net, name)
    n_super = sum(len(net.inputs_of[t]) for t in dests)
    new_nodes = []
    for n in net.nodes:
        if n.id in dests:
            extra = len(net.inputs_of[n.id])
            labels = ()
            if n.labels:
                labels = n.labels + tuple(f"{n.id}.out*{k + 1}" for k in range(extra))
            new_nodes.append(Node(n.id, n.inputs, n.outputs + extra, labels))
        else:
            new_nodes.append(n)
    new_nodes.append(Node(tid, n_super, 0))
    pmap = _renumber(net, new_nodes)
    probe = Network(new_nodes, [], field=net.field)
    edges = [(pmap[a], pmap[b]) for a, b in net.edges]
    links = []
    k = 0
    for t in dests:
        n_out = net.nodes[net.node_index[t]].outputs
        for j, e in enumerate(net.inputs_of[t]):
            mirror = probe.outputs_of[t][n_out + j]
            sp = probe.inputs_of[tid][k]
            edges.append((mirror, sp))
            links.append((sp, t, mirror, e))
            k += 1
    nu = processes if processes is not None else sum(net.destinations.get(t, 0) for t in dests)
    new_dests = {t: v for t, v in net.destinations.items() if t not in dests}
    new_dests[tid] = nu
    new_net = net.replace(
        nodes=new_nodes, edges=edges, destinations=new_dests, connections=None, erasures=None
    )
    return new_net, TransformMapping("super-destination", tid, pmap, tuple(links))


# ---------------------------------------------------------------------------
# Assignments
# ---------------------------------------------------------------------------


def random_assignment(
    net: Network,
    rng: np.random.Generator,
    *,
    alpha: bool = True,
    beta: bool = True,
    eps: bool = True,
) -> CodeAssignment:
    """Uniform draw of the selected variable families over the network's field."""
    f = net.field

    def draw(slots):
        vals = f.random(rng, len(slots))
        return {s: int(v) for s, v in zip(slots, vals)}

    return CodeAssignment(
        beta=draw(net.beta_slots) if beta else {},
        alpha=draw(net.alpha_slots) if alpha else {},
        eps=draw(net.eps_slots) if eps else {},
    )


def random_network(
    rng: np.random.Generator,
    n_nodes: int = 6,
    max_ports: int = 24,
    edge_prob: float = 0.35,
    field: GF | None = None,
    max_side: int = 3,
) -> Network:
    """Random acyclic ADT network: edges only run from earlier to later nodes.

    Every node gets 1..max_side inputs and outputs (the first node no inputs,
    the last no outputs), trimmed to at most ``max_ports`` ports in total.
    """
    nodes = []
    budget = max_ports
    for k in range(n_nodes):
        n_in = 0 if k == 0 else int(rng.integers(1, max_side + 1))
        n_out = 0 if k == n_nodes - 1 else int(rng.integers(1, max_side + 1))
        remaining_nodes = n_nodes - k - 1
        cap = max(budget - remaining_nodes, 0)
        n_in = min(n_in, cap)
        n_out = min(n_out, max(cap - n_in, 0))
        budget -= n_in + n_out
        nodes.append(Node(f"N{k}", n_in, n_out))
    probe = Network(nodes, [], field=field)
    edges = []
    for a_idx, a in enumerate(nodes):
        for b in nodes[a_idx + 1 :]:
            for e_out in probe.outputs_of[a.id]:
                for e_in in probe.inputs_of[b.id]:
                    if rng.random() < edge_prob:
                        edges.append((e_out, e_in))
    sources = {nodes[0].id: nodes[0].outputs}
    dests = {nodes[-1].id: nodes[-1].inputs}
    return Network(nodes, edges, sources, dests, field=field)
