"""JSON network and assignment files.

A network file looks like::

    {
      "format": "adtnc.network/1",
      "field": {"p": 2, "m": 8},
      "nodes": [{"id": "S", "inputs": 0, "outputs": 2}, ...],
      "edges": [["e1", "e3"], [2, 4], ...],
      "sources": [{"node": "S", "processes": 2}],
      "destinations": [{"node": "T", "processes": 2}],
      "connections": [{"source": "S", "dest": "T", "subset": [1, 2], "class": "unicast"}],
      "erasures": {"iid": 0.1},
      "delay": false
    }

Ports are referenced by 1-based number, by ``"e<k>"``, or by a node's port
label when the node lists ``labels`` (labels take precedence).  Saving always
writes 1-based numbers, so load/save/load is lossless.  ``field`` may also
be given as ``{"q": 256}`` or a bare order, and ``sources``/``destinations``
as ``{"S": 2}`` objects.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .erasim import FailureModel
from .galois import GF
from .netmodel import CONNECTION_CLASSES, CodeAssignment, Connection, ConnectionSet, Network, NetworkError, Node

FORMAT = "adtnc.network/1"
ASSIGNMENT_FORMAT = "adtnc.assignment/1"
FIXTURES = ("fig2", "diamond", "cycle2", "multisource", "parallel", "twolevel", "butterfly", "combination", "relay2")


class NetworkFileError(NetworkError):
    """Malformed network or assignment file; carries a location when known."""

    def __init__(self, msg: str, source: str = "<string>", line: int | None = None, column: int | None = None, path: str = ""):
        where = source
        if line is not None:
            where += f":{line}:{column}"
        if path:
            where += f" at {path}"
        super().__init__(f"{where}: {msg}")
        self.source = source
        self.line = line
        self.column = column
        self.path = path


def _parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(exc.msg, source, exc.lineno, exc.colno) from None


def _field(obj, source) -> GF:
    try:
        if obj is None:
            return GF(2)
        if isinstance(obj, int):
            return GF.from_order(obj)
        if isinstance(obj, Mapping):
            if "q" in obj:
                return GF.from_order(int(obj["q"]))
            return GF.from_dict(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise NetworkFileError(str(exc), source, path="field") from None
    raise NetworkFileError("expected an integer order or an object", source, path="field")


def _need(d: Mapping, key: str, typ, source: str, path: str):
    if key not in d:
        raise NetworkFileError(f"missing key {key!r}", source, path=path)
    v = d[key]
    if not isinstance(v, typ) or isinstance(v, bool) and typ is not bool:
        raise NetworkFileError(f"{key!r} has the wrong type", source, path=f"{path}.{key}" if path else key)
    return v


def network_from_dict(d: Mapping[str, Any], source: str = "<string>") -> Network:
    if not isinstance(d, Mapping):
        raise NetworkFileError("top level must be an object", source)
    fmt = d.get("format", FORMAT)
    if fmt != FORMAT:
        raise NetworkFileError(f"unknown format {fmt!r}", source, path="format")
    field = _field(d.get("field"), source)
    nodes = []
    for k, nd in enumerate(_need(d, "nodes", list, source, "")):
        path = f"nodes[{k}]"
        if not isinstance(nd, Mapping):
            raise NetworkFileError("node must be an object", source, path=path)
        try:
            nodes.append(
                Node(
                    str(_need(nd, "id", str, source, path)),
                    int(nd.get("inputs", 0)),
                    int(nd.get("outputs", 0)),
                    tuple(nd.get("labels", ())),
                )
            )
        except NetworkError as exc:
            raise NetworkFileError(str(exc), source, path=path) from None
    try:
        probe = Network(nodes, [], field=field)
    except NetworkError as exc:
        raise NetworkFileError(str(exc), source, path="nodes") from None

    def resolve(ref, path):
        if isinstance(ref, bool):
            raise NetworkFileError("port reference must be a number or a name", source, path=path)
        if isinstance(ref, int):
            return ref - 1
        try:
            return probe.port(ref)
        except NetworkError as exc:
            raise NetworkFileError(str(exc), source, path=path) from None

    edges = []
    for k, e in enumerate(d.get("edges", [])):
        if not isinstance(e, list) or len(e) != 2:
            raise NetworkFileError("edge must be a pair [from, to]", source, path=f"edges[{k}]")
        edges.append((resolve(e[0], f"edges[{k}][0]"), resolve(e[1], f"edges[{k}][1]")))

    def counts(key):
        v = d.get(key, [])
        if isinstance(v, Mapping):
            v = [{"node": k, "processes": x} for k, x in v.items()]
        if not isinstance(v, list):
            raise NetworkFileError(f"{key!r} must be a list of {{node, processes}}", source, path=key)
        out = {}
        for k, item in enumerate(v):
            path = f"{key}[{k}]"
            if not isinstance(item, Mapping):
                raise NetworkFileError("entry must be an object", source, path=path)
            node = _need(item, "node", str, source, path)
            n = _need(item, "processes", int, source, path)
            if node in out:
                raise NetworkFileError(f"{node!r} listed twice", source, path=path)
            out[node] = n
        return out

    sources, dests = counts("sources"), counts("destinations")
    conns = None
    if d.get("connections") is not None:
        items = d["connections"]
        if not isinstance(items, list):
            raise NetworkFileError("'connections' must be a list", source, path="connections")
        kinds = set()
        cs = []
        for k, c in enumerate(items):
            path = f"connections[{k}]"
            if not isinstance(c, Mapping):
                raise NetworkFileError("connection must be an object", source, path=path)
            sub = _need(c, "subset", list, source, path)
            cs.append(Connection(str(_need(c, "source", str, source, path)), str(_need(c, "dest", str, source, path)), tuple(int(i) for i in sub)))
            kinds.add(c.get("class", d.get("class", "general")))
        if len(kinds) > 1:
            raise NetworkFileError(f"connections mix classes {sorted(kinds)}", source, path="connections")
        kind = kinds.pop() if kinds else d.get("class", "general")
        if kind not in CONNECTION_CLASSES:
            raise NetworkFileError(f"unknown connection class {kind!r}", source, path="connections")
        conns = ConnectionSet(tuple(cs), kind)
    erasures = None
    if d.get("erasures") is not None:
        try:
            erasures = FailureModel.from_json(d["erasures"], lambda r: resolve(r, "erasures"))
        except NetworkFileError:
            raise
        except (NetworkError, TypeError, ValueError) as exc:
            raise NetworkFileError(str(exc), source, path="erasures") from None
    delay = d.get("delay", False)
    if not isinstance(delay, bool):
        raise NetworkFileError("'delay' must be true or false", source, path="delay")
    try:
        net = Network(nodes, edges, sources, dests, field, conns, erasures, delay)
        if erasures is not None:
            erasures.check(net)
        if conns is not None:
            conns.check(net)
    except NetworkError as exc:
        raise NetworkFileError(str(exc), source) from None
    return net


def network_to_dict(net: Network) -> dict:
    nodes = []
    for n in net.nodes:
        nd: dict[str, Any] = {"id": n.id, "inputs": n.inputs, "outputs": n.outputs}
        if n.labels:
            nd["labels"] = list(n.labels)
        nodes.append(nd)
    f = net.field
    out: dict[str, Any] = {
        "format": FORMAT,
        "field": f.to_dict(),
        "nodes": nodes,
        "edges": [[a + 1, b + 1] for a, b in net.edges],
        "sources": [{"node": k, "processes": v} for k, v in net.sources.items()],
        "destinations": [{"node": k, "processes": v} for k, v in net.destinations.items()],
    }
    if net.connections is not None:
        out["connections"] = net.connections.to_list()
    if net.erasures is not None:
        out["erasures"] = net.erasures.to_json()
    out["delay"] = net.delay
    return out


def loads_network(text: str, source: str = "<string>") -> Network:
    return network_from_dict(_parse_json(text, source), source)


def load_network(path) -> Network:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise NetworkFileError(exc.strerror or str(exc), str(p)) from None
    return loads_network(text, str(p))


def dumps_network(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=2) + "\n"


def save_network(net: Network, path) -> None:
    Path(path).write_text(dumps_network(net), encoding="utf-8")


def assignment_from_dict(d: Mapping, net: Network, source: str = "<string>") -> CodeAssignment:
    """Keys are "a,b" pairs; port positions accept numbers, ``e<k>`` or labels."""

    def port(ref, path):
        ref = ref.strip()
        try:
            return int(ref) - 1 if ref.isdigit() else net.port(ref)
        except NetworkError as exc:
            raise NetworkFileError(str(exc), source, path=path) from None

    def table(key, first_port, second_port):
        out = {}
        for k, v in (d.get(key) or {}).items():
            parts = str(k).split(",")
            if len(parts) != 2:
                raise NetworkFileError(f"key {k!r} is not 'a,b'", source, path=f"{key}.{k}")
            a = port(parts[0], f"{key}.{k}") if first_port else int(parts[0]) - 1
            b = port(parts[1], f"{key}.{k}") if second_port else int(parts[1]) - 1
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < net.field.q:
                raise NetworkFileError(f"{v!r} is not an element of {net.field!r}", source, path=f"{key}.{k}")
            out[(a, b)] = v
        return out

    if not isinstance(d, Mapping):
        raise NetworkFileError("assignment must be an object", source)
    if d.get("schema") == "adtnc.report/1":
        d = d.get("result", {}).get("assignment") or {}
    code = CodeAssignment(
        beta=table("beta", True, True),
        alpha=table("alpha", False, True),
        eps=table("epsilon", True, False) or table("eps", True, False),
        links=table("links", True, True),
    )
    try:
        code.check(net)
    except NetworkError as exc:
        raise NetworkFileError(str(exc), source) from None
    return code


def load_assignment(path, net: Network) -> CodeAssignment:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise NetworkFileError(exc.strerror or str(exc), str(p)) from None
    return assignment_from_dict(_parse_json(text, str(p)), net, str(p))


def assignment_to_dict(code: CodeAssignment) -> dict:
    return {"format": ASSIGNMENT_FORMAT, **code.to_dict()}


def fixture_path(name: str) -> Path:
    """Path of a bundled example network (``fig2``, ``diamond``, ...)."""
    stem = name[:-5] if name.endswith(".json") else name
    return Path(str(resources.files("adtnc") / "fixtures" / f"{stem}.json"))


def fixture(name: str) -> Network:
    return load_network(fixture_path(name))


def fixtures() -> dict[str, Network]:
    return {name: fixture(name) for name in FIXTURES}


def schema(name: str) -> dict:
    """Bundled JSON schema: ``network``, ``assignment`` or ``report``."""
    return json.loads((resources.files("adtnc") / "schema" / f"{name}.schema.json").read_text(encoding="utf-8"))
