"""Command-line front end: ``adtnc <command> NETWORK.json [options]``.

Exit status: 0 success or feasible, 2 infeasible (including a cyclic
network under ``--static``), 1 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import _kernels
from .codecon import InfeasibleError, construct, verify
from .delaynet import delayed_system_matrix, delayed_transfer, delayed_verify, nonsingular, random_delay_code, rational_text
from .erasim import feasibility_time_varying, static_solution
from .galois import make_rng
from .linalg import NotNilpotentError, build_F
from .mincut import mincut_all_pairs
from .netfile import NetworkFileError, assignment_to_dict, load_assignment, load_network
from .netmodel import CONNECTION_CLASSES, ConnectionSet, NetworkError, random_assignment, validate

REPORT_SCHEMA = "adtnc.report/1"
EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Infeasible(Exception):
    pass


def _common(p: argparse.ArgumentParser, seed=True):
    p.add_argument("network", help="network JSON file")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", help="also write the JSON report to this file")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="adtnc", description="Linear network coding on ADT deterministic networks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check structure and acyclicity")
    _common(p, seed=False)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--static", action="store_true", help="treat a cycle as infeasible")
    mode.add_argument("--delay", action="store_true", help="accept cycles (unit-delay model)")

    p = sub.add_parser("mincut", help="min-cut for each connection (or a given pair)")
    _common(p)
    p.add_argument("source", nargs="?", help="source node (default: every connection)")
    p.add_argument("dest", nargs="?", help="destination node")
    p.add_argument("--method", choices=("auto", "enumeration", "enum", "algebraic", "alg"), default="auto")
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--q", type=int, help="field order for the algebraic method")

    p = sub.add_parser("code", help="construct a code for the connection set")
    _common(p)
    p.add_argument("--class", dest="kind", choices=CONNECTION_CLASSES, help="override the connection class")
    p.add_argument("--q", type=int, help="field order (default: automatic)")
    p.add_argument("--trials", type=int, default=8)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--static", action="store_true", help="require an acyclic network")
    mode.add_argument("--delay", action="store_true", help="use the unit-delay model")
    p.add_argument("--assignment-out", help="write the assignment JSON here")

    p = sub.add_parser("verify", help="check an assignment against the connection set")
    _common(p, seed=False)
    p.add_argument("assignment", help="assignment JSON (or a report containing one)")
    p.add_argument("--class", dest="kind", choices=CONNECTION_CLASSES)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--static", action="store_true")
    mode.add_argument("--delay", action="store_true")

    p = sub.add_parser("erasure", help="static or time-averaged erasure analysis")
    _common(p)
    p.add_argument("--static", action="store_true", help="search for one code that survives every pattern")
    p.add_argument("--method", choices=("exact", "monte-carlo"), default="exact")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--q", type=int)
    p.add_argument("--trials", type=int, default=16)

    p = sub.add_parser("delay", help="transfer and system matrix under unit delays")
    _common(p)
    p.add_argument("--assignment", help="assignment JSON (default: random)")
    p.add_argument("--order", type=int, default=0, help="print (I - DF)^-1 as a series to this order")
    p.add_argument("--method", choices=("evaluation", "symbolic"), default="evaluation")
    p.add_argument("--trials", type=int, default=8)
    return ap


def _conns(net, kind):
    if net.connections is None:
        raise NetworkError("the network file has no connections")
    if kind:
        return ConnectionSet(net.connections.connections, kind)
    return net.connections


def _use_delay(args, net) -> bool:
    if getattr(args, "delay", False):
        return True
    if getattr(args, "static", False):
        return False
    return net.delay


def _cmd_validate(args, net):
    rep = validate(net)
    data = rep.to_dict()
    lines = [f"structure: {'ok' if rep.ok else 'INVALID'}", f"acyclic:   {'yes' if rep.acyclic else 'no'}"]
    lines += [f"  error: {e}" for e in rep.errors()]
    if rep.cycle:
        lines.append("  cycle: " + " -> ".join(net.port_name(p) for p in rep.cycle))
    if not rep.ok:
        raise NetworkError("invalid network: " + "; ".join(rep.errors()))
    static = args.static or (not args.delay and not net.delay)
    if not rep.acyclic:
        lines.append("  " + ("cyclic: rerun with --delay" if static else "cyclic: accepted under the delay model"))
    return data, lines, static and not rep.acyclic


def _cmd_mincut(args, net):
    from .mincut import field_for

    net = field_for(net, args.q)
    if args.source or args.dest:
        if not (args.source and args.dest):
            raise NetworkError("give both a source and a destination")
        pairs = [(args.source, args.dest)]
    elif net.connections is not None:
        pairs = list(dict.fromkeys((c.source, c.dest) for c in net.connections))
    else:
        pairs = [(s, t) for s in net.sources for t in net.destinations]
    reps = mincut_all_pairs(net, pairs, args.method, args.trials, make_rng(args.seed))
    lines = []
    for r in reps:
        if r.method == "enumeration":
            lines.append(f"mincut({r.source}, {r.dest}) = {r.value}   [enumeration, cut {{{', '.join(r.witness)}}}]")
        else:
            warn = "  (low field: raise --q)" if r.low_field else ""
            lines.append(f"mincut({r.source}, {r.dest}) >= {r.value}   [algebraic, {r.trials} trials, q={r.q}]{warn}")
    return {"cuts": [r.to_dict() for r in reps]}, lines, False


def _verdict_lines(verdict_dict):
    lines = []
    for r in verdict_dict["receivers"]:
        status = "ok" if r["ok"] else "FAIL"
        lines.append(f"  {r['dest']}: {status}  demands {', '.join(r['demanded'])}")
        if r.get("reason"):
            lines.append(f"      {r['reason']}")
        elif r.get("interference"):
            lines.append(f"      interference from {', '.join(r['interference'])}")
    for n in verdict_dict.get("notes", []):
        lines.append(f"  note: {n}")
    return lines


def _cmd_code(args, net):
    conns = _conns(net, args.kind)
    rng = make_rng(args.seed)
    if _use_delay(args, net):
        code, verdict, k = random_delay_code(net, conns, args.trials, rng)
        data = {"model": "delay", "attempts": k, "verdict": verdict.to_dict(), "assignment": code.to_dict()}
        lines = [f"delay-model code: {'feasible' if verdict.feasible else 'not found'} after {k} draws"]
        lines += _verdict_lines({"receivers": [dict(r, reason="" if r["ok"] else "demanded block singular or leaking") for r in verdict.receivers]})
        _write_assignment(args, code)
        return data, lines, not verdict.feasible
    rep = validate(net)
    if not rep.acyclic:
        raise _Infeasible(
            "network is cyclic ("
            + " -> ".join(net.port_name(p) for p in rep.cycle)
            + "); rerun with --delay"
        )
    try:
        res = construct(net, conns, args.q, args.trials, rng)
    except InfeasibleError as exc:
        return {"feasible": False, "reason": str(exc), "detail": exc.detail}, [f"infeasible: {exc}"], True
    data = res.to_dict()
    lines = [
        f"{conns.kind} over GF({res.net.field.q}): {'feasible' if res.verdict.feasible else 'no code found'}"
        f" ({res.successes}/{res.attempts} draws succeeded)"
    ]
    if res.bound is not None:
        lines.append(f"  per-draw success bound: {res.bound:.4f}")
    lines += _verdict_lines(data["verdict"])
    if res.verdict.feasible:
        _write_assignment(args, res.code)
    return data, lines, not res.verdict.feasible


def _write_assignment(args, code):
    if getattr(args, "assignment_out", None):
        with open(args.assignment_out, "w", encoding="utf-8") as fh:
            json.dump(assignment_to_dict(code), fh, indent=2)
            fh.write("\n")


def _cmd_verify(args, net):
    conns = _conns(net, args.kind)
    code = load_assignment(args.assignment, net)
    if _use_delay(args, net):
        v = delayed_verify(net, code, conns)
        lines = [f"delay model: {'feasible' if v.feasible else 'INFEASIBLE'}"]
        for r in v.receivers:
            lines.append(f"  {r['dest']}: {'ok' if r['ok'] else 'FAIL'}  demands {', '.join(r['demanded'])}")
        return v.to_dict(), lines, not v.feasible
    rep = validate(net)
    if not rep.acyclic:
        raise _Infeasible("network is cyclic; rerun with --delay")
    v = verify(net, code, conns)
    d = v.to_dict()
    return d, [f"{conns.kind}: {'feasible' if v.feasible else 'INFEASIBLE'}"] + _verdict_lines(d), not v.feasible


def _cmd_erasure(args, net):
    rng = make_rng(args.seed)
    if args.static:
        if not validate(net).acyclic:
            raise _Infeasible("network is cyclic; static erasure codes need an acyclic network")
        res = static_solution(net, q=args.q, trials=args.trials, rng=rng)
        lines = [f"static code: {'found' if res.feasible else 'none'} over GF({res.net.field.q})"]
        if res.reason:
            lines.append(f"  {res.reason}")
        for r in res.per_pattern:
            fails = ", ".join(f"({a},{b})" for a, b in r["pattern"]) or "none"
            cuts = ", ".join(f"{t}:{c}" for t, c in r["mincut"].items())
            lines.append(f"  p={r['p']:.4g}  failed {fails}  mincut {cuts}")
        return res.to_dict(), lines, not res.feasible
    rep = feasibility_time_varying(net, method=args.method, samples=args.samples, rng=rng)
    lines = [f"time-varying ({rep['method']}): {'feasible' if rep['feasible'] else 'INFEASIBLE'}"]
    for r in rep["connections"]:
        se = f" +/- {r['stderr']:.4f}" if r["stderr"] else ""
        lines.append(f"  {r['source']}->{r['dest']}: rate {r['rate']}, average mincut {r['average_mincut']:.4f}{se}")
    return rep, lines, not rep["feasible"]


def _cmd_delay(args, net):
    rng = make_rng(args.seed)
    conns = net.connections
    if args.assignment:
        code = load_assignment(args.assignment, net)
    elif conns is not None:
        code, _, _ = random_delay_code(net, conns, args.trials, rng)
    else:
        code = random_assignment(net, rng)
    F = build_F(net, code)
    data = {"assignment": code.to_dict()}
    lines = []
    if args.order > 0:
        S = delayed_transfer(F, "series", args.order)
        lines.append(f"(I - DF)^-1 mod D^{args.order}:")
        lines += ["  " + row for row in S.to_text().splitlines()]
        data["transfer_series"] = [[str(S.entry(i, j)) for j in range(F.shape[0])] for i in range(F.shape[0])]
    M = delayed_system_matrix(net, code)
    data["M"] = [[str(x) for x in row] for row in M.data]
    lines.append("M(D):")
    lines += ["  " + row for row in rational_text(M).splitlines()]
    bad = False
    if conns is not None:
        v = delayed_verify(net, code, conns, args.method)
        data["verdict"] = v.to_dict()
        lines.append(f"decodable: {'yes' if v.feasible else 'no'}")
        bad = not v.feasible
    elif M.shape[0] == M.shape[1]:
        rep = nonsingular(M, args.method)
        data["nonsingular"] = rep.to_dict()
        lines.append(f"nonsingular: {'yes' if rep.nonsingular else 'no'}")
        bad = not rep.nonsingular
    return data, lines, bad


COMMANDS = {
    "validate": _cmd_validate,
    "mincut": _cmd_mincut,
    "code": _cmd_code,
    "verify": _cmd_verify,
    "erasure": _cmd_erasure,
    "delay": _cmd_delay,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        net = load_network(args.network)
        data, lines, bad = COMMANDS[args.command](args, net)
        status = EXIT_INFEASIBLE if bad else EXIT_OK
    except _Infeasible as exc:
        data, lines, status = {"feasible": False, "reason": str(exc)}, [f"infeasible: {exc}"], EXIT_INFEASIBLE
    except (NetworkFileError, NetworkError, NotNilpotentError, ValueError) as exc:
        print(f"adtnc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "schema": REPORT_SCHEMA,
        "command": args.command,
        "network": args.network,
        "backend": _kernels.BACKEND,
        "status": status,
        **({"seed": args.seed} if hasattr(args, "seed") else {}),
        "result": data,
    }
    text = json.dumps(report, indent=2)
    if args.format == "json":
        print(text)
    else:
        print("\n".join(lines))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
