"""Compare the compiled GF(q) kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Kernel rows call ``adtnc._kernels._core`` and ``adtnc._kernels._pure``
directly on the same inputs.  The end-to-end row runs a min-cut workload in
a subprocess per backend, selected with ``ADTNC_PURE_PYTHON``.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from adtnc import _kernels
from adtnc._kernels import _pure
from adtnc.galois import GF
from adtnc.mincut import mincut_enumeration
from adtnc.netmodel import random_network

try:
    from adtnc._kernels import _core
except ImportError:
    _core = None

WORKLOAD = """
import time, numpy as np
from adtnc.galois import GF
from adtnc.mincut import mincut_algebraic, mincut_enumeration
from adtnc.netmodel import random_network
rng = np.random.default_rng(0)
t0 = time.perf_counter()
for _ in range(40):
    net = random_network(rng, n_nodes=8, max_ports=24, field=GF(2, 16))
    for t in [n.id for n in net.nodes[1:]]:
        mincut_enumeration(net, "N0", t)
        mincut_algebraic(net, "N0", t, trials=4, rng=rng)
print(time.perf_counter() - t0)
"""


def kernel_cases(rng):
    f8, fp = GF(2, 8), GF(257)
    a = f8.random(rng, (64, 64)).reshape(64, 64)
    b = f8.random(rng, (64, 64)).reshape(64, 64)
    d = fp.random(rng, (32, 32)).reshape(32, 32)
    F = np.triu(f8.random(rng, (96, 96)).reshape(96, 96), 1)
    F[rng.random(F.shape) < 0.9] = 0
    order = np.arange(96, dtype=np.int64)
    t8 = (f8.p, f8.exp, f8.log)
    tp = (fp.p, fp.exp, fp.log)
    return {
        "rank 64x64 GF(2^8)": lambda m: m.rank(a, *t8),
        "rref 64x64 GF(2^8)": lambda m: m.rref(a, *t8),
        "det 32x32 GF(257)": lambda m: m.det(d, *tp),
        "matmul 64x64 GF(2^8)": lambda m: m.matmul(a, b, *t8),
        "transfer 96 ports GF(2^8)": lambda m: m.transfer(F, order, *t8),
    }


def mincut_case(rng):
    net = random_network(rng, n_nodes=12, max_ports=40)

    def run(m):
        saved = _kernels.mincut_enum
        _kernels.mincut_enum = m.mincut_enum
        try:
            mincut_enumeration(net, "N0", "N11")
        finally:
            _kernels.mincut_enum = saved

    return {"mincut enumeration, 12 nodes": run}


def best_of(fn, repeat):
    timer = timeit.Timer(fn)
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n


def end_to_end(pure: bool) -> float:
    env = dict(os.environ, ADTNC_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write timings here")
    ap.add_argument("--skip-e2e", action="store_true", help="kernel rows only")
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled core not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rng = np.random.default_rng(1)
    cases = {**kernel_cases(rng), **mincut_case(rng)}
    rows = []
    for name, fn in cases.items():
        tp = best_of(lambda: fn(_pure), args.repeat)
        tc = best_of(lambda: fn(_core), args.repeat)
        rows.append({"case": name, "python_s": tp, "cython_s": tc, "speedup": tp / tc})
    if not args.skip_e2e:
        tp, tc = end_to_end(True), end_to_end(False)
        rows.append({"case": "min-cut workload (end to end)", "python_s": tp, "cython_s": tc, "speedup": tp / tc})

    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  {'python':>10}  {'cython':>10}  speedup")
    for r in rows:
        print(f"{r['case']:<{width}}  {r['python_s'] * 1e3:>8.3f}ms  {r['cython_s'] * 1e3:>8.3f}ms  {r['speedup']:6.1f}x")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
