#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Usage:
    python3 benchmarks/bench_kernels.py            # time the active backend
    python3 benchmarks/bench_kernels.py --compare  # run both and print a table

The workloads are the ones that dominate real sweeps: the fused
gather-scale-scatter pass, batch signed-window composition (group table
construction), and two end-to-end jobs (a full IG(2,6)+OG(2,7) quantum Pieri
verification and a block of rank-3 quantum products).
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def bench_scatter():
    from qschub import _kernels

    rng = np.random.default_rng(0)
    K, m = 4000, 100_000
    out = np.zeros(K, dtype=np.int64)
    vec = rng.integers(-999, 999, size=K).astype(np.int64)
    src = rng.integers(0, K, size=m).astype(np.int32)
    dst = rng.integers(0, K, size=m).astype(np.int32)
    t0 = time.perf_counter()
    for _ in range(60):
        _kernels.gather_scale_scatter(out, vec, 3, src, dst)
    return time.perf_counter() - t0


def bench_compose():
    from qschub import _kernels

    rng = np.random.default_rng(1)
    m = 8
    wins = np.array(
        [(rng.permutation(m) + 1) * rng.choice([-1, 1], size=m) for _ in range(40320)],
        dtype=np.int8,
    )
    others = [
        ((rng.permutation(m) + 1) * rng.choice([-1, 1], size=m)).astype(np.int8)
        for _ in range(24)
    ]
    t0 = time.perf_counter()
    for other in others:
        _kernels.compose_signed(wins, other)
    return time.perf_counter() - t0


def bench_pieri_sweep():
    from qschub.verify import run_suite

    t0 = time.perf_counter()
    ok1, _ = run_suite("pieri-C", "IG:2:6")
    ok2, _ = run_suite("pieri-B", "OGodd:2:7")
    assert ok1 and ok2
    return time.perf_counter() - t0


def bench_rank3_products():
    from qschub.qhb import FlagQuantumRing
    from qschub.weyl import weyl_group

    ring = FlagQuantumRing("C", 3)
    g = weyl_group("C", 3)
    t0 = time.perf_counter()
    for i in range(0, g.N, 2):
        for j in range(0, g.N, 4):
            ring.quantum_multiply(g.element(i), g.element(j))
    return time.perf_counter() - t0


def bench_c5_invariant():
    # deep truncated stack in C_5: the kernel-bound regime
    from qschub.qhp import gw_invariant_parabolic, parse_space
    from qschub.weyl import from_word

    gd = parse_space("IG:3:10")
    u = from_word("C", 5, [2, 1, 4, 3, 2, 5, 4, 3])
    v = from_word("C", 5, [1, 5, 4, 3, 2, 4, 5, 4, 3])
    w = from_word("C", 5, [3])
    t0 = time.perf_counter()
    assert gw_invariant_parabolic(gd, u, v, w, 2) == 1
    return time.perf_counter() - t0


WORKLOADS = {
    "gather-scale-scatter (6M ops)": bench_scatter,
    "window composition (1M windows)": bench_compose,
    "pieri verification sweep": bench_pieri_sweep,
    "rank-3 product block": bench_rank3_products,
    "deep C5 lifted invariant": bench_c5_invariant,
}


def run_all() -> dict:
    from qschub import _kernels

    out = {"backend": _kernels.backend_name()}
    for name, fn in WORKLOADS.items():
        out[name] = fn()
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--compare", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if not args.compare:
        res = run_all()
        if args.json:
            print(json.dumps(res))
        else:
            print(f"backend: {res.pop('backend')}")
            for name, secs in res.items():
                print(f"  {name:36s} {secs:8.3f}s")
        return
    results = {}
    for backend in ("python", "compiled"):
        env = dict(os.environ, QSCHUB_KERNEL=backend)
        proc = subprocess.run(
            [sys.executable, __file__, "--json"],
            capture_output=True, text=True, env=env,
        )
        if proc.returncode != 0:
            print(f"{backend}: failed\n{proc.stderr}", file=sys.stderr)
            continue
        res = json.loads(proc.stdout)
        results[res.pop("backend")] = res
    if set(results) != {"python", "compiled"}:
        print("need both backends importable for a comparison", file=sys.stderr)
        sys.exit(1)
    width = max(len(n) for n in WORKLOADS) + 2
    print(f"{'workload':{width}s} {'python':>10s} {'compiled':>10s} {'speedup':>9s}")
    for name in WORKLOADS:
        py, cy = results["python"][name], results["compiled"][name]
        print(f"{name:{width}s} {py:9.3f}s {cy:9.3f}s {py / cy:8.2f}x")


if __name__ == "__main__":
    main()
