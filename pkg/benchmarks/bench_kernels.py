"""Benchmark the compiled kernels against the pure-numpy reference path.

Run without arguments to time both backends in subprocesses and print the
comparison; pass --backend numba|numpy to time one backend in-process (the
backend must be chosen before the package is imported, hence the respawn).

Usage: python benchmarks/bench_kernels.py [--backend numba|numpy] [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def timeit(fn, repeat, warmup=2):
    for _ in range(warmup):
        fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_backend(backend: str, repeat: int) -> dict:
    os.environ["ATTNMOTOR_BACKEND"] = backend
    import numpy as np

    from attnmotor.config import default_config
    from attnmotor.kernels import BACKEND, active as K
    from attnmotor.model import build_params
    from attnmotor.tensor import Tape
    from attnmotor.training import unroll_sequence_loss

    assert BACKEND == backend, f"wanted {backend}, got {BACKEND}"
    rng = np.random.default_rng(0)
    results = {}

    x = rng.standard_normal((60, 32, 32, 30), dtype=np.float32)
    cols = np.empty((60 * 16 * 16, 9 * 30), dtype=np.float32)
    results["im2col"] = timeit(
        lambda: K.im2col(x, 3, 2, 0, 0, 16, 16, cols), repeat)
    dx = np.zeros_like(x)
    results["col2im"] = timeit(
        lambda: K.col2im(cols, 3, 2, 0, 0, 16, 16, dx), repeat)

    k2 = rng.standard_normal((64, 40), dtype=np.float32)
    v2 = rng.standard_normal((64, 40), dtype=np.float32)
    g = rng.standard_normal((64, 2), dtype=np.float32)
    q = rng.standard_normal((4, 10), dtype=np.float32)
    m = np.empty((4, 64), dtype=np.float32)
    af = np.empty(40, dtype=np.float32)
    ac = np.empty(8, dtype=np.float32)
    results["attend_fwd"] = timeit(
        lambda: K.attend_fwd(k2, v2, g, q, 0.125, m, af, ac), repeat)

    gates = rng.standard_normal(120, dtype=np.float32)
    c_prev = rng.standard_normal(30, dtype=np.float32)
    h = np.empty(30, dtype=np.float32)
    c = np.empty(30, dtype=np.float32)
    act = np.empty(30, dtype=np.float32)
    results["lstm_ptw_fwd"] = timeit(
        lambda: K.lstm_ptw_fwd(gates.copy(), c_prev, h, c, act), repeat)

    p = rng.standard_normal(119_612).astype(np.float32)
    gr = rng.standard_normal(119_612).astype(np.float32)
    mm = np.zeros_like(p)
    vv = np.zeros_like(p)
    results["adam_update"] = timeit(
        lambda: K.adam_update(p, gr, mm, vv, 0.001, 0.9, 0.999, 1e-8, 0.1, 0.01),
        repeat)

    cfg = default_config()
    params = build_params(cfg)

    class Ep:
        frames_cl = rng.random((60, 64, 64, 3), dtype=np.float32)
        joints = rng.uniform(-1, 1, (60, 4)).astype(np.float32)
        cols1 = None

    ep = Ep()

    def episode():
        with Tape() as tape:
            losses = unroll_sequence_loss(params, cfg, ep)
            tape.backward(losses["L"])
        for t in params.values():
            t.grad = None

    results["episode_fwd_bwd"] = timeit(episode, max(1, repeat // 3), warmup=1)
    return results


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--backend", choices=["numba", "numpy"])
    ap.add_argument("--repeat", type=int, default=10)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    if args.backend:
        res = run_backend(args.backend, args.repeat)
        if args.json:
            print(json.dumps(res))
        else:
            for k, v in res.items():
                print(f"{k:<18}{v * 1e3:9.3f} ms")
        return 0

    tables = {}
    for backend in ("numpy", "numba"):
        out = subprocess.run(
            [sys.executable, __file__, "--backend", backend,
             "--repeat", str(args.repeat), "--json"],
            capture_output=True, text=True)
        if out.returncode != 0:
            print(out.stderr, file=sys.stderr)
            return 1
        tables[backend] = json.loads(out.stdout.strip().splitlines()[-1])
    print(f"{'kernel':<18}{'numpy':>12}{'numba':>12}{'speedup':>9}")
    for k in tables["numpy"]:
        a, b = tables["numpy"][k], tables["numba"][k]
        print(f"{k:<18}{a * 1e3:10.3f}ms{b * 1e3:10.3f}ms{a / b:8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
