"""Compare the compiled mod-p kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Times ``matmul_modp`` and ``rref_modp`` on random matrices for each
available backend, and optionally a full verification of the Taft object
under both backends (in subprocesses, selected with ``HTK_PURE_PYTHON``).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from htk.kernels import available_backends

P = 7


def bench_kernels(repeat: int):
    rng = np.random.default_rng(0)
    backends = available_backends()
    cases = [
        ("matmul", (81, 81, 729)),
        ("matmul", (729, 9, 729)),
        ("rref", (81, 162)),
        ("rref", (243, 243)),
    ]
    print(f"{'kernel':<8}{'shape':<18}" + "".join(f"{n:>12}" for n in backends) + f"{'speedup':>10}")
    for kind, shape in cases:
        if kind == "matmul":
            a = rng.integers(0, P, shape[:2], dtype=np.int64)
            b = rng.integers(0, P, shape[1:], dtype=np.int64)
            calls = {n: (lambda m=m: m.matmul_modp(a, b, P)) for n, m in backends.items()}
        else:
            a = rng.integers(0, P, shape, dtype=np.int64)
            calls = {n: (lambda m=m: m.rref_modp(a, P)) for n, m in backends.items()}
        times = {n: min(timeit.repeat(f, number=1, repeat=repeat)) for n, f in calls.items()}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        label = "x".join(map(str, shape))
        print(f"{kind:<8}{label:<18}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in backends) + f"{speed:>9.1f}x")


SCRIPT = (
    "import time; from htk import kernels; from htk.builtins import load_builtin;"
    "from htk.verify import verify_paper; d = load_builtin('taft3_f7').pick(None)[1];"
    "t = time.perf_counter(); ok = verify_paper(d).passed;"
    "print(kernels.BACKEND, ok, round(time.perf_counter() - t, 2))"
)


def bench_end_to_end():
    for pure in ("", "1"):
        env = dict(os.environ)
        env.pop("HTK_PURE_PYTHON", None)
        if pure:
            env["HTK_PURE_PYTHON"] = pure
        out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
        backend, ok, secs = out.stdout.split()
        print(f"verify taft3_f7 with {backend:<7} backend: {secs} s (passed={ok})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if args.end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
