"""Compare the numba and numpy elimination kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  The rref timings call
both kernels in-process; the end-to-end filtration timing runs a child
process per backend so that the environment switch takes effect at import.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from babyverma._kernels import HAVE_NUMBA, rref_with

_FILTRATION = """
import time
from babyverma._kernels import backend
from babyverma.envelope import ChiForm, lie_algebra
from babyverma.verma import build_baby_verma, tensor_filtration
alg = lie_algebra(3, "sl")
chi = ChiForm.levi(alg, 3, [1])
t = time.perf_counter()
rep = tensor_filtration(build_baby_verma(chi, (0, 0, 0)), build_baby_verma(ChiForm.zero(alg, 3), (1, 0, 0)))
assert rep.all_certified
print(backend(), time.perf_counter() - t)
"""


def time_rref(rows: int, cols: int, p: int, use_numba: bool, repeats: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    base = rng.integers(0, p, size=(rows, cols), dtype=np.int64)
    best = float("inf")
    for _ in range(repeats):
        a = base.copy()
        t = time.perf_counter()
        rref_with(a, p, use_numba)
        best = min(best, time.perf_counter() - t)
    return best


def time_filtration(disable_numba: bool) -> tuple[str, float]:
    env = dict(os.environ)
    if disable_numba:
        env["BABYVERMA_DISABLE_NUMBA"] = "1"
    else:
        env.pop("BABYVERMA_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", _FILTRATION], env=env, check=True, capture_output=True, text=True)
    name, secs = out.stdout.split()
    return name, float(secs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=729)
    ap.add_argument("--cols", type=int, default=1458)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-filtration", action="store_true")
    args = ap.parse_args(argv)

    print(f"rref of a random {args.rows}x{args.cols} matrix mod {args.p} (best of {args.repeats})")
    t_np = time_rref(args.rows, args.cols, args.p, False, args.repeats, args.seed)
    print(f"  numpy  {t_np:8.4f} s")
    if HAVE_NUMBA:
        time_rref(8, 8, args.p, True, 1, args.seed)  # compile outside the timed region
        t_nb = time_rref(args.rows, args.cols, args.p, True, args.repeats, args.seed)
        print(f"  numba  {t_nb:8.4f} s   speedup x{t_np / t_nb:.1f}")
    if not args.skip_filtration:
        print("certified sl3 filtration at p=3 (729-dim tensor), one fresh process each")
        for disable in (False, True):
            name, secs = time_filtration(disable)
            print(f"  {name:6s} {secs:8.4f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
