"""Time the hot kernels with numba and with the pure-python fallback.

Each path runs in its own interpreter because ELECRED_NO_NUMBA is read at
import time. Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from elecred import _kernels
from elecred._accel import HAVE_NUMBA
from elecred.generators import gen_flat_torus
from elecred.invariants import defect

repeat = int(sys.argv[1])
c = gen_flat_torus(8, 9)
n = c.num_darts
sigma = np.array([4 * (d // 4) + (d + 1) % 4 for d in range(n)], dtype=np.int64)
alpha = np.asarray(c.alpha, dtype=np.int64)
labels = np.zeros(n, dtype=np.int64)
rng = np.random.default_rng(0)
perm = rng.permutation(200_000).astype(np.int64)
m = 400
pos = rng.permutation(2 * m).astype(np.int64).reshape(m, 2)
first, second = pos.min(axis=1), pos.max(axis=1)
sign = rng.choice(np.array([-1, 1], dtype=np.int64), m)

jobs = {
    "orbit_labels": lambda: _kernels.orbit_labels(perm),
    "canonical_code": lambda: _kernels.canonical_code(sigma, alpha, labels),
    "interleaved_sign_sum": lambda: _kernels.interleaved_sign_sum(first, second, sign),
    "defect T(8,9)": lambda: defect(gen_flat_torus(8, 9)),
}
out = {"numba": HAVE_NUMBA}
for name, fn in jobs.items():
    fn()  # warm-up, includes compilation
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    out[name] = (time.perf_counter() - t0) / repeat
print(json.dumps(out))
"""


def run(no_numba, repeat):
    env = dict(os.environ)
    env.pop("ELECRED_NO_NUMBA", None)
    if no_numba:
        env["ELECRED_NO_NUMBA"] = "1"
    r = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True)
    if r.returncode:
        sys.exit(r.stderr)
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    a = ap.parse_args()
    fast = run(False, a.repeat)
    slow = run(True, a.repeat)
    if not fast.pop("numba"):
        print("warning: numba not available, both columns use the fallback")
    slow.pop("numba")
    print(f"{'kernel':24s} {'numba (ms)':>12s} {'python (ms)':>12s} {'speedup':>9s}")
    for name in fast:
        f, s = fast[name] * 1e3, slow[name] * 1e3
        print(f"{name:24s} {f:12.3f} {s:12.3f} {s / f:8.1f}x")


if __name__ == "__main__":
    main()
