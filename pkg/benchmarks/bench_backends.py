"""Compare the compiled elimination kernel against the pure-Python fallback.

Runs the same workloads in two subprocesses (one with CPROJ_PURE_PY=1) and
prints a table.  Workloads: synthetic sparse kernels, dense Bareiss ranks, and
one real solver run from the catalog.

Usage: python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
sys.path.insert(0, "src")
from cprojver import backend_name
from cprojver._backend import bareiss_rank
from cprojver.linalg import LinearSystem

random.seed(7)
out = {"backend": backend_name()}

# sparse kernel: banded rows keep the coefficient growth realistic
rows = []
for i in range(900):
    row = {}
    base = random.randrange(280)
    for off in range(6):
        row[(base + off) % 300] = random.randrange(-4, 5) or 1
    rows.append(row)
t0 = time.time()
sys_ = LinearSystem()
sys_.register_columns(range(300))
for r in rows:
    sys_.add_row(dict(r))
k = sys_.kernel()
out["sparse_kernel_s"] = round(time.time() - t0, 3)
out["sparse_kernel_dim"] = len(k)

# dense Bareiss: 60 x 60 integer matrix of rank 40
dense = [[0] * 60 for _ in range(60)]
for i in range(40):
    for j in range(60):
        dense[i][j] = random.randrange(-9, 10)
for i in range(40, 60):
    dense[i] = [a + b for a, b in zip(dense[i - 40], dense[(i - 39) % 40])]
t0 = time.time()
r = bareiss_rank(dense, 60)
out["bareiss_s"] = round(time.time() - t0, 3)
out["bareiss_rank"] = r

# catalog solve: the exceptional four-dimensional model with stabilization
from cprojver.catalog import builtin, model_ansatz
from cprojver.symsolve import cproj_system
spec = builtin("type3-n2", 2)
t0 = time.time()
res = cproj_system(spec, model_ansatz(spec), stabilize=True, check_closure=False)
out["model_solve_s"] = round(time.time() - t0, 3)
out["model_dim"] = res.dim
print(json.dumps(out))
"""


def run(pure):
    env = dict(os.environ)
    if pure:
        env["CPROJ_PURE_PY"] = "1"
    else:
        env.pop("CPROJ_PURE_PY", None)
    res = subprocess.run(
        [sys.executable, "-c", WORKER],
        env=env,
        capture_output=True,
        text=True,
        cwd=os.path.join(os.path.dirname(__file__), ".."),
        check=True,
    )
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    fast = run(pure=False)
    slow = run(pure=True)
    if fast["backend"] == slow["backend"]:
        print("compiled kernel unavailable; both runs used the fallback")
    for key in ("sparse_kernel_dim", "bareiss_rank", "model_dim"):
        assert fast[key] == slow[key], f"backend results disagree on {key}"
    print(f"{'workload':<22}{fast['backend']:>10}{slow['backend']+' (pure)':>16}{'speedup':>10}")
    for key, label in (
        ("sparse_kernel_s", "sparse kernel"),
        ("bareiss_s", "dense Bareiss rank"),
        ("model_solve_s", "catalog model solve"),
    ):
        a, b = fast[key], slow[key]
        ratio = b / a if a else float("inf")
        print(f"{label:<22}{a:>9.3f}s{b:>15.3f}s{ratio:>9.2f}x")


if __name__ == "__main__":
    main()
