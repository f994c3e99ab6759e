"""Time the compiled record scan against the pure-Python one.

    python3 benchmarks/bench_scan.py [--repeat N]

Both kernels must return identical chains; the script exits 1 otherwise.
"""

import argparse
import sys
import timeit

from ladder import _kernel
from ladder.core import Params
from ladder.records import _exact_callbacks

CASES = [(2, 3, 32768), (3, 5, 100_000), (7, 8, 100_000), (2, 5, 1_000_000)]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernel.BACKEND != "cython":
        print("compiled kernel not available; only the Python kernel can be timed", file=sys.stderr)
    print(f"{'case':>22}  {'python s':>10}  {'compiled s':>10}  {'speedup':>8}")
    ok = True
    for a, b, n in CASES:
        cb = _exact_callbacks(Params(a, b))
        py = _kernel.py_scan_chain(a, b, 1, n + 1, *cb)
        fast = _kernel.scan_chain(a, b, 1, n + 1, *cb)
        if py != fast:
            print(f"MISMATCH for ({a},{b}) up to {n}", file=sys.stderr)
            ok = False
        t_py = min(timeit.repeat(lambda: _kernel.py_scan_chain(a, b, 1, n + 1, *cb), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: _kernel.scan_chain(a, b, 1, n + 1, *cb), number=1, repeat=args.repeat))
        print(f"{f'({a},{b}) p<={n}':>22}  {t_py:10.4f}  {t_c:10.4f}  {t_py / t_c:7.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
