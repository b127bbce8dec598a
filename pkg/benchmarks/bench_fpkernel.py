"""Time the compiled F_p row reduction against the pure-Python kernel.

Usage: python benchmarks/bench_fpkernel.py [--sizes 20,50,100,200] [--repeat 3]
"""
import argparse
import random
import time

from scottpersist.linalg import _fpkernel_py
from scottpersist.linalg.fields import DEFAULT_PRIME

try:
    from scottpersist.linalg import _fpkernel
except ImportError:
    _fpkernel = None


def best_time(fn, rows, ncols, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(rows, ncols, p)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="20,50,100,200")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _fpkernel is None:
        raise SystemExit("compiled kernel not built; reinstall with `pip install -e . --no-build-isolation`")
    rng = random.Random(args.seed)
    print(f"{'size':>6} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        # rank-deficient on purpose so the pivot search is exercised
        base = [[rng.randrange(args.prime) for _ in range(n)] for _ in range(n // 2 + 1)]
        rows = base + [[(a + b) % args.prime for a, b in zip(rng.choice(base), rng.choice(base))]
                       for _ in range(n - len(base))]
        tp, outp = best_time(_fpkernel_py.rref_mod, rows, n, args.prime, args.repeat)
        tc, outc = best_time(_fpkernel.rref_mod, rows, n, args.prime, args.repeat)
        if [list(r) for r in outp[0]] != [list(r) for r in outc[0]] or list(outp[1]) != list(outc[1]):
            raise SystemExit(f"kernels disagree at size {n}")
        print(f"{n:>6} {tp:>12.4f} {tc:>13.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
