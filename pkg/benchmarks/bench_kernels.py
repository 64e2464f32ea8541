"""Compare the compiled and pure-Python integration kernels.

    python benchmarks/bench_kernels.py [--count N] [--repeat R]

Runs a full basin scan for each normalized catalog map on both backends
and reports wall time, speed-up, and the largest sample disagreement.
"""
import argparse
import time

from jacmap import dynamics
from jacmap.analyzer import classify_jacobian, normalize
from jacmap.oracle import paper_catalog


def scan(n, count, backend):
    grid = dynamics.grid_points(-2.0, 2.0, count)
    return [dynamics.integrate(n, pt, backend=backend) for pt in grid]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=10, help="grid points per axis")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if "compiled" not in dynamics.BACKENDS:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    print(f"{'map':<12} {'steps':>9} {'python s':>10} {'compiled s':>11} {'speed-up':>9} {'max diff':>10}")
    for entry in paper_catalog():
        if not classify_jacobian(entry.map).is_jacobian:
            continue
        n = normalize(entry.map, translate=True)
        tp, ref = best_of(lambda: scan(n, args.count, "python"), args.repeat)
        tc, fast = best_of(lambda: scan(n, args.count, "compiled"), args.repeat)
        steps = sum(len(tr.samples) - 1 for tr in ref)
        diff = max(
            max(abs(a - b) for sa, sb in zip(r.samples, f.samples) for a, b in zip(sa, sb))
            for r, f in zip(ref, fast)
        )
        print(f"{entry.name:<12} {steps:>9} {tp:>10.4f} {tc:>11.4f} {tp / tc:>8.1f}x {diff:>10.2e}")


if __name__ == "__main__":
    main()
