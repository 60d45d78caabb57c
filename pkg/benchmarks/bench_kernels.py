"""Timing comparison of the compiled and interpreted sweep kernels.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from cjlab import kernel
from cjlab.choice import ROW_TABLE, _compile_row


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench_props(impl, instances):
    def run():
        for n, dmask, fvals in instances:
            impl.function_props(n, dmask, fvals)
    return timed(run)[1]


def bench_rows(impl, n, specs):
    return timed(impl.run_rows, n, specs)[1]


def bench_sweep(impl, max_points):
    return timed(impl.one_infinity_sweep, max_points)[1]


def main():
    backends = kernel.backends()
    print("available backends:", ", ".join(sorted(backends)))

    rng = random.Random(7)
    instances = []
    for _ in range(20000):
        n = 3
        nsub = 1 << n
        dmask = rng.randrange(1 << nsub)
        instances.append((n, dmask,
                          [rng.randrange(nsub) if dmask >> s & 1 else 0
                           for s in range(nsub)]))

    specs2 = [imp for row in ROW_TABLE.values() for imp in _compile_row(row)]
    specs10 = _compile_row(ROW_TABLE["10"])

    rows = []
    for name in sorted(backends):
        impl = backends[name]
        t_props = bench_props(impl, instances)
        t_rows2 = bench_rows(impl, 2, specs2)
        t_sweep3 = bench_sweep(impl, 3)
        rows.append((name, t_props, t_rows2, t_sweep3))
    print()
    print(f"{'backend':<8} {'props x20k (s)':>15} {'all rows |U|<=2 (s)':>20} "
          f"{'1-inf |Z|<=3 (s)':>18}")
    for name, a, b, c in rows:
        print(f"{name:<8} {a:>15.3f} {b:>20.3f} {c:>18.3f}")
    if len(rows) == 2:
        py = next(r for r in rows if r[0] == "python")
        cc = next(r for r in rows if r[0] == "c")
        print(f"{'speedup':<8} {py[1]/cc[1]:>15.1f} {py[2]/cc[2]:>20.1f} "
              f"{py[3]/cc[3]:>18.1f}")

    if "c" in backends:
        print()
        t = bench_rows(backends["c"], 3, specs10)
        print(f"compiled only: row 10 over the full |U|=3 space: {t:.2f}s")
        t = bench_sweep(backends["c"], 4)
        print(f"compiled only: 1-infinity sweep |Z|<=4 (778649 structures): "
              f"{t:.2f}s")


if __name__ == "__main__":
    main()
