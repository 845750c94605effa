"""Compare the numba and pure-Python column reduction on nerve boundaries.

    python benchmarks/bench_reduction.py --max-n 7 --repeat 3
"""

import argparse
import statistics
import time

from lietower.homology import homology
from lietower.homology._kernels import HAVE_NUMBA
from lietower.partitions import partition_complex_chains


def bench(n: int, backend: str, repeat: int) -> tuple[float, str]:
    C = partition_complex_chains(n)
    times = []
    summary = None
    for _ in range(repeat):
        t = time.perf_counter()
        summary = homology(C, backend=backend)
        times.append(time.perf_counter() - t)
    return statistics.median(times), str(summary)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["numba"] if HAVE_NUMBA else [])
    if HAVE_NUMBA:
        homology(partition_complex_chains(4), backend="numba")  # compile outside the timings
    print(f"{'n':>3} {'backend':>8} {'median s':>10}  result")
    for n in range(args.min_n, args.max_n + 1):
        rows = {b: bench(n, b, args.repeat) for b in backends}
        for b, (sec, res) in rows.items():
            print(f"{n:>3} {b:>8} {sec:>10.3f}  {res}")
        if len(rows) == 2:
            if rows["python"][1] != rows["numba"][1]:
                raise SystemExit(f"backends disagree at n={n}")
            print(f"{'':>3} {'speedup':>8} {rows['python'][0] / rows['numba'][0]:>10.2f}x")


if __name__ == "__main__":
    main()
