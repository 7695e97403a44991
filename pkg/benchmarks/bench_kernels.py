"""Time the oracle on both kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each case is run once untimed first so numba compilation is not counted.
Both backends must reach the same decision; a mismatch aborts the run.
"""

import argparse
import json
import statistics
import time

from hurwitz.branch_data import SPHERE, BranchDatum, orientable
from hurwitz.oracle import count_classes, decide

CASES = [
    ("decide", orientable(0), ((6, 2), (2, 2, 2, 2), (2, 2, 2, 2))),
    ("decide", orientable(1), ((6, 2), (4, 4), (4, 2, 1, 1))),
    ("decide", orientable(0), ((7, 2), (3, 3, 3), (2, 2, 2, 1, 1, 1))),
    ("decide", orientable(0), ((8, 2), (2, 2, 2, 2, 2), (2, 2, 2, 2, 2))),
    ("decide", orientable(0), ((10, 2), (2,) * 6, (2,) * 6)),
    ("decide", orientable(0), ((10, 2), (2,) * 6, (7, 1, 1, 1, 1, 1))),
    ("count", orientable(1), ((5, 2), (4, 3), (3, 3, 1))),
    ("count", orientable(0), ((6, 2), (3, 3, 1, 1), (4, 2, 1, 1))),
]


def run(kind, datum, backend):
    if kind == "decide":
        return decide(datum, backend=backend).status
    return count_classes(datum, backend=backend)


def timed(kind, datum, backend, repeat):
    result = run(kind, datum, backend)  # warm-up
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        run(kind, datum, backend)
        samples.append(time.perf_counter() - t)
    return result, statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for kind, cover, parts in CASES:
        datum = BranchDatum(cover, SPHERE, sum(parts[0]), parts)
        res_nb, t_nb = timed(kind, datum, "numba", args.repeat)
        res_np, t_np = timed(kind, datum, "numpy", args.repeat)
        if res_nb != res_np:
            raise SystemExit(f"backends disagree on {datum}: numba {res_nb}, numpy {res_np}")
        rows.append({"case": kind, "datum": str(datum), "result": res_nb, "numba_s": t_nb, "numpy_s": t_np})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'op':<7} {'datum':<44} {'result':<13} {'numba':>9} {'numpy':>9} {'ratio':>7}")
    for r in rows:
        ratio = r["numpy_s"] / r["numba_s"] if r["numba_s"] else float("inf")
        print(
            f"{r['case']:<7} {r['datum']:<44} {str(r['result']):<13} "
            f"{r['numba_s'] * 1e3:>7.1f}ms {r['numpy_s'] * 1e3:>7.1f}ms {ratio:>6.1f}x"
        )


if __name__ == "__main__":
    main()
