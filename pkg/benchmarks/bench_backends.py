"""Time the compiled and pure-Python Rips kernels on the same inputs.

    python3 benchmarks/bench_backends.py [--repeat 3] [--sizes 80,160,320]

Each case is checked for identical diagrams across backends before timing
is reported.
"""
import argparse
import time

import numpy as np

from ttda.embed import EmbeddingConfig, PointCloud, delay_embed
from ttda.homology.rips import BACKENDS, rips_persistence


def cases(sizes, seed):
    rng = np.random.default_rng(seed)
    for n in sizes:
        yield f"uniform square, n={n}", PointCloud(rng.uniform(size=(n, 2)))
    for n in sizes:
        # one period of a 150 Hz sine embedded at a quarter period: evenly spaced circle
        period = n
        x = np.sin(2 * np.pi * np.arange(period + period // 4) / period)
        yield f"sine circle, n={n}", delay_embed(x, EmbeddingConfig(period // 4, 2))
    x = np.sin(2 * np.pi * 150 * np.arange(960) / 48000)
    yield "pure sine 20 ms, tau=6 (n=954)", delay_embed(x, EmbeddingConfig(6, 2))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", default="80,160,320")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-python-above", type=int, default=1000,
                    help="skip the Python backend for clouds larger than this")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if "compiled" not in BACKENDS:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'case':34s} {'compiled s':>11s} {'python s':>10s} {'speedup':>8s}")
    for label, pc in cases(sizes, args.seed):
        row = {}
        for name in ("compiled", "python"):
            if name not in BACKENDS or (name == "python" and len(pc) > args.skip_python_above):
                continue
            row[name] = best_of(lambda: rips_persistence(pc, backend=name), args.repeat)
        if len(row) == 2:
            assert row["compiled"][1] == row["python"][1], f"backends disagree on {label}"
        c = row.get("compiled", (np.nan,))[0]
        p = row.get("python", (np.nan,))[0]
        print(f"{label:34s} {c:11.4f} {p:10.4f} {p / c:8.1f}x")


if __name__ == "__main__":
    main()
