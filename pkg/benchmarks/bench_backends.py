"""Benchmark the numba-compiled batch kernels against the numpy fallbacks.

Times bulk word generation and character-exponent evaluation on the same
inputs for both backends and prints a comparison table.

    python benchmarks/bench_backends.py --count 200000 --length 16
"""

import argparse
import time

import numpy as np

from modmult import _batch_numpy
from modmult.sl2z import GAMMA1, generators

try:
    from modmult import _batch_numba
except ImportError:
    _batch_numba = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200_000, help="words per batch")
    parser.add_argument("--length", type=int, default=16, help="generators per word")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best kept)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    table = np.array([m.entries() for m in generators(GAMMA1)], dtype=np.int64)
    idx = rng.integers(0, len(table), size=(args.count, args.length))

    impls = [("numpy", _batch_numpy)]
    if _batch_numba is not None:
        impls.append(("numba", _batch_numba))
    else:
        print("numba not installed; benchmarking the numpy backend only")

    rows_by_impl = {}
    timings = {}
    for name, impl in impls:
        impl.words_from_indices(idx[:8], table)  # warmup / jit compile
        impl.f_mod24(impl.words_from_indices(idx[:8], table))
        t_words = time_call(impl.words_from_indices, idx, table, repeats=args.repeats)
        rows = impl.words_from_indices(idx, table)
        rows_by_impl[name] = rows
        t_f = time_call(impl.f_mod24, rows, repeats=args.repeats)
        t_det = time_call(impl.dets, rows, repeats=args.repeats)
        timings[name] = {"words": t_words, "f_mod24": t_f, "dets": t_det}

    if len(rows_by_impl) == 2 and not (rows_by_impl["numpy"] == rows_by_impl["numba"]).all():
        raise SystemExit("backends disagree; refusing to report timings")

    print(f"\n{args.count} words of length {args.length}, best of {args.repeats}:\n")
    print(f"{'kernel':<12}" + "".join(f"{name:>12}" for name, _ in impls)
          + ("{:>10}".format("speedup") if len(impls) == 2 else ""))
    for kernel in ("words", "f_mod24", "dets"):
        row = f"{kernel:<12}"
        for name, _ in impls:
            row += f"{timings[name][kernel] * 1e3:>10.2f}ms"
        if len(impls) == 2:
            row += f"{timings['numpy'][kernel] / timings['numba'][kernel]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
