"""Time the numba kernels against the numpy fallback on Fibonacci inputs.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]

Both backends are imported directly, so the STURMLAB_KERNELS flag does not
matter here.  Outputs are compared before timing.
"""

import argparse
import time

import numpy as np

from sturmlab.coloring import make_coloring, prefix_colors
from sturmlab.kernels import backends
from sturmlab.words import parse_word_spec, prefix


def best_of(fn, repeat):
    fn()  # warm-up, includes compilation for numba
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=200_000)
    parser.add_argument("--search-len", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    spec = parse_word_spec("fibonacci")
    word = prefix(spec, args.n)
    codes = np.frombuffer(word.encode("ascii"), np.uint8) - 97
    indicator = codes.astype(np.int8)

    horizon = 4 * args.search_len
    search_codes = codes[:horizon]
    coloring = make_coloring(spec)

    impls = backends()
    z_ref = impls["numpy"].z_function(search_codes)
    colors = prefix_colors(coloring, horizon, word=word[:horizon], z=z_ref)
    class_lengths = np.flatnonzero(colors == 1).astype(np.int64)
    roots = class_lengths[class_lengths <= args.search_len]

    cases = {
        "z_function": lambda m: m.z_function(codes),
        "window_extrema": lambda m: m.window_extrema(indicator[:20_000], 2000),
        "decode L_a": lambda m: m.decode(codes, 0, 0, False),
        "decode R_a": lambda m: m.decode(codes, 0, 1, False),
        "search_forest": lambda m: m.search_forest(z_ref, horizon, class_lengths, horizon + 1,
                                                   roots, 10**7, False),
    }

    results = {name: {k: fn(m) for k, m in impls.items()} for name, fn in cases.items()}
    for name, outs in results.items():
        ref = outs["numpy"]
        for backend, out in outs.items():
            pairs = zip(ref, out) if isinstance(ref, tuple) else [(ref, out)]
            for a, b in pairs:
                if not np.array_equal(np.asarray(a), np.asarray(b)):
                    raise SystemExit(f"{name}: {backend} disagrees with numpy")

    print(f"{'kernel':<16}" + "".join(f"{k:>12}" for k in impls) + f"{'speedup':>10}")
    for name, fn in cases.items():
        t = {k: best_of(lambda m=m: fn(m), args.repeat) for k, m in impls.items()}
        speedup = t["numpy"] / t["numba"] if "numba" in t else float("nan")
        print(f"{name:<16}" + "".join(f"{t[k] * 1e3:>10.2f}ms" for k in impls) + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
