"""Compare the compiled MPFR sweep kernel with the pure-Python loop.

    python3 benchmarks/bench_sweep.py [--cases N] [--repeat R]

Both backends reduce the same round-3 cases; results must agree exactly.
"""
import argparse
import random
import statistics
import time

from tribpal.pipeline import build_context
from tribpal.sweep import HAVE_EXTENSION, SweepSetup, sweep


def round3_numerators(count, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d1, d2 = rng.randint(1, 9), rng.randint(0, 9)
        if d1 == d2:
            continue
        ell, m = rng.randint(1, 56), rng.randint(1, 58)
        out.append(d1 * 10 ** (ell + m) + (d1 - d2) * 10**m - (d1 - d2))
    return out


def timed(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, times


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--precision", type=int, default=250)
    args = parser.parse_args(argv)

    ctx = build_context(args.precision)
    setup = SweepSetup(ctx.cf, ctx.root.log_alpha, 4, ctx.root.log_alpha, 10**51)
    nums = round3_numerators(args.cases)

    pure, pure_t = timed(lambda: sweep(setup, nums, prefer_extension=False), args.repeat)
    print(f"python    {args.cases} cases: median {statistics.median(pure_t):.3f} s")
    if not HAVE_EXTENSION:
        print("extension not built; nothing to compare")
        return 0
    fast, fast_t = timed(lambda: sweep(setup, nums, prefer_extension=True), args.repeat)
    print(f"extension {args.cases} cases: median {statistics.median(fast_t):.3f} s")
    same = all((a.ok, a.bound, a.convergent_index) == (b.ok, b.bound, b.convergent_index) for a, b in zip(fast, pure))
    print(f"speedup {statistics.median(pure_t) / statistics.median(fast_t):.1f}x, results agree: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    raise SystemExit(main())
