"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --p 5 --q 2 --repeat 3
"""
import argparse
import random
import time

from betanum import Params, _backend, _pykernels, words, zbeta

try:
    from betanum import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_normalize(kern, params, n_strings):
    rng = random.Random(0)
    cases = [([rng.randint(0, 3 * params.p) for _ in range(rng.randint(1, 12))], rng.randint(-3, 8))
             for _ in range(n_strings)]

    def run():
        for digits, msd in cases:
            kern.normalize(list(digits), msd, params.p, params.q)
    return run


def bench_windows(kern, params, prefix, windows):
    letters = words.letters_array(words.u_prefix(prefix, params))
    return lambda: kern.window_extrema(letters, windows)


def bench_lplus(kern, params, digit_bound):
    def run():
        saved = _backend.lplus_scan
        _backend.lplus_scan = kern.lplus_scan
        try:
            zbeta.lplus_search(digit_bound, params, threads=1)
        finally:
            _backend.lplus_scan = saved
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--strings", type=int, default=20_000, help="digit strings to normalize")
    ap.add_argument("--prefix", type=int, default=20_000, help="prefix of u for the window scan")
    ap.add_argument("--windows", type=int, default=300)
    ap.add_argument("--digit-bound", type=int, default=3, help="digit bound for the L+ scan")
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . --no-build-isolation")

    params = Params(args.p, args.q)
    cases = {
        "normalize": lambda k: bench_normalize(k, params, args.strings),
        "window_extrema": lambda k: bench_windows(k, params, args.prefix, args.windows),
        "lplus_scan": lambda k: bench_lplus(k, params, args.digit_bound),
    }
    print(f"p={args.p} q={args.q}, best of {args.repeat}")
    print(f"{'kernel':<16}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for name, make in cases.items():
        tc = best_of(make(_ckernels), args.repeat)
        tp = best_of(make(_pykernels), args.repeat)
        print(f"{name:<16}{tc:>12.4f}{tp:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
