"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernel.py [--sizes 8,16,32] [--repeat 5]
"""
import argparse
import random
import timeit

from taverager import _kernel_py, kernel

try:
    from taverager import _kernel as compiled
except ImportError:
    compiled = None


def sample(n, m, rng, density=0.4, span=3):
    return [[rng.randint(-span, span) if rng.random() < density else 0 for _ in range(m)]
            for _ in range(n)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,16,32,48")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"selected backend: {kernel.BACKEND}")
    print(f"{'size':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        mats = [sample(n, n, rng) for _ in range(4)]
        for m in mats:
            if compiled is not None:
                try:
                    assert compiled.rref_int(m, n) == _kernel_py.rref_int(m, n)
                except OverflowError:
                    pass
        t_py = min(timeit.repeat(lambda: [_kernel_py.rref_int(m, n) for m in mats],
                                 number=1, repeat=args.repeat)) * 1000
        if compiled is None:
            print(f"{n:>6} {t_py:>10.2f} {'-':>10} {'-':>8}")
            continue

        def run_c():
            for m in mats:
                try:
                    compiled.rref_int(m, n)
                except OverflowError:
                    _kernel_py.rref_int(m, n)

        t_c = min(timeit.repeat(run_c, number=1, repeat=args.repeat)) * 1000
        print(f"{n:>6} {t_py:>10.2f} {t_c:>10.2f} {t_py / t_c:>8.1f}")


if __name__ == "__main__":
    main()
