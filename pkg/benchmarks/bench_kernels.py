"""Compare the compiled and pure-Python omega_histogram kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import timeit

from drinfeld import _kernels_py
from drinfeld.fq import field

CASES = [(2, 22, 16), (3, 14, 10), (4, 11, 7), (9, 8, 4)]  # (q, k, M)


def make_case(q, k, M, seed=0):
    F = field(q)
    rng = random.Random(seed)
    a = [0] + [rng.randrange(q) for _ in range(k - 1)]
    return (q, F.add_t, F.mul_t, a, [1], M)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    try:
        from drinfeld import _kernels
    except ImportError:
        _kernels = None
        print("compiled kernels not built; timing the Python version only")
    print(f"{'q':>3} {'k':>3} {'M':>3} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for q, k, M in CASES:
        case = make_case(q, k, M)
        t_py = min(timeit.repeat(lambda: _kernels_py.omega_histogram(*case), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{q:>3} {k:>3} {M:>3} {t_py:>10.4f}")
            continue
        assert list(_kernels.omega_histogram(*case)) == list(_kernels_py.omega_histogram(*case))
        t_cy = min(timeit.repeat(lambda: _kernels.omega_histogram(*case), number=1, repeat=args.repeat))
        print(f"{q:>3} {k:>3} {M:>3} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
