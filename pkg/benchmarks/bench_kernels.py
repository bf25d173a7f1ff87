"""Compare the compiled kernels with the pure-Python fallback.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]

Times free reduction and the dense truncated Magnus expansion on fixed
random inputs, checks the two backends agree, and prints a table.
"""

import argparse
import random
import timeit

from jcalc import _pykernels

try:
    from jcalc import _core
except ImportError:
    _core = None

CASES = [
    # (label, rank, word length, truncation bound)
    ("n=2 len=40 D=4", 2, 40, 4),
    ("n=2 len=200 D=6", 2, 200, 6),
    ("n=3 len=100 D=5", 3, 100, 5),
    ("n=4 len=60 D=5", 4, 60, 5),
]


def random_code(rng, n, length, reduced=True):
    code = []
    while len(code) < length:
        a = rng.choice([1, -1]) * rng.randint(1, n)
        if reduced and code and code[-1] == -a:
            continue
        code.append(a)
    return tuple(code)


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not built; only the Python kernels are available")
    rng = random.Random(2024)
    print(f"{'kernel':<10} {'case':<18} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")

    raw = random_code(rng, 3, 5000, reduced=False)
    py = best(lambda: _pykernels.reduce_code(raw), args.repeat)
    row = f"{'reduce':<10} {'n=3 len=5000':<18} {py * 1e3:12.3f}"
    if _core is not None:
        assert tuple(_core.reduce_code(raw)) == tuple(_pykernels.reduce_code(raw))
        cy = best(lambda: _core.reduce_code(raw), args.repeat)
        row += f" {cy * 1e3:12.3f} {py / cy:7.1f}x"
    print(row)

    for label, n, length, bound in CASES:
        code = random_code(rng, n, length)
        py = best(lambda: _pykernels.magnus_dense(code, n, bound), args.repeat)
        row = f"{'magnus':<10} {label:<18} {py * 1e3:12.3f}"
        if _core is not None:
            a = [list(r) for r in _core.magnus_dense(code, n, bound)]
            assert a == [list(r) for r in _pykernels.magnus_dense(code, n, bound)]
            cy = best(lambda: _core.magnus_dense(code, n, bound), args.repeat)
            row += f" {cy * 1e3:12.3f} {py / cy:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
