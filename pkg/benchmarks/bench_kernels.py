"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit
from fractions import Fraction

from rtq import _kernels_py
from rtq.qlaurent import multinomial_coeffs, t_pochhammer
from rtq.quiverforms import quiver_for
from rtq.tanglecore import TangleFraction

try:
    from rtq import _kernels
except ImportError:
    _kernels = None


def expansion_case(text, j, reduced):
    qd = quiver_for(TangleFraction.parse(text), reduced=reduced)
    extra = [tuple(t_pochhammer(k).items()) for k in range(j * max((0,) + qd.K) + 1)]
    args = (j, qd.S, qd.A, qd.T, qd.Q, qd.active, qd.K, multinomial_coeffs, extra, False)
    return f"expand {text}{' reduced' if reduced else ''} j={j}", lambda mod: mod.expand_compositions(*args)


def half_turn_case(loops):
    pts = []
    for k in range(loops * 4 + 1):
        x, y = [(1, 1), (-1, 1), (-1, -1), (1, -1)][k % 4]
        pts.append((Fraction(x * (k + 3), 7), Fraction(y, 3)))
    return f"half_turns {len(pts)} points", lambda mod: mod.half_turns(pts)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    cases = [
        expansion_case("7/4", 3, False),
        expansion_case("10/3", 4, True),
        expansion_case("12/5", 3, False),
        half_turn_case(5000),
    ]
    print(f"{'case':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases:
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:34} {py:10.4f} {'-':>10} {'-':>8}")
            continue
        if fn(_kernels) != fn(_kernels_py):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:34} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
