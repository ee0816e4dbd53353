"""Rational ranks of product configurations against the convolution of factor ranks.

    python scripts/kunneth_sweep.py [--factors point banana I3 ...]
"""
import argparse
import itertools
import time

from w0 import catalog
from w0.geometry import dual_complex, kunneth_verify, product_config

FACTORS = {
    "point": catalog.point_config,
    "banana": catalog.banana,
    "I3": lambda: catalog.cycle_config(3),
    "I4": lambda: catalog.cycle_config(4),
    "I5": lambda: catalog.cycle_config(5),
    "tetrahedron": catalog.tetrahedron,
    "simplex3": lambda: catalog.simplex_config(3),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--factors", nargs="+", default=["point", "banana", "I3", "I4", "tetrahedron"],
                        choices=sorted(FACTORS))
    args = parser.parse_args()

    print(f"{'X':>12} {'Y':>12} {'simplices':>10} {'ranks':<22} {'ok':>4} {'sec':>6}")
    failures = 0
    for a, b in itertools.product(args.factors, repeat=2):
        A, B = FACTORS[a](), FACTORS[b]()
        t0 = time.perf_counter()
        report = kunneth_verify(A, B)
        dt = time.perf_counter() - t0
        size = sum(dual_complex(product_config(A, B)).levels)
        ranks = [r.computed for r in report.rows]
        while ranks and ranks[-1] == 0:
            ranks.pop()
        failures += not report.passed
        print(f"{a:>12} {b:>12} {size:>10} {str(ranks):<22} {'yes' if report.passed else 'NO':>4} {dt:6.2f}")
    print(f"\n{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
