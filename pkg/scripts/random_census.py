"""Census of random semisimplicial sets and configurations: torsion frequency and timings.

    python scripts/random_census.py --count 500 --seed 1
"""
import argparse
import collections
import sys
import time
from pathlib import Path

from hypothesis import HealthCheck, given, seed, settings

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from strategies import semisimplicial_sets, snc_configurations  # noqa: E402

from w0.geometry import dual_complex  # noqa: E402
from w0.sscomplex import cohomology  # noqa: E402


def census(strategy, to_set, count, rng_seed):
    torsion = collections.Counter()
    dims = collections.Counter()

    @seed(rng_seed)
    @settings(max_examples=count, database=None, deadline=None, suppress_health_check=list(HealthCheck))
    @given(strategy)
    def visit(x):
        S = to_set(x)
        dims[S.dim] += 1
        for g in cohomology(S):
            for d in g.torsion:
                torsion[d] += 1

    t0 = time.perf_counter()
    visit()
    return dims, torsion, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    for label, strategy, to_set in [
        ("semisimplicial", semisimplicial_sets(max_dim=4, max_per_level=8), lambda x: x),
        ("snc configuration", snc_configurations(max_components=5, max_pieces=2), dual_complex),
    ]:
        dims, torsion, dt = census(strategy, to_set, args.count, args.seed)
        print(f"{label}: {sum(dims.values())} samples in {dt:.2f}s")
        print(f"  dimensions: {dict(sorted(dims.items()))}")
        print(f"  torsion coefficients seen: {dict(sorted(torsion.items())) or 'none'}")


if __name__ == "__main__":
    main()
