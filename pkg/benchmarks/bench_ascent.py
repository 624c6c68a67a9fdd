"""Compare the python and compiled polish backends on the same problems.

Runs the distance solver on a small family of triples with each backend
forced, reports wall time per case and the worst value disagreement.
Exits nonzero if the backends disagree beyond --tol.
"""
import argparse
import sys
import time

import numpy as np

from nctk._backend import available_backends
from nctk.distance import SolverOptions, spectral_distance
from nctk.models import (
    basis_state,
    bloch_state,
    equatorial_state,
    m2_triple,
    random_commutative_triple,
    two_point_scalar_state,
    two_point_triple,
    two_point_vector_state,
)


def build_cases(rng):
    cases = []
    t = m2_triple(0.0, 1.0)
    cases.append(("m2 antipodal", t, equatorial_state(0.0), equatorial_state(np.pi)))
    cases.append(("m2 grid pair", t, equatorial_state(0.7), equatorial_state(2.9)))
    cases.append(("m2 bloch pair", t, bloch_state((0.6, 0.0, 0.8)), bloch_state((-0.6, 0.0, 0.8))))
    for n in (2, 3, 4):
        m = rng.normal(size=n) + 1j * rng.normal(size=n)
        t = two_point_triple(m)
        aligned = two_point_vector_state(m / np.linalg.norm(m))
        cases.append((f"two-point n={n}", t, aligned, two_point_scalar_state()))
    for k in (4, 6):
        t = random_commutative_triple(k, rng)
        cases.append((f"commutative k={k}", t, basis_state(t, 0), basis_state(t, k - 1)))
    return cases


def run(backend, cases, repeats):
    opts = SolverOptions(backend=backend)
    times = []
    values = []
    for _, triple, s1, s2 in cases:
        best = float("inf")
        value = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            result = spectral_distance(triple, s1, s2, options=opts)
            best = min(best, time.perf_counter() - t0)
            value = result.value
        times.append(best)
        values.append(value)
    return times, values


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats per case (best of)")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--tol", type=float, default=1e-6, help="allowed relative value disagreement")
    args = parser.parse_args(argv)

    backends = sorted(available_backends())
    if "ext" not in backends:
        print("compiled backend not available; nothing to compare", file=sys.stderr)
        return 1
    cases = build_cases(np.random.default_rng(args.seed))

    py_times, py_values = run("python", cases, args.repeats)
    ext_times, ext_values = run("ext", cases, args.repeats)

    width = max(len(name) for name, *_ in cases)
    print(f"{'case':<{width}}  {'python':>10}  {'ext':>10}  {'speedup':>8}  {'rel diff':>9}")
    worst = 0.0
    for (name, *_), tp, te, vp, ve in zip(cases, py_times, ext_times, py_values, ext_values):
        scale = max(abs(vp), abs(ve), 1.0)
        diff = abs(vp - ve) / scale
        worst = max(worst, diff)
        print(f"{name:<{width}}  {tp:>9.4f}s  {te:>9.4f}s  {tp / te:>7.2f}x  {diff:>9.2e}")
    print(f"worst relative disagreement {worst:.2e} over {len(cases)} cases")
    if worst > args.tol:
        print(f"backends disagree beyond {args.tol:.1e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
