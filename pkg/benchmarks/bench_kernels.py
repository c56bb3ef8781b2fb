"""Timing comparison of the numpy and numba kernel backends.

Run:  python3 benchmarks/bench_kernels.py [--sizes 1024,8192,65536] [--repeat 20]

Times the four hot kernels (discrete frames, elementary symmetric
polynomials, and the quotient speed field) on identical inputs for both
backends and prints per-call medians and the speedup.
"""

from __future__ import annotations

import argparse
import time
from math import comb, pi

import numpy as np

from horoflow.kernels import numba_backend, numpy_backend
from horoflow.shapes import centered_sphere, perturbed_sphere


def _median_time(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def _cases(N):
    closed = perturbed_sphere(1, N, 0.8, 0.03, 3).nodes
    open_arc = perturbed_sphere(2, N + 1, 0.7, 0.02, 2).nodes
    rng = np.random.default_rng(0)
    n = 3
    kappa = 10.0 ** rng.uniform(-1.0, 1.0, size=(N, n))
    phip = rng.uniform(0.3, 1.0, size=N)
    u = rng.uniform(0.0, 0.7, size=N)
    binom = np.array([float(comb(n, j)) for j in range(n + 1)])
    return {
        "closed_frame": (closed,),
        "open_frame": (open_arc,),
        "elementary": (kappa,),
        "quotient_speed": (kappa, 2, phip, u, binom),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1024,8192,65536")
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    np_impl = numpy_backend()
    nb_impl = numba_backend()
    if nb_impl is None:
        print("numba backend unavailable; nothing to compare")
        return 1

    # JIT warm-up on small inputs so compilation is not timed
    for name, call_args in _cases(64).items():
        getattr(nb_impl, name)(*call_args)

    print(f"{'kernel':<16} {'N':>7} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for N in sizes:
        for name, call_args in _cases(N).items():
            t_np = _median_time(getattr(np_impl, name), call_args, args.repeat)
            t_nb = _median_time(getattr(nb_impl, name), call_args, args.repeat)
            print(f"{name:<16} {N:>7} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms "
                  f"{t_np / t_nb:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
