"""Time the numpy and numba variants of each compute kernel.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Each numba kernel is called once before timing so that compilation is not
counted. The script also reports the largest difference between the two
variants as a sanity check.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from zetalab import _accel


def _cases():
    rng = np.random.default_rng(0)
    s = (rng.uniform(0.5, 3, 64) + 1j * rng.uniform(-50, 50, 64)).astype(np.complex128)
    hi = np.full(64, 20_000, dtype=np.int64)
    t = rng.uniform(1e3, 1e5, 256)
    theta = rng.uniform(0, 2 * np.pi, 256)
    nterms = np.floor(np.sqrt(t / (2 * np.pi))).astype(np.int64)
    w = rng.uniform(0, 1, 200_000)
    e = np.log(np.arange(2, 200_002, dtype=np.float64)) ** 2
    c = np.linspace(0.05, 2.0, 32)
    return {
        "dirichlet_sums": ((s, 1, hi, True), lambda r: r[0]),
        "rs_main_sum": ((t, theta, nterms), lambda r: r),
        "spf_sieve": ((2_000_000,), lambda r: r),
        "gauss_sums": ((w, e, c), lambda r: r),
    }


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    print(f"numba available: {_accel.NUMBA_AVAILABLE}")
    print(f"{'kernel':<16}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}{'max diff':>12}")
    for name, (call_args, pick) in _cases().items():
        f_np = getattr(_accel, f"{name}_np")
        f_nb = getattr(_accel, f"{name}_nb")
        diff = float(np.max(np.abs(np.asarray(pick(f_np(*call_args)), dtype=complex)
                                   - np.asarray(pick(f_nb(*call_args)), dtype=complex))))
        t_np = min(timeit.repeat(lambda: f_np(*call_args), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: f_nb(*call_args), number=1, repeat=args.repeat))
        print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}{diff:>12.1e}")


if __name__ == "__main__":
    main()
