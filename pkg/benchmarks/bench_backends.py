"""Benchmark: numba-compiled vs pure-numpy Jacobi eigensolver kernel.

Times the two backends on the workload the library actually runs: the
Hermitian eigensolves behind the generic measure route (single-qubit
reductions for GGM plus two-qubit partial transposes for the negativities),
and the raw kernel on batches of random Hermitian matrices.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--points N] [--repeats R]
"""

import argparse
import time

import numpy as np

from trinu import OscillationParams, amplitudes, density, make_state
from trinu import linalg
from trinu._backend import eigvalsh_small, jacobi_sweeps, jacobi_sweeps_numpy

KERNELS = {"numba": jacobi_sweeps, "numpy": jacobi_sweeps_numpy}


def generic_route_workload(points):
    """All eigensolves of a generic-path muon sweep with ``points`` samples."""
    params = OscillationParams()
    matrices = []
    for le in np.geomspace(10.0, 1600.0, points):
        rho = density(make_state(amplitudes(params, "mu", le)))
        for q in linalg.QUBITS:
            matrices.append(linalg.partial_trace(rho, q))
        for pair in ("AB", "AC", "BC"):
            red = linalg.partial_trace(rho, pair)
            matrices.append(red)
            matrices.append(linalg.partial_transpose(red, 0))
    return matrices


def random_hermitian_workload(count, dim, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        out.append(m + m.conj().T)
    return out


def time_kernel(kernel, matrices, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for h in matrices:
            eigvalsh_small(h, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=400,
                    help="sweep samples for the generic-route workload")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timing repeats; the best run is reported")
    args = ap.parse_args()

    workloads = {
        f"generic route, {args.points} sweep points":
            generic_route_workload(args.points),
        "random Hermitian 4x4, 2000 matrices":
            random_hermitian_workload(2000, 4),
        "random Hermitian 8x8, 500 matrices":
            random_hermitian_workload(500, 8, seed=1),
    }

    # trigger numba compilation outside the timed region
    eigvalsh_small(np.eye(2, dtype=complex), kernel=KERNELS["numba"])

    print(f"{'workload':45s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, matrices in workloads.items():
        times = {k: time_kernel(kern, matrices, args.repeats)
                 for k, kern in KERNELS.items()}
        ratio = times["numpy"] / times["numba"]
        print(f"{name:45s} {times['numba']:9.4f}s {times['numpy']:9.4f}s "
              f"{ratio:7.1f}x")

    # sanity: both kernels agree with each other and with numpy.linalg
    for h in random_hermitian_workload(20, 4, seed=2):
        a = eigvalsh_small(h, kernel=KERNELS["numba"])
        b = eigvalsh_small(h, kernel=KERNELS["numpy"])
        c = np.linalg.eigvalsh(h)
        assert np.max(np.abs(a - b)) < 1e-12
        assert np.max(np.abs(a - c)) < 1e-10
    print("cross-check: backends agree with each other and numpy.linalg")


if __name__ == "__main__":
    main()
