"""Timing comparison of the compiled and pure-python quadrature kernels.

Runs each hot loop at several grid sizes on both backends, confirms the
outputs agree, and prints a table of per-call times and speedups.  The
numpy fallback routes the kernel assembly through BLAS matrix products,
so the compiled loops are not guaranteed to win there at large N; the
point of the table is to make the trade visible, not to declare one
side obsolete.

Usage: python3 benchmarks/bench_backends.py [--sizes 64,128,256,512]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fionuclear.backend import get_backend


def _case(rng, n: int):
    L = 8.0
    x = -L + (2 * L / n) * np.arange(n)
    xi = np.arange(-(n // 2), n // 2) / (2 * L)
    phi = 2 * np.pi * np.outer(x, xi)
    amp = np.exp(-np.pi * (np.add.outer(x**2, xi**2))) * np.exp(
        1j * rng.standard_normal((n, n))
    )
    vec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return x, xi, phi, amp, vec


def _time(fn, *args, repeats: int) -> tuple:
    best = np.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="64,128,256,512")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    try:
        compiled = get_backend("compiled")
    except ImportError:
        raise SystemExit("compiled backend unavailable; build the extension first")
    python = get_backend("python")
    rng = np.random.default_rng(0)

    kernels = {
        "dft_sum": lambda b, c: b.dft_sum(c[4], c[0], c[1], -1.0, 1.0 / len(c[0])),
        "oscillatory_apply": lambda b, c: b.oscillatory_apply(c[2], c[3], c[4], 0.0625),
        "assemble_kernel": lambda b, c: b.assemble_kernel(c[2], c[3], c[1], c[0], 0.0625),
        "trace_double_sum": lambda b, c: b.trace_double_sum(c[2], c[3], c[0], c[1], 1e-3),
    }

    print(f"{'kernel':<18} {'N':>5} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for n in sizes:
        case = _case(rng, n)
        for name, call in kernels.items():
            t_py, out_py = _time(call, python, case, repeats=args.repeats)
            t_cy, out_cy = _time(call, compiled, case, repeats=args.repeats)
            a, b = np.atleast_1d(out_py), np.atleast_1d(out_cy)
            rel = float(np.max(np.abs(a - b)) / (1.0 + np.max(np.abs(a))))
            if rel > 1e-12:
                raise SystemExit(f"backend mismatch in {name} at N={n}: {rel:.3e}")
            print(f"{name:<18} {n:>5} {t_py:>11.4f}s {t_cy:>11.4f}s {t_py / t_cy:>8.2f}x")


if __name__ == "__main__":
    main()
