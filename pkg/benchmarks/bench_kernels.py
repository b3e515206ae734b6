"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]

Kernel rows time each implementation directly on the same inputs (compile
time excluded). The end-to-end rows run one null-ideal computation in a fresh
interpreter with and without INTDECOMP_DISABLE_NUMBA=1.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from intdecomp import _accel, fixture, kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(quick):
    rng = np.random.default_rng(0)
    n = 2_000 if quick else 20_000
    p, k = 2, 3
    m = p**k
    howell_in = rng.integers(0, m, size=(n // 20, 48))
    h = kernels.howell_np(rng.integers(0, m, size=(24, 48)), p, k)
    vecs = rng.integers(0, m, size=(n, 48))
    table = fixture("m3z").table % m
    t = table.shape[0]
    x = rng.integers(0, m, size=(n, t))
    y = rng.integers(0, m, size=(n, t))
    return [
        ("howell", f"{howell_in.shape[0]}x48 mod 8", lambda f: f(howell_in, p, k), kernels.howell_nb, kernels.howell_np),
        ("reduce_rows", f"{n} rows mod 8", lambda f: f(h, vecs, m), kernels.reduce_rows_nb, kernels.reduce_rows_np),
        ("mul_batch", f"{n} products in M_3", lambda f: f(x, y, table, m), kernels.mul_batch_nb, kernels.mul_batch_np),
    ]


END_TO_END = (
    "import time; from intdecomp import fixture, reduce_mod, is_N_decomposable; "
    "t = time.perf_counter(); is_N_decomposable(reduce_mod(fixture({name!r}), {p}, {k}), {d}); "
    "print(time.perf_counter() - t)"
)


def end_to_end(name, p, k, d, disable):
    env = dict(os.environ)
    if disable:
        env["INTDECOMP_DISABLE_NUMBA"] = "1"
    else:
        env.pop("INTDECOMP_DISABLE_NUMBA", None)
    code = END_TO_END.format(name=name, p=p, k=k, d=d)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller inputs, skip the end-to-end runs")
    args = ap.parse_args()

    if not _accel.NUMBA_AVAILABLE:
        sys.exit("numba is not installed; nothing to compare")

    print(f"{'kernel':<12} {'input':<22} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, desc, call, nb, npf in kernel_cases(args.quick):
        assert np.array_equal(call(nb), call(npf))  # also triggers compilation
        t_nb = best_of(lambda: call(nb), args.repeat)
        t_np = best_of(lambda: call(npf), args.repeat)
        print(f"{name:<12} {desc:<22} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms {t_np / t_nb:>7.1f}x")

    if args.quick:
        return
    print()
    print(f"{'end to end':<34} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, p, k, d in [("m2z", 3, 1, 8), ("zs3", 3, 2, 6), ("m3z", 2, 2, 6)]:
        t_nb = end_to_end(name, p, k, d, disable=False)
        t_np = end_to_end(name, p, k, d, disable=True)
        label = f"is_N_decomposable {name} mod {p}^{k}, d={d}"
        print(f"{label:<34} {t_nb:>9.2f}s {t_np:>9.2f}s {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
