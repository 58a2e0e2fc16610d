"""Time the compiled and numpy GL kernels on the same batches.

    python benchmarks/bench_gl.py [--repeat 5] [--sizes 256,1024,4096]

Prints one row per (rows, n, backend) with the best wall time and the
max deviation from the numpy result.
"""

import argparse
import time

import numpy as np

from fracfield import _backend, gl_weights


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--sizes", default="256,1024,4096")
    p.add_argument("--alpha", type=float, default=0.5)
    args = p.parse_args()

    rng = np.random.default_rng(0)
    backends = _backend.available_backends()
    print(f"backends: {', '.join(backends)}  (default {_backend.BACKEND}, threads {_backend.max_threads()})")
    print(f"{'rows':>6} {'n':>6} {'backend':>8} {'seconds':>10} {'speedup':>8} {'max dev':>9}")
    for n in (int(s) for s in args.sizes.split(",")):
        # the 8^4 field case is 512 lines of 8; long single lines stress the lag loop
        for rows in (1, 64):
            lines = rng.standard_normal((rows, n))
            w = gl_weights(args.alpha, n - 1).w
            ref = _backend.gl_apply(lines, w, "left", backend="python")
            t_py = best_of(lambda: _backend.gl_apply(lines, w, "left", backend="python"), args.repeat)
            for name in backends:
                t = t_py if name == "python" else best_of(
                    lambda: _backend.gl_apply(lines, w, "left", backend=name), args.repeat
                )
                dev = float(np.max(np.abs(_backend.gl_apply(lines, w, "left", backend=name) - ref)))
                print(f"{rows:>6} {n:>6} {name:>8} {t:>10.5f} {t_py / t:>8.1f} {dev:>9.1e}")


if __name__ == "__main__":
    main()
