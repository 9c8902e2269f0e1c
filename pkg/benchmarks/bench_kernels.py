"""Compare the compiled kernels with the numpy fallback, and time an end-to-end diameter.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is checked for
agreement between the two backends before it is timed.
"""
import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from sphconvex import _kernels_py
from sphconvex.bodies import interior_point
from sphconvex.generators import gen_reuleaux
from sphconvex.sphere import fibonacci_sphere, normalize_rows, tangent_basis

try:
    from sphconvex import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    body = gen_reuleaux(math.pi / 3)
    c = interior_point(body)
    a, k = body.constraints
    dirs = normalize_rows(rng.standard_normal((20000, 2))) @ tangent_basis(c)
    pts = fibonacci_sphere(4000)
    gens = normalize_rows(np.abs(rng.standard_normal((3000, 3))) + 0.2)
    anchors = -normalize_rows(np.abs(rng.standard_normal((200, 3))))
    return {
        "exit_angles (3 caps x 20000 dirs)": ("exit_angles", (a, k, c, dirs)),
        "min_dot_rows (4000 x 4000)": ("min_dot_rows", (pts, pts)),
        "cone_project (200 anchors, 3000 gens)": ("cone_project", (anchors, gens)),
    }


def time_call(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def end_to_end(pure: bool) -> float:
    code = ("import time, math; from sphconvex.generators import gen_reuleaux;"
            "from sphconvex.metrics import verify_theorem_1;"
            "b = gen_reuleaux(2 * math.pi / 3); t = time.perf_counter();"
            "verify_theorem_1(b); print(time.perf_counter() - t)")
    env = dict(os.environ, SPHCONVEX_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the numpy backend is available")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':42s} {'numpy ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, (fn, fargs) in cases(rng).items():
        py, cy = getattr(_kernels_py, fn), getattr(_ckernels, fn)
        r_py, r_cy = py(*fargs), cy(*fargs)
        for x, y in zip(r_py if isinstance(r_py, tuple) else (r_py,),
                        r_cy if isinstance(r_cy, tuple) else (r_cy,)):
            np.testing.assert_allclose(x, y, atol=1e-10)
        t_py = time_call(py, fargs, args.repeat) * 1e3
        t_cy = time_call(cy, fargs, args.repeat) * 1e3
        print(f"{name:42s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")
    t_py, t_cy = end_to_end(True), end_to_end(False)
    print(f"{'verify_theorem_1(Reuleaux 2pi/3), s':42s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
