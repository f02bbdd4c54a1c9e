"""Compare the pure-Python and compiled sparse kernels.

    python3 benchmarks/bench_kernel.py [--repeat N] [--degree D]
"""
from __future__ import annotations

import argparse
import random
import timeit

from altlie.kernel import _backend, _sparse_py
from altlie.kernel.poly import DEFAULT


def random_poly(rng, names, terms, degree):
    offs = DEFAULT.offsets(names)
    out = {}
    for _ in range(terms):
        key = 0
        budget = degree
        for off in offs:
            e = rng.randint(0, budget)
            budget -= e
            key |= e << off
        out[key] = out.get(key, 0) + rng.randint(-50, 50) or 1
    return out


def workloads(degree, seed=7):
    rng = random.Random(seed)
    names = ["y1", "y2", "β", "γ", "x"]
    a = random_poly(rng, names, 120, degree)
    b = random_poly(rng, names, 120, degree)
    offs = DEFAULT.offsets(["y1", "y2"])
    return {
        "mul": lambda impl: impl.mul(a, b),
        "mul_truncated": lambda impl: impl.mul_truncated(a, b, offs, degree),
        "add_scaled": lambda impl: impl.add_scaled(a, 3, b, -2),
        "content": lambda impl: impl.content(a),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--degree", type=int, default=6)
    args = parser.parse_args(argv)
    if "compiled" not in _backend.available():
        print("compiled kernel not built; only the Python timings are shown")
    compiled = _backend._compiled
    print(f"{'kernel':<15}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, fn in workloads(args.degree).items():
        t_py = min(timeit.repeat(lambda: fn(_sparse_py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:<15}{t_py:>12.3f}{'-':>14}{'-':>10}")
            continue
        assert fn(_sparse_py) == fn(compiled), f"{name}: backends disagree"
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<15}{t_py:>12.3f}{t_c:>14.3f}{t_py / t_c:>9.2f}x")
    if compiled is not None:
        end_to_end(max(1, args.repeat // 10))


def end_to_end(repeat):
    """A whole computation (Appell levels up to 8) under each backend."""
    from altlie import appell

    timings = {}
    for name in ("python", "compiled"):
        _backend.use(name)
        appell._on_basis.cache_clear()
        timings[name] = min(timeit.repeat(
            lambda: (appell._on_basis.cache_clear(), appell.appell_levels(8)),
            number=1, repeat=repeat)) * 1e3
    _backend.use("compiled")
    t_py, t_c = timings["python"], timings["compiled"]
    print(f"{'appell(8)':<15}{t_py:>12.3f}{t_c:>14.3f}{t_py / t_c:>9.2f}x")


if __name__ == "__main__":
    main()
