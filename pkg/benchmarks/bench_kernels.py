#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback."""
from __future__ import annotations

import argparse
import json
import random
import timeit

from nodalsym import _kernels


def _poly(rng, nterms, nvars, deg):
    return {tuple(rng.randint(0, deg) for _ in range(nvars)): rng.randint(-50, 50) or 1
            for _ in range(nterms)}


def _matrix(rng, rows, cols, bound=20):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def cases(rng, scale: int):
    a, b = _poly(rng, 60 * scale, 3, 12), _poly(rng, 60 * scale, 3, 12)
    rank_m = _matrix(rng, 40 * scale, 50 * scale)
    det_m = _matrix(rng, 12 * scale, 12 * scale)
    return {
        "poly_mul": ("poly_mul", (a, b)),
        "int_rank": ("int_rank", (rank_m,)),
        "int_det": ("int_det", (det_m,)),
    }


def run(scale: int, repeat: int, seed: int) -> list:
    rng = random.Random(seed)
    rows = []
    for label, (name, args) in cases(rng, scale).items():
        py = getattr(_kernels.python, name)
        res = {"kernel": label, "python_s": min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat))}
        if _kernels.compiled is not None:
            cy = getattr(_kernels.compiled, name)
            if cy(*args) != py(*args):
                raise SystemExit(f"{label}: backends disagree")
            res["compiled_s"] = min(timeit.repeat(lambda: cy(*args), number=1, repeat=repeat))
            res["speedup"] = res["python_s"] / res["compiled_s"]
        rows.append(res)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = run(args.scale, args.repeat, args.seed)
    if args.json:
        print(json.dumps({"backend": _kernels.BACKEND, "rows": rows}, indent=2))
        return 0
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<10}{'python (ms)':>13}{'compiled (ms)':>15}{'speedup':>9}")
    for r in rows:
        c = f"{1e3 * r['compiled_s']:>15.2f}" if "compiled_s" in r else f"{'n/a':>15}"
        s = f"{r['speedup']:>8.1f}x" if "speedup" in r else f"{'':>9}"
        print(f"{r['kernel']:<10}{1e3 * r['python_s']:>13.2f}{c}{s}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
