"""Timing comparison of the compiled kernels against the pure fallback.

Runs the workloads the kernels were compiled for: closure table
construction over a tope family, single-set closure sweeps, the
wall-crossing scan, and signed-permutation mask transport. Each is timed
on both backends with identical inputs and the results must agree bit
for bit, so the benchmark doubles as a coarse equivalence check.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from topekit import _kernels as K
from topekit._kernels import bitops_py
from topekit.oriented_matroid import cone_matroid
from topekit.preacycloid import Preacycloid, signed_permutations, _class_lookup


def _workloads():
    view = cone_matroid([(1, 0), (0, 1), (1, 1), (1, -1)])
    hemis = [h.mask for h in view.hemispaces]
    n = view.ground.n
    fam = Preacycloid(view.ground, view.topes)
    class_of, class_masks = _class_lookup(fam)
    topes = list(fam.tope_masks)
    perms = list(signed_permutations(n))[:256]

    def closure_table(mod):
        return tuple(mod.closure_table(hemis, n))

    def closure_sweep(mod):
        full = view.ground.full_mask
        acc = 0
        for x in range(1 << (2 * n)):
            acc ^= mod.closure_mask(x, hemis, full, None)
        return acc

    def wall_crossing(mod):
        out = []
        for _ in range(50):
            out.append(mod.a4_witness(topes, class_masks, class_of, n))
        return tuple(out)

    def perm_transport(mod):
        acc = 0
        for p in perms:
            for m in topes:
                acc ^= mod.apply_perm_mask(m, p)
        return acc

    return [
        ("closure_table", closure_table),
        ("closure_sweep", closure_sweep),
        ("wall_crossing", wall_crossing),
        ("perm_transport", perm_transport),
    ]


def _time(fn, mod, repeat: int) -> tuple[float, object]:
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(mod)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    compiled = K._compiled
    if compiled is None:
        print("compiled kernels unavailable; timing the pure backend only")
    print(f"{'workload':<16} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in _workloads():
        t_pure, r_pure = _time(fn, bitops_py, args.repeat)
        if compiled is None:
            print(f"{name:<16} {t_pure * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        t_c, r_c = _time(fn, compiled, args.repeat)
        if r_pure != r_c:
            print(f"{name:<16} BACKENDS DISAGREE")
            return 1
        print(f"{name:<16} {t_pure * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms "
              f"{t_pure / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
