"""Compare the compiled search kernels against the pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are fed the same inputs and seeds; their outputs are checked
for equality before timings are reported.
"""

from __future__ import annotations

import argparse
import time

from cycle_enclose import _kernel_py
from cycle_enclose.graphs import complete_bipartite_multigraph, complete_multigraph
from cycle_enclose.packing import _flat

try:
    from cycle_enclose import _kernel as _kernel_c  # type: ignore[attr-defined]
except ImportError:
    _kernel_c = None


def _cases():
    # (name, flat multiplicities, n, kernel call)
    for n, lam, m in ((13, 1, 6), (17, 2, 8), (21, 1, 10)):
        g = complete_multigraph(n, lam)
        flat = _flat(g, g.sorted_vertices())
        k = g.num_edges // m
        yield f"greedy {lam}K_{n}, m={m}", flat, n, ("greedy", [m] * k)
    for a, lam, m in ((10, 2, 8), (12, 1, 6)):
        g = complete_bipartite_multigraph(a, a, lam)
        flat = _flat(g, g.sorted_vertices())
        yield f"greedy {lam}K_{{{a},{a}}}, m={m}", flat, 2 * a, ("greedy", [m] * (g.num_edges // m))
    for n, lam, m in ((7, 1, 3), (9, 1, 4), (8, 2, 4)):
        g = complete_multigraph(n, lam)
        counts = [0] * (m + 1)
        counts[m] = g.num_edges // m
        yield f"exact {lam}K_{n}, m={m}", _flat(g, g.sorted_vertices()), n, ("exact", counts)


def _run(mod, flat, n, call, seed):
    kind, arg = call
    if kind == "greedy":
        return mod.greedy_cycles(flat, n, arg, seed, 0, 2000)
    return mod.exact_cycles(flat, n, arg, 200000)


def _time(mod, flat, n, call, repeat):
    best = float("inf")
    out = None
    for r in range(repeat):
        t0 = time.perf_counter()
        out = _run(mod, flat, n, call, 12345 + r)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args()
    if _kernel_c is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'case':<28} {'python ms':>10} {'cython ms':>10} {'speedup':>8}  same")
    for name, flat, n, call in _cases():
        tp, op = _time(_kernel_py, flat, n, call, ns.repeat)
        if _kernel_c is None:
            print(f"{name:<28} {tp * 1e3:>10.2f} {'-':>10} {'-':>8}  -")
            continue
        tc, oc = _time(_kernel_c, flat, n, call, ns.repeat)
        same = op == oc
        print(f"{name:<28} {tp * 1e3:>10.2f} {tc * 1e3:>10.2f} {tp / tc:>7.1f}x  {same}")


if __name__ == "__main__":
    main()
