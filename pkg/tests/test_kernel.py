from __future__ import annotations

import random

import pytest

from cycle_enclose import _kernel_py, kernel
from cycle_enclose.graphs import complete_multigraph
from cycle_enclose.packing import _flat

try:
    from cycle_enclose import _kernel as _kernel_c  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None

needs_c = pytest.mark.skipif(_kernel_c is None, reason="compiled kernel not built")


def _host(n: int, lam: int) -> list[int]:
    g = complete_multigraph(n, lam)
    return _flat(g, g.sorted_vertices())


def _covers(mult: list[int], n: int, cycles) -> bool:
    rest = list(mult)
    for c in cycles:
        for i in range(len(c)):
            a, b = c[i], c[(i + 1) % len(c)]
            rest[a * n + b] -= 1
            rest[b * n + a] -= 1
    return all(x == 0 for x in rest)


def test_backend_flag():
    assert kernel.BACKEND in ("cython", "python")


def test_splitmix_reference_value():
    # first outputs of SplitMix64 seeded with 0 (published reference values)
    r = _kernel_py.SplitMix64(0)
    assert r.next() == 0xE220A8397B1DCDAF
    assert r.next() == 0x6E789E6AA1B965F4


def test_python_exact_finds_k7_triangles():
    status, cycles = _kernel_py.exact_cycles(_host(7, 1), 7, [0, 0, 0, 7], 100000)
    assert status == _kernel_py.FOUND
    assert _covers(_host(7, 1), 7, cycles)


def test_python_exact_exhausts_on_impossible():
    # 2K_3 has 6 edges but no cycle longer than 3
    status, cycles = _kernel_py.exact_cycles(_host(3, 2), 3, [0, 0, 0, 0, 0, 0, 1], 100000)
    assert status == _kernel_py.EXHAUSTED and cycles == []


def test_python_exact_reports_limit():
    status, _ = _kernel_py.exact_cycles(_host(9, 1), 9, [0, 0, 0, 0, 9], 5)
    assert status in (_kernel_py.LIMIT, _kernel_py.FOUND)


@needs_c
@pytest.mark.parametrize("trial", range(25))
def test_greedy_backends_agree(trial):
    rng = random.Random(trial)
    n = rng.randrange(5, 13)
    lam = rng.randrange(1, 4)
    m = rng.choice([3, 4, 5, 6])
    if m > n:
        m = n
    mult = _host(n, lam)
    lengths = [m] * (sum(mult) // 2 // m)
    seed = rng.getrandbits(64)
    a = _kernel_py.greedy_cycles(mult, n, lengths, seed, 0, 2000)
    b = _kernel_c.greedy_cycles(mult, n, lengths, seed, 0, 2000)
    assert [list(c) for c in a] == [list(c) for c in b]


@needs_c
@pytest.mark.parametrize("trial", range(15))
def test_exact_backends_agree(trial):
    rng = random.Random(1000 + trial)
    n = rng.randrange(4, 8)
    lam = rng.randrange(1, 3)
    mult = _host(n, lam)
    edges = sum(mult) // 2
    m = rng.choice([L for L in range(2 if lam > 1 else 3, n + 1) if edges % L == 0] or [edges])
    counts = [0] * (m + 1)
    counts[m] = edges // m
    sa, ca = _kernel_py.exact_cycles(mult, n, counts, 20000)
    sb, cb = _kernel_c.exact_cycles(mult, n, counts, 20000)
    assert sa == sb
    assert [list(c) for c in ca] == [list(c) for c in cb]
    if sa == _kernel_py.FOUND:
        assert _covers(mult, n, ca)
