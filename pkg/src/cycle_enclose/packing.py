"""Leave-targeted cycle packers for complete and complete bipartite multigraphs.

Every packer reserves its target leave up front and hands the remainder to
:func:`find_cycle_decomposition`, a randomized greedy + exact-repair search
over the compiled (or pure-Python) kernels.  The decomposition theorems these
packers stand in for guarantee that the targets exist; the search only has to
find them.  Running out of budget raises :class:`SearchTimeout`, never an
infeasibility verdict.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from . import kernel
from .graphs import (
    Cycle,
    CyclePacking,
    Multigraph,
    Part,
    Path,
    U,
    V,
    VertexId,
    complete_bipartite_multigraph,
    complete_multigraph,
    cycle_edges,
    is_even_graph,
    path_edges,
    subtract_edges,
)


class PackingError(ValueError):
    pass


class PreconditionViolation(PackingError):
    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"precondition {condition} violated" + (f": {detail}" if detail else ""))
        self.condition = condition


class DegenerateSplit(PreconditionViolation):
    pass


class SearchTimeout(RuntimeError):
    """The search budget ran out before a packing was found."""


@dataclass(frozen=True)
class SearchBudget:
    seed: int = 0
    timeout: float = 120.0
    restart_limit: int = 64

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")

    def derive(self, tag: int) -> "SearchBudget":
        """Child budget with an independent, reproducible seed."""
        mixed = kernel._kernel_py.SplitMix64(self.seed ^ (tag * 0x9E3779B97F4A7C15)).next()
        return SearchBudget(mixed, self.timeout, self.restart_limit)


@dataclass(frozen=True)
class LeaveSpec:
    kind: str  # "empty" | "single_cycle" | "two_paths"
    length: int = 0
    p: int = 0
    q: int = 0
    part: Part | None = None

    @classmethod
    def empty(cls) -> "LeaveSpec":
        return cls("empty")

    @classmethod
    def single_cycle(cls, length: int) -> "LeaveSpec":
        if length < 2:
            raise ValueError("leave cycle length must be >= 2")
        return cls("single_cycle", length)

    @classmethod
    def two_paths(cls, p: int, q: int, part: Part) -> "LeaveSpec":
        if p < 1 or q < 1:
            raise ValueError("path lengths must be >= 1")
        return cls("two_paths", p + q, p, q, part)

    @property
    def size(self) -> int:
        return self.length


# -- search driver ---------------------------------------------------------

_GREEDY_STEPS = 2000
_EXACT_NODES = 20000
_REPAIR_ROUNDS = 400


def _flat(g: Multigraph, order: Sequence[VertexId]) -> list[int]:
    n = len(order)
    idx = {x: i for i, x in enumerate(order)}
    m = [0] * (n * n)
    for (a, b), k in g.edges():
        i, j = idx[a], idx[b]
        m[i * n + j] = k
        m[j * n + i] = k
    return m


def _apply(m: list[int], n: int, cycles, sign: int) -> None:
    for c in cycles:
        L = len(c)
        for i in range(L):
            a, b = c[i], c[(i + 1) % L]
            m[a * n + b] += sign
            m[b * n + a] += sign


def find_cycle_decomposition(g: Multigraph, lengths: Sequence[int], budget: SearchBudget) -> list[Cycle]:
    """Decompose ``g`` into cycles whose lengths are exactly ``lengths``.

    Greedy placement leaves a small remainder; the repair loop then releases a
    few placed cycles that touch the remainder and re-solves that region
    exactly.  Deterministic for a given ``budget.seed``; the deadline can only
    turn a run into :class:`SearchTimeout`.
    """
    lengths = sorted(lengths, reverse=True)
    if sum(lengths) != g.num_edges:
        raise PackingError(f"cycle lengths sum to {sum(lengths)}, graph has {g.num_edges} edges")
    if not lengths:
        return []
    if not is_even_graph(g):
        raise PackingError("graph has a vertex of odd degree")
    order = g.sorted_vertices()
    n = len(order)
    if max(lengths) > n:
        raise PackingError("a cycle cannot be longer than the number of vertices")
    base = _flat(g, order)
    rng = random.Random(budget.seed)
    deadline = time.monotonic() + budget.timeout
    top = max(lengths)

    for _ in range(budget.restart_limit):
        placed = kernel.greedy_cycles(base, n, lengths, rng.getrandbits(64), 0, _GREEDY_STEPS)
        todo = Counter(lengths)
        todo.subtract(len(c) for c in placed)
        rem = list(base)
        _apply(rem, n, placed, -1)
        for _ in range(_REPAIR_ROUNDS):
            counts = [0] * (top + 1)
            for L, k in todo.items():
                counts[L] = k
            status, extra = kernel.exact_cycles(rem, n, counts, _EXACT_NODES)
            if status == kernel.FOUND:
                return [tuple(order[i] for i in c) for c in placed + extra]
            if time.monotonic() > deadline:
                raise SearchTimeout(f"no decomposition within {budget.timeout}s")
            support = {i for i in range(n) if any(rem[i * n:(i + 1) * n])}
            near = [i for i, c in enumerate(placed) if support.intersection(c)]
            if not near:
                near = list(range(len(placed)))
            if not near:
                break
            pick = set(rng.sample(near, min(len(near), 1 + rng.randrange(4))))
            released = [placed[i] for i in pick]
            placed = [c for i, c in enumerate(placed) if i not in pick]
            _apply(rem, n, released, +1)
            todo.update(len(c) for c in released)
            if sum(rem) // 2 > 6 * top:
                more = kernel.greedy_cycles(
                    rem, n, sorted(todo.elements(), reverse=True), rng.getrandbits(64), 3 * top, _GREEDY_STEPS
                )
                _apply(rem, n, more, -1)
                todo.subtract(len(c) for c in more)
                placed += more
        if time.monotonic() > deadline:
            raise SearchTimeout(f"no decomposition within {budget.timeout}s")
    raise SearchTimeout(f"no decomposition after {budget.restart_limit} restarts")


# -- rotational constructions ---------------------------------------------


def rotational_base_cycles(n: int, lam: int, m: int, node_limit: int = 200000) -> list[list[int]] | None:
    """Base m-cycles on Z_n whose differences cover each of 1..(n-1)/2 exactly
    ``lam`` times, or None when the method does not apply or nothing is found
    within ``node_limit`` steps.  Developing them under x -> x+1 yields an
    m-cycle decomposition of lam K_n."""
    if n % 2 == 0 or m < 3 or m > n or (lam * (n - 1)) % (2 * m):
        return None
    half = (n - 1) // 2
    nbase = lam * (n - 1) // (2 * m)
    used = [0] * (half + 1)
    bases: list[list[int]] = []
    nodes = 0

    def diff(a: int, b: int) -> int:
        d = (b - a) % n
        return min(d, n - d)

    def grow(cyc: list[int], inside: set[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            return False
        last = cyc[-1]
        if len(cyc) == m:
            d = diff(last, 0)
            if used[d] >= lam:
                return False
            used[d] += 1
            bases.append(list(cyc))
            if len(bases) == nbase or grow([0], {0}):
                return True
            bases.pop()
            used[d] -= 1
            return False
        for w in range(1, n):
            if w in inside:
                continue
            d = diff(last, w)
            if used[d] >= lam:
                continue
            used[d] += 1
            cyc.append(w)
            inside.add(w)
            if grow(cyc, inside):
                return True
            inside.discard(w)
            cyc.pop()
            used[d] -= 1
        return False

    if not grow([0], {0}):
        return None
    return bases


def _develop(bases: list[list[int]], n: int, order: Sequence[VertexId]) -> list[Cycle]:
    return [tuple(order[(x + t) % n] for x in b) for t in range(n) for b in bases]


# -- necessary/sufficient conditions of the cited theorems ----------------


def complete_multigraph_failures(n: int, lam: int, lengths: Sequence[int]) -> list[str]:
    """Conditions under which lam K_n decomposes into cycles of the given
    lengths (multigraph analogue of Alspach's conjecture); returns the names
    of the failing ones."""
    bad = []
    total = lam * comb(n, 2)
    if (lam * (n - 1)) % 2:
        bad.append("even-degree")
    if any(L < 2 or L > n for L in lengths):
        bad.append("length-range")
    if sum(lengths) != total:
        bad.append("edge-sum")
    if lam % 2 == 0 and lengths and max(lengths) + len(lengths) - 2 > (lam // 2) * comb(n, 2):
        bad.append("max-length")
    # the digon bound only binds for odd lam; for even lam the max-length
    # bound governs (2K_2 is itself a digon)
    if lam % 2 and sum(L for L in lengths if L == 2) > (lam - 1) * comb(n, 2):
        bad.append("digons")
    return bad


def bipartite_failures(a: int, b: int, lam: int, lengths: Sequence[int]) -> list[str]:
    """Sufficient conditions for an (M)-cycle decomposition of lam K_{a,b}
    with M non-decreasing even lengths; returns the names of the failing ones."""
    a, b = sorted((a, b))
    M = sorted(lengths)
    bad = []
    if a < 5:
        bad.append("part-size")
    if (lam * a) % 2 or (lam * b) % 2:
        bad.append("parity")
    if any(L < 2 or L % 2 for L in M):
        bad.append("even-lengths")
    if M:
        prev = M[-2] if len(M) > 1 else 0
        if len(M) > 1 and M[-1] > 3 * prev:
            bad.append("a")
        if a < b and prev + M[-1] > 2 * a + 2:
            bad.append("b")
        if a == b and prev + M[-1] > 2 * a:
            bad.append("c")
    if sum(M) != lam * a * b:
        bad.append("d")
    return bad


# -- packers ---------------------------------------------------------------


def _leave_cycle_edges(cycle: Sequence[VertexId]) -> list:
    return cycle_edges(cycle)


def pack_complete_multigraph(
    n: int,
    lam: int,
    m: int,
    leave: LeaveSpec = LeaveSpec.empty(),
    budget: SearchBudget = SearchBudget(),
    vertices: Sequence[VertexId] | None = None,
) -> CyclePacking:
    """m-cycle packing of lam K_n whose leave is empty or one cycle.

    The leave cycle sits on the first ``leave.length`` vertices of
    ``vertices`` (default ``V0..V(n-1)``).
    """
    if leave.kind not in ("empty", "single_cycle"):
        raise PreconditionViolation("leave-kind", f"{leave.kind} is not available for complete multigraphs")
    verts = list(vertices) if vertices is not None else [V(i) for i in range(n)]
    host = complete_multigraph(n, lam, verts)
    ell = leave.length if leave.kind == "single_cycle" else 0
    rest = host.num_edges - ell
    if rest < 0 or rest % m:
        raise PreconditionViolation("edge-sum", f"{host.num_edges} - {ell} is not a multiple of {m}")
    lengths = [m] * (rest // m) + ([ell] if ell else [])
    bad = complete_multigraph_failures(n, lam, lengths)
    if bad:
        raise PreconditionViolation(bad[0], f"lam={lam}, n={n}, M={m}^{rest // m}" + (f",{ell}" if ell else ""))
    if ell:
        leave_cycle = tuple(verts[:ell])
        remainder = subtract_edges(host, _leave_cycle_edges(leave_cycle))
    else:
        remainder = host
    cycles: list[Cycle] | None = None
    if not ell:
        bases = rotational_base_cycles(n, lam, m)
        if bases is not None:
            cycles = _develop(bases, n, verts)
    if cycles is None:
        cycles = find_cycle_decomposition(remainder, [m] * (rest // m), budget)
    return CyclePacking(host, tuple(cycles))


def pack_bipartite(
    a: int,
    b: int,
    lam: int,
    M: Sequence[int],
    budget: SearchBudget = SearchBudget(),
    parts: tuple[Sequence[VertexId], Sequence[VertexId]] | None = None,
) -> CyclePacking:
    """Full (M)-cycle decomposition of lam K_{a,b}."""
    bad = bipartite_failures(a, b, lam, M)
    if bad:
        raise PreconditionViolation(bad[0], f"lam={lam}, parts=({a},{b}), M={list(M)}")
    host = complete_bipartite_multigraph(a, b, lam, parts)
    cycles = find_cycle_decomposition(host, list(M), budget)
    return CyclePacking(host, tuple(cycles))


def two_path_target(
    R: Sequence[VertexId], other: Sequence[VertexId], p: int, q: int, shared: int = 0
) -> tuple[Path, Path]:
    """A p-path and a q-path from R[0] to R[1] alternating between the parts.

    With ``shared=0`` the paths only meet at their ends (their union is a
    (p+q)-cycle); with ``shared=1`` they also cross at one interior vertex of
    ``other``, so the union is a chain of two cycles.
    """
    x, y = R[0], R[1]
    r_pool = iter(R[2:])
    o_pool = iter(other)

    def build(length: int, start: VertexId, end: VertexId, fixed: dict[int, VertexId]) -> Path:
        seq = [start]
        for k in range(1, length):
            if k in fixed:
                seq.append(fixed[k])
            else:
                seq.append(next(o_pool) if k % 2 else next(r_pool))
        seq.append(end)
        return tuple(seq)

    if shared == 0:
        P = build(p, x, y, {})
        Q = build(q, y, x, {})
        return P, Q
    # cross at an other-part vertex: odd distance from both ends
    z = next(o_pool)
    dp = p // 2 if (p // 2) % 2 else p // 2 - 1
    dq = q // 2 if (q // 2) % 2 else q // 2 - 1
    dp, dq = max(dp, 1), max(dq, 1)
    P = build(p, x, y, {dp: z})
    Q = build(q, y, x, {dq: z})
    return P, Q


def check_two_path_request(a: int, b: int, lam: int, m: int, p: int, q: int) -> None:
    ell = p + q
    if m % 2 or m < (4 if lam == 1 else 2):
        raise PreconditionViolation("m", f"m={m} must be even and >= {4 if lam == 1 else 2}")
    if min(a, b) < m + 2:
        raise PreconditionViolation("part-size", f"parts ({a},{b}) must be >= m+2 = {m + 2}")
    if ell == 2:
        raise DegenerateSplit("split", "no positive even p, q sum to 2")
    if p < 1 or q < 1 or p % 2 or q % 2:
        raise PreconditionViolation("path-parity", f"p={p}, q={q} must be positive and even")
    # a leave of exactly m edges would just be one more cycle, so it never matches
    if (lam * a * b - ell) % m or ell == m:
        raise PreconditionViolation("residue", f"|E|={lam * a * b} leaves {lam * a * b % m} mod {m}, not {ell}")
    if (lam * a) % 2 or (lam * b) % 2:
        raise PreconditionViolation("even-host", f"lam*a, lam*b must be even (lam={lam}, a={a}, b={b})")
    if min(p, q) < ell - m:
        raise PreconditionViolation("path-length", f"p, q must be >= {ell - m}")
    hi = 2 * m - 4 if lam == 1 else 2 * m - 2
    lo = 4 if lam == 1 else 2
    if not lo <= ell <= hi:
        raise PreconditionViolation("leave-size", f"p+q={ell} not in [{lo},{hi}]")


def pack_bipartite_two_path_leave(
    a: int,
    b: int,
    lam: int,
    m: int,
    p: int,
    q: int,
    R: Part,
    budget: SearchBudget = SearchBudget(),
    parts: tuple[Sequence[VertexId], Sequence[VertexId]] | None = None,
) -> tuple[CyclePacking, Path, Path]:
    """m-cycle packing of lam K_{a,b} whose leave is a p-path P plus a q-path Q,
    both running between the same two vertices of part ``R``."""
    check_two_path_request(a, b, lam, m, p, q)
    left, right = parts if parts is not None else ([V(i) for i in range(a)], [U(j) for j in range(b)])
    if R == left[0].part:
        r_side, o_side = left, right
    elif R == right[0].part:
        r_side, o_side = right, left
    else:
        raise PreconditionViolation("part", f"{R!r} is not a part of the host")
    host = complete_bipartite_multigraph(a, b, lam, (left, right))
    t = (host.num_edges - p - q) // m
    # the cycle-shaped leave is tried first; the chain shape is the fallback
    tries = [0, 1] if budget.restart_limit > 1 else [0]
    share = max(1, budget.restart_limit // len(tries))
    last_err: SearchTimeout | None = None
    for shared in tries:
        P, Q = two_path_target(r_side, o_side, p, q, shared)
        remainder = subtract_edges(host, path_edges(P) + path_edges(Q))
        sub = SearchBudget(budget.derive(shared).seed, budget.timeout, share)
        try:
            cycles = find_cycle_decomposition(remainder, [m] * t, sub)
        except SearchTimeout as exc:
            last_err = exc
            continue
        return CyclePacking(host, tuple(cycles)), P, Q
    assert last_err is not None
    raise last_err


def leave_cycle(pk: CyclePacking) -> Cycle:
    """The leave of ``pk`` as a single cycle (empty tuple when the leave is empty)."""
    return trace_single_cycle(pk.leave)


def trace_single_cycle(g: Multigraph) -> Cycle:
    edges = list(g.edges())
    if not edges:
        return ()
    if len(edges) == 1:
        (x, y), k = edges[0]
        if k != 2:
            raise PackingError("leave is not a single cycle")
        return (x, y)
    if any(k != 1 for _, k in edges):
        raise PackingError("leave is not a single cycle")
    adj: dict[VertexId, list[VertexId]] = {}
    for (x, y), _ in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    if any(len(nb) != 2 for nb in adj.values()):
        raise PackingError("leave is not a single cycle")
    start = min(adj)
    cyc = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        cyc.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(cyc) != len(adj):
        raise PackingError("leave is not connected")
    return tuple(cyc)
