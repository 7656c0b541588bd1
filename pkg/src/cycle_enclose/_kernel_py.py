"""Pure-Python search kernels.

Behaviour (including every pseudo-random draw) matches ``_kernel.pyx``
exactly, so both backends return identical cycles for identical inputs.

Graphs are passed as a flat ``n*n`` symmetric multiplicity list.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

FOUND = 0
EXHAUSTED = 1
LIMIT = 2


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def _degrees(m: list[int], n: int) -> list[int]:
    return [sum(m[i * n:(i + 1) * n]) for i in range(n)]


def _find_cycle(m, deg, n, L, x, rng, step_limit):
    visited = [False] * n
    visited[x] = True
    path = [x]
    steps = 0
    result = None

    def rec(c: int) -> bool:
        nonlocal steps, result
        steps += 1
        if steps > step_limit:
            return False
        final = len(path) + 1 == L
        need = 2 if c == x else 1
        base = c * n
        cands = []
        for w in range(n):
            if m[base + w] > 0 and not visited[w]:
                if final:
                    if m[w * n + x] < need:
                        continue
                elif deg[w] < 2:
                    continue
                cands.append((deg[w] * 1024 + (rng.next() & 1023), w))
        cands.sort(key=lambda t: (-t[0], t[1]))
        for _, w in cands:
            m[base + w] -= 1
            m[w * n + c] -= 1
            deg[c] -= 1
            deg[w] -= 1
            visited[w] = True
            path.append(w)
            if final:
                result = list(path)
                ok = True
            else:
                ok = rec(w)
            path.pop()
            visited[w] = False
            m[base + w] += 1
            m[w * n + c] += 1
            deg[c] += 1
            deg[w] += 1
            if ok:
                return True
            if steps > step_limit:
                return False
        return False

    rec(x)
    return result


def greedy_cycles(mult, n, lengths, seed, stop_edges, step_limit):
    """Place cycles of the given lengths one after another, each through the
    busiest vertex that admits one, until ``stop_edges`` or fewer edges remain
    or no cycle of the next length is found."""
    m = list(mult)
    deg = _degrees(m, n)
    total = sum(deg) // 2
    rng = SplitMix64(seed)
    out = []
    for L in lengths:
        if total <= stop_edges:
            break
        starts = []
        for x in range(n):
            if deg[x] > 0:
                starts.append((deg[x] * 1024 + (rng.next() & 1023), x))
        starts.sort(key=lambda t: (-t[0], t[1]))
        found = None
        for _, x in starts:
            found = _find_cycle(m, deg, n, L, x, rng, step_limit)
            if found is not None:
                break
        if found is None:
            break
        for i in range(L):
            a, b = found[i], found[(i + 1) % L]
            m[a * n + b] -= 1
            m[b * n + a] -= 1
            deg[a] -= 1
            deg[b] -= 1
        total -= L
        out.append(found)
    return out


class _Limit(Exception):
    pass


def exact_cycles(mult, n, counts, node_limit):
    """Exhaustive backtracking for a decomposition into cycles with the given
    length counts (``counts[L]`` cycles of length L).

    Returns ``(status, cycles)`` with status FOUND, EXHAUSTED or LIMIT.
    """
    m = list(mult)
    deg = _degrees(m, n)
    counts = list(counts)
    if sum(deg) // 2 != sum(L * c for L, c in enumerate(counts)):
        return EXHAUSTED, []
    sol: list[list[int]] = []
    nodes = 0

    def components_ok() -> bool:
        distinct = [L for L, c in enumerate(counts) if c > 0]
        if len(distinct) != 1:
            return True
        L0 = distinct[0]
        seen = [False] * n
        for s in range(n):
            if deg[s] == 0 or seen[s]:
                continue
            seen[s] = True
            stack = [s]
            half = 0
            while stack:
                a = stack.pop()
                half += deg[a]
                base = a * n
                for b in range(n):
                    if m[base + b] > 0 and not seen[b]:
                        seen[b] = True
                        stack.append(b)
            if (half // 2) % L0:
                return False
        return True

    def take(a, b):
        m[a * n + b] -= 1
        m[b * n + a] -= 1
        deg[a] -= 1
        deg[b] -= 1

    def give(a, b):
        m[a * n + b] += 1
        m[b * n + a] += 1
        deg[a] += 1
        deg[b] += 1

    def solve() -> bool:
        x, best = -1, 1 << 30
        for i in range(n):
            if 0 < deg[i] < best:
                best, x = deg[i], i
        if x < 0:
            return not any(counts)
        if not components_ok():
            return False
        base = x * n
        y = 0
        while m[base + y] == 0:
            y += 1
        for L in range(2, len(counts)):
            if counts[L] == 0:
                continue
            counts[L] -= 1
            take(x, y)
            visited = [False] * n
            visited[x] = visited[y] = True
            ok = extend(x, y, L, [x, y], visited)
            give(x, y)
            counts[L] += 1
            if ok:
                return True
        return False

    def extend(x, c, L, path, visited) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _Limit
        if len(path) == L:
            if m[c * n + x] == 0:
                return False
            take(c, x)
            sol.append(list(path))
            ok = solve()
            if not ok:
                sol.pop()
            give(c, x)
            return ok
        base = c * n
        for w in range(n):
            if m[base + w] > 0 and not visited[w]:
                take(c, w)
                visited[w] = True
                path.append(w)
                ok = extend(x, w, L, path, visited)
                path.pop()
                visited[w] = False
                give(c, w)
                if ok:
                    return True
        return False

    try:
        found = solve()
    except _Limit:
        return LIMIT, []
    return (FOUND, sol) if found else (EXHAUSTED, [])
