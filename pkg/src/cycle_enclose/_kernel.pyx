# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract and draw order as ``_kernel_py``."""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t

DEF_FOUND = 0
DEF_EXHAUSTED = 1
DEF_LIMIT = 2


cdef inline uint64_t _next(uint64_t* state) noexcept nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline void _sort_desc(long* keys, int* ws, int k) noexcept nogil:
    # stable insertion sort, key descending; ws arrive ascending so ties stay ascending
    cdef int i, j
    cdef long kk
    cdef int ww
    for i in range(1, k):
        kk = keys[i]
        ww = ws[i]
        j = i - 1
        while j >= 0 and keys[j] < kk:
            keys[j + 1] = keys[j]
            ws[j + 1] = ws[j]
            j -= 1
        keys[j + 1] = kk
        ws[j + 1] = ww


cdef struct Finder:
    int* m
    int* deg
    int n
    int L
    int x
    uint64_t* rng
    long steps
    long step_limit
    int* visited
    int* path
    int plen
    long* keys      # L*n scratch
    int* ws         # L*n scratch
    int found


cdef int _rec(Finder* f, int c) noexcept nogil:
    f.steps += 1
    if f.steps > f.step_limit:
        return 0
    cdef int n = f.n
    cdef int final = (f.plen + 1 == f.L)
    cdef int need = 2 if c == f.x else 1
    cdef int base = c * n
    cdef long* keys = f.keys + f.plen * n
    cdef int* ws = f.ws + f.plen * n
    cdef int k = 0
    cdef int w, i, ok
    for w in range(n):
        if f.m[base + w] > 0 and not f.visited[w]:
            if final:
                if f.m[w * n + f.x] < need:
                    continue
            elif f.deg[w] < 2:
                continue
            keys[k] = <long>f.deg[w] * 1024 + <long>(_next(f.rng) & 1023)
            ws[k] = w
            k += 1
    _sort_desc(keys, ws, k)
    for i in range(k):
        w = ws[i]
        f.m[base + w] -= 1
        f.m[w * n + c] -= 1
        f.deg[c] -= 1
        f.deg[w] -= 1
        f.visited[w] = 1
        f.path[f.plen] = w
        f.plen += 1
        if final:
            f.found = 1
            ok = 1
        else:
            ok = _rec(f, w)
        f.plen -= 1
        f.visited[w] = 0
        f.m[base + w] += 1
        f.m[w * n + c] += 1
        f.deg[c] += 1
        f.deg[w] += 1
        if ok:
            return 1
        if f.steps > f.step_limit:
            return 0
    return 0


def greedy_cycles(mult, int n, lengths, seed, int stop_edges, long step_limit):
    cdef int nn = n * n
    cdef int* m = <int*>malloc(nn * sizeof(int))
    cdef int* deg = <int*>calloc(n, sizeof(int))
    cdef int* visited = <int*>calloc(n, sizeof(int))
    cdef int* path = <int*>malloc((n + 1) * sizeof(int))
    cdef long* keys = <long*>malloc((n + 1) * n * sizeof(long))
    cdef int* ws = <int*>malloc((n + 1) * n * sizeof(int))
    cdef long* skeys = <long*>malloc(n * sizeof(long))
    cdef int* sws = <int*>malloc(n * sizeof(int))
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef int i, j, a, b, x, L, k, total = 0
    cdef Finder f
    out = []
    try:
        for i in range(nn):
            m[i] = mult[i]
        for i in range(n):
            for j in range(n):
                deg[i] += m[i * n + j]
            total += deg[i]
        total //= 2
        f.m = m
        f.deg = deg
        f.n = n
        f.rng = &state
        f.step_limit = step_limit
        f.visited = visited
        f.path = path
        f.keys = keys
        f.ws = ws
        for L in lengths:
            if total <= stop_edges:
                break
            k = 0
            for x in range(n):
                if deg[x] > 0:
                    skeys[k] = <long>deg[x] * 1024 + <long>(_next(&state) & 1023)
                    sws[k] = x
                    k += 1
            _sort_desc(skeys, sws, k)
            f.found = 0
            for i in range(k):
                x = sws[i]
                f.L = L
                f.x = x
                f.steps = 0
                f.found = 0
                for j in range(n):
                    visited[j] = 0
                visited[x] = 1
                path[0] = x
                f.plen = 1
                with nogil:
                    _rec(&f, x)
                if f.found:
                    break
            if not f.found:
                break
            cyc = [path[j] for j in range(L)]
            for j in range(L):
                a = path[j]
                b = path[(j + 1) % L]
                m[a * n + b] -= 1
                m[b * n + a] -= 1
                deg[a] -= 1
                deg[b] -= 1
            total -= L
            out.append(cyc)
    finally:
        free(m); free(deg); free(visited); free(path)
        free(keys); free(ws); free(skeys); free(sws)
    return out


cdef struct Exact:
    int* m
    int* deg
    int n
    int* counts
    int ncounts
    long nodes
    long node_limit
    int limited
    int* sol        # flattened cycles
    int* sol_len
    int nsol
    int sol_used
    int* seen       # scratch n
    int* stack      # scratch n


cdef inline void _take(Exact* e, int a, int b) noexcept nogil:
    e.m[a * e.n + b] -= 1
    e.m[b * e.n + a] -= 1
    e.deg[a] -= 1
    e.deg[b] -= 1


cdef inline void _give(Exact* e, int a, int b) noexcept nogil:
    e.m[a * e.n + b] += 1
    e.m[b * e.n + a] += 1
    e.deg[a] += 1
    e.deg[b] += 1


cdef int _components_ok(Exact* e) noexcept nogil:
    cdef int L, L0 = -1, distinct = 0
    for L in range(e.ncounts):
        if e.counts[L] > 0:
            distinct += 1
            L0 = L
    if distinct != 1:
        return 1
    cdef int n = e.n
    cdef int s, a, b, top, half
    for s in range(n):
        e.seen[s] = 0
    for s in range(n):
        if e.deg[s] == 0 or e.seen[s]:
            continue
        e.seen[s] = 1
        e.stack[0] = s
        top = 1
        half = 0
        while top > 0:
            top -= 1
            a = e.stack[top]
            half += e.deg[a]
            for b in range(n):
                if e.m[a * n + b] > 0 and not e.seen[b]:
                    e.seen[b] = 1
                    e.stack[top] = b
                    top += 1
        if (half // 2) % L0:
            return 0
    return 1


cdef int _extend(Exact* e, int x, int c, int L, int* path, int plen, int* visited) noexcept nogil:
    e.nodes += 1
    if e.nodes > e.node_limit:
        e.limited = 1
        return 0
    cdef int n = e.n
    cdef int w, ok, j
    if plen == L:
        if e.m[c * n + x] == 0:
            return 0
        _take(e, c, x)
        for j in range(L):
            e.sol[e.sol_used + j] = path[j]
        e.sol_len[e.nsol] = L
        e.nsol += 1
        e.sol_used += L
        ok = _solve(e)
        if not ok:
            e.nsol -= 1
            e.sol_used -= L
        _give(e, c, x)
        return ok
    cdef int base = c * n
    for w in range(n):
        if e.m[base + w] > 0 and not visited[w]:
            _take(e, c, w)
            visited[w] = 1
            path[plen] = w
            ok = _extend(e, x, w, L, path, plen + 1, visited)
            visited[w] = 0
            _give(e, c, w)
            if ok:
                return 1
            if e.limited:
                return 0
    return 0


cdef int _solve(Exact* e) noexcept nogil:
    cdef int n = e.n
    cdef int i, x = -1, best = 1 << 30, y, L, ok
    for i in range(n):
        if e.deg[i] > 0 and e.deg[i] < best:
            best = e.deg[i]
            x = i
    if x < 0:
        for L in range(e.ncounts):
            if e.counts[L]:
                return 0
        return 1
    if not _components_ok(e):
        return 0
    y = 0
    while e.m[x * n + y] == 0:
        y += 1
    cdef int* path = <int*>malloc(n * sizeof(int))
    cdef int* visited = <int*>calloc(n, sizeof(int))
    ok = 0
    for L in range(2, e.ncounts):
        if e.counts[L] == 0:
            continue
        e.counts[L] -= 1
        _take(e, x, y)
        for i in range(n):
            visited[i] = 0
        visited[x] = 1
        visited[y] = 1
        path[0] = x
        path[1] = y
        ok = _extend(e, x, y, L, path, 2, visited)
        _give(e, x, y)
        e.counts[L] += 1
        if ok or e.limited:
            break
    free(path)
    free(visited)
    return ok


def exact_cycles(mult, int n, counts, long node_limit):
    cdef int nn = n * n
    cdef int i, j, total = 0, want = 0, ok
    cdef Exact e
    e.n = n
    e.ncounts = len(counts)
    e.m = <int*>malloc(nn * sizeof(int))
    e.deg = <int*>calloc(n, sizeof(int))
    e.counts = <int*>malloc((e.ncounts + 1) * sizeof(int))
    e.seen = <int*>malloc(n * sizeof(int))
    e.stack = <int*>malloc((nn + n + 1) * sizeof(int))
    for i in range(nn):
        e.m[i] = mult[i]
    for i in range(n):
        for j in range(n):
            e.deg[i] += e.m[i * n + j]
        total += e.deg[i]
    total //= 2
    for i in range(e.ncounts):
        e.counts[i] = counts[i]
        want += i * e.counts[i]
    e.sol = <int*>malloc((total + 1) * sizeof(int))
    e.sol_len = <int*>malloc((total + 1) * sizeof(int))
    e.nsol = 0
    e.sol_used = 0
    e.nodes = 0
    e.node_limit = node_limit
    e.limited = 0
    result = []
    status = DEF_EXHAUSTED
    try:
        if total == want:
            with nogil:
                ok = _solve(&e)
            if ok:
                status = DEF_FOUND
                pos = 0
                for i in range(e.nsol):
                    result.append([e.sol[pos + j] for j in range(e.sol_len[i])])
                    pos += e.sol_len[i]
            elif e.limited:
                status = DEF_LIMIT
    finally:
        free(e.m); free(e.deg); free(e.counts); free(e.seen); free(e.stack)
        free(e.sol); free(e.sol_len)
    return status, result
