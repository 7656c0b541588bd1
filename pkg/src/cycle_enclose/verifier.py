"""Certificate checking by plain multiset arithmetic.

Nothing here calls into the constructors or the multigraph module: hosts are
rebuilt from parameters as Counters over label pairs, and cycles are read as
label sequences.  ``VertexId`` values are accepted and turned into labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

KINDS = (
    "bad-cycle",
    "multiplicity-overflow",
    "residual-nonzero",
    "wrong-length",
    "leave-shape-mismatch",
    "containment-violation",
)


@dataclass
class VerifyReport:
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, kind: str, detail: str) -> None:
        assert kind in KINDS, kind
        self.failures.append((kind, detail))

    def kinds(self) -> set[str]:
        return {k for k, _ in self.failures}

    def extend(self, other: "VerifyReport", prefix: str = "") -> None:
        self.failures.extend((k, prefix + d) for k, d in other.failures)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": [{"kind": k, "detail": d} for k, d in self.failures]}


def _lab(x: Any) -> str:
    lab = getattr(x, "label", None)
    return lab if isinstance(lab, str) else str(x)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _part(label: str) -> str:
    return "INF" if label == "INF" else label[0]


# -- host graphs rebuilt from parameters -----------------------------------


def _clique(labels: Sequence[str], lam: int) -> Counter:
    c: Counter = Counter()
    if lam:
        for a, b in combinations(labels, 2):
            c[_pair(a, b)] += lam
    return c


def _vlabels(n: int) -> list[str]:
    return [f"V{i}" for i in range(n)]


def _ulabels(n: int) -> list[str]:
    return [f"U{j}" for j in range(n)]


def difference_host(m_lam_mu_v_u) -> tuple[set[str], Counter]:
    """(lam+mu)K_{v+u} - lam K_v on labels V0.., U0.."""
    lam, mu, v, u = (getattr(m_lam_mu_v_u, k) for k in ("lam", "mu", "v", "u"))
    Vs, Us = _vlabels(v), _ulabels(u)
    host = _clique(Vs, mu)
    for a, b in combinations(Us, 2):
        host[_pair(a, b)] += lam + mu
    for a in Vs:
        for b in Us:
            host[_pair(a, b)] += lam + mu
    return set(Vs) | set(Us), host


def _graph_host(g) -> tuple[set[str], Counter]:
    verts = {_lab(x) for x in g.vertices}
    c: Counter = Counter()
    for (a, b), k in g.edges():
        c[_pair(_lab(a), _lab(b))] += k
    return verts, c


# -- core checks -----------------------------------------------------------


def _cycle_pairs(cyc: Sequence[str]) -> list[tuple[str, str]]:
    n = len(cyc)
    return [_pair(cyc[i], cyc[(i + 1) % n]) for i in range(n)]


def _check_cycles(
    rep: VerifyReport, verts: set[str], host: Counter, cycles: Sequence[Sequence[str]], m: int | None
) -> Counter:
    used: Counter = Counter()
    for i, cyc in enumerate(cycles):
        if m is not None and len(cyc) != m:
            rep.add("wrong-length", f"cycle {i} has length {len(cyc)}, expected {m}")
        if len(cyc) < 2:
            rep.add("bad-cycle", f"cycle {i} has fewer than 2 vertices")
            continue
        if len(set(cyc)) != len(cyc):
            rep.add("bad-cycle", f"cycle {i} repeats a vertex: {list(cyc)}")
        missing = [x for x in cyc if x not in verts]
        if missing:
            rep.add("bad-cycle", f"cycle {i} uses vertices outside the host: {missing}")
        if len(cyc) == 2 and host[_pair(cyc[0], cyc[1])] < 2:
            rep.add("bad-cycle", f"cycle {i} is a 2-cycle on a pair of multiplicity < 2")
        used.update(_cycle_pairs(cyc))
    for pr, k in sorted(used.items()):
        if k > host[pr]:
            rep.add("multiplicity-overflow", f"pair {pr} used {k} times, available {host[pr]}")
    return used


def _residual(host: Counter, used: Counter) -> Counter:
    return Counter({pr: host[pr] - used[pr] for pr in host if host[pr] > used[pr]})


def _decomposition(verts: set[str], host: Counter, cycles, m: int) -> VerifyReport:
    rep = VerifyReport()
    cycles = [tuple(_lab(x) for x in c) for c in cycles]
    used = _check_cycles(rep, verts, host, cycles, m)
    res = _residual(host, used)
    if res:
        sample = sorted(res.items())[:5]
        rep.add("residual-nonzero", f"{sum(res.values())} host edges uncovered, e.g. {sample}")
    total = sum(host.values())
    if m and total % m == 0 and len(cycles) != total // m:
        rep.add("wrong-length", f"{len(cycles)} cycles, expected {total // m}")
    return rep


def verify_decomposition(g, cycles: Iterable[Sequence], m: int) -> VerifyReport:
    """Do the cycles partition the edge multiset of ``g`` into m-cycles?"""
    verts, host = _graph_host(g)
    return _decomposition(verts, host, list(cycles), m)


def verify_difference_decomposition(p, cycles: Iterable[Sequence]) -> VerifyReport:
    """As :func:`verify_decomposition`, with the host rebuilt from parameters."""
    verts, host = difference_host(p)
    return _decomposition(verts, host, list(cycles), p.m)


def verify_system(cycles: Iterable[Sequence], m: int, lam: int, v: int) -> VerifyReport:
    """Is ``cycles`` an m-cycle system of lam K_v on V0..V(v-1)?"""
    Vs = _vlabels(v)
    return _decomposition(set(Vs), _clique(Vs, lam), list(cycles), m)


# -- leave shapes ----------------------------------------------------------


def _is_single_cycle(leave: Counter, length: int) -> bool:
    if sum(leave.values()) != length:
        return False
    if length == 2:
        return len(leave) == 1 and next(iter(leave.values())) == 2
    if any(k != 1 for k in leave.values()):
        return False
    deg: Counter = Counter()
    adj: dict[str, list[str]] = {}
    for a, b in leave:
        deg[a] += 1
        deg[b] += 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(d != 2 for d in deg.values()):
        return False
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def _paths(leave: Counter, x: str, y: str, k: int):
    """All simple x-y paths with k edges in the leave multigraph, as pair
    counters."""
    adj: dict[str, set[str]] = {}
    for a, b in leave:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    out = []

    def walk(c: str, seq: list[str]) -> None:
        if len(seq) - 1 == k:
            if c == y:
                out.append(Counter(_pair(seq[i], seq[i + 1]) for i in range(k)))
            return
        for w in sorted(adj.get(c, ())):
            if w in seq or (w == y and len(seq) < k):
                continue
            walk(w, seq + [w])

    if x in adj:
        walk(x, [x])
    return out


def two_path_split_exists(leave: Counter, p: int, q: int, part: str) -> bool:
    """Does the leave split into a p-path and a q-path sharing both end
    vertices, which lie in ``part``?  Brute force over end pairs and paths."""
    if sum(leave.values()) != p + q:
        return False
    verts = sorted({x for pr in leave for x in pr})
    ends = [x for x in verts if _part(x) == part]
    for x, y in combinations(ends, 2):
        for P in _paths(leave, x, y, p):
            rest = leave - P
            if sum(rest.values()) != q:
                continue
            if any(rest == Q for Q in _paths(rest, x, y, q)):
                return True
    return False


def verify_packing(pk, m: int, leave_spec) -> VerifyReport:
    """Multiset accounting for a packing plus a check of its leave's shape."""
    verts, host = _graph_host(pk.host)
    rep = VerifyReport()
    cycles = [tuple(_lab(x) for x in c) for c in pk.cycles]
    used = _check_cycles(rep, verts, host, cycles, m)
    leave = _residual(host, used)
    total = sum(leave.values())
    if total % m != sum(host.values()) % m:
        rep.add("residual-nonzero", f"leave size {total} is not congruent to |E| mod {m}")
    kind = getattr(leave_spec, "kind", leave_spec)
    if kind == "empty":
        if total:
            rep.add("residual-nonzero", f"{total} host edges uncovered")
    elif kind == "single_cycle":
        if not _is_single_cycle(leave, leave_spec.length):
            rep.add("leave-shape-mismatch", f"leave is not a single {leave_spec.length}-cycle")
    elif kind == "two_paths":
        part = getattr(leave_spec.part, "name", leave_spec.part)
        if not two_path_split_exists(leave, leave_spec.p, leave_spec.q, str(part)):
            rep.add(
                "leave-shape-mismatch",
                f"leave does not split into a {leave_spec.p}-path and a {leave_spec.q}-path with ends in {part}",
            )
    else:
        rep.add("leave-shape-mismatch", f"unknown leave spec {kind!r}")
    return rep


# -- enclosing ---------------------------------------------------------------


def _canon(cyc: Sequence[str]) -> tuple[str, ...]:
    n = len(cyc)
    forms = []
    for seq in (list(cyc), list(reversed(cyc))):
        for i in range(n):
            forms.append(tuple(seq[i:] + seq[:i]))
    return min(forms)


def verify_enclosing(inner, outer, p, allow_embedding: bool = False) -> VerifyReport:
    """Is ``inner`` an m-cycle system of lam K_v contained, cycle for cycle, in
    the m-cycle system ``outer`` of (lam+mu) K_{v+u}?

    Enclosing asks for u, mu >= 1; ``allow_embedding`` admits mu = 0.
    """
    m, lam, mu, v, u = (getattr(p, k) for k in ("m", "lam", "mu", "v", "u"))
    rep = VerifyReport()
    if u < 1:
        rep.add("containment-violation", f"u={u}: enclosing needs at least one new vertex")
    if mu < 1 and not (allow_embedding and mu == 0):
        rep.add("containment-violation", f"mu={mu}: enclosing needs mu >= 1")
    if not rep.ok:
        return rep
    inner = [tuple(_lab(x) for x in c) for c in inner]
    outer = [tuple(_lab(x) for x in c) for c in outer]
    rep.extend(verify_system(inner, m, lam, v), "inner: ")
    Vs, Us = _vlabels(v), _ulabels(u)
    rep.extend(_decomposition(set(Vs) | set(Us), _clique(Vs + Us, lam + mu), outer, m), "outer: ")
    missing = Counter(_canon(c) for c in inner) - Counter(_canon(c) for c in outer)
    if missing:
        rep.add("containment-violation", f"{sum(missing.values())} inner cycles absent from outer, e.g. {next(iter(missing))}")
    return rep
