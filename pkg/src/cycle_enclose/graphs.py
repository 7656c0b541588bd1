"""Exact multiset representation of loopless multigraphs, cycles, paths and
cycle packings.

Vertices are :class:`VertexId` values tagged with the part they belong to
(``V``, ``U`` or the auxiliary vertex ``INF``).  A :class:`Multigraph` stores
only nonzero multiplicities, keyed by the sorted vertex pair, so two graphs
compare equal whenever their vertex sets and edge multisets agree.

Cycles are plain tuples ``(c0, ..., c_{k-1})`` of distinct vertices; the
closing pair ``{c_{k-1}, c0}`` is implied.  Paths are tuples
``(a0, ..., ak)`` with ``k`` edges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class Part(IntEnum):
    V = 0
    U = 1
    INF = 2


class VertexId(NamedTuple):
    part: Part
    index: int = 0

    @property
    def label(self) -> str:
        if self.part is Part.INF:
            return "INF"
        return f"{self.part.name}{self.index}"

    def __repr__(self) -> str:
        return self.label

    @classmethod
    def parse(cls, label: str) -> "VertexId":
        if label == "INF":
            return INF
        if len(label) < 2 or label[0] not in "VU" or not label[1:].isdigit():
            raise ValueError(f"bad vertex label {label!r}")
        return cls(Part[label[0]], int(label[1:]))


INF = VertexId(Part.INF, 0)

Edge = tuple[VertexId, VertexId]
Cycle = tuple[VertexId, ...]
Path = tuple[VertexId, ...]


def V(i: int) -> VertexId:
    return VertexId(Part.V, i)


def U(j: int) -> VertexId:
    return VertexId(Part.U, j)


def edge_key(x: VertexId, y: VertexId) -> Edge:
    if x == y:
        raise ValueError(f"loop at {x!r}")
    return (x, y) if x < y else (y, x)


def cycle_edges(cycle: Sequence[VertexId]) -> list[Edge]:
    k = len(cycle)
    return [edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def path_edges(path: Sequence[VertexId]) -> list[Edge]:
    return [edge_key(path[i], path[i + 1]) for i in range(len(path) - 1)]


class GraphError(ValueError):
    pass


class MultiplicityUnderflow(GraphError):
    """Raised when removing edges the graph does not have."""

    def __init__(self, pair: Edge, available: int):
        super().__init__(f"pair {pair[0]!r}-{pair[1]!r} has multiplicity {available}, cannot remove more")
        self.pair = pair
        self.available = available


class Multigraph:
    """Immutable loopless multigraph."""

    __slots__ = ("_vertices", "_mult", "_hash")

    def __init__(self, vertices: Iterable[VertexId], mult: Mapping[Edge, int] | Iterable[tuple[Edge, int]] = ()):
        verts = frozenset(vertices)
        if sum(1 for x in verts if x.part is Part.INF) > 1:
            raise GraphError("at most one INF vertex")
        items = mult.items() if isinstance(mult, Mapping) else mult
        clean: dict[Edge, int] = {}
        for (x, y), k in items:
            if k < 0:
                raise GraphError(f"negative multiplicity on {x!r}-{y!r}")
            if k == 0:
                continue
            e = edge_key(x, y)
            if x not in verts or y not in verts:
                raise GraphError(f"edge {x!r}-{y!r} leaves the vertex set")
            clean[e] = clean.get(e, 0) + k
        self._vertices = verts
        self._mult = clean
        self._hash: int | None = None

    @property
    def vertices(self) -> frozenset[VertexId]:
        return self._vertices

    def sorted_vertices(self) -> list[VertexId]:
        return sorted(self._vertices)

    def mult(self, x: VertexId, y: VertexId) -> int:
        if x == y:
            return 0
        return self._mult.get(edge_key(x, y), 0)

    def edges(self) -> Iterator[tuple[Edge, int]]:
        """Nonzero (pair, multiplicity) items in sorted order."""
        for e in sorted(self._mult):
            yield e, self._mult[e]

    def as_counter(self) -> Counter:
        return Counter(self._mult)

    @property
    def num_edges(self) -> int:
        return sum(self._mult.values())

    def degree(self, x: VertexId) -> int:
        return sum(k for (a, b), k in self._mult.items() if a == x or b == x)

    def degrees(self) -> dict[VertexId, int]:
        deg = dict.fromkeys(self._vertices, 0)
        for (a, b), k in self._mult.items():
            deg[a] += k
            deg[b] += k
        return deg

    def is_simple(self) -> bool:
        return all(k == 1 for k in self._mult.values())

    def relabel(self, mapping: Mapping[VertexId, VertexId]) -> "Multigraph":
        f = lambda x: mapping.get(x, x)
        return Multigraph((f(x) for x in self._vertices), [((f(a), f(b)), k) for (a, b), k in self._mult.items()])

    def __add__(self, other: "Multigraph") -> "Multigraph":
        c = Counter(self._mult)
        c.update(other._mult)
        return Multigraph(self._vertices | other._vertices, c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._mult == other._mult

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, frozenset(self._mult.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Multigraph(|V|={len(self._vertices)}, |E|={self.num_edges})"


def _check_positive(**kw: int) -> None:
    for name, val in kw.items():
        if val < 1:
            raise GraphError(f"{name} must be >= 1, got {val}")


def complete_multigraph(n: int, lam: int, vertices: Sequence[VertexId] | None = None) -> Multigraph:
    """``lam`` copies of K_n, on ``V0..V(n-1)`` unless ``vertices`` is given."""
    _check_positive(n=n, lam=lam)
    verts = list(vertices) if vertices is not None else [V(i) for i in range(n)]
    if len(verts) != n:
        raise GraphError("vertex list length does not match n")
    return Multigraph(verts, {edge_key(verts[i], verts[j]): lam for i in range(n) for j in range(i + 1, n)})


def complete_bipartite_multigraph(
    a: int,
    b: int,
    lam: int,
    parts: tuple[Sequence[VertexId], Sequence[VertexId]] | None = None,
) -> Multigraph:
    """``lam`` copies of K_{a,b}; default parts are ``V0..`` and ``U0..``."""
    _check_positive(a=a, b=b, lam=lam)
    left, right = parts if parts is not None else ([V(i) for i in range(a)], [U(j) for j in range(b)])
    if len(left) != a or len(right) != b:
        raise GraphError("part sizes do not match")
    return Multigraph(list(left) + list(right), {edge_key(x, y): lam for x in left for y in right})


def difference_graph(params) -> Multigraph:
    """(lam+mu)K_{v+u} with the edges of a lam K_v on the V-part removed."""
    lam, mu, v, u = params.lam, params.mu, params.v, params.u
    _check_positive(lam=lam, v=v, u=u)
    if mu < 0:
        raise GraphError("mu must be >= 0")
    vs = [V(i) for i in range(v)]
    us = [U(j) for j in range(u)]
    mult: dict[Edge, int] = {}
    if mu:
        for i in range(v):
            for j in range(i + 1, v):
                mult[(vs[i], vs[j])] = mu
    for x in vs:
        for y in us:
            mult[(x, y)] = lam + mu
    for i in range(u):
        for j in range(i + 1, u):
            mult[(us[i], us[j])] = lam + mu
    return Multigraph(vs + us, mult)


def edge_multiset(cycles: Iterable[Sequence[VertexId]]) -> Counter:
    c: Counter = Counter()
    for cyc in cycles:
        c.update(cycle_edges(cyc))
    return c


def graph_subtract(g: Multigraph, cycles: Iterable[Sequence[VertexId]]) -> Multigraph:
    """Remove the edges of ``cycles`` from ``g``; raises on the first deficient pair."""
    remaining = g.as_counter()
    for cyc in cycles:
        for e in cycle_edges(cyc):
            have = remaining.get(e, 0)
            if have <= 0:
                raise MultiplicityUnderflow(e, have)
            remaining[e] = have - 1
    return Multigraph(g.vertices, remaining)


def subtract_edges(g: Multigraph, edges: Iterable[Edge]) -> Multigraph:
    remaining = g.as_counter()
    for x, y in edges:
        e = edge_key(x, y)
        have = remaining.get(e, 0)
        if have <= 0:
            raise MultiplicityUnderflow(e, have)
        remaining[e] = have - 1
    return Multigraph(g.vertices, remaining)


def is_even_graph(g: Multigraph) -> bool:
    return all(d % 2 == 0 for d in g.degrees().values())


def check_cycle(cycle: Sequence[VertexId], host: Multigraph | None = None) -> None:
    k = len(cycle)
    if k < 2:
        raise GraphError("a cycle needs at least 2 vertices")
    if len(set(cycle)) != k:
        raise GraphError(f"repeated vertex in cycle {cycle!r}")
    if host is not None:
        need = Counter(cycle_edges(cycle))
        for e, c in need.items():
            if host.mult(*e) < c:
                raise GraphError(f"cycle {cycle!r} uses {e[0]!r}-{e[1]!r} {c} times, host has {host.mult(*e)}")


def check_path(path: Sequence[VertexId]) -> None:
    if len(path) < 2:
        raise GraphError("a path needs at least one edge")
    if len(set(path)) != len(path):
        raise GraphError(f"repeated vertex in path {path!r}")


def relabel_seq(seq: Sequence[VertexId], mapping: Mapping[VertexId, VertexId]) -> tuple[VertexId, ...]:
    return tuple(mapping.get(x, x) for x in seq)


@dataclass(frozen=True)
class Chain:
    """Cycles A_1..A_r where consecutive cycles meet in exactly one link vertex
    and non-consecutive cycles are vertex-disjoint."""

    cycles: tuple[Cycle, ...]
    links: tuple[VertexId, ...] = field(init=False)

    def __post_init__(self) -> None:
        cycles = tuple(tuple(c) for c in self.cycles)
        for c in cycles:
            check_cycle(c)
        links = []
        for i in range(len(cycles)):
            for j in range(i + 1, len(cycles)):
                common = set(cycles[i]) & set(cycles[j])
                if j == i + 1:
                    if len(common) != 1:
                        raise GraphError(f"cycles {i} and {j} share {len(common)} vertices, need exactly 1")
                    links.append(next(iter(common)))
                elif common:
                    raise GraphError(f"non-consecutive cycles {i} and {j} intersect")
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "links", tuple(links))

    def edge_multiset(self) -> Counter:
        return edge_multiset(self.cycles)


@dataclass(frozen=True)
class CyclePacking:
    """Edge-disjoint cycles inside ``host``; ``leave`` is what they do not cover."""

    host: Multigraph
    cycles: tuple[Cycle, ...]

    def __post_init__(self) -> None:
        cycles = tuple(tuple(c) for c in self.cycles)
        for c in cycles:
            check_cycle(c)
        object.__setattr__(self, "cycles", cycles)
        # raises MultiplicityUnderflow when the cycles do not fit
        object.__setattr__(self, "_leave", graph_subtract(self.host, cycles))

    @property
    def leave(self) -> Multigraph:
        return self._leave  # type: ignore[attr-defined]

    def relabel(self, mapping: Mapping[VertexId, VertexId]) -> "CyclePacking":
        return CyclePacking(self.host.relabel(mapping), tuple(relabel_seq(c, mapping) for c in self.cycles))

    def lengths(self) -> Counter:
        return Counter(len(c) for c in self.cycles)
