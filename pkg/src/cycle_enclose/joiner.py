"""Joining a bipartite packing to a partner packing through their leaves.

The partner's leave is a p-path P* and a q-path Q* between a and a'.  The
bipartite leave is a p'-path and a q'-path between two vertices of part A.
After relabeling A so the bipartite paths meet P* and Q* only at the ends,
the paths either close up into a (p+p')-cycle and a (q+q')-cycle, or, after
peeling one edge off at a, become a (p+p')-path and a (q+q')-path whose ends
both lie in B.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .goodness import GoodnessError, GoodQuery, find_extensions
from .graphs import CyclePacking, Path, VertexId, path_edges
from .packing import trace_single_cycle

__all__ = [
    "GoodnessError",
    "JoinError",
    "LeaveShapeError",
    "JoinInput",
    "Relabeling",
    "build_relabeling",
    "split_cycle",
    "bipartite_leave_paths",
    "join_to_decomposition",
    "join_to_packing",
]


class JoinError(ValueError):
    pass


class LeaveShapeError(JoinError):
    pass


@dataclass(frozen=True)
class Relabeling:
    """A bijection on a finite vertex set; vertices outside it are fixed."""

    mapping: Mapping[Hashable, Hashable] = field(default_factory=dict)

    def __post_init__(self) -> None:
        m = dict(self.mapping)
        if set(m) != set(m.values()):
            raise JoinError("relabeling is not a bijection on its domain")
        object.__setattr__(self, "mapping", m)

    def __call__(self, x):
        return self.mapping.get(x, x)

    def seq(self, s: Sequence) -> tuple:
        return tuple(self(x) for x in s)

    def packing(self, pk: CyclePacking) -> CyclePacking:
        # relabel only the cycles: callers use this on hosts that are invariant
        # under the bijection, so the host is kept as-is
        cycles = tuple(self.seq(c) for c in pk.cycles)
        return CyclePacking(pk.host, cycles)

    def then(self, other: "Relabeling") -> "Relabeling":
        """Apply ``self`` first, then ``other``."""
        keys = set(self.mapping) | set(other.mapping)
        return Relabeling({x: other(self(x)) for x in keys})


def build_relabeling(
    A: Sequence,
    leave_paths: tuple[Sequence, Sequence],
    avoid_P: Iterable,
    avoid_Q: Iterable,
    pins: Mapping | None = None,
) -> Relabeling:
    """Permutation of ``A`` sending the interior A-vertices of the first leave
    path outside ``avoid_P``, those of the second outside ``avoid_Q``, and each
    pinned vertex to its pinned image.

    The remaining vertices stay fixed where possible.  ``A`` gives the order
    used for every tie-break.
    """
    pins = dict(pins or {})
    order = list(A)
    Aset = set(order)
    if not set(pins) <= Aset or not set(pins.values()) <= Aset:
        raise JoinError("pinned vertices must lie in A")
    if len(set(pins.values())) != len(pins):
        raise JoinError("pins must be injective")
    P, Q = leave_paths
    p_int = [x for x in P[1:-1] if x in Aset and x not in pins]
    q_int = [x for x in Q[1:-1] if x in Aset and x not in pins]
    if len(set(p_int)) != len(p_int) or len(set(q_int)) != len(q_int) or set(p_int) & set(q_int):
        raise LeaveShapeError("leave paths share interior vertices in A")
    S = (set(avoid_P) & Aset) | set(pins.values())
    T = (set(avoid_Q) & Aset) | set(pins.values())
    S_, T_ = find_extensions(GoodQuery(Aset, S, T, len(p_int), len(q_int)), order)
    rank = {x: i for i, x in enumerate(order)}
    mapping = dict(pins)
    mapping.update(zip(p_int, sorted(S_, key=rank.__getitem__)))
    mapping.update(zip(q_int, sorted(T_, key=rank.__getitem__)))
    _complete(mapping, order)
    return Relabeling(mapping)


def _complete(mapping: dict, order: Sequence) -> None:
    used = set(mapping.values())
    rest = [x for x in order if x not in mapping]
    free = [x for x in order if x not in used]
    free_set = set(free)
    for x in rest:
        if x in free_set:
            mapping[x] = x
            free_set.discard(x)
    leftover = [x for x in free if x in free_set]
    for x in (y for y in rest if y not in mapping):
        mapping[x] = leftover.pop(0)


def split_cycle(cycle: Sequence, first: int, legal=lambda x: True) -> tuple[Path, Path]:
    """Cut a closed walk into a ``first``-path and the remaining path.

    Starts at the least legal vertex and walks towards its smaller neighbour;
    other starts and the opposite direction are tried in that order when the
    far end would not be legal.
    """
    L = len(cycle)
    if not 0 < first < L:
        raise LeaveShapeError(f"cannot cut a {L}-cycle into a {first}-path and a {L - first}-path")
    starts = sorted(range(L), key=lambda i: cycle[i])
    for i in starts:
        if not legal(cycle[i]):
            continue
        fwd = tuple(cycle[(i + k) % L] for k in range(L + 1))
        bwd = tuple(cycle[(i - k) % L] for k in range(L + 1))
        dirs = (fwd, bwd) if fwd[1] <= bwd[1] else (bwd, fwd)
        for walk in dirs:
            if legal(walk[first]):
                return walk[: first + 1], walk[first:]
    raise LeaveShapeError("no legal pair of end vertices on the cycle")


@dataclass(frozen=True)
class JoinInput:
    partner: CyclePacking
    P_star: Path
    Q_star: Path
    bipartite: CyclePacking
    p_prime: int
    q_prime: int
    A: tuple
    B: tuple
    bip_paths: tuple[Path, Path] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        if set(self.A) & set(self.B):
            raise JoinError("A and B must be disjoint")
        ends = {self.P_star[0], self.P_star[-1]}
        if len(ends) != 2 or {self.Q_star[0], self.Q_star[-1]} != ends:
            raise LeaveShapeError("P* and Q* must share both end vertices")
        if not ends <= set(self.A):
            raise LeaveShapeError("end vertices of P* and Q* must lie in A")
        if self.p_prime < 2 or self.q_prime < 2 or self.p_prime % 2 or self.q_prime % 2:
            raise JoinError("p' and q' must be even and at least 2")

    @property
    def a(self) -> VertexId:
        return self.P_star[0]

    @property
    def a_prime(self) -> VertexId:
        return self.P_star[-1]

    def oriented_partner_paths(self) -> tuple[Path, Path]:
        """P* as a -> a' and Q* as a' -> a."""
        Q = self.Q_star if self.Q_star[0] == self.a_prime else tuple(reversed(self.Q_star))
        return tuple(self.P_star), Q


def bipartite_leave_paths(inp: JoinInput) -> tuple[Path, Path]:
    """The bipartite leave as a p'-path P2 (alpha -> alpha') and a q'-path
    Q2 (alpha' -> alpha), with alpha, alpha' in A."""
    leave = inp.bipartite.leave
    if inp.bip_paths is not None:
        P2, Q2 = (tuple(x) for x in inp.bip_paths)
        if len(P2) - 1 != inp.p_prime or len(Q2) - 1 != inp.q_prime:
            raise LeaveShapeError("bipartite leave paths have the wrong lengths")
        if _path_counter(P2, Q2) != leave.as_counter():
            raise LeaveShapeError("bipartite leave paths do not cover the leave exactly")
        if {P2[0], P2[-1]} != {Q2[0], Q2[-1]}:
            raise LeaveShapeError("bipartite leave paths must share both end vertices")
        if Q2[0] != P2[-1]:
            Q2 = tuple(reversed(Q2))
    else:
        cyc = trace_single_cycle(leave)
        if len(cyc) != inp.p_prime + inp.q_prime:
            raise LeaveShapeError(f"bipartite leave is not a {inp.p_prime + inp.q_prime}-cycle")
        Aset = set(inp.A)
        P2, Q2 = split_cycle(cyc, inp.p_prime, legal=Aset.__contains__)
    if P2[0] not in inp.A or P2[-1] not in inp.A:
        raise LeaveShapeError("bipartite leave paths must end in A")
    return P2, Q2


def _path_counter(*paths) -> Counter:
    c: Counter = Counter()
    for p in paths:
        c.update(path_edges(p))
    return c


def _relabel_bipartite(inp: JoinInput, P2: Path, Q2: Path, P: Path, Q: Path) -> Relabeling:
    return build_relabeling(
        inp.A,
        (P2, Q2),
        avoid_P=P,
        avoid_Q=Q,
        pins={P2[0]: inp.a, P2[-1]: inp.a_prime},
    )


def join_to_decomposition(inp: JoinInput) -> CyclePacking:
    """Close the leaves of both packings into a (p+p')-cycle and a (q+q')-cycle."""
    P, Q = inp.oriented_partner_paths()
    P2, Q2 = bipartite_leave_paths(inp)
    rho = _relabel_bipartite(inp, P2, Q2, P, Q)
    P2r, Q2r = rho.seq(P2), rho.seq(Q2)  # a -> a' and a' -> a
    bip = rho.packing(inp.bipartite)
    fused_P = P + tuple(reversed(P2r))[1:-1]
    fused_Q = Q + tuple(reversed(Q2r))[1:-1]
    _assert_simple(fused_P, "fused P-cycle")
    _assert_simple(fused_Q, "fused Q-cycle")
    cycles = inp.partner.cycles + bip.cycles + (fused_P, fused_Q)
    return CyclePacking(inp.partner.host + inp.bipartite.host, cycles)


def join_to_packing(inp: JoinInput, b: VertexId | None = None, b_prime: VertexId | None = None):
    """Fuse the leaves into a (p+p')-path and a (q+q')-path, both from b to b'.

    Returns ``(packing, P_out, Q_out)``; ``P_out`` runs b -> b' and ``Q_out``
    runs b' -> b.  With b, b' omitted the two least vertices of B are used.
    """
    if b is None and b_prime is None:
        b, b_prime = inp.B[0], inp.B[1]
    if b is None or b_prime is None or b == b_prime:
        raise JoinError("b and b' must be distinct vertices of B")
    if b not in inp.B or b_prime not in inp.B:
        raise JoinError("b and b' must lie in B")
    P, Q = inp.oriented_partner_paths()
    P2, Q2 = bipartite_leave_paths(inp)
    beta1, beta2 = P2[1], Q2[-2]
    if beta1 == beta2:
        raise LeaveShapeError("the two leave edges at alpha share their B end")
    rho = _relabel_bipartite(inp, P2, Q2, P, Q)
    # B is not touched by rho; a B-permutation moves beta2 -> b and beta1 -> b'
    sigma_map = {beta2: b, beta1: b_prime}
    _complete(sigma_map, list(inp.B))
    rho = rho.then(Relabeling(sigma_map))
    P2r, Q2r = rho.seq(P2), rho.seq(Q2)
    bip = rho.packing(inp.bipartite)
    a, a_prime = inp.a, inp.a_prime
    assert P2r[0] == a and P2r[1] == b_prime and Q2r[-1] == a and Q2r[-2] == b
    # P_out: b - a - P* - a' - (P2 reversed, without [alpha, beta1]) - b'
    P_out = (b,) + P + tuple(reversed(P2r))[1:-1]
    # Q_out: b' - a - Q*^{-1} - a' - (Q2 without [beta2, alpha]) - b
    Q_out = (b_prime,) + tuple(reversed(Q)) + Q2r[1:-1]
    _assert_simple(P_out, "P_out", closed=False)
    _assert_simple(Q_out, "Q_out", closed=False)
    assert P_out[0] == b and P_out[-1] == b_prime and Q_out[0] == b_prime and Q_out[-1] == b
    cycles = inp.partner.cycles + bip.cycles
    return CyclePacking(inp.partner.host + inp.bipartite.host, cycles), P_out, Q_out


def _assert_simple(seq: Sequence, what: str, closed: bool = True) -> None:
    if len(set(seq)) != len(seq):
        raise LeaveShapeError(f"{what} repeats a vertex: {seq}")
    if closed and len(seq) < 2:
        raise LeaveShapeError(f"{what} is too short")
