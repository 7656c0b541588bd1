"""m-cycle decompositions of (lam+mu)K_{v+u} - lam K_v for even m >= 6.

The graph is cut into three pieces G1 (on V, or V u U), G2 (bipartite between
V and U) and G3 (on U, or U plus an auxiliary vertex INF).  Each piece is
packed with m-cycles so that the three leaves have sizes l1, l2, l3; the
leaves are then cut into paths and glued across pieces into further m-cycles.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Sequence

from .conditions import Params, check_conditions
from .graphs import (
    INF,
    Cycle,
    CyclePacking,
    Multigraph,
    Part,
    U,
    V,
    VertexId,
    difference_graph,
    graph_subtract,
)
from .joiner import JoinInput, build_relabeling, join_to_decomposition, join_to_packing, split_cycle
from .packing import (
    LeaveSpec,
    SearchBudget,
    find_cycle_decomposition,
    leave_cycle,
    pack_bipartite,
    pack_bipartite_two_path_leave,
    pack_complete_multigraph,
)


class OrchestratorError(ValueError):
    kind = "orchestrator-error"


class UnsupportedParameters(OrchestratorError):
    kind = "unsupported-parameters"


class ConditionsNotMet(OrchestratorError):
    kind = "conditions-failed"


class NoRowMatches(OrchestratorError):
    kind = "no-row-matches"


class InvalidInputSystem(OrchestratorError):
    kind = "invalid-input-system"


class InternalInvariantError(RuntimeError):
    kind = "internal-invariant"


class ParityAnomaly(InternalInvariantError):
    kind = "parity-anomaly"


class CaseTag(str, Enum):
    C1_EVEN_SUM = "C1_even_sum"
    C1_LAMBDA_EVEN = "C1_lambda_even"
    C2_BOTH_ODD = "C2_both_odd"


@dataclass(frozen=True)
class EllTriple:
    l1: int
    l2: int
    l3: int
    case_tag: CaseTag

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class TableRow:
    row: int
    e: int
    p1: int | None = None
    q1: int | None = None
    p2: int | None = None
    q2: int | None = None
    p3: int | None = None
    q3: int | None = None
    p4: int | None = None
    q4: int | None = None
    repaired: bool = False


def select_case(p: Params) -> CaseTag:
    if p.m % 2:
        raise UnsupportedParameters(f"m={p.m} is odd")
    if p.m == 4:
        raise UnsupportedParameters("m=4 is covered by a separate construction and not handled here")
    if p.m < 4:
        raise UnsupportedParameters(f"m={p.m} is too small")
    if p.v < p.m + 2 or p.u < p.m + 2:
        raise UnsupportedParameters(f"v and u must be at least m+2={p.m + 2} (got v={p.v}, u={p.u})")
    rep = check_conditions(p)
    if not rep.all_pass:
        raise ConditionsNotMet(f"necessary conditions fail: {', '.join(rep.failed())}")
    if p.total % 2 == 0:
        return CaseTag.C1_EVEN_SUM
    if p.lam % 2 == 0:
        return CaseTag.C1_LAMBDA_EVEN
    return CaseTag.C2_BOTH_ODD


def piece_sizes(p: Params, tag: CaseTag) -> tuple[int, int, int]:
    """Edge counts of G1, G2, G3."""
    L = p.total
    if tag is CaseTag.C1_EVEN_SUM:
        return p.mu * comb(p.v, 2), L * p.v * p.u, L * comb(p.u, 2)
    if tag is CaseTag.C1_LAMBDA_EVEN:
        return p.mu * comb(p.v + p.u, 2), p.lam * p.v * p.u, p.lam * comb(p.u, 2)
    return p.mu * comb(p.v, 2), L * (p.v - 1) * p.u, L * comb(p.u + 1, 2)


def compute_ell(p: Params, tag: CaseTag) -> EllTriple:
    m = p.m
    out = []
    for i, size in enumerate(piece_sizes(p, tag)):
        r = size % m
        if r % 2:
            raise ParityAnomaly(f"|E(G{i + 1})| = {size} has odd residue {r} mod {m}")
        if r == 0:
            out.append(m if i == 1 else 0)
        elif r == 2:
            out.append(m + 2)
        else:
            out.append(r)
    if sum(out) % m:
        raise ParityAnomaly(f"residues {out} do not sum to a multiple of {m}")
    return EllTriple(out[0], out[1], out[2], tag)


def _r(m: int) -> int:
    return m // 2 if (m // 2) % 2 == 0 else m // 2 - 1


def _split_ok(pa: int, qa: int, pb: int, qb: int, m: int) -> bool:
    # pa, qa: bipartite side (even, >= 2); pb, qb: partner side (>= 1); fused lengths m
    return pa >= 2 and qa >= 2 and pa % 2 == 0 and qa % 2 == 0 and pb >= 1 and qb >= 1 and pa + pb == m and qa + qb == m


def _repair_split(l2: int, lx: int, m: int) -> tuple[int, int, int, int]:
    for pa in range(2, l2 - 1, 2):
        qa, pb = l2 - pa, m - pa
        qb = lx - pb
        if _split_ok(pa, qa, pb, qb, m):
            return pa, qa, pb, qb
    raise NoRowMatches(f"no repaired split for l2={l2}, l={lx}, m={m}")


def table_row(ell: EllTriple | Sequence[int], m: int) -> TableRow:
    """Path lengths for the join plan matching (l1, l2, l3).

    Two misprints are repaired: rows 3 and 4 take q1 from l1 (l3 is zero
    there), and rows 2 and 4 re-choose their split when m = 2 mod 4, where
    r-based lengths would fuse into (m-2)- and (m+2)-cycles.
    """
    l1, l2, l3 = ell.as_tuple() if isinstance(ell, EllTriple) else tuple(ell)
    total = l1 + l2 + l3
    r = _r(m)
    if l1 == 0 and l3 == 0:
        raise NoRowMatches("l1 = l3 = 0 needs no join")
    if l1 == 0:
        if l2 + l3 == m:
            return TableRow(1, m + l2, p2=m - 2, q2=l2 + 2, p3=2, q3=l3 - 2)
        if l2 + l3 == 2 * m:
            p2, q2, p3, q3 = r, l2 - r, r, l3 - r
            repaired = not _split_ok(p2, q2, p3, q3, m)
            if repaired:
                p2, q2, p3, q3 = _repair_split(l2, l3, m)
            return TableRow(2, l2, p2=p2, q2=q2, p3=p3, q3=q3, repaired=repaired)
    elif l3 == 0:
        if l1 + l2 == m:
            return TableRow(3, m + l2, p1=2, q1=l1 - 2, p2=m - 2, q2=l2 + 2, repaired=True)
        if l1 + l2 == 2 * m:
            p2, q2, p1, q1 = r, l2 - r, r, l1 - r
            if not _split_ok(p2, q2, p1, q1, m):
                p2, q2, p1, q1 = _repair_split(l2, l1, m)
            return TableRow(4, l2, p1=p1, q1=q1, p2=p2, q2=q2, repaired=True)
    else:
        if total == m:
            return TableRow(5, m + l2, 1, l1 - 1, m - 2, l2 + 2, 1, l3 - 1, m - 1, l2 + l3 + 1)
        if total == 2 * m and l2 + l3 < m + 2:
            return TableRow(6, l2, m - 3, 5, 2, l2 - 2, 1, l3 - 1, 3, l2 + l3 - 3)
    raise NoRowMatches(f"no table row for l=({l1},{l2},{l3}), m={m}")


def plan_s_branch(ell: EllTriple | Sequence[int], m: int) -> tuple[int, int]:
    """(s, s') with s + s' = m-1, l3 - s >= 1, l2 - s' >= 2 and s' even; the
    largest valid s' is taken."""
    l1, l2, l3 = ell.as_tuple() if isinstance(ell, EllTriple) else tuple(ell)
    if l1 == 0 or l1 + l2 + l3 != 2 * m or l2 + l3 < m + 2:
        raise OrchestratorError(f"s-branch needs l1 != 0, l1+l2+l3 = 2m and l2+l3 >= m+2 (got {l1},{l2},{l3})")
    top = min(l2 - 2, m - 2)
    for sp in range(top - top % 2, 1, -2):
        s = m - 1 - sp
        if s >= 1 and l3 - s >= 1:
            return s, sp
    raise OrchestratorError(f"no (s, s') for l=({l1},{l2},{l3}), m={m}")


# -- execution -------------------------------------------------------------


@dataclass
class Decomposition:
    cycles: list[Cycle]
    meta: dict = field(default_factory=dict)


@dataclass
class _Layout:
    G1: list[VertexId]
    lam1: int
    Vside: list[VertexId]
    Uside: list[VertexId]
    lam2: int
    G3: list[VertexId]
    lam3: int


def _layout(p: Params, tag: CaseTag) -> _Layout:
    Vs = [V(i) for i in range(p.v)]
    Us = [U(j) for j in range(p.u)]
    L = p.total
    if tag is CaseTag.C1_EVEN_SUM:
        return _Layout(Vs, p.mu, Vs, Us, L, Us, L)
    if tag is CaseTag.C1_LAMBDA_EVEN:
        # V first, so G1's leave lands inside V
        return _Layout(Vs + Us, p.mu, Vs, Us, p.lam, Us, p.lam)
    if p.u % 2:
        raise InternalInvariantError("u must be even when lam and lam+mu are odd")
    Vs = Vs[:-1]
    return _Layout(Vs + [INF], p.mu, Vs, Us, L, Us + [INF], L)


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.timeout
        self.timings: dict[str, float] = {}

    def sub(self, tag: int) -> SearchBudget:
        left = max(self.deadline - time.monotonic(), 1e-3)
        b = self.budget.derive(tag)
        return SearchBudget(b.seed, left, b.restart_limit)


def _pack_complete(verts, lam, m, ell, budget) -> CyclePacking:
    if lam == 0:
        if ell:
            raise InternalInvariantError("empty piece cannot carry a leave")
        return CyclePacking(Multigraph(verts), ())
    leave = LeaveSpec.single_cycle(ell) if ell else LeaveSpec.empty()
    return pack_complete_multigraph(len(verts), lam, m, leave, budget, vertices=verts)


def _not_inf(x: VertexId) -> bool:
    return x != INF


def _drop_cycle(pk: CyclePacking, length: int) -> tuple[CyclePacking, Cycle]:
    for i in range(len(pk.cycles) - 1, -1, -1):
        if len(pk.cycles[i]) == length:
            return CyclePacking(pk.host, pk.cycles[:i] + pk.cycles[i + 1:]), pk.cycles[i]
    raise InternalInvariantError(f"no {length}-cycle to turn into a leave")


def _fuse(path: Sequence, closing: Sequence, m: int, what: str) -> Cycle:
    """Join a path b..b' with a path b..b' (same ends) into one cycle."""
    if path[0] != closing[0] or path[-1] != closing[-1]:
        raise InternalInvariantError(f"{what}: end vertices do not match")
    cyc = tuple(path) + tuple(reversed(closing))[1:-1]
    if len(cyc) != m or len(set(cyc)) != len(cyc):
        raise InternalInvariantError(f"{what}: fused cycle {cyc} is not a simple {m}-cycle")
    return cyc


def _final_fuse(G1: CyclePacking, A1: list, p1: int, P_out: tuple, Q_out: tuple, m: int):
    """Relabel G1 so its leave splits into a p1-path joining P_out's ends and
    the rest joining Q_out's ends, both avoiding the other vertices of those
    paths; returns the cycles of G1 plus the two fused cycles."""
    L1 = leave_cycle(G1)
    P1, Q1 = split_cycle(L1, p1)
    b, b_prime = P_out[0], P_out[-1]
    if Q_out[0] != b_prime or Q_out[-1] != b:
        raise InternalInvariantError("P_out and Q_out do not share their end vertices")
    A1set = set(A1)
    rho = build_relabeling(
        A1, (P1, Q1), set(P_out) & A1set, set(Q_out) & A1set, pins={P1[0]: b, P1[-1]: b_prime}
    )
    P1r, Q1r = rho.seq(P1), rho.seq(Q1)
    c1 = _fuse(P_out, P1r, m, "final P")
    c2 = _fuse(Q_out, Q1r, m, "final Q")
    return [rho.seq(c) for c in G1.cycles] + [c1, c2]


def _run_plan(p: Params, tag: CaseTag, ell: tuple[int, int, int], clock: _Clock, meta: dict) -> list[Cycle]:
    m = p.m
    lay = _layout(p, tag)
    l1, l2, l3 = ell
    a, b = len(lay.Vside), len(lay.Uside)
    in_U = set(lay.Uside).__contains__
    in_Vside = set(lay.Vside).__contains__

    t0 = time.monotonic()
    G1 = _pack_complete(lay.G1, lay.lam1, m, l1, clock.sub(1))
    G3 = _pack_complete(lay.G3, lay.lam3, m, l3, clock.sub(3))
    clock.timings["pack_G1_G3"] = time.monotonic() - t0
    t0 = time.monotonic()

    if l1 == 0 and l3 == 0:
        meta["plan"] = "trivial"
        t2 = (lay.lam2 * a * b) // m
        G2 = pack_bipartite(a, b, lay.lam2, [m] * t2, clock.sub(2), parts=(lay.Vside, lay.Uside))
        clock.timings["pack_G2"] = time.monotonic() - t0
        return list(G1.cycles) + list(G2.cycles) + list(G3.cycles)

    if l1 != 0 and l3 != 0 and l1 + l2 + l3 == 2 * m and l2 + l3 >= m + 2:
        s, sp = plan_s_branch(ell, m)
        meta.update(plan="s-branch", s=s, s_prime=sp)
        t2 = (lay.lam2 * a * b - l2) // m
        full = pack_bipartite(a, b, lay.lam2, sorted([m] * t2 + [l2]), clock.sub(2), parts=(lay.Vside, lay.Uside))
        G2, C2 = _drop_cycle(full, l2)
        clock.timings["pack_G2"] = time.monotonic() - t0
        P2, Q2 = split_cycle(C2, sp, legal=in_U)
        P3, Q3 = split_cycle(leave_cycle(G3), s, legal=in_U)
        inp = JoinInput(G3, P3, Q3, G2, sp, l2 - sp, tuple(lay.Uside), tuple(lay.Vside), (P2, Q2))
        Gp, P_out, Q_out = join_to_packing(inp)
        return list(Gp.cycles) + _final_fuse(G1, lay.G1, 1, P_out, Q_out, m)

    row = table_row(ell, m)
    meta.update(plan=f"row{row.row}", repaired=row.repaired, row=_row_dict(row))
    R = Part.V if row.row in (3, 4) else Part.U
    G2, P2, Q2 = pack_bipartite_two_path_leave(
        a, b, lay.lam2, m, row.p2, row.q2, R, clock.sub(2), parts=(lay.Vside, lay.Uside)
    )
    clock.timings["pack_G2"] = time.monotonic() - t0

    if row.row in (1, 2):
        P3, Q3 = split_cycle(leave_cycle(G3), row.p3, legal=in_U)
        inp = JoinInput(G3, P3, Q3, G2, row.p2, row.q2, tuple(lay.Uside), tuple(lay.Vside), (P2, Q2))
        joined = join_to_decomposition(inp)
        out = list(G1.cycles) + list(joined.cycles)
    elif row.row in (3, 4):
        P1, Q1 = split_cycle(leave_cycle(G1), row.p1, legal=in_Vside)
        inp = JoinInput(G1, P1, Q1, G2, row.p2, row.q2, tuple(lay.Vside), tuple(lay.Uside), (P2, Q2))
        joined = join_to_decomposition(inp)
        out = list(joined.cycles) + list(G3.cycles)
    else:
        P3, Q3 = split_cycle(leave_cycle(G3), row.p3, legal=in_U)
        inp = JoinInput(G3, P3, Q3, G2, row.p2, row.q2, tuple(lay.Uside), tuple(lay.Vside), (P2, Q2))
        Gp, P_out, Q_out = join_to_packing(inp)
        if len(P_out) - 1 != row.p4 or len(Q_out) - 1 != row.q4:
            raise InternalInvariantError("joined path lengths differ from the table")
        out = list(Gp.cycles) + _final_fuse(G1, lay.G1, row.p1, P_out, Q_out, m)
    if any(len(c) != m for c in out):
        raise InternalInvariantError("a cycle of the wrong length was produced")
    return out


def _row_dict(row: TableRow) -> dict:
    return {k: getattr(row, k) for k in ("e", "p1", "q1", "p2", "q2", "p3", "q3", "p4", "q4")}


def _represent(p: Params, tag: CaseTag, ell: EllTriple) -> tuple[tuple[int, int, int], str | None]:
    """Leave sizes actually used.  When l1+l2+l3 = 3m no table row applies;
    a leave of size m+2 on a piece of multiplicity >= 2 is then carried as a
    digon instead (its other m edges become one more cycle)."""
    l1, l2, l3 = ell.as_tuple()
    if l1 + l2 + l3 != 3 * p.m:
        return (l1, l2, l3), None
    lay = _layout(p, tag)
    if l3 == p.m + 2 and lay.lam3 >= 2:
        return (l1, l2, 2), "G3"
    if l1 == p.m + 2 and lay.lam1 >= 2:
        return (2, l2, l3), "G1"
    return (l1, l2, l3), "none"


def _standard(c: Cycle, p: Params) -> Cycle:
    inf_to = V(p.v - 1)
    return tuple(inf_to if x == INF else x for x in c)


def decompose_with_meta(p: Params, budget: SearchBudget = SearchBudget()) -> Decomposition:
    """Decompose the difference graph of ``p``; vertices are V0..V(v-1) and
    U0..U(u-1) (the auxiliary vertex of the both-odd case is V(v-1))."""
    tag = select_case(p)
    ell = compute_ell(p, tag)
    clock = _Clock(budget)
    used, digon = _represent(p, tag, ell)
    meta: dict = {
        "case_tag": tag.value,
        "ell": list(ell.as_tuple()),
        "repaired": False,
    }
    if digon is not None:
        meta["digon_leave"] = digon
    if digon == "none":
        # no re-representation available: search the whole graph directly
        meta["plan"] = "direct"
        g = difference_graph(p)
        cycles = find_cycle_decomposition(g, [p.m] * (g.num_edges // p.m), clock.sub(9))
    else:
        if digon:
            meta["ell_used"] = list(used)
        cycles = [_standard(c, p) for c in _run_plan(p, tag, used, clock, meta)]
    rest = graph_subtract(difference_graph(p), cycles)
    if rest.num_edges or any(len(c) != p.m for c in cycles):
        raise InternalInvariantError("assembled cycles do not decompose the graph")
    meta["timings"] = dict(clock.timings)
    return Decomposition(cycles, meta)


def decompose(p: Params, budget: SearchBudget = SearchBudget()) -> list[Cycle]:
    return decompose_with_meta(p, budget).cycles


def enclose(system: Sequence[Sequence[VertexId]], p: Params, budget: SearchBudget = SearchBudget()) -> list[Cycle]:
    """Extend an m-cycle system of lam K_v on V0..V(v-1) to one of
    (lam+mu) K_{v+u}; the input cycles come first, unchanged."""
    from .verifier import verify_system

    rep = verify_system([tuple(c) for c in system], p.m, p.lam, p.v)
    if not rep.ok:
        raise InvalidInputSystem("input is not an m-cycle system of lam K_v: " + "; ".join(f"{k}: {d}" for k, d in rep.failures[:5]))
    return [tuple(c) for c in system] + decompose(p, budget)
