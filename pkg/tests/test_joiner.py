from __future__ import annotations

from collections import Counter

import pytest

from cycle_enclose.goodness import GoodnessError
from cycle_enclose.graphs import CyclePacking, Multigraph, Part, U, V, path_edges
from cycle_enclose.joiner import (
    JoinError,
    JoinInput,
    LeaveShapeError,
    Relabeling,
    bipartite_leave_paths,
    build_relabeling,
    join_to_decomposition,
    join_to_packing,
    split_cycle,
)
from cycle_enclose.packing import SearchBudget, pack_bipartite_two_path_leave
from cycle_enclose.verifier import verify_decomposition

A = tuple(V(i) for i in range(8))
B = tuple(U(j) for j in range(8))


def _partner(P, Q) -> CyclePacking:
    edges = Counter(path_edges(P) + path_edges(Q))
    verts = {x for x in P + Q}
    return CyclePacking(Multigraph(verts, edges), ())


@pytest.fixture(scope="module")
def bipartite():
    # 2K_{8,8} has 128 edges = 20 hexagons + 8; leave a 4-path and a 4-path
    pk, P2, Q2 = pack_bipartite_two_path_leave(8, 8, 2, 6, 4, 4, Part.V, SearchBudget(seed=2))
    return pk, P2, Q2


def _inp(bipartite, bip_paths=True) -> JoinInput:
    pk, P2, Q2 = bipartite
    P_star = (V(0), V(1), V(2))
    Q_star = (V(0), V(3), V(2))
    return JoinInput(_partner(P_star, Q_star), P_star, Q_star, pk, 4, 4, A, B, (P2, Q2) if bip_paths else None)


def test_join_to_decomposition_closes_both_leaves(bipartite):
    inp = _inp(bipartite)
    out = join_to_decomposition(inp)
    assert out.leave.num_edges == 0
    assert verify_decomposition(out.host, out.cycles, 6).ok


def test_join_without_explicit_paths_traces_leave(bipartite):
    # the packer leaves a single 8-cycle, so the split is recovered from it
    out = join_to_decomposition(_inp(bipartite, bip_paths=False))
    assert verify_decomposition(out.host, out.cycles, 6).ok


def test_join_to_packing_paths(bipartite):
    inp = _inp(bipartite)
    pk, P_out, Q_out = join_to_packing(inp, U(5), U(2))
    assert len(P_out) - 1 == 6 and len(Q_out) - 1 == 6
    assert (P_out[0], P_out[-1], Q_out[0], Q_out[-1]) == (U(5), U(2), U(2), U(5))
    assert pk.leave.as_counter() == Counter(path_edges(P_out) + path_edges(Q_out))
    assert all(len(c) == 6 for c in pk.cycles)


def test_join_to_packing_default_ends(bipartite):
    _, P_out, Q_out = join_to_packing(_inp(bipartite))
    assert {P_out[0], P_out[-1]} == {U(0), U(1)}


def test_join_to_packing_rejects_equal_ends(bipartite):
    with pytest.raises(JoinError):
        join_to_packing(_inp(bipartite), U(1), U(1))
    with pytest.raises(JoinError):
        join_to_packing(_inp(bipartite), V(1), U(1))


def test_join_input_gates(bipartite):
    pk, P2, Q2 = bipartite
    with pytest.raises(LeaveShapeError):
        JoinInput(_partner((V(0), V(1)), (V(1), V(2))), (V(0), V(1)), (V(1), V(2)), pk, 4, 4, A, B)
    with pytest.raises(JoinError):
        JoinInput(_partner((V(0), V(1)), (V(0), V(3), V(1))), (V(0), V(1)), (V(0), V(3), V(1)), pk, 3, 5, A, B)
    bad = JoinInput(
        _partner((V(0), V(1)), (V(0), V(3), V(1))), (V(0), V(1)), (V(0), V(3), V(1)), pk, 2, 6, A, B, (P2, Q2)
    )
    with pytest.raises(LeaveShapeError):
        bipartite_leave_paths(bad)


def test_goodness_violation_is_reported(bipartite):
    pk, P2, Q2 = bipartite
    # every A vertex is on P*, so the 4-path interiors have nowhere to go
    P_star = (V(0), V(1), V(2), V(3), V(4), V(5), V(6), V(7))
    Q_star = (V(0), V(7))
    partner = CyclePacking(Multigraph(A, Counter(path_edges(P_star) + path_edges(Q_star))), ())
    inp = JoinInput(partner, P_star, Q_star, pk, 4, 4, A, B, (P2, Q2))
    with pytest.raises(GoodnessError):
        join_to_decomposition(inp)


def test_build_relabeling_example():
    rho = build_relabeling(range(1, 9), ((9, 1, 10), (10, 2, 9)), {3}, {4}, {5: 5})
    assert rho(5) == 5
    assert rho(1) not in {3, 5} and rho(2) not in {4, 5} and rho(1) != rho(2)
    assert sorted(rho.mapping) == sorted(rho.mapping.values()) == list(range(1, 9))


def test_build_relabeling_pins_only_is_identity_elsewhere():
    rho = build_relabeling(range(6), ((), ()), (), (), {0: 3, 3: 0})
    assert rho.mapping == {0: 3, 3: 0, 1: 1, 2: 2, 4: 4, 5: 5}


def test_build_relabeling_infeasible():
    with pytest.raises(GoodnessError):
        build_relabeling([1, 2], ((9, 1, 2, 10), (10, 9)), {1, 2}, set())


def test_relabeling_bijection_and_composition():
    with pytest.raises(JoinError):
        Relabeling({1: 2, 2: 2})
    r = Relabeling({1: 2, 2: 1}).then(Relabeling({2: 3, 3: 2}))
    assert (r(1), r(2), r(3), r(7)) == (3, 1, 2, 7)


def test_split_cycle_tie_breaks():
    assert split_cycle((3, 1, 4, 2), 1) == ((1, 3), (3, 2, 4, 1))
    P, Q = split_cycle((3, 1, 4, 2), 2, legal=lambda x: x in (3, 4))
    assert {P[0], P[-1]} == {3, 4} and len(P) == 3 and len(Q) == 3
    with pytest.raises(LeaveShapeError):
        split_cycle((1, 2, 3), 3)
    with pytest.raises(LeaveShapeError):
        split_cycle((1, 2, 3, 4), 1, legal=lambda x: x == 1)
