from __future__ import annotations

import pytest

from cycle_enclose.conditions import Params
from cycle_enclose.graphs import V
from cycle_enclose.orchestrator import (
    CaseTag,
    ConditionsNotMet,
    EllTriple,
    InvalidInputSystem,
    NoRowMatches,
    OrchestratorError,
    TableRow,
    UnsupportedParameters,
    compute_ell,
    decompose,
    decompose_with_meta,
    enclose,
    piece_sizes,
    plan_s_branch,
    select_case,
    table_row,
)
from cycle_enclose.packing import LeaveSpec, SearchBudget, pack_complete_multigraph
from cycle_enclose.verifier import verify_difference_decomposition, verify_enclosing


@pytest.mark.parametrize(
    "args,tag",
    [
        ((6, 1, 1, 9, 9), CaseTag.C1_EVEN_SUM),
        ((6, 2, 1, 9, 8), CaseTag.C1_LAMBDA_EVEN),
        ((6, 1, 2, 13, 12), CaseTag.C2_BOTH_ODD),
    ],
)
def test_select_case(args, tag):
    assert select_case(Params(*args)) is tag


@pytest.mark.parametrize("args", [(4, 1, 1, 9, 9), (7, 1, 1, 9, 9), (6, 1, 1, 7, 9), (6, 1, 1, 9, 7)])
def test_select_case_unsupported(args):
    with pytest.raises(UnsupportedParameters) as ei:
        select_case(Params(*args))
    assert ei.value.kind == "unsupported-parameters"


def test_select_case_conditions_not_met():
    with pytest.raises(ConditionsNotMet):
        select_case(Params(6, 1, 1, 8, 8))


def test_compute_ell_examples():
    p = Params(8, 1, 1, 13, 14)
    assert compute_ell(p, select_case(p)).as_tuple() == (6, 4, 6)
    p = Params(6, 1, 1, 9, 9)
    assert compute_ell(p, select_case(p)).as_tuple() == (0, 6, 0)


def test_ell_and_pieces_match_oracle(oracle):
    for row in oracle["grid"]:
        if not row["all_pass"]:
            continue
        p = Params(*row["params"])
        tag = select_case(p)
        assert tag.value == row["case_tag"]
        assert list(piece_sizes(p, tag)) == row["piece_edges"]
        assert list(compute_ell(p, tag).as_tuple()) == row["ell"]


def test_table_row_five():
    assert table_row((4, 4, 4), 12) == TableRow(5, 16, 1, 3, 10, 6, 1, 3, 11, 9)


def test_table_row_two():
    row = table_row(EllTriple(0, 8, 8, CaseTag.C1_EVEN_SUM), 8)
    assert (row.row, row.e, row.p2, row.q2, row.p3, row.q3, row.repaired) == (2, 8, 4, 4, 4, 4, False)


def test_table_row_two_repaired():
    row = table_row((0, 8, 4), 6)
    assert (row.row, row.p2, row.q2, row.p3, row.q3, row.repaired) == (2, 4, 4, 2, 2, True)
    assert row.p2 + row.p3 == 6 and row.q2 + row.q3 == 6


def test_table_rows_three_and_four_use_l1():
    row = table_row((4, 4, 0), 8)
    assert row.row == 3 and row.q1 == 2 and row.repaired
    row = table_row((10, 6, 0), 8)
    assert row.row == 4 and row.p1 + row.p2 == 8 and row.q1 + row.q2 == 8


@pytest.mark.parametrize("ell", [(0, 6, 0), (6, 4, 6), (2, 2, 2)])
def test_table_row_no_match(ell):
    with pytest.raises(NoRowMatches):
        table_row(ell, 8)


def test_plan_s_branch():
    assert plan_s_branch((6, 4, 6), 8) == (5, 2)
    assert plan_s_branch((4, 4, 4), 6) == (3, 2)
    with pytest.raises(OrchestratorError):
        plan_s_branch((8, 4, 4), 8)


def test_named_instances():
    for args, count in [((6, 1, 1, 9, 9), 45), ((8, 1, 1, 13, 14), 78), ((6, 1, 2, 13, 12), 137)]:
        p = Params(*args)
        dec = decompose_with_meta(p)
        assert len(dec.cycles) == count
        assert verify_difference_decomposition(p, dec.cycles).ok
    meta = decompose_with_meta(Params(8, 1, 1, 13, 14)).meta
    assert (meta["plan"], meta["s"], meta["s_prime"]) == ("s-branch", 5, 2)


def test_sum_three_m_uses_digon_leave():
    dec = decompose_with_meta(Params(8, 1, 2, 11, 12))
    assert dec.meta["ell"] == [6, 8, 10]
    assert "digon_leave" in dec.meta and dec.meta["plan"] != "direct"
    assert verify_difference_decomposition(Params(8, 1, 2, 11, 12), dec.cycles).ok


def test_decompose_is_seeded():
    p = Params(6, 2, 1, 9, 8)
    assert decompose(p, SearchBudget(seed=4)) == decompose(p, SearchBudget(seed=4))


@pytest.fixture(scope="module")
def k9_system():
    return list(pack_complete_multigraph(9, 1, 6, LeaveSpec.empty()).cycles)


def test_enclose_k9(k9_system):
    p = Params(6, 1, 1, 9, 9)
    out = enclose(k9_system, p)
    assert len(out) == 51
    assert out[:6] == k9_system
    assert verify_enclosing(k9_system, out, p).ok


def test_enclose_embedding_mu_zero():
    p = Params(6, 2, 0, 9, 9)
    inner = list(pack_complete_multigraph(9, 2, 6, LeaveSpec.empty()).cycles)
    out = enclose(inner, p)
    assert out[: len(inner)] == inner
    assert verify_enclosing(inner, out, p, allow_embedding=True).ok
    assert not verify_enclosing(inner, out, p).ok


def test_enclose_rejects_invalid_system(k9_system):
    with pytest.raises(InvalidInputSystem) as ei:
        enclose(k9_system[1:], Params(6, 1, 1, 9, 9))
    assert ei.value.kind == "invalid-input-system"
    bad = [tuple(V(8) if x == V(0) else x for x in k9_system[0])] + k9_system[1:]
    with pytest.raises(InvalidInputSystem):
        enclose(bad, Params(6, 1, 1, 9, 9))
