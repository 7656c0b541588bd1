from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycle_enclose.goodness import GoodnessError, GoodQuery, check_extensions, find_extensions, is_good


def _brute(q: GoodQuery) -> list[tuple[frozenset, frozenset]]:
    A = sorted(q.A)
    out = []
    for S_ in combinations([x for x in A if x not in q.S], q.s_req):
        rest = [x for x in A if x not in q.T and x not in S_]
        for T_ in combinations(rest, q.t_req):
            out.append((frozenset(S_), frozenset(T_)))
    return out


def test_oracle_examples(oracle):
    g = oracle["goodness"]
    q = GoodQuery({1, 2, 3, 4, 5}, {1, 2}, {3}, 1, 1)
    assert is_good(q) is g["A5_S12_T3_1_1"]
    S_, T_ = find_extensions(q)
    assert check_extensions(q, S_, T_) == []
    assert is_good(GoodQuery({1, 2, 3}, {1, 2, 3}, set(), 1, 0)) is g["A3_S123_1_0"]
    q = GoodQuery({0, 1}, {0}, {1}, 1, 1)
    sols = [[sorted(a), sorted(b)] for a, b in _brute(q)]
    assert sols == g["A2_S1_T2_1_1_solutions"]


def test_not_good_raises():
    with pytest.raises(GoodnessError):
        find_extensions(GoodQuery({1, 2, 3}, {1, 2, 3}, set(), 1, 0))


def test_custom_order_is_used():
    q = GoodQuery(range(6), set(), set(), 2, 1)
    S_, T_ = find_extensions(q, order=[5, 4, 3, 2, 1, 0])
    assert S_ == {5, 4} and T_ == {3}
    with pytest.raises(ValueError):
        find_extensions(q, order=[0, 1])


def test_bad_query_shape():
    with pytest.raises(ValueError):
        GoodQuery({1}, {2}, set(), 0, 0)
    with pytest.raises(ValueError):
        GoodQuery({1}, set(), set(), -1, 0)


def test_check_extensions_names_violations():
    q = GoodQuery({1, 2, 3}, {1}, {2}, 1, 1)
    assert set(check_extensions(q, {1}, {1})) == {"S&S'", "S'&T'"}


@st.composite
def queries(draw):
    n = draw(st.integers(0, 7))
    A = set(range(n))
    S = draw(st.sets(st.sampled_from(range(n)))) if n else set()
    T = draw(st.sets(st.sampled_from(range(n)))) if n else set()
    return GoodQuery(A, S, T, draw(st.integers(0, 4)), draw(st.integers(0, 4)))


@settings(max_examples=400, deadline=None)
@given(queries())
def test_is_good_matches_brute_force(q):
    sols = _brute(q)
    assert is_good(q) == bool(sols)
    if sols:
        S_, T_ = find_extensions(q)
        assert check_extensions(q, S_, T_) == []


def test_greedy_examples():
    assert find_extensions(GoodQuery({1, 2, 3, 4, 5}, {1, 2}, {3}, 1, 1)) == ({4}, {5})
    assert find_extensions(GoodQuery({1, 2}, {1}, {2}, 1, 1)) == ({2}, {1})
    assert find_extensions(GoodQuery({1, 2}, {1}, {2}, 0, 0)) == (frozenset(), frozenset())
