from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycle_enclose.conditions import Params, ParamsError, Verdict, check_conditions, edge_total


def _p(key: str) -> Params:
    return Params(*map(int, key.split(",")))


def test_fixtures_match_oracle(oracle):
    for key, want in oracle["condition_fixtures"].items():
        r = check_conditions(_p(key))
        assert (r.a, r.b, r.c) == (want["a"], want["b"], want["c"]), key
        assert r.d.value == want["d"] and r.e.value == want["e"], key
        assert r.edge_total == want["edges"], key
        assert r.all_pass == want["all_pass"], key
        if want["d_sides"]:
            assert [r.lhs_d, r.rhs_d] == want["d_sides"], key
        if want["e_sides"]:
            assert [r.lhs_e, r.rhs_e] == want["e_sides"], key


def test_named_examples():
    assert check_conditions(Params(6, 1, 1, 9, 9)).all_pass
    r = check_conditions(Params(6, 1, 1, 8, 8))
    assert not r.a and r.failed() == ["a", "c"]
    r = check_conditions(Params(6, 1, 1, 5, 3))
    assert r.d is Verdict.PASS and (r.lhs_d, r.rhs_d) == (12, 40)


def test_not_applicable_when_parts_are_large():
    r = check_conditions(Params(6, 1, 1, 9, 9))
    assert r.d is Verdict.NA and r.e is Verdict.NA


@pytest.mark.parametrize("args", [(1, 1, 1, 3, 3), (6, 0, 1, 3, 3), (6, 1, -1, 3, 3), (6, 1, 1, 0, 3), (6, 1, 1, 3, 0)])
def test_params_validation(args):
    with pytest.raises(ParamsError):
        Params(*args)


def test_report_dict_round_trip():
    d = check_conditions(Params(6, 1, 1, 9, 9)).to_dict()
    assert d["all_pass"] is True and d["d"] == "not-applicable"


def test_grid_matches_oracle(oracle):
    for row in oracle["grid"]:
        p = Params(*row["params"])
        assert edge_total(p) == row["edges"]
        assert check_conditions(p).all_pass == row["all_pass"], row["params"]


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 12).map(lambda k: 2 * k // 2 * 2), st.integers(1, 3), st.integers(0, 3), st.integers(1, 20), st.integers(1, 20))
def test_parity_conditions_are_degree_parities(m, lam, mu, v, u):
    p = Params(m, lam, mu, v, u)
    r = check_conditions(p)
    # degree of a V vertex is mu(v-1) + u(lam+mu); of a U vertex (lam+mu)(v+u-1)
    assert r.a == ((mu * (v - 1) + u * p.total) % 2 == 0)
    assert r.b == ((p.total * (v + u - 1)) % 2 == 0)
    assert r.c == (edge_total(p) % m == 0)
