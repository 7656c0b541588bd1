"""(s', t')-good triples: disjoint extensions S', T' of a ground set A that avoid
S and T respectively."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Hashable, Sequence


class GoodnessError(ValueError):
    """No valid (S', T') exists for the query."""


@dataclass(frozen=True)
class GoodQuery:
    A: frozenset
    S: frozenset
    T: frozenset
    s_req: int
    t_req: int

    def __init__(self, A: AbstractSet, S: AbstractSet, T: AbstractSet, s_req: int, t_req: int):
        object.__setattr__(self, "A", frozenset(A))
        object.__setattr__(self, "S", frozenset(S))
        object.__setattr__(self, "T", frozenset(T))
        object.__setattr__(self, "s_req", s_req)
        object.__setattr__(self, "t_req", t_req)
        if not (self.S <= self.A and self.T <= self.A):
            raise ValueError("S and T must be subsets of A")
        if s_req < 0 or t_req < 0:
            raise ValueError("required sizes must be non-negative")


def is_good(q: GoodQuery) -> bool:
    n = len(q.A)
    return (
        len(q.S & q.T) + q.s_req + q.t_req <= n
        and len(q.S) + q.s_req <= n
        and len(q.T) + q.t_req <= n
    )


def find_extensions(q: GoodQuery, order: Sequence[Hashable] | None = None) -> tuple[frozenset, frozenset]:
    """Greedy witness for a good query.

    ``order`` is the total order on A used for tie-breaking (ascending sort by
    default).  S' is filled from A - (S u T) first, holding back as many free
    elements as T' cannot get from S - T, then from T - S.  T' takes the
    leftover free elements first, then S - T.
    """
    if not is_good(q):
        raise GoodnessError(
            f"(|A|={len(q.A)}, |S|={len(q.S)}, |T|={len(q.T)}, |S&T|={len(q.S & q.T)}) "
            f"is not ({q.s_req},{q.t_req})-good"
        )
    elems = list(order) if order is not None else sorted(q.A)
    if set(elems) != q.A or len(elems) != len(q.A):
        raise ValueError("order must enumerate A exactly once")

    free = [x for x in elems if x not in q.S and x not in q.T]
    only_t = [x for x in elems if x in q.T and x not in q.S]
    only_s = [x for x in elems if x in q.S and x not in q.T]

    # T' may only use free or S-only elements
    t_needs_free = max(0, q.t_req - len(only_s))
    s_from_free = min(q.s_req, len(free) - t_needs_free)
    s_from_only_t = q.s_req - s_from_free

    s_prime = free[:s_from_free] + only_t[:s_from_only_t]
    t_prime = (free[s_from_free:] + only_s)[:q.t_req]
    S_, T_ = frozenset(s_prime), frozenset(t_prime)
    # the inequalities guarantee these; a failure here is a bug, not bad input
    assert len(S_) == q.s_req and len(T_) == q.t_req, (q, S_, T_)
    assert not (S_ & q.S) and not (T_ & q.T) and not (S_ & T_)
    return S_, T_


def check_extensions(q: GoodQuery, s_prime: AbstractSet, t_prime: AbstractSet) -> list[str]:
    """Names of the set conditions violated by a proposed (S', T')."""
    bad = []
    if len(s_prime) != q.s_req:
        bad.append("|S'|")
    if len(t_prime) != q.t_req:
        bad.append("|T'|")
    if set(s_prime) & q.S:
        bad.append("S&S'")
    if set(t_prime) & q.T:
        bad.append("T&T'")
    if set(s_prime) & set(t_prime):
        bad.append("S'&T'")
    if not (set(s_prime) <= q.A and set(t_prime) <= q.A):
        bad.append("subset")
    return bad
