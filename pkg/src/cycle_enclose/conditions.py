"""Necessary conditions for an m-cycle decomposition of (lam+mu)K_{v+u} - lam K_v."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from math import comb


class ParamsError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Params:
    m: int
    lam: int
    mu: int
    v: int
    u: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ParamsError(f"m must be >= 2, got {self.m}")
        if self.lam < 1:
            raise ParamsError(f"lambda must be >= 1, got {self.lam}")
        if self.mu < 0:
            raise ParamsError(f"mu must be >= 0, got {self.mu}")
        if self.v < 1 or self.u < 1:
            raise ParamsError("v and u must be >= 1")

    @property
    def total(self) -> int:
        return self.lam + self.mu

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.m, self.lam, self.mu, self.v, self.u)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "not-applicable"


@dataclass(frozen=True)
class ConditionReport:
    a: bool
    b: bool
    c: bool
    d: Verdict
    e: Verdict
    eps1: int
    eps2: int
    lhs_d: int
    rhs_d: int
    lhs_e: int
    rhs_e: int
    edge_total: int

    @property
    def all_pass(self) -> bool:
        return self.a and self.b and self.c and self.d is not Verdict.FAIL and self.e is not Verdict.FAIL

    def failed(self) -> list[str]:
        out = [k for k in "abc" if not getattr(self, k)]
        out += [k for k in "de" if getattr(self, k) is Verdict.FAIL]
        return out

    def to_dict(self) -> dict:
        d = asdict(self)
        d["d"] = self.d.value
        d["e"] = self.e.value
        d["all_pass"] = self.all_pass
        return d


def edge_total(p: Params) -> int:
    return p.total * comb(p.u, 2) + p.v * p.u * p.total + p.mu * comb(p.v, 2)


def check_conditions(p: Params) -> ConditionReport:
    L = p.total
    a = (p.u * L + p.mu * (p.v - 1)) % 2 == 0
    b = (p.v * L + L * (p.u - 1)) % 2 == 0
    total = edge_total(p)
    c = total % p.m == 0
    eps1 = (p.u * L) % 2
    eps2 = (p.mu * p.v) % 2

    # edges outside the U-clique; the (d) bound counts how many the U-clique edges force
    rhs_d = p.mu * comb(p.v, 2) + p.v * p.u * L
    if p.u < p.m:
        # u=1 has no internal edges; the floor term is then 0
        base = (L * comb(p.u, 2)) // (p.u - 1) if p.u > 1 else 0
        # eps1 * (m - (u-1)/2): eps1 = 1 forces u odd, so the halving is exact
        lhs_d = base * (p.m - p.u + 1) + eps1 * (p.m - (p.u - 1) // 2)
        d = Verdict.PASS if lhs_d <= rhs_d else Verdict.FAIL
    else:
        lhs_d, d = 0, Verdict.NA

    rhs_e = L * comb(p.u, 2) + p.v * p.u * L
    if p.v < p.m:
        base = (p.mu * comb(p.v, 2)) // (p.v - 1) if p.v > 1 else 0
        lhs_e = base * (p.m - p.v + 1) + eps2 * (p.m - (p.v - 1) // 2)
        e = Verdict.PASS if lhs_e <= rhs_e else Verdict.FAIL
    else:
        lhs_e, e = 0, Verdict.NA

    return ConditionReport(a, b, c, d, e, eps1, eps2, lhs_d, rhs_d, lhs_e, rhs_e, total)
