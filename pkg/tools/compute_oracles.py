"""Recompute the frozen oracle values in tests/oracle_values.json.

Uses networkx multigraphs and brute force only; nothing from the package is
imported, so the frozen numbers are an independent reference.

    python tools/compute_oracles.py > tests/oracle_values.json
"""

from __future__ import annotations

import itertools
import json
import sys

import networkx as nx


def mk_complete(nodes, lam):
    g = nx.MultiGraph()
    g.add_nodes_from(nodes)
    for a, b in itertools.combinations(nodes, 2):
        for _ in range(lam):
            g.add_edge(a, b)
    return g


def mk_bipartite(left, right, lam):
    g = nx.MultiGraph()
    g.add_nodes_from(left)
    g.add_nodes_from(right)
    for a in left:
        for b in right:
            for _ in range(lam):
                g.add_edge(a, b)
    return g


def difference(lam, mu, v, u):
    Vs = [f"V{i}" for i in range(v)]
    Us = [f"U{j}" for j in range(u)]
    big = mk_complete(Vs + Us, lam + mu)
    for a, b in itertools.combinations(Vs, 2):
        for _ in range(lam):
            big.remove_edge(a, b)
    return big


def conditions(m, lam, mu, v, u):
    """Literal transcription of the necessary conditions, written with
    explicit loops rather than closed forms where possible."""
    L = lam + mu
    a = (u * L + mu * (v - 1)) % 2 == 0
    b = (v * L + L * (u - 1)) % 2 == 0
    E = difference(lam, mu, v, u).number_of_edges()
    c = E % m == 0
    eps1 = (u * L) % 2
    eps2 = (mu * v) % 2
    if u < m:
        inner = L * u * (u - 1) // 2
        base = inner // (u - 1) if u > 1 else 0
        lhs = base * (m - u + 1) + (eps1 * (2 * m - (u - 1))) // 2
        rhs = mu * v * (v - 1) // 2 + v * u * L
        d = "pass" if lhs <= rhs else "fail"
        d_sides = [lhs, rhs]
    else:
        d, d_sides = "not-applicable", None
    if v < m:
        inner = mu * v * (v - 1) // 2
        base = inner // (v - 1) if v > 1 else 0
        lhs = base * (m - v + 1) + (eps2 * (2 * m - (v - 1))) // 2
        rhs = L * u * (u - 1) // 2 + v * u * L
        e = "pass" if lhs <= rhs else "fail"
        e_sides = [lhs, rhs]
    else:
        e, e_sides = "not-applicable", None
    ok = a and b and c and d != "fail" and e != "fail"
    return {"a": a, "b": b, "c": c, "d": d, "e": e, "d_sides": d_sides, "e_sides": e_sides, "edges": E, "all_pass": ok}


def pieces(m, lam, mu, v, u):
    """Edge counts of the three pieces, counted on networkx graphs."""
    L = lam + mu
    Vs = [f"V{i}" for i in range(v)]
    Us = [f"U{j}" for j in range(u)]
    if L % 2 == 0:
        tag = "C1_even_sum"
        gs = [mk_complete(Vs, mu) if mu else nx.MultiGraph(), mk_bipartite(Vs, Us, L), mk_complete(Us, L)]
    elif lam % 2 == 0:
        tag = "C1_lambda_even"
        gs = [mk_complete(Vs + Us, mu), mk_bipartite(Vs, Us, lam), mk_complete(Us, lam)]
    else:
        tag = "C2_both_odd"
        gs = [
            mk_complete(Vs, mu) if mu else nx.MultiGraph(),
            mk_bipartite(Vs[:-1], Us, L),
            mk_complete(Us + ["INF"], L),
        ]
    sizes = [g.number_of_edges() for g in gs]
    ell = []
    for i, s in enumerate(sizes):
        r = s % m
        ell.append((m if i == 1 else 0) if r == 0 else (m + 2 if r == 2 else r))
    return tag, sizes, ell


def good_brute(n, S, T, s, t):
    A = set(range(n))
    for Sp in itertools.combinations(sorted(A - S), s):
        rest = A - T - set(Sp)
        if len(rest) >= t:
            return True
    return False


def main() -> None:
    out: dict = {}
    out["complete"] = {
        "n9_lam2_edges": mk_complete(range(9), 2).number_of_edges(),
        "n1_lam5_edges": mk_complete(range(1), 5).number_of_edges(),
        "n4_lam1_degrees": sorted(set(dict(mk_complete(range(4), 1).degree()).values())),
    }
    out["bipartite"] = {
        "9_9_2_edges": mk_bipartite([f"a{i}" for i in range(9)], [f"b{i}" for i in range(9)], 2).number_of_edges(),
        "8_10_2_left_degree": sorted(
            set(d for x, d in mk_bipartite([f"a{i}" for i in range(8)], [f"b{i}" for i in range(10)], 2).degree() if x[0] == "a")
        ),
    }
    out["difference_edges"] = {
        "6,1,1,9,9": difference(1, 1, 9, 9).number_of_edges(),
        "6,1,0,3,1": difference(1, 0, 3, 1).number_of_edges(),
        "8,1,1,13,14": difference(1, 1, 13, 14).number_of_edges(),
        "6,1,2,13,12": difference(1, 2, 13, 12).number_of_edges(),
    }
    grid = []
    for m in (6, 8):
        for lam in (1, 2):
            for mu in (0, 1, 2):
                for v in range(m + 2, m + 6):
                    for u in range(m + 2, m + 6):
                        c = conditions(m, lam, mu, v, u)
                        row = {"params": [m, lam, mu, v, u], "edges": c["edges"], "all_pass": c["all_pass"]}
                        if c["all_pass"]:
                            tag, sizes, ell = pieces(m, lam, mu, v, u)
                            row.update(case_tag=tag, piece_edges=sizes, ell=ell, cycles=c["edges"] // m)
                        grid.append(row)
    out["grid"] = grid
    out["condition_fixtures"] = {
        "6,1,1,9,9": conditions(6, 1, 1, 9, 9),
        "6,1,1,8,8": conditions(6, 1, 1, 8, 8),
        "6,1,1,5,3": conditions(6, 1, 1, 5, 3),
        "8,1,1,13,14": conditions(8, 1, 1, 13, 14),
        "8,1,2,5,9": conditions(8, 1, 2, 5, 9),
        "10,2,1,4,4": conditions(10, 2, 1, 4, 4),
    }
    out["goodness"] = {
        "A5_S12_T3_1_1": good_brute(5, {0, 1}, {2}, 1, 1),
        "A3_S123_1_0": good_brute(3, {0, 1, 2}, set(), 1, 0),
        "A2_S1_T2_1_1_solutions": [
            [sorted(Sp), sorted(Tp)]
            for Sp in itertools.combinations(range(2), 1)
            for Tp in itertools.combinations(range(2), 1)
            if not ({*Sp} & {0}) and not ({*Tp} & {1}) and not ({*Sp} & {*Tp})
        ],
    }
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
