"""Command-line interface: ``cycle-enclose check|decompose|verify|enclose|selftest``.

Exit status: 0 on success, 1 when the mathematics says no (conditions fail,
verification fails, unsupported parameters, search timeout), 2 for usage
and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .certificate import CertificateError, dumps, loads, make_certificate, read_cycles
from .conditions import Params, ParamsError, Verdict, check_conditions
from .graphs import VertexId
from .orchestrator import InternalInvariantError, OrchestratorError, decompose_with_meta, enclose
from .packing import PackingError, SearchBudget, SearchTimeout
from .verifier import verify_difference_decomposition, verify_enclosing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("CYCLE_ENCLOSE_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"CYCLE_ENCLOSE_SEED must be an integer, got {raw!r}") from None


def _params(ns: argparse.Namespace) -> Params:
    if ns.m % 2:
        raise UsageError(f"--m must be even (got {ns.m})")
    try:
        return Params(ns.m, ns.lam, ns.mu, ns.v, ns.u)
    except ParamsError as exc:
        raise UsageError(str(exc)) from None


def _add_params(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--m", type=int, required=True, help="cycle length (even)")
    sp.add_argument("--lambda", dest="lam", type=int, required=True, help="multiplicity inside V")
    sp.add_argument("--mu", type=int, required=True, help="extra multiplicity")
    sp.add_argument("--v", type=int, required=True, help="size of V")
    sp.add_argument("--u", type=int, required=True, help="number of added vertices")


def _add_search(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="search seed (default $CYCLE_ENCLOSE_SEED or 0)")
    sp.add_argument("--timeout", type=float, default=120.0, help="search budget in seconds")
    sp.add_argument("--out", default=None, help="write the certificate here instead of standard output")
    sp.add_argument("--timings", action="store_true", help="record stage timings in meta (breaks byte-stability)")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _error(kind: str, detail: str) -> int:
    print(json.dumps({"error": kind, "detail": detail}))
    return EXIT_FAIL


def _budget(ns: argparse.Namespace) -> SearchBudget:
    seed = ns.seed if ns.seed is not None else _default_seed()
    if ns.timeout <= 0:
        raise UsageError("--timeout must be positive")
    return SearchBudget(seed=seed, timeout=ns.timeout)


# -- commands ----------------------------------------------------------------


def cmd_check(ns: argparse.Namespace) -> int:
    p = _params(ns)
    rep = check_conditions(p)
    if ns.format == "json":
        d = rep.to_dict()
        out = {
            "params": {"m": p.m, "lambda": p.lam, "mu": p.mu, "v": p.v, "u": p.u},
            "all_pass": rep.all_pass,
            "conditions": {
                "a": {"verdict": "pass" if rep.a else "fail"},
                "b": {"verdict": "pass" if rep.b else "fail"},
                "c": {"verdict": "pass" if rep.c else "fail", "lhs": rep.edge_total, "rhs": f"0 mod {p.m}"},
                "d": {"verdict": d["d"], "lhs": rep.lhs_d, "rhs": rep.rhs_d},
                "e": {"verdict": d["e"], "lhs": rep.lhs_e, "rhs": rep.rhs_e},
            },
            "eps1": rep.eps1,
            "eps2": rep.eps2,
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"params m={p.m} lambda={p.lam} mu={p.mu} v={p.v} u={p.u}")
        print(f"(a) {'pass' if rep.a else 'fail'}")
        print(f"(b) {'pass' if rep.b else 'fail'}")
        print(f"(c) {'pass' if rep.c else 'fail'}  |E| = {rep.edge_total}")
        for k, verdict, lhs, rhs in (("d", rep.d, rep.lhs_d, rep.rhs_d), ("e", rep.e, rep.lhs_e, rep.rhs_e)):
            extra = "" if verdict is Verdict.NA else f"  {lhs} <= {rhs}"
            print(f"({k}) {verdict.value}{extra}")
        print("all conditions pass" if rep.all_pass else "failed: " + ", ".join(rep.failed()))
    return EXIT_OK if rep.all_pass else EXIT_FAIL


def _meta(dec_meta: dict, seed: int, timings: bool) -> dict:
    meta = {k: v for k, v in dec_meta.items() if k != "timings"}
    meta["seed"] = seed
    meta["version"] = __version__
    if timings:
        meta["timings"] = dec_meta.get("timings", {})
    return meta


def cmd_decompose(ns: argparse.Namespace) -> int:
    p = _params(ns)
    budget = _budget(ns)
    t0 = time.monotonic()
    try:
        dec = decompose_with_meta(p, budget)
    except SearchTimeout as exc:
        return _error("timeout", str(exc))
    except (OrchestratorError, PackingError) as exc:
        return _error(getattr(exc, "kind", "unsupported-parameters"), str(exc))
    except InternalInvariantError as exc:
        return _error(exc.kind, str(exc))
    rep = verify_difference_decomposition(p, dec.cycles)
    if not rep.ok:
        return _error("internal-invariant", f"self-verification failed: {rep.failures[:3]}")
    meta = _meta(dec.meta, budget.seed, ns.timings)
    if ns.timings:
        meta["timings"]["total"] = time.monotonic() - t0
    _emit(dumps(make_certificate(p, dec.cycles, meta)), ns.out)
    return EXIT_OK


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_verify(ns: argparse.Namespace) -> int:
    try:
        doc, p = loads(_read(ns.cert))
    except CertificateError as exc:
        raise UsageError(str(exc)) from None
    cycles = doc["cycles"]
    if doc.get("kind", "decomposition") == "enclosing":
        k = doc.get("meta", {}).get("inner_count")
        if not isinstance(k, int) or not 0 <= k <= len(cycles):
            raise UsageError("enclosing certificate needs meta.inner_count")
        rep = verify_enclosing(cycles[:k], cycles, p, allow_embedding=True)
    else:
        rep = verify_difference_decomposition(p, cycles)
        if not cycles:
            rep.add("residual-nonzero", "certificate has no cycles")
    print(json.dumps(rep.to_dict(), indent=2))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_enclose(ns: argparse.Namespace) -> int:
    p = _params(ns)
    budget = _budget(ns)
    try:
        raw = read_cycles(_read(ns.system))
        system = [tuple(VertexId.parse(x) for x in c) for c in raw]
    except (CertificateError, ValueError) as exc:
        raise UsageError(f"bad system file: {exc}") from None
    try:
        cycles = enclose(system, p, budget)
    except SearchTimeout as exc:
        return _error("timeout", str(exc))
    except (OrchestratorError, PackingError) as exc:
        return _error(getattr(exc, "kind", "unsupported-parameters"), str(exc))
    except InternalInvariantError as exc:
        return _error(exc.kind, str(exc))
    rep = verify_enclosing(system, cycles, p, allow_embedding=True)
    if not rep.ok:
        return _error("internal-invariant", f"self-verification failed: {rep.failures[:3]}")
    meta = {"seed": budget.seed, "version": __version__, "inner_count": len(system)}
    _emit(dumps(make_certificate(p, cycles, meta, kind="enclosing")), ns.out)
    return EXIT_OK


def grid(max_m: int = 8, span: int = 4) -> list[Params]:
    """Parameter tuples of the self-test grid that pass the conditions."""
    out = []
    for m in range(6, max_m + 1, 2):
        for lam in (1, 2):
            for mu in (0, 1, 2):
                for v in range(m + 2, m + 2 + span):
                    for u in range(m + 2, m + 2 + span):
                        p = Params(m, lam, mu, v, u)
                        if check_conditions(p).all_pass:
                            out.append(p)
    return out


def run_instance(args: tuple[Params, int, float]) -> dict:
    p, seed, timeout = args
    t0 = time.monotonic()
    row = {"params": p.as_tuple(), "ok": False, "cycles": 0, "case": "", "plan": "", "error": ""}
    try:
        dec = decompose_with_meta(p, SearchBudget(seed=seed, timeout=timeout))
        rep = verify_difference_decomposition(p, dec.cycles)
        row.update(ok=rep.ok, cycles=len(dec.cycles), case=dec.meta["case_tag"], plan=dec.meta.get("plan", ""))
        if not rep.ok:
            row["error"] = f"verification: {rep.failures[0]}"
    except Exception as exc:  # reported per instance, never fatal to the run
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["seconds"] = round(time.monotonic() - t0, 3)
    return row


def cmd_selftest(ns: argparse.Namespace) -> int:
    if ns.max_m < 6 or ns.span < 1 or ns.jobs < 1 or ns.budget <= 0:
        raise UsageError("--max-m >= 6, --span >= 1, --jobs >= 1 and --budget > 0 are required")
    seed = ns.seed if ns.seed is not None else _default_seed()
    todo = [(p, seed, ns.budget) for p in grid(ns.max_m, ns.span)]
    if ns.jobs == 1:
        rows = [run_instance(t) for t in todo]
    else:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(run_instance, todo))
    rows.sort(key=lambda r: r["params"])
    fails = [r for r in rows if not r["ok"]]
    if ns.format == "json":
        print(json.dumps({"instances": rows, "failures": len(fails)}, indent=2))
    else:
        print(f"{'m':>3} {'lam':>3} {'mu':>3} {'v':>3} {'u':>3}  {'case':<15} {'plan':<9} {'cycles':>6} {'secs':>7}  result")
        for r in rows:
            m, lam, mu, v, u = r["params"]
            res = "ok" if r["ok"] else "FAIL " + r["error"]
            print(f"{m:>3} {lam:>3} {mu:>3} {v:>3} {u:>3}  {r['case']:<15} {r['plan']:<9} {r['cycles']:>6} {r['seconds']:>7.2f}  {res}")
        print(f"{len(rows)} instances, {len(fails)} failures")
    return EXIT_FAIL if fails else EXIT_OK


# -- entry point -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 already; keep the message short
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cycle-enclose", description="m-cycle decompositions of (lam+mu)K_{v+u} - lam K_v")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("check", help="evaluate the necessary conditions")
    _add_params(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="build and self-verify a decomposition certificate")
    _add_params(sp)
    _add_search(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="check a certificate")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enclose", help="extend an m-cycle system of lam K_v")
    sp.add_argument("--system", required=True, help="JSON list of cycles (label lists), or a certificate")
    _add_params(sp)
    _add_search(sp)
    sp.set_defaults(func=cmd_enclose)

    sp = sub.add_parser("selftest", help="decompose and verify every grid instance")
    sp.add_argument("--max-m", type=int, default=8)
    sp.add_argument("--span", type=int, default=4, help="v and u range over m+2 .. m+1+span")
    sp.add_argument("--budget", type=float, default=120.0, help="seconds per instance")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"cycle-enclose: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
