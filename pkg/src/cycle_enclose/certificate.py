"""JSON certificates for decompositions and enclosings."""

from __future__ import annotations

import json
from typing import Any, Sequence

from .conditions import Params, ParamsError

SCHEMA = "cycle-enclose/1"
KINDS = ("decomposition", "enclosing")


class CertificateError(ValueError):
    """The document is not a well-formed certificate."""


def params_dict(p: Params) -> dict:
    return {"m": p.m, "lambda": p.lam, "mu": p.mu, "v": p.v, "u": p.u}


def vertex_labels(p: Params) -> list[str]:
    return [f"V{i}" for i in range(p.v)] + [f"U{j}" for j in range(p.u)]


def _label(x: Any) -> str:
    lab = getattr(x, "label", None)
    return lab if isinstance(lab, str) else str(x)


def make_certificate(p: Params, cycles: Sequence[Sequence], meta: dict, kind: str = "decomposition") -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return {
        "schema": SCHEMA,
        "kind": kind,
        "params": params_dict(p),
        "vertices": vertex_labels(p),
        "cycles": [[_label(x) for x in c] for c in cycles],
        "meta": meta,
    }


def dumps(doc: dict) -> str:
    """Stable text form: one cycle per line, everything else compact."""
    keys = list(doc)
    lines = ["{"]
    for i, k in enumerate(keys):
        comma = "," if i < len(keys) - 1 else ""
        v = doc[k]
        if k == "cycles" and v:
            lines.append(f"  {json.dumps(k)}: [")
            for j, c in enumerate(v):
                lines.append("    " + json.dumps(c) + ("," if j < len(v) - 1 else ""))
            lines.append("  ]" + comma)
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v, sort_keys=True)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[dict, Params]:
    """Parse and shape-check a certificate; returns ``(doc, params)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateError("certificate must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise CertificateError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind", "decomposition") not in KINDS:
        raise CertificateError(f"unknown kind {doc.get('kind')!r}")
    raw = doc.get("params")
    if not isinstance(raw, dict):
        raise CertificateError("missing params")
    try:
        p = Params(*(int(raw[k]) for k in ("m", "lambda", "mu", "v", "u")))
    except (KeyError, TypeError, ValueError, ParamsError) as exc:
        raise CertificateError(f"bad params: {exc}") from None
    cycles = doc.get("cycles")
    if not isinstance(cycles, list) or not all(
        isinstance(c, list) and all(isinstance(x, str) for x in c) for c in cycles
    ):
        raise CertificateError("cycles must be a list of label lists")
    if not isinstance(doc.get("meta", {}), dict):
        raise CertificateError("meta must be an object")
    return doc, p


def read_cycles(text: str) -> list[list[str]]:
    """Cycles from a system file: a certificate-like object with a "cycles"
    key, or a bare list of label lists."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"malformed JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("cycles")
    if not isinstance(data, list) or not all(isinstance(c, list) and all(isinstance(x, str) for x in c) for c in data):
        raise CertificateError("expected a list of cycles given as label lists")
    return data
