"""Enclosing m-cycle systems: m-cycle decompositions of (lam+mu)K_{v+u} - lam K_v
for even m, with an independent certificate verifier."""

from __future__ import annotations

__version__ = "0.1.0"

from .conditions import ConditionReport, Params, check_conditions
from .graphs import INF, CyclePacking, Multigraph, Part, U, V, VertexId, difference_graph
from .kernel import BACKEND
from .orchestrator import decompose, decompose_with_meta, enclose
from .packing import LeaveSpec, SearchBudget, SearchTimeout
from .verifier import VerifyReport, verify_decomposition, verify_enclosing, verify_packing

__all__ = [
    "BACKEND",
    "ConditionReport",
    "CyclePacking",
    "INF",
    "LeaveSpec",
    "Multigraph",
    "Params",
    "Part",
    "SearchBudget",
    "SearchTimeout",
    "U",
    "V",
    "VertexId",
    "VerifyReport",
    "check_conditions",
    "decompose",
    "decompose_with_meta",
    "difference_graph",
    "enclose",
    "verify_decomposition",
    "verify_enclosing",
    "verify_packing",
]
