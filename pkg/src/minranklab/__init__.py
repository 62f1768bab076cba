"""Exact graph minrank over prime fields, with zero-pattern and geometric tooling."""

from ._kernels import BACKEND
from .algebra import GF, QQ, RR, Domain, Matrix, ZeroPattern, mat_rank, real_rank
from .bounds import BoundParams, bounds_report, minrank_lower_threshold, union_bound_log
from .errors import (
    InputError,
    InstanceTooLarge,
    LemmaCounterexample,
    MinrankLabError,
    ResourceLimit,
    Undecided,
    VerificationFailure,
)
from .graph import Coloring, Graph, clique_cover_exact, complement, gnp, independence_number
from .minrank import MinrankResult, minrank_decision, minrank_exact, sandwich, verify_certificate
from .poly import MultiPoly

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "GF", "QQ", "RR", "Domain", "Matrix", "ZeroPattern", "mat_rank", "real_rank",
    "BoundParams", "bounds_report", "minrank_lower_threshold", "union_bound_log",
    "InputError", "InstanceTooLarge", "LemmaCounterexample", "MinrankLabError", "ResourceLimit",
    "Undecided", "VerificationFailure",
    "Coloring", "Graph", "clique_cover_exact", "complement", "gnp", "independence_number",
    "MinrankResult", "minrank_decision", "minrank_exact", "sandwich", "verify_certificate",
    "MultiPoly",
]
