"""Exact and asymptotic counts of reachable chessboard pebbling configurations.

Three independent routes to G(k, m) are provided and cross-checked:

* :mod:`pebbling.board` simulates the pebbling moves directly,
* :mod:`pebbling.recurrence` builds the integer table from the recurrences,
* :mod:`pebbling.qseries` extracts coefficients of the closed-form
  generating functions,

and :mod:`pebbling.asymptotics` computes the growth constants to arbitrary
precision.
"""

from .asymptotics import (
    AsymptoticConstants,
    PrecisionPolicy,
    RootCertificate,
    asymptotic_constants,
    asymptotic_g,
    c1,
    c_star,
    eval_S,
    eval_S_prime,
    find_zstar,
    ratio_report,
    theorem_b_prefactor,
)
from .board import Board, apply_move, enumerate_counts, initial_board, legal_moves
from .qseries import (
    g_from_series,
    g_total_from_series,
    gm_series,
    partition_product_series,
    s_series,
    sk_series,
    verify_series_identities,
    w0,
    w0_series,
)
from .recurrence import CountTable, build_table, g, g_total, verify_boundary_identities
from .report import CheckResult, VerificationReport
from .series import IntSeries

__version__ = "0.1.0"

__all__ = [
    "AsymptoticConstants",
    "Board",
    "CheckResult",
    "CountTable",
    "IntSeries",
    "PrecisionPolicy",
    "RootCertificate",
    "VerificationReport",
    "apply_move",
    "asymptotic_constants",
    "asymptotic_g",
    "build_table",
    "c1",
    "c_star",
    "enumerate_counts",
    "eval_S",
    "eval_S_prime",
    "find_zstar",
    "g",
    "g_from_series",
    "g_total",
    "g_total_from_series",
    "gm_series",
    "initial_board",
    "legal_moves",
    "partition_product_series",
    "ratio_report",
    "s_series",
    "sk_series",
    "theorem_b_prefactor",
    "verify_boundary_identities",
    "verify_series_identities",
    "w0",
    "w0_series",
]
