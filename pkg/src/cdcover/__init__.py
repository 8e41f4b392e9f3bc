"""Cycle double covers via a two-sheet lift, plus rotation-system embeddings."""
from __future__ import annotations

from .graph import Graph, is_valid_input, parse_edge_list
from .oracle import brute_force_cdc, enumerate_cycles
from .reduce import CdcOutcome, run_pipeline
from .verify import VerifyReport, verify_cdc

__version__ = "0.1.0"

__all__ = ["CdcOutcome", "Graph", "VerifyReport", "brute_force_cdc", "enumerate_cycles",
           "is_valid_input", "parse_edge_list", "run_pipeline", "verify_cdc"]
