"""Select the compiled oracle kernels when available.

Set ``CDCOVER_PURE=1`` to force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if os.environ.get("CDCOVER_PURE") != "1":
    try:
        from . import _kernels as compiled_kernels  # type: ignore[no-redef]
    except ImportError:
        compiled_kernels = None

active = compiled_kernels or python_kernels
BACKEND = active.NAME


def enumerate_cycles_raw(adj, max_len, cap):
    if len(adj) > 64:
        return python_kernels.enumerate_cycles_raw(adj, max_len, cap)
    return active.enumerate_cycles_raw(adj, max_len, cap)


def cdc_search(masks, n_edges, node_limit):
    if n_edges > 64:
        return python_kernels.cdc_search(masks, n_edges, node_limit)
    return active.cdc_search(masks, n_edges, node_limit)
