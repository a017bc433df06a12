"""Search kernel selection: compiled extension when available, else pure Python.

Set ``TOURSUB_PURE=1`` to force the pure backend (used by the benchmark and
by the backend parity tests).  Hosts with more than 64 vertices always use
the pure backend.
"""

from __future__ import annotations

import os

from . import pure

NOTFOUND = pure.NOTFOUND
FOUND = pure.FOUND
BUDGET_EXCEEDED = pure.BUDGET_EXCEEDED

_compiled = None
if not os.environ.get("TOURSUB_PURE"):
    try:
        from . import _speedups as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"


def backend_name() -> str:
    return BACKEND


def available_backends() -> dict:
    """Name -> search callable, for benchmarks and parity tests."""
    backends = {"pure": pure.search_subdivision}
    if _compiled is not None:
        backends["compiled"] = _compiled.search_subdivision
    return backends


def search_subdivision(out_masks, k, edges, max_len, exact_len, budget):
    if _compiled is not None and len(out_masks) <= 64:
        return _compiled.search_subdivision(out_masks, k, edges, max_len, exact_len, budget)
    return pure.search_subdivision(out_masks, k, edges, max_len, exact_len, budget)
