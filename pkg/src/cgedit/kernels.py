"""Kernel dispatch: compiled kernels when importable, pure Python otherwise.

Set ``CGEDIT_PURE_PYTHON=1`` to force the fallback.  The bitmask kernels
handle at most 64 vertices in compiled form; larger inputs use the Python
versions.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("CGEDIT_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

IMPL = _ckernels.IMPL if _ckernels is not None else _pykernels.IMPL
MAX_COMPILED_N = 64


def backend(n: int):
    """Kernel module to use for a problem on ``n`` vertices."""
    if _ckernels is not None and n <= MAX_COMPILED_N:
        return _ckernels
    return _pykernels


def find_p4(adj, n):
    return backend(n).find_p4(adj, n)


def unit_edit_search(adj, n, budget, collect_all=False):
    return backend(n).unit_edit_search(adj, n, budget, collect_all)


def weighted_edit_search(adj, n, weights, upper, node_limit=0):
    return backend(n).weighted_edit_search(adj, n, weights, upper, node_limit)


def module_masks(adj, n):
    return backend(n).module_masks(adj, n)


def greedy_merge(quotient, sizes, minids):
    # matrix based, so the compiled version has no size limit
    impl = _ckernels if _ckernels is not None else _pykernels
    return impl.greedy_merge(quotient, sizes, minids)
