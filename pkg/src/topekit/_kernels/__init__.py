"""Kernel selection.

The compiled extension handles ground sets that fit a 64-bit word.
Anything wider, or an environment with TOPEKIT_PURE set, or a missing
build falls back to the pure-Python reference. Both implementations are
kept behaviorally identical and tests compare them directly.
"""

from __future__ import annotations

import os

from . import bitops_py

_compiled = None
if os.environ.get("TOPEKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import bitops as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_WORD_PAIRS = 32


def kernel_backend() -> str:
    return "pure" if _compiled is None else "cython"


def involute_mask(mask: int, n: int) -> int:
    if _compiled is not None and n <= _WORD_PAIRS:
        return _compiled.involute_mask(mask, n)
    return bitops_py.involute_mask(mask, n)


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_half_set_mask(mask: int, n: int) -> bool:
    if _compiled is not None and n <= _WORD_PAIRS:
        return _compiled.is_half_set_mask(mask, n)
    return bitops_py.is_half_set_mask(mask, n)


def apply_perm_mask(mask: int, perm) -> int:
    if _compiled is not None and len(perm) <= 2 * _WORD_PAIRS:
        return _compiled.apply_perm_mask(mask, perm)
    return bitops_py.apply_perm_mask(mask, perm)


def closure_mask(x: int, hemis, full: int, memo=None) -> int:
    if _compiled is not None and full < (1 << 64):
        return _compiled.closure_mask(x, hemis, full, memo)
    return bitops_py.closure_mask(x, hemis, full, memo)


def closure_table(hemis, n: int) -> list:
    if _compiled is not None and n <= _WORD_PAIRS:
        return _compiled.closure_table(hemis, n)
    return bitops_py.closure_table(hemis, n)


def a4_witness(topes, class_masks, class_of, n: int):
    if _compiled is not None and n <= _WORD_PAIRS:
        return _compiled.a4_witness(topes, class_masks, class_of, n)
    return bitops_py.a4_witness(topes, class_masks, class_of, n)
