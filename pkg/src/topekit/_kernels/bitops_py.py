"""Pure-Python bitmask kernels.

Subsets of a ground set with 2n elements are ints with bit i set when
element i is a member; element i pairs with element i+n under the
involution, so involution of a whole subset is a rotation of the 2n-bit
word by n. These functions are the hot loops of the closure formula, the
axiom battery and the wall-crossing scan. topekit._kernels.bitops is a
compiled twin with identical semantics; this module is the reference and
the fallback.
"""

from __future__ import annotations


def involute_mask(mask: int, n: int) -> int:
    full = (1 << (2 * n)) - 1
    return ((mask << n) | (mask >> n)) & full


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_half_set_mask(mask: int, n: int) -> bool:
    if mask.bit_count() != n:
        return False
    return mask & involute_mask(mask, n) == 0


def apply_perm_mask(mask: int, perm) -> int:
    """Image of a subset under an index permutation."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def closure_mask(x: int, hemis, full: int, memo=None) -> int:
    """Closure of x from a hemispace family.

    Evaluates union over hemispaces H of the intersection of all
    hemispaces containing x & H. The inner intersection only depends on
    x & H, so an optional memo dict shared across calls caches it.
    """
    out = 0
    for h in hemis:
        y = x & h
        if memo is not None and y in memo:
            out |= memo[y]
            continue
        inter = full
        for k in hemis:
            if y & ~k == 0:
                inter &= k
        if memo is not None:
            memo[y] = inter
        out |= inter
    return out


def closure_table(hemis, n: int) -> list:
    """Closures of every subset of a 2n-element ground set, indexed by mask."""
    full = (1 << (2 * n)) - 1
    memo: dict = {}
    return [closure_mask(x, hemis, full, memo) for x in range(full + 1)]


def a4_witness(topes, class_masks, class_of, n: int):
    """First ordered tope pair witnessing a wall-crossing failure.

    topes must arrive in the caller's canonical order; class_of maps an
    element index to its parallelism class id and class_masks lists the
    class bitmasks. Returns (i, j) for the first pair where no element of
    topes[i] \\ topes[j] admits a class flip landing in the tope family,
    or None when every pair passes.
    """
    tope_set = set(topes)
    m = len(topes)
    for i in range(m):
        h1 = topes[i]
        for j in range(m):
            if i == j:
                continue
            diff = h1 & ~topes[j]
            rest = diff
            ok = False
            while rest:
                low = rest & -rest
                rest ^= low
                cls = class_masks[class_of[low.bit_length() - 1]]
                cand = (h1 & ~cls) | involute_mask(cls, n)
                if cand in tope_set:
                    ok = True
                    break
            if not ok:
                return (i, j)
    return None
