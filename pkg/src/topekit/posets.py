"""Finite posets with the order encoded as up-set bitmasks.

Elements are kept in a fixed tuple; row i of the matrix is the bitmask
of everything >= element i, so comparisons, meets, joins, and the join
orthogonality property all reduce to integer arithmetic. Element count
here is the number of morphisms into one object, a few dozen at most,
so the quadratic constructions are fine.
"""

from __future__ import annotations

from typing import Callable, Hashable, Optional, Sequence


class Poset:
    """A finite partial order; `leq` must already be reflexive and
    transitive on the given elements, and antisymmetric (duplicates
    under mutual comparability are the caller's error).
    """

    def __init__(self, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        m = len(self.elements)
        self.up = [0] * m
        for i, a in enumerate(self.elements):
            row = 0
            for j, b in enumerate(self.elements):
                if leq(a, b):
                    row |= 1 << j
            self.up[i] = row
        for i in range(m):
            if not (self.up[i] >> i) & 1:
                raise ValueError("leq is not reflexive")
            for j in range(m):
                if i != j and (self.up[i] >> j) & 1 and (self.up[j] >> i) & 1:
                    raise ValueError("leq is not antisymmetric")
            scan = self.up[i]
            while scan:
                j = (scan & -scan).bit_length() - 1
                scan &= scan - 1
                if self.up[j] & ~self.up[i]:
                    raise ValueError("leq is not transitive")

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a, b) -> bool:
        return bool((self.up[self.index[a]] >> self.index[b]) & 1)

    def _mask_to_elems(self, mask: int) -> list:
        out = []
        while mask:
            j = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out.append(self.elements[j])
        return out

    def upper_bounds(self, elems) -> list:
        mask = (1 << len(self.elements)) - 1
        for e in elems:
            mask &= self.up[self.index[e]]
        return self._mask_to_elems(mask)

    def lower_bounds(self, elems) -> list:
        idxs = [self.index[e] for e in elems]
        out = []
        for j in range(len(self.elements)):
            if all((self.up[j] >> i) & 1 for i in idxs):
                out.append(self.elements[j])
        return out

    def minimal_elements(self, elems) -> list:
        pool = [self.index[e] for e in elems]
        out = []
        for i in pool:
            if not any(j != i and (self.up[j] >> i) & 1 for j in pool):
                out.append(self.elements[i])
        return out

    def maximal_elements(self, elems) -> list:
        pool = [self.index[e] for e in elems]
        out = []
        for i in pool:
            if not any(j != i and (self.up[i] >> j) & 1 for j in pool):
                out.append(self.elements[i])
        return out

    def join(self, elems) -> Optional[Hashable]:
        """Least upper bound, or None when it does not exist."""
        ubs = self.upper_bounds(elems)
        mins = self.minimal_elements(ubs)
        if len(mins) == 1:
            return mins[0]
        return None

    def meet(self, elems) -> Optional[Hashable]:
        lbs = self.lower_bounds(elems)
        maxs = self.maximal_elements(lbs)
        if len(maxs) == 1:
            return maxs[0]
        return None

    def bottom(self) -> Optional[Hashable]:
        mins = self.minimal_elements(self.elements)
        return mins[0] if len(mins) == 1 else None

    def top(self) -> Optional[Hashable]:
        maxs = self.maximal_elements(self.elements)
        return maxs[0] if len(maxs) == 1 else None

    def atoms(self) -> list:
        """Elements covering the bottom; empty when there is no bottom."""
        bot = self.bottom()
        if bot is None:
            return []
        rest = [e for e in self.elements if e != bot]
        return self.minimal_elements(rest)

    def is_lattice(self) -> tuple[bool, Optional[tuple]]:
        """Finite lattice test: bottom, top, and pairwise joins.

        Returns a witness pair with no join when the test fails.
        """
        if self.bottom() is None:
            return False, ("no-bottom",)
        if self.top() is None:
            return False, ("no-top",)
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1:]:
                if self.join((a, b)) is None:
                    return False, (a, b)
        return True, None

    def has_all_pairwise_meets(self) -> tuple[bool, Optional[tuple]]:
        """With meets of all pairs, every nonempty subset has a meet."""
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1:]:
                if self.meet((a, b)) is None:
                    return False, (a, b)
        return True, None

    def join_of_set(self, elems) -> Optional[Hashable]:
        if not elems:
            return self.bottom()
        return self.join(elems)


def jop_holds(poset: Poset, orthogonal: Callable[[Hashable, Hashable], bool]) -> tuple[bool, Optional[tuple]]:
    """Join orthogonality: for every h, the set of elements orthogonal
    to h is closed under existing joins. Failure witness is (h, j) where
    j is a non-orthogonal element realized as a join of orthogonal ones.
    """
    for h in poset.elements:
        u = [g for g in poset.elements if orthogonal(g, h)]
        uset = set(u)
        for j in poset.elements:
            if j in uset:
                continue
            below = [g for g in u if poset.leq(g, j)]
            if not below:
                continue
            if poset.join_of_set(below) == j:
                return False, (h, j)
    return True, None
