"""Preacycloids and acycloids: tope families over a signed ground set.

A preacycloid is a finite ground set with a free involution together
with a family of topes. Outside the loops (elements in no tope), every
tope picks exactly one element of each involution pair, the family is
closed under the involution, and loops are exactly the elements missing
from every tope. An acycloid additionally has a nonempty tope family
satisfying the wall-crossing axiom: between any two distinct topes there
is a parallelism class inside the difference whose flip stays in the
family.

Quasicontraction, its closure (the matroidality test below), paths in
the tope graph, and canonical forms under signed permutations all live
here.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from . import _kernels as K
from .core import GroundSet, RootSet, involute
from .errors import AxiomViolation, InternalConsistencyError, NotAcycloid, TopeNotFound


class Preacycloid:
    """Carrier for a validated tope family.

    Construction here does not re-check the axioms; build through
    check_preacycloid unless the family comes from an operation whose
    output is valid by construction (quasicontraction, simplification).
    Topes are stored in canonical order, sorted by their index tuples.
    """

    __slots__ = ("ground", "topes", "tope_masks", "_tope_mask_set", "_classes")

    def __init__(self, ground: GroundSet, topes: Iterable[RootSet]):
        self.ground = ground
        seen = {}
        for t in topes:
            if t.ground is not ground and t.ground != ground:
                raise ValueError("tope on a different ground set")
            seen[t.mask] = None
        masks = sorted(seen.keys(), key=lambda m: RootSet(ground, m).sort_key())
        self.tope_masks = tuple(masks)
        self.topes = tuple(RootSet(ground, m) for m in masks)
        self._tope_mask_set = frozenset(masks)
        self._classes: Optional[tuple[RootSet, ...]] = None

    @property
    def loops(self) -> RootSet:
        union = 0
        for m in self.tope_masks:
            union |= m
        return RootSet(self.ground, self.ground.full_mask & ~union)

    def is_tope(self, t: Union[RootSet, int]) -> bool:
        mask = t.mask if isinstance(t, RootSet) else t
        return mask in self._tope_mask_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Preacycloid)
            and self.ground == other.ground
            and self.tope_masks == other.tope_masks
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.tope_masks))

    def __repr__(self) -> str:
        inner = ", ".join(repr(t) for t in self.topes)
        return f"Preacycloid(n={self.ground.n}, topes=[{inner}])"


def check_preacycloid(ground: GroundSet, topes: Iterable[RootSet]) -> Preacycloid:
    """Validate the three preacycloid axioms and build the carrier.

    The ground set carries a strict involution by construction, which
    settles the first axiom. Raises AxiomViolation("A2") when a tope
    meets its own involute or misses a non-loop pair, AxiomViolation("A3")
    when the family is not involution closed. An empty family is accepted;
    every element is then a loop.
    """
    a = Preacycloid(ground, topes)
    n = ground.n
    loops_mask = a.loops.mask
    support = ground.full_mask & ~loops_mask
    for t in a.topes:
        m = t.mask
        conj = K.involute_mask(m, n)
        if m & conj:
            raise AxiomViolation(
                "A2", t, f"tope {t!r} meets its own involute"
            )
        if (m | conj) != support:
            raise AxiomViolation(
                "A2", t, f"tope {t!r} does not cover the non-loop support"
            )
        if conj not in a._tope_mask_set:
            raise AxiomViolation(
                "A3", t, f"involute of tope {t!r} is not a tope"
            )
    return a


def parallelism_classes(a: Preacycloid) -> tuple[RootSet, ...]:
    """Partition of the ground set by tope-membership profile.

    All loops share the all-empty profile and therefore form a single
    class when present. Classes are returned sorted by smallest member.
    """
    if a._classes is not None:
        return a._classes
    ground = a.ground
    groups: dict[tuple, int] = {}
    masks: list[int] = []
    for i in range(ground.size):
        profile = tuple((m >> i) & 1 for m in a.tope_masks)
        if profile in groups:
            masks[groups[profile]] |= 1 << i
        else:
            groups[profile] = len(masks)
            masks.append(1 << i)
    masks.sort(key=lambda m: (m & -m).bit_length())
    out = tuple(RootSet(ground, m) for m in masks)
    a._classes = out
    return out


def _class_lookup(a: Preacycloid) -> tuple[list[int], list[int]]:
    """(class_of, class_masks) arrays for the kernels."""
    classes = parallelism_classes(a)
    class_masks = [c.mask for c in classes]
    class_of = [0] * a.ground.size
    for cid, m in enumerate(class_masks):
        scan = m
        while scan:
            low = scan & -scan
            scan ^= low
            class_of[low.bit_length() - 1] = cid
    return class_of, class_masks


def check_acycloid(a: Preacycloid) -> tuple[bool, Optional[tuple[RootSet, RootSet]]]:
    """Wall-crossing test over all ordered tope pairs.

    Returns (True, None) for an acycloid. A topeless family fails with
    witness None; otherwise the witness is the first ordered pair, in
    canonical tope order, admitting no class flip inside the family.
    """
    if not a.topes:
        return False, None
    class_of, class_masks = _class_lookup(a)
    hit = K.a4_witness(list(a.tope_masks), class_masks, class_of, a.ground.n)
    if hit is None:
        return True, None
    i, j = hit
    return False, (a.topes[i], a.topes[j])


def is_simple(a: Preacycloid) -> bool:
    """Singleton parallelism classes; implies looplessness."""
    return all(len(c) == 1 for c in parallelism_classes(a))


def tope_path(a: Preacycloid, start: RootSet, goal: RootSet) -> tuple[RootSet, ...]:
    """A minimal gallery between two topes of an acycloid.

    Each step flips one parallelism class contained in the current
    difference with the goal, always the one holding the smallest
    flippable element, so the result is deterministic. The length equals
    the number of classes separating the endpoints.
    """
    ok, witness = check_acycloid(a)
    if not ok:
        raise NotAcycloid(f"wall-crossing fails, witness {witness!r}")
    if not a.is_tope(start):
        raise TopeNotFound(f"{start!r} is not a tope")
    if not a.is_tope(goal):
        raise TopeNotFound(f"{goal!r} is not a tope")
    class_of, class_masks = _class_lookup(a)
    n = a.ground.n
    separating = set()
    scan = start.mask & ~goal.mask
    while scan:
        low = scan & -scan
        scan ^= low
        separating.add(class_of[low.bit_length() - 1])
    path = [start.mask]
    cur = start.mask
    while cur != goal.mask:
        diff = cur & ~goal.mask
        stepped = False
        scan = diff
        while scan:
            low = scan & -scan
            scan ^= low
            cls = class_masks[class_of[low.bit_length() - 1]]
            cand = (cur & ~cls) | K.involute_mask(cls, n)
            if a.is_tope(cand):
                cur = cand
                path.append(cur)
                stepped = True
                break
        if not stepped:
            raise InternalConsistencyError("no wall crossing available on an acycloid")
    if len(path) != len(separating) + 1:
        raise InternalConsistencyError("gallery is not minimal")
    return tuple(RootSet(a.ground, m) for m in path)


def quasicontract(a: Preacycloid, gamma: RootSet) -> Preacycloid:
    """Topes containing gamma whose flip is also a tope, with gamma removed.

    The result is a preacycloid on the same ground set; validity follows
    from involution closure of the input family, so no axiom check is
    run. A topeless result is an ordinary value here. Contracting at
    gamma and at its involute give the same result.
    """
    if gamma.ground != a.ground:
        raise ValueError("gamma on a different ground set")
    g = gamma.mask
    gi = K.involute_mask(g, a.ground.n)
    out = []
    for m in a.tope_masks:
        if g & ~m:
            continue
        if a.is_tope((m & ~g) | gi):
            out.append(RootSet(a.ground, m & ~g))
    return Preacycloid(a.ground, out)


def _drop_pair(ground: GroundSet, pair: int) -> tuple[GroundSet, list[int]]:
    """Ground set without pair `pair`, plus old-index -> new-index map."""
    labels = [ground.base_labels[i] for i in range(ground.n) if i != pair]
    new_ground = GroundSet(ground.n - 1, tuple(labels))
    remap = [-1] * ground.size
    pos = 0
    for i in range(ground.n):
        if i == pair:
            continue
        remap[i] = pos
        remap[i + ground.n] = pos + new_ground.n
        pos += 1
    return new_ground, remap


def _remap_mask(mask: int, remap: list[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        j = remap[low.bit_length() - 1]
        if j < 0:
            raise InternalConsistencyError("mask keeps a dropped element")
        out |= 1 << j
    return out


def elementary_contract(a: Preacycloid, e: Union[int, str]) -> Preacycloid:
    """Contraction at one element, dropping its pair from the ground set.

    For a loop the tope family is untouched. Otherwise the family is the
    quasicontraction at the parallelism class of e; other members of that
    class survive as loops of the result.
    """
    idx = a.ground.index(e) if isinstance(e, str) else e
    if not 0 <= idx < a.ground.size:
        raise ValueError(f"element index {idx} out of range")
    pair = idx % a.ground.n
    new_ground, remap = _drop_pair(a.ground, pair)
    if (a.loops.mask >> idx) & 1:
        masks = a.tope_masks
    else:
        class_of, class_masks = _class_lookup(a)
        cls = RootSet(a.ground, class_masks[class_of[idx]])
        masks = quasicontract(a, cls).tope_masks
    topes = [RootSet(new_ground, _remap_mask(m, remap)) for m in masks]
    return Preacycloid(new_ground, topes)


def simplify(a: Preacycloid) -> Preacycloid:
    return simplify_with_classes(a)[0]


def simplify_with_classes(a: Preacycloid) -> tuple[Preacycloid, tuple[RootSet, ...]]:
    """Quotient by parallelism; drops loops entirely.

    New element k stands for the returned class at position k, the side
    of each involution pair holding the smallest original index. Also the
    second component maps the new positive elements back to those
    classes. Simplifying a simple preacycloid reproduces it exactly when
    its labels are already the default ones.
    """
    classes = parallelism_classes(a)
    loops_mask = a.loops.mask
    n = a.ground.n
    pos_classes = []
    for c in classes:
        if c.mask & loops_mask:
            continue
        lo = (c.mask & -c.mask).bit_length() - 1
        conj = K.involute_mask(c.mask, n)
        lo_conj = (conj & -conj).bit_length() - 1
        if lo < lo_conj:
            pos_classes.append(c)
    if not pos_classes:
        raise ValueError("no non-loop elements to keep")
    n1 = len(pos_classes)
    labels = tuple(a.ground.label((c.mask & -c.mask).bit_length() - 1) for c in pos_classes)
    new_ground = GroundSet(n1, labels)
    new_topes = []
    for m in a.tope_masks:
        out = 0
        for k, c in enumerate(pos_classes):
            if c.mask & ~m == 0:
                out |= 1 << k
            elif K.involute_mask(c.mask, n) & ~m == 0:
                out |= 1 << (k + n1)
            else:
                raise InternalConsistencyError("tope splits a parallelism class")
        new_topes.append(RootSet(new_ground, out))
    return Preacycloid(new_ground, new_topes), tuple(pos_classes)


@dataclass(frozen=True)
class HandaWitness:
    """Replayable failure of the quasicontraction closure.

    path is the chain of contracted classes from the input downward; the
    node it reaches fails wall-crossing either on `pair` or, when pair is
    None, by having no topes at all.
    """

    path: tuple[RootSet, ...]
    pair: Optional[tuple[RootSet, RootSet]]
    node: "Preacycloid"


@dataclass(frozen=True)
class HandaReport:
    is_matroidal: bool
    witness: Optional[HandaWitness]
    node_count: int


def handa_test(a: Preacycloid) -> HandaReport:
    """Acycloid test under all iterated quasicontractions.

    Explores the closure of the input under quasicontraction at
    parallelism classes of non-loops, recomputed at every node, by
    breadth-first search with classes taken in order of smallest member.
    The input itself is node zero. Every node must pass wall-crossing;
    the first failing node in search order is reported with its class
    path. node_count is the number of distinct families visited; the
    search always runs to completion.
    """
    start_key = a.tope_masks
    queue = deque([(a, ())])
    seen = {start_key}
    count = 0
    failure: Optional[HandaWitness] = None
    while queue:
        node, path = queue.popleft()
        count += 1
        ok, pair = check_acycloid(node)
        if not ok and failure is None:
            failure = HandaWitness(path=path, pair=pair, node=node)
        if not node.topes:
            continue
        loops_mask = node.loops.mask
        for cls in parallelism_classes(node):
            if cls.mask & loops_mask:
                continue
            conj = K.involute_mask(cls.mask, node.ground.n)
            if conj < cls.mask:
                continue
            child = quasicontract(node, cls)
            key = child.tope_masks
            if key in seen:
                continue
            seen.add(key)
            queue.append((child, path + (cls,)))
    return HandaReport(is_matroidal=failure is None, witness=failure, node_count=count)


def signed_permutations(n: int):
    """All hyperoctahedral index maps on a ground set with n pairs."""
    for p in itertools.permutations(range(n)):
        for signs in range(1 << n):
            perm = [0] * (2 * n)
            for i in range(n):
                img = p[i] + (n if (signs >> i) & 1 else 0)
                perm[i] = img
                perm[i + n] = img + n if img < n else img - n
            yield tuple(perm)


def canonical_key(a: Preacycloid) -> tuple[int, ...]:
    """Least relabeling of the tope family under signed permutations."""
    best = None
    masks = a.tope_masks
    for perm in signed_permutations(a.ground.n):
        img = tuple(sorted(K.apply_perm_mask(m, perm) for m in masks))
        if best is None or img < best:
            best = img
    return best if best is not None else ()


def preacycloids_isomorphic(a: Preacycloid, b: Preacycloid) -> bool:
    if a.ground.n != b.ground.n:
        return False
    return canonical_key(a) == canonical_key(b)
