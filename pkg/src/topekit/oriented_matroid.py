"""Oriented matroids as closure operators derived from topes or vectors.

The closure of a subset is the union, over all hemispaces (topes with
the loops adjoined), of the intersection of the hemispaces containing
the subset's trace. That formula is the single source of truth here;
the axiom battery, circuits, rank, anti-exchange, minors, and the cone
construction are all expressed against it. Vector configurations get an
independent closure through exact cone membership so the two can be
compared on the same ground set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import _kernels as K
from . import feasibility as F
from .core import GroundSet, RootSet
from .errors import (
    BadPartition,
    CapExceeded,
    DuplicateAfterNegation,
    InternalConsistencyError,
    NotGeometry,
    NotSimple,
    PrerequisiteFailed,
    ZeroVector,
)
from .preacycloid import Preacycloid, simplify_with_classes

TABLE_LIMIT = 16


class OrientedMatroidView:
    """Ground set plus hemispace family, with optional vector data.

    Hemispaces are stored as masks in canonical order. Closure queries
    are memoized; when the ground set has at most 16 elements the full
    closure table is built on first use instead.
    """

    __slots__ = (
        "ground",
        "hemi_masks",
        "_hemi_set",
        "loops",
        "vectors",
        "_memo",
        "_table",
        "_cone_memo",
    )

    def __init__(self, ground: GroundSet, hemispaces: Sequence[RootSet],
                 vectors: Optional[tuple] = None):
        self.ground = ground
        seen = {}
        for h in hemispaces:
            if h.ground != ground:
                raise ValueError("hemispace on a different ground set")
            seen[h.mask] = None
        masks = sorted(seen.keys(), key=lambda m: RootSet(ground, m).sort_key())
        self.hemi_masks = tuple(masks)
        self._hemi_set = frozenset(masks)
        inter = ground.full_mask
        for m in masks:
            inter &= m
        self.loops = RootSet(ground, inter if masks else ground.full_mask)
        self.vectors = vectors
        self._memo: dict[int, int] = {}
        self._table: Optional[list] = None
        self._cone_memo: dict[int, int] = {}

    @property
    def hemispaces(self) -> tuple[RootSet, ...]:
        return tuple(RootSet(self.ground, m) for m in self.hemi_masks)

    @property
    def topes(self) -> tuple[RootSet, ...]:
        lm = self.loops.mask
        return tuple(RootSet(self.ground, m & ~lm) for m in self.hemi_masks)

    def closure_mask(self, mask: int) -> int:
        if self.ground.size <= TABLE_LIMIT:
            if self._table is None:
                self._table = K.closure_table(list(self.hemi_masks), self.ground.n)
            return self._table[mask]
        if mask in self._memo:
            return self._memo[mask]
        out = K.closure_mask(mask, list(self.hemi_masks), self.ground.full_mask)
        self._memo[mask] = out
        return out

    def closure(self, x: RootSet) -> RootSet:
        if x.ground != self.ground:
            raise ValueError("argument on a different ground set")
        return RootSet(self.ground, self.closure_mask(x.mask))

    def hemi_closure_mask(self, mask: int) -> int:
        """Intersection of the hemispaces containing the set."""
        inter = self.ground.full_mask
        for h in self.hemi_masks:
            if mask & ~h == 0:
                inter &= h
        return inter

    def vector_of(self, i: int):
        if self.vectors is None:
            raise ValueError("view carries no vector data")
        n = self.ground.n
        return self.vectors[i] if i < n else F.neg(self.vectors[i - n])

    def __repr__(self) -> str:
        src = "vectors" if self.vectors is not None else "topes"
        return (f"OrientedMatroidView(n={self.ground.n}, "
                f"hemispaces={len(self.hemi_masks)}, from {src})")


def closure_from_topes(a: Preacycloid) -> OrientedMatroidView:
    """Hemispace-formula closure for a tope family; loops are adjoined
    to every tope. An empty family yields the (axiom-breaking) view with
    no hemispaces, kept as a value so the battery can report on it."""
    lm = a.loops.mask
    hemis = [RootSet(a.ground, m | lm) for m in a.tope_masks]
    return OrientedMatroidView(a.ground, hemis)


def cone_matroid(vectors: Sequence, labels: Optional[Sequence[str]] = None) -> OrientedMatroidView:
    """Oriented matroid of a finite vector configuration.

    Element i carries vectors[i], its involute the negation. Topes are
    the sign choices whose vectors are positively independent, decided
    by exact rational Gordan duality. Zero vectors and repeats up to
    negation are rejected; positive parallel multiples are allowed and
    make the result non-simple.
    """
    vecs = tuple(tuple(Fraction(x) for x in v) for v in vectors)
    if not vecs:
        raise ValueError("need at least one vector")
    dim = len(vecs[0])
    for i, v in enumerate(vecs):
        if len(v) != dim:
            raise ValueError("vectors of mixed dimension")
        if all(x == 0 for x in v):
            raise ZeroVector(f"vector {i} is zero")
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if vecs[i] == vecs[j] or vecs[i] == F.neg(vecs[j]):
                raise DuplicateAfterNegation(f"vectors {i} and {j} agree up to sign")
    n = len(vecs)
    if labels is None:
        ground = GroundSet.standard(n)
    else:
        ground = GroundSet(n, tuple(labels))
    hemis = []
    for signs in range(1 << n):
        mask = 0
        chosen = []
        for i in range(n):
            if (signs >> i) & 1:
                mask |= 1 << (i + n)
                chosen.append(F.neg(vecs[i]))
            else:
                mask |= 1 << i
                chosen.append(vecs[i])
        ok, _ = F.positively_independent(chosen)
        if ok:
            hemis.append(RootSet(ground, mask))
    return OrientedMatroidView(ground, hemis, vectors=vecs)


def cone_closure(m: OrientedMatroidView, x: RootSet) -> RootSet:
    """Elements whose vector lies in the cone of the argument's vectors.

    Independent of the hemispace formula; certified by exact Farkas
    certificates underneath and memoized per subset.
    """
    if m.vectors is None:
        raise ValueError("view carries no vector data")
    if x.ground != m.ground:
        raise ValueError("argument on a different ground set")
    if x.mask in m._cone_memo:
        return RootSet(m.ground, m._cone_memo[x.mask])
    gens = [m.vector_of(i) for i in x]
    out = 0
    for e in range(m.ground.size):
        inside, _ = F.in_cone(gens, m.vector_of(e))
        if inside:
            out |= 1 << e
    m._cone_memo[x.mask] = out
    return RootSet(m.ground, out)


def circuits(m: OrientedMatroidView, include_improper: bool = False) -> tuple[RootSet, ...]:
    """Inclusion-minimal sign-consistent sets contained in no tope.

    Proper circuits never touch loops, so the scan runs on the non-loop
    support; this matches restricting to the reduced matroid first and
    lifting back. With include_improper the pairs {e, e*} for every
    non-loop e are appended after the proper ones.
    """
    ground = m.ground
    n = ground.n
    support = ground.full_mask & ~m.loops.mask
    tope_masks = [h & ~m.loops.mask for h in m.hemi_masks]
    candidates = []
    sub = support
    while True:
        x = sub
        if x and K.involute_mask(x, n) & x == 0:
            candidates.append(x)
        if sub == 0:
            break
        sub = (sub - 1) & support
    candidates.sort(key=lambda v: (K.popcount(v), v))
    found: list[int] = []
    for x in candidates:
        if any(x & ~t == 0 for t in tope_masks):
            continue
        if any(c & ~x == 0 for c in found):
            continue
        found.append(x)
    out = [RootSet(ground, c) for c in found]
    out.sort(key=lambda r: r.sort_key())
    if include_improper:
        improper = []
        scan = support & ((1 << n) - 1)
        while scan:
            low = scan & -scan
            scan ^= low
            i = low.bit_length() - 1
            improper.append(RootSet(ground, (1 << i) | (1 << (i + n))))
        out.extend(improper)
    return tuple(out)


@dataclass
class MatroidAxiomReport:
    """Pass/fail per closure axiom with the first witness found.

    mode records whether the subset quantifiers ran exhaustively or over
    a fixed-seed sample.
    """

    passed: bool
    axioms: dict
    witnesses: dict = field(default_factory=dict)
    mode: str = "exhaustive"

    def failing(self) -> list:
        return sorted(k for k, v in self.axioms.items() if not v)


def _axiom_subset_stream(m: OrientedMatroidView, cap: int, samples: int, seed: int,
                         mode: str):
    size = m.ground.size
    if mode == "auto":
        mode = "exhaustive" if size <= cap else "sampled"
    if mode == "exhaustive":
        if size > cap:
            raise CapExceeded(
                f"exhaustive axiom check over 2^{size} subsets exceeds cap 2^{cap}"
            )
        return mode, list(range(1 << size))
    rng = random.Random(seed)
    full = m.ground.full_mask
    picks = {0, full}
    for _ in range(samples):
        picks.add(rng.getrandbits(size) & full)
    return mode, sorted(picks)


def check_matroid_axioms(m: OrientedMatroidView, cap: int = 12, samples: int = 500,
                         seed: int = 0, mode: str = "auto") -> MatroidAxiomReport:
    """Battery for the six closure axioms of an oriented matroid.

    Strict involution on the ground set and finitarity hold by
    construction and are reported as such. The closure-operator axiom
    checks reflexivity, single-element monotonicity (which chains to full
    monotonicity), and idempotence. Exhaustive over all subsets up to the
    cap, after which a fixed-seed sample of subsets is used; requesting
    exhaustive mode above the cap raises CapExceeded.
    """
    mode, subsets = _axiom_subset_stream(m, cap, samples, seed, mode)
    ground = m.ground
    size = ground.size
    n = ground.n
    cx = m.closure_mask
    axioms = {"M1": True, "M2": True, "M3": True, "M4": True, "M5": True, "M6": True}
    witnesses: dict = {}

    def wit(name: str, *parts) -> None:
        if axioms[name]:
            axioms[name] = False
            witnesses[name] = parts

    def rs(mask: int) -> RootSet:
        return RootSet(ground, mask)

    for x in subsets:
        c = cx(x)
        if x & ~c:
            wit("M2", "not-reflexive", rs(x))
        if cx(c) != c:
            wit("M2", "not-idempotent", rs(x))
        if cx(K.involute_mask(x, n)) != K.involute_mask(c, n):
            wit("M4", rs(x))
        for e in range(size):
            bit = 1 << e
            if c & ~cx(x | bit):
                wit("M2", "not-monotone", rs(x), ground.label(e))
            estar = 1 << (e + n if e < n else e - n)
            if (cx(x | estar) >> e) & 1 and not (c >> e) & 1:
                wit("M5", rs(x), ground.label(e))
        for y in range(size):
            ystar_bit = 1 << (y + n if y < n else y - n)
            cy = cx(x | ystar_bit)
            gained = cy & ~c
            scan = gained
            while scan:
                low = scan & -scan
                scan ^= low
                e = low.bit_length() - 1
                estar = 1 << (e + n if e < n else e - n)
                back = cx((x & ~(1 << y)) | estar)
                if not (back >> y) & 1:
                    wit("M6", rs(x), ground.label(e), ground.label(y))
                    break
            if not axioms["M6"]:
                break
        if not all(axioms.values()) and not any(axioms[k] for k in ("M2", "M4", "M5", "M6")):
            break
    return MatroidAxiomReport(
        passed=all(axioms.values()), axioms=axioms, witnesses=witnesses, mode=mode
    )


def is_simple_matroid(m: OrientedMatroidView) -> bool:
    """No loops and every singleton closed."""
    if m.closure_mask(0) != 0:
        return False
    return all(m.closure_mask(1 << e) == 1 << e for e in range(m.ground.size))


def check_anti_exchange(m: OrientedMatroidView, h: RootSet) -> tuple[bool, Optional[tuple]]:
    """Anti-exchange for the restriction of closure to one hemispace.

    Requires a simple matroid (NotSimple otherwise) and h must be one of
    the hemispaces. The two moved points are required to be distinct.
    Returns (False, (X, p, q)) on the first failure: q enters the closure
    of X with p yet p also enters the closure of X with q.
    """
    if not is_simple_matroid(m):
        raise NotSimple("anti-exchange needs a simple matroid")
    if h.mask not in m._hemi_set:
        raise ValueError(f"{h!r} is not a hemispace")
    hc = m.hemi_closure_mask
    hm = h.mask
    sub = hm
    while True:
        x = sub
        cx_x = hc(x)
        outside = hm & ~cx_x
        scan_p = outside
        while scan_p:
            lp = scan_p & -scan_p
            scan_p ^= lp
            p = lp.bit_length() - 1
            cx_xp = hc(x | lp)
            scan_q = outside & cx_xp & ~lp
            while scan_q:
                lq = scan_q & -scan_q
                scan_q ^= lq
                q = lq.bit_length() - 1
                if (hc(x | lq) >> p) & 1:
                    return False, (RootSet(m.ground, x), m.ground.label(p), m.ground.label(q))
        if sub == 0:
            break
        sub = (sub - 1) & hm
    return True, None


def closure_bar_mask(m: OrientedMatroidView, mask: int) -> int:
    """Closure after symmetrizing: the underlying-matroid operator."""
    return m.closure_mask(mask | K.involute_mask(mask, m.ground.n))


def underlying_rank(m: OrientedMatroidView) -> int:
    """Greedy flat-growing rank of the underlying matroid.

    Adds the smallest element outside the current symmetrized flat until
    everything is covered; each step is checked to strictly grow the
    flat.
    """
    size = m.ground.size
    full = m.ground.full_mask
    basis = 0
    flat = closure_bar_mask(m, 0)
    rank = 0
    while flat != full:
        rest = full & ~flat
        e = (rest & -rest).bit_length() - 1
        basis |= 1 << e
        new_flat = closure_bar_mask(m, basis)
        if not (new_flat & ~flat) or not (new_flat >> e) & 1:
            raise InternalConsistencyError("rank greedy failed to grow the flat")
        flat = new_flat
        rank += 1
        if rank > size:
            raise InternalConsistencyError("rank greedy exceeded the ground size")
    return rank


def extreme_elements(m: OrientedMatroidView, h: RootSet) -> RootSet:
    """Elements of a hemispace not spanned by the rest of it.

    Requires a simple matroid (NotGeometry otherwise). The result is
    checked to span the hemispace and to be irredundant, so it is the
    unique minimal spanning subset under anti-exchange.
    """
    if not is_simple_matroid(m):
        raise NotGeometry("extreme elements need a simple matroid")
    if h.mask not in m._hemi_set:
        raise ValueError(f"{h!r} is not a hemispace")
    hm = h.mask
    cx = m.closure_mask
    ex = 0
    scan = hm
    while scan:
        low = scan & -scan
        scan ^= low
        if not (cx(hm & ~low) >> (low.bit_length() - 1)) & 1:
            ex |= low
    if cx(ex) != hm:
        raise InternalConsistencyError("extreme elements do not span their hemispace")
    scan = ex
    while scan:
        low = scan & -scan
        scan ^= low
        if cx(ex & ~low) == hm:
            raise InternalConsistencyError("extreme element set is redundant")
    return RootSet(m.ground, ex)


def associated_geometry(m: OrientedMatroidView) -> tuple[OrientedMatroidView, dict]:
    """Simple quotient by tope-membership parallelism.

    Loops are dropped and each parallelism class becomes one element of
    the new ground set. The map sends old non-loop indices to new
    indices. The result is checked to be simple.
    """
    a = Preacycloid(m.ground, m.topes)
    simple, pos_classes = simplify_with_classes(a)
    view = closure_from_topes(simple)
    if not is_simple_matroid(view):
        raise InternalConsistencyError("parallelism quotient is not simple")
    class_map: dict[int, int] = {}
    n1 = simple.ground.n
    for k, cls in enumerate(pos_classes):
        for i in cls:
            class_map[i] = k
        conj = RootSet(a.ground, K.involute_mask(cls.mask, a.ground.n))
        for i in conj:
            class_map[i] = k + n1
    return view, class_map


def is_simplicial(m: OrientedMatroidView) -> tuple[bool, Optional[tuple]]:
    """Every hemispace of the associated geometry has exactly rank many
    extreme elements. Witness is (hemispace, extreme count, rank) in the
    geometry's ground set. A view in which every element is a loop has
    rank zero and counts as simplicial vacuously; it has no parallelism
    quotient to inspect."""
    if m.closure_mask(0) == m.ground.full_mask:
        return True, None
    geo, _ = associated_geometry(m)
    r = underlying_rank(geo)
    for h in geo.hemispaces:
        ex = extreme_elements(geo, h)
        if len(ex) != r:
            return False, (h, len(ex), r)
    return True, None


def _sub_ground(ground: GroundSet, b_mask: int) -> tuple[GroundSet, list[int]]:
    pairs = [i for i in range(ground.n) if (b_mask >> i) & 1]
    labels = tuple(ground.base_labels[i] for i in pairs)
    sub = GroundSet(len(pairs), labels)
    remap = [-1] * ground.size
    for k, i in enumerate(pairs):
        remap[i] = k
        remap[i + ground.n] = k + sub.n
    return sub, remap


def minor(m: OrientedMatroidView, a: RootSet, b: RootSet,
          verify: bool = True) -> OrientedMatroidView:
    """Minor by contracting A and restricting to B.

    A and B must be disjoint and involution closed (BadPartition
    otherwise). The minor closure of X inside B is cx(A with X) cut to B.
    Restrictions take hemispace traces directly; with nonempty A the
    hemispaces are recovered as the closed sign choices over the minor's
    non-loop support. When verify is set and the result is small enough
    the axiom battery re-runs on it.
    """
    ground = m.ground
    n = ground.n
    am, bm = a.mask, b.mask
    if am & bm:
        raise BadPartition("contracted and kept parts overlap")
    if K.involute_mask(am, n) != am or K.involute_mask(bm, n) != bm:
        raise BadPartition("both parts must be involution closed")
    sub, remap = _sub_ground(ground, bm)

    if am == 0:
        hemis = {_remap(h & bm, remap) for h in m.hemi_masks}
        out = OrientedMatroidView(sub, [RootSet(sub, h) for h in hemis])
    else:
        def d(mask_in_b: int) -> int:
            return m.closure_mask(am | mask_in_b) & bm
        loops2 = d(0)
        support = bm & ~loops2
        pairs = []
        scan = support & ((1 << n) - 1)
        while scan:
            low = scan & -scan
            scan ^= low
            pairs.append(low.bit_length() - 1)
        hemis = set()
        for signs in range(1 << len(pairs)):
            cand = loops2
            for k, i in enumerate(pairs):
                cand |= 1 << (i + n) if (signs >> k) & 1 else 1 << i
            if d(cand) == cand:
                hemis.add(_remap(cand, remap))
        out = OrientedMatroidView(sub, [RootSet(sub, h) for h in hemis])

    if verify and sub.size <= 12:
        report = check_matroid_axioms(out)
        if not report.passed:
            raise InternalConsistencyError(
                f"minor fails axioms {report.failing()}; "
                "pass verify=False to slice a non-matroidal view"
            )
    return out


def _remap(mask: int, remap: list[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        j = remap[low.bit_length() - 1]
        if j < 0:
            raise InternalConsistencyError("mask keeps a dropped element")
        out |= 1 << j
    return out


def restriction(m: OrientedMatroidView, b: RootSet, verify: bool = True) -> OrientedMatroidView:
    return minor(m, RootSet(m.ground, 0), b, verify=verify)


def check_embedding(r, mp: OrientedMatroidView, f) -> bool:
    """Decide whether the root map f embeds the groupoid's root system
    into the matroid mp.

    f maps root indices of the groupoid's shared ground set to ground
    indices of mp, one per root; it must be injective and send the
    involute of a root to the involute of its image. The groupoid has
    to satisfy the simple-roots hypotheses (finite, connected, simply
    connected, real, compressed, hereditarily preprincipal, antipodal),
    enforced up front.

    The embedding condition: at every object, the mp-closure of the
    images of the simple roots, cut back to the image of the root
    system, is exactly the image of the positive system. Returns False
    with no further work when that fails somewhere. When it holds, the
    closure of every subset in the groupoid's own tope matroid must
    match the mp-closure of its image cut to the root image; any
    mismatch means the realization machinery is broken, so it raises
    instead of returning.
    """
    from .sgs import check_properties, pa_of, simple_roots

    report = check_properties(r, hereditary=True)
    for flag in ("finite", "connected", "simply_connected", "real",
                 "compressed", "antipodal", "hereditarily_preprincipal"):
        if not report.flags.get(flag, False):
            raise PrerequisiteFailed(flag, f"witness {report.witnesses.get(flag)!r}")
    if len(set(r.grounds.values())) != 1:
        raise ValueError("embedding needs a single shared ground set")
    ground = r.grounds[r.objects[0]]
    size, n = ground.size, ground.n

    if isinstance(f, dict):
        img = [f[i] for i in range(size)]
    else:
        img = list(f)
    if len(img) != size:
        raise ValueError("need one image index per root")
    if len(set(img)) != size:
        raise ValueError("root map is not injective")
    mpn = mp.ground.n
    for j in img:
        if not 0 <= j < mp.ground.size:
            raise ValueError(f"image index {j} outside the target ground")
    for i in range(n):
        mirrored = img[i] + mpn if img[i] < mpn else img[i] - mpn
        if img[i + n] != mirrored:
            raise ValueError(f"root {i} does not map involute to involute")

    f_mask = 0
    for j in img:
        f_mask |= 1 << j

    def push(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            mask ^= low
            out |= 1 << img[low.bit_length() - 1]
        return out

    for a in r.objects:
        pi = simple_roots(r, a)
        got = mp.closure_mask(push(pi.mask)) & f_mask
        if got != push(r.positives[a]):
            return False

    view = closure_from_topes(pa_of(r))
    for x in range(1 << size):
        want = push(view.closure_mask(x))
        got = mp.closure_mask(push(x)) & f_mask
        if want != got:
            raise InternalConsistencyError(
                f"embedding holds but closures disagree on mask {x:#x}"
            )
    return True
