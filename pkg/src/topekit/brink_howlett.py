"""Generalized Brink-Howlett construction: the box groupoid of a signed
groupoid set, its components, and the contraction calculus built on it.

A box object is a pair (a, X) of an object and a finite set of marked
morphisms into it. A morphism of the underlying groupoid connects two
box objects when it carries every marked inversion set onto a marked
inversion set on the other side; faithfulness makes that pairing unique
when it exists. Hypercontraction materializes the component of a box
object as a standalone signed groupoid set whose marks have turned
imaginary, and quasicontraction iterates the one-mark case over atomic
morphisms, which is the groupoid-level mirror of the Handa test on tope
families.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from . import _kernels as K
from .core import RootSet
from .errors import InternalConsistencyError, PrerequisiteFailed, TopeNotFound
from .preacycloid import Preacycloid, canonical_key
from .sgs import (
    Mor,
    PropertyReport,
    SignedGroupoidSet,
    _okey,
    check_properties,
    compose,
    inverse,
    is_faithful,
    pa_of,
    weak_order,
)
from .squares import is_square


@dataclass(frozen=True)
class BoxObject:
    """Object of the box groupoid: a base object with marked morphisms
    into it. The marks are stored as a frozenset; codomains are checked
    at construction."""

    base: object
    marks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "marks", frozenset(self.marks))
        for g in self.marks:
            if not isinstance(g, Mor):
                raise TypeError(f"mark {g!r} is not a morphism")
            if g.dst != self.base:
                raise ValueError(f"mark {g!r} does not end at {self.base!r}")

    def sort_key(self):
        return (_okey(self.base),
                tuple(sorted(m.sort_key() for m in self.marks)))

    def __repr__(self) -> str:
        inner = ", ".join(repr(m) for m in sorted(self.marks, key=Mor.sort_key))
        return f"BoxObject({self.base!r}, marks=[{inner}])"


@dataclass(frozen=True)
class BoxMorphism:
    """Underlying morphism together with its mark pairing, kept as
    (mark, image) pairs sorted by the mark."""

    underlying: Mor
    pairing: tuple

    def sort_key(self):
        return self.underlying.sort_key()


def _as_box_object(r: SignedGroupoidSet, node) -> BoxObject:
    """Accept a BoxObject, a bare object (empty marks), a morphism
    (codomain plus that single mark), or a (base, marks) pair."""
    if isinstance(node, BoxObject):
        out = node
    elif isinstance(node, Mor):
        out = BoxObject(node.dst, frozenset([node]))
    elif node in r.grounds:
        out = BoxObject(node, frozenset())
    elif isinstance(node, tuple) and len(node) == 2:
        out = BoxObject(node[0], frozenset(node[1]))
    else:
        raise ValueError(f"cannot read {node!r} as a box object")
    if out.base not in r.grounds:
        raise ValueError(f"unknown base object {out.base!r}")
    for g in out.marks:
        if g not in r.mors:
            raise ValueError(f"mark {g!r} is not a morphism of the groupoid")
    return out


def _require_faithful(r: SignedGroupoidSet) -> None:
    ok, wit = is_faithful(r)
    if not ok:
        raise PrerequisiteFailed("faithful", f"witness {wit!r}")


def _mask_index(r: SignedGroupoidSet) -> dict:
    """Per object, inversion mask -> the unique morphism in with that
    mask. A collision here means distinct morphisms into one object
    share an inversion set, which faithfulness rules out."""
    idx: dict = {}
    for b in r.objects:
        table: dict[int, Mor] = {}
        for h in r.at(b):
            mk = r.inversion_mask(h)
            other = table.get(mk)
            if other is not None:
                raise InternalConsistencyError(
                    f"{other!r} and {h!r} share an inversion set at {b!r}"
                )
            table[mk] = h
        idx[b] = table
    return idx


def _lift(r: SignedGroupoidSet, index: dict, f: Mor,
          marks: Iterable[Mor]) -> Optional[tuple]:
    """Pair every mark with the morphism carrying its image inversion
    set, or None when some image mask is not an inversion set at f's
    target."""
    out = []
    for g in sorted(marks, key=Mor.sort_key):
        h = index[f.dst].get(r.act(f, r.inversion_mask(g)))
        if h is None:
            return None
        out.append((g, h))
    return tuple(out)


def box_hom(r: SignedGroupoidSet, src, dst) -> tuple:
    """All box morphisms between two box objects.

    A morphism f of the carrier qualifies when its mark pairing exists
    and lands exactly on the destination marks. Each pair is re-verified
    to form a square with f, which the construction promises. On a
    trivial-action carrier the positive-system criterion is evaluated
    as well and its answer must agree with the generic scan.
    """
    _require_faithful(r)
    src = _as_box_object(r, src)
    dst = _as_box_object(r, dst)
    index = _mask_index(r)
    out = []
    for f in r.hom(src.base, dst.base):
        pairing = _lift(r, index, f, src.marks)
        if pairing is None:
            continue
        if frozenset(h for _, h in pairing) != dst.marks:
            continue
        for g, h in pairing:
            z = compose(compose(inverse(h), f), g)
            if not is_square(r, f, g, h, z):
                raise InternalConsistencyError(
                    f"pairing of {g!r} along {f!r} does not form a square"
                )
        out.append(BoxMorphism(underlying=f, pairing=pairing))
    out.sort(key=BoxMorphism.sort_key)
    if r.is_trivial_action():
        short = _trivial_box_hom(r, src, dst)
        if tuple(bm.underlying for bm in out) != tuple(
                bm.underlying for bm in short):
            raise InternalConsistencyError(
                "positive-system criterion disagrees with the generic scan"
            )
    return tuple(out)


def _trivial_box_hom(r: SignedGroupoidSet, src: BoxObject,
                     dst: BoxObject) -> tuple:
    """Box morphisms on a trivial-action carrier, by the positive-system
    criterion: the unique underlying morphism qualifies when every mark
    inversion set sits inside the target positives and flipping it there
    lands on some object's positive system."""
    homs = r.hom(src.base, dst.base)
    if not homs:
        return ()
    if len(homs) != 1:
        raise InternalConsistencyError(
            "trivial action with parallel morphisms between two objects"
        )
    f = homs[0]
    b = dst.base
    bpos = r.positives[b]
    n = r.grounds[b].n
    images = []
    for g in sorted(src.marks, key=Mor.sort_key):
        mg = r.inversion_mask(g)
        if mg & ~bpos:
            return ()
        upos = (bpos & ~mg) | K.involute_mask(mg, n)
        candidates = [u for u in r.objects
                      if r.positives[u] == upos and r.hom(u, b)]
        if not candidates:
            return ()
        if len(candidates) > 1:
            raise InternalConsistencyError(
                "two objects share a positive system on a faithful carrier"
            )
        h = r.hom(candidates[0], b)[0]
        if r.inversion_mask(h) != mg:
            raise InternalConsistencyError(
                "flipped positive system does not invert the mark's roots"
            )
        images.append(h)
    if frozenset(images) != dst.marks:
        return ()
    pairing = tuple(zip(sorted(src.marks, key=Mor.sort_key), images))
    return (BoxMorphism(underlying=f, pairing=pairing),)


def hypercontract(r: SignedGroupoidSet, node) -> SignedGroupoidSet:
    """Component of a box object, materialized as its own groupoid.

    Breadth-first from the given node: every morphism out of a base
    whose mark pairing exists is an edge, and the pairing's image set is
    the neighboring node's marks. Objects keep the ground set and
    positives of their base, so the marked inversion sets drop out of
    the real span. Accepts a morphism g as shorthand for the node
    (codomain of g, {g}), and a bare object for empty marks.

    The imaginary growth laws are verified on the way out: every mark's
    inversion set must land inside the node's imaginary positives, and
    for singleton marks on an antipodal carrier the imaginary positives
    must be exactly the mark's inversion set joined with the base
    imaginaries, with the component staying antipodal.
    """
    _require_faithful(r)
    start = _as_box_object(r, node)
    index = _mask_index(r)
    seen = {start}
    order = [start]
    queue = deque([start])
    edges = []
    while queue:
        cur = queue.popleft()
        for b in r.objects:
            for f in r.hom(cur.base, b):
                pairing = _lift(r, index, f, cur.marks)
                if pairing is None:
                    continue
                nxt = BoxObject(b, frozenset(h for _, h in pairing))
                edges.append((cur, nxt, f))
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
    grounds = {obj: r.grounds[obj.base] for obj in order}
    positives = {obj: r.positives[obj.base] for obj in order}
    mors = [Mor(s, d, f.perm) for s, d, f in edges]
    out = SignedGroupoidSet(grounds, positives, mors)
    _verify_imaginary_growth(r, out)
    return out


def _verify_imaginary_growth(r: SignedGroupoidSet,
                             out: SignedGroupoidSet) -> None:
    antipodal: Optional[bool] = None
    for obj in out.objects:
        marks_union = 0
        for g in obj.marks:
            marks_union |= r.inversion_mask(g)
        im = out.imaginary_positive_mask(obj)
        if marks_union & ~im:
            raise InternalConsistencyError(
                f"mark inversion sets at {obj!r} stay real after contraction"
            )
        if len(obj.marks) != 1:
            continue
        if antipodal is None:
            antipodal = check_properties(r).flags["antipodal"]
        if not antipodal:
            continue
        (g,) = tuple(obj.marks)
        fg = r.inversion_mask(g)
        base_im = r.imaginary_positive_mask(obj.base)
        if fg & base_im:
            raise InternalConsistencyError(
                f"mark {g!r} was already imaginary at its base"
            )
        if im != (fg | base_im):
            raise InternalConsistencyError(
                f"imaginary positives at {obj!r} are not the mark's roots "
                "plus the base imaginaries"
            )
        if weak_order(out, obj).top() is None:
            raise InternalConsistencyError(
                f"one-mark contraction of an antipodal carrier lost its "
                f"longest element at {obj!r}"
            )


def hypercontract_topes(a: Preacycloid, h, marks) -> tuple:
    """Tope-level contraction: shadow matching against a base tope.

    For base tope H and marked topes X, collect U = {H minus the
    support of K, signwise: H intersected with each mark's negation},
    keep the topes whose own shadow family covers U, strip the common
    part of the survivors, and return what is left. Total as an
    operation; the result is a valid tope family of the contracted kind
    whenever the input comes from a simplicial oriented matroid, but no
    check is run here.
    """
    ground = a.ground
    n = ground.n
    hmask = h.mask if isinstance(h, RootSet) else int(h)
    if not a.is_tope(hmask):
        raise TopeNotFound(f"base {RootSet(ground, hmask)!r} is not a tope")
    mark_masks = []
    for k in marks:
        km = k.mask if isinstance(k, RootSet) else int(k)
        if not a.is_tope(km):
            raise TopeNotFound(f"mark {RootSet(ground, km)!r} is not a tope")
        mark_masks.append(km)
    u = {hmask & K.involute_mask(km, n) for km in mark_masks}
    negated = [K.involute_mask(t, n) for t in a.tope_masks]
    kept = []
    for fm in a.tope_masks:
        if u <= {fm & neg for neg in negated}:
            kept.append(fm)
    if hmask not in kept:
        raise InternalConsistencyError(
            "the base tope fell out of its own contraction"
        )
    common = ground.full_mask
    for fm in kept:
        common &= fm
    out = sorted({fm & ~common for fm in kept},
                 key=lambda m: RootSet(ground, m).sort_key())
    return tuple(RootSet(ground, m) for m in out)


@dataclass(frozen=True)
class QuasiNode:
    """One quasicontraction, reached by contracting the listed inversion
    sets in order starting from a component of the input."""

    path: tuple
    sgs: SignedGroupoidSet
    preprincipal: bool
    witness: Optional[tuple]

    def report(self) -> PropertyReport:
        return check_properties(self.sgs)


class QuasicontractionTree(NamedTuple):
    verdict: bool
    witness: Optional[tuple]
    nodes: tuple


_raw_counter = 0


def _signature(s: SignedGroupoidSet):
    """Isomorphism signature of a quasicontraction node.

    Nodes that project to a tope family are keyed by its least signed
    relabeling; nodes that do not (no antipode, say) get a fresh key
    each, trading dedup for safety.
    """
    global _raw_counter
    try:
        pa = pa_of(s)
    except PrerequisiteFailed:
        _raw_counter += 1
        return ("raw", _raw_counter)
    return ("pa", pa.ground.n, canonical_key(pa))


def quasicontraction_tree(r: SignedGroupoidSet) -> QuasicontractionTree:
    """Closure of a groupoid under elementary quasicontractions.

    Roots are the components of the input; a child contracts its parent
    at one atomic morphism, with atoms recomputed at every node since
    contraction does not preserve atomicity. Nodes are deduplicated by
    isomorphism signature. The verdict is whether every node is
    preprincipal; the witness pairs the contraction path of the first
    failure with the flag's own counterexample. The search always runs
    the whole tree.
    """
    _require_faithful(r)
    seen_keys = set()
    queue: deque = deque()
    for comp in r.components():
        root = hypercontract(r, BoxObject(comp[0], frozenset()))
        key = _signature(root)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        queue.append((root, ()))
    nodes = []
    verdict = True
    witness = None
    while queue:
        s, path = queue.popleft()
        rep = check_properties(s)
        pre = rep.flags["preprincipal"]
        nodes.append(QuasiNode(path=path, sgs=s, preprincipal=pre,
                               witness=rep.witnesses.get("preprincipal")))
        if not pre and verdict:
            verdict = False
            witness = (path, rep.witnesses.get("preprincipal"))
        atoms = []
        for a in s.objects:
            atoms.extend(weak_order(s, a).atoms())
        atoms.sort(key=Mor.sort_key)
        for atom in atoms:
            child = hypercontract(s, atom)
            key = _signature(child)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            step = RootSet(s.grounds[atom.dst], s.inversion_mask(atom))
            queue.append((child, path + (step,)))
    return QuasicontractionTree(verdict, witness, tuple(nodes))
