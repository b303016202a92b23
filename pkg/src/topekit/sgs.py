"""Signed groupoid sets: groupoids acting on signed root tables.

Every object carries a ground set with involution and a chosen positive
half; morphisms are involution-equivariant index bijections between the
grounds of their endpoints. The inversion set of a morphism g into a is
the set of positive roots at a that g pulls back to negative roots, and
almost everything else here (weak orders, antipodes, dominance,
compression, the passage to tope families and back) is derived from
those sets.

Morphisms are identified by source, target, and permutation, so parallel
morphisms with identical action collapse; the constructions that could
be damaged by that (real compression of an unfaithful input) check and
refuse loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _kernels as K
from . import feasibility as F
from .core import GroundSet, RootSet
from .errors import (
    AxiomViolation,
    BadLoopSplit,
    EmptyTopeFamily,
    GroupCapExceeded,
    InternalConsistencyError,
    NotAntipodal,
    NotComposable,
    NotFaithful,
    NotNegationClosed,
    PrerequisiteFailed,
)
from .oriented_matroid import closure_from_topes, extreme_elements
from .posets import Poset, jop_holds
from .preacycloid import Preacycloid, check_preacycloid

GROUP_CAP = 16384


def _okey(x):
    """Total order key over the object kinds used as groupoid objects."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(_okey(v) for v in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted((_okey(v) for v in x))))
    sk = getattr(x, "sort_key", None)
    if sk is not None:
        return (4, type(x).__name__, sk())
    raise TypeError(f"unsupported object key {x!r}")


@dataclass(frozen=True)
class Mor:
    """A morphism: an index permutation from the ground of src to the
    ground of dst. perm[i] is the image index of root i."""

    src: object
    dst: object
    perm: tuple

    def sort_key(self):
        return (_okey(self.src), _okey(self.dst), self.perm)

    def is_identity(self) -> bool:
        return self.src == self.dst and all(p == i for i, p in enumerate(self.perm))

    def __repr__(self) -> str:
        return f"Mor({self.src!r}->{self.dst!r}, {self.perm})"


def compose(f: Mor, g: Mor) -> Mor:
    """f after g."""
    if g.dst != f.src:
        raise NotComposable(f"cannot compose {f!r} after {g!r}")
    return Mor(g.src, f.dst, tuple(f.perm[i] for i in g.perm))


def inverse(m: Mor) -> Mor:
    inv = [0] * len(m.perm)
    for i, p in enumerate(m.perm):
        inv[p] = i
    return Mor(m.dst, m.src, tuple(inv))


class SignedGroupoidSet:
    """Concrete tables: grounds and positive systems per object, plus a
    finite morphism set closed under identities, inverses, composition.
    """

    def __init__(self, grounds: dict, positives: dict, morphisms: Iterable[Mor],
                 validate: bool = True):
        self.grounds = dict(grounds)
        self.positives = dict(positives)
        self.mors = frozenset(morphisms)
        self.objects = tuple(sorted(self.grounds.keys(), key=_okey))
        self._hom: dict = {}
        self._at: dict = {}
        for m in self.mors:
            self._hom.setdefault((m.src, m.dst), []).append(m)
            self._at.setdefault(m.dst, []).append(m)
        for key in self._hom:
            self._hom[key].sort(key=Mor.sort_key)
        for key in self._at:
            self._at[key].sort(key=Mor.sort_key)
        self._inv_mask: dict[Mor, int] = {}
        self._posets: dict = {}
        self._reports: dict = {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        if set(self.positives.keys()) != set(self.grounds.keys()):
            raise ValueError("positives and grounds disagree on objects")
        for a, g in self.grounds.items():
            pos = self.positives[a]
            if not K.is_half_set_mask(pos, g.n):
                raise ValueError(f"positive system at {a!r} is not a half set")
        for m in self.mors:
            if m.src not in self.grounds or m.dst not in self.grounds:
                raise ValueError(f"{m!r} touches an unknown object")
            gs, gd = self.grounds[m.src], self.grounds[m.dst]
            if len(m.perm) != gs.size or gs.size != gd.size:
                raise ValueError(f"{m!r} has a perm of the wrong size")
            if sorted(m.perm) != list(range(gs.size)):
                raise ValueError(f"{m!r} is not a bijection")
            n = gs.n
            for i in range(gs.size):
                j = i + n if i < n else i - n
                pi = m.perm[i]
                if m.perm[j] != (pi + n if pi < n else pi - n):
                    raise ValueError(f"{m!r} does not respect the involution")
        for a in self.objects:
            if self.identity(a) not in self.mors:
                raise ValueError(f"missing identity at {a!r}")
        for m in self.mors:
            if inverse(m) not in self.mors:
                raise ValueError(f"missing inverse of {m!r}")
        by_src: dict = {}
        for m in self.mors:
            by_src.setdefault(m.src, []).append(m)
        for g in self.mors:
            for f in by_src.get(g.dst, ()):
                if compose(f, g) not in self.mors:
                    raise ValueError(f"composition of {f!r} after {g!r} escapes")

    def ground(self, a) -> GroundSet:
        return self.grounds[a]

    def identity(self, a) -> Mor:
        return Mor(a, a, tuple(range(self.grounds[a].size)))

    def hom(self, a, b) -> tuple:
        return tuple(self._hom.get((a, b), ()))

    def at(self, a) -> tuple:
        """All morphisms with codomain a, in deterministic order."""
        return tuple(self._at.get(a, ()))

    def act(self, m: Mor, mask: int) -> int:
        return K.apply_perm_mask(mask, m.perm)

    def inversion_mask(self, m: Mor) -> int:
        got = self._inv_mask.get(m)
        if got is None:
            neg_src = K.involute_mask(self.positives[m.src], self.grounds[m.src].n)
            got = self.positives[m.dst] & self.act(m, neg_src)
            self._inv_mask[m] = got
        return got

    def inversion_set(self, m: Mor) -> RootSet:
        return RootSet(self.grounds[m.dst], self.inversion_mask(m))

    def real_positive_mask(self, a) -> int:
        out = 0
        for m in self.at(a):
            out |= self.inversion_mask(m)
        return out

    def imaginary_positive_mask(self, a) -> int:
        return self.positives[a] & ~self.real_positive_mask(a)

    def is_trivial_action(self) -> bool:
        return all(all(p == i for i, p in enumerate(m.perm)) for m in self.mors)

    def components(self) -> tuple:
        """Connected components as sorted object tuples."""
        parent = {a: a for a in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self.mors:
            ra, rb = find(m.src), find(m.dst)
            if ra != rb:
                parent[ra] = rb
        groups: dict = {}
        for a in self.objects:
            groups.setdefault(find(a), []).append(a)
        comps = [tuple(sorted(g, key=_okey)) for g in groups.values()]
        comps.sort(key=lambda c: _okey(c[0]))
        return tuple(comps)

    def __repr__(self) -> str:
        return (f"SignedGroupoidSet(objects={len(self.objects)}, "
                f"morphisms={len(self.mors)})")


def trivial_action_sgs(ground: GroundSet, positive_masks: Iterable[int],
                       validate: bool = True) -> SignedGroupoidSet:
    """One object per positive system, a single identity-action morphism
    in each direction. Object keys are the masks themselves."""
    masks = sorted(set(positive_masks))
    if not masks:
        raise ValueError("need at least one positive system")
    idperm = tuple(range(ground.size))
    grounds = {m: ground for m in masks}
    positives = {m: m for m in masks}
    mors = [Mor(a, b, idperm) for a in masks for b in masks]
    return SignedGroupoidSet(grounds, positives, mors, validate=validate)


def group_action_sgs(ground: GroundSet, positive_mask: int,
                     perms: Iterable[tuple], obj: object = "pt",
                     validate: bool = False) -> SignedGroupoidSet:
    """Single-object groupoid from a permutation group on the roots."""
    mors = [Mor(obj, obj, tuple(p)) for p in perms]
    return SignedGroupoidSet({obj: ground}, {obj: positive_mask}, mors,
                             validate=validate)


def sgs_from_preacycloid(a: Preacycloid, l_plus: Optional[RootSet] = None) -> SignedGroupoidSet:
    """Tope family to groupoid: one object per tope, trivial action,
    positives are the tope with a chosen half of the loops adjoined.

    The loop split defaults to the positive-index side of each loop
    pair. A split that is not a strict half of the loops raises
    BadLoopSplit; an empty family raises EmptyTopeFamily.
    """
    if not a.topes:
        raise EmptyTopeFamily("no topes to build objects from")
    ground = a.ground
    loops_mask = a.loops.mask
    if l_plus is None:
        lp = loops_mask & ((1 << ground.n) - 1)
    else:
        if l_plus.ground != ground:
            raise BadLoopSplit("loop split on a different ground set")
        lp = l_plus.mask
        if lp & ~loops_mask:
            raise BadLoopSplit("split contains non-loops")
        if lp & K.involute_mask(lp, ground.n):
            raise BadLoopSplit("split meets its own involute")
        if (lp | K.involute_mask(lp, ground.n)) != loops_mask:
            raise BadLoopSplit("split does not cover the loops")
    return trivial_action_sgs(ground, [m | lp for m in a.tope_masks])


def weak_order(r: SignedGroupoidSet, a) -> Poset:
    """Morphisms into a ordered by inversion-set containment.

    Duplicate inversion sets make containment a preorder only; the first
    duplicated pair is raised as NotFaithful.
    """
    if a in r._posets:
        return r._posets[a]
    mors = r.at(a)
    seen: dict[int, Mor] = {}
    for m in mors:
        mask = r.inversion_mask(m)
        if mask in seen:
            raise NotFaithful(seen[mask], m)
        seen[mask] = m
    poset = Poset(mors, lambda g, h: r.inversion_mask(g) & ~r.inversion_mask(h) == 0)
    r._posets[a] = poset
    return poset


def is_faithful(r: SignedGroupoidSet) -> tuple[bool, Optional[tuple]]:
    """Empty inversion set forces an identity; by closure this is the
    same as injectivity of inversion sets on every hom set."""
    for m in sorted(r.mors, key=Mor.sort_key):
        if r.inversion_mask(m) == 0 and not m.is_identity():
            return False, (m,)
    return True, None


@dataclass
class PropertyReport:
    """Flag battery outcome; witnesses hold the first counterexample
    found for each failing flag, in a printable form."""

    flags: dict
    witnesses: dict

    def to_jsonable(self) -> dict:
        return {
            "flags": dict(self.flags),
            "witnesses": {k: repr(v) for k, v in self.witnesses.items()},
        }


def _simples(r: SignedGroupoidSet) -> list[Mor]:
    return [m for m in sorted(r.mors, key=Mor.sort_key)
            if K.popcount(r.inversion_mask(m)) == 1]


def _word_lengths(r: SignedGroupoidSet, generators: Sequence[Mor]) -> dict:
    """BFS word length from the identities, composing generators on the
    left; unreachable morphisms are absent from the result."""
    dist: dict[Mor, int] = {}
    frontier = []
    for a in r.objects:
        ident = r.identity(a)
        if ident in r.mors:
            dist[ident] = 0
            frontier.append(ident)
    by_src: dict = {}
    for s in generators:
        by_src.setdefault(s.src, []).append(s)
    while frontier:
        nxt = []
        for m in frontier:
            for s in by_src.get(m.dst, ()):
                w = compose(s, m)
                if w not in dist:
                    dist[w] = dist[m] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def dominance_and_parallelism(r: SignedGroupoidSet, a) -> tuple[tuple, tuple]:
    """Dominance preorder and its symmetrization at one object.

    Root i dominates nothing more than root j (i below j) when every
    morphism into a pulling j back to a negative root also does so to i.
    Returns (below, classes): below[i] is the mask of roots j with
    i below j, and classes partitions all roots by equal profile.
    """
    ground = r.grounds[a]
    size = ground.size
    mors = r.at(a)
    pullbacks = []
    for m in mors:
        inv_perm = inverse(m).perm
        neg_src = K.involute_mask(r.positives[m.src], r.grounds[m.src].n)
        pullbacks.append((inv_perm, neg_src))
    profiles = []
    for i in range(size):
        prof = 0
        for k, (inv_perm, neg_src) in enumerate(pullbacks):
            if (neg_src >> inv_perm[i]) & 1:
                prof |= 1 << k
        profiles.append(prof)
    below = []
    for i in range(size):
        mask = 0
        for j in range(size):
            if profiles[j] & ~profiles[i] == 0:
                mask |= 1 << j
        below.append(mask)
    groups: dict[int, int] = {}
    for i in range(size):
        groups[profiles[i]] = groups.get(profiles[i], 0) | (1 << i)
    class_masks = sorted(groups.values(), key=lambda m: (m & -m).bit_length())
    classes = tuple(RootSet(ground, m) for m in class_masks)
    return tuple(below), classes


def check_properties(r: SignedGroupoidSet, hereditary: bool = False) -> PropertyReport:
    """Flag battery over the whole groupoid.

    Lattice-theoretic flags (antipodal, complete, rootoidal_jop,
    preprincipal, principal) presuppose faithfulness; when that fails
    they are reported False with the faithfulness witness. The
    hereditarily_preprincipal flag walks the full quasicontraction
    closure and is only computed on request.
    """
    cache_key = bool(hereditary)
    if cache_key in r._reports:
        return r._reports[cache_key]
    flags: dict = {}
    witnesses: dict = {}

    faithful, fwit = is_faithful(r)
    flags["faithful"] = faithful
    if not faithful:
        witnesses["faithful"] = fwit

    flags["finite"] = True

    comps = r.components()
    flags["connected"] = len(comps) == 1
    if not flags["connected"]:
        witnesses["connected"] = (comps[0][0], comps[1][0])

    flags["simply_connected"] = True
    for a in r.objects:
        loops_here = [m for m in r.hom(a, a) if not m.is_identity()]
        if loops_here:
            flags["simply_connected"] = False
            witnesses["simply_connected"] = (a, loops_here[0])
            break

    flags["real"] = True
    for a in r.objects:
        im = r.imaginary_positive_mask(a)
        if im:
            flags["real"] = False
            witnesses["real"] = (a, RootSet(r.grounds[a], im))
            break

    flags["compressed"] = True
    for a in r.objects:
        _, classes = dominance_and_parallelism(r, a)
        fat = [c for c in classes if len(c) > 1]
        if fat:
            flags["compressed"] = False
            witnesses["compressed"] = (a, fat[0])
            break

    if not faithful:
        for name in ("antipodal", "complete", "rootoidal_jop",
                     "atomically_generated", "preprincipal", "principal"):
            flags[name] = False
            witnesses[name] = ("requires faithful",) + fwit
    else:
        flags["antipodal"] = True
        flags["complete"] = True
        flags["rootoidal_jop"] = True
        for a in r.objects:
            poset = weak_order(r, a)
            if poset.top() is None:
                flags["antipodal"] = False
                witnesses.setdefault("antipodal", (a,))
            ok, wit = poset.is_lattice()
            if not ok:
                flags["complete"] = False
                witnesses.setdefault("complete", (a,) + wit)
            ok, wit = poset.has_all_pairwise_meets()
            if not ok:
                flags["rootoidal_jop"] = False
                witnesses.setdefault("rootoidal_jop", (a, "no-meet") + wit)
                continue
            ok, wit = jop_holds(
                poset, lambda g, h: r.inversion_mask(g) & r.inversion_mask(h) == 0
            )
            if not ok:
                flags["rootoidal_jop"] = False
                witnesses.setdefault("rootoidal_jop", (a, "jop") + wit)

        atomics: list[Mor] = []
        for a in r.objects:
            atomics.extend(weak_order(r, a).atoms())
        gen = atomics + [inverse(s) for s in atomics]
        reach = _word_lengths(r, gen)
        flags["atomically_generated"] = len(reach) == len(r.mors)
        if not flags["atomically_generated"]:
            missing = sorted((m for m in r.mors if m not in reach), key=Mor.sort_key)
            witnesses["atomically_generated"] = (missing[0],)

        flags["preprincipal"] = True
        atomic_at: dict = {}
        for s in atomics:
            atomic_at.setdefault(s.dst, []).append(s)
        for a in r.objects:
            for s in atomic_at.get(a, ()):
                smask = r.inversion_mask(s)
                for g in r.at(a):
                    gmask = r.inversion_mask(g)
                    if smask & ~gmask and smask & gmask:
                        flags["preprincipal"] = False
                        witnesses.setdefault("preprincipal", (a, s, g))
        simples = _simples(r)
        sdist = _word_lengths(r, simples)
        flags["principal"] = True
        for m in sorted(r.mors, key=Mor.sort_key):
            want = K.popcount(r.inversion_mask(m))
            got = sdist.get(m)
            if got is None:
                flags["principal"] = False
                witnesses["principal"] = ("not generated by simples", m)
                break
            if got != want:
                flags["principal"] = False
                witnesses["principal"] = ("length mismatch", m, got, want)
                break

    if hereditary:
        from .brink_howlett import quasicontraction_tree

        verdict, wit, _nodes = quasicontraction_tree(r)
        flags["hereditarily_preprincipal"] = verdict
        if not verdict:
            witnesses["hereditarily_preprincipal"] = wit

    report = PropertyReport(flags=flags, witnesses=witnesses)
    r._reports[cache_key] = report
    return report


def antipode_and_orthocomplement(r: SignedGroupoidSet, a) -> tuple[Mor, dict]:
    """Longest element at a and the induced orthocomplement.

    Requires a maximum in the weak order at a and at the source of every
    morphism into a (NotAntipodal otherwise). The complement of g is g
    composed with the longest element at its source. All the defining
    identities are re-verified here and violations raise loudly:
    complement inversion sets, involutivity, join to the top, meet to
    the identity, and orthogonality being containment in the complement.
    """
    poset = weak_order(r, a)
    omega = poset.top()
    if omega is None:
        raise NotAntipodal(f"no maximum in the weak order at {a!r}")
    full = r.inversion_mask(omega)
    comp: dict[Mor, Mor] = {}
    for g in r.at(a):
        wb = weak_order(r, g.src).top()
        if wb is None:
            raise NotAntipodal(f"no maximum in the weak order at {g.src!r}")
        gp = compose(g, wb)
        if r.inversion_mask(gp) != full & ~r.inversion_mask(g):
            raise InternalConsistencyError("complement has the wrong inversion set")
        comp[g] = gp
    for g, gp in comp.items():
        if comp[gp] != g:
            raise InternalConsistencyError("orthocomplement is not an involution")
        if poset.join((g, gp)) != omega:
            raise InternalConsistencyError("complement pair misses the top")
        if poset.meet((g, gp)) != r.identity(a):
            raise InternalConsistencyError("complement pair misses the bottom")
    for g in r.at(a):
        for h in r.at(a):
            disjoint = r.inversion_mask(g) & r.inversion_mask(h) == 0
            if disjoint != poset.leq(g, comp[h]):
                raise InternalConsistencyError("orthogonality mismatch")
    return omega, comp


def real_compression(r: SignedGroupoidSet, verify: bool = True) -> SignedGroupoidSet:
    """Quotient the real roots of every object by dominance parallelism.

    Imaginary roots are dropped; each surviving class becomes one root
    of a fresh per-object ground set labeled by its smallest original
    member. Morphisms keep their endpoints and permute classes. The
    compressed groupoid must stay the same groupoid, so a collision of
    induced permutations (possible only for unfaithful input) raises.

    With verify set, completeness, antipodality, and preprincipality are
    checked to be invariant, and for a preprincipal atomically generated
    input the atomic word length of each morphism must equal its
    compressed inversion count.
    """
    class_data: dict = {}
    new_grounds: dict = {}
    new_positives: dict = {}
    for a in r.objects:
        ground = r.grounds[a]
        real_pos = r.real_positive_mask(a)
        real_all = real_pos | K.involute_mask(real_pos, ground.n)
        _, classes = dominance_and_parallelism(r, a)
        pos_classes = [c for c in classes if c.mask & real_pos]
        for c in pos_classes:
            if c.mask & ~real_pos:
                raise InternalConsistencyError("dominance class mixes real signs")
        neg_classes = [RootSet(ground, K.involute_mask(c.mask, ground.n))
                       for c in pos_classes]
        for c in neg_classes:
            if c.mask & ~(real_all & ~real_pos):
                raise InternalConsistencyError("negative class leaves the real span")
        k = len(pos_classes)
        labels = tuple(
            ground.base_labels[((c.mask & -c.mask).bit_length() - 1) % ground.n]
            for c in pos_classes
        )
        new_grounds[a] = GroundSet(k, labels) if k else None
        new_positives[a] = (1 << k) - 1
        member_class = {}
        for idx, c in enumerate(pos_classes + neg_classes):
            for i in c:
                member_class[i] = idx
        class_data[a] = (pos_classes + neg_classes, member_class)
    if any(g is None for g in new_grounds.values()):
        raise ValueError("an object has no real roots; nothing to compress")
    new_of: dict[Mor, Mor] = {}
    for m in sorted(r.mors, key=Mor.sort_key):
        classes_src, _ = class_data[m.src]
        _, member_dst = class_data[m.dst]
        perm = [None] * len(classes_src)
        for idx, c in enumerate(classes_src):
            images = {member_dst.get(m.perm[i]) for i in c}
            if len(images) != 1 or None in images:
                raise InternalConsistencyError(
                    "morphism does not respect dominance classes"
                )
            perm[idx] = images.pop()
        new_of[m] = Mor(m.src, m.dst, tuple(perm))
    new_mors = list(new_of.values())
    if len(set(new_mors)) != len(r.mors):
        raise InternalConsistencyError(
            "compression collapsed parallel morphisms; input is unfaithful"
        )
    out = SignedGroupoidSet(new_grounds, new_positives, new_mors)
    if verify:
        before = check_properties(r)
        after = check_properties(out)
        for name in ("complete", "antipodal", "preprincipal"):
            if before.flags[name] != after.flags[name]:
                raise InternalConsistencyError(
                    f"compression changed the {name} flag"
                )
        if before.flags["preprincipal"] and before.flags["atomically_generated"]:
            atomics = []
            for a in r.objects:
                atomics.extend(weak_order(r, a).atoms())
            lengths = _word_lengths(r, atomics + [inverse(s) for s in atomics])
            for m in r.mors:
                want = K.popcount(out.inversion_mask(new_of[m]))
                if lengths.get(m) != want:
                    raise InternalConsistencyError(
                        "atomic length disagrees with compressed inversion count"
                    )
    return out


def universal_cover(r: SignedGroupoidSet, base=None) -> SignedGroupoidSet:
    """Trivial-action groupoid on the positive systems pulled back to a
    base object along every morphism out of it.

    Faithfulness is required (PrerequisiteFailed otherwise): it makes
    the pulled-back systems distinct exactly when the morphisms differ
    on roots, which is what lets objects stand in for morphisms. For a
    one-object group action this is the orbit of the positive system.
    """
    ok, wit = is_faithful(r)
    if not ok:
        raise PrerequisiteFailed("faithful", f"witness {wit!r}")
    if base is None:
        base = r.objects[0]
    ground = r.grounds[base]
    masks = set()
    for m in sorted(r.mors, key=Mor.sort_key):
        if m.src != base:
            continue
        masks.add(K.apply_perm_mask(r.positives[m.dst], inverse(m).perm))
    return trivial_action_sgs(ground, masks)


def _find_vector(vecs: Sequence, target) -> Optional[int]:
    for i, v in enumerate(vecs):
        if v == target:
            return i
    return None


def coxeter_fixture(vectors: Sequence, generators: Sequence[int],
                    form: Optional[Sequence] = None, cap: int = GROUP_CAP,
                    labels: Optional[Sequence[str]] = None) -> SignedGroupoidSet:
    """Reflection group acting on an explicit root list.

    vectors must list every root and its negative (NotNegationClosed
    otherwise); the half whose member appears before its negative is
    taken positive. generators are indices into vectors; each generates
    the reflection in that root with respect to the given symmetric
    bilinear form (the dot product by default). The group is closed by
    breadth-first products and must stay within cap elements
    (GroupCapExceeded). Reflection images must land back in the root
    list; escapes are reported as NotNegationClosed with the offending
    vector.
    """
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if len(set(vecs)) != len(vecs):
        raise ValueError("duplicate root vectors")
    if len(vecs) % 2:
        raise NotNegationClosed("odd number of roots")
    pos = []
    for v in vecs:
        if F.neg(v) not in set(vecs):
            raise NotNegationClosed(f"missing negative of {v}")
        if v in pos or F.neg(v) in pos:
            continue
        pos.append(v)
    n = len(pos)
    index_of: dict[tuple, int] = {}
    for i, v in enumerate(pos):
        index_of[v] = i
        index_of[F.neg(v)] = i + n
    if labels is None:
        ground = GroundSet.standard(n)
    else:
        ground = GroundSet(n, tuple(labels))

    dim = len(vecs[0])
    if form is None:
        bform = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    else:
        bform = [[Fraction(x) for x in row] for row in form]

    def b(u, v) -> Fraction:
        return sum(bform[i][j] * u[i] * v[j] for i in range(dim) for j in range(dim))

    def root_vec(i: int):
        return pos[i] if i < n else F.neg(pos[i - n])

    def reflect(alpha, v):
        aa = b(alpha, alpha)
        if aa == 0:
            raise ValueError("reflection in an isotropic root")
        coef = 2 * b(alpha, v) / aa
        return tuple(v[j] - coef * alpha[j] for j in range(dim))

    gen_perms = []
    for gi in generators:
        alpha = tuple(Fraction(x) for x in vectors[gi])
        perm = []
        for i in range(2 * n):
            img = reflect(alpha, root_vec(i))
            j = index_of.get(img)
            if j is None:
                raise NotNegationClosed(
                    f"reflection in {alpha} sends {root_vec(i)} outside the roots"
                )
            perm.append(j)
        gen_perms.append(tuple(perm))

    ident = tuple(range(2 * n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gen_perms:
                q = tuple(g[i] for i in p)
                if q not in group:
                    if len(group) >= cap:
                        raise GroupCapExceeded(f"group exceeds cap {cap}")
                    group.add(q)
                    nxt.append(q)
        frontier = nxt
    return group_action_sgs(ground, (1 << n) - 1, sorted(group))


def pa_of(r: SignedGroupoidSet) -> Preacycloid:
    """Tope family of a groupoid: real positives of every object carried
    to a base object along the unique connecting morphisms.

    Needs faithful, connected, simply connected, and antipodal input;
    the failing flag is raised as PrerequisiteFailed. Imaginary roots
    become the loops. The result is checked against the preacycloid
    axioms; a failure there would contradict antipodality and raises
    InternalConsistencyError.
    """
    ok, wit = is_faithful(r)
    if not ok:
        raise PrerequisiteFailed("faithful", f"witness {wit!r}")
    if len(r.components()) != 1:
        raise PrerequisiteFailed("connected", "groupoid is disconnected")
    for a in r.objects:
        if len(r.hom(a, a)) != 1:
            raise PrerequisiteFailed("simply_connected", f"extra loop at {a!r}")
    for a in r.objects:
        if weak_order(r, a).top() is None:
            raise PrerequisiteFailed("antipodal", f"no longest element at {a!r}")
    base = r.objects[0]
    ground = r.grounds[base]
    topes = []
    for b in r.objects:
        homs = r.hom(b, base)
        if len(homs) != 1:
            raise PrerequisiteFailed("simply_connected",
                                     f"{len(homs)} morphisms {b!r} to base")
        u = homs[0]
        topes.append(RootSet(ground, r.act(u, r.real_positive_mask(b))))
    try:
        return check_preacycloid(ground, topes)
    except AxiomViolation as exc:
        raise InternalConsistencyError(
            f"transported topes break axiom {exc.axiom}"
        ) from exc


def simple_roots(r: SignedGroupoidSet, a) -> RootSet:
    """Union of the simple inversion sets at one object, cross-checked
    against the extreme elements of the matching hemispace of the tope
    matroid.

    The standing hypotheses are enforced up front: finite, connected,
    simply connected, real, compressed, antipodal, and hereditarily
    preprincipal; the first missing one raises PrerequisiteFailed.
    """
    report = check_properties(r, hereditary=True)
    for flag in ("finite", "connected", "simply_connected", "real",
                 "compressed", "antipodal", "hereditarily_preprincipal"):
        if not report.flags.get(flag, False):
            raise PrerequisiteFailed(flag, f"witness {report.witnesses.get(flag)!r}")
    ground = r.grounds[a]
    union = 0
    for s in _simples(r):
        if s.dst == a:
            union |= r.inversion_mask(s)
    acy = pa_of(r)
    view = closure_from_topes(acy)
    base = r.objects[0]
    u = r.hom(a, base)[0]
    hemi_mask = r.act(u, r.real_positive_mask(a)) | view.loops.mask
    ex = extreme_elements(view, RootSet(view.ground, hemi_mask))
    back = K.apply_perm_mask(ex.mask, inverse(u).perm)
    if back != union:
        raise InternalConsistencyError(
            "simple inversion sets disagree with hemispace extremes"
        )
    return RootSet(ground, union)


def check_sgs_isomorphism(r1: SignedGroupoidSet, r2: SignedGroupoidSet,
                          obj_map: dict, root_maps: dict) -> bool:
    """Verify an explicit isomorphism: a bijection of objects and
    per-object involution-preserving root bijections carrying positives
    to positives and the morphism set onto the morphism set."""
    if sorted(map(_okey, obj_map.keys())) != sorted(map(_okey, r1.objects)):
        return False
    if sorted(map(_okey, obj_map.values())) != sorted(map(_okey, r2.objects)):
        return False
    for a in r1.objects:
        b = obj_map[a]
        ga, gb = r1.grounds[a], r2.grounds[b]
        if ga.size != gb.size:
            return False
        perm = root_maps[a]
        if sorted(perm) != list(range(ga.size)):
            return False
        for i in range(ga.size):
            j = i + ga.n if i < ga.n else i - ga.n
            pi = perm[i]
            if perm[j] != (pi + gb.n if pi < gb.n else pi - gb.n):
                return False
        if K.apply_perm_mask(r1.positives[a], perm) != r2.positives[b]:
            return False
    carried = set()
    for m in r1.mors:
        pa_, pb = root_maps[m.src], root_maps[m.dst]
        inv_pa = [0] * len(pa_)
        for i, p in enumerate(pa_):
            inv_pa[p] = i
        perm = tuple(pb[m.perm[inv_pa[i]]] for i in range(len(pa_)))
        carried.add(Mor(obj_map[m.src], obj_map[m.dst], perm))
    return carried == set(r2.mors)


def roundtrip_isomorphism(r: SignedGroupoidSet) -> tuple[SignedGroupoidSet, dict, dict, bool]:
    """Build the tope-family groupoid of pa_of(r) with the imaginary
    positive roots of the base as the loop split, and the isomorphism
    data back to r; the last component reports whether it verifies."""
    acy = pa_of(r)
    base = r.objects[0]
    ground = r.grounds[base]
    im_pos = r.imaginary_positive_mask(base)
    r2 = sgs_from_preacycloid(acy, RootSet(ground, im_pos))
    obj_map = {}
    root_maps = {}
    for b in r.objects:
        u = r.hom(b, base)[0]
        obj_map[b] = r.act(u, r.real_positive_mask(b)) | im_pos
        root_maps[b] = u.perm
    ok = check_sgs_isomorphism(r, r2, obj_map, root_maps)
    return r2, obj_map, root_maps, ok
