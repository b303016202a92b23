"""Executable forms of the inversion-set laws.

Each function asserts one law over a whole groupoid. Quantification is
exhaustive except in imaginary_growth, where the contraction marks are
sampled by a fixed policy (the atoms of each weak order plus its top)
to keep the suite inside its time budget. Laws with an antipodality or
faithfulness hypothesis check the flag first and skip their body when
it fails, since the hypothesis is part of the statement.

The arithmetic here is deliberately local: set algebra on masks, a
fresh breadth-first search for word lengths, direct poset joins. The
point is to agree with the library without calling back into the code
path under test.
"""

from topekit._kernels import apply_perm_mask, involute_mask, popcount
from topekit.brink_howlett import BoxObject, hypercontract
from topekit.sgs import (
    SignedGroupoidSet,
    check_properties,
    compose,
    inverse,
    real_compression,
    weak_order,
)


def _phi(r, m):
    return r.inversion_mask(m)


def _neg(r, a, mask):
    return involute_mask(mask, r.grounds[a].n)


def _act(r, m, mask):
    return apply_perm_mask(mask, m.perm)


def _flags(r):
    return check_properties(r).flags


def _composable_pairs(r):
    by_src = {}
    for m in r.mors:
        by_src.setdefault(m.src, []).append(m)
    for g in r.mors:
        for f in by_src.get(g.dst, ()):
            yield f, g


def cocycle_disjoint_union(r: SignedGroupoidSet) -> None:
    """Composite inversion sets split as a disjoint union of the two
    twisted parts."""
    for f, g in _composable_pairs(r):
        pf = _phi(r, f)
        fpg = _act(r, f, _phi(r, g))
        left = pf & ~_neg(r, f.dst, fpg)
        right = fpg & ~_neg(r, f.dst, pf)
        assert left & right == 0, (f, g)
        assert _phi(r, compose(f, g)) == left | right, (f, g)


def inverse_negation(r: SignedGroupoidSet) -> None:
    """The inversion set of an inverse is the negated pullback."""
    for h in r.mors:
        hi = inverse(h)
        assert _phi(r, hi) == _neg(r, h.src, _act(r, hi, _phi(r, h))), h


def prefix_criterion(r: SignedGroupoidSet) -> None:
    """Three equivalent ways of saying f is a prefix of f after g."""
    for f, g in _composable_pairs(r):
        pf = _phi(r, f)
        pfg = _phi(r, compose(f, g))
        fpg = _act(r, f, _phi(r, g))
        one = _phi(r, inverse(f)) & _phi(r, g) == 0
        two = pf & ~pfg == 0
        three = (pfg == pf | fpg) and (pf & fpg == 0)
        assert one == two == three, (f, g)


def equal_iff_trivial_quotient(r: SignedGroupoidSet) -> None:
    """Parallel morphisms share an inversion set exactly when their
    quotient inverts nothing."""
    for a in r.objects:
        mors = r.at(a)
        for h in mors:
            for g in mors:
                if h.src != g.src:
                    continue
                same = _phi(r, h) == _phi(r, g)
                quotient_empty = _phi(r, compose(inverse(h), g)) == 0
                assert same == quotient_empty, (h, g)


def atomic_inverse(r: SignedGroupoidSet) -> None:
    """Inverting an atom of one weak order lands on an atom of another."""
    if not _flags(r)["faithful"]:
        return
    atom_sets = {a: set(weak_order(r, a).atoms()) for a in r.objects}
    for a in r.objects:
        for s in atom_sets[a]:
            assert inverse(s) in atom_sets[s.src], s


def _simple_word_lengths(r: SignedGroupoidSet):
    """Independent BFS over simple morphisms; unreachable ones absent."""
    simples = [m for m in r.mors if popcount(_phi(r, m)) == 1]
    dist = {}
    frontier = []
    for a in r.objects:
        ident = r.identity(a)
        dist[ident] = 0
        frontier.append(ident)
    while frontier:
        nxt = []
        for m in frontier:
            for s in simples:
                if s.src != m.dst:
                    continue
                w = compose(s, m)
                if w not in dist:
                    dist[w] = dist[m] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def length_bounds_inversions(r: SignedGroupoidSet) -> None:
    """A product of k simple morphisms inverts at most k roots."""
    dist = _simple_word_lengths(r)
    for m, l in dist.items():
        assert popcount(_phi(r, m)) <= l, m
    flags = _flags(r)
    if flags["principal"] and flags["finite"]:
        # Atoms are then simple and generate, so the walk sees everything.
        assert len(dist) == len(r.mors)


def finite_implies_atomically_generated(r: SignedGroupoidSet) -> None:
    flags = _flags(r)
    if flags["faithful"] and flags["finite"]:
        assert flags["atomically_generated"]


def _atoms(r):
    out = []
    for a in r.objects:
        out.extend(weak_order(r, a).atoms())
    return out


def atomic_simple_implies_principal(r: SignedGroupoidSet) -> None:
    flags = _flags(r)
    if not (flags["faithful"] and flags["finite"]):
        return
    if all(popcount(_phi(r, s)) == 1 for s in _atoms(r)):
        assert flags["principal"]


def principal_implies_preprincipal(r: SignedGroupoidSet) -> None:
    flags = _flags(r)
    if flags["principal"]:
        assert flags["preprincipal"]
        for s in _atoms(r):
            assert popcount(_phi(r, s)) == 1, s


def max_iff_full_real(r: SignedGroupoidSet) -> None:
    """A morphism tops the weak order exactly when it inverts every real
    positive root."""
    if not _flags(r)["faithful"]:
        return
    for a in r.objects:
        poset = weak_order(r, a)
        real = r.real_positive_mask(a)
        for g in r.at(a):
            is_max = all(poset.leq(h, g) for h in r.at(a))
            assert is_max == (_phi(r, g) == real), (a, g)


def antipode_laws(r: SignedGroupoidSet) -> None:
    """The longest elements invert, exchange, and complement coherently
    with the real spans."""
    if not _flags(r)["antipodal"]:
        return
    omega = {a: weak_order(r, a).top() for a in r.objects}
    for a in r.objects:
        wa = omega[a].src
        assert omega[wa] == inverse(omega[a]), a
        real_wa = r.real_positive_mask(wa)
        real_a = r.real_positive_mask(a)
        assert _act(r, omega[a], real_wa) == _neg(r, a, real_a), a
    for g in r.mors:
        real_dst = r.real_positive_mask(g.dst)
        assert _phi(r, compose(g, omega[g.src])) == real_dst & ~_phi(r, g), g


def orthocomplement_laws(r: SignedGroupoidSet) -> None:
    """Composing with the longest element of the source is an
    order-reversing involution pairing each morphism against its
    orthocomplement."""
    if not _flags(r)["antipodal"]:
        return
    omega = {a: weak_order(r, a).top() for a in r.objects}
    for a in r.objects:
        poset = weak_order(r, a)
        mors = r.at(a)
        perp = {g: compose(g, omega[g.src]) for g in mors}
        for g in mors:
            assert perp[g] in perp, g
            assert perp[perp[g]] == g, g
            assert poset.join((g, perp[g])) == omega[a], g
            assert poset.meet((g, perp[g])) == r.identity(a), g
        for g in mors:
            for h in mors:
                assert poset.leq(g, h) == poset.leq(perp[h], perp[g]), (g, h)
                disjoint = _phi(r, g) & _phi(r, h) == 0
                assert disjoint == poset.leq(g, perp[h]), (g, h)


def complete_gives_ortholattice(r: SignedGroupoidSet) -> None:
    flags = _flags(r)
    if not flags["complete"]:
        return
    assert flags["rootoidal_jop"]
    assert flags["antipodal"]
    for a in r.objects:
        ok, wit = weak_order(r, a).is_lattice()
        assert ok, (a, wit)


def complete_iff_rootoidal_antipodal(r: SignedGroupoidSet) -> None:
    flags = _flags(r)
    assert flags["complete"] == (flags["rootoidal_jop"] and flags["antipodal"])


def compression_invariance(r: SignedGroupoidSet) -> None:
    """Dominance compression keeps completeness, antipodality, and
    preprincipality (checked inside real_compression) plus the join
    orthogonality property (checked here)."""
    out = real_compression(r, verify=True)
    assert _flags(r)["rootoidal_jop"] == _flags(out)["rootoidal_jop"]


def _sample_marks(r, a):
    poset = weak_order(r, a)
    marks = list(poset.atoms())
    top = poset.top()
    if top is not None and not top.is_identity() and top not in marks:
        marks.append(top)
    return [m for m in marks if not m.is_identity()]


def imaginary_growth(r: SignedGroupoidSet) -> None:
    """Contraction marks turn imaginary; one mark on an antipodal
    carrier splits the imaginary positives exactly and keeps every
    weak order of the component topped."""
    if not _flags(r)["faithful"]:
        return
    antipodal = _flags(r)["antipodal"]
    for a in r.objects:
        base_im = r.imaginary_positive_mask(a)
        marks = _sample_marks(r, a)
        for x in marks:
            sub = hypercontract(r, x)
            node = BoxObject(a, frozenset([x]))
            assert node in sub.objects
            im = sub.imaginary_positive_mask(node)
            assert base_im & ~im == 0, (a, x)
            assert _phi(r, x) & ~im == 0, (a, x)
            if antipodal:
                assert _phi(r, x) & base_im == 0, (a, x)
                assert im == _phi(r, x) | base_im, (a, x)
                for obj in sub.objects:
                    assert weak_order(sub, obj).top() is not None, (a, x, obj)
        for i in range(min(2, len(marks) - 1)):
            pair = frozenset([marks[i], marks[i + 1]])
            node = BoxObject(a, pair)
            sub = hypercontract(r, node)
            im = sub.imaginary_positive_mask(node)
            want = base_im
            for x in pair:
                want |= _phi(r, x)
            assert want & ~im == 0, (a, pair)


LAWS = (
    cocycle_disjoint_union,
    inverse_negation,
    prefix_criterion,
    equal_iff_trivial_quotient,
    atomic_inverse,
    length_bounds_inversions,
    finite_implies_atomically_generated,
    atomic_simple_implies_principal,
    principal_implies_preprincipal,
    max_iff_full_real,
    antipode_laws,
    orthocomplement_laws,
    complete_gives_ortholattice,
    complete_iff_rootoidal_antipodal,
    compression_invariance,
    imaginary_growth,
)


def run_all(r: SignedGroupoidSet) -> None:
    for law in LAWS:
        law(r)
