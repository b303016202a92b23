"""Groupoid layer: construction, validation, weak orders, the flag
battery, compression, covers, and the tope-family round trip."""

import pytest

from topekit._kernels import popcount
from topekit.core import GroundSet, RootSet
from topekit.errors import (
    BadLoopSplit,
    EmptyTopeFamily,
    GroupCapExceeded,
    NotAntipodal,
    NotComposable,
    NotFaithful,
    NotNegationClosed,
    PrerequisiteFailed,
)
from topekit.preacycloid import check_preacycloid
from topekit.sgs import (
    Mor,
    SignedGroupoidSet,
    antipode_and_orthocomplement,
    check_properties,
    check_sgs_isomorphism,
    compose,
    coxeter_fixture,
    dominance_and_parallelism,
    group_action_sgs,
    inverse,
    is_faithful,
    pa_of,
    real_compression,
    roundtrip_isomorphism,
    sgs_from_preacycloid,
    simple_roots,
    trivial_action_sgs,
    universal_cover,
    weak_order,
)

import _lemmas

G1 = GroundSet.standard(1)
G2 = GroundSet.standard(2)

ID2 = tuple(range(2))
ID4 = tuple(range(4))

# Expected false flags per bundled carrier, over the full battery
# including the hereditary walk.
FALSE_FLAGS = {
    "a1a1": set(),
    "a2": set(),
    "b2": set(),
    "nsimp": {"complete", "rootoidal_jop"},
    "loops": {"real"},
    "nonmat": {"complete", "rootoidal_jop", "hereditarily_preprincipal"},
}


def swap_sgs():
    """Two-element group acting on two pairs by swapping them; the swap
    inverts nothing, so the groupoid is not faithful."""
    return group_action_sgs(G2, 0b0011, [ID4, (1, 0, 3, 2)], validate=True)


def identities_only(n_objects):
    grounds = {i: G1 for i in range(n_objects)}
    positives = {i: 1 for i in range(n_objects)}
    mors = [Mor(i, i, ID2) for i in range(n_objects)]
    return SignedGroupoidSet(grounds, positives, mors)


def topless_sgs():
    """Faithful, connected, simply connected, but the weak order at one
    object has two maximal elements, so there is no antipode."""
    return trivial_action_sgs(G2, [0b0011, 0b1001, 0b0110])


class TestMorAlgebra:
    def test_compose_and_inverse(self):
        f = Mor("a", "b", (1, 0, 3, 2))
        g = Mor("c", "a", (1, 2, 3, 0))
        fg = compose(f, g)
        assert (fg.src, fg.dst) == ("c", "b")
        assert fg.perm == tuple(f.perm[i] for i in g.perm)
        assert compose(inverse(f), f) == Mor("a", "a", ID4)
        assert inverse(f) == Mor("b", "a", (1, 0, 3, 2))

    def test_not_composable(self):
        f = Mor("a", "b", ID4)
        with pytest.raises(NotComposable):
            compose(f, f)

    def test_identity_predicate(self):
        assert Mor("a", "a", ID4).is_identity()
        assert not Mor("a", "b", ID4).is_identity()
        assert not Mor("a", "a", (1, 0, 3, 2)).is_identity()

    def test_repr_mentions_endpoints(self):
        assert "'a'" in repr(Mor("a", "b", ID2))


class TestValidation:
    def test_positives_grounds_mismatch(self):
        with pytest.raises(ValueError, match="disagree"):
            SignedGroupoidSet({0: G1}, {}, [Mor(0, 0, ID2)])

    def test_positives_not_half_set(self):
        with pytest.raises(ValueError, match="half set"):
            SignedGroupoidSet({0: G1}, {0: 0b11}, [Mor(0, 0, ID2)])

    def test_unknown_object(self):
        with pytest.raises(ValueError, match="unknown object"):
            SignedGroupoidSet({0: G1}, {0: 1}, [Mor(0, 0, ID2), Mor(0, 1, ID2)])

    def test_wrong_perm_size(self):
        with pytest.raises(ValueError, match="wrong size"):
            SignedGroupoidSet({0: G2}, {0: 3}, [Mor(0, 0, ID2)])

    def test_not_a_bijection(self):
        with pytest.raises(ValueError, match="bijection"):
            SignedGroupoidSet({0: G2}, {0: 3}, [Mor(0, 0, (0, 0, 2, 2))])

    def test_involution_broken(self):
        with pytest.raises(ValueError, match="involution"):
            SignedGroupoidSet({0: G2}, {0: 3}, [Mor(0, 0, (0, 1, 3, 2))])

    def test_missing_identity(self):
        with pytest.raises(ValueError, match="missing identity"):
            SignedGroupoidSet({0: G1}, {0: 1}, [])

    def test_missing_inverse(self):
        cyc = Mor(0, 0, (1, 2, 3, 0))
        with pytest.raises(ValueError, match="missing inverse"):
            SignedGroupoidSet({0: G2}, {0: 3}, [Mor(0, 0, ID4), cyc])

    def test_composition_escapes(self):
        cyc = Mor(0, 0, (1, 2, 3, 0))
        with pytest.raises(ValueError, match="escapes"):
            SignedGroupoidSet(
                {0: G2}, {0: 3}, [Mor(0, 0, ID4), cyc, inverse(cyc)]
            )


class TestBuilders:
    def test_trivial_action_needs_masks(self):
        with pytest.raises(ValueError):
            trivial_action_sgs(G1, [])

    def test_trivial_action_objects_are_masks(self, groupoids):
        r = groupoids["a2"]
        assert set(r.objects) == set(r.positives.keys())
        for a in r.objects:
            assert r.positives[a] == a
        assert r.is_trivial_action()

    def test_empty_tope_family(self):
        bare = check_preacycloid(G2, [])
        with pytest.raises(EmptyTopeFamily):
            sgs_from_preacycloid(bare)

    def test_loop_split_rejects_other_ground(self, carriers):
        pa, _, _ = carriers["loops"]
        other = GroundSet.standard(pa.ground.n + 1)
        with pytest.raises(BadLoopSplit, match="different ground"):
            sgs_from_preacycloid(pa, RootSet(other, 0))

    def test_loop_split_rejects_non_loops(self, carriers):
        pa, _, _ = carriers["loops"]
        non_loop = pa.ground.full_mask & ~pa.loops.mask
        low = non_loop & -non_loop
        with pytest.raises(BadLoopSplit, match="non-loops"):
            sgs_from_preacycloid(pa, RootSet(pa.ground, low))

    def test_loop_split_rejects_both_signs(self, carriers):
        pa, _, _ = carriers["loops"]
        with pytest.raises(BadLoopSplit, match="involute"):
            sgs_from_preacycloid(pa, pa.loops)

    def test_loop_split_must_cover(self, carriers):
        pa, _, _ = carriers["loops"]
        with pytest.raises(BadLoopSplit, match="cover"):
            sgs_from_preacycloid(pa, RootSet(pa.ground, 0))

    def test_default_split_is_positive_half(self, carriers):
        pa, _, _ = carriers["loops"]
        lp = pa.loops.mask & ((1 << pa.ground.n) - 1)
        r = sgs_from_preacycloid(pa)
        assert set(r.objects) == {m | lp for m in pa.tope_masks}


class TestCoxeterFixture:
    def test_a2_shape(self, a2_group):
        r = a2_group
        assert r.objects == ("pt",)
        assert len(r.mors) == 6
        masks = sorted(r.inversion_mask(m) for m in r.mors)
        assert masks == [0b000, 0b001, 0b010, 0b101, 0b110, 0b111]

    def test_a2_flags(self, a2_group):
        report = check_properties(a2_group)
        false = {k for k, v in report.flags.items() if not v}
        assert false == {"simply_connected"}
        assert not a2_group.is_trivial_action()

    def test_weak_order_is_hexagon(self, a2_group):
        poset = weak_order(a2_group, "pt")
        assert len(poset.atoms()) == 2
        top = poset.top()
        assert popcount(a2_group.inversion_mask(top)) == 3
        ok, _ = poset.is_lattice()
        assert ok

    def test_duplicate_roots(self):
        with pytest.raises(ValueError, match="duplicate"):
            coxeter_fixture([(1, 0), (1, 0), (-1, 0), (-1, 0)], [0])

    def test_odd_root_count(self):
        with pytest.raises(NotNegationClosed, match="odd"):
            coxeter_fixture([(1, 0), (0, 1), (-1, 0)], [0])

    def test_missing_negative(self):
        with pytest.raises(NotNegationClosed, match="negative"):
            coxeter_fixture([(1, 0), (0, 1), (-1, 0), (1, 1)], [0])

    def test_reflection_escapes_roots(self):
        with pytest.raises(NotNegationClosed, match="outside"):
            coxeter_fixture([(1, 0), (1, 1), (-1, 0), (-1, -1)], [0])

    def test_isotropic_reflection(self):
        with pytest.raises(ValueError, match="isotropic"):
            coxeter_fixture([(1, 0), (-1, 0)], [0], form=[[0, 1], [1, 0]])

    def test_group_cap(self):
        with pytest.raises(GroupCapExceeded):
            coxeter_fixture(
                [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)],
                [0, 1],
                form=[[1, -0.5], [-0.5, 1]],
                cap=3,
            )


class TestWeakOrder:
    def test_boolean_square(self, groupoids):
        r = groupoids["a1a1"]
        for a in r.objects:
            poset = weak_order(r, a)
            assert len(r.at(a)) == 4
            assert len(poset.atoms()) == 2
            assert poset.bottom() == r.identity(a)
            assert poset.top() is not None
            ok, _ = poset.is_lattice()
            assert ok

    def test_hexagon_profile(self, groupoids):
        r = groupoids["a2"]
        a = r.objects[0]
        sizes = sorted(popcount(r.inversion_mask(m)) for m in r.at(a))
        assert sizes == [0, 1, 1, 2, 2, 3]

    def test_caching(self, groupoids):
        r = groupoids["b2"]
        a = r.objects[0]
        assert weak_order(r, a) is weak_order(r, a)
        assert check_properties(r) is check_properties(r)

    def test_not_faithful(self):
        r = swap_sgs()
        ok, wit = is_faithful(r)
        assert not ok
        assert not wit[0].is_identity()
        with pytest.raises(NotFaithful):
            weak_order(r, "pt")

    def test_unfaithful_forces_lattice_flags_false(self):
        report = check_properties(swap_sgs())
        for name in ("antipodal", "complete", "rootoidal_jop",
                     "atomically_generated", "preprincipal", "principal"):
            assert report.flags[name] is False
            assert report.witnesses[name][0] == "requires faithful"


class TestFlagBattery:
    @pytest.mark.parametrize("name", sorted(FALSE_FLAGS))
    def test_fixture_profiles(self, groupoids, name):
        report = check_properties(groupoids[name], hereditary=True)
        false = {k for k, v in report.flags.items() if not v}
        assert false == FALSE_FLAGS[name]
        for k in false:
            assert k in report.witnesses

    def test_lattice_failure_witness_is_genuine(self, groupoids):
        r = groupoids["nsimp"]
        report = check_properties(r)
        a = report.witnesses["complete"][0]
        ok, wit = weak_order(r, a).is_lattice()
        assert not ok
        assert report.witnesses["rootoidal_jop"][1] in ("no-meet", "jop")

    def test_disconnected(self):
        r = identities_only(2)
        assert r.components() == ((0,), (1,))
        report = check_properties(r)
        assert report.flags["connected"] is False
        assert report.flags["faithful"] is True

    def test_lemma_suite_on_carriers(self, groupoids, a2_group):
        for r in groupoids.values():
            _lemmas.run_all(r)
        _lemmas.run_all(a2_group)


class TestDominance:
    def test_loops_profiles(self, groupoids):
        r = groupoids["loops"]
        a = r.objects[0]
        ground = r.grounds[a]
        below, classes = dominance_and_parallelism(r, a)
        assert len(classes) == ground.size
        loop_pos = 1  # e2 sits at index 1 in the bundled carrier
        loop_neg = loop_pos + ground.n
        assert below[loop_neg] == ground.full_mask
        assert below[loop_pos] == 1 << loop_pos

    def test_parallel_pair_is_one_class(self):
        r = trivial_action_sgs(G2, [0b0011, 0b1100])
        _, classes = dominance_and_parallelism(r, 0b0011)
        assert len(classes) == 2
        report = check_properties(r)
        assert report.flags["compressed"] is False
        assert report.flags["real"] is True


class TestCompression:
    def test_loops_compress_to_rank_one(self, groupoids):
        r = groupoids["loops"]
        out = real_compression(r, verify=True)
        assert len(out.objects) == 2
        for a in out.objects:
            assert out.grounds[a].n == 1
        report = check_properties(out)
        assert report.flags["real"] is True
        assert report.flags["complete"] is True

    def test_parallel_pair_compresses(self):
        r = trivial_action_sgs(G2, [0b0011, 0b1100])
        out = real_compression(r, verify=True)
        assert all(g.n == 1 for g in out.grounds.values())
        assert check_properties(out).flags["compressed"] is True

    def test_nothing_real(self):
        r = trivial_action_sgs(G1, [1])
        with pytest.raises(ValueError, match="no real roots"):
            real_compression(r)

    def test_compressed_carrier_is_fixed_point(self, groupoids):
        r = groupoids["a2"]
        out = real_compression(r, verify=True)
        assert len(out.objects) == len(r.objects)
        assert all(out.grounds[a].n == r.grounds[a].n for a in r.objects)


class TestCoversAndRoundtrip:
    def test_universal_cover_of_group_is_tope_family(self, a2_group, carriers):
        cover = universal_cover(a2_group)
        pa, _, _ = carriers["a2"]
        assert set(cover.objects) == set(pa.tope_masks)
        assert cover.grounds[cover.objects[0]].n == pa.ground.n
        report = check_properties(cover)
        assert report.flags["simply_connected"] is True
        assert pa_of(cover).tope_masks == pa.tope_masks

    def test_cover_of_trivial_action_keeps_objects(self, groupoids):
        r = groupoids["b2"]
        cover = universal_cover(r)
        assert set(cover.objects) == set(r.objects)

    def test_cover_needs_faithful(self):
        with pytest.raises(PrerequisiteFailed) as exc:
            universal_cover(swap_sgs())
        assert exc.value.flag == "faithful"

    @pytest.mark.parametrize(
        "name", ("a1a1", "a2", "b2", "nsimp", "loops", "nonmat")
    )
    def test_roundtrip_isomorphism(self, groupoids, name):
        r2, obj_map, root_maps, ok = roundtrip_isomorphism(groupoids[name])
        assert ok
        assert len(r2.objects) == len(groupoids[name].objects)

    def test_isomorphism_rejects_mangled_maps(self, groupoids):
        r = groupoids["a2"]
        r2, obj_map, root_maps, ok = roundtrip_isomorphism(r)
        assert ok
        objs = list(r.objects)
        bad_obj = dict(obj_map)
        bad_obj[objs[0]], bad_obj[objs[1]] = bad_obj[objs[1]], bad_obj[objs[0]]
        assert not check_sgs_isomorphism(r, r2, bad_obj, root_maps)
        bad_roots = dict(root_maps)
        size = r.grounds[objs[0]].size
        bad_roots[objs[0]] = (0,) * size
        assert not check_sgs_isomorphism(r, r2, obj_map, bad_roots)

    def test_isomorphism_rejects_size_mismatch(self, groupoids):
        ra, rb = groupoids["a2"], groupoids["b2"]
        obj_map = dict(zip(ra.objects, rb.objects))
        root_maps = {a: tuple(range(ra.grounds[a].size)) for a in ra.objects}
        assert not check_sgs_isomorphism(ra, rb, obj_map, root_maps)

    def test_pa_of_prerequisites(self, a2_group):
        with pytest.raises(PrerequisiteFailed) as exc:
            pa_of(a2_group)
        assert exc.value.flag == "simply_connected"
        with pytest.raises(PrerequisiteFailed) as exc:
            pa_of(swap_sgs())
        assert exc.value.flag == "faithful"
        with pytest.raises(PrerequisiteFailed) as exc:
            pa_of(identities_only(2))
        assert exc.value.flag == "connected"
        with pytest.raises(PrerequisiteFailed) as exc:
            pa_of(topless_sgs())
        assert exc.value.flag == "antipodal"


class TestAntipodes:
    def test_a2_orthocomplement(self, groupoids):
        r = groupoids["a2"]
        for a in r.objects:
            omega, comp = antipode_and_orthocomplement(r, a)
            assert r.inversion_mask(omega) == r.real_positive_mask(a)
            assert len(comp) == len(r.at(a))

    def test_not_antipodal(self):
        r = topless_sgs()
        with pytest.raises(NotAntipodal):
            antipode_and_orthocomplement(r, 0b0011)


class TestSimpleRoots:
    def test_two_per_object_in_rank_two(self, groupoids):
        for name in ("a2", "b2"):
            r = groupoids[name]
            for a in r.objects:
                assert len(simple_roots(r, a)) == 2

    def test_witness_tope_has_four(self, groupoids):
        r = groupoids["nsimp"]
        assert 0b1111 in r.objects
        assert len(simple_roots(r, 0b1111)) == 4

    def test_prerequisite_real(self, groupoids):
        with pytest.raises(PrerequisiteFailed) as exc:
            simple_roots(groupoids["loops"], groupoids["loops"].objects[0])
        assert exc.value.flag == "real"

    def test_prerequisite_hereditary(self, groupoids):
        r = groupoids["nonmat"]
        with pytest.raises(PrerequisiteFailed) as exc:
            simple_roots(r, r.objects[0])
        assert exc.value.flag == "hereditarily_preprincipal"
