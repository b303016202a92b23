"""Ground sets, root sets, involution, and the pair cap."""

import pytest

from topekit.core import (
    GroundSet,
    RootSet,
    half_set_distance,
    involute,
    is_half_set,
    max_pairs,
)
from topekit.errors import GroundCapExceeded, NotHalfSet


def test_standard_labels_and_involution():
    g = GroundSet.standard(3)
    assert g.size == 6
    assert g.base_labels == ("e1", "e2", "e3")
    assert [g.label(i) for i in range(6)] == [
        "e1", "e2", "e3", "-e1", "-e2", "-e3",
    ]
    for i in range(6):
        assert g.involution(g.involution(i)) == i
        assert g.involution(i) != i
    assert g.index("-e2") == 4
    with pytest.raises(KeyError):
        g.index("e9")
    with pytest.raises(IndexError):
        g.involution(6)


def test_ground_set_validation():
    with pytest.raises(ValueError):
        GroundSet(0, ())
    with pytest.raises(ValueError):
        GroundSet(2, ("a",))
    with pytest.raises(ValueError):
        GroundSet(2, ("a", "a"))
    with pytest.raises(ValueError):
        GroundSet(2, ("a", "-b"))
    with pytest.raises(ValueError):
        GroundSet(1, ("",))


def test_pair_cap(monkeypatch):
    monkeypatch.setenv("ROOTOID_MAX_GROUND", "3")
    assert max_pairs() == 3
    GroundSet.standard(3)
    with pytest.raises(GroundCapExceeded):
        GroundSet.standard(4)
    monkeypatch.setenv("ROOTOID_MAX_GROUND", "junk")
    assert max_pairs() == 32
    monkeypatch.setenv("ROOTOID_MAX_GROUND", "-5")
    assert max_pairs() == 32


def test_root_set_algebra():
    g = GroundSet.standard(2)
    a = g.set_of(["e1", "-e2"])
    b = g.set_of(["e1", "e2"])
    assert (a & b).labels() == ("e1",)
    assert (a | b).mask == a.mask | b.mask
    assert (a - b).labels() == ("-e2",)
    assert (a ^ b).labels() == ("e2", "-e2")
    assert a <= a | b
    assert not (a <= b)
    assert len(a) == 2 and bool(a)
    assert not g.empty()
    assert "e1" in a and "-e2" in a and "e2" not in a
    assert 0 in a and 1 not in a
    assert sorted(a) == [0, 3]
    assert a.complement().labels() == ("e2", "-e1")
    assert repr(a) == "{e1,-e2}"
    with pytest.raises(ValueError):
        RootSet(g, 1 << 4)
    other = GroundSet.standard(3)
    with pytest.raises(ValueError):
        a | other.empty()


def test_involute_and_half_sets():
    g = GroundSet.standard(2)
    a = g.set_of(["e1", "-e2"])
    assert involute(a).labels() == ("e2", "-e1")
    assert involute(involute(a)) == a
    assert is_half_set(a)
    assert not is_half_set(g.set_of(["e1"]))
    assert not is_half_set(g.set_of(["e1", "-e1"]))
    b = g.set_of(["e1", "e2"])
    assert half_set_distance(a, b) == 1
    assert half_set_distance(a, involute(a)) == 2
    assert half_set_distance(a, a) == 0
    with pytest.raises(NotHalfSet):
        half_set_distance(a, g.set_of(["e1"]))


def test_subsets_enumeration():
    g = GroundSet.standard(1)
    seen = list(g.subsets())
    assert len(seen) == 4
    assert seen[0].mask == 0 and seen[-1].mask == g.full_mask
