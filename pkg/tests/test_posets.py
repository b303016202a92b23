"""Bitmask posets: lattice predicates against hand-built orders."""

import pytest

from topekit.posets import Poset, jop_holds


def divisibility(upto):
    elems = list(range(1, upto + 1))
    return Poset(elems, lambda a, b: b % a == 0)


def test_validation_rejects_broken_orders():
    with pytest.raises(ValueError):
        Poset([1, 1], lambda a, b: a <= b)
    with pytest.raises(ValueError):
        Poset([1, 2], lambda a, b: a != b or a == b and False)
    with pytest.raises(ValueError):
        Poset([1, 2], lambda a, b: True)  # fails antisymmetry
    # Not transitive: 1<=2, 2<=3, but not 1<=3.
    leq = {(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)}
    with pytest.raises(ValueError):
        Poset([1, 2, 3], lambda a, b: (a, b) in leq)


def test_chain_is_a_lattice():
    p = Poset([0, 1, 2, 3], lambda a, b: a <= b)
    assert p.bottom() == 0 and p.top() == 3
    assert p.join((1, 2)) == 2 and p.meet((1, 2)) == 1
    assert p.atoms() == [1]
    ok, wit = p.is_lattice()
    assert ok and wit is None
    assert p.join_of_set([]) == 0


def test_divisibility_poset():
    p = divisibility(12)
    assert p.bottom() == 1
    assert p.top() is None
    assert p.join((2, 3)) == 6
    assert p.meet((8, 12)) == 4
    assert sorted(p.atoms()) == [2, 3, 5, 7, 11]
    ok, wit = p.is_lattice()
    assert not ok and wit == ("no-top",)
    # 7 and 11 have upper bound set empty inside 1..12.
    assert p.join((7, 11)) is None


def test_boolean_lattice_and_meets():
    subsets = [frozenset(s) for s in
               [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]]
    p = Poset(subsets, lambda a, b: a <= b)
    ok, _ = p.is_lattice()
    assert ok
    ok, _ = p.has_all_pairwise_meets()
    assert ok
    assert p.join((frozenset([1]), frozenset([2]))) == frozenset([1, 2])
    assert len(p.atoms()) == 3


def test_no_join_witness():
    # Two atoms with two incomparable upper bounds: join undefined.
    order = {
        ("0", "0"), ("a", "a"), ("b", "b"), ("x", "x"), ("y", "y"),
        ("0", "a"), ("0", "b"), ("0", "x"), ("0", "y"),
        ("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"),
    }
    p = Poset(["0", "a", "b", "x", "y"], lambda s, t: (s, t) in order)
    assert p.join(("a", "b")) is None
    ok, wit = p.is_lattice()
    assert not ok and wit == ("no-top",)
    ok, wit = p.has_all_pairwise_meets()
    assert not ok and set(wit) == {"x", "y"}


def test_jop_on_boolean_lattice():
    subsets = [frozenset(s) for s in
               [(), (1,), (2,), (1, 2)]]
    p = Poset(subsets, lambda a, b: a <= b)
    ok, wit = jop_holds(p, lambda g, h: not (g & h))
    assert ok and wit is None


def test_jop_failure_witness():
    # Everything "orthogonal" to the top except the top itself; the join
    # of the two atoms is the top, violating closure under joins.
    subsets = [frozenset(s) for s in [(), (1,), (2,), (1, 2)]]
    p = Poset(subsets, lambda a, b: a <= b)
    full = frozenset([1, 2])
    ok, wit = jop_holds(p, lambda g, h: h != full or g != full)
    assert not ok
    h, j = wit
    assert h == full and j == full
