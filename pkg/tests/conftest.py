"""Shared fixtures: the bundled carriers, their groupoids, and a small
reflection group used by the group-action tests."""

from fractions import Fraction

import pytest

from topekit.pipeline_cli import carrier_of, fixture_catalogue
from topekit.sgs import coxeter_fixture, sgs_from_preacycloid

HALF = Fraction(1, 2)

A2_ROOTS = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)]
A2_FORM = [[1, -HALF], [-HALF, 1]]

VECTOR_NAMES = ("a1a1", "a2", "b2", "nsimp")
ALL_NAMES = VECTOR_NAMES + ("loops", "nonmat")


@pytest.fixture(scope="session")
def cat():
    return fixture_catalogue()


@pytest.fixture(scope="session")
def carriers(cat):
    """name -> (preacycloid, positive loop split, vectors or None)."""
    return {name: carrier_of(cat[name].doc) for name in ALL_NAMES}


@pytest.fixture(scope="session")
def groupoids(carriers):
    """name -> the trivial-action groupoid of the carrier."""
    return {
        name: sgs_from_preacycloid(pa, lp)
        for name, (pa, lp, _) in carriers.items()
    }


@pytest.fixture(scope="session")
def a2_group():
    return coxeter_fixture(A2_ROOTS, [0, 1], form=A2_FORM)
