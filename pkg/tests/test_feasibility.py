"""Exact linear feasibility: certificates re-checked by substitution and
compared against brute enumeration on tiny instances."""

import itertools
import random
from fractions import Fraction

from topekit.feasibility import (
    dot,
    fm_solve,
    in_cone,
    neg,
    nonneg_combination,
    positive_dependency,
    positively_independent,
    separating_functional,
    strict_positive_functional,
    vec,
)


def test_vec_and_dot():
    v = vec(1, "1/2", -2)
    assert v == (Fraction(1), Fraction(1, 2), Fraction(-2))
    assert dot(v, vec(2, 4, 1)) == Fraction(2)
    assert neg(v) == (Fraction(-1), Fraction(-1, 2), Fraction(2))


def test_fm_solve_simple_systems():
    # x >= 3 and -x >= -5 has solutions; the returned point satisfies both.
    sol = fm_solve(1, [(vec(1), Fraction(3)), (vec(-1), Fraction(-5))])
    assert sol is not None and 3 <= sol[0] <= 5
    # x >= 1 and -x >= 0 is infeasible.
    assert fm_solve(1, [(vec(1), Fraction(1)), (vec(-1), Fraction(0))]) is None
    # 2d: x + y >= 2, x - y >= 0, -x >= -10.
    sol = fm_solve(2, [
        (vec(1, 1), Fraction(2)),
        (vec(1, -1), Fraction(0)),
        (vec(-1, 0), Fraction(-10)),
    ])
    assert sol is not None
    x, y = sol
    assert x + y >= 2 and x - y >= 0 and x <= 10


def test_fm_solve_randomized_against_substitution():
    rng = random.Random(23)
    for _ in range(60):
        nv = rng.randint(1, 3)
        rows = []
        for _ in range(rng.randint(1, 5)):
            coeffs = vec(*[rng.randint(-3, 3) for _ in range(nv)])
            rows.append((coeffs, Fraction(rng.randint(-4, 4))))
        sol = fm_solve(nv, rows)
        if sol is not None:
            for coeffs, rhs in rows:
                assert dot(coeffs, sol) >= rhs


def test_in_cone_positive_and_negative():
    gens = [vec(1, 0), vec(1, 1)]
    ok, cert = in_cone(gens, vec(3, 1))
    assert ok
    lam = cert["combination"]
    assert all(x >= 0 for x in lam)
    assert tuple(sum(lam[i] * gens[i][c] for i in range(2)) for c in range(2)) \
        == vec(3, 1)
    ok, cert = in_cone(gens, vec(-1, 0))
    assert not ok
    sep = cert["separator"]
    assert all(dot(sep, g) >= 0 for g in gens)
    assert dot(sep, vec(-1, 0)) <= -1


def test_in_cone_empty_generators():
    ok, cert = in_cone([], vec(0, 0))
    assert ok and cert["combination"] == []
    ok, cert = in_cone([], vec(1, 0))
    assert not ok and dot(cert["separator"], vec(1, 0)) <= -1


def test_nonneg_combination_brute_cross_check():
    # Integer grid oracle: target is in the cone iff some small integer
    # combination hits it (generators chosen to make that complete).
    gens = [vec(1, 0), vec(0, 1), vec(-1, -1)]
    for tx in range(-2, 3):
        for ty in range(-2, 3):
            target = vec(tx, ty)
            got = nonneg_combination(gens, target) is not None
            brute = any(
                all(c1 * g[0] + c2 * g[1] + c3 * g[2] == t
                    for g, t in zip(zip(*gens), target))
                for c1, c2, c3 in itertools.product(
                    [Fraction(k, 2) for k in range(0, 13)], repeat=3)
            )
            assert got == brute, (target, got)


def test_gordan_duality_on_known_families():
    indep = [vec(1, 0), vec(0, 1), vec(1, 1)]
    ok, cert = positively_independent(indep)
    assert ok
    f = cert["functional"]
    assert all(dot(f, v) >= 1 for v in indep)

    dep = [vec(1, 0), vec(-1, 1), vec(0, -1)]
    ok, cert = positively_independent(dep)
    assert not ok
    lam = cert["dependency"]
    assert sum(lam, Fraction(0)) == 1 and all(x >= 0 for x in lam)
    assert all(
        sum(lam[i] * dep[i][c] for i in range(3)) == 0 for c in range(2)
    )


def test_gordan_duality_randomized():
    rng = random.Random(31)
    for _ in range(40):
        m = rng.randint(1, 4)
        vecs = [vec(*[rng.randint(-2, 2) for _ in range(2)]) for _ in range(m)]
        if any(all(x == 0 for x in v) for v in vecs):
            assert positive_dependency(vecs) is not None
            continue
        ok, _ = positively_independent(vecs)
        assert ok == (strict_positive_functional(vecs) is not None)
        assert ok == (positive_dependency(vecs) is None)


def test_separating_functional_certificate_shape():
    gens = [vec(1, 0, 0), vec(0, 1, 0)]
    sep = separating_functional(gens, vec(0, 0, -1))
    assert sep is not None
    assert dot(sep, vec(0, 0, -1)) <= -1
    assert separating_functional(gens, vec(2, 3, 0)) is None
