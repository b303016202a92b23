"""Exact rational linear feasibility.

Small Fourier-Motzkin elimination over Fraction arithmetic, plus the
cone predicates built on it: membership of a vector in the nonnegative
span of others, and positive independence via Gordan duality. Every
answer comes with an explicit certificate (a combination or a separating
functional) that the caller can re-check by substitution; the two sides
of each duality are solved independently and cross-asserted.

Dimensions here are desk scale (at most a few vectors in dimension at
most four), so no pivoting or redundancy elimination beyond constraint
dedup is needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import InternalConsistencyError

Vec = tuple[Fraction, ...]


def vec(*entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def neg(a: Sequence[Fraction]) -> Vec:
    return tuple(-x for x in a)


def _normalize(coeffs: tuple, rhs: Fraction):
    """Scale a row (coeffs . x >= rhs) to a primitive integer vector."""
    denoms = [c.denominator for c in coeffs] + [rhs.denominator]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    ints = [int(c * scale) for c in coeffs] + [int(rhs * scale)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def fm_solve(num_vars: int, rows: list[tuple[tuple, Fraction]]) -> Optional[list[Fraction]]:
    """Solve coeffs . x >= rhs for each row; None when infeasible.

    Variables are eliminated from the highest index down, keeping each
    stage for back substitution, so the returned point is exact and
    deterministic.
    """
    stages: list[list[tuple[tuple, Fraction]]] = []
    current = [_normalize(tuple(c), r) for c, r in rows]
    for k in range(num_vars - 1, -1, -1):
        stages.append(current)
        pos, negs, rest = [], [], []
        for coeffs, rhs in current:
            ck = coeffs[k]
            if ck > 0:
                pos.append((coeffs, rhs))
            elif ck < 0:
                negs.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        seen = set()
        nxt = []
        for coeffs, rhs in rest:
            key = (coeffs[:k], rhs)
            if key not in seen:
                seen.add(key)
                nxt.append((coeffs[:k], rhs))
        for cp, rp in pos:
            for cn, rn in negs:
                a, b = -cn[k], cp[k]
                comb = tuple(a * cp[i] + b * cn[i] for i in range(k))
                rhs2 = a * rp + b * rn
                comb, rhs2 = _normalize(comb, rhs2)
                key = (comb, rhs2)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        current = nxt
    for coeffs, rhs in current:
        if rhs > 0:
            return None
    point: list[Fraction] = [Fraction(0)] * num_vars
    for k in range(num_vars):
        stage = stages[num_vars - 1 - k]
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs in stage:
            ck = coeffs[k]
            if ck == 0:
                continue
            bound = (rhs - sum(coeffs[i] * point[i] for i in range(k))) / ck
            if ck > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None:
            point[k] = lo
        elif hi is not None:
            point[k] = min(hi, Fraction(0))
    return point


def nonneg_combination(vectors: Sequence[Vec], target: Vec) -> Optional[list[Fraction]]:
    """Coefficients lam >= 0 with sum(lam_i vectors_i) = target, or None."""
    m = len(vectors)
    if m == 0:
        return [] if all(t == 0 for t in target) else None
    dim = len(target)
    rows: list[tuple[tuple, Fraction]] = []
    for c in range(dim):
        row = tuple(v[c] for v in vectors)
        rows.append((row, target[c]))
        rows.append((neg(row), -target[c]))
    for i in range(m):
        unit = tuple(Fraction(1 if j == i else 0) for j in range(m))
        rows.append((unit, Fraction(0)))
    sol = fm_solve(m, rows)
    if sol is None:
        return None
    for c in range(dim):
        if sum(sol[i] * vectors[i][c] for i in range(m)) != target[c]:
            raise InternalConsistencyError("nonneg_combination produced a bad point")
    if any(x < 0 for x in sol):
        raise InternalConsistencyError("nonneg_combination produced a negative coefficient")
    return sol


def separating_functional(vectors: Sequence[Vec], target: Vec) -> Optional[Vec]:
    """c with c.v >= 0 for all inputs and c.target <= -1, or None."""
    if not vectors:
        dim = len(target)
        rows = [(neg(target), Fraction(1))]
        sol = fm_solve(dim, rows)
        return tuple(sol) if sol is not None else None
    dim = len(target)
    rows = [(tuple(v), Fraction(0)) for v in vectors]
    rows.append((neg(target), Fraction(1)))
    sol = fm_solve(dim, rows)
    if sol is None:
        return None
    c = tuple(sol)
    if any(dot(c, v) < 0 for v in vectors) or dot(c, target) > -1:
        raise InternalConsistencyError("separating functional fails its own system")
    return c


def in_cone(vectors: Sequence[Vec], target: Vec) -> tuple[bool, dict]:
    """Farkas-certified membership of target in cone(vectors)."""
    comb = nonneg_combination(vectors, target)
    sep = separating_functional(vectors, target)
    if (comb is None) == (sep is None):
        raise InternalConsistencyError("in_cone: certificates disagree")
    if comb is not None:
        return True, {"combination": comb}
    return False, {"separator": sep}


def strict_positive_functional(vectors: Sequence[Vec]) -> Optional[Vec]:
    """c with c.v >= 1 for every input (so strictly positive), or None."""
    if not vectors:
        return ()
    dim = len(vectors[0])
    rows = [(tuple(v), Fraction(1)) for v in vectors]
    sol = fm_solve(dim, rows)
    if sol is None:
        return None
    c = tuple(sol)
    if any(dot(c, v) < 1 for v in vectors):
        raise InternalConsistencyError("strict functional fails its own system")
    return c


def positive_dependency(vectors: Sequence[Vec]) -> Optional[list[Fraction]]:
    """lam >= 0, sum lam = 1, sum lam_i v_i = 0; None when none exists."""
    m = len(vectors)
    if m == 0:
        return None
    dim = len(vectors[0])
    rows: list[tuple[tuple, Fraction]] = []
    for c in range(dim):
        row = tuple(v[c] for v in vectors)
        rows.append((row, Fraction(0)))
        rows.append((neg(row), Fraction(0)))
    ones = tuple(Fraction(1) for _ in range(m))
    rows.append((ones, Fraction(1)))
    rows.append((neg(ones), Fraction(-1)))
    for i in range(m):
        unit = tuple(Fraction(1 if j == i else 0) for j in range(m))
        rows.append((unit, Fraction(0)))
    sol = fm_solve(m, rows)
    if sol is None:
        return None
    if sum(sol, Fraction(0)) != 1 or any(x < 0 for x in sol):
        raise InternalConsistencyError("positive_dependency produced a bad point")
    for c in range(dim):
        if sum(sol[i] * vectors[i][c] for i in range(m)) != 0:
            raise InternalConsistencyError("positive_dependency not a dependency")
    return sol


def positively_independent(vectors: Sequence[Vec]) -> tuple[bool, dict]:
    """Gordan-dual decision with both certificates cross-checked."""
    func = strict_positive_functional(vectors)
    dep = positive_dependency(vectors)
    if (func is None) == (dep is None):
        raise InternalConsistencyError("Gordan duality violated by the solver")
    if func is not None:
        return True, {"functional": func}
    return False, {"dependency": dep}
