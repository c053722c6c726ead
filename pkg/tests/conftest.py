"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's code paths: membership uses
Leibniz determinants with Cramer's rule, and 2D cone overlap is decided by
sector arithmetic instead of Fourier-Motzkin feasibility.
"""

from fractions import Fraction
from itertools import permutations

import pytest

from topfan.fan import SimplicialComplex, TopologicalFan


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = Fraction(1)
        for r in range(n):
            prod *= Fraction(rows[r][perm[r]])
        total += sign * prod
    return total


def cramer_membership(generators, point):
    """Coefficients of point over the generators, or None when dependent."""
    n = len(point)
    columns = [[Fraction(g[r]) for g in generators] for r in range(n)]
    d = leibniz_det(columns)
    if d == 0:
        return None
    coords = []
    for i in range(n):
        replaced = [row[:] for row in columns]
        for r in range(n):
            replaced[r][i] = Fraction(point[r])
        coords.append(leibniz_det(replaced) / d)
    return tuple(coords)


def strictly_inside(fan, simplex, point):
    gens = [fan.real_row(i) for i in sorted(simplex)]
    coeffs = cramer_membership(gens, point)
    return coeffs is not None and all(c > 0 for c in coeffs)


def inside_closed(fan, simplex, point):
    gens = [fan.real_row(i) for i in sorted(simplex)]
    coeffs = cramer_membership(gens, point)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def _cross(a, b):
    return Fraction(a[0]) * Fraction(b[1]) - Fraction(a[1]) * Fraction(b[0])


def _same_ray(a, b):
    return _cross(a, b) == 0 and (
        Fraction(a[0]) * Fraction(b[0]) + Fraction(a[1]) * Fraction(b[1]) > 0
    )


def _ray_strictly_in_sector(u, a, b):
    d = _cross(a, b)
    if d > 0:
        return _cross(a, u) > 0 and _cross(u, b) > 0
    return _cross(b, u) > 0 and _cross(u, a) > 0


def sectors_overlap(gens_a, gens_b):
    """2D oracle: do two simplicial sectors share interior rays?"""
    a1, a2 = gens_a
    b1, b2 = gens_b
    if {True} == {
        _same_ray(a1, b1) or _same_ray(a1, b2),
        _same_ray(a2, b1) or _same_ray(a2, b2),
    }:
        return True
    return any(
        _ray_strictly_in_sector(u, a1, a2) for u in (b1, b2)
    ) or any(_ray_strictly_in_sector(u, b1, b2) for u in (a1, a2))


def brute_force_nonoverlap_2d(fan):
    maximal = fan.maximal_simplices()
    for p in range(len(maximal)):
        for q in range(p + 1, len(maximal)):
            gens_p = [fan.real_row(i) for i in maximal[p]]
            gens_q = [fan.real_row(i) for i in maximal[q]]
            if sectors_overlap(gens_p, gens_q):
                return False
    return True


# ---------------------------------------------------------------------------
# fan mutations


def remove_maximal_simplex(fan, simplex):
    """Drop one maximal simplex, reindexing away any orphaned vertices."""
    target = tuple(sorted(simplex))
    keep = [s for s in fan.maximal_simplices() if s != target]
    used = sorted(set().union(*(set(s) for s in keep)))
    remap = {v: k for k, v in enumerate(used)}
    sc = SimplicialComplex(len(used), [[remap[v] for v in s] for s in keep])
    return TopologicalFan(fan.n, sc, tuple(fan.beta[v] for v in used))


def duplicate_cone(fan, simplex):
    """Clone the vertices of one maximal simplex and re-add the same cone."""
    target = tuple(sorted(simplex))
    m = fan.m
    beta = fan.beta + tuple(fan.beta[v] for v in target)
    clone = tuple(range(m, m + len(target)))
    sc = SimplicialComplex(m + len(target), fan.maximal_simplices() + [clone])
    return TopologicalFan(fan.n, sc, beta)


def random_structure(rng, n, ell, require_j21=False):
    """Random conjugate of the standard structure; squares to minus identity."""
    import numpy as np

    from topfan import linalg
    from topfan.acs import OrbitACS, std_complex_structure

    size = 2 * (n + ell)
    std = linalg.to_float(std_complex_structure(n + ell))
    while True:
        s = np.array([[rng.gauss(0, 1) for _ in range(size)] for _ in range(size)])
        if abs(np.linalg.det(s)) < 0.05:
            continue
        j0 = s @ std @ np.linalg.inv(s)
        if not require_j21:
            return OrbitACS(ell, j0.tolist())
        if ell > 0 and np.max(np.abs(j0[2 * n :, : 2 * n])) > 0.05:
            return OrbitACS(ell, j0.tolist())


@pytest.fixture(scope="session")
def catalog_fans():
    from topfan import catalog

    return catalog.all_fans()
