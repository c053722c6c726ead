"""Strict-feasibility engine tests against an independent LP oracle."""

import random
from fractions import Fraction

from scipy.optimize import linprog

from topfan.fme import strict_feasible


def lp_strictly_feasible(rows, dim):
    """Oracle for homogeneous systems: maximize the margin inside a box.

    A homogeneous strict system has a solution iff it has one in [-1, 1]^dim
    with positive margin, so the LP optimum is positive exactly on feasible
    systems (and bounded well away from the 1e-9 cutoff for small integer
    coefficients).
    """
    if not rows:
        return True
    a_ub = []
    b_ub = []
    for coeffs, const in rows:
        assert const == 0, "oracle only handles homogeneous rows"
        a_ub.append([-float(x) for x in coeffs] + [1.0])
        b_ub.append(0.0)
    bounds = [(-1, 1)] * dim + [(None, 1)]
    cost = [0.0] * dim + [-1.0]
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    return res.status == 0 and -res.fun > 1e-9


def test_handcrafted_cases():
    one = Fraction(1)
    zero = Fraction(0)
    assert strict_feasible([], 0) == ()
    assert strict_feasible([((one,), zero)], 1) is not None
    assert strict_feasible([((one,), zero), ((-one,), zero)], 1) is None
    point = strict_feasible([((one, -one), zero), ((zero, one), zero)], 2)
    assert point is not None and point[0] > point[1] > 0
    # an all-zero row can never be strictly positive
    assert strict_feasible([((zero, zero), zero)], 2) is None


def test_matches_lp_oracle_on_random_systems():
    rng = random.Random(20240)
    for _ in range(300):
        dim = rng.randint(1, 4)
        count = rng.randint(1, 8)
        rows = [
            (
                tuple(Fraction(rng.randint(-4, 4)) for _ in range(dim)),
                Fraction(0),
            )
            for _ in range(count)
        ]
        point = strict_feasible(rows, dim)
        expected = lp_strictly_feasible(rows, dim)
        assert (point is not None) == expected
        if point is not None:
            for coeffs, const in rows:
                value = sum(c * y for c, y in zip(coeffs, point)) + const
                assert value > 0  # exact rational strictness
