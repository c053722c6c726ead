"""Core algebra tests: ring structure, pairing, powers, duals.

Expected values for the exact operations were computed by hand from the 2x2
matrix arithmetic; numeric expectations come from independent polar-form
computations.
"""

import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topfan.czalgebra import (
    CZMat,
    cz_mul,
    cz_power,
    dual_basis,
    is_scalar_integer,
    pairing,
    real_matrix,
    standard_vector,
)
from topfan.errors import DomainError, NotUnimodular, SingularRealPart

I2 = CZMat.identity()


def rationals(max_num=9, max_den=9):
    return st.builds(
        Fraction, st.integers(-max_num, max_num), st.integers(1, max_den)
    )


def czmats():
    return st.builds(CZMat, rationals(), rationals(), st.integers(-5, 5))


# ---------------------------------------------------------------------------
# multiplication


def test_mul_identity():
    m = CZMat(Fraction(2, 3), Fraction(-1, 7), 4)
    assert cz_mul(I2, m) == m
    assert cz_mul(m, I2) == m


def test_mul_hand_checked():
    # [[2,0],[3,1]] * [[1,0],[1,1]]: c entry 3*1 + 1*1 = 4
    assert cz_mul(CZMat(2, 3, 1), CZMat(1, 1, 1)) == CZMat(2, 4, 1)
    # reversed order: c entry 1*2 + 1*3 = 5, witnessing noncommutativity
    assert cz_mul(CZMat(1, 1, 1), CZMat(2, 3, 1)) == CZMat(2, 5, 1)


@given(czmats(), czmats())
def test_mul_matches_dense_2x2(a, b):
    # oracle: full dense 2x2 product of [[b,0],[c,v]] matrices
    prod = cz_mul(a, b)
    dense = [
        [a.b * b.b + 0 * b.c, a.b * 0 + 0 * b.v],
        [a.c * b.b + a.v * b.c, a.c * 0 + a.v * b.v],
    ]
    assert dense[0][1] == 0
    assert (prod.b, prod.c, prod.v) == (dense[0][0], dense[1][0], dense[1][1])


@given(czmats(), czmats())
def test_ring_closure(a, b):
    # products and sums keep the [[*,0],[*,*]] shape with rational entries;
    # the integer part is multiplicative
    assert cz_mul(a, b).v == a.v * b.v
    assert (a + b).v == a.v + b.v


# ---------------------------------------------------------------------------
# pairing


def test_pairing_n1():
    m = CZMat(Fraction(5, 2), 3, -2)
    assert pairing((I2,), (m,)) == m


def test_pairing_dual_pair():
    alpha = CZMat(Fraction(1, 2), Fraction(-3, 2), 1)
    beta = CZMat(2, 3, 1)
    assert pairing((alpha,), (beta,)) == I2


def test_pairing_orthogonal_standard():
    e1 = standard_vector(2, 0)
    e2 = standard_vector(2, 1)
    assert pairing(e1, e2) == CZMat.zero()


def test_pairing_length_mismatch():
    with pytest.raises(ValueError):
        pairing((I2,), (I2, I2))


# ---------------------------------------------------------------------------
# generalized powers


def test_power_identity_exponent():
    rng = random.Random(7)
    for _ in range(10):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) or 1.0
        assert cz_power(z, I2) == pytest.approx(z, rel=1e-12)


def test_power_polar_formula():
    # r e^{it} with exponent [[b,0],[c,v]] gives r^b e^{i(c ln r + v t)}
    m = CZMat(Fraction(1, 2), Fraction(3, 4), -2)
    r, t = 1.7, 0.9
    z = cmath.rect(r, t)
    expected = (r ** 0.5) * cmath.exp(1j * (0.75 * math.log(r) - 2 * t))
    assert cz_power(z, m) == pytest.approx(expected, rel=1e-12)


def test_power_minus_identity_is_reciprocal():
    rng = random.Random(11)
    minus = CZMat.scalar(-1)
    for _ in range(10):
        z = complex(rng.uniform(0.2, 2), rng.uniform(-2, 2))
        assert cz_power(z, minus) == pytest.approx(1 / z, rel=1e-12)


def test_power_at_zero():
    assert cz_power(0, CZMat.scalar(2)) == 0
    with pytest.raises(DomainError):
        cz_power(0, CZMat.scalar(0))
    with pytest.raises(DomainError):
        cz_power(0, CZMat.scalar(-1))
    with pytest.raises(DomainError):
        cz_power(0, CZMat(1, 1, 1))


@settings(max_examples=60)
@given(czmats(), czmats(), st.integers(0, 1000))
def test_power_additivity(m, n, seed):
    rng = random.Random(seed)
    z = cmath.rect(rng.uniform(0.3, 3), rng.uniform(-math.pi, math.pi))
    lhs = cz_power(z, m + n)
    rhs = cz_power(z, m) * cz_power(z, n)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


# ---------------------------------------------------------------------------
# scalar-integer detection and its holomorphy meaning


def test_scalar_integer_examples():
    assert is_scalar_integer(CZMat.scalar(3)) == 3
    assert is_scalar_integer(CZMat(1, 1, 1)) is None
    assert is_scalar_integer(CZMat(Fraction(1, 2), 0, 1)) is None
    assert is_scalar_integer(CZMat.zero()) == 0


def cauchy_riemann_residual(m, z, h=1e-6):
    """|d/dx f + i d/dy f| for f = cz_power(., m); zero iff holomorphic."""
    fx = (cz_power(z + h, m) - cz_power(z - h, m)) / (2 * h)
    fy = (cz_power(z + 1j * h, m) - cz_power(z - 1j * h, m)) / (2 * h)
    return abs(fx + 1j * fy)


@pytest.mark.parametrize(
    "m",
    [
        CZMat.scalar(1),
        CZMat.scalar(-2),
        CZMat.scalar(3),
        CZMat(Fraction(-1, 2), 0, -1),
        CZMat(1, 1, 1),
        CZMat(2, 0, 1),
    ],
)
def test_holomorphy_iff_scalar_integer(m):
    rng = random.Random(23)
    residuals = []
    for _ in range(10):
        z = cmath.rect(rng.uniform(0.5, 1.8), rng.uniform(-3, 3))
        residuals.append(cauchy_riemann_residual(m, z))
    if is_scalar_integer(m) is not None:
        assert max(residuals) < 1e-6
    else:
        assert max(residuals) > 1e-6


# ---------------------------------------------------------------------------
# dual bases


def test_dual_n1_identity():
    assert dual_basis([(I2,)]) == (((I2),),)


def test_dual_n1_hand_checked():
    (alpha,) = dual_basis([(CZMat(2, 3, 1),)])
    assert alpha == (CZMat(Fraction(1, 2), Fraction(-3, 2), 1),)


def test_dual_n2_standard():
    basis = [standard_vector(2, 0), standard_vector(2, 1)]
    assert dual_basis(basis) == tuple(basis)


def test_dual_errors():
    with pytest.raises(SingularRealPart):
        dual_basis([(CZMat(0, 0, 1),)])
    with pytest.raises(NotUnimodular):
        dual_basis([(CZMat(1, 0, 2),)])


def random_unimodular(rng, n):
    """Random unimodular integer matrix as a product of elementary matrices."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        f = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += f * m[j][k]
    if rng.random() < 0.5 and n > 1:
        m[0], m[1] = m[1], m[0]
    return m


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_duality_exactness_random(n, seed):
    rng = random.Random(seed)
    v = random_unimodular(rng, n)
    while True:
        b = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
            for _ in range(n)
        ]
        if _det(b) != 0:
            break
    c = [
        [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        for _ in range(n)
    ]
    betas = [
        tuple(CZMat(b[i][j], c[i][j], v[i][j]) for j in range(n)) for i in range(n)
    ]
    alphas = dual_basis(betas)
    for h in range(n):
        for i in range(n):
            expected = I2 if h == i else CZMat.zero()
            assert pairing(alphas[h], betas[i]) == expected
    # integer part of every dual is integral by construction (type invariant)
    for alpha in alphas:
        for comp in alpha:
            assert isinstance(comp.v, int)


def _det(rows):
    from topfan.linalg import det, mat

    return det(mat(rows))


def test_real_matrix_cast():
    m = real_matrix(CZMat(Fraction(1, 2), Fraction(-3, 2), 1))
    assert m.tolist() == [[0.5, 0.0], [-1.5, 1.0]]
    assert real_matrix(CZMat.identity()).tolist() == [[1.0, 0.0], [0.0, 1.0]]
    assert real_matrix(CZMat.zero()).tolist() == [[0.0, 0.0], [0.0, 0.0]]
