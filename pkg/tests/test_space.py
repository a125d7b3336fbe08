"""Inner product, norms, and vector arithmetic on truncated spaces."""

import math
from fractions import Fraction

import numpy as np
import pytest

from bergman_lab import (
    AmbientMismatch,
    ScalarMode,
    TruncatedSpace,
    WeightParams,
    inner,
    monomial,
    norm,
    norm_sq,
    random_vector,
    vector,
    weight_sequence,
)

FLOAT = ScalarMode.FLOAT64
EXACT = ScalarMode.EXACT_RATIONAL


def make_space(alpha, dim, mode=FLOAT):
    ws = weight_sequence(WeightParams(alpha, 1, dim), mode)
    return TruncatedSpace(ws, dim)


def test_norm_frozen_one_plus_z():
    """||1 + z|| at alpha = 1: omega = (1, 1/3), so norm = sqrt(4/3)."""
    space = make_space(1.0, 8)
    f = vector(space, [1.0, 1.0] + [0.0] * 6)
    assert norm(f) == pytest.approx(1.1547005383792515, rel=1e-15)
    exact_space = make_space(Fraction(1), 8, EXACT)
    g = vector(exact_space, [Fraction(1), Fraction(1)] + [Fraction(0)] * 6)
    assert norm_sq(g) == Fraction(4, 3)


def test_inner_frozen():
    space = make_space(1.0, 6)
    f = vector(space, [1.0, 1.0, 0, 0, 0, 0])
    g = monomial(space, 0)
    assert inner(f, g) == pytest.approx(1.0)
    h = monomial(space, 1)
    assert inner(f, h) == pytest.approx(1.0 / 3.0, rel=1e-15)


@pytest.mark.parametrize("m,n", [(0, 0), (0, 3), (2, 2), (1, 4)])
def test_monomial_orthogonality(m, n):
    """<z^m, z^n> = delta_{mn} omega_n."""
    space = make_space(0.5, 8)
    val = inner(monomial(space, m), monomial(space, n))
    if m == n:
        assert val == pytest.approx(space.metric[n], rel=1e-15)
    else:
        assert val == 0.0


def test_inner_conjugate_symmetry():
    space = make_space(0.0, 12)
    f = random_vector(space, 3)
    g = random_vector(space, 4)
    assert inner(f, g) == pytest.approx(np.conjugate(inner(g, f)), rel=1e-14)


def test_inner_sesquilinear():
    space = make_space(2.5, 10)
    f, g, h = (random_vector(space, s) for s in (1, 2, 3))
    lhs = inner(f + (2.0 - 1.0j) * g, h)
    rhs = inner(f, h) + (2.0 - 1.0j) * inner(g, h)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_cauchy_schwarz():
    space = make_space(-0.5, 16)
    for seed in range(5):
        f = random_vector(space, seed)
        g = random_vector(space, seed + 100)
        assert abs(inner(f, g)) <= norm(f) * norm(g) * (1 + 1e-12)


def test_parallelogram_float():
    space = make_space(1.0, 20)
    f = random_vector(space, 11)
    g = random_vector(space, 12)
    lhs = norm_sq(f + g) + norm_sq(f - g)
    rhs = 2.0 * (norm_sq(f) + norm_sq(g))
    assert abs(lhs - rhs) <= 1e-12 * rhs


def test_parallelogram_exact():
    space = make_space(Fraction(1, 2), 12, EXACT)
    f = random_vector(space, 11)
    g = random_vector(space, 12)
    assert norm_sq(f + g) + norm_sq(f - g) == 2 * (norm_sq(f) + norm_sq(g))


def test_norm_sq_exact_is_fraction():
    space = make_space(Fraction(0), 6, EXACT)
    f = vector(space, [Fraction(1, 2)] * 6)
    assert isinstance(norm_sq(f), Fraction)
    assert norm_sq(f) == sum(Fraction(1, 4) * w for w in space.metric)


def test_ambient_mismatch():
    a = make_space(0.5, 8)
    b = make_space(0.5, 10)
    with pytest.raises(AmbientMismatch):
        inner(random_vector(a, 0), random_vector(b, 0))
    with pytest.raises(AmbientMismatch):
        _ = random_vector(a, 0) + random_vector(b, 0)


def test_random_vector_deterministic():
    space = make_space(0.0, 24)
    f1 = random_vector(space, 42)
    f2 = random_vector(space, 42)
    f3 = random_vector(space, 43)
    assert np.array_equal(f1.coeffs, f2.coeffs)
    assert not np.array_equal(f1.coeffs, f3.coeffs)


def test_random_vector_exact_mode_rational():
    space = make_space(Fraction(1), 10, EXACT)
    f = random_vector(space, 7)
    assert all(isinstance(c, Fraction) for c in f.coeffs)
    assert norm_sq(f) > 0


def test_vector_arithmetic():
    space = make_space(1.0, 5)
    f = vector(space, [1, 2, 3, 4, 5])
    g = vector(space, [5, 4, 3, 2, 1])
    s = f + g
    assert np.allclose(s.coeffs, 6.0)
    d = f - g
    assert np.allclose(d.coeffs, [-4, -2, 0, 2, 4])
    h = 2.0 * f
    assert np.allclose(h.coeffs, [2, 4, 6, 8, 10])


def test_space_equality_by_value():
    a = make_space(0.5, 8)
    b = make_space(0.5, 8)
    assert a == b
    assert a != make_space(0.5, 9)
    assert a != make_space(0.75, 8)


def test_zero_vector_and_norms():
    space = make_space(2.5, 7)
    z = vector(space, space.zeros())
    assert norm(z) == 0.0
    assert norm_sq(z) == 0.0
    assert math.isclose(norm(monomial(space, 0)), 1.0)


def test_coordinate_space_with_explicit_metric():
    g = np.array([1.0, 0.25, 4.0])
    space = TruncatedSpace(metric=g, mode=FLOAT)
    f = vector(space, [1.0, 2.0, 0.5])
    assert norm_sq(f) == pytest.approx(1.0 + 0.25 * 4.0 + 4.0 * 0.25)
