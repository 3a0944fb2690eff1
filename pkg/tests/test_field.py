import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planet.errors import BackendError, FieldError
from planet.field import ComplexField, CyclotomicField, cyclotomic_polynomial, euler_phi, field_from_descriptor

small = st.integers(-6, 6)
vec = st.lists(small, min_size=4, max_size=4)


def embed(field, a):
    return field.to_complex(a)


def test_cyclotomic_polynomials_match_known_values():
    # low-to-high coefficients
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", range(1, 40))
def test_degree_is_euler_phi(n):
    phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert euler_phi(n) == phi == CyclotomicField(n).degree


@given(vec, vec)
def test_arithmetic_agrees_with_complex_embedding(u, v):
    K = CyclotomicField(12)
    a, b = K.from_coefficients(u), K.from_coefficients(v)
    za, zb = embed(K, a), embed(K, b)
    assert abs(embed(K, a + b) - (za + zb)) < 1e-9
    assert abs(embed(K, a * b) - za * zb) < 1e-9
    if not K.is_zero(b):
        assert abs(embed(K, a / b) - za / zb) < 1e-9 * max(1, abs(za / zb))


@given(vec)
def test_inverse_round_trip(u):
    K = CyclotomicField(12)
    a = K.from_coefficients(u)
    if K.is_zero(a):
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == K.one


def test_roots_of_unity():
    K = CyclotomicField(12)
    for m in (1, 2, 3, 4, 6, 12):
        z = K.zeta(m)
        assert z**m == K.one
        assert abs(embed(K, z) - cmath.exp(2j * math.pi / m)) < 1e-12
    assert K.i * K.i == -K.one
    with pytest.raises(FieldError):
        K.zeta(5)


def test_rational_field_degree_one():
    Q = CyclotomicField(1)
    assert Q(Fraction(1, 3)) * 3 == Q.one
    assert CyclotomicField(2).zeta(2) == -CyclotomicField(2).one


def test_backend_mixing_is_rejected():
    with pytest.raises(BackendError):
        CyclotomicField(3).one + CyclotomicField(4).one
    with pytest.raises(BackendError):
        ComplexField()(CyclotomicField(3).one)


def test_exact_linear_algebra():
    K = CyclotomicField(3)
    w = K.zeta(3)
    rows = [[K.one, w, w * w], [K.one, w * w, w], [K.one, K.one, K.one]]
    assert K.rank(rows) == 3
    ns = K.nullspace([[K.one, K.one, K.one]])
    assert len(ns) == 2
    for v in ns:
        assert sum(v, K.zero) == K.zero
    x = K.solve(rows, [K.one, K.zero, K.zero])
    assert [sum((r[j] * x[j] for j in range(3)), K.zero) for r in rows] == [K.one, K.zero, K.zero]


def test_approx_rank_threshold():
    F = ComplexField(eps_rank=1e-8)
    assert F.rank([[1, 0], [0, 1e-12]]) == 1
    assert F.rank([[1, 0], [0, 1e-6]]) == 2
    ns = F.nullspace([[1, 1, 1]])
    assert len(ns) == 2
    assert all(abs(np.sum(v)) < 1e-12 for v in ns)


@given(vec)
def test_json_round_trip_exact(u):
    K = CyclotomicField(12)
    a = K.from_coefficients(u) / 3
    assert K.decode(K.encode(a)) == a


def test_json_round_trip_complex():
    F = ComplexField()
    z = complex(0.1, -7.25)
    assert F.decode(F.encode(z)) == z
    assert F.encode(z) == [0.1, -7.25]


def test_descriptors():
    assert field_from_descriptor("complex") == ComplexField()
    assert field_from_descriptor({"cyclotomic": 8}) == CyclotomicField(8)
    with pytest.raises(FieldError):
        field_from_descriptor("quaternions")
    with pytest.raises(BackendError):
        CyclotomicField(4).decode({"N": 3, "coeffs": [[1, 1], [0, 1]]})
