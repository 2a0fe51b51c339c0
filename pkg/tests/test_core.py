"""Index conventions of the core tensor operations, pinned by hand examples.

The convention tests use products small enough to evaluate by hand; the
property tests check bilinearity and that change_basis really transports
the multiplication (P carries the new basis as columns).
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leftsym import (
    AlgebraStructure,
    DimensionMismatch,
    SingularMatrix,
    Tolerance,
    associator,
    change_basis,
    lie_bracket_constants,
    mult_operator,
    multiply,
)

_coef = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def algebras(draw, n=2):
    """Arbitrary structure tensor on R^n with bounded entries."""
    flat = draw(st.lists(_coef, min_size=n**3, max_size=n**3))
    return AlgebraStructure(np.array(flat).reshape(n, n, n))


@st.composite
def vectors(draw, n=2):
    return np.array(draw(st.lists(_coef, min_size=n, max_size=n)))


def test_multiply_matches_convention(dim2):
    e, H = dim2.basis_vector(0), dim2.basis_vector(1)
    np.testing.assert_array_equal(multiply(dim2, e, e), H)
    np.testing.assert_array_equal(multiply(dim2, H, e), 0.5 * e)
    np.testing.assert_array_equal(multiply(dim2, e, H), np.zeros(2))
    np.testing.assert_array_equal(multiply(dim2, H, H), H)


def test_mult_operator_sides(dim2):
    e, H = dim2.basis_vector(0), dim2.basis_vector(1)
    # L_H y = H * y, columns are H*e and H*H
    np.testing.assert_array_equal(mult_operator(dim2, H, "left"), np.diag([0.5, 1.0]))
    # R_H y = y * H, columns are e*H and H*H
    np.testing.assert_array_equal(mult_operator(dim2, H, "right"), np.diag([0.0, 1.0]))
    np.testing.assert_array_equal(mult_operator(dim2, e, "left") @ H, multiply(dim2, e, H))
    with pytest.raises(ValueError):
        mult_operator(dim2, e, "up")


def test_associator_left_symmetry(dim2):
    e, H = dim2.basis_vector(0), dim2.basis_vector(1)
    x = 0.3 * e + 1.7 * H
    y = -1.2 * e + 0.4 * H
    z = e - H
    lhs = associator(dim2, x, y, z)
    rhs = associator(dim2, y, x, z)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_lie_bracket_constants(dim2):
    cb = lie_bracket_constants(dim2)
    # [e, H] = e*H - H*e = -e/2
    np.testing.assert_array_equal(cb.constants[0, 1], np.array([-0.5, 0.0]))
    np.testing.assert_array_equal(cb.constants[1, 0], np.array([0.5, 0.0]))
    assert np.max(np.abs(cb.constants + cb.constants.transpose(1, 0, 2))) == 0.0


def test_change_basis_rotation(a0):
    # rotate a0 by 45 degrees: f1*f1 = e2/2 = (f1 + f2) / (2 sqrt 2)
    s = 1.0 / np.sqrt(2.0)
    P = np.array([[s, -s], [s, s]])
    rot = change_basis(a0, P)
    want = 1.0 / (2.0 * np.sqrt(2.0))
    np.testing.assert_allclose(rot.constants[0, 0], np.array([want, want]), atol=1e-15)


def test_change_basis_rejects_singular(a0):
    with pytest.raises(SingularMatrix):
        change_basis(a0, np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(DimensionMismatch):
        change_basis(a0, np.eye(3))


def test_structure_tensor_validation():
    with pytest.raises(DimensionMismatch):
        AlgebraStructure(np.zeros((2, 2)))
    with pytest.raises(DimensionMismatch):
        AlgebraStructure(np.zeros((2, 2, 3)))
    with pytest.raises(ValueError):
        AlgebraStructure(np.full((2, 2, 2), np.nan))
    A = AlgebraStructure(np.zeros((3, 3, 3)))
    assert A.dim == 3
    with pytest.raises(ValueError):
        A.constants[0, 0, 0] = 1.0  # frozen


def test_tolerance_from_env(monkeypatch):
    monkeypatch.delenv("LSPK_EPS", raising=False)
    assert Tolerance.from_env().eps == Tolerance().eps
    monkeypatch.setenv("LSPK_EPS", "1e-4")
    assert Tolerance.from_env().eps == 1e-4
    with pytest.raises(ValueError):
        Tolerance(-1.0)


@settings(max_examples=60)
@given(A=algebras(), x=vectors(), y=vectors(), z=vectors(), a=_coef)
def test_multiply_is_bilinear(A, x, y, z, a):
    left = multiply(A, a * x + y, z)
    np.testing.assert_allclose(left, a * multiply(A, x, z) + multiply(A, y, z), atol=1e-9)
    right = multiply(A, x, a * y + z)
    np.testing.assert_allclose(right, a * multiply(A, x, y) + multiply(A, x, z), atol=1e-9)


@st.composite
def invertible(draw, n=2):
    flat = draw(st.lists(_coef, min_size=n * n, max_size=n * n))
    P = np.eye(n) + 0.4 * np.array(flat).reshape(n, n)
    if abs(np.linalg.det(P)) < 0.2:
        P = P + np.eye(n)
    return P


@settings(max_examples=60)
@given(A=algebras(), P=invertible(), u=vectors(), v=vectors())
def test_change_basis_transports_product(A, P, u, v):
    if abs(np.linalg.det(P)) < 0.2:
        return
    Ab = change_basis(A, P)
    # product of new-coordinate vectors, pushed back to old coordinates
    np.testing.assert_allclose(
        P @ multiply(Ab, u, v), multiply(A, P @ u, P @ v), atol=1e-7
    )


@settings(max_examples=30)
@given(A=algebras(), P=invertible())
def test_change_basis_round_trip(A, P):
    if abs(np.linalg.det(P)) < 0.2:
        return
    back = change_basis(change_basis(A, P), np.linalg.inv(P))
    np.testing.assert_allclose(back.constants, A.constants, atol=1e-8)
