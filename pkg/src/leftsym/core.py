"""Finite dimensional real algebras given by structure constants.

An algebra on R^n is stored as the rank-3 tensor C with

    e_i * e_j = sum_k C[i, j, k] e_k

over the standard basis.  Everything downstream (predicates, splittings,
curvature) is a contraction against C, so this module pins the index
conventions once:

    multiply(A, x, y)[k]    = x_i y_j C[i, j, k]
    left operator  L_x[k,j] = x_i C[i, j, k]      (L_x y = x * y)
    right operator R_x[k,i] = x_j C[i, j, k]      (R_x y = y * x)

Structure tensors are copied and frozen at construction; operations never
mutate an algebra, they return new ones.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, SingularMatrix


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerance for all numeric predicates.

    Residuals are compared against eps scaled by the magnitude of the data
    involved, see residual_scale.  The default is fixed; the command line
    layer may override it through the LSPK_EPS environment variable.
    """

    eps: float = 1e-9

    def __post_init__(self):
        if not (self.eps > 0.0 and np.isfinite(self.eps)):
            raise ValueError(f"eps must be positive and finite, got {self.eps}")

    @classmethod
    def from_env(cls) -> "Tolerance":
        raw = os.environ.get("LSPK_EPS")
        return cls() if raw is None else cls(float(raw))


def residual_scale(*arrays: np.ndarray) -> float:
    """max(1, largest absolute entry) over the given tensors.

    Predicates accept a residual r when r <= eps * residual_scale(...), so
    tolerances follow the magnitude of the structure constants involved.
    """
    m = 1.0
    for a in arrays:
        a = np.asarray(a, dtype=float)
        if a.size:
            m = max(m, float(np.max(np.abs(a))))
    return m


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    """An algebra on R^n, given by its structure constant tensor.

    constants has shape (n, n, n) with the convention spelled out in the
    module docstring.  No axioms are assumed at construction; the check_*
    predicates in leftsym.forms certify whatever property is needed.
    """

    constants: np.ndarray
    name: str = ""
    dim: int = field(init=False)

    def __post_init__(self):
        c = np.asarray(self.constants, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"constants must be (n, n, n), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("structure constants must be finite")
        object.__setattr__(self, "constants", _frozen(c))
        object.__setattr__(self, "dim", int(c.shape[0]))

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[i] = 1.0
        return e

    def __repr__(self):
        label = self.name or "algebra"
        return f"AlgebraStructure({label!r}, dim={self.dim})"


def _check_vector(A: AlgebraStructure, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (A.dim,):
        raise DimensionMismatch(f"expected vector of shape ({A.dim},), got {x.shape}")
    return x


def mult_operator(A: AlgebraStructure, x: np.ndarray, side: str = "left") -> np.ndarray:
    """Matrix of left or right multiplication by x.

    side='left' gives L_x with L_x y = x * y, side='right' gives R_x with
    R_x y = y * x.
    """
    x = _check_vector(A, x)
    if side == "left":
        return np.einsum("i,ijk->kj", x, A.constants)
    if side == "right":
        return np.einsum("j,ijk->ki", x, A.constants)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def multiply(A: AlgebraStructure, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product x * y. Evaluated as L_x y so it agrees with mult_operator exactly."""
    y = _check_vector(A, y)
    return mult_operator(A, x, "left") @ y


def associator(A: AlgebraStructure, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """(x*y)*z - x*(y*z)."""
    return multiply(A, multiply(A, x, y), z) - multiply(A, x, multiply(A, y, z))


def lie_bracket_constants(A: AlgebraStructure) -> AlgebraStructure:
    """Structure constants of the commutator [x, y] = x*y - y*x."""
    c = A.constants - A.constants.transpose(1, 0, 2)
    label = f"{A.name}:bracket" if A.name else "bracket"
    return AlgebraStructure(c, name=label)


def change_basis(A: AlgebraStructure, P: np.ndarray, tol: Tolerance = Tolerance()) -> AlgebraStructure:
    """Structure constants in the basis f_a = sum_i P[i, a] e_i.

    P carries the new basis as columns in old coordinates.  Raises
    SingularMatrix when |det P| <= eps.
    """
    P = np.asarray(P, dtype=float)
    if P.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"expected ({A.dim}, {A.dim}) matrix, got {P.shape}")
    det = np.linalg.det(P)
    if not np.isfinite(det) or abs(det) <= tol.eps:
        raise SingularMatrix(f"basis matrix has |det| = {abs(det):.3e}")
    Pinv = np.linalg.inv(P)
    c = np.einsum("ia,jb,ijk,ck->abc", P, P, A.constants, Pinv)
    return AlgebraStructure(c, name=A.name)
