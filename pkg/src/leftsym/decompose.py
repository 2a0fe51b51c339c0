"""Structure recovery for left-symmetric algebras with positive definite
trace form.

The pipeline runs in four stages, each of which certifies what it uses:

1. find_idempotent_H: the trace form B is positive definite and the B-dual
   H of the trace character is idempotent.
2. split_h: on the B-orthocomplement h of H (orthonormalized for the
   normalized inner product <,> = B / B(H,H)) the product induces a product
   circ plus two operators S (right multiplication by H) and A_op (left
   multiplication by H), and the relations tying (circ, <,>, S, A_op)
   together hold.
3. eigensplit: S has spectrum {0, 1}; on the eigenspaces A_op splits into
   skew parts B1 (shifted by 1/2) and B2 (shifted by 1).
4. extract_structure: the product blocks over the two eigenspaces give the
   structure data (rho1, rho2, omega1, omega2, circ2), and the full
   compatibility systems S1, S2, S3-1..S3-8 plus the flatness and
   representation conditions hold.

Every relation is evaluated as a whole-tensor contraction; residuals are
recorded by name in the returned LSPKDecomposition (None marks a relation
that is vacuous because one of the parts is zero dimensional), and the
first relation beyond tolerance raises.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._systems import system_residuals
from .core import AlgebraStructure, Tolerance, change_basis, multiply, residual_scale
from .errors import (
    BlockNotSkew,
    Circ1NonZero,
    DiagonalizationFailed,
    IdempotentCheckFailed,
    NotPositiveDefinite,
    PreconditionFailed,
    SpectrumNotZeroOne,
    SystemASViolated,
    SystemViolated,
)
from .forms import BilinearForm, check_hessian, check_left_symmetric, is_positive_definite, koszul_form

_CLUSTER_TOL = 1e-6  # clustering width for the S-spectrum around {0, 1}


def find_idempotent_H(A: AlgebraStructure, tol: Tolerance = Tolerance()) -> np.ndarray:
    """The canonical idempotent: B-dual of the trace character.

    Solves B(H, x) = tr(L_x) for H and verifies H*H = H.
    """
    B = koszul_form(A)
    if not is_positive_definite(B, tol):
        raise NotPositiveDefinite("trace form is not positive definite")
    t = np.einsum("kmm->k", A.constants)
    H = np.linalg.solve(B.matrix, t)
    resid = float(np.max(np.abs(multiply(A, H, H) - H)))
    if resid > tol.eps * residual_scale(A.constants, H):
        raise IdempotentCheckFailed(resid)
    return H


def _orthonormalize(cols: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Gram-Schmidt for the inner product g, with a re-orthogonalization pass."""
    out: list[np.ndarray] = []
    for v in cols.T:
        u = v.astype(float).copy()
        for _ in range(2):
            for w in out:
                u = u - (w @ g @ u) * w
        norm = float(np.sqrt(u @ g @ u))
        if norm <= 1e-12 * residual_scale(cols):
            raise DiagonalizationFailed("complement basis degenerated during orthonormalization")
        out.append(u / norm)
    return np.column_stack(out) if out else np.zeros((cols.shape[0], 0))


def _max_or_none(t: np.ndarray) -> float | None:
    return None if t.size == 0 else float(np.max(np.abs(t)))


@dataclass(frozen=True, eq=False)
class HSplit:
    """Stage-2 result: the complement of H with its induced data.

    h_basis columns are ambient vectors, orthonormal for <,> = B/rho.
    S and A_op are square matrices in that basis, circ the induced product
    on the complement, gram the measured Gram matrix (identity up to
    roundoff).
    """

    H: np.ndarray
    rho: float
    h_basis: np.ndarray
    S: np.ndarray
    A_op: np.ndarray
    circ: AlgebraStructure
    gram: np.ndarray
    residuals: dict


def split_h(A: AlgebraStructure, H: np.ndarray, tol: Tolerance = Tolerance()) -> HSplit:
    """Split off H and certify the induced system on its complement."""
    n = A.dim
    B = koszul_form(A)
    rho = B.value(H, H)
    if rho <= 0:
        raise NotPositiveDefinite(f"B(H, H) = {rho:.3e} is not positive")
    inner = B.matrix / rho

    _, _, vt = np.linalg.svd((B.matrix @ H).reshape(1, -1))
    h_basis = _orthonormalize(vt[1:].T, inner)
    m = n - 1

    w_h = inner @ h_basis  # coordinate extractor: <v, u_i> = v @ w_h[:, i]
    w_H = inner @ H
    c = A.constants

    xh = np.einsum("ia,ijk,j->ak", h_basis, c, H)  # rows: u_a * H
    hx = np.einsum("i,ja,ijk->ak", H, h_basis, c)  # rows: H * u_a
    S = (xh @ w_h).T
    A_op = (hx @ w_h).T

    prod = np.einsum("ia,jb,ijk->abk", h_basis, h_basis, c)
    h_coeff = np.einsum("abk,k->ab", prod, w_H)
    cc = np.einsum("abk,kc->abc", prod, w_h)
    circ = AlgebraStructure(cc, name=f"{A.name}:circ" if A.name else "circ")
    gram = h_basis.T @ inner @ h_basis

    eye = np.eye(m)
    assoc = np.einsum("ijm,mkl->ijkl", cc, cc) - np.einsum("jkm,iml->ijkl", cc, cc)
    anti = assoc - assoc.transpose(1, 0, 2, 3)
    target = np.einsum("jk,li->ijkl", eye, S) - np.einsum("ik,lj->ijkl", eye, S)

    cc_bracket = cc - cc.transpose(1, 0, 2)
    as3 = np.einsum("lm,ijm->ijl", S, cc_bracket) - (
        np.einsum("mj,iml->ijl", S, cc) - np.einsum("mi,jml->ijl", S, cc)
    )
    as4 = np.einsum("lm,ijm->ijl", A_op, cc) - (
        np.einsum("mi,mjl->ijl", A_op, cc)
        + np.einsum("mj,iml->ijl", A_op, cc)
        - np.einsum("mi,mjl->ijl", S, cc)
    )

    residuals: dict[str, float | None] = {
        "XH_stays_in_h": _max_or_none(xh @ w_H),
        "HX_stays_in_h": _max_or_none(hx @ w_H),
        "hh_H_component": _max_or_none(h_coeff - eye),
        "gram_identity": _max_or_none(gram - eye),
        "AS-1": check_hessian(circ, BilinearForm.identity(m), tol).max_residual,
        "AS-2": _max_or_none(anti - target),
        "AS-3": _max_or_none(as3),
        "AS-4": _max_or_none(as4),
        "AS-5": _max_or_none(S - (A_op + A_op.T - eye)),
        "AS-6": _max_or_none(S @ A_op - A_op @ S - (S @ S - S)),
        "AS-7": _max_or_none(np.einsum("amm->a", cc)),
        "AS-S-symmetric": _max_or_none(S - S.T),
    }
    thr = tol.eps * residual_scale(c, S, A_op, cc)
    for name, value in residuals.items():
        if value is not None and value > thr:
            raise SystemASViolated(name, value)
    return HSplit(H=H, rho=float(rho), h_basis=h_basis, S=S, A_op=A_op, circ=circ, gram=gram, residuals=residuals)


@dataclass(frozen=True, eq=False)
class EigenSplit:
    """Stage-3 result: eigenbases of S (coordinates in the h basis) and the
    skew blocks of A_op on them."""

    h1: np.ndarray
    h2: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    residuals: dict


def eigensplit(S: np.ndarray, A_op: np.ndarray, tol: Tolerance = Tolerance()) -> EigenSplit:
    """Split the complement along the {0, 1} spectrum of S."""
    S_sym = (S + S.T) / 2.0
    mu, u = np.linalg.eigh(S_sym) if S.size else (np.zeros(0), np.zeros((0, 0)))
    near0 = np.abs(mu) <= _CLUSTER_TOL
    near1 = np.abs(mu - 1.0) <= _CLUSTER_TOL
    if not np.all(near0 | near1):
        bad = mu[~(near0 | near1)]
        raise SpectrumNotZeroOne(f"S has eigenvalues {bad} away from {{0, 1}}")
    u1 = u[:, near0]
    u2 = u[:, near1]
    n1, n2 = u1.shape[1], u2.shape[1]

    B1 = u1.T @ A_op @ u1 - np.eye(n1) / 2.0
    B2 = u2.T @ A_op @ u2 - np.eye(n2)
    thr = tol.eps * residual_scale(S, A_op)
    skew1 = _max_or_none(B1 + B1.T)
    skew2 = _max_or_none(B2 + B2.T)
    if skew1 is not None and skew1 > thr:
        raise BlockNotSkew("B1", skew1)
    if skew2 is not None and skew2 > thr:
        raise BlockNotSkew("B2", skew2)
    off = max(
        _max_or_none(u1.T @ A_op @ u2) or 0.0,
        _max_or_none(u2.T @ A_op @ u1) or 0.0,
    )
    residuals = {"B1_skew_split": skew1, "B2_skew_split": skew2, "A_offdiagonal": off}
    return EigenSplit(h1=u1, h2=u2, B1=B1, B2=B2, residuals=residuals)


@dataclass(frozen=True, eq=False)
class LSPKDecomposition:
    """Full structure data of a decomposed algebra.

    basis_h1/basis_h2 columns and H are ambient vectors; together they are
    orthonormal for <,> = B/rho (so the trace form is rho times the
    identity in this basis).  Operator-family tensors follow the convention
    rho1[x][l, m] = l-coordinate of the action of the x-th h1 basis vector
    on the m-th h2 basis vector, and omega1[x, y, :] is an h2-coordinate
    vector (symmetric in x, y); mirrored for rho2/omega2.
    """

    H: np.ndarray
    rho: float
    basis_h1: np.ndarray
    basis_h2: np.ndarray
    basis: np.ndarray
    S: np.ndarray
    A_op: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    omega1: np.ndarray
    omega2: np.ndarray
    circ2: AlgebraStructure
    residuals: dict

    @property
    def dim_h1(self) -> int:
        return self.basis_h1.shape[1]

    @property
    def dim_h2(self) -> int:
        return self.basis_h2.shape[1]

    @property
    def signature(self) -> tuple[int, int, float]:
        return (self.dim_h1, self.dim_h2, self.rho)


def extract_structure(
    A: AlgebraStructure,
    hsplit: HSplit,
    esplit: EigenSplit,
    tol: Tolerance = Tolerance(),
) -> LSPKDecomposition:
    """Read off the block data on the eigenspaces and certify the systems."""
    u1, u2 = esplit.h1, esplit.h2
    n1, n2 = u1.shape[1], u2.shape[1]
    w = np.column_stack([u1, u2])
    circ_split = change_basis(hsplit.circ, w, tol) if w.size else hsplit.circ
    cc = circ_split.constants
    s1, s2 = slice(0, n1), slice(n1, n1 + n2)

    c2 = np.ascontiguousarray(cc[s2, s2, s2])
    omega1 = np.ascontiguousarray(cc[s1, s1, s2])
    omega2 = np.ascontiguousarray(cc[s2, s2, s1])
    rho1 = np.ascontiguousarray(cc[s1, s2, s2]).transpose(0, 2, 1)
    rho2 = np.ascontiguousarray(cc[s2, s1, s1]).transpose(0, 2, 1)
    circ2 = AlgebraStructure(c2, name=f"{A.name}:circ2" if A.name else "circ2")
    B1, B2 = esplit.B1, esplit.B2

    extras: dict[str, float | None] = {
        "circ1": _max_or_none(cc[s1, s1, s1]),
        "mixed_12_block": _max_or_none(cc[s1, s2, s1]),
        "mixed_21_block": _max_or_none(cc[s2, s1, s2]),
        "omega1_symmetric": _max_or_none(omega1 - omega1.transpose(1, 0, 2)),
        "omega2_symmetric": _max_or_none(omega2 - omega2.transpose(1, 0, 2)),
    }
    sys_res = system_residuals(c2, rho1, rho2, omega1, omega2, B1, B2, np.eye(n1), np.eye(n2))

    basis_h1 = hsplit.h_basis @ u1
    basis_h2 = hsplit.h_basis @ u2
    basis = np.column_stack([basis_h1, basis_h2, hsplit.H])
    B = koszul_form(A)
    tail: dict[str, float | None] = {
        "koszul_blocks": _max_or_none(basis.T @ B.matrix @ basis - hsplit.rho * np.eye(A.dim)),
        "rho_formula": abs(hsplit.rho - (n1 / 2.0 + n2 + 1.0)),
    }

    thr = tol.eps * residual_scale(A.constants, cc, B1, B2)
    for name, value in {**extras, **sys_res, **tail}.items():
        if value is None:
            continue
        limit = 10.0 * thr if name == "koszul_blocks" else thr
        if value > limit:
            if name == "circ1":
                raise Circ1NonZero(value)
            raise SystemViolated(name, value)

    residuals = {**hsplit.residuals, **esplit.residuals, **extras, **sys_res, **tail}
    return LSPKDecomposition(
        H=hsplit.H,
        rho=hsplit.rho,
        basis_h1=basis_h1,
        basis_h2=basis_h2,
        basis=basis,
        S=hsplit.S,
        A_op=hsplit.A_op,
        B1=B1,
        B2=B2,
        rho1=rho1,
        rho2=rho2,
        omega1=omega1,
        omega2=omega2,
        circ2=circ2,
        residuals=residuals,
    )


def decompose(A: AlgebraStructure, tol: Tolerance = Tolerance()) -> LSPKDecomposition:
    """Run the full pipeline; each stage raises on its own failures."""
    rep = check_left_symmetric(A, tol)
    if not rep:
        raise PreconditionFailed(f"not left-symmetric, residual {rep.max_residual:.3e}")
    H = find_idempotent_H(A, tol)
    hs = split_h(A, H, tol)
    es = eigensplit(hs.S, hs.A_op, tol)
    return extract_structure(A, hs, es, tol)
