"""Left-invariant geometry attached to a metric algebra.

For an algebra with a metric, the commutator bracket and the metric give a
canonical torsion-free metric product (Levi-Civita), and the difference
operators gamma_x = Lbar_x - L_x measure how far the original product is
from metric-compatible.  The curvature here uses the sign convention

    K(X, Y) = Lbar_[X,Y] - Lbar_X Lbar_Y + Lbar_Y Lbar_X

and ric(X, Y) is the trace of Z -> K(X, Z)Y.

When the pair (product, metric) satisfies the flatness and compatibility
identities, the same quantities have second, independent expressions
through the gamma operators (K as commutators, ric through gamma traces);
every function here that can cross-check a result this way does so and
raises OracleMismatch on disagreement.

The sphere-bundle style metric on the double space h + h (horizontal and
vertical copies) has Ricci blocks computed by a literal frame sum over the
six curvature component formulas; the result is compared against the
closed form -beta on both diagonal blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AlgebraStructure, Tolerance, lie_bracket_constants, residual_scale
from .errors import (
    NotEinstein,
    NotLieBracket,
    NotLSPK,
    NotPositiveDefinite,
    OracleMismatch,
    PreconditionFailed,
    VerificationFailed,
)
from .forms import (
    BilinearForm,
    MetricAlgebra,
    check_hessian,
    check_jacobi,
    check_left_symmetric,
    is_positive_definite,
    koszul_form,
)


def levi_civita_product(
    bracket: AlgebraStructure, metric: BilinearForm, tol: Tolerance = Tolerance()
) -> AlgebraStructure:
    """The torsion-free metric product of a metric Lie algebra.

    Solves 2<X.Y, Z> = <[X,Y], Z> - <[Y,Z], X> + <[Z,X], Y> for X.Y and
    verifies the defining properties (skew left multiplications, commutator
    equal to the bracket) on the result.
    """
    rep = check_jacobi(bracket, tol)
    if not rep:
        raise NotLieBracket(f"Jacobi identity fails, residual {rep.max_residual:.3e}")
    if not is_positive_definite(metric, tol):
        raise NotPositiveDefinite("metric is not positive definite")
    cb = bracket.constants
    g = metric.matrix
    n = bracket.dim
    rhs = (
        np.einsum("ijl,lk->ijk", cb, g)
        - np.einsum("jkl,li->ijk", cb, g)
        + np.einsum("kil,lj->ijk", cb, g)
    )
    lc = np.linalg.solve(2.0 * g, rhs.reshape(-1, n).T).T.reshape(n, n, n)
    label = f"{bracket.name}:lc" if bracket.name else "lc"
    out = AlgebraStructure(lc, name=label)

    thr = tol.eps * residual_scale(cb, g, lc)
    ops = np.einsum("lm,imk->ilk", g, lc.transpose(0, 2, 1))  # g Lbar_i
    skew = float(np.max(np.abs(ops + ops.transpose(0, 2, 1)))) if ops.size else 0.0
    if skew > thr:
        raise VerificationFailed(f"metric product is not metric, residual {skew:.3e}")
    torsion = float(np.max(np.abs(lc - lc.transpose(1, 0, 2) - cb))) if lc.size else 0.0
    if torsion > thr:
        raise VerificationFailed(f"commutator does not match the bracket, residual {torsion:.3e}")
    return out


def _gamma_data(M: MetricAlgebra, tol: Tolerance) -> tuple[AlgebraStructure, np.ndarray]:
    """Levi-Civita constants and the stack gamma[i] = Lbar_i - L_i."""
    lc = levi_civita_product(lie_bracket_constants(M.algebra), M.metric, tol)
    gamma = (lc.constants - M.algebra.constants).transpose(0, 2, 1)
    return lc, gamma


def gamma_operator(M: MetricAlgebra, x: np.ndarray, tol: Tolerance = Tolerance()) -> np.ndarray:
    """The difference operator gamma_x = Lbar_x - L_x as a matrix.

    When the pair satisfies the metric compatibility identity, gamma_x must
    be symmetric for the metric; this is verified and a violation raises.
    """
    x = np.asarray(x, dtype=float)
    _, gamma = _gamma_data(M, tol)
    op = np.einsum("i,ilk->lk", x, gamma)
    if check_hessian(M.algebra, M.metric, tol):
        m = M.metric.matrix @ op
        resid = float(np.max(np.abs(m - m.T))) if m.size else 0.0
        if resid > tol.eps * residual_scale(M.algebra.constants, M.metric.matrix, x):
            raise VerificationFailed(f"gamma operator not symmetric, residual {resid:.3e}")
    return op


def second_koszul_form(M: MetricAlgebra, tol: Tolerance = Tolerance()) -> BilinearForm:
    """The trace form computed through the gamma operators.

    beta(X, Y) = -tr(gamma_{X*Y}); this must agree with the direct trace
    form of the product (the route through the metric product is
    independent), and the disagreement raises OracleMismatch.
    """
    _, gamma = _gamma_data(M, tol)
    tr_gamma = np.einsum("imm->i", gamma)
    beta = -np.einsum("ijk,k->ij", M.algebra.constants, tr_gamma)
    direct = koszul_form(M.algebra).matrix
    resid = float(np.max(np.abs(beta - direct))) if beta.size else 0.0
    if resid > tol.eps * residual_scale(M.algebra.constants, M.metric.matrix):
        raise OracleMismatch("second trace form", resid)
    return BilinearForm(beta)


@dataclass(frozen=True, eq=False)
class BaseCurvature:
    """Curvature data of the metric product on the base algebra.

    K has K[i, j, k, l] = (K(e_i, e_j) e_k)_l and ricci is the form
    ric(X, Y) = tr(Z -> K(X, Z)Y); gamma stacks the difference operators.
    """

    lc: AlgebraStructure
    gamma: np.ndarray
    K: np.ndarray
    ricci: BilinearForm


def base_curvature(M: MetricAlgebra, tol: Tolerance = Tolerance()) -> BaseCurvature:
    """Curvature and Ricci of the metric product, with gamma cross-checks.

    When the pair satisfies the flatness and compatibility identities, K
    must equal the commutator of gamma operators and ric must equal the
    gamma trace formula; disagreement raises OracleMismatch.
    """
    lc, gamma = _gamma_data(M, tol)
    c = lc.constants
    cb = lie_bracket_constants(M.algebra).constants
    K = (
        np.einsum("ijm,mkl->ijkl", cb, c)
        - np.einsum("jkm,iml->ijkl", c, c)
        + np.einsum("ikm,jml->ijkl", c, c)
    )
    ricci = np.einsum("ajbj->ab", K)

    flat = check_left_symmetric(M.algebra, tol)
    hess = check_hessian(M.algebra, M.metric, tol)
    if flat and hess:
        thr = tol.eps * residual_scale(M.algebra.constants, M.metric.matrix, c)
        pair = np.einsum("ilm,jmk->ijlk", gamma, gamma)
        k_gamma = (pair - pair.transpose(1, 0, 2, 3)).transpose(0, 1, 3, 2)
        resid = float(np.max(np.abs(K - k_gamma))) if K.size else 0.0
        if resid > thr:
            raise OracleMismatch("curvature operator", resid)
        tr_gamma = np.einsum("imm->i", gamma)
        ric_gamma = np.einsum("alm,bml->ab", gamma, gamma) - np.einsum(
            "amb,m->ab", gamma, tr_gamma
        )
        resid = float(np.max(np.abs(ricci - ric_gamma))) if ricci.size else 0.0
        if resid > thr:
            raise OracleMismatch("Ricci form", resid)
    return BaseCurvature(lc=lc, gamma=gamma, K=K, ricci=BilinearForm(ricci))


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    """Ricci data of the double-space metric, in base coordinates.

    tb_ricci_hh, tb_ricci_vv and tb_ricci_hv are the horizontal-horizontal,
    vertical-vertical and mixed blocks of the double-space Ricci form, and
    base_ricci is the Ricci form of the metric product downstairs.  beta is
    the closed-form prediction for -tb_ricci_hh.  einstein_mu is the best
    proportionality factor against the block metric, einstein_residual the
    worst deviation from exact proportionality, and hessian_residual records
    how far the pair is from the compatibility identity.
    """

    base_ricci: BilinearForm
    tb_ricci_hh: BilinearForm
    tb_ricci_vv: BilinearForm
    tb_ricci_hv: np.ndarray
    beta: BilinearForm
    einstein_mu: float
    einstein_residual: float
    hessian_residual: float

    def as_dict(self) -> dict:
        """Plain-type view of the report, ready for json.dumps."""
        return {
            "base_ricci": self.base_ricci.matrix.tolist(),
            "tb_ricci_hh": self.tb_ricci_hh.matrix.tolist(),
            "tb_ricci_vv": self.tb_ricci_vv.matrix.tolist(),
            "tb_ricci_hv": self.tb_ricci_hv.tolist(),
            "beta": self.beta.matrix.tolist(),
            "einstein_mu": self.einstein_mu,
            "einstein_residual": self.einstein_residual,
            "hessian_residual": self.hessian_residual,
        }


def tangent_bundle_ricci(M: MetricAlgebra, tol: Tolerance = Tolerance()) -> CurvatureReport:
    """Ricci blocks of the canonical metric on the double space h + h.

    Requires the product to be flat (left-symmetric).  The blocks are
    assembled by brute force: the six component formulas of the curvature
    are summed over an orthonormal frame, with no shortcuts, and the result
    is compared against the closed form (both diagonal blocks equal to
    -beta, mixed block zero); disagreement raises OracleMismatch.  The
    compatibility identity is not a hard gate (its residual is recorded in
    the report instead): a pair far from compatible simply fails the
    closed-form comparison, except in degenerate cases such as a vanishing
    trace form where every block is zero on both sides.
    """
    flat = check_left_symmetric(M.algebra, tol)
    if not flat:
        raise PreconditionFailed(f"product is not flat, residual {flat.max_residual:.3e}")
    hess = check_hessian(M.algebra, M.metric, tol)

    base = base_curvature(M, tol)
    gamma = base.gamma
    lbar = base.lc.constants.transpose(0, 2, 1)  # lbar[i] = matrix of Lbar_{e_i}
    g = M.metric.matrix
    n = M.dim

    def gam(x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ilk->lk", x, gamma)

    def lb(x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ilk->lk", x, lbar)

    def kop(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijkl->lk", x, y, base.K)

    def dgamma(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """(D_x gamma)(y, z) as a vector."""
        return lb(x) @ (gam(y) @ z) - gam(lb(x) @ y) @ z - gam(y) @ (lb(x) @ z)

    def riemann(u, v, w):
        """Full curvature value R(u, v)w on pairs (horizontal, vertical)."""
        uh, uv = u
        vh, vv = v
        wh, wv = w
        out_h = np.zeros(n)
        out_v = np.zeros(n)
        # both arguments horizontal: base curvature on each component
        k_hh = kop(uh, vh)
        out_h += k_hh @ wh
        out_v += k_hh @ wv
        # both vertical: commutator of gamma operators on each component
        c_vv = gam(uv) @ gam(vv) - gam(vv) @ gam(uv)
        out_h += c_vv @ wh
        out_v += c_vv @ wv
        # mixed horizontal-vertical, and its transpose by antisymmetry
        out_v += -dgamma(uh, wh, vv) - gam(wh) @ (gam(uh) @ vv)
        out_h += dgamma(uh, vv, wv) + gam(wv) @ (gam(uh) @ vv)
        out_v -= -dgamma(vh, wh, uv) - gam(wh) @ (gam(vh) @ uv)
        out_h -= dgamma(vh, uv, wv) + gam(wv) @ (gam(vh) @ uv)
        return out_h, out_v

    chol = np.linalg.cholesky(g)
    frame = np.linalg.inv(chol).T  # columns orthonormal for g
    zero = np.zeros(n)

    def ric(u, v) -> float:
        total = 0.0
        for i in range(n):
            e = frame[:, i]
            rh, _ = riemann(u, (e, zero), v)
            total += float(rh @ g @ e)
            _, rv = riemann(u, (zero, e), v)
            total += float(rv @ g @ e)
        return total

    hh = np.zeros((n, n))
    vv = np.zeros((n, n))
    hv = np.zeros((n, n))
    eye = np.eye(n)
    for a in range(n):
        for b in range(n):
            ea, eb = eye[a], eye[b]
            hh[a, b] = ric((ea, zero), (eb, zero))
            vv[a, b] = ric((zero, ea), (zero, eb))
            hv[a, b] = ric((ea, zero), (zero, eb))

    beta = koszul_form(M.algebra)
    thr = tol.eps * residual_scale(M.algebra.constants, g, base.K)
    checks = (
        ("hh", hh, -beta.matrix),
        ("vv", vv, -beta.matrix),
        ("hv", hv, np.zeros((n, n))),
        ("hh-vv", hh, vv),
    )
    for name, block, want in checks:
        resid = float(np.max(np.abs(block - want))) if block.size else 0.0
        if resid > thr:
            raise OracleMismatch(f"double-space Ricci block {name}", resid)

    mu = float(np.trace(np.linalg.solve(g, hh)) / n) if n else 0.0
    einstein_residual = max(
        float(np.max(np.abs(hh - mu * g))) if hh.size else 0.0,
        float(np.max(np.abs(vv - mu * g))) if vv.size else 0.0,
        float(np.max(np.abs(hv))) if hv.size else 0.0,
    )
    return CurvatureReport(
        base_ricci=base.ricci,
        tb_ricci_hh=BilinearForm(hh),
        tb_ricci_vv=BilinearForm(vv),
        tb_ricci_hv=hv,
        beta=beta,
        einstein_mu=mu,
        einstein_residual=einstein_residual,
        hessian_residual=hess.max_residual,
    )


def einstein_check(
    A: AlgebraStructure, alpha_scale: float = 1.0, tol: Tolerance = Tolerance()
) -> float:
    """Einstein factor of the double-space metric built from alpha * trace form.

    Requires A left-symmetric with positive definite trace form, and the
    scaled trace form as the base metric; returns mu with Ricci = mu times
    the metric (expected -1/alpha), raising NotEinstein if proportionality
    fails.
    """
    if not (alpha_scale > 0 and np.isfinite(alpha_scale)):
        raise ValueError(f"alpha_scale must be positive and finite, got {alpha_scale}")
    rep = check_left_symmetric(A, tol)
    if not rep:
        raise NotLSPK(f"not left-symmetric, residual {rep.max_residual:.3e}")
    B = koszul_form(A)
    if not is_positive_definite(B, tol):
        raise NotLSPK("trace form is not positive definite")
    M = MetricAlgebra(A, BilinearForm(alpha_scale * B.matrix))
    report = tangent_bundle_ricci(M, tol)
    scale = residual_scale(A.constants, B.matrix)
    if report.einstein_residual > tol.eps * scale:
        raise NotEinstein(report.einstein_residual)
    return report.einstein_mu
