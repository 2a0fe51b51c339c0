"""End-to-end acceptance gate.

Nine criteria, one test each, numbered for traceability.  Tolerances are
part of the contract and deliberately not shared with the unit tests:
each criterion states its own bound inline.
"""

import time

import numpy as np
import pytest

from leftsym import (
    BilinearForm,
    MetricAlgebra,
    MilnorSpec,
    PreconditionFailed,
    Tolerance,
    build_lspk,
    build_milnor,
    change_basis,
    check_k_hessian,
    data_from_decomposition,
    decompose,
    einstein_check,
    is_solvable,
    kdim2_family,
    koszul_form,
    lie_bracket_constants,
    recognize_milnor,
    rn_isomorphism,
    tangent_bundle_ricci,
    trace_one_form,
)
from leftsym.catalog import (
    catalog_build,
    catalog_verify,
    sample_params,
    sl2_bracket,
)
from leftsym.core import mult_operator
from leftsym.search import builtin_system, newton_search, verify_roots_build

LSPK_FAMILIES = ["lspk_dim2", "lspk_dim3_case1", "lspk_dim3_case2",
                 "lspk_dim3_case3", "lspk_dim4", "lspk_dim5"]

KOSZUL_TARGETS = {
    "lspk_dim2": 1.5 * np.eye(2),
    "lspk_dim3_case1": 2.0 * np.eye(3),
    "lspk_dim3_case2": 3.0 * np.eye(3),
    "lspk_dim3_case3": 2.5 * np.eye(3),
    "lspk_dim4": 3.0 * np.eye(4),
    "lspk_dim5": 3.5 * np.eye(5),
}

SIGNATURES = {
    "lspk_dim2": (1, 0, 1.5),
    "lspk_dim3_case1": (2, 0, 2.0),
    "lspk_dim3_case2": (0, 2, 3.0),
    "lspk_dim3_case3": (1, 1, 2.5),
    "lspk_dim4": (2, 1, 3.0),
    "lspk_dim5": (3, 1, 3.5),
}


def test_criterion_1_koszul_matrices():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    for name, target in KOSZUL_TARGETS.items():
        for _ in range(5):
            params = sample_params(name, rng)
            assert catalog_verify(name, params)
            built = catalog_build(name, params)
            B = koszul_form(built).matrix
            assert np.max(np.abs(B - target)) <= 1e-9, (name, params)
    for _ in range(5):
        params = sample_params("rn_canonical", rng)
        assert catalog_verify("rn_canonical", params)
        B = koszul_form(catalog_build("rn_canonical", params)).matrix
        assert np.max(np.abs(B - np.eye(params["n"]))) <= 1e-9
    assert time.perf_counter() - start < 1.0


def test_criterion_2_decomposition_signatures():
    for name, want in SIGNATURES.items():
        dec = decompose(catalog_build(name))
        assert dec.signature[:2] == want[:2], name
        assert abs(dec.signature[2] - want[2]) <= 1e-9, name
        worst = max((v for v in dec.residuals.values() if v is not None), default=0.0)
        assert worst <= 1e-8, (name, worst)


def test_criterion_3_round_trip():
    for name in LSPK_FAMILIES:
        A = catalog_build(name)
        dec = decompose(A)
        rebuilt = build_lspk(data_from_decomposition(dec))
        transported = change_basis(A, dec.basis)
        resid = np.max(np.abs(rebuilt.constants - transported.constants))
        assert resid <= 1e-8, (name, resid)


def test_criterion_4_ricci_oracle_equivalence():
    for name in LSPK_FAMILIES:
        A = catalog_build(name)
        B = koszul_form(A).matrix
        for scale in (1.0, 3.0):
            rep = tangent_bundle_ricci(MetricAlgebra(A, BilinearForm(scale * B)))
            beta = rep.beta.matrix
            assert np.max(np.abs(rep.tb_ricci_hh.matrix + beta)) <= 1e-7, name
            assert np.max(np.abs(rep.tb_ricci_vv.matrix + beta)) <= 1e-7, name
            assert np.max(np.abs(rep.tb_ricci_hv)) <= 1e-7, name
    # zero trace form: every block of the double-space Ricci vanishes
    a0 = catalog_build("nilpotent_A0")
    rep = tangent_bundle_ricci(MetricAlgebra(a0, BilinearForm.identity(2)))
    assert np.max(np.abs(rep.tb_ricci_hh.matrix)) <= 1e-10
    assert np.max(np.abs(rep.tb_ricci_vv.matrix)) <= 1e-10
    assert np.max(np.abs(rep.tb_ricci_hv)) <= 1e-10


def test_criterion_5_einstein_constants():
    for name in LSPK_FAMILIES:
        A = catalog_build(name)
        for alpha in (0.5, 1.0, 2.0, 5.0):
            mu = einstein_check(A, alpha)
            assert abs(mu + 1.0 / alpha) <= 1e-8, (name, alpha, mu)


def test_criterion_6_classification_roots():
    targets = {
        "dim4": [(-0.35355339059327373,), (0.35355339059327373,)],
        "dim3_case3": [(-0.40824829046386302,), (0.40824829046386302,)],
        "dim5": [(-0.43301270189221935, 0.57735026918962573),
                 (-0.31622776601683794, -0.31622776601683794),
                 (0.31622776601683794, 0.31622776601683794),
                 (0.43301270189221935, -0.57735026918962573)],
    }
    for name, want in targets.items():
        sys = builtin_system(name)
        roots = newton_search(sys, [(-1.0, 1.0)] * sys.arity, grid=24)
        assert len(roots) == len(want), name
        for got, target in zip(sorted(roots), sorted(want)):
            np.testing.assert_allclose(got, target, atol=1e-8)
        for root in roots:
            assert np.max(np.abs(sys.residual(np.array(root)))) <= 1e-10
            assert verify_roots_build(name, root)


def test_criterion_7_khessian_suite():
    rng = np.random.default_rng(707)
    draws = 0
    while draws < 20:
        n = int(rng.integers(2, 7))
        q = rng.uniform(-1.0, 1.0, size=(n, n))
        g = q.T @ q + rng.uniform(0.2, 1.0) * np.eye(n)
        h = rng.uniform(-1.0, 1.0, size=n)
        if np.linalg.norm(h) < 0.2:
            continue
        draws += 1
        M, k = build_milnor(MilnorSpec(n, h, g))
        assert abs(k + float(h @ M.metric.matrix @ h)) <= 1e-12 * abs(k)
        lh = mult_operator(M.algebra, h, "left")
        assert np.max(np.abs(lh)) == 0.0, "L_h must vanish exactly"
        scale = max(1.0, float(np.max(np.abs(M.algebra.constants))))
        rep = check_k_hessian(M.algebra, M.metric, k, Tolerance(1e-9))
        assert rep.max_residual <= 1e-9 * scale
        hrec = recognize_milnor(M, k)
        assert np.max(np.abs(hrec - h)) <= 1e-8
    for k in (-1.0, -4.0):
        for theta in np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False):
            for family in (1, 2):
                M = kdim2_family(k, float(theta), family)
                assert check_k_hessian(M.algebra, M.metric, k)
                assert np.max(np.abs(trace_one_form(M.algebra))) <= 1e-12


def test_criterion_8_rn_isomorphism():
    rng = np.random.default_rng(808)
    canonical = {n: catalog_build("rn_canonical", {"n": n}) for n in range(1, 7)}
    done = 0
    while done < 50:
        n = int(rng.integers(1, 7))
        P = np.eye(n) + 0.5 * rng.uniform(-1.0, 1.0, size=(n, n))
        if abs(np.linalg.det(P)) < 0.3:
            continue
        done += 1
        A = canonical[n]
        twisted = change_basis(A, P)
        Q = rn_isomorphism(twisted, Tolerance(1e-7))
        back = change_basis(twisted, Q)
        resid = np.max(np.abs(back.constants - A.constants))
        assert resid <= 1e-7, (n, resid)
    for name in LSPK_FAMILIES:
        with pytest.raises(PreconditionFailed):
            rn_isomorphism(catalog_build(name))


def test_criterion_9_solvability():
    for name in LSPK_FAMILIES:
        bracket = lie_bracket_constants(catalog_build(name))
        assert is_solvable(bracket), name
    assert not is_solvable(sl2_bracket())
