"""Root finding for the classification systems.

The built-in systems have closed-form solution sets (quadratic surds), so
the tests pin the exact roots and check that every numerical root rebuilds
a verifying catalog algebra.
"""

import numpy as np
import pytest

from leftsym import FixtureBroken, PreconditionFailed, UnknownSystem
from leftsym.catalog import DIM5_BRANCHES
from leftsym.search import (
    ROOT_RESIDUAL,
    PolySystem,
    builtin_system,
    newton_search,
    verify_roots_build,
)

EXACT = {
    "dim3_case3": sorted([(-1.0 / np.sqrt(6.0),), (1.0 / np.sqrt(6.0),)]),
    "dim4": sorted([(-1.0 / np.sqrt(8.0),), (1.0 / np.sqrt(8.0),)]),
    "dim5": sorted(DIM5_BRANCHES),
}


@pytest.mark.parametrize("name", sorted(EXACT))
def test_roots_match_closed_form(name):
    sys = builtin_system(name)
    roots = newton_search(sys, [(-1.0, 1.0)] * sys.arity, grid=16)
    assert len(roots) == len(EXACT[name])
    for got, want in zip(sorted(roots), EXACT[name]):
        np.testing.assert_allclose(got, want, atol=1e-10)


@pytest.mark.parametrize("name", sorted(EXACT))
def test_root_residuals(name):
    sys = builtin_system(name)
    for root in newton_search(sys, [(-1.0, 1.0)] * sys.arity, grid=16):
        resid = np.max(np.abs(sys.residual(np.array(root))))
        assert resid <= ROOT_RESIDUAL


@pytest.mark.parametrize("name", sorted(EXACT))
def test_grid_refinement_is_stable(name):
    sys = builtin_system(name)
    box = [(-1.0, 1.0)] * sys.arity
    coarse = newton_search(sys, box, grid=8)
    fine = newton_search(sys, box, grid=16)
    assert len(coarse) == len(fine)
    for a, b in zip(sorted(coarse), sorted(fine)):
        np.testing.assert_allclose(a, b, atol=1e-9)


def test_unknown_system():
    with pytest.raises(UnknownSystem):
        builtin_system("dim9")


def test_search_preconditions():
    sys = builtin_system("dim4")
    with pytest.raises(PreconditionFailed):
        newton_search(sys, [(-1.0, 1.0)], grid=1)
    with pytest.raises(PreconditionFailed):
        newton_search(sys, [(-1.0, 1.0), (-1.0, 1.0)], grid=8)


def test_roots_rebuild_catalog_entries():
    for name in EXACT:
        sys = builtin_system(name)
        for root in newton_search(sys, [(-1.0, 1.0)] * sys.arity, grid=12):
            assert verify_roots_build(name, root)


def test_perturbed_root_is_rejected():
    with pytest.raises(FixtureBroken):
        verify_roots_build("dim4", (0.25,))


def test_custom_system():
    # x^2 = 4 has the two obvious roots
    sys = PolySystem(1, lambda x: np.array([x[0] ** 2 - 4.0]), name="toy")
    roots = newton_search(sys, [(-3.0, 3.0)], grid=6)
    np.testing.assert_allclose(sorted(roots), [(-2.0,), (2.0,)], atol=1e-10)


def test_no_roots_outside_box():
    sys = PolySystem(1, lambda x: np.array([x[0] ** 2 + 1.0]), name="empty")
    assert len(newton_search(sys, [(-2.0, 2.0)], grid=8)) == 0
