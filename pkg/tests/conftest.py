"""Shared fixtures: two small algebras that get reused all over the suite.

dim2 is the two dimensional algebra with product e*e = H, H*e = e/2,
H*H = H (basis order e, H); its Koszul form is (3/2) I and every geometric
quantity is known in closed form, so it serves as the main frozen oracle.
a0 is the nilpotent plane e1*e1 = e2, whose Koszul form vanishes.
"""

import numpy as np
import pytest

from leftsym import AlgebraStructure, BilinearForm, MetricAlgebra


@pytest.fixture
def dim2() -> AlgebraStructure:
    c = np.zeros((2, 2, 2))
    c[0, 0, 1] = 1.0
    c[1, 0, 0] = 0.5
    c[1, 1, 1] = 1.0
    return AlgebraStructure(c, name="dim2")


@pytest.fixture
def a0() -> AlgebraStructure:
    c = np.zeros((2, 2, 2))
    c[0, 0, 1] = 1.0
    return AlgebraStructure(c, name="a0")


@pytest.fixture
def a0_metric(a0) -> MetricAlgebra:
    return MetricAlgebra(a0, BilinearForm.identity(2))
