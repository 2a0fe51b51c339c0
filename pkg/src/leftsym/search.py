"""Root finding for the small parameter-constraint systems.

The admissible parameters of the one-idempotent families are cut out by
tiny polynomial systems; this module finds all their real roots on a box
by Newton iteration from a dense grid of seeds, then feeds each root back
into the matching catalog builder to confirm the constructed algebra
passes its full predicate suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .catalog import DIM5_BRANCHES, catalog_verify
from .errors import FixtureBroken, PreconditionFailed, UnknownSystem
from .forms import PredicateReport

ROOT_RESIDUAL = 1e-10  # max-norm acceptance threshold for a converged point
DEDUP_RADIUS = 1e-6  # max-norm radius identifying two converged points
FD_STEP = 1e-7  # forward-difference Jacobian step
MAX_ITERS = 60
DIVERGENCE_CUT = 10.0  # abandon an orbit once any coordinate passes this


@dataclass(frozen=True)
class PolySystem:
    """A small real polynomial system, presented as its residual map."""

    arity: int
    residual: Callable[[np.ndarray], np.ndarray]
    name: str


@dataclass(frozen=True)
class RootSet:
    """Deduplicated roots sorted lexicographically."""

    name: str
    roots: tuple[tuple[float, ...], ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def builtin_system(name: str) -> PolySystem:
    """One of the named parameter systems: dim3_case3, dim4 or dim5."""
    if name == "dim3_case3":
        return PolySystem(1, lambda x: np.array([6.0 * x[0] ** 2 - 1.0]), name)
    if name == "dim4":
        return PolySystem(1, lambda x: np.array([8.0 * x[0] ** 2 - 1.0]), name)
    if name == "dim5":
        return PolySystem(
            2,
            lambda x: np.array(
                [
                    8.0 * x[0] ** 2 + 2.0 * x[0] * x[1] - 1.0,
                    6.0 * x[1] ** 2 + 4.0 * x[0] * x[1] - 1.0,
                ]
            ),
            name,
        )
    raise UnknownSystem(f"no builtin system named {name!r}")


def _jacobian(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, fx: np.ndarray) -> np.ndarray:
    J = np.empty((fx.size, x.size))
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = FD_STEP
        J[:, j] = (f(x + step) - fx) / FD_STEP
    return J


def _newton(system: PolySystem, seed: np.ndarray) -> np.ndarray | None:
    x = seed.astype(float).copy()
    for _ in range(MAX_ITERS):
        fx = system.residual(x)
        if float(np.max(np.abs(fx))) <= ROOT_RESIDUAL:
            return x
        if float(np.max(np.abs(x))) > DIVERGENCE_CUT:
            return None
        J = _jacobian(system.residual, x, fx)
        try:
            dx = np.linalg.solve(J, -fx)
        except np.linalg.LinAlgError:
            return None
        x = x + dx
    fx = system.residual(x)
    return x if float(np.max(np.abs(fx))) <= ROOT_RESIDUAL else None


def newton_search(
    system: PolySystem, box: Sequence[tuple[float, float]], grid: int
) -> RootSet:
    """All roots on the box found from a grid^arity lattice of Newton seeds.

    Converged points are kept when their residual max-norm is at most
    1e-10, deduplicated within 1e-6 and sorted lexicographically; an empty
    result is legitimate.
    """
    if grid < 2:
        raise PreconditionFailed(f"grid must be at least 2 per axis, got {grid}")
    if len(box) != system.arity:
        raise PreconditionFailed(f"box has {len(box)} axes, system arity is {system.arity}")
    axes = [np.linspace(lo, hi, grid) for lo, hi in box]
    found: list[np.ndarray] = []
    for seed in itertools.product(*axes):
        root = _newton(system, np.array(seed))
        if root is None:
            continue
        if any(float(np.max(np.abs(root - r))) <= DEDUP_RADIUS for r in found):
            continue
        found.append(root)
    ordered = sorted(tuple(float(v) for v in r) for r in found)
    return RootSet(name=system.name, roots=tuple(ordered))


def _nearest_sign(value: float, magnitude: float, what: str) -> float:
    """The sign s with value close to s*magnitude, else FixtureBroken."""
    s = 1.0 if value >= 0 else -1.0
    if abs(value - s * magnitude) > DEDUP_RADIUS:
        raise FixtureBroken(what, f"root {value} matches no admissible value", abs(value))
    return s


def verify_roots_build(
    sys_name: str,
    root: Sequence[float] | float,
    beta: float = 0.0,
    lam: float = 1.0,
) -> PredicateReport:
    """Feed a found root into the matching catalog entry and verify it.

    The root is snapped to the exact surd parameter of the entry (within
    the dedup radius); a root matching no admissible parameter raises
    FixtureBroken.  beta and lam fix the free parameters of the dim-4 and
    dim-5 families.
    """
    vec = np.atleast_1d(np.asarray(root, dtype=float))
    if sys_name == "dim3_case3":
        sign = _nearest_sign(float(vec[0]), 1.0 / math.sqrt(6.0), "dim3_case3 root")
        return catalog_verify("lspk_dim3_case3", {"sign": sign})
    if sys_name == "dim4":
        sign = _nearest_sign(float(vec[0]), 1.0 / (2.0 * math.sqrt(2.0)), "dim4 root")
        return catalog_verify("lspk_dim4", {"alpha_sign": sign, "beta": beta, "lam": lam})
    if sys_name == "dim5":
        pair = (float(vec[0]), float(vec[1]))
        for idx, branch in enumerate(DIM5_BRANCHES, start=1):
            if max(abs(pair[0] - branch[0]), abs(pair[1] - branch[1])) <= DEDUP_RADIUS:
                return catalog_verify(
                    "lspk_dim5", {"branch": idx, "beta": beta, "lam": lam}
                )
        raise FixtureBroken("dim5 root", f"pair {pair} matches no admissible branch")
    raise UnknownSystem(f"no builtin system named {sys_name!r}")
