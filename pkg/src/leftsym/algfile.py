"""On-disk JSON format for algebras, metrics and builder inputs.

An algebra file lists only the nonzero products, mirroring how the tables
are written: each row gives the pair (i, j) and the full coefficient
vector of e_i * e_j.  Floats are emitted with 17 significant digits so a
write/read cycle reproduces every double bit-for-bit; parsing is plain
stdlib json plus schema validation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .construct import LSPKData, MilnorSpec
from .core import AlgebraStructure
from .errors import ParseError, SchemaError
from .forms import BilinearForm


@dataclass(frozen=True, eq=False)
class AlgebraFile:
    """Parsed contents of an algebra file."""

    algebra: AlgebraStructure
    metric: BilinearForm | None = None
    tolerance: float | None = None


def _fmt_float(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v}")
    # 17 significant digits round-trip IEEE doubles exactly
    out = format(float(v), ".17g")
    return out


def emit_json(obj, indent: int = 0) -> str:
    """Serialize to JSON with fixed float formatting.

    Containers are laid out one element per line at 2-space indentation,
    except leaf lists of numbers, which stay on one line.
    """
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f'{pad}  {json.dumps(k)}: {emit_json(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in items):
            return "[" + ", ".join(
                _fmt_float(v) if isinstance(v, float) else str(v) for v in items
            ) + "]"
        rows = [f"{pad}  {emit_json(v, indent + 1)}" for v in items]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, (int, str)) or obj is None:
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_algebra_file(
    A: AlgebraStructure,
    metric: BilinearForm | np.ndarray | None = None,
    tolerance: float | None = None,
) -> str:
    """Algebra file text for a structure, omitting all-zero products."""
    n = A.dim
    products = []
    for i in range(n):
        for j in range(n):
            row = A.constants[i, j]
            if np.any(row != 0.0):
                products.append({"i": i, "j": j, "coeffs": [float(v) for v in row]})
    doc: dict = {"name": A.name or "algebra", "dim": n, "products": products}
    if metric is not None:
        m = metric.matrix if isinstance(metric, BilinearForm) else np.asarray(metric, dtype=float)
        doc["metric"] = [[float(v) for v in r] for r in m]
    if tolerance is not None:
        doc["tolerance"] = float(tolerance)
    return emit_json(doc) + "\n"


def _require(cond: bool, field: str, reason: str) -> None:
    if not cond:
        raise SchemaError(f"field '{field}': {reason}")


def _as_index(value, field: str, dim: int) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), field, "must be an integer")
    _require(0 <= value < dim, field, f"must lie in [0, {dim})")
    return value


def _as_number_list(value, field: str, length: int) -> list[float]:
    _require(isinstance(value, list), field, "must be an array")
    _require(len(value) == length, field, f"must have length {length}")
    for v in value:
        _require(
            isinstance(v, (int, float)) and not isinstance(v, bool),
            field,
            "entries must be numbers",
        )
    return [float(v) for v in value]


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    _require(isinstance(doc, dict), "<root>", "must be a JSON object")
    return doc


def parse_algebra_file(text: str) -> AlgebraFile:
    """Parse algebra-file text into structure constants (+ optional metric).

    Unlisted products are zero.  The metric, when present, must be square
    and symmetric but is not required to be positive definite here; that
    is left to the consumers that need it.
    """
    doc = _load_json(text)
    allowed = {"name", "dim", "products", "metric", "tolerance"}
    for key in doc:
        _require(key in allowed, key, "unknown field")
    name = doc.get("name", "")
    _require(isinstance(name, str), "name", "must be a string")
    dim = doc.get("dim")
    _require(
        isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0,
        "dim",
        "must be a non-negative integer",
    )
    products = doc.get("products", [])
    _require(isinstance(products, list), "products", "must be an array")

    C = np.zeros((dim, dim, dim))
    seen: set[tuple[int, int]] = set()
    for pos, row in enumerate(products):
        field = f"products[{pos}]"
        _require(isinstance(row, dict), field, "must be an object")
        _require(set(row) == {"i", "j", "coeffs"}, field, "must have exactly i, j, coeffs")
        i = _as_index(row["i"], f"{field}.i", dim)
        j = _as_index(row["j"], f"{field}.j", dim)
        _require((i, j) not in seen, field, f"duplicate product ({i}, {j})")
        seen.add((i, j))
        C[i, j] = _as_number_list(row["coeffs"], f"{field}.coeffs", dim)

    metric = None
    if "metric" in doc:
        raw = doc["metric"]
        _require(isinstance(raw, list) and len(raw) == dim, "metric", f"must be a {dim}x{dim} array")
        rows = [_as_number_list(r, f"metric[{pos}]", dim) for pos, r in enumerate(raw)]
        m = np.array(rows)
        _require(bool(np.array_equal(m, m.T)), "metric", "must be symmetric")
        metric = BilinearForm(m)

    tolerance = None
    if "tolerance" in doc:
        raw = doc["tolerance"]
        _require(
            isinstance(raw, (int, float)) and not isinstance(raw, bool) and raw > 0,
            "tolerance",
            "must be a positive number",
        )
        tolerance = float(raw)

    return AlgebraFile(AlgebraStructure(C, name=name), metric=metric, tolerance=tolerance)


def parse_matrix_file(text: str, field: str = "matrix") -> np.ndarray:
    """A bare JSON 2D array, used for skew-derivation inputs."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    _require(isinstance(doc, list) and doc, field, "must be a non-empty 2D array")
    n = len(doc)
    rows = [_as_number_list(r, f"{field}[{pos}]", n) for pos, r in enumerate(doc)]
    return np.array(rows)


def parse_lspk_data(text: str) -> LSPKData:
    """Builder-input JSON for the general one-idempotent assembly.

    Required: n1, n2.  Optional 2D arrays g1, g2, b1, b2; 3D arrays rho1
    (n1, n2, n2), rho2 (n2, n1, n1), omega1 (n1, n1, n2), omega2
    (n2, n2, n1); product tensor c2 (n2, n2, n2).  Omitted pieces take the
    construction defaults (identity metrics, zero maps, derived omegas).
    """
    doc = _load_json(text)
    allowed = {"n1", "n2", "g1", "g2", "b1", "b2", "rho1", "rho2", "omega1", "omega2", "c2"}
    for key in doc:
        _require(key in allowed, key, "unknown field")
    for key in ("n1", "n2"):
        _require(
            isinstance(doc.get(key), int) and not isinstance(doc.get(key), bool) and doc[key] >= 0,
            key,
            "must be a non-negative integer",
        )
    n1, n2 = doc["n1"], doc["n2"]
    shapes = {
        "g1": (n1, n1),
        "g2": (n2, n2),
        "b1": (n1, n1),
        "b2": (n2, n2),
        "rho1": (n1, n2, n2),
        "rho2": (n2, n1, n1),
        "omega1": (n1, n1, n2),
        "omega2": (n2, n2, n1),
        "c2": (n2, n2, n2),
    }
    kwargs = {}
    for key, shape in shapes.items():
        if key not in doc:
            continue
        arr = np.asarray(doc[key], dtype=float)
        _require(arr.shape == shape, key, f"must have shape {shape}")
        kwargs[key] = arr
    return LSPKData(n1=n1, n2=n2, **kwargs)


def parse_milnor_spec(text: str) -> MilnorSpec:
    """Builder-input JSON for the rank-one family: dim, h, optional metric."""
    doc = _load_json(text)
    allowed = {"dim", "h", "metric"}
    for key in doc:
        _require(key in allowed, key, "unknown field")
    dim = doc.get("dim")
    _require(
        isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
        "dim",
        "must be a positive integer",
    )
    h = np.array(_as_number_list(doc.get("h"), "h", dim))
    metric = None
    if "metric" in doc:
        raw = doc["metric"]
        _require(isinstance(raw, list) and len(raw) == dim, "metric", f"must be a {dim}x{dim} array")
        rows = [_as_number_list(r, f"metric[{pos}]", dim) for pos, r in enumerate(raw)]
        m = np.array(rows)
        _require(bool(np.array_equal(m, m.T)), "metric", "must be symmetric")
        metric = m
    return MilnorSpec(dim, h, metric)
