"""JSON interchange formats.

Exact scalars are strings ``"p/q"``; floats are JSON numbers.  Loaders raise
:class:`SchemaError` naming the offending field.
"""

from __future__ import annotations

import math

from .bundles import AT_INFINITY, BundleDescriptor, Circle, LinearQuaternionMap
from .cone import ConditionCheck, ConeDivision, VectorQuadraticMap
from .poly import Poly, format_monomial, sorted_terms
from .scalars import EXACT, FLOAT, dump_scalar, load_scalar
from .transforms import AffineMap, FitReport, FractionalTransform


class SchemaError(ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _scalar(value, backend, field):
    try:
        return load_scalar(value, backend)
    except (ValueError, TypeError) as exc:
        raise SchemaError(field, str(exc)) from None


def _vector(data, backend, field, length=None):
    if not isinstance(data, list):
        raise SchemaError(field, "expected an array")
    if length is not None and len(data) != length:
        raise SchemaError(field, f"expected {length} entries, got {len(data)}")
    return [_scalar(v, backend, f"{field}[{i}]") for i, v in enumerate(data)]


def _matrix(data, backend, field, rows=None, cols=None):
    if not isinstance(data, list):
        raise SchemaError(field, "expected an array of rows")
    if rows is not None and len(data) != rows:
        raise SchemaError(field, f"expected {rows} rows, got {len(data)}")
    return [_vector(r, backend, f"{field}[{i}]", cols) for i, r in enumerate(data)]


def _require(data, key, field=""):
    if not isinstance(data, dict):
        raise SchemaError(field or "<root>", "expected an object")
    if key not in data:
        raise SchemaError(f"{field}.{key}" if field else key, "missing field")
    return data[key]


def dump_vector(v):
    return [dump_scalar(x) for x in v]


def dump_matrix(m):
    return [dump_vector(r) for r in m]


# -- quadratic maps ------------------------------------------------------------


def dump_quadratic(gamma: VectorQuadraticMap):
    return {"n": gamma.n, "matrices": [dump_matrix(M) for M in gamma.matrices]}


def load_quadratic(data, backend=EXACT) -> VectorQuadraticMap:
    n = _require(data, "n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("n", "expected a positive integer")
    mats = _require(data, "matrices")
    if not isinstance(mats, list) or len(mats) != n:
        raise SchemaError("matrices", f"expected {n} matrices")
    parsed = [_matrix(M, backend, f"matrices[{k}]", n, n) for k, M in enumerate(mats)]
    for k, M in enumerate(parsed):
        for i in range(n):
            for j in range(i):
                if M[i][j] != M[j][i]:
                    raise SchemaError(f"matrices[{k}][{i}][{j}]", "matrix is not symmetric")
    return VectorQuadraticMap(parsed)


def dump_poly(p: Poly):
    return {format_monomial(m): dump_scalar(c) for m, c in sorted_terms(p)}


def dump_division(d: ConeDivision):
    if isinstance(d.quotient, Poly):
        return {"quotient": dump_poly(d.quotient), "remainder": dump_poly(d.remainder)}
    return {
        "quotient": [dump_poly(p) for p in d.quotient],
        "remainder": [dump_poly(p) for p in d.remainder],
    }


def dump_check(res: ConditionCheck):
    if res.satisfied:
        return {"satisfied": True, "lambda": dump_poly(res.lam), "mu": dump_poly(res.mu)}
    return {"satisfied": False, "remainders": {k: dump_poly(v) for k, v in res.remainders.items()}}


# -- circles and descriptors ---------------------------------------------------


def dump_circle(c: Circle):
    return {
        "tangent": dump_vector(c.tangent),
        "center": "infinity" if c.is_line else dump_vector(c.center),
    }


def load_circle(data, backend=EXACT, field="circle") -> Circle:
    tangent = _vector(_require(data, "tangent", field), backend, f"{field}.tangent")
    raw = _require(data, "center", field)
    if raw == "infinity":
        center = AT_INFINITY
    else:
        center = _vector(raw, backend, f"{field}.center", len(tangent))
    try:
        return Circle(tuple(tangent), center if center is AT_INFINITY else tuple(center))
    except ValueError as exc:
        raise SchemaError(field, str(exc)) from None


def load_circles(data, backend=EXACT):
    if isinstance(data, dict) and "circles" in data:
        data = data["circles"]
    if not isinstance(data, list):
        raise SchemaError("<root>", "expected an array of circle records")
    return [load_circle(c, backend, f"[{i}]") for i, c in enumerate(data)]


def dump_descriptor(d: BundleDescriptor):
    return {"side": d.side, "imA": dump_matrix(d.imA)}


def load_descriptor(data, backend=EXACT, field="") -> BundleDescriptor:
    side = _require(data, "side", field)
    if side not in ("left", "right", "both"):
        raise SchemaError(f"{field}.side" if field else "side", f"unknown side {side!r}")
    imA = _matrix(_require(data, "imA", field), backend, f"{field}.imA" if field else "imA", 4, 4)
    try:
        return BundleDescriptor(side, imA)
    except ValueError as exc:
        raise SchemaError(field or "imA", str(exc)) from None


def dump_linear_map(A: LinearQuaternionMap):
    return dump_matrix(A.matrix)


# -- transforms -----------------------------------------------------------------


def dump_affine(m: AffineMap):
    return {"linear": dump_matrix(m.linear), "const": dump_vector(m.const)}


def load_affine(data, backend, field) -> AffineMap:
    lin = _matrix(_require(data, "linear", field), backend, f"{field}.linear", 4, 4)
    const = _vector(_require(data, "const", field), backend, f"{field}.const", 4)
    return AffineMap(lin, const)


def dump_transform(t: FractionalTransform):
    return {"side": t.side, "num": dump_affine(t.numerator), "den": dump_affine(t.denominator)}


def load_transform(data, backend=FLOAT) -> FractionalTransform:
    side = _require(data, "side")
    if side not in ("left", "right"):
        raise SchemaError("side", f"unknown side {side!r}")
    num = load_affine(_require(data, "num"), backend, "num")
    den = load_affine(_require(data, "den"), backend, "den")
    if den.is_zero():
        raise SchemaError("den", "denominator is identically zero")
    return FractionalTransform(side, num, den)


def _finite(x):
    return x if math.isfinite(x) else None


def dump_report(rep: FitReport):
    lines = []
    for lf in rep.lines:
        entry = {
            "direction": lf.direction,
            "residual": _finite(lf.residual),
            "relative_residual": _finite(lf.relative_residual),
            "passed": lf.passed,
            "pole": lf.pole,
        }
        if lf.fit is not None:
            entry["fit"] = (
                {"kind": "line", "base": lf.fit.base.tolist(), "direction": lf.fit.direction.tolist()}
                if lf.fit.is_line
                else {"kind": "circle", "center": lf.fit.center.tolist(), "radius": lf.fit.radius}
            )
        if lf.error:
            entry["error"] = lf.error
        lines.append(entry)
    return {
        "passed": rep.passed,
        "tol": rep.tol,
        "max_relative_residual": _finite(rep.max_residual),
        "lines": lines,
    }


__all__ = [
    "SchemaError",
    "EXACT",
    "FLOAT",
    "dump_quadratic",
    "load_quadratic",
    "dump_poly",
    "dump_division",
    "dump_check",
    "dump_circle",
    "load_circle",
    "load_circles",
    "dump_descriptor",
    "load_descriptor",
    "dump_transform",
    "load_transform",
    "dump_report",
]
