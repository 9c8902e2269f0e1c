"""JSON, CSV and OFF serialisation of bodies, support functions and reports.

Floats are written with ``repr`` precision, so every file re-ingests to the
same arrays it was written from.
"""
from __future__ import annotations

import csv
import io as _io
import json

import jsonschema
import numpy as np

from .bodies import (
    Body,
    SphericalPolytope,
    cap_body,
    exit_points,
    interior_point,
    s_conv,
)
from .errors import DimensionMismatchError, GeometryError
from .sphere import DEFAULT_TOL, Cap, ToleranceConfig, circle_grid, tangent_basis


class SchemaError(ValueError):
    """Input that is not valid JSON/CSV or does not match the expected schema."""


_VECTORS = {"type": "array", "minItems": 1,
            "items": {"type": "array", "minItems": 2, "items": {"type": "number"}}}

BODY_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "polytope"},
                "dim": {"type": "integer", "minimum": 2},
                "vertices": _VECTORS,
                "hcenters": _VECTORS,
            },
            "required": ["kind", "dim", "vertices"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "caps"},
                "dim": {"type": "integer", "minimum": 2},
                "caps": {
                    "type": "array", "minItems": 1,
                    "items": {
                        "type": "object",
                        "properties": {
                            "center": {"type": "array", "minItems": 2, "items": {"type": "number"}},
                            "radius": {"type": "number"},
                        },
                        "required": ["center", "radius"],
                    },
                },
            },
            "required": ["kind", "dim", "caps"],
        },
    ]
}

GAMMA_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "samples"},
                "dim": {"type": "integer", "minimum": 2},
                "directions": _VECTORS,
                "values": {"type": "array", "minItems": 1, "items": {"type": "number"}},
                "provenance": {"enum": ["constant", "file", "perturbed", "derived"]},
            },
            "required": ["kind", "dim", "directions", "values"],
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "constant"},
                "dim": {"type": "integer", "minimum": 2},
                "value": {"type": "number", "exclusiveMinimum": 0},
                "grid": {"type": "integer", "minimum": 1},
            },
            "required": ["kind", "dim", "value"],
        },
    ]
}


def _validate(doc, schema) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"schema violation: {exc.message}") from exc


def _vectors(rows, dim: int) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise SchemaError(f"expected vectors of length {dim}")
    return arr


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc


def _same_rows(a: np.ndarray, b: np.ndarray, atol: float = 1e-9) -> bool:
    """Equal as sets of rows, up to ``atol``."""
    if a.shape != b.shape:
        return False
    gap = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return bool(np.all(gap.min(axis=0) <= atol) and np.all(gap.min(axis=1) <= atol))


def body_to_dict(body: Body) -> dict:
    if isinstance(body, SphericalPolytope):
        return {"kind": "polytope", "dim": body.dim, "vertices": body.vertices.tolist(),
                "hcenters": body.hcenters.tolist()}
    return {"kind": "caps", "dim": body.dim,
            "caps": [{"center": c.center.tolist(), "radius": c.radius} for c in body.caps]}


def body_from_dict(doc, tol: ToleranceConfig = DEFAULT_TOL) -> Body:
    """Build a validated body. Polytopes given with both descriptions are checked
    for consistency and taken verbatim; vertices alone go through the hull."""
    _validate(doc, BODY_SCHEMA)
    dim = doc["dim"]
    if doc["kind"] == "polytope":
        verts = _vectors(doc["vertices"], dim)
        if "hcenters" not in doc:
            return s_conv(verts, tol)
        hc = _vectors(doc["hcenters"], dim)
        hull = s_conv(verts, tol)
        if not (_same_rows(hull.vertices, verts) and _same_rows(hull.hcenters, hc)):
            raise GeometryError("vertices and hemisphere centres describe different polytopes")
        return SphericalPolytope(verts, hc)
    caps = []
    for item in doc["caps"]:
        if len(item["center"]) != dim:
            raise SchemaError(f"cap centre must have length {dim}")
        caps.append(Cap(np.asarray(item["center"], dtype=float), float(item["radius"])))
    return cap_body(caps, tol)


def load_body(text: str, tol: ToleranceConfig = DEFAULT_TOL) -> Body:
    return body_from_dict(parse_json(text), tol)


def gamma_to_dict(g) -> dict:
    return {"kind": "samples", "dim": g.dim, "directions": g.directions.tolist(),
            "values": g.values.tolist(), "provenance": g.provenance}


def gamma_from_dict(doc):
    from .generators import gen_gamma
    from .wulff import GammaField

    _validate(doc, GAMMA_SCHEMA)
    dim = doc["dim"]
    if doc["kind"] == "constant":
        return gen_gamma("constant", dim=dim, grid=doc.get("grid", 200), value=doc["value"])
    dirs = _vectors(doc["directions"], dim)
    vals = np.asarray(doc["values"], dtype=float)
    if vals.shape[0] != dirs.shape[0]:
        raise SchemaError("directions and values differ in length")
    return GammaField(dirs, vals, doc.get("provenance", "file"))


def load_gamma_csv(text: str):
    """Rows ``theta_1, ..., theta_d, gamma``; a non-numeric first row is a header."""
    from .wulff import GammaField

    rows = [r for r in csv.reader(_io.StringIO(text)) if r and any(f.strip() for f in r)]
    if rows:
        try:
            [float(f) for f in rows[0]]
        except ValueError:
            rows = rows[1:]
    try:
        arr = np.array([[float(f) for f in r] for r in rows])
    except ValueError as exc:
        raise SchemaError(f"non-numeric CSV field: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] < 3:
        raise SchemaError("gamma CSV needs rows of at least two direction components and a value")
    norms = np.linalg.norm(arr[:, :-1], axis=1)
    if np.any(norms == 0.0):
        raise SchemaError("zero direction in gamma CSV")
    return GammaField(arr[:, :-1] / norms[:, None], arr[:, -1], "file")


def load_gamma(text: str):
    """Gamma from JSON, falling back to CSV when the text is not a JSON document."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return gamma_from_dict(parse_json(text))
    return load_gamma_csv(text)


def wulff_to_dict(w) -> dict:
    return {"kind": "wulff", "dim": w.dim, "normals": w.normals.tolist(),
            "offsets": w.offsets.tolist(), "redundant": w.redundant.tolist()}


def to_jsonable(obj):
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2)


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def report_csv(obj) -> str:
    """Two-column ``key,value`` table with dotted keys for nested fields."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _flatten(to_jsonable(obj)):
        writer.writerow([key, json.dumps(value) if isinstance(value, list) else value])
    return buf.getvalue()


def body_mesh(body: Body, samples: int = 128,
              tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Triangulated disk on S^2: polytopes fan from their first vertex, cap bodies
    fan from an interior point to boundary points in angular order."""
    if body.dim != 3:
        raise DimensionMismatchError("mesh export needs a body on S^2")
    c = interior_point(body, tol)
    basis = tangent_basis(c)
    if isinstance(body, SphericalPolytope):
        v = body.vertices
        order = np.argsort(np.arctan2(v @ basis[1], v @ basis[0]))
        verts = v[order]
        faces = np.array([[0, i, i + 1] for i in range(1, len(verts) - 1)], dtype=int)
        return verts, faces
    dirs = circle_grid(samples) @ basis
    _, rim = exit_points(body, c, dirs)
    verts = np.vstack([c, rim])
    faces = np.array([[0, 1 + i, 1 + (i + 1) % samples] for i in range(samples)], dtype=int)
    return verts, faces


def to_off(verts: np.ndarray, faces: np.ndarray) -> str:
    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    lines += [" ".join(repr(float(x)) for x in v) for v in verts]
    lines += [f"{len(f)} " + " ".join(str(int(i)) for i in f) for f in faces]
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> tuple[np.ndarray, np.ndarray]:
    tokens = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not tokens or tokens[0] != ["OFF"]:
        raise SchemaError("missing OFF header")
    nv, nf = int(tokens[1][0]), int(tokens[1][1])
    verts = np.array([[float(x) for x in t] for t in tokens[2:2 + nv]])
    faces = np.array([[int(x) for x in t[1:]] for t in tokens[2 + nv:2 + nv + nf]], dtype=int)
    return verts, faces


def euler_characteristic(verts: np.ndarray, faces: np.ndarray) -> int:
    edges = {tuple(sorted((int(f[i]), int(f[(i + 1) % len(f)])))) for f in faces for i in range(len(f))}
    return len(verts) - len(edges) + len(faces)

