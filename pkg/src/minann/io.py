"""JSON formats for surfaces and Weierstrass data, and plot-data export."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .analysis import SurfaceGrid
from .domain import AnnulusSpec, make_grid
from .errors import FormatError, MinannError
from .spectral import LaurentSeries
from .weierstrass import WeierstrassData


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys, NaN/inf mapped to null)."""
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if np.isfinite(x) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: top level must be an object")
    return obj


def _field(obj: dict, name: str, kind, where: str):
    if name not in obj:
        raise FormatError(f"{where}: missing field '{name}'")
    value = obj[name]
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise FormatError(f"{where}: field '{name}' must be an integer")
    elif kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FormatError(f"{where}: field '{name}' must be a number")
        value = float(value)
    return value


# -- surfaces --------------------------------------------------------------

def surface_to_dict(s: SurfaceGrid) -> dict:
    if not s.grid.spec.symmetric:
        raise MinannError("the surface file format stores symmetric annuli only")
    return {
        "R": s.grid.R,
        "n_r": s.grid.n_r,
        "n_theta": s.grid.n_theta,
        "values": s.values.tolist(),
    }


def save_surface(s: SurfaceGrid, path) -> None:
    Path(path).write_text(dumps(surface_to_dict(s)))


def surface_from_dict(obj: dict, radial_order: int = 2, where: str = "surface") -> SurfaceGrid:
    R = _field(obj, "R", float, where)
    n_r = _field(obj, "n_r", int, where)
    n_theta = _field(obj, "n_theta", int, where)
    values = _field(obj, "values", list, where)
    try:
        grid = make_grid(AnnulusSpec(R), n_r, n_theta)
    except MinannError as exc:
        raise FormatError(f"{where}: {exc}") from exc
    if len(values) != n_r:
        raise FormatError(f"{where}: field 'values' has {len(values)} rows, expected n_r = {n_r}")
    for j, row in enumerate(values):
        if not isinstance(row, list) or len(row) != n_theta:
            raise FormatError(f"{where}: field 'values' row {j} must have n_theta = {n_theta} entries")
        for k, v in enumerate(row):
            if not isinstance(v, list) or len(v) != 3:
                raise FormatError(f"{where}: field 'values'[{j}][{k}] must be a 3-vector")
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: field 'values' must contain numbers") from exc
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{where}: field 'values' contains non-finite entries")
    return SurfaceGrid.numeric(grid, arr, radial_order)


def load_surface(path, radial_order: int = 2) -> SurfaceGrid:
    return surface_from_dict(_read_json(path), radial_order, str(path))


# -- Weierstrass data ------------------------------------------------------

def _complex(v, where, name) -> complex:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise FormatError(f"{where}: field '{name}' must be [re, im]")
    return complex(v[0], v[1])


def data_to_dict(d: WeierstrassData) -> dict:
    if not isinstance(d.g, LaurentSeries):
        raise MinannError("only Laurent/monomial Gauss maps can be serialized")
    if len(d.g.coeffs) == 1:
        g = {"kind": "monomial", "c": [d.g.coeffs[0].real, d.g.coeffs[0].imag], "m": d.g.k_min}
    else:
        g = {"kind": "laurent", "k_min": d.g.k_min, "coeffs": [[c.real, c.imag] for c in d.g.coeffs]}
    return {"A": d.A, "theta0": d.theta0, "g": g}


def save_data(d: WeierstrassData, path) -> None:
    Path(path).write_text(dumps(data_to_dict(d)))


def data_from_dict(obj: dict, where: str = "data") -> WeierstrassData:
    A = _field(obj, "A", float, where)
    theta0 = _field(obj, "theta0", float, where)
    g = _field(obj, "g", dict, where)
    if not isinstance(g, dict):
        raise FormatError(f"{where}: field 'g' must be an object")
    kind = _field(g, "kind", str, f"{where}.g")
    if kind == "monomial":
        c = _complex(_field(g, "c", list, f"{where}.g"), f"{where}.g", "c")
        series = LaurentSeries.monomial(c, _field(g, "m", int, f"{where}.g"))
    elif kind == "laurent":
        k_min = _field(g, "k_min", int, f"{where}.g")
        coeffs = _field(g, "coeffs", list, f"{where}.g")
        if not isinstance(coeffs, list) or not coeffs:
            raise FormatError(f"{where}.g: field 'coeffs' must be a non-empty list")
        series = LaurentSeries(k_min, [_complex(c, f"{where}.g", "coeffs") for c in coeffs])
    else:
        raise FormatError(f"{where}.g: field 'kind' must be 'laurent' or 'monomial', got {kind!r}")
    try:
        return WeierstrassData(series, A, theta0)
    except MinannError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def load_data(path) -> WeierstrassData:
    return data_from_dict(_read_json(path), str(path))


# -- plot data ---------------------------------------------------------------

def emit_plot_data(s: SurfaceGrid, prefix) -> tuple[Path, Path]:
    """Write ``prefix.csv`` (r, theta, x, y, z) and a triangulated ``prefix.obj``."""
    prefix = Path(prefix)
    csv_path, obj_path = prefix.with_suffix(".csv"), prefix.with_suffix(".obj")
    r, th = s.grid.mesh()
    try:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "theta", "x", "y", "z"])
            for rr, tt, v in zip(r.ravel(), th.ravel(), s.values.reshape(-1, 3)):
                w.writerow([repr(float(rr)), repr(float(tt))] + [repr(float(x)) for x in v])
        n_r, n_t = s.grid.shape
        with open(obj_path, "w") as fh:
            for v in s.values.reshape(-1, 3):
                fh.write("v %.17g %.17g %.17g\n" % tuple(v))
            for j in range(n_r - 1):
                for k in range(n_t):
                    a = j * n_t + k + 1
                    b = j * n_t + (k + 1) % n_t + 1
                    c, d = a + n_t, b + n_t
                    fh.write(f"f {a} {b} {d}\nf {a} {d} {c}\n")
    except OSError as exc:
        raise FormatError(f"cannot write plot data to {prefix}: {exc.strerror}") from exc
    return csv_path, obj_path


def read_obj(path) -> tuple[np.ndarray, np.ndarray]:
    """Vertices and (1-based) triangle indices of an OBJ file."""
    verts, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(x.split("/")[0]) for x in parts[1:4]])
    return np.array(verts), np.array(faces, dtype=int)
