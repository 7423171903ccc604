"""The .pwf container and plot-ready CSV exports.

A .pwf file is a single-line compact JSON header (UTF-8, newline
terminated) followed by the raw little-endian float64 payload; complex
values are stored as interleaved (re, im) pairs.  Arrays are laid out
component-major in row-major C order.  Write/read round trips are
bit-exact.
"""

import json

import numpy as np

from .errors import FormatError, ValidationError
from .fields import ComplexVectorField, Helicity, RealFieldPair
from .grids import Grid1, Grid3, Units
from .normalization import MomentumAmplitude
from .wigner import TransverseState, TwoPhotonState, WignerGrid

SCHEMA_VERSION = 1
_LAYOUT = "component-major row-major C order"


def _base_header(kind: str, units: Units, **extra) -> dict:
    header = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "dtype": "f64",
        "layout": _LAYOUT,
        "units": {"hbar": units.hbar, "c": units.c},
    }
    header.update(extra)
    return header


def _complex_bytes(arr: np.ndarray) -> bytes:
    return np.ascontiguousarray(arr, dtype="<c16").tobytes()


def _real_bytes(arr: np.ndarray) -> bytes:
    return np.ascontiguousarray(arr, dtype="<f8").tobytes()


def _take_complex(buf: memoryview, offset: int, shape) -> tuple[np.ndarray, int]:
    count = int(np.prod(shape))
    nbytes = count * 16
    arr = np.frombuffer(buf[offset : offset + nbytes], dtype="<c16").reshape(shape).copy()
    return arr, offset + nbytes


def _take_real(buf: memoryview, offset: int, shape) -> tuple[np.ndarray, int]:
    count = int(np.prod(shape))
    nbytes = count * 8
    arr = np.frombuffer(buf[offset : offset + nbytes], dtype="<f8").reshape(shape).copy()
    return arr, offset + nbytes


def write_pwf(path, obj, meta: dict | None = None) -> None:
    """Serialize a field, amplitude, transverse state, or Wigner grid."""
    if isinstance(obj, ComplexVectorField):
        header = _base_header(
            "complex_field",
            obj.units,
            complex=True,
            dims=list(obj.grid.dims),
            lengths=list(obj.grid.lengths),
            time=obj.time,
            helicity=int(obj.helicity),
            space=obj.space,
        )
        payload = _complex_bytes(obj.data)
    elif isinstance(obj, RealFieldPair):
        header = _base_header(
            "real_field_pair",
            obj.units,
            complex=False,
            dims=list(obj.grid.dims),
            lengths=list(obj.grid.lengths),
            time=obj.time,
            helicity=None,
            space="coordinate",
        )
        payload = _real_bytes(obj.E) + _real_bytes(obj.B)
    elif isinstance(obj, MomentumAmplitude):
        header = _base_header(
            "momentum_amplitude",
            obj.units,
            complex=True,
            dims=list(obj.grid.dims),
            lengths=list(obj.grid.lengths),
            time=None,
            helicity=None,
            space="momentum",
            transverse=bool(obj.transverse),
        )
        payload = _complex_bytes(obj.data)
    elif isinstance(obj, TwoPhotonState):
        header = _base_header(
            "two_photon_state",
            obj.units,
            complex=True,
            dims=[g.n for g in obj.grids],
            lengths=[g.length for g in obj.grids],
            time=None,
            helicity=None,
            space="coordinate",
        )
        payload = _complex_bytes(obj.amplitude)
    elif isinstance(obj, TransverseState):
        header = _base_header(
            "transverse_state",
            obj.units,
            complex=True,
            dims=[g.n for g in obj.grids],
            lengths=[g.length for g in obj.grids],
            time=None,
            helicity=None,
            space="coordinate",
        )
        payload = _complex_bytes(obj.amplitude)
    elif isinstance(obj, WignerGrid):
        header = _base_header(
            "wigner",
            Units(obj.hbar, 1.0),
            complex=False,
            x_dims=[len(x) for x in obj.xs],
            p_dims=[len(p) for p in obj.ps],
            time=None,
            helicity=None,
            space="phase",
        )
        payload = b"".join(_real_bytes(a) for a in (*obj.xs, *obj.ps, obj.values))
    else:
        raise ValidationError(f"cannot serialize object of type {type(obj).__name__}")

    if meta:
        header["meta"] = meta
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, separators=(",", ":")).encode("utf-8"))
        fh.write(b"\n")
        fh.write(payload)


def read_pwf(path):
    """Load whatever write_pwf stored; the kind decides the return type."""
    with open(path, "rb") as fh:
        raw = fh.read()
    newline = raw.find(b"\n")
    if newline < 0:
        raise FormatError(f"{path}: missing header line")
    try:
        header = json.loads(raw[:newline].decode("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path}: bad JSON header ({exc})") from exc
    if header.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported schema_version {header.get('schema_version')}")
    buf = memoryview(raw)[newline + 1 :]

    kind = header.get("kind")
    try:
        units = Units(**header.get("units", {}))
        if kind == "complex_field":
            grid = Grid3(tuple(header["dims"]), tuple(header["lengths"]))
            data, _ = _take_complex(buf, 0, (3,) + grid.dims)
            return ComplexVectorField(
                grid=grid,
                data=data,
                time=header["time"],
                helicity=Helicity(header["helicity"]),
                space=header["space"],
                units=units,
            )
        if kind == "real_field_pair":
            grid = Grid3(tuple(header["dims"]), tuple(header["lengths"]))
            E, offset = _take_real(buf, 0, (3,) + grid.dims)
            B, _ = _take_real(buf, offset, (3,) + grid.dims)
            return RealFieldPair(grid=grid, E=E, B=B, time=header["time"], units=units)
        if kind == "momentum_amplitude":
            grid = Grid3(tuple(header["dims"]), tuple(header["lengths"]))
            data, _ = _take_complex(buf, 0, (3,) + grid.dims)
            return MomentumAmplitude(
                grid=grid, data=data, transverse=header.get("transverse", True), units=units
            )
        if kind in ("transverse_state", "two_photon_state"):
            grids = tuple(
                Grid1(n, L) for n, L in zip(header["dims"], header["lengths"])
            )
            amp, _ = _take_complex(buf, 0, tuple(header["dims"]))
            cls = TwoPhotonState if kind == "two_photon_state" else TransverseState
            return cls(grids=grids, amplitude=amp, units=units)
        if kind == "wigner":
            offset = 0
            xs = []
            for n in header["x_dims"]:
                axis, offset = _take_real(buf, offset, (n,))
                xs.append(axis)
            ps = []
            for n in header["p_dims"]:
                axis, offset = _take_real(buf, offset, (n,))
                ps.append(axis)
            shape = tuple(header["x_dims"]) + tuple(header["p_dims"])
            values, _ = _take_real(buf, offset, shape)
            return WignerGrid(xs=tuple(xs), ps=tuple(ps), values=values, hbar=units.hbar)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: inconsistent header/payload ({exc})") from exc
    raise FormatError(f"{path}: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# CSV exports
# ---------------------------------------------------------------------------

def _write_csv(path, comment_meta: dict, columns: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, val in comment_meta.items():
            fh.write(f"# {key}: {val}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")


def write_wigner_csv(path, wig: WignerGrid, meta: dict | None = None) -> None:
    """Long-format CSV of a Wigner grid; 1D grids get (x, p, W) columns,
    4-axis grids (x1, x2, p1, p2, W)."""
    meta = dict(meta or {})
    meta.setdefault("hbar", wig.hbar)
    if wig.ndim == 1:
        rows = (
            (float(x), float(p), float(w))
            for i, x in enumerate(wig.xs[0])
            for p, w in zip(wig.ps[0], wig.values[i])
        )
        _write_csv(path, meta, ["x", "p", "W"], rows)
    elif wig.ndim == 2:
        x1, x2 = wig.xs
        p1, p2 = wig.ps
        rows = (
            (float(x1[i]), float(x2[j]), float(p1[k]), float(p2[l]), float(wig.values[i, j, k, l]))
            for i in range(len(x1))
            for j in range(len(x2))
            for k in range(len(p1))
            for l in range(len(p2))
        )
        _write_csv(path, meta, ["x1", "x2", "p1", "p2", "W"], rows)
    else:
        raise ValidationError(f"unsupported Wigner dimensionality {wig.ndim}")


def write_scan_csv(path, rows, meta: dict | None = None) -> None:
    """Displaced-parity scan: columns (x0, p0, rate, derived_W)."""
    _write_csv(path, dict(meta or {}), ["x0", "p0", "rate", "derived_W"], rows)
