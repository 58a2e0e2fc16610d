"""Flat-file formats: sampled lines, field snapshots, wave and dispersion tables.

All CSV is UTF-8 with LF line endings and a header row.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .fields import FieldTensor, FourPotential, Grid, ScalarField
from .fracops import FracScheme, SampledLine

SPACING_RTOL = 1e-6

FIELD_COMPONENTS = {
    "ScalarField": ("value",),
    "FourPotential": ("A0", "A1", "A2", "A3"),
    "FieldTensor": ("Ex", "Ey", "Ez", "Bx", "By", "Bz"),
}


class InputError(ValueError):
    """Malformed or unreadable input file; message names the file and row."""

    def __init__(self, path, message: str, row: int | None = None):
        where = f"{path}" if row is None else f"{path}, row {row}"
        super().__init__(f"{where}: {message}")
        self.path = str(path)
        self.row = row


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _fmt(v: float) -> str:
    return repr(float(v))


def write_line_csv_fh(fh, line: SampledLine) -> None:
    w = _writer(fh)
    w.writerow(["x", "value"])
    for x, v in zip(line.x, line.values):
        w.writerow([_fmt(x), _fmt(v)])


def write_line_csv(path, line: SampledLine) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_line_csv_fh(fh, line)


def read_line_csv(path) -> SampledLine:
    """Read an ``x,value`` CSV; spacing must be uniform."""
    path = Path(path)
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise InputError(path, f"cannot open ({exc.strerror})") from None
    xs, vs = [], []
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "value"]:
            raise InputError(path, "header must be 'x,value'", row=1)
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise InputError(path, f"expected 2 columns, got {len(row)}", row=rowno)
            try:
                xs.append(float(row[0]))
                vs.append(float(row[1]))
            except ValueError:
                raise InputError(path, f"non-numeric value {row!r}", row=rowno) from None
    if len(xs) < 2:
        raise InputError(path, "need at least 2 samples")
    x = np.array(xs)
    dx = np.diff(x)
    h = (x[-1] - x[0]) / (len(x) - 1)
    if h <= 0:
        raise InputError(path, "x must be increasing")
    bad = np.nonzero(np.abs(dx - h) > SPACING_RTOL * abs(h))[0]
    if bad.size:
        raise InputError(path, "non-uniform spacing", row=int(bad[0]) + 3)
    return SampledLine(np.array(vs), float(h), float(x[0]))


def write_snapshot(prefix, obj, scheme: FracScheme | None = None) -> list[Path]:
    """Write one ``i0,i1,i2,i3,value`` CSV per component plus a JSON sidecar.

    Files are ``<prefix>_<component>.csv`` and ``<prefix>.json``.
    """
    prefix = Path(prefix)
    kind = type(obj).__name__
    names = FIELD_COMPONENTS[kind]
    data = obj.data[None] if kind == "ScalarField" else obj.data
    grid = obj.grid
    written = []
    idx = np.indices(grid.shape).reshape(4, -1).T
    for name, comp in zip(names, data):
        path = prefix.with_name(f"{prefix.name}_{name}.csv")
        flat = comp.reshape(-1)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = _writer(fh)
            w.writerow(["i0", "i1", "i2", "i3", "value"])
            for (i0, i1, i2, i3), v in zip(idx, flat):
                w.writerow([int(i0), int(i1), int(i2), int(i3), _fmt(v)])
        written.append(path)
    meta = {
        "kind": kind,
        "components": list(names),
        "grid": grid.to_dict(),
        "scheme": scheme.to_dict() if scheme is not None else None,
    }
    side = prefix.with_name(prefix.name + ".json")
    side.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    written.append(side)
    return written


def read_snapshot(prefix):
    """Inverse of :func:`write_snapshot`; returns ``(obj, scheme_or_None)``."""
    prefix = Path(prefix)
    side = prefix.with_name(prefix.name + ".json")
    try:
        meta = json.loads(side.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(side, f"cannot open ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(side, f"invalid JSON ({exc.msg})", row=exc.lineno) from None
    grid = Grid.from_dict(meta["grid"])
    comps = []
    for name in meta["components"]:
        path = prefix.with_name(f"{prefix.name}_{name}.csv")
        arr = np.full(grid.shape, np.nan)
        try:
            fh = open(path, encoding="utf-8", newline="")
        except OSError as exc:
            raise InputError(path, f"cannot open ({exc.strerror})") from None
        with fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["i0", "i1", "i2", "i3", "value"]:
                raise InputError(path, "header must be 'i0,i1,i2,i3,value'", row=1)
            for rowno, row in enumerate(reader, start=2):
                try:
                    i0, i1, i2, i3 = (int(v) for v in row[:4])
                    arr[i0, i1, i2, i3] = float(row[4])
                except (ValueError, IndexError):
                    raise InputError(path, f"bad row {row!r}", row=rowno) from None
        if np.isnan(arr).any():
            raise InputError(path, "missing grid points")
        comps.append(arr)
    kind = meta["kind"]
    if kind == "ScalarField":
        obj = ScalarField(grid, comps[0])
    elif kind == "FourPotential":
        obj = FourPotential(grid, np.stack(comps))
    elif kind == "FieldTensor":
        obj = FieldTensor(grid, np.stack(comps))
    else:
        raise InputError(side, f"unknown kind {kind!r}")
    scheme = FracScheme.from_dict(meta["scheme"]) if meta.get("scheme") else None
    return obj, scheme


def write_wave_csv(fh, series) -> None:
    """Long format ``t,x,u``."""
    w = _writer(fh)
    w.writerow(["t", "x", "u"])
    for t, row in zip(series.times, series.u):
        for x, u in zip(series.x, row):
            w.writerow([_fmt(t), _fmt(x), _fmt(u)])


def write_dispersion_csv(fh, rows: Iterable[tuple[float, float, float]]) -> None:
    w = _writer(fh)
    w.writerow(["k", "alpha", "omega"])
    for k, a, om in rows:
        w.writerow([_fmt(k), _fmt(a), _fmt(om)])
