"""Grid specification and CSV / JSON / PGM serialization."""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridShapeError


@dataclass(frozen=True)
class GridSpec:
    """Rectangular lambda lattice given by corners and resolution."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError("grid bounds must be well-ordered")
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid resolution must be at least 2x2")

    @classmethod
    def square(cls, lo, hi, n):
        return cls(lo, hi, n, lo, hi, n)

    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self):
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def hx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def hy(self):
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def cell_area(self):
        return self.hx * self.hy

    def to_json_dict(self):
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "nx": self.nx,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "ny": self.ny,
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(d["x_min"], d["x_max"], d["nx"], d["y_min"], d["y_max"], d["ny"])


def parse_grid_spec(text):
    """Parse "lo:hi:n" (square) or "x0:x1:nx,y0:y1:ny"."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            lo, hi, n = parts[0].split(":")
            return GridSpec.square(float(lo), float(hi), int(n))
        if len(parts) == 2:
            x0, x1, nx = parts[0].split(":")
            y0, y1, ny = parts[1].split(":")
            return GridSpec(float(x0), float(x1), int(nx), float(y0), float(y1), int(ny))
    except ValueError as exc:
        raise DomainError(f"bad grid spec {text!r}") from exc
    raise DomainError(f"bad grid spec {text!r}")


def atomic_write_bytes(path, data: bytes):
    """Write via a temp file in the same directory, then rename."""
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text: str):
    atomic_write_bytes(path, text.encode("utf-8"))


def grid_csv_text(spec: GridSpec, values, in_omega, atom_candidate):
    """CSV with fixed columns x,y,density,in_omega,atom_candidate."""
    values = np.asarray(values)
    lines = ["x,y,density,in_omega,atom_candidate"]
    xs, ys = spec.xs(), spec.ys()
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            lines.append(
                f"{float(x)!r},{float(y)!r},{float(values[iy, ix])!r},"
                f"{int(in_omega[iy, ix])},{int(atom_candidate[iy, ix])}"
            )
    return "\n".join(lines) + "\n"


def grid_json_text(spec: GridSpec, values, meta=None):
    doc = {"grid": spec.to_json_dict(), "values": np.asarray(values).ravel().tolist()}
    if meta:
        doc.update(meta)
    return json.dumps(doc, sort_keys=True)


def pgm_bytes(values):
    """8-bit binary PGM, log-scaled: v = 255*log(1 + rho/rho_max*255)/log(256)."""
    rho = np.asarray(values, dtype=float)
    rho = np.where(np.isfinite(rho), np.maximum(rho, 0.0), 0.0)
    peak = rho.max()
    if peak <= 0:
        img = np.zeros_like(rho)
    else:
        img = 255.0 * np.log1p(rho / peak * 255.0) / math.log(256.0)
    img = np.clip(np.rint(img), 0, 255).astype(np.uint8)
    # top row of the image corresponds to the largest y
    img = img[::-1, :]
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    return header + img.tobytes()


def check_same_grid(a: GridSpec, b: GridSpec):
    if a != b:
        raise GridShapeError(f"grid specs differ: {a} vs {b}")
