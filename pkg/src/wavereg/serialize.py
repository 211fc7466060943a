"""On-disk formats: decompositions, meshes, and plot-ready CSV tables.

Two formats are provided for coefficient data.  The CSV layout is line
oriented: a magic/version line, a `J,<J>` line, a `p,<p>` line (decomposition
only, -1 when unknown), the coarse coefficient, then one `d,<j>,<n>,<value>`
line per detail coefficient, levels coarse to fine.  Floats are written with
repr, which round-trips binary64 exactly.  The binary layout is the same
content packed little-endian: an 8-byte magic, uint32 J, int32 p, float64 a0,
then the level payloads coarse to fine (for meshes: magic, uint32 J, then the
2^J float64 samples).
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .fwt import DyadicMesh, WaveletDecomposition

__all__ = [
    "save_decomposition",
    "load_decomposition",
    "save_mesh",
    "load_mesh",
    "write_csv",
    "fmt_value",
]

DEC_MAGIC_CSV = "wavereg-decomposition,1"
MESH_MAGIC_CSV = "wavereg-mesh,1"
DEC_MAGIC_BIN = b"WVRGDEC1"
MESH_MAGIC_BIN = b"WVRGMSH1"


def fmt_value(v) -> str:
    """Deterministic CSV token: repr for floats, 1/0 for bools."""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if v is None:
        return ""
    return str(v)


def write_csv(path, header, rows) -> None:
    """Write a plot-ready CSV table with deterministic formatting."""
    path = Path(path)
    with path.open("w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(fmt_value(v) for v in row) + "\n")


def save_decomposition(
    path, dec: WaveletDecomposition, vanishing_moments: int | None = None,
    fmt: str = "csv",
) -> None:
    path = Path(path)
    p = -1 if vanishing_moments is None else int(vanishing_moments)
    if fmt == "csv":
        with path.open("w", newline="\n") as f:
            f.write(DEC_MAGIC_CSV + "\n")
            f.write(f"J,{dec.J}\n")
            f.write(f"p,{p}\n")
            f.write(f"a0,{repr(dec.a0)}\n")
            for j, level in enumerate(dec.details):
                for n, v in enumerate(level):
                    f.write(f"d,{j},{n},{repr(float(v))}\n")
    elif fmt == "binary":
        with path.open("wb") as f:
            f.write(DEC_MAGIC_BIN)
            f.write(struct.pack("<Ii", dec.J, p))
            f.write(struct.pack("<d", dec.a0))
            for level in dec.details:
                f.write(np.ascontiguousarray(level, dtype="<f8").tobytes())
    else:
        raise ValueError(f"unknown format {fmt!r}: use 'csv' or 'binary'")


def load_decomposition(path, fmt: str = "csv"):
    """Read a decomposition; returns (decomposition, vanishing_moments|None)."""
    path = Path(path)
    if fmt == "csv":
        with path.open() as f:
            magic = f.readline().strip()
            if magic != DEC_MAGIC_CSV:
                raise ValueError(f"not a wavereg decomposition CSV: {path}")
            J = int(f.readline().strip().split(",")[1])
            p = int(f.readline().strip().split(",")[1])
            a0 = float(f.readline().strip().split(",")[1])
            levels = [np.zeros(1 << j) for j in range(J)]
            for line in f:
                tag, j, n, v = line.strip().split(",")
                if tag != "d":
                    raise ValueError(f"unexpected row tag {tag!r}")
                levels[int(j)][int(n)] = float(v)
    elif fmt == "binary":
        with path.open("rb") as f:
            if f.read(8) != DEC_MAGIC_BIN:
                raise ValueError(f"not a wavereg decomposition file: {path}")
            J, p = struct.unpack("<Ii", f.read(8))
            (a0,) = struct.unpack("<d", f.read(8))
            levels = []
            for j in range(J):
                buf = f.read(8 << j)
                levels.append(np.frombuffer(buf, dtype="<f8").astype(np.float64))
    else:
        raise ValueError(f"unknown format {fmt!r}: use 'csv' or 'binary'")
    dec = WaveletDecomposition(J=J, a0=a0, details=tuple(levels))
    return dec, (None if p < 0 else p)


def save_mesh(path, mesh: DyadicMesh, fmt: str = "csv") -> None:
    path = Path(path)
    if fmt == "csv":
        with path.open("w", newline="\n") as f:
            f.write(MESH_MAGIC_CSV + "\n")
            f.write(f"J,{mesh.J}\n")
            f.write("index,z\n")
            for n, v in enumerate(mesh.values):
                f.write(f"{n},{repr(float(v))}\n")
    elif fmt == "binary":
        with path.open("wb") as f:
            f.write(MESH_MAGIC_BIN)
            f.write(struct.pack("<I", mesh.J))
            f.write(np.ascontiguousarray(mesh.values, dtype="<f8").tobytes())
    else:
        raise ValueError(f"unknown format {fmt!r}: use 'csv' or 'binary'")


def load_mesh(path, fmt: str = "csv") -> DyadicMesh:
    path = Path(path)
    if fmt == "csv":
        with path.open() as f:
            magic = f.readline().strip()
            if magic != MESH_MAGIC_CSV:
                raise ValueError(f"not a wavereg mesh CSV: {path}")
            J = int(f.readline().strip().split(",")[1])
            f.readline()  # column header
            values = np.empty(1 << J)
            for line in f:
                n, v = line.strip().split(",")
                values[int(n)] = float(v)
    elif fmt == "binary":
        with path.open("rb") as f:
            if f.read(8) != MESH_MAGIC_BIN:
                raise ValueError(f"not a wavereg mesh file: {path}")
            (J,) = struct.unpack("<I", f.read(4))
            values = np.frombuffer(f.read(8 << J), dtype="<f8").astype(np.float64)
    else:
        raise ValueError(f"unknown format {fmt!r}: use 'csv' or 'binary'")
    return DyadicMesh(J=J, values=values)
