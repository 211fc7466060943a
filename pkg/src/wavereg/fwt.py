"""Periodic (circular) fast wavelet transform on dyadic meshes.

The forward transform maps the finest-scale scaling coefficients a_{-J}[n],
n = 0..2^J-1, to a single coarse coefficient a0 plus detail levels d_{-j}[n],
j = 0..J-1, where level -j holds 2^j coefficients.  One analysis step computes

    a_out[q] = sum_m h[m] a_in[(m + 2q) mod N]
    d_out[q] = sum_m g[m] a_in[(m + 2q) mod N]

with all indices reduced modulo the current level size N.  Because the input
is tiled before correlating, filter taps that wrap the circle several times
(possible once N < 2p) fold onto the correct periodized filter, so every level
map is exactly orthogonal and the inverse is its transpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .filters import WaveletFilter

__all__ = [
    "DyadicMesh",
    "WaveletDecomposition",
    "init_coeffs",
    "fwt_forward",
    "fwt_inverse",
]


def _as_scale_depth(n: int) -> int:
    """J such that n = 2^J, or raise."""
    J = int(n).bit_length() - 1
    if n <= 0 or (1 << J) != n:
        raise ValueError(f"length must be a power of two, got {n}")
    return J


@dataclass(frozen=True)
class DyadicMesh:
    """2^J samples, entry n living at abscissa n * 2^-J on the circle."""

    J: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.J < 1:
            raise ValueError(f"scale depth J must be >= 1, got {self.J}")
        if v.shape != (1 << self.J,):
            raise ValueError(
                f"mesh length {v.shape} does not match 2^J = {1 << self.J}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("mesh values must all be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def abscissae(self) -> np.ndarray:
        return np.arange(1 << self.J, dtype=np.float64) * 2.0 ** (-self.J)


@dataclass(frozen=True)
class WaveletDecomposition:
    """Coarse coefficient a0 plus detail levels d_{-j}, j = 0..J-1.

    details[j] holds the 2^j coefficients of level -j, so the tuple runs
    coarse to fine.
    """

    J: int
    a0: float
    details: tuple

    def __post_init__(self):
        if len(self.details) != self.J:
            raise ValueError(
                f"expected {self.J} detail levels, got {len(self.details)}"
            )
        levels = []
        for j, d in enumerate(self.details):
            d = np.ascontiguousarray(d, dtype=np.float64)
            if d.shape != (1 << j,):
                raise ValueError(
                    f"detail level {j} must have 2^{j} entries, got {d.shape}"
                )
            d.setflags(write=False)
            levels.append(d)
        object.__setattr__(self, "details", tuple(levels))

    @property
    def coefficient_count(self) -> int:
        """Total coefficient count, a0 included: always 2^J."""
        return 1 + sum(d.size for d in self.details)


def init_coeffs(mesh: DyadicMesh) -> np.ndarray:
    """Finest-scale coefficients a_{-J}[n] = 2^(-J/2) * values[n].

    This is the customary sample-based seed of the pyramid; for an
    alpha-Hoelder function it is accurate to O(2^(-J(alpha+1/2))) per
    coefficient.
    """
    return mesh.values * 2.0 ** (-mesh.J / 2.0)


def _tile_periodic(a: np.ndarray, length: int) -> np.ndarray:
    reps = -(-length // a.size)
    return np.tile(a, reps)[:length]


def _analyze_level(a: np.ndarray, h: np.ndarray, g: np.ndarray):
    """One convolve-and-downsample step with periodic wrap."""
    n = a.size
    ext = _tile_periodic(a, n + h.size - 1)
    lo = np.correlate(ext, h, mode="valid")[::2]
    hi = np.correlate(ext, g, mode="valid")[::2]
    return lo, hi


def _synthesize_level(lo: np.ndarray, hi: np.ndarray, h: np.ndarray, g: np.ndarray):
    """Transpose of _analyze_level: upsample, circular-convolve, sum."""
    n = 2 * lo.size
    rec = np.zeros(n)
    for coeffs, kern in ((lo, h), (hi, g)):
        up = np.zeros(n)
        up[::2] = coeffs
        full = np.convolve(up, kern)
        for start in range(0, full.size, n):
            seg = full[start : start + n]
            rec[: seg.size] += seg
    return rec


def fwt_forward(a: np.ndarray, filt: WaveletFilter) -> WaveletDecomposition:
    """Full periodic pyramid from finest-scale coefficients.

    a must have length 2^J with J >= 1.  Levels are produced fine to coarse;
    the returned decomposition stores them by level index (coarse to fine)
    together with the final coarse coefficient a0.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("input must be one-dimensional")
    J = _as_scale_depth(a.size)
    if J < 1:
        raise ValueError("need at least two samples")
    h, g = filt.h, filt.g
    details = [None] * J
    for j in range(J - 1, -1, -1):
        a, d = _analyze_level(a, h, g)
        details[j] = d
    return WaveletDecomposition(J=J, a0=float(a[0]), details=tuple(details))


def fwt_inverse(dec: WaveletDecomposition, filt: WaveletFilter) -> np.ndarray:
    """Exact adjoint of fwt_forward; returns the finest-scale coefficients."""
    h, g = filt.h, filt.g
    a = np.array([dec.a0], dtype=np.float64)
    for j in range(dec.J):
        d = dec.details[j]
        if d.size != a.size:
            raise ValueError(
                f"level {j} has {d.size} entries, expected {a.size}"
            )
        a = _synthesize_level(a, d, h, g)
    return a
