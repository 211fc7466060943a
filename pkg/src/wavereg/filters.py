"""Daubechies filter bank: scaling filter, quadrature mirror, and sanity checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._daub_table import DAUB_H

__all__ = [
    "SUPPORTED_ORDERS",
    "FilterOrderError",
    "WaveletFilter",
    "daubechies_filter",
    "mirror_filter",
    "validate_filter",
]

#: Vanishing-moment counts with a tabulated scaling filter.
SUPPORTED_ORDERS = range(1, 21)

SQRT2 = math.sqrt(2.0)


class FilterOrderError(ValueError):
    """Requested filter order not tabulated."""


@dataclass(frozen=True)
class WaveletFilter:
    """Orthonormal scaling/wavelet filter pair with p vanishing moments.

    h is the low-pass (scaling) filter with support {0, ..., 2p-1}; g is the
    high-pass mirror g[n] = (-1)^n h[2p-1-n], re-based on the same support.
    Instances are immutable; the arrays are marked read-only.
    """

    vanishing_moments: int
    h: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = self.vanishing_moments
        if p < 1:
            raise ValueError(f"vanishing_moments must be >= 1, got {p}")
        h = np.ascontiguousarray(self.h, dtype=np.float64)
        g = np.ascontiguousarray(self.g, dtype=np.float64)
        if h.shape != (2 * p,) or g.shape != (2 * p,):
            raise ValueError(
                f"filter length must be 2p = {2 * p}, got h:{h.shape} g:{g.shape}"
            )
        h.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @property
    def length(self) -> int:
        return self.h.size

    @property
    def support(self) -> range:
        """Index support of both filters, {0, ..., 2p-1}."""
        return range(self.h.size)


def mirror_filter(h) -> np.ndarray:
    """High-pass quadrature mirror of a scaling filter.

    Uses the standard orthonormal convention g[n] = (-1)^n h[L-1-n], which is
    the alternating-sign index mirror re-based so that supp(g) = supp(h).
    Under the periodic (circular) convolution convention the index re-basing
    is immaterial; orthonormality is what matters and is covered by the
    perfect-reconstruction tests.
    """
    h = np.asarray(h, dtype=np.float64)
    if h.size == 0:
        raise ValueError("scaling filter must be nonempty")
    signs = np.where(np.arange(h.size) % 2 == 0, 1.0, -1.0)
    return signs * h[::-1]


def daubechies_filter(p: int) -> WaveletFilter:
    """Daubechies filter pair with p vanishing moments, 1 <= p <= 20.

    Raises FilterOrderError for orders outside the tabulated range.
    """
    try:
        h = DAUB_H[p]
    except (KeyError, TypeError):
        raise FilterOrderError(
            f"filter order not tabulated: p={p!r} (supported: 1..20)"
        ) from None
    h = np.array(h, dtype=np.float64)
    return WaveletFilter(vanishing_moments=p, h=h, g=mirror_filter(h))


def validate_filter(
    filt: WaveletFilter,
    sum_tol: float = 1e-12,
    orth_tol: float = 1e-10,
    moment_tol: float = 1e-8,
) -> None:
    """Assert the defining properties of an orthonormal Daubechies pair.

    Checks sum(h) = sqrt(2), shift-orthonormality of h under even shifts, and
    vanishing moments of g up to order p.  Moment sums are evaluated with
    exact (fsum) accumulation and compared relative to the scale
    sum_n |n^k g[n]|, since the raw sums grow like (2p)^k and an absolute
    comparison would be meaningless in double precision for large p.
    Raises AssertionError on the first violated property.
    """
    h, g, p = filt.h, filt.g, filt.vanishing_moments
    err = abs(math.fsum(h) - SQRT2)
    assert err <= sum_tol, f"sum(h) - sqrt(2) = {err:.3e} > {sum_tol:g}"
    for k in range(p):
        dot = math.fsum(h[2 * k:] * h[: h.size - 2 * k])
        target = 1.0 if k == 0 else 0.0
        assert abs(dot - target) <= orth_tol, (
            f"shift-orthonormality fails at shift {2 * k}: {dot - target:.3e}"
        )
    n = np.arange(g.size, dtype=np.float64)
    for k in range(p):
        terms = (n**k) * g
        mom = abs(math.fsum(terms))
        scale = max(1.0, math.fsum(np.abs(terms)))
        assert mom / scale <= moment_tol, (
            f"moment k={k} of g: relative residual {mom / scale:.3e}"
        )
