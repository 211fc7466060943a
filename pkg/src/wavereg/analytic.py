"""Closed-form test functions with known regularity.

The Weierstrass family W(x) = sum_{n>=1} A^n sin(B^n x) with 1/B < A < 1 < B
has regularity exactly -log_B(A), which makes it the calibration oracle for
the wavelet estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fwt import DyadicMesh

__all__ = [
    "WeierstrassParams",
    "weierstrass_eval",
    "weierstrass_mesh",
    "theoretical_regularity",
]

#: Hard cap on the number of series terms regardless of truncation_tol.
MAX_TERMS = 2000


@dataclass(frozen=True)
class WeierstrassParams:
    """Parameters of W(x) = sum A^n sin(B^n x), with B^-1 < A < 1 < B."""

    A: float
    B: float
    truncation_tol: float = 1e-16

    def __post_init__(self):
        if not (self.B > 1.0):
            raise ValueError(f"B must exceed 1, got {self.B}")
        # A = 1/B (regularity exactly 1) is admitted as the boundary case
        if not (1.0 / self.B <= self.A < 1.0):
            raise ValueError(
                f"need B^-1 <= A < 1: A={self.A}, B^-1={1.0 / self.B}"
            )
        if not (self.truncation_tol > 0.0):
            raise ValueError("truncation_tol must be positive")

    @property
    def n_terms(self) -> int:
        """Terms kept so the tail sum stays below truncation_tol."""
        n = math.ceil(math.log(self.truncation_tol) / math.log(self.A))
        return min(MAX_TERMS, max(1, n))


def weierstrass_eval(params: WeierstrassParams, x: float) -> float:
    """Truncated series value at a single point, exactly summed (fsum).

    Terms whose argument B^n * x overflows the double range are dropped;
    their true magnitude is below A^n, which is already under the truncation
    tolerance whenever that can happen for sane parameters.
    """
    terms = []
    An = 1.0
    Bn_x = float(x)
    for _ in range(params.n_terms):
        An *= params.A
        Bn_x *= params.B
        if not math.isfinite(Bn_x):
            break
        terms.append(An * math.sin(Bn_x))
    return math.fsum(terms)


def _mesh_verbatim(params: WeierstrassParams, J: int) -> np.ndarray:
    x = np.arange(1 << J, dtype=np.float64) * 2.0 ** (-J)
    out = np.zeros_like(x)
    An = 1.0
    Bn = 1.0
    for _ in range(params.n_terms):
        An *= params.A
        Bn *= params.B
        if not math.isfinite(Bn):
            break
        out += An * np.sin(Bn * x)
    return out


def _mesh_circle(params: WeierstrassParams, J: int) -> np.ndarray:
    B = params.B
    if B != int(B) or B < 2:
        raise ValueError(
            f"circle sampling needs an integer frequency ratio B >= 2, got {B}"
        )
    B = float(int(B))
    t = np.arange(1 << J, dtype=np.float64) * 2.0 ** (-J)
    out = np.zeros_like(t)
    u = t.copy()
    An = 1.0
    for _ in range(params.n_terms):
        u = (u * B) % 1.0
        An *= params.A
        if not u.any():
            # on the dyadic grid every later term sits exactly on a period
            break
        out += An * np.sin(2.0 * np.pi * u)
    return out


def weierstrass_mesh(
    params: WeierstrassParams, J: int, sampling: str = "verbatim"
) -> DyadicMesh:
    """Dyadic mesh of the Weierstrass function at abscissae n * 2^-J.

    sampling="verbatim" evaluates W(n 2^-J) literally; note that W is
    2*pi-periodic in its argument, so this restriction carries a jump at the
    wrap point theta=0 (plus a non-bandlimited tail that aliases across the
    grid), both of which bias the fine-level decay toward the slope of a step.
    sampling="circle" evaluates the 1-periodic reading W(2*pi * n 2^-J)
    instead (integer B only), which has the same regularity -log_B(A) and is
    the variant to use for calibrating the estimator.  Terms are reduced
    mod 1 before the sine, so frequencies at or beyond the grid scale vanish
    identically instead of leaking rounding noise.
    """
    if J < 4:
        raise ValueError(f"J must be at least 4, got {J}")
    if sampling == "verbatim":
        values = _mesh_verbatim(params, J)
    elif sampling == "circle":
        values = _mesh_circle(params, J)
    else:
        raise ValueError(f"unknown sampling {sampling!r}: use 'verbatim' or 'circle'")
    return DyadicMesh(J=J, values=values)


def theoretical_regularity(params: WeierstrassParams) -> float:
    """Exact regularity -log_B(A) of the Weierstrass function."""
    return -math.log(params.A) / math.log(params.B)
