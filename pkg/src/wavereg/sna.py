"""Pinched skew products on the cylinder and their attractor meshes.

The system iterated here is

    theta' = theta + omega  (mod 1),
    x'     = 2 sigma tanh(x) * (eps + |cos(2 pi theta)|),

with irrational omega (golden rotation by default).  For positive vertical
Lyapunov exponent the orbit of any x0 above the invariant circle x = 0
converges exponentially to the graph of an invariant map phi; sampling one
orbit past a transient, hashing the points into 2^J slots by angle and
restoring exact angle order with one insertion-sort pass yields a dyadic
mesh of a conjugate copy of phi whose regularity equals phi's.
"""

from __future__ import annotations

import math
import time
import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .fwt import DyadicMesh

__all__ = [
    "GOLDEN_FRAC",
    "SkewProductParams",
    "OrbitMesh",
    "step",
    "orbit_points",
    "generate_orbit_mesh",
    "heapsort_reference_mesh",
    "benchmark_mesh_generation",
    "transfer_eval",
    "transfer_curve",
    "lyapunov_vertical",
    "epsilon_of_sigma",
]

#: Fractional part of the golden mean: the default rotation number.
GOLDEN_FRAC = (math.sqrt(5.0) - 1.0) / 2.0

_TWO64 = 2.0**64


def _angle_to_bits(theta: float) -> np.uint64:
    return np.uint64(int(round((theta % 1.0) * _TWO64)) % (1 << 64))


@dataclass(frozen=True)
class SkewProductParams:
    """Parameters of the forced skew product and of its orbit generation.

    x0 defaults to 2*sigma + 1, above the fibre map's supremum 2*sigma as the
    transfer-operator construction requires.  theta0 defaults to a draw from
    a PRNG seeded with rng_seed, so runs are reproducible by seed alone.
    """

    sigma: float
    epsilon: float = 0.0
    omega: float = GOLDEN_FRAC
    x0: float | None = None
    theta0: float | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if not (self.sigma > 0.0):
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not (0.0 < self.omega < 1.0):
            raise ValueError(f"omega must lie in (0, 1), got {self.omega}")
        if self.x0 is None:
            object.__setattr__(self, "x0", 2.0 * self.sigma + 1.0)
        if not (self.x0 > 2.0 * self.sigma):
            raise ValueError(
                f"x0 must exceed 2*sigma = {2.0 * self.sigma}, got {self.x0}"
            )
        if self.theta0 is not None and not (0.0 <= self.theta0 < 1.0):
            raise ValueError(f"theta0 must lie in [0, 1), got {self.theta0}")

    @property
    def omega_bits(self) -> np.uint64:
        """Rotation step as 64-bit fixed point (exact modular arithmetic)."""
        return _angle_to_bits(self.omega)

    @property
    def theta0_bits(self) -> np.uint64:
        if self.theta0 is not None:
            return _angle_to_bits(self.theta0)
        rng = np.random.default_rng(self.rng_seed)
        return rng.integers(0, 2**64, dtype=np.uint64)


@dataclass(frozen=True)
class OrbitMesh:
    """Hash-placed orbit sample and its angle-sorted dyadic mesh.

    slot_values holds the fibre values in hash order (every one of the 2^J
    slots occupied exactly once after finalization); mesh holds the same
    values after the insertion-sort pass restored exact angle order, indexed
    by dyadic abscissa.  angles keeps the sorted angles when requested, for
    scatter exports; the mesh itself never uses them again.
    """

    J: int
    displaced: int
    slot_values: np.ndarray = field(repr=False)
    mesh: DyadicMesh = field(repr=False)
    angles: np.ndarray | None = field(default=None, repr=False)

    @property
    def collision_fraction(self) -> float:
        return self.displaced / float(1 << self.J)


def step(params: SkewProductParams, state):
    """One application of the skew product to a (theta, x) pair."""
    theta, x = state
    x_next = (
        2.0
        * params.sigma
        * math.tanh(x)
        * (params.epsilon + abs(math.cos(2.0 * math.pi * theta)))
    )
    theta_next = (theta + params.omega) % 1.0
    return theta_next, x_next


def orbit_points(
    params: SkewProductParams,
    count: int,
    transient: int = 0,
    return_angle_bits: bool = False,
):
    """(theta_k, x_k) pairs for k = transient+1 .. transient+count.

    With return_angle_bits=True the exact fixed-point angles are returned as
    a third array; these are the values transfer_eval accepts for bitwise
    consistency with the orbit.
    """
    if count < 1:
        raise ValueError("count must be positive")
    t, x = _kernels.advance_state(
        params.theta0_bits,
        params.omega_bits,
        params.x0,
        params.sigma,
        params.epsilon,
        transient,
    )
    bits, thetas, xs = _kernels.orbit_arrays(
        np.uint64(t), params.omega_bits, x, params.sigma, params.epsilon, count
    )
    if return_angle_bits:
        return thetas, xs, bits
    return thetas, xs


def _check_contraction(params: SkewProductParams) -> None:
    kappa = lyapunov_vertical(params)
    if kappa <= 0.0:
        _warnings.warn(
            f"vertical Lyapunov exponent {kappa:.4f} <= 0: the attractor is "
            "the circle x=0 and the mesh will collapse toward zero",
            RuntimeWarning,
            stacklevel=3,
        )


def generate_orbit_mesh(
    params: SkewProductParams,
    transient: int,
    J: int,
    keep_angles: bool = False,
    check_lyapunov: bool = True,
) -> OrbitMesh:
    """Dyadic mesh of the attractor from one orbit of 2^J points.

    Iterates the transient, then places each further point (theta, x) at slot
    floor(2^J theta), spilling to the nearest free slot (circularly, ties to
    the right) on collision; a final insertion-sort pass restores exact angle
    order, after which the angles are discarded.  The placement makes the
    slot array almost sorted, so the sort pass costs O(2^J + displacements)
    instead of a full comparison sort.
    """
    if transient < 1:
        raise ValueError("transient must be >= 1")
    if J < 4:
        raise ValueError(f"J must be at least 4, got {J}")
    if check_lyapunov:
        _check_contraction(params)
    t, x = _kernels.advance_state(
        params.theta0_bits,
        params.omega_bits,
        params.x0,
        params.sigma,
        params.epsilon,
        transient,
    )
    thetas, z, displaced = _kernels.fill_hash_slots(
        np.uint64(t), params.omega_bits, x, params.sigma, params.epsilon, J
    )
    if displaced < 0:
        raise RuntimeError(
            "collision cascade: no free slot within half the circle "
            "(cannot occur for an irrational rotation at sane J)"
        )
    slot_values = z.copy()
    _kernels.insertion_sort_pairs(thetas, z)
    return OrbitMesh(
        J=J,
        displaced=displaced,
        slot_values=slot_values,
        mesh=DyadicMesh(J=J, values=z),
        angles=thetas if keep_angles else None,
    )


def heapsort_reference_mesh(
    params: SkewProductParams, transient: int, J: int
) -> OrbitMesh:
    """Same mesh as generate_orbit_mesh, built by plain heapsort.

    This is the comparison-sort baseline of the benchmark harness: generate
    the orbit into flat arrays, then heapsort the (theta, z) pairs.  Output
    is element-for-element identical to the hash-placed path; the displaced
    counter is -1 since no hash placement happens here.
    """
    if transient < 1:
        raise ValueError("transient must be >= 1")
    t, x = _kernels.advance_state(
        params.theta0_bits,
        params.omega_bits,
        params.x0,
        params.sigma,
        params.epsilon,
        transient,
    )
    _, thetas, xs = _kernels.orbit_arrays(
        np.uint64(t), params.omega_bits, x, params.sigma, params.epsilon, 1 << J
    )
    _kernels.heapsort_pairs(thetas, xs)
    return OrbitMesh(
        J=J,
        displaced=-1,
        slot_values=xs.copy(),
        mesh=DyadicMesh(J=J, values=xs),
        angles=thetas,
    )


def benchmark_mesh_generation(
    params: SkewProductParams, transient: int, J: int, repeats: int = 3
) -> dict:
    """Wall-time comparison of hash placement against the heapsort baseline.

    Generation is included in both arms, as in the measurement the trick is
    meant to speed up.  Returns best-of-`repeats` times, the speedup factor,
    the displaced-insertion fraction, and whether both paths produced the
    same mesh.
    """
    _kernels.warmup()
    hash_times = []
    heap_times = []
    mesh_hash = mesh_heap = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        mesh_hash = generate_orbit_mesh(params, transient, J, check_lyapunov=False)
        hash_times.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        mesh_heap = heapsort_reference_mesh(params, transient, J)
        heap_times.append(time.perf_counter() - t0)
    return {
        "hash_seconds": min(hash_times),
        "heapsort_seconds": min(heap_times),
        "speedup": min(heap_times) / min(hash_times),
        "displaced_fraction": mesh_hash.collision_fraction,
        "identical_output": bool(
            np.array_equal(mesh_hash.mesh.values, mesh_heap.mesh.values)
        ),
    }


def transfer_eval(params: SkewProductParams, k: int, theta, c: float) -> float:
    """k-th transfer iterate of the constant function c, at angle theta.

    Computed by the k-deep backward recursion
    phi_k(theta) = 2 sigma tanh(phi_{k-1}(theta - omega)) * g(theta - omega),
    phi_0 = c, in O(k) work without interpolation.  theta may be a float in
    [0, 1) or an integer fixed-point angle (as produced by
    orbit_points(..., return_angle_bits=True)); with the integer form the
    angle walk inverts the orbit's exactly, so an orbit started at x0 = c
    reproduces x_k = transfer_eval(params, k, theta_k, c) bitwise.
    """
    if k < 0:
        raise ValueError("iteration depth k must be >= 0")
    if not (c > 2.0 * params.sigma):
        raise ValueError(
            f"start constant c must exceed 2*sigma = {2.0 * params.sigma}"
        )
    if k == 0:
        return float(c)
    if isinstance(theta, (int, np.integer)):
        bits = np.uint64(int(theta) % (1 << 64))
        return float(
            _kernels.transfer_eval_bits(
                bits, params.omega_bits, c, params.sigma, params.epsilon, k
            )
        )
    x = float(c)
    for i in range(k, 0, -1):
        t = (theta - i * params.omega) % 1.0
        x = (
            2.0
            * params.sigma
            * math.tanh(x)
            * (params.epsilon + abs(math.cos(2.0 * math.pi * t)))
        )
    return x


def transfer_curve(params: SkewProductParams, k: int, grid_size: int, c: float):
    """phi_k sampled on a uniform angle grid, for iterate plots.

    Returns (theta_grid, values); vectorized over the grid, O(k * grid_size).
    """
    if k < 0:
        raise ValueError("iteration depth k must be >= 0")
    if grid_size < 1:
        raise ValueError("grid_size must be positive")
    theta = np.arange(grid_size, dtype=np.float64) / grid_size
    x = np.full(grid_size, float(c))
    t = (theta - k * params.omega) % 1.0
    for _ in range(k):
        x = (
            2.0
            * params.sigma
            * np.tanh(x)
            * (params.epsilon + np.abs(np.cos(2.0 * np.pi * t)))
        )
        t = (t + params.omega) % 1.0
    return theta, x


def lyapunov_vertical(
    params: SkewProductParams, quadrature_points: int = 2**16
) -> float:
    """Vertical Lyapunov exponent of the invariant circle x = 0.

    kappa = log(2 sigma) + integral of log(eps + |cos 2 pi theta|) over the
    circle, by the composite midpoint rule.  Nodes that land exactly on a
    zero of the fibre factor (possible only with eps = 0) are nudged by a
    quarter step.
    """
    n = int(quadrature_points)
    if n < 2**10:
        raise ValueError(f"quadrature_points must be >= 2^10, got {n}")
    theta = (np.arange(n, dtype=np.float64) + 0.5) / n
    g = params.epsilon + np.abs(np.cos(2.0 * np.pi * theta))
    bad = g == 0.0
    if np.any(bad):
        g[bad] = params.epsilon + np.abs(
            np.cos(2.0 * np.pi * (theta[bad] + 0.25 / n))
        )
    return math.log(2.0 * params.sigma) + float(np.mean(np.log(g)))


def epsilon_of_sigma(sigma: float) -> float:
    """Forcing-floor schedule of the parameter sweep: (sigma-1.5)^2 past 1.5."""
    if not (1.0 <= sigma <= 2.0):
        raise ValueError(f"sigma must lie in [1, 2], got {sigma}")
    if sigma > 1.5:
        return (sigma - 1.5) ** 2
    return 0.0
