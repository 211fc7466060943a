"""Besov regularity of sampled circle maps via the periodic wavelet transform.

The package has three layers: an orthonormal Daubechies filter bank with the
periodic fast wavelet transform (filters, fwt), a regularity estimator that
reads the decay slope of per-level detail suprema (regularity, analytic for
the Weierstrass calibration oracle), and drivers that build attractor meshes
of a quasiperiodically forced skew product and sweep its parameters (sna,
sweep, cli).
"""

from .analytic import WeierstrassParams, theoretical_regularity, weierstrass_eval, weierstrass_mesh
from .filters import (
    SUPPORTED_ORDERS,
    FilterOrderError,
    WaveletFilter,
    daubechies_filter,
    mirror_filter,
    validate_filter,
)
from .fwt import DyadicMesh, WaveletDecomposition, fwt_forward, fwt_inverse, init_coeffs
from .regularity import (
    DegenerateInputError,
    LevelSupSeries,
    RegularityEstimate,
    default_skip_coarse,
    default_skip_fine,
    estimate_regularity,
    level_sups,
    reg_map,
    regress,
)
from .serialize import load_decomposition, load_mesh, save_decomposition, save_mesh
from .sna import (
    GOLDEN_FRAC,
    OrbitMesh,
    SkewProductParams,
    benchmark_mesh_generation,
    epsilon_of_sigma,
    generate_orbit_mesh,
    heapsort_reference_mesh,
    lyapunov_vertical,
    orbit_points,
    step,
    transfer_curve,
    transfer_eval,
)
from .sweep import SweepRow, run_sna_estimate, sweep

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SUPPORTED_ORDERS",
    "FilterOrderError",
    "WaveletFilter",
    "daubechies_filter",
    "mirror_filter",
    "validate_filter",
    "DyadicMesh",
    "WaveletDecomposition",
    "fwt_forward",
    "fwt_inverse",
    "init_coeffs",
    "DegenerateInputError",
    "LevelSupSeries",
    "RegularityEstimate",
    "default_skip_coarse",
    "default_skip_fine",
    "estimate_regularity",
    "level_sups",
    "reg_map",
    "regress",
    "WeierstrassParams",
    "theoretical_regularity",
    "weierstrass_eval",
    "weierstrass_mesh",
    "GOLDEN_FRAC",
    "OrbitMesh",
    "SkewProductParams",
    "benchmark_mesh_generation",
    "epsilon_of_sigma",
    "generate_orbit_mesh",
    "heapsort_reference_mesh",
    "lyapunov_vertical",
    "orbit_points",
    "step",
    "transfer_curve",
    "transfer_eval",
    "SweepRow",
    "run_sna_estimate",
    "sweep",
    "save_decomposition",
    "load_decomposition",
    "save_mesh",
    "load_mesh",
]
