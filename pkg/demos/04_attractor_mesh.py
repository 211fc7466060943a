"""Building dyadic meshes of the forced skew product's attractor.

Iterates theta' = theta + omega (mod 1), x' = 2 sigma tanh(x)(eps + |cos 2 pi
theta|) past a transient, hash-places one orbit into 2^J angle slots, and
restores exact angle order.  Writes scatter CSVs for a pinched attractor
(discontinuous almost everywhere) and a non-pinched one (continuous), ready
for any plotting tool.
"""

from pathlib import Path

import numpy as np

from wavereg import SkewProductParams, generate_orbit_mesh, lyapunov_vertical
from wavereg.serialize import write_csv

OUT = Path("demo_output")
OUT.mkdir(exist_ok=True)

J = 14
for label, sigma, eps in (
    ("pinched", 1.5, 0.0),
    ("non_pinched", 1.699219, 0.039688),
):
    params = SkewProductParams(sigma=sigma, epsilon=eps, rng_seed=0)
    kappa = lyapunov_vertical(params)
    orbit = generate_orbit_mesh(params, 10**5, J, keep_angles=True)
    z = orbit.mesh.values
    path = OUT / f"attractor_{label}.csv"
    write_csv(path, ["theta", "x"], zip(orbit.angles, z))
    print(
        f"{label:12s} sigma={sigma} eps={eps}: kappa={kappa:+.4f}, "
        f"{1 << J} points, collisions {orbit.collision_fraction:.1%}, "
        f"x range [{z.min():.2e}, {z.max():.3f}] -> {path}"
    )

print(
    "\nThe pinched mesh dips to machine-small values on a dense set (the"
    "\nforward images of the pinched fibres); the non-pinched one stays"
    "\nbounded away from zero."
)
