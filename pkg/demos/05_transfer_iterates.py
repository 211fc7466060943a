"""Transfer-operator iterates: squeezing a constant down onto the attractor.

phi_0 = c, phi_{k+1}(theta) = 2 sigma tanh(phi_k(theta - omega)) * g(theta -
omega).  The sequence is pointwise non-increasing and converges exponentially
to the invariant graph.  Also demonstrates that an orbit started at x0 = c
reproduces the iterates exactly: x_k == phi_k(theta_k) bit for bit.
"""

from pathlib import Path

import numpy as np

from wavereg import SkewProductParams, orbit_points, transfer_curve, transfer_eval
from wavereg.serialize import write_csv

OUT = Path("demo_output")
OUT.mkdir(exist_ok=True)

c = 5.0
params = SkewProductParams(sigma=1.5, epsilon=0.0, x0=c, rng_seed=0)

columns = {}
theta = None
for k in range(4):
    theta, values = transfer_curve(params, k, 1 << 10, c)
    columns[f"phi_{k}"] = values
    print(f"k={k}: sup phi_k = {values.max():.4f}, inf = {values.min():.4f}")

path = OUT / "transfer_iterates.csv"
write_csv(path, ["theta"] + list(columns), zip(theta, *columns.values()))
print(f"iterate curves -> {path}")

_, xs, bits = orbit_points(params, 50, return_angle_bits=True)
exact = all(
    transfer_eval(params, k, int(bits[k - 1]), c) == xs[k - 1]
    for k in range(1, 51)
)
print(f"orbit values equal the transfer iterates bitwise for k <= 50: {exact}")
