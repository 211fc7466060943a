"""The regularity jump across the pinching transition.

Sweeps sigma over [1, 2] with the forcing floor eps = (sigma - 1.5)^2 past
1.5: the system is pinched (attractor discontinuous almost everywhere,
regularity 0) up to sigma = 1.5 and non-pinched (Lipschitz forcing,
regularity 1) beyond, so the estimated regularity should jump near 1.5.
Reduced scale here (17 points, J = 16); `wavereg sweep` runs the full table.
"""

import numpy as np

from wavereg.sweep import sweep

rows = sweep(np.linspace(1.0, 2.0, 17), J=16, transient=10**5, p=16, seed=0)

print("sigma     eps        s      pearson  log2C")
for r in rows:
    marker = " <-- transition region" if 1.5 < r.sigma <= 1.57 else ""
    print(
        f"{r.sigma:.4f}  {r.epsilon:8.6f}  {r.s:6.4f}  {r.pearson:.4f} "
        f"{r.log2C:+7.3f}{marker}"
    )

s = np.array([r.s for r in rows])
arg = int(np.argmax(np.diff(s)))
print(
    f"\nlargest single step of s: +{np.diff(s)[arg]:.3f} between "
    f"sigma = {rows[arg].sigma:.4f} and {rows[arg + 1].sigma:.4f}"
)
print(
    "The fit intercept log2C climbs as eps shrinks toward the transition"
    "\n(the coefficient envelope blows up while the family leaves the"
    "\npositive-regularity space), then collapses on the pinched side."
)
