"""Daubechies filter bank: what the tabulated coefficients satisfy.

Builds a few filters, prints the defining identities (sum, orthonormality
under even shifts, vanishing moments of the mirror), and shows how the
support grows with the number of vanishing moments.
"""

import math

import numpy as np

from wavereg import daubechies_filter, validate_filter

for p in (1, 2, 4, 10, 20):
    f = daubechies_filter(p)
    validate_filter(f)  # raises if any identity fails
    h, g = f.h, f.g
    n = np.arange(h.size, dtype=np.float64)  # n**k overflows int64 past k=9
    print(f"p = {p:2d}  support {{0..{h.size - 1}}}")
    print(f"   sum h - sqrt2   : {math.fsum(h) - math.sqrt(2):+.2e}")
    print(f"   ||h||^2 - 1     : {math.fsum(h * h) - 1.0:+.2e}")
    print(f"   sum g           : {math.fsum(g):+.2e}")
    worst = max(
        abs(math.fsum((n**k) * g)) / max(1.0, math.fsum(np.abs((n**k) * g)))
        for k in range(p)
    )
    print(f"   moment residual : {worst:.2e} (relative, orders 0..{p - 1})")

print("\ndb2 closed form check: h[0] = (1+sqrt3)/(4 sqrt2)")
table = float(daubechies_filter(2).h[0])
closed = (1 + math.sqrt(3)) / (4 * math.sqrt(2))
print(f"   table      {table!r}")
print(f"   closed frm {closed!r}")
print(
    f"   difference {table - closed:.1e}: the table holds the correctly "
    "rounded exact value;\n   evaluating the closed form in doubles adds "
    "its own rounding."
)
