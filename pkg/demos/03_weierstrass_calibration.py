"""Calibrating the regularity estimator on the Weierstrass family.

W_A(t) = sum A^n sin(2 pi 2^n t) has regularity exactly -log2(A), so sweeping
A gives a ground-truth curve to compare against.  This runs a reduced version
of the calibration (J = 16 instead of 22) and prints estimate vs truth; the
full-scale table is produced by `wavereg weierstrass`.
"""

import math

import numpy as np

from wavereg import WeierstrassParams, estimate_regularity, weierstrass_mesh

J = 16
print(f"A        true s   estimated  |error|   pearson   (J={J}, p=10)")
for A in np.linspace(0.56745, 0.86475, 8):
    params = WeierstrassParams(A=float(A), B=2.0)
    mesh = weierstrass_mesh(params, J, sampling="circle")
    est = estimate_regularity(mesh, p_start=10)
    true = -math.log2(A)
    print(
        f"{A:.5f}  {true:.4f}   {est.s:.4f}     {abs(est.s - true):.4f}"
        f"    {est.pearson:.5f}"
    )

print(
    "\nNote: the 'circle' sampling reads the family as 1-periodic.  The"
    "\nliteral restriction of sum A^n sin(2^n x) to x in [0,1) carries a"
    "\njump at the wrap point, whose step-like detail decay (slope 1/2)"
    "\ntakes over more and more of the fine scales as the mesh deepens,"
    "\ndragging the estimate toward zero and bending the fit:"
)
params = WeierstrassParams(A=0.86745, B=2.0)
for depth in (16, 18, 20):
    for sampling in ("circle", "verbatim"):
        est = estimate_regularity(
            weierstrass_mesh(params, depth, sampling=sampling), p_start=10
        )
        print(
            f"  J={depth} {sampling:9s}: s = {est.s:.4f}, "
            f"pearson = {est.pearson:.5f}"
        )
