"""Scalar and vector coefficients of the spectral kernel for each screen."""

import numpy as np

from c3a.geometry import MomentumPoint
from c3a.rkernel import orthogonality_report, r_components

q = MomentumPoint([-0.66, -0.59, 0.08], [0.5, -0.46, 0.57])
for j in (1, 2, 3):
    rc = r_components(q, 1.0, j)
    rep = orthogonality_report(rc)
    print(f"screen {j}: a = {rc.a:+.4f}  b = {rc.b:+.4f}  a + b - 2 omega = {rc.a + rc.b - 2 * rc.omega:.1e}")
    print(f"  |B0_in| (2 pi)^3 = {abs(rc.B0_in) * (2 * np.pi) ** 3:.15f}")
    print(f"  <B_in, khat> = {rep['dot_in']:+.1e}   <B_out, khat> = {rep['dot_out']:+.4f}")
