"""Discrepancy of the blended global field near a screen.

The blended field uses the near-screen surrogate where x_1 << y_1 and the
product approximant elsewhere.  On the ray closest to the screen its relative
discrepancy decays only like 1/z, the Coulomb rate, so the fitted exponent
stays near 1.
"""

import numpy as np

from c3a.assembly import PartitionSpec, PsiAsField
from c3a.bbk import BBKContext
from c3a.cli import ray_in_channel
from c3a.geometry import MomentumPoint
from c3a.residual import RaySpec, fit_decay, ray_scan

q = MomentumPoint([-0.66, -0.59, 0.08], [0.5, -0.46, 0.57])
field = PsiAsField(BBKContext(q, 1.0), PartitionSpec())
radii = RaySpec.ladder(100.0, 3200.0, 4)
for sin_theta in (0.01, 0.1):
    ray = ray_in_channel(1, [0.0, 1.0, 0.0], [0.8, 0.0, -0.6], float(np.arcsin(sin_theta)), radii, "demo")
    fit = fit_decay(ray_scan(field, ray, q, 1.0))
    print(f"sin(theta) = {sin_theta}: fitted gamma = {fit.gamma:.2f}")
