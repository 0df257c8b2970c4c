"""Finite-difference discrepancy of the product-of-distortions approximant.

Walks one generic ray (all pair separations large) from z = 100 to 3200 and
fits |Q| / |Psi| ~ C z^-gamma on the upper envelope.
"""

from c3a.bbk import BBKContext, BBKField
from c3a.geometry import MomentumPoint
from c3a.residual import RaySpec, fit_decay, ray_scan

q = MomentumPoint([-0.66, -0.59, 0.08], [0.5, -0.46, 0.57])
alpha = 1.0
ray = RaySpec([0.6, -0.64, 0.48], [0.0, 0.6, 0.8], 0.8, RaySpec.ladder(100.0, 3200.0, 4), "demo")
samples = ray_scan(BBKField(BBKContext(q, alpha)), ray, q, alpha)
for s in samples[::4]:
    print(f"z = {s.z:7.1f}  |Q|/|Psi| = {s.relQ:.3e}  z |Q|/|Psi| = {s.zrelQ:.3e}")
fit = fit_decay(samples)
print(f"fitted gamma = {fit.gamma:.2f} (Coulomb rate is 1), rms log residual {fit.rms_log_residual:.2f}")
