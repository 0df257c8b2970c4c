"""Near-screen surrogate versus the product approximant.

On the screen x_1 = 0 the two fields agree to rounding.  Along x_1 = y_1^sigma
inside the overlap band their relative difference decays with y_1.
"""

import numpy as np

from c3a.assembly import forward_clearance, match_scan
from c3a.bbk import BBKContext
from c3a.geometry import MomentumPoint
from c3a.residual import fit_decay

ctx = BBKContext(MomentumPoint([-0.66, -0.59, 0.08], [0.5, -0.46, 0.57]), 1.0)
xhat, yhat = np.array([0.0, 1.0, 0.0]), np.array([0.8, 0.0, -0.6])
print(f"far-pair forward clearance of this direction: {forward_clearance(ctx, 1, yhat):.2f}")
ys = np.geomspace(100, 3200, 11)
screen = match_scan(ctx, 1, None, ys, xhat, yhat)
print(f"on-screen max relative difference: {max(r.relative_diff for r in screen):.1e}")
for sigma in (0.6, 0.7, 0.8):
    rows = match_scan(ctx, 1, sigma, ys, xhat, yhat)
    fit = fit_decay(z=[r.y for r in rows], values=[r.relative_diff for r in rows])
    print(f"sigma = {sigma}: difference {rows[0].relative_diff:.3f} -> {rows[-1].relative_diff:.3f}, "
          f"fitted exponent {fit.gamma:.2f}")
