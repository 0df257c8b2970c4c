"""Weak large-radius law of the two-body Coulomb wave.

Integrates psi_c over spheres of growing radius against a smooth test
function and compares with the incoming delta term plus the outgoing
scattering-kernel term.  The relative error falls roughly like 1/(kr).
"""

import numpy as np

from c3a.quad import make_bump, orthonormal_frame
from c3a.twobody import CoulombParams, weak_check_2body

cp = CoulombParams(alpha=1.0, k=[0.0, 0.0, 1.0])
e1, _ = orthonormal_frame(cp.khat)
side = np.cos(1.9) * cp.khat + np.sin(1.9) * e1
testfn = make_bump(-cp.khat, 0.5, name="backward") + make_bump(side, 0.5, 0.7, name="side")

for kr in (100.0, 200.0, 400.0, 800.0):
    wc = weak_check_2body(cp, kr / cp.kmag, testfn)
    print(f"kr = {kr:5.0f}  quadrature {wc.lhs:.6f}  prediction {wc.rhs:.6f}  relerr {wc.relerr:.4f}")
