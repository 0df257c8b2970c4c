"""Kummer function Phi(-i eta, 1, i s): series, large-argument form, dispatcher.

Prints the two representations side by side across the switching band and
shows the leading branch taking over far out.
"""

import numpy as np

from c3a.specfun import DEFAULT_REGIME, kummer_phi, kummer_phi_asymptotic, kummer_phi_leading, kummer_phi_series

eta = 0.5
print(f"eta = {eta}; series trusted to s = {DEFAULT_REGIME.series_radius}, "
      f"asymptotic form allowed from s = {DEFAULT_REGIME.asymptotic_threshold}")
for s in np.linspace(DEFAULT_REGIME.asymptotic_threshold, DEFAULT_REGIME.series_radius, 4):
    ser, asy = kummer_phi_series(eta, s), kummer_phi_asymptotic(eta, s)
    print(f"  s = {s:5.2f}  series {ser:.12f}  asymptotic {asy:.12f}  rel diff {abs(ser - asy) / abs(ser):.1e}")

for s in (1e2, 1e3, 1e4):
    full, lead = kummer_phi(eta, s), kummer_phi_leading(eta, s)
    print(f"  s = {s:8.0f}  |Phi - leading| / |Phi| = {abs(full - lead) / abs(full):.2e}")
