"""
Structural terms of the three-body weak asymptotics on the five-sphere:

    Psi ~ (1/2) (4 pi i / (q z))^(5/2) [ delta(zhat, -qhat) e^{-iqz + i s ln z}
                                          - S_c(qhat, zhat) e^{iqz - i s ln z} ]

with ``s = sum_j eta_j``.  The three-body scattering kernel ``S_c`` is not
computed; callers supply it.  The logarithmic terms are treated as phases and
``i^(5/2)`` is taken on the principal branch ``exp(5 i pi / 4)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, DomainError
from .geometry import CHANNELS

__all__ = ["WeakForm3Terms", "weakform3_terms"]


@dataclass(frozen=True)
class WeakForm3Terms:
    prefactor: complex
    incoming_phase: complex
    outgoing_phase: complex
    eta_sum: float
    qz: float

    def predict(self, incoming_weight, s_c_value):
        """Combine with the test-function value at ``-qhat`` and a supplied ``S_c`` pairing."""
        return self.prefactor * (incoming_weight * self.incoming_phase - s_c_value * self.outgoing_phase)


def weakform3_terms(q, alpha, z):
    """Prefactor and phases at hyperradius ``z``.

    Raises
    ------
    DegenerateGeometryError
        ``|q| = 0`` or some ``k_j = 0``.
    DomainError
        ``z <= 0``.
    """
    if not z > 0:
        raise DomainError("z must be positive")
    qmag = float(np.sqrt(q.energy))
    if qmag == 0.0:
        raise DegenerateGeometryError("|q| vanishes")
    eta_sum = 0.0
    for j in CHANNELS:
        kmag = q.k_mag(j)
        if kmag == 0.0:
            raise DegenerateGeometryError(f"k_{j} vanishes")
        eta_sum += alpha / (2.0 * kmag)
    qz = qmag * z
    pref = 0.5 * (4.0 * np.pi / qz) ** 2.5 * np.exp(1.25j * np.pi)
    phase = qz - eta_sum * np.log(z)
    return WeakForm3Terms(complex(pref), complex(np.exp(-1j * phase)), complex(np.exp(1j * phase)),
                          float(eta_sum), float(qz))
