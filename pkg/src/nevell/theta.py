"""Jacobi theta series in the nome ``q = exp(i pi tau)``.

Internal machinery only. Arguments ``v`` are expected to come from points
already reduced into the centered cell, i.e. ``|Im v| <= pi Im(tau) / 2``,
where a fixed number of terms is ample for ``|q| <= 0.066``.
"""

from __future__ import annotations

import numpy as np

NTERMS = 10


class ThetaKernel:
    def __init__(self, tau: complex, nterms: int = NTERMS):
        n = np.arange(nterms)
        self.odd = (2 * n + 1).astype(float)
        # q^{(n+1/2)^2} computed from tau directly so the q^{1/4} branch is right
        qh = np.exp(1j * np.pi * tau * (n + 0.5) ** 2)
        self.c1 = 2.0 * (-1.0) ** n * qh
        self.c2 = 2.0 * qh
        m = np.arange(1, nterms + 1)
        self.even = (2 * m).astype(float)
        qs = np.exp(1j * np.pi * tau * m.astype(float) ** 2)
        self.c3 = 2.0 * qs
        self.c4 = 2.0 * (-1.0) ** m * qs

    def theta1_derivs(self, v, upto: int = 2):
        """Return ``[theta1, theta1', ..., theta1^(upto)]`` at ``v``."""
        arg = np.asarray(v, dtype=complex)[..., None] * self.odd
        s, c = np.sin(arg), np.cos(arg)
        # d^k/dv^k sin(a v) cycles through sin, cos, -sin, -cos
        cycle = (s, c, -s, -c)
        out = []
        for k in range(upto + 1):
            out.append(np.sum(self.c1 * self.odd**k * cycle[k % 4], axis=-1))
        return out

    def theta1_at_zero(self, k: int) -> complex:
        """Odd derivatives of theta1 at the origin (even ones vanish)."""
        if k % 2 == 0:
            return 0j
        sign = 1.0 if k % 4 == 1 else -1.0
        return complex(sign * np.sum(self.c1 * self.odd**k))

    def theta(self, j: int, v):
        """theta_j(v) for j in {2, 3, 4}."""
        v = np.asarray(v, dtype=complex)
        if j == 2:
            return np.sum(self.c2 * np.cos(v[..., None] * self.odd), axis=-1)
        coeff = self.c3 if j == 3 else self.c4
        return 1.0 + np.sum(coeff * np.cos(v[..., None] * self.even), axis=-1)
