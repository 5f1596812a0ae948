"""Primitive elliptic functions ``J_p``: square roots of ``wp - e_p`` with ``z J_p(z) -> 1``.

``J_p = sigma_p / sigma`` where ``sigma_p(z) = exp(-eta_p z) sigma(z + w_p) / sigma(w_p)``
is the co-sigma function. The quotient is single valued by construction, so
no branch of a pointwise square root is ever chosen; the sign is fixed by
the unit residue at the origin.
"""

from __future__ import annotations

import numpy as np

from .errors import CharacterInconsistent
from .lattice import CLASSIFY_THRESHOLD, ClassTag, LatticeSpec, classify
from .weierstrass import EvalValue, _THETA_OF_PARITY, _ctx, sigma_array

PRIMITIVE_INDICES = (1, 2, 3)
_PROBES = (0.1234 + 0.0567j, 0.3141 + 0.2718j, 0.4142 + 0.1732j)  # reduced-cell coordinates


def _check_index(p: int) -> int:
    if p not in PRIMITIVE_INDICES:
        raise ValueError(f"primitive index must be 1, 2 or 3, got {p!r}")
    return p


def sigma_p_array(l, p: int, z):
    ctx = _ctx(l)
    mid = ctx.midpoints
    w, eta = mid.w[_check_index(p) - 1], mid.eta[p - 1]
    z = np.asarray(z, dtype=complex)
    return np.exp(-eta * z) * sigma_array(ctx, z + w) / sigma_array(ctx, w)


def sigma_p(l: LatticeSpec, p: int, z: complex) -> complex:
    return complex(sigma_p_array(l, p, z))


def primitive_J_array(l, p: int, z):
    """Vectorized ``J_p``; returns (values, pole_mask) with nan at poles.

    In the reduced basis the co-sigma quotient is a theta quotient,
    ``k theta1'(0) theta_j(v) / (theta_j(0) theta1(v))`` with ``v = k z``.
    Translating by ``2 m w1r + 2 n w2r`` multiplies ``J_p`` by
    ``(-1)^(m b + n a)`` where ``w_p = a w1r + b w2r`` (mod the lattice).
    """
    ctx = _ctx(l)
    a, b = ctx.parity[_check_index(p) - 1]
    j = _THETA_OF_PARITY[(a, b)]
    z0, m, n = ctx.reduce(z)
    poles = ctx.poles(z0)
    zs = np.where(poles, ctx.basis.w1r, z0)
    v = ctx.k * zs
    th1 = ctx.kernel.theta1_derivs(v, 0)[0]
    thj = ctx.kernel.theta(j, v)
    thj0 = complex(ctx.kernel.theta(j, 0.0))
    vals = ctx.k * ctx.theta1p0 * thj / (thj0 * th1)
    sign = np.where((m * b + n * a) % 2 == 0, 1.0, -1.0)
    return np.where(poles, np.nan, sign * vals), poles


def primitive_J(l: LatticeSpec, p: int, z: complex) -> EvalValue:
    vals, poles = primitive_J_array(l, p, z)
    if bool(poles):
        return EvalValue.pole(1)
    return EvalValue.finite(complex(vals))


def period_character(l: LatticeSpec, p: int, q_index: int) -> int:
    """Sign ``s`` with ``J_p(z + 2 w_q) = s J_p(z)``, measured at three probe points."""
    ctx = _ctx(l)
    if q_index not in (1, 2):
        raise ValueError(f"q_index must be 1 or 2, got {q_index!r}")
    shift = 2 * ctx.midpoints.w[q_index - 1]
    probes = np.array([2 * c.real * ctx.basis.w1r + 2 * c.imag * ctx.basis.w2r for c in _PROBES])
    base, _ = primitive_J_array(ctx, p, probes)
    moved, _ = primitive_J_array(ctx, p, probes + shift)
    ratios = moved / base
    signs = np.where(ratios.real > 0, 1, -1)
    if len(set(signs.tolist())) != 1 or np.max(np.abs(ratios - signs)) > 1e-6:
        raise CharacterInconsistent(f"probe ratios {ratios!r} for p={p}, q={q_index}")
    return int(signs[0])


def preferred_primitive(l: LatticeSpec, threshold: float = CLASSIFY_THRESHOLD) -> int | None:
    """The index whose midpoint constant vanishes, when g3 does; otherwise None."""
    ctx = _ctx(l)
    if classify(ctx.inv, threshold).tag is not ClassTag.G3_ZERO:
        return None
    e = np.abs(np.asarray(ctx.midpoints.e))
    p = int(np.argmin(e)) + 1
    if e[p - 1] * ctx.scale**2 > threshold:
        return None
    return p
