"""Brute-force evaluation of the defining lattice sums.

These evaluators deliberately share nothing with the theta-series fast path
beyond basis reduction (used only to enumerate lattice points). They exist
to pin golden values and to cross-check the fast path.

Truncation is over discs ``|lambda| <= R`` and every nonzero point is paired
with its negative. Pairing is not optional: for the Weierstrass sum the
unpaired terms decay like ``|lambda|^-3`` and a disc truncation then leaves
an ``O(1/R)`` tail, while the paired combination

    (z - l)^-2 + (z + l)^-2 - 2 l^-2 = 2 z^2 (3 l^2 - z^2) / (l^2 (z^2 - l^2)^2)

is ``O(|lambda|^-4)`` and is also free of cancellation. Partial sums at the
plan's radii are Richardson-extrapolated assuming a ``R^-p`` tail; the spread
between the last two extrapolants is returned as a heuristic error estimate,
not a rigorous bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TooCloseToPole, UnsupportedWeight
from .lattice import LatticeSpec, reduce_basis

REGULAR_DISTANCE = 0.05
MAX_RADIUS = 2000.0
_ROW_BLOCK = 64


@dataclass(frozen=True)
class TruncationPlan:
    radii: tuple[float, ...]  # in units of the lattice scale
    extrapolation_order: int = 2

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 3:
            raise ValueError("a truncation plan needs at least 3 radii")
        if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
            raise ValueError("radii must be positive and strictly increasing")
        if radii[-1] > MAX_RADIUS:
            raise ValueError(f"largest radius exceeds {MAX_RADIUS}")
        if self.extrapolation_order < 1:
            raise ValueError("extrapolation_order must be >= 1")
        object.__setattr__(self, "radii", radii)


DEFAULT_PLAN = TruncationPlan((250.0, 500.0, 1000.0, 2000.0), 2)


def _half_lattice_rows(l: LatticeSpec, rmax: float):
    """Yield blocks of lattice points with n > 0, or n == 0 and m > 0, |lambda| <= rmax."""
    rb = reduce_basis(l)
    a, b = 2 * rb.w1r, 2 * rb.w2r
    area = abs((a.conjugate() * b).imag)
    nmax = int(math.floor(rmax * abs(a) / area))
    aa = abs(a) ** 2
    ab = (a.conjugate() * b).real
    bb = abs(b) ** 2
    pts = []
    for n in range(0, nmax + 1):
        # |m a + n b|^2 <= R^2 is a quadratic in m
        disc = (n * ab) ** 2 - aa * (n * n * bb - rmax * rmax)
        if disc < 0:
            continue
        root = math.sqrt(disc)
        lo = math.ceil((-n * ab - root) / aa)
        hi = math.floor((-n * ab + root) / aa)
        if n == 0:
            lo = max(lo, 1)
        if hi < lo:
            continue
        m = np.arange(lo, hi + 1)
        lam = m * a + n * b
        pts.append(lam[np.abs(lam) <= rmax])
        if len(pts) == _ROW_BLOCK:
            yield np.concatenate(pts)
            pts = []
    if pts:
        yield np.concatenate(pts)


def _shell_sums(l: LatticeSpec, radii_abs: np.ndarray, term, zs: np.ndarray) -> np.ndarray:
    """Cumulative sums of ``term(lam, zs)`` over half-lattice points, one row per radius."""
    nshell = len(radii_abs)
    sums = np.zeros((nshell, zs.size), dtype=complex)
    for lam in _half_lattice_rows(l, radii_abs[-1]):
        shell = np.searchsorted(radii_abs, np.abs(lam), side="left")
        vals = term(lam[:, None], zs[None, :])
        for j in range(nshell):
            sel = shell == j
            if sel.any():
                sums[j] += vals[sel].sum(axis=0)
    return np.cumsum(sums, axis=0)


def _extrapolate(partial: np.ndarray, radii: np.ndarray, p: int):
    """Richardson on consecutive radius pairs; returns (value, spread)."""
    w = radii ** p
    ext = (w[1:, None] * partial[1:] - w[:-1, None] * partial[:-1]) / (w[1:, None] - w[:-1, None])
    value = ext[-1]
    spread = np.abs(ext[-1] - ext[-2])
    return value, spread


def _check_regular(l: LatticeSpec, zs: np.ndarray, scale: float, plan_radius: float):
    # nearest lattice point by brute force over a small neighbourhood
    rb = reduce_basis(l)
    a, b = 2 * rb.w1r, 2 * rb.w2r
    t = zs / a
    tau = b / a
    nb = np.rint(t.imag / tau.imag)
    ma = np.rint(t.real - nb * tau.real)
    best = np.full(zs.shape, np.inf)
    for i in (-2, -1, 0, 1, 2):
        for j in (-2, -1, 0, 1, 2):
            best = np.minimum(best, np.abs(zs - (ma + i) * a - (nb + j) * b))
    if np.any(best < REGULAR_DISTANCE * scale):
        raise TooCloseToPole("evaluation point within 0.05*scale of a lattice point")
    if np.any(np.abs(zs) > 0.5 * plan_radius):
        raise ValueError("evaluation point too far out for the truncation plan")


def _scale(l: LatticeSpec) -> float:
    return reduce_basis(l).scale


def _wp_pair(lam, z):
    l2 = lam * lam
    z2 = z * z
    d = z2 - l2
    return 2 * z2 * (3 * l2 - z2) / (l2 * d * d)


def _z4_pair(lam, z):
    return (z - lam) ** -4 + (z + lam) ** -4


def _run(l, zs, plan, term, center):
    scale = _scale(l)
    radii = np.asarray(plan.radii) * scale
    _check_regular(l, zs, scale, radii[0])
    partial = _shell_sums(l, radii, term, zs) + center(zs)[None, :]
    return _extrapolate(partial, radii, plan.extrapolation_order)


def wp_direct_many(l: LatticeSpec, zs, plan: TruncationPlan = DEFAULT_PLAN):
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    return _run(l, zs, plan, _wp_pair, lambda z: z**-2)


def zeta4_direct_many(l: LatticeSpec, zs, plan: TruncationPlan = DEFAULT_PLAN):
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    return _run(l, zs, plan, _z4_pair, lambda z: z**-4)


def wp_direct(l: LatticeSpec, z: complex, plan: TruncationPlan = DEFAULT_PLAN):
    """``z^-2 + sum (z-l)^-2 - l^-2`` by paired disc truncation; returns (value, err_est)."""
    v, e = wp_direct_many(l, [z], plan)
    return complex(v[0]), float(e[0])


def zeta4_direct(l: LatticeSpec, z: complex, plan: TruncationPlan = DEFAULT_PLAN):
    """``sum over all lattice points of (z-l)^-4``; returns (value, err_est)."""
    v, e = zeta4_direct_many(l, [z], plan)
    return complex(v[0]), float(e[0])


def G_direct(l: LatticeSpec, k: int, plan: TruncationPlan = DEFAULT_PLAN):
    """``sum over nonzero lattice points of l^-k``; returns (value, err_est)."""
    if k < 4 or k % 2:
        raise UnsupportedWeight(f"weight must be even and >= 4, got {k}")
    scale = _scale(l)
    radii = np.asarray(plan.radii) * scale
    zs = np.zeros(1, dtype=complex)
    partial = _shell_sums(l, radii, lambda lam, z: 2.0 * lam ** (-k) + 0 * z, zs)
    # tail is O(R^(2-k)) before rotational cancellation
    v, e = _extrapolate(partial, radii, max(k - 2, 1))
    return complex(v[0]), float(e[0])
