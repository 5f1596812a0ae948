"""Existence of global meromorphic square roots of ``wp`` and ``zeta4``.

A square root of ``wp`` exists exactly when g3 vanishes (then one midpoint
constant is zero and ``wp`` has a double zero there); a square root of
``zeta4`` exists exactly when g2 vanishes, and is then ``+-wp``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import WitnessVerificationFailed, ZeroSearchFailed
from .lattice import CLASSIFY_THRESHOLD, ClassTag, LatticeSpec, classify, coordinates
from .neville import preferred_primitive, primitive_J_array
from .weierstrass import (
    _ctx,
    distance_to_lattice,
    random_regular_points,
    wp_array,
    wp_double_prime_array,
    wp_prime_array,
    zeta4_array,
)

WITNESS_TOL = 1e-9
WITNESS_POINTS = 10
WITNESS_SEED = 20240101

GRID = 48
SEED_PERCENTILE = 10.0
CLUSTER_RADIUS = 1e-6
DOUBLE_ZERO_DERIV = 1e-6
DOUBLE_SCREEN = 1e-4
DOUBLE_ZERO_VALUE = 1e-10
NEWTON_STEPS = 80


class Target(str, enum.Enum):
    WP = "WP"
    ZETA4 = "ZETA4"


@dataclass(frozen=True)
class ObstructionReport:
    target: Target
    exists: bool
    residual: float
    witness: str | None  # "J1"/"J2"/"J3" for WP, "±℘" for ZETA4

    def to_dict(self) -> dict:
        return {"target": self.target.value, "exists": self.exists,
                "residual": self.residual, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> "ObstructionReport":
        return cls(Target(d["target"]), bool(d["exists"]), float(d["residual"]), d["witness"])


@dataclass(frozen=True)
class ZeroReport:
    locations: tuple[complex, ...]
    orders: tuple[int, ...]
    total_order: int

    def to_dict(self) -> dict:
        return {"locations": [{"re": z.real, "im": z.imag} for z in self.locations],
                "orders": list(self.orders), "total_order": self.total_order}

    @classmethod
    def from_dict(cls, d: dict) -> "ZeroReport":
        locs = tuple(complex(p["re"], p["im"]) for p in d["locations"])
        return cls(locs, tuple(int(o) for o in d["orders"]), int(d["total_order"]))


def _witness_points(ctx) -> np.ndarray:
    return random_regular_points(ctx, WITNESS_POINTS, np.random.default_rng(WITNESS_SEED))


def wp_sqrt_obstruction(l: LatticeSpec, threshold: float = CLASSIFY_THRESHOLD) -> ObstructionReport:
    ctx = _ctx(l)
    cls = classify(ctx.inv, threshold)
    residual = abs(ctx.inv.g3n)
    if cls.tag is not ClassTag.G3_ZERO:
        return ObstructionReport(Target.WP, False, residual, None)
    p = preferred_primitive(ctx, threshold)
    if p is None:
        raise WitnessVerificationFailed("g3 vanishes but no midpoint constant does")
    zs = _witness_points(ctx)
    jp, _ = primitive_J_array(ctx, p, zs)
    w, _ = wp_array(ctx, zs)
    err = np.abs(jp * jp - w) / (1 + np.abs(w))
    if np.max(err) > WITNESS_TOL:
        raise WitnessVerificationFailed(f"J{p}^2 != wp, max residual {np.max(err):.3e}")
    return ObstructionReport(Target.WP, True, residual, f"J{p}")


def zeta4_sqrt_obstruction(l: LatticeSpec, threshold: float = CLASSIFY_THRESHOLD) -> ObstructionReport:
    ctx = _ctx(l)
    cls = classify(ctx.inv, threshold)
    residual = abs(ctx.inv.g2n)
    if cls.tag is not ClassTag.G2_ZERO:
        return ObstructionReport(Target.ZETA4, False, residual, None)
    zs = _witness_points(ctx)
    w, _ = wp_array(ctx, zs)
    z4, _ = zeta4_array(ctx, zs)
    err = np.abs(w * w - z4) / (1 + np.abs(z4))
    if np.max(err) > WITNESS_TOL:
        raise WitnessVerificationFailed(f"wp^2 != zeta4, max residual {np.max(err):.3e}")
    return ObstructionReport(Target.ZETA4, True, residual, "±℘")


# -- zeros of wp --


def _to_cell(ctx, z):
    """Representative in the half-open reduced cell ``{2a w1r + 2b w2r : a, b in [0, 1)}``."""
    a, b = coordinates(ctx.basis.w1r, ctx.basis.w2r, z)
    a, b = a - np.floor(a), b - np.floor(b)
    # snap values that rounded to 1.0 back to 0
    a, b = np.where(a >= 1.0, 0.0, a), np.where(b >= 1.0, 0.0, b)
    return 2 * a * ctx.basis.w1r + 2 * b * ctx.basis.w2r


def _seeds(ctx, grid: int) -> np.ndarray:
    t = (np.arange(grid) + 0.5) / grid
    a, b = np.meshgrid(t, t, indexing="ij")
    z = 2 * a * ctx.basis.w1r + 2 * b * ctx.basis.w2r
    mag = np.abs(wp_array(ctx, z)[0])
    # local minima on the periodic grid
    is_min = np.ones_like(mag, dtype=bool)
    for sa in (-1, 0, 1):
        for sb in (-1, 0, 1):
            if sa or sb:
                is_min &= mag <= np.roll(np.roll(mag, sa, 0), sb, 1)
    is_min &= mag <= np.percentile(mag, SEED_PERCENTILE)
    return z[is_min]


def _newton(ctx, z, f, df, steps: int):
    for _ in range(steps):
        fz, dfz = f(ctx, z)[0], df(ctx, z)[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dfz != 0, fz / dfz, 0)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) < 1e-15 * ctx.scale):
            break
    return z


def _on_midpoint(ctx, z, tol: float) -> np.ndarray:
    return (distance_to_lattice(ctx, 2 * z) < tol * ctx.scale) & (
        distance_to_lattice(ctx, z) > 0.25 * ctx.scale)


def _search(ctx, grid: int):
    z = _newton(ctx, _seeds(ctx, grid), wp_array, wp_prime_array, NEWTON_STEPS)
    # Newton on wp stalls near a double zero at ~sqrt(eps) accuracy, so screen
    # loosely, then refine on wp' (where the double zero is simple) and apply
    # the multiplicity test to the refined point.
    screen = np.abs(wp_prime_array(ctx, z)[0]) * ctx.scale**3 < DOUBLE_SCREEN
    orders = np.ones(z.shape, dtype=int)
    if screen.any():
        zd = _newton(ctx, z[screen], wp_prime_array, wp_double_prime_array, 30)
        dwp = np.abs(wp_prime_array(ctx, zd)[0]) * ctx.scale**3
        wz = np.abs(wp_array(ctx, zd)[0]) * ctx.scale**2
        ok = ((dwp < DOUBLE_ZERO_DERIV) & _on_midpoint(ctx, zd, 1e-8) & (wz < DOUBLE_ZERO_VALUE)
              & (np.abs(zd - z[screen]) < 1e-3 * ctx.scale))
        idx = np.flatnonzero(screen)[ok]
        z[idx] = zd[ok]
        orders[idx] = 2
    wz = np.abs(wp_array(ctx, z)[0]) * ctx.scale**2
    good = np.isfinite(wz) & (wz < 1e-8)
    z, orders = _to_cell(ctx, z[good]), orders[good]

    roots: list[complex] = []
    mult: list[int] = []
    # deterministic regardless of seed order: higher order first, then (Re, Im)
    for zi, oi in sorted(zip(z.tolist(), orders.tolist()), key=lambda t: (-t[1], t[0].real, t[0].imag)):
        if not any(distance_to_lattice(ctx, zi - r) < CLUSTER_RADIUS * ctx.scale for r in roots):
            roots.append(zi)
            mult.append(oi)
    order = sorted(range(len(roots)), key=lambda k: (roots[k].real, roots[k].imag))
    return [roots[k] for k in order], [mult[k] for k in order]


def wp_zeros(l: LatticeSpec) -> ZeroReport:
    """Zeros of wp in one cell, by grid minima, Newton polishing and a multiplicity test."""
    ctx = _ctx(l)
    for grid in (GRID, 2 * GRID):
        roots, mult = _search(ctx, grid)
        if sum(mult) == 2:
            return ZeroReport(tuple(roots), tuple(mult), 2)
    raise ZeroSearchFailed(f"zeros found with total order {sum(mult)} (roots {roots!r})")
