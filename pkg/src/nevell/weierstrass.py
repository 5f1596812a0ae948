"""Weierstrass functions over an arbitrary lattice.

Every evaluation reduces the basis, translates ``z`` into the centered cell
of the reduced basis and sums theta series there. Translation back uses
exact periodicity (``wp``, ``wp_prime``, ``zeta4``) or quasi-periodicity
(``sigma``, ``wzeta``).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .lattice import (
    Invariants,
    LatticeSpec,
    ReducedBasis,
    coordinates,
    half_periods,
    invariants,
    reduce_basis,
)
from .theta import ThetaKernel

POLE_SNAP = 1e-9
REGULAR_DISTANCE = 0.05

# reduced-basis parity class of a half-period -> theta index of its co-sigma
_THETA_OF_PARITY = {(1, 0): 2, (0, 1): 4, (1, 1): 3}


class EvalKind(str, enum.Enum):
    FINITE = "FINITE"
    POLE = "POLE"


@dataclass(frozen=True)
class EvalValue:
    kind: EvalKind
    value: complex | None = None
    pole_order: int | None = None

    @classmethod
    def finite(cls, value: complex) -> "EvalValue":
        return cls(EvalKind.FINITE, complex(value))

    @classmethod
    def pole(cls, order: int) -> "EvalValue":
        return cls(EvalKind.POLE, None, order)

    @property
    def is_pole(self) -> bool:
        return self.kind is EvalKind.POLE

    def __complex__(self) -> complex:
        if self.is_pole:
            raise ValueError(f"no finite value at a pole of order {self.pole_order}")
        return self.value

    def __str__(self) -> str:
        if self.is_pole:
            return f"POLE(order {self.pole_order})"
        return f"{self.value.real:.17g}{self.value.imag:+.17g}i"

    def to_dict(self) -> dict:
        if self.is_pole:
            return {"kind": "POLE", "re": None, "im": None, "pole_order": self.pole_order}
        return {"kind": "FINITE", "re": self.value.real, "im": self.value.imag, "pole_order": None}

    @classmethod
    def from_dict(cls, d: dict) -> "EvalValue":
        if d["kind"] == "POLE":
            return cls.pole(int(d["pole_order"]))
        return cls.finite(complex(d["re"], d["im"]))


@dataclass(frozen=True)
class MidpointSet:
    """Half-periods of the constructor's basis with their constants.

    ``e[p-1] = wp(w[p-1])`` and ``eta[p-1] = wzeta(w[p-1])``. Labels follow
    the basis the lattice was constructed with, not the reduced one.
    """

    w: tuple[complex, complex, complex]
    e: tuple[complex, complex, complex]
    eta: tuple[complex, complex, complex]


@dataclass(frozen=True, eq=False)
class LatticeContext:
    """Per-lattice precomputation shared by every evaluator."""

    spec: LatticeSpec
    basis: ReducedBasis
    kernel: ThetaKernel
    k: complex  # pi / (2 w1r)
    theta1p0: complex
    eta1r: complex
    eta2r: complex
    inv: Invariants
    parity: tuple[tuple[int, int], ...]  # per p = 1, 2, 3
    midpoints: MidpointSet

    @property
    def scale(self) -> float:
        return self.inv.scale

    def reduce(self, z):
        """Split ``z = z0 + 2 m w1r + 2 n w2r`` with ``z0`` in the centered cell."""
        z = np.asarray(z, dtype=complex)
        a, b = coordinates(self.basis.w1r, self.basis.w2r, z)
        m, n = np.rint(a), np.rint(b)
        z0 = z - 2 * m * self.basis.w1r - 2 * n * self.basis.w2r
        return z0, m.astype(np.int64), n.astype(np.int64)

    def lattice_eta(self, m, n):
        """Quasi-period increment of wzeta over ``2 m w1r + 2 n w2r``."""
        return 2 * m * self.eta1r + 2 * n * self.eta2r

    def log_derivs(self, z0, upto: int):
        """``theta1^(j)/theta1`` at ``v = k z0`` for j = 1..upto, plus theta1 itself."""
        th = self.kernel.theta1_derivs(self.k * z0, upto)
        with np.errstate(divide="ignore", invalid="ignore"):
            return th[0], [t / th[0] for t in th[1:]]

    def poles(self, z0):
        return np.abs(z0) <= POLE_SNAP * self.scale


def _safe(z0, poles, fill):
    """Replace pole points by a harmless regular value before evaluating."""
    return np.where(poles, fill, z0)


def _wp0(ctx: LatticeContext, z0):
    _, (l1, l2) = ctx.log_derivs(z0, 2)
    return -ctx.eta1r / ctx.basis.w1r - ctx.k**2 * (l2 - l1 * l1)


def _wp_prime0(ctx: LatticeContext, z0):
    _, (l1, l2, l3) = ctx.log_derivs(z0, 3)
    return ctx.k**3 * (3 * l1 * l2 - 2 * l1**3 - l3)


def _wp_double_prime0(ctx: LatticeContext, z0):
    _, (l1, l2, l3, l4) = ctx.log_derivs(z0, 4)
    return -ctx.k**4 * (l4 - 4 * l1 * l3 - 3 * l2 * l2 + 12 * l1 * l1 * l2 - 6 * l1**4)


def _zeta0(ctx: LatticeContext, z0):
    _, (l1,) = ctx.log_derivs(z0, 1)
    return ctx.eta1r * z0 / ctx.basis.w1r + ctx.k * l1


def _sigma0(ctx: LatticeContext, z0):
    th0 = ctx.kernel.theta1_derivs(ctx.k * z0, 0)[0]
    w1 = ctx.basis.w1r
    return np.exp(ctx.eta1r * z0 * z0 / (2 * w1)) * th0 / (ctx.k * ctx.theta1p0)


@functools.lru_cache(maxsize=256)
def lattice_context(l: LatticeSpec) -> LatticeContext:
    rb = reduce_basis(l)
    kern = ThetaKernel(rb.tau)
    k = np.pi / (2 * rb.w1r)
    t1p = kern.theta1_at_zero(1)
    t1ppp = kern.theta1_at_zero(3)
    eta1r = -(np.pi**2 / (12 * rb.w1r)) * t1ppp / t1p
    inv = invariants(l)
    proto = LatticeContext(l, rb, kern, k, t1p, eta1r, 0j, inv, (), None)
    # w2r sits on the cell boundary; evaluate there without re-reduction
    eta2r = complex(_zeta0(proto, np.asarray(rb.w2r)))

    parity = []
    for w in half_periods(l):
        a, b = coordinates(rb.w1r, rb.w2r, w)
        parity.append((int(round(2 * a)) % 2, int(round(2 * b)) % 2))
    ctx = LatticeContext(l, rb, kern, k, t1p, eta1r, eta2r, inv, tuple(parity), None)

    ws = half_periods(l)
    e = tuple(complex(wp_array(ctx, w)[0]) for w in ws)
    eta = tuple(complex(wzeta_array(ctx, w)[0]) for w in ws)
    object.__setattr__(ctx, "midpoints", MidpointSet(ws, e, eta))
    return ctx


def _ctx(l) -> LatticeContext:
    return l if isinstance(l, LatticeContext) else lattice_context(l)


# -- array evaluators: return (values, pole_mask); values are nan at poles --


def _periodic(fn, l, z):
    ctx = _ctx(l)
    z0, _, _ = ctx.reduce(z)
    poles = ctx.poles(z0)
    vals = fn(ctx, _safe(z0, poles, ctx.basis.w1r))
    return np.where(poles, np.nan, vals), poles


def wp_array(l, z):
    return _periodic(_wp0, l, z)


def wp_prime_array(l, z):
    return _periodic(_wp_prime0, l, z)


def wp_double_prime_array(l, z):
    return _periodic(_wp_double_prime0, l, z)


def zeta4_array(l, z):
    ctx = _ctx(l)
    vals, poles = wp_array(ctx, z)
    return vals * vals - ctx.inv.g2 / 12.0, poles


def wzeta_array(l, z):
    ctx = _ctx(l)
    z0, m, n = ctx.reduce(z)
    poles = ctx.poles(z0)
    vals = _zeta0(ctx, _safe(z0, poles, ctx.basis.w1r)) + ctx.lattice_eta(m, n)
    return np.where(poles, np.nan, vals), poles


def sigma_array(l, z):
    """sigma(z) using sigma(z + L) = (+-) exp(eta(L) (z + L/2)) sigma(z)."""
    ctx = _ctx(l)
    z0, m, n = ctx.reduce(z)
    lam = 2 * m * ctx.basis.w1r + 2 * n * ctx.basis.w2r
    sign = np.where((m + n + m * n) % 2 == 0, 1.0, -1.0)
    return sign * np.exp(ctx.lattice_eta(m, n) * (z0 + lam / 2)) * _sigma0(ctx, z0)


def _scalar(arr_fn, order: int, l, z) -> EvalValue:
    vals, poles = arr_fn(l, z)
    if bool(poles):
        return EvalValue.pole(order)
    return EvalValue.finite(complex(vals))


# -- public scalar API --


def wp(l: LatticeSpec, z: complex) -> EvalValue:
    return _scalar(wp_array, 2, l, z)


def wp_prime(l: LatticeSpec, z: complex) -> EvalValue:
    return _scalar(wp_prime_array, 3, l, z)


def wp_double_prime(l: LatticeSpec, z: complex) -> EvalValue:
    """Second derivative from fourth-order theta derivatives (independent of zeta4)."""
    return _scalar(wp_double_prime_array, 4, l, z)


def zeta4(l: LatticeSpec, z: complex) -> EvalValue:
    """Fourth-order Eisenstein function, computed as ``wp^2 - g2/12``."""
    return _scalar(zeta4_array, 4, l, z)


def wzeta(l: LatticeSpec, z: complex) -> EvalValue:
    return _scalar(wzeta_array, 1, l, z)


def sigma(l: LatticeSpec, z: complex) -> complex:
    return complex(sigma_array(l, z))


def eta_constants(l: LatticeSpec) -> tuple[complex, complex, complex]:
    return _ctx(l).midpoints.eta


def midpoint_constants(l: LatticeSpec) -> MidpointSet:
    return _ctx(l).midpoints


# -- helpers used by tests, the identity suite and the CLI --


def distance_to_lattice(l, z):
    ctx = _ctx(l)
    z0, _, _ = ctx.reduce(z)
    w1, w2 = ctx.basis.w1r, ctx.basis.w2r
    best = np.abs(z0)
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            best = np.minimum(best, np.abs(z0 - 2 * i * w1 - 2 * j * w2))
    return best


def random_regular_points(l, n: int, rng: np.random.Generator,
                          min_distance: float = REGULAR_DISTANCE) -> np.ndarray:
    """``n`` points of the reduced cell at least ``min_distance * scale`` from the lattice."""
    ctx = _ctx(l)
    out = []
    while len(out) < n:
        a, b = rng.random(2 * n).reshape(2, n)
        z = 2 * a * ctx.basis.w1r + 2 * b * ctx.basis.w2r
        keep = distance_to_lattice(ctx, z) >= min_distance * ctx.scale
        out.extend(z[keep].tolist())
    return np.asarray(out[:n], dtype=complex)


def natural_scale(l) -> float:
    return _ctx(l).scale


def rel_residual(a, b, natural: float) -> float:
    """Max of ``|a - b| / max(|b|, natural)``; ``natural`` sets the size floor."""
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), natural)))

