"""The identity suite behind ``nevell check``.

Each identity is evaluated at seeded random regular points and reduced to a
single max residual. Pointwise residuals are relative with a size floor set
by the lattice scale, so the suite behaves the same under dilation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .lattice import CLASSIFY_THRESHOLD, ClassTag, classify
from .neville import primitive_J_array, sigma_p_array
from .weierstrass import (
    _ctx,
    distance_to_lattice,
    random_regular_points,
    rel_residual,
    sigma_array,
    wp_array,
    wp_double_prime_array,
    wp_prime_array,
    zeta4_array,
)

_SUB = str.maketrans("123", "₁₂₃")


@dataclass(frozen=True)
class IdentityResult:
    name: str
    residual: float | None
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "passed": self.passed, "note": self.note}

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityResult":
        return cls(d["name"], d["residual"], bool(d["passed"]), d.get("note", ""))


def _J(p: int) -> str:
    return f"J{p}".translate(_SUB)


def _symmetry_class(ctx, rot: complex) -> bool:
    """True when multiplication by ``rot`` maps the lattice onto itself."""
    pts = np.array([2 * rot * ctx.spec.w1, 2 * rot * ctx.spec.w2])
    return bool(np.all(distance_to_lattice(ctx, pts) < 1e-12 * ctx.scale))


def _half_period_index(ctx, w: complex) -> int:
    ws = ctx.midpoints.w
    d = [float(distance_to_lattice(ctx, w - u)) for u in ws]
    return int(np.argmin(d)) + 1


def normalization_limit(l, p: int, h1: float = 1e-3, h2: float = 1e-4) -> complex:
    """Extrapolate ``z J_p(z)`` to ``z = 0`` from two radii (error ~ z^2)."""
    ctx = _ctx(l)
    d = ctx.spec.w1 / abs(ctx.spec.w1)
    z1, z2 = h1 * d, h2 * d
    f1 = z1 * complex(primitive_J_array(ctx, p, z1)[0])
    f2 = z2 * complex(primitive_J_array(ctx, p, z2)[0])
    return (f2 * h1**2 - f1 * h2**2) / (h1**2 - h2**2)


def run_identity_suite(l, tol: float = 1e-9, seed: int = 42, npoints: int = 100,
                       threshold: float = CLASSIFY_THRESHOLD) -> list[IdentityResult]:
    ctx = _ctx(l)
    rng = np.random.default_rng(seed)
    zs = random_regular_points(ctx, npoints, rng)
    s = ctx.scale
    inv, mid = ctx.inv, ctx.midpoints
    e1, e2, e3 = mid.e
    emax = max(abs(e) for e in mid.e)
    out: list[IdentityResult] = []

    def add(name, residual, note=""):
        out.append(IdentityResult(name, float(residual), bool(residual <= tol), note))

    add("e₁+e₂+e₃=0", abs(e1 + e2 + e3) / emax)
    add("e₁e₂e₃=g₃/4", abs(e1 * e2 * e3 - inv.g3 / 4) / emax**3)
    add("e₂e₃+e₃e₁+e₁e₂=−g₂/4", abs(e2 * e3 + e3 * e1 + e1 * e2 + inv.g2 / 4) / emax**2)
    eta = mid.eta
    w1, w2 = mid.w[0], mid.w[1]
    add("η₁ω₂−η₂ω₁=iπ/2", abs(eta[0] * w2 - eta[1] * w1 - 0.5j * math.pi))
    add("η₁+η₂+η₃=0", abs(sum(eta)) * s)

    wp, _ = wp_array(ctx, zs)
    wpp, _ = wp_prime_array(ctx, zs)
    add("℘′²=4(℘−e₁)(℘−e₂)(℘−e₃)",
        rel_residual(wpp**2, 4 * (wp - e1) * (wp - e2) * (wp - e3), s**-6))
    lam = 2 * rng.integers(-3, 4, npoints) * w1 + 2 * rng.integers(-3, 4, npoints) * w2
    add("℘(z+λ)=℘(z)", rel_residual(wp_array(ctx, zs + lam)[0], wp, s**-2))
    add("℘(−z)=℘(z)", rel_residual(wp_array(ctx, -zs)[0], wp, s**-2))
    z4, _ = zeta4_array(ctx, zs)
    add("ζ₄=℘″/6", rel_residual(z4, wp_double_prime_array(ctx, zs)[0] / 6, s**-4))
    sig = sigma_array(ctx, zs)
    for p in (1, 2, 3):
        jp, _ = primitive_J_array(ctx, p, zs)
        add(f"{_J(p)}²=℘−e{str(p).translate(_SUB)}", rel_residual(jp * jp, wp - mid.e[p - 1], s**-2))
        add(f"σ{str(p).translate(_SUB)}/σ={_J(p)}", rel_residual(sigma_p_array(ctx, p, zs) / sig, jp, 1 / s))
        add(f"z{_J(p)}(z)→1", abs(normalization_limit(ctx, p) - 1))

    cls = classify(inv, threshold)
    if cls.tag is ClassTag.G3_ZERO:
        p = int(np.argmin([abs(e) for e in mid.e])) + 1
        jp, _ = primitive_J_array(ctx, p, zs)
        add(f"{_J(p)}²=℘ (√℘ exists)", rel_residual(jp * jp, wp, s**-2))
    else:
        out.append(IdentityResult("√℘ exists", None, True, f"not expected (|g₃n|={abs(inv.g3n):.3e})"))
    if cls.tag is ClassTag.G2_ZERO:
        add("ζ₄=℘² (√ζ₄=±℘)", rel_residual(z4, wp * wp, s**-4))
    else:
        out.append(IdentityResult("√ζ₄ exists", None, True, f"not expected (|g₂n|={abs(inv.g2n):.3e})"))

    if _symmetry_class(ctx, 1j):
        add("℘(iz)=−℘(z)", rel_residual(wp_array(ctx, 1j * zs)[0], -wp, s**-2))
        for p in (1, 2, 3):
            q = _half_period_index(ctx, 1j * mid.w[p - 1])
            jq, _ = primitive_J_array(ctx, q, zs)
            jpi, _ = primitive_J_array(ctx, p, 1j * zs)
            name = f"i{_J(p)}(iz)={_J(q)}(z)" if p == q else f"{_J(q)}(z)=i{_J(p)}(iz)"
            add(name, rel_residual(1j * jpi, jq, 1 / s))
    rho = cmath.exp(1j * math.pi / 3)
    if _symmetry_class(ctx, rho):
        add("℘(ρz)=ρ⁻²℘(z)", rel_residual(wp_array(ctx, rho * zs)[0], wp / rho**2, s**-2))
    return out


def format_results(results: list[IdentityResult]) -> str:
    lines = []
    for r in results:
        if r.residual is None:
            lines.append(f"  --   {r.name}: {r.note}")
        else:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(f"  {flag} {r.name}: max residual {r.residual:.3e}")
    return "\n".join(lines)
