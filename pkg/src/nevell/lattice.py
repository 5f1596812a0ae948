"""Lattices, basis reduction, Eisenstein series and the invariants g2, g3.

A lattice is always described by a pair of *half-periods* ``w1, w2``; the
lattice itself is ``{2 m w1 + 2 n w2 : m, n in Z}``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .errors import DegenerateInvariants, DegenerateLattice, UnsupportedWeight

DEGENERACY_GUARD = 1e-12
CLASSIFY_THRESHOLD = 1e-9
DISC_GUARD = 1e-10
MAX_REDUCTION_STEPS = 10_000
Q_BOUND = math.exp(-math.pi * math.sqrt(3.0) / 2.0)

# 2 * zeta(k) for the two weights served by q-series.
_TWO_ZETA = {4: math.pi**4 / 45.0, 6: 2.0 * math.pi**6 / 945.0}
# E4 = 1 + 240 sum sigma_3(n) q^2n,  E6 = 1 - 504 sum sigma_5(n) q^2n
_EISENSTEIN_COEFF = {4: 240.0, 6: -504.0}
_LAMBERT_TERMS = 24


@dataclass(frozen=True)
class LatticeSpec:
    """Oriented pair of half-periods with ``Im(w2/w1) > 0``.

    Construction re-orients a negatively oriented pair by negating ``w2``;
    the point set is unchanged.
    """

    w1: complex
    w2: complex

    def __post_init__(self):
        w1, w2 = complex(self.w1), complex(self.w2)
        if not (cmath.isfinite(w1) and cmath.isfinite(w2)):
            raise DegenerateLattice(f"non-finite generators {w1!r}, {w2!r}")
        if w1 == 0 or w2 == 0:
            raise DegenerateLattice("generators must be nonzero")
        ratio = (w2 / w1).imag
        if abs(ratio) <= DEGENERACY_GUARD:
            raise DegenerateLattice(f"collinear generators {w1!r}, {w2!r}")
        if ratio < 0:
            w2 = -w2
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w2", w2)

    @property
    def tau(self) -> complex:
        return self.w2 / self.w1

    def scaled(self, c: complex) -> "LatticeSpec":
        """The lattice ``c * Lambda`` with the correspondingly scaled basis."""
        return LatticeSpec(c * self.w1, c * self.w2)

    def point(self, m: int, n: int) -> complex:
        return 2 * m * self.w1 + 2 * n * self.w2


@dataclass(frozen=True)
class ReducedBasis:
    """Half-periods with ratio ``tau`` in the standard fundamental domain.

    ``matrix`` holds integer rows expressing ``(w1r, w2r)`` in terms of the
    originating ``(w1, w2)``; it has determinant 1.
    """

    w1r: complex
    w2r: complex
    tau: complex
    q: complex
    matrix: tuple[tuple[int, int], tuple[int, int]] = field(default=((1, 0), (0, 1)))

    def as_lattice(self) -> LatticeSpec:
        return LatticeSpec(self.w1r, self.w2r)

    @property
    def scale(self) -> float:
        a, b = 2 * self.w1r, 2 * self.w2r
        return min(abs(a), abs(b), abs(a + b), abs(a - b))


class ClassTag(str, enum.Enum):
    G2_ZERO = "G2_ZERO"
    G3_ZERO = "G3_ZERO"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class Invariants:
    g2: complex
    g3: complex
    disc: complex
    scale: float
    g2n: complex
    g3n: complex

    def to_dict(self) -> dict:
        return {
            "g2_re": self.g2.real, "g2_im": self.g2.imag,
            "g3_re": self.g3.real, "g3_im": self.g3.imag,
            "disc_re": self.disc.real, "disc_im": self.disc.imag,
            "scale": self.scale,
            "g2n_re": self.g2n.real, "g2n_im": self.g2n.imag,
            "g3n_re": self.g3n.real, "g3n_im": self.g3n.imag,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Invariants":
        return cls(
            g2=complex(d["g2_re"], d["g2_im"]),
            g3=complex(d["g3_re"], d["g3_im"]),
            disc=complex(d["disc_re"], d["disc_im"]),
            scale=float(d["scale"]),
            g2n=complex(d["g2n_re"], d["g2n_im"]),
            g3n=complex(d["g3n_re"], d["g3n_im"]),
        )


@dataclass(frozen=True)
class LatticeClass:
    tag: ClassTag
    residual: float


GAUSSIAN = LatticeSpec(1.0, 1j)
HEXAGONAL = LatticeSpec(1.0, cmath.exp(1j * math.pi / 3))


def make_lattice(w1: complex, w2: complex) -> LatticeSpec:
    return LatticeSpec(w1, w2)


def reduce_basis(l: LatticeSpec) -> ReducedBasis:
    """Move ``tau`` into the fundamental domain by T-translations and S-inversions."""
    w1, w2 = l.w1, l.w2
    r1, r2 = (1, 0), (0, 1)
    for _ in range(MAX_REDUCTION_STEPS):
        n = round((w2 / w1).real)
        if n:
            w2 = w2 - n * w1
            r2 = (r2[0] - n * r1[0], r2[1] - n * r1[1])
        if abs(w2 / w1) < 1.0 - DEGENERACY_GUARD:
            w1, w2 = w2, -w1
            r1, r2 = r2, (-r1[0], -r1[1])
            continue
        break
    else:  # pragma: no cover - unreachable for nondegenerate input
        raise DegenerateLattice("basis reduction did not terminate")
    tau = w2 / w1
    q = cmath.exp(1j * math.pi * tau)
    return ReducedBasis(w1, w2, tau, q, (r1, r2))


def half_periods(l: LatticeSpec) -> tuple[complex, complex, complex]:
    return l.w1, l.w2, -l.w1 - l.w2


def coordinates(w1: complex, w2: complex, z):
    """Real coordinates ``(a, b)`` with ``z = 2 a w1 + 2 b w2``; works on arrays."""
    t = z / (2 * w1)
    tau = w2 / w1
    b = t.imag / tau.imag
    a = t.real - b * tau.real
    return a, b


def _q_series_eisenstein(rb: ReducedBasis, k: int) -> complex:
    q2 = rb.q * rb.q
    total = 0j
    qn = 1 + 0j
    for n in range(1, _LAMBERT_TERMS + 1):
        qn *= q2
        term = n ** (k - 1) * qn / (1 - qn)
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    ek = 1 + _EISENSTEIN_COEFF[k] * total
    return (2 * rb.w1r) ** (-k) * _TWO_ZETA[k] * ek


def eisenstein_series(l: LatticeSpec, k: int) -> complex:
    """``G_k = sum over nonzero lattice points of lambda^-k``.

    Weights 4 and 6 use the nome expansion on the reduced basis; other even
    weights fall back to the direct-sum oracle at its lower accuracy.
    """
    if k < 4 or k % 2:
        raise UnsupportedWeight(f"weight must be even and >= 4, got {k}")
    if k in _TWO_ZETA:
        return _q_series_eisenstein(reduce_basis(l), k)
    from .oracle import G_direct

    return G_direct(l, k)[0]


def invariants(l: LatticeSpec) -> Invariants:
    rb = reduce_basis(l)
    g2 = 60.0 * _q_series_eisenstein(rb, 4)
    g3 = 140.0 * _q_series_eisenstein(rb, 6)
    disc = g2**3 - 27.0 * g3**2
    scale = rb.scale
    if abs(disc) * scale**12 < DISC_GUARD:
        raise DegenerateInvariants(f"discriminant vanished numerically: {disc!r}")
    return Invariants(g2, g3, disc, scale, g2 * scale**4, g3 * scale**6)


def classify(inv: Invariants, threshold: float = CLASSIFY_THRESHOLD) -> LatticeClass:
    a2, a3 = abs(inv.g2n), abs(inv.g3n)
    if a3 <= threshold:
        return LatticeClass(ClassTag.G3_ZERO, a3)
    if a2 <= threshold:
        return LatticeClass(ClassTag.G2_ZERO, a2)
    return LatticeClass(ClassTag.GENERIC, min(a2, a3))
