"""Sampling functions on a rectangular window and writing CSV / PPM output."""

from __future__ import annotations

import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .neville import primitive_J_array
from .weierstrass import (
    _ctx,
    sigma_array,
    wp_array,
    wp_prime_array,
    wzeta_array,
    zeta4_array,
)

MAX_RESOLUTION = 4096
THREADS_ENV = "NEVELL_THREADS"


def _sigma(ctx, z):
    return sigma_array(ctx, z), np.zeros(np.shape(z), dtype=bool)


FUNCTIONS = {
    "wp": wp_array,
    "wpp": wp_prime_array,
    "sigma": _sigma,
    "zeta": wzeta_array,
    "zeta4": zeta4_array,
    "J1": lambda ctx, z: primitive_J_array(ctx, 1, z),
    "J2": lambda ctx, z: primitive_J_array(ctx, 2, z),
    "J3": lambda ctx, z: primitive_J_array(ctx, 3, z),
}


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(np.isfinite(vals)) or self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise ValueError(f"bad window {vals}")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def sample_points(window: Window, n: int) -> np.ndarray:
    """n x n sample points, row-major from the top-left corner (endpoints included)."""
    if not 1 <= n <= MAX_RESOLUTION:
        raise ValueError(f"resolution must be in [1, {MAX_RESOLUTION}], got {n}")
    if n == 1:
        xs = np.array([(window.xmin + window.xmax) / 2])
        ys = np.array([(window.ymin + window.ymax) / 2])
    else:
        xs = np.linspace(window.xmin, window.xmax, n)
        ys = np.linspace(window.ymax, window.ymin, n)
    return xs[None, :] + 1j * ys[:, None]


def sample(l, fn: str, window: Window, n: int):
    """Evaluate ``fn`` on the grid; returns (z, values, poles), each n x n.

    Rows may be evaluated on several threads (capped by NEVELL_THREADS); the
    result is assembled in row order, so output never depends on scheduling.
    """
    ctx = _ctx(l)
    f = FUNCTIONS[fn]
    z = sample_points(window, n)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda row: f(ctx, row), z))
    vals = np.stack([r[0] for r in rows])
    poles = np.stack([r[1] for r in rows])
    return z, vals, poles


def write_csv(z, vals, poles) -> str:
    buf = io.StringIO(newline="")
    buf.write("re,im,val_re,val_im,kind\n")
    for zi, vi, pi in zip(z.ravel().tolist(), vals.ravel().tolist(), poles.ravel().tolist()):
        if pi:
            buf.write(f"{zi.real!r},{zi.imag!r},,,POLE\n")
        else:
            buf.write(f"{zi.real!r},{zi.imag!r},{vi.real!r},{vi.imag!r},FINITE\n")
    return buf.getvalue()


def _hls_to_rgb(h, l, s=1.0):
    # vectorized colorsys.hls_to_rgb with constant saturation
    m2 = np.where(l <= 0.5, l * (1.0 + s), l + s - l * s)
    m1 = 2.0 * l - m2

    def channel(hue):
        hue = hue % 1.0
        return np.select(
            [hue < 1 / 6, hue < 0.5, hue < 2 / 3],
            [m1 + (m2 - m1) * hue * 6.0, m2, m1 + (m2 - m1) * (2 / 3 - hue) * 6.0],
            m1,
        )

    return np.stack([channel(h + 1 / 3), channel(h), channel(h - 1 / 3)], axis=-1)


def domain_color(vals, poles) -> np.ndarray:
    """RGB uint8 image: hue from the argument, lightness ramps 0 -> 1 as |f| goes 0 -> inf."""
    v = np.where(poles | ~np.isfinite(vals), 0, vals)
    hue = (np.angle(v) / (2 * np.pi)) % 1.0
    light = (2 / np.pi) * np.arctan(np.abs(v))
    rgb = _hls_to_rgb(hue, light)
    rgb[poles | ~np.isfinite(vals)] = 1.0
    return np.clip(np.rint(rgb * 255), 0, 255).astype(np.uint8)


def write_ppm(vals, poles) -> bytes:
    img = domain_color(vals, poles)
    h, w = img.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()
