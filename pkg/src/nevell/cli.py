"""Command-line front end.

Exit codes: 0 success, 1 identity failure, 2 usage or parse error,
3 degenerate lattice.
"""

from __future__ import annotations

import json
import re
import sys

import click

from .checks import format_results, run_identity_suite
from .errors import DegenerateInvariants, DegenerateLattice
from .export import FUNCTIONS, Window, sample, write_csv, write_ppm
from .lattice import CLASSIFY_THRESHOLD, GAUSSIAN, HEXAGONAL, LatticeSpec, classify, invariants
from .neville import primitive_J
from .obstruction import wp_sqrt_obstruction, wp_zeros, zeta4_sqrt_obstruction
from .weierstrass import EvalValue, sigma, wp, wp_prime, wzeta, zeta4

EXIT_IDENTITY = 1
EXIT_DEGENERATE = 3

PRESETS = {"gaussian": GAUSSIAN, "hexagonal": HEXAGONAL}

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*([+-]?{_NUM})([+-]{_NUM})i\s*$")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` / ``a-bi``; the sign before the imaginary part is mandatory."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise ValueError(f"expected a complex number like 1.5-0.25i, got {text!r}")
    return complex(float(m.group(1)), float(m.group(2)))


class ComplexType(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class LatticeType(click.ParamType):
    """A preset name or ``a+bi,c+di``; converts to a pair of half-periods."""

    name = "lattice"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        key = value.strip().lower()
        if key in PRESETS:
            spec = PRESETS[key]
            return (spec.w1, spec.w2)
        parts = value.split(",")
        if len(parts) != 2:
            self.fail(f"expected a preset ({', '.join(PRESETS)}) or 'a+bi,c+di', got {value!r}",
                      param, ctx)
        try:
            return tuple(parse_complex(p) for p in parts)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class WindowType(click.ParamType):
    name = "window"

    def convert(self, value, param, ctx):
        if isinstance(value, Window):
            return value
        try:
            vals = [float(v) for v in value.split(",")]
            if len(vals) != 4:
                raise ValueError("need xmin,xmax,ymin,ymax")
            return Window(*vals)
        except ValueError as exc:
            self.fail(f"bad window {value!r}: {exc}", param, ctx)


def _lattice(pair) -> LatticeSpec:
    try:
        spec = LatticeSpec(*pair)
        invariants(spec)
    except (DegenerateLattice, DegenerateInvariants) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DEGENERATE)
    return spec


def _emit(obj) -> None:
    click.echo(json.dumps(obj, ensure_ascii=False))


lattice_option = click.option("--lattice", "lattice_pair", type=LatticeType(), default="gaussian",
                              show_default=True, help="preset (gaussian, hexagonal) or 'a+bi,c+di'")
json_option = click.option("--json", "as_json", is_flag=True, help="machine-readable output")


@click.group()
def main():
    """Weierstrass functions, primitive square roots and their obstructions."""


@main.command("invariants")
@lattice_option
@json_option
@click.option("--tol", type=float, default=CLASSIFY_THRESHOLD, show_default=True,
              help="classification threshold on normalized invariants")
def cmd_invariants(lattice_pair, as_json, tol):
    spec = _lattice(lattice_pair)
    inv = invariants(spec)
    cls = classify(inv, tol)
    if as_json:
        d = inv.to_dict()
        d.update({"class": cls.tag.value, "residual": cls.residual})
        _emit(d)
        return
    click.echo(f"g2    = {inv.g2!r}")
    click.echo(f"g3    = {inv.g3!r}")
    click.echo(f"disc  = {inv.disc!r}")
    click.echo(f"scale = {inv.scale!r}")
    click.echo(f"|g2n| = {abs(inv.g2n):.6e}   |g3n| = {abs(inv.g3n):.6e}")
    click.echo(f"class = {cls.tag.value} (residual {cls.residual:.3e})")


def _evaluate(spec: LatticeSpec, fn: str, z: complex) -> EvalValue:
    if fn == "sigma":
        return EvalValue.finite(sigma(spec, z))
    if fn.startswith("J"):
        return primitive_J(spec, int(fn[1]), z)
    return {"wp": wp, "wpp": wp_prime, "zeta": wzeta, "zeta4": zeta4}[fn](spec, z)


@main.command("eval")
@lattice_option
@json_option
@click.option("--fn", type=click.Choice(list(FUNCTIONS)), required=True)
@click.option("--z", "z", type=ComplexType(), required=True, help="point, e.g. -1-1i")
def cmd_eval(lattice_pair, as_json, fn, z):
    spec = _lattice(lattice_pair)
    val = _evaluate(spec, fn, z)
    if as_json:
        _emit(val.to_dict())
    else:
        click.echo(str(val))


@main.command("check")
@lattice_option
@json_option
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def cmd_check(lattice_pair, as_json, tol, seed):
    spec = _lattice(lattice_pair)
    results = run_identity_suite(spec, tol=tol, seed=seed)
    ok = all(r.passed for r in results)
    if as_json:
        _emit({"passed": ok, "tol": tol, "seed": seed, "identities": [r.to_dict() for r in results]})
    else:
        click.echo(f"identity suite (tol {tol:g}, seed {seed}):")
        click.echo(format_results(results))
        click.echo("ALL PASS" if ok else "FAILURES")
    if not ok:
        sys.exit(EXIT_IDENTITY)


@main.command("obstruction")
@lattice_option
@json_option
@click.option("--tol", type=float, default=CLASSIFY_THRESHOLD, show_default=True)
def cmd_obstruction(lattice_pair, as_json, tol):
    spec = _lattice(lattice_pair)
    reports = [wp_sqrt_obstruction(spec, tol), zeta4_sqrt_obstruction(spec, tol)]
    if as_json:
        _emit([r.to_dict() for r in reports])
        return
    for r in reports:
        state = f"exists, witness {r.witness}" if r.exists else "does not exist"
        click.echo(f"{r.target.value}: square root {state} (residual {r.residual:.3e})")


@main.command("zeros")
@lattice_option
@json_option
def cmd_zeros(lattice_pair, as_json):
    spec = _lattice(lattice_pair)
    rep = wp_zeros(spec)
    if as_json:
        _emit(rep.to_dict())
        return
    click.echo(f"{len(rep.locations)} zero(s) of ℘ per cell, total order {rep.total_order}")
    for z, k in zip(rep.locations, rep.orders):
        click.echo(f"  z = {z.real:.15g}{z.imag:+.15g}i   order {k}")


@main.command("grid")
@lattice_option
@click.option("--fn", type=click.Choice(list(FUNCTIONS)), default="wp", show_default=True)
@click.option("--window", type=WindowType(), default="-2,2,-2,2", show_default=True,
              help="xmin,xmax,ymin,ymax")
@click.option("--n", "n", type=click.IntRange(1, 4096), default=256, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "ppm"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, allow_dash=True), default="-")
def cmd_grid(lattice_pair, fn, window, n, fmt, out):
    spec = _lattice(lattice_pair)
    z, vals, poles = sample(spec, fn, window, n)
    data = write_csv(z, vals, poles).encode("utf-8") if fmt == "csv" else write_ppm(vals, poles)
    if out == "-":
        stream = click.get_binary_stream("stdout")
        stream.write(data)
        stream.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)

