"""Hyperfine error budget: donor misplacement and gate-voltage noise.

The placement analysis is for the strip gate.  The displaced-field brackets
(:func:`strip_sensitivity_derivatives`) and the relative-error expression
(:func:`relative_hic_error`) carry the published numeric calibration
coefficients 0.063 (quadratic shift scale) and 0.085 (linear sensitivity
scale) of the c = 2a = 10 nm, D = 100 a geometry; a "recomputed" mode
re-derives both from the electrostatics + hyperfine pipeline for any
geometry so the two can be compared.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import (
    DEFAULT_CONSTANTS,
    DEFAULT_MATERIAL,
    MaterialParams,
    PhysicalConstants,
    effective_delta_E,
    hyperfine_constant_A0,
)
from .electrostatics import GateGeometry, strip_field_coeffs
from .hyperfine import voltage_polynomial

# published calibration coefficients (dimensionless per V^2 and per V)
STRIP_QUAD_COEFF = 0.063
STRIP_LIN_COEFF = 0.085

DEFAULT_LINE_WIDTH = 1e4  # Hz, resonant-pulse strip width


@dataclass(frozen=True)
class PlacementError:
    """Donor offsets from the nominal site (m): dx lateral, dz in depth."""

    dx: float
    dz: float


@dataclass(frozen=True)
class ErrorBudgetReport:
    dA_over_A: float        # relative hyperfine error, dz_term + dx2_term exactly
    dz_term: float          # contribution linear in dz
    dx2_term: float         # contribution quadratic in dx
    nulling_V: float | None  # voltage nulling the dx^2 bracket, if one exists
    admissible_dV: float    # gate-voltage error bound for the line width used
    coefficients: str       # "published" | "recomputed"


@dataclass(frozen=True)
class VoltageErrorBound:
    dV: float               # admissible gate-voltage error, V
    stationary: bool        # True when the quadratic term dominates the bound
    slope: float            # d(dA/A)/dV at the working point
    quadratic: float        # quadratic coefficient of dA/A


@dataclass(frozen=True)
class NullingResult:
    a: float                # strip half-width, m
    c: float                # donor depth, m
    V: float                # voltage at which the dx^2 bracket vanishes
    bracket: float          # residual bracket value at (a, c, V)
    admissible_dz: float    # dz allowed by the target at this configuration


def _require_strip(gate: GateGeometry):
    if gate.kind != "strip":
        raise ValueError("placement-error analysis applies to the strip gate")


def strip_sensitivity_derivatives(
    gate: GateGeometry, err: PlacementError
) -> tuple[float, float, float]:
    """The three bracket factors of the displaced strip field derivatives.

    Multiplying (-E_c, E1_c, -E2_c/2) respectively, each reduces to 1 at
    dx = dz = 0.  Expansion keeps terms linear in dz and quadratic in dx
    (dz ~ dx^2 ordering; dz^2 terms dropped).
    """
    _require_strip(gate)
    a, c = gate.a, gate.c
    dx, dz = err.dx, err.dz
    s = a * a + c * c
    b1 = 1.0 - dz / (c * (1.0 + a * a / (c * c))) - dx * dx * (2 * c * c - a * a) / (2.0 * s * s)
    b2 = (
        1.0
        - dz * (2 * c * c - a * a) / (c * s)
        - dx * dx * (4 * c**4 + a * a * c * c - a**4) / (2.0 * c * c * s * s)
    )
    b3 = (
        1.0
        - dz * (2 * c * c - a * a) / (c * s)
        - dx * dx * (2 * c * c + a * a) / (2.0 * s * s)
    )
    return b1, b2, b3


def _strip_coefficients(
    gate: GateGeometry,
    coefficients: str,
    mat: MaterialParams,
    pc: PhysicalConstants,
) -> tuple[float, float]:
    """(quadratic-shift, linear-sensitivity) scales of the error expression."""
    if coefficients == "published":
        return STRIP_QUAD_COEFF, STRIP_LIN_COEFF
    if coefficients != "recomputed":
        raise ValueError("coefficients must be 'published' or 'recomputed'")
    fc1 = strip_field_coeffs(1.0, gate.a, gate.c, gate.D)
    quad = 9.0 * math.pi * pc.eps0 * mat.a_star**3 * fc1.E_c**2 / mat.Delta_E
    lin = (2**8 / 3**6) * pc.e * fc1.E1_c * mat.a_star**2 / abs(effective_delta_E(mat, pc))
    return quad, lin


def dx2_bracket(
    gate: GateGeometry,
    V: float,
    coefficients: str = "published",
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """The curly bracket multiplying (dx)^2 in the relative-error expression."""
    _require_strip(gate)
    q, l = _strip_coefficients(gate, coefficients, mat, pc)
    a, c = gate.a, gate.c
    s = a * a + c * c
    return q * V * V * (2 * c * c - a * a) / (s * s) - l * V * (2 * c**4 - a**4) / (
        2.0 * c * c * s * s
    )


def dz_coefficient(
    gate: GateGeometry,
    V: float,
    coefficients: str = "published",
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """The factor multiplying dz: q V^2 * 2c/(a^2+c^2)."""
    _require_strip(gate)
    q, _ = _strip_coefficients(gate, coefficients, mat, pc)
    return q * V * V * 2.0 * gate.c / (gate.a**2 + gate.c**2)


def nulling_voltage(
    gate: GateGeometry,
    coefficients: str = "published",
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float | None:
    """Closed-form root of the dx^2 bracket, or None when no positive root exists."""
    _require_strip(gate)
    q, l = _strip_coefficients(gate, coefficients, mat, pc)
    a, c = gate.a, gate.c
    denom = 2.0 * c * c * (2.0 * c * c - a * a)
    if denom == 0.0:
        return None
    v = (l / q) * (2.0 * c**4 - a**4) / denom
    return v if v > 0 else None


def relative_hic_error(
    gate: GateGeometry,
    V: float,
    err: PlacementError,
    coefficients: str = "published",
    line_width: float = DEFAULT_LINE_WIDTH,
    A0_Hz: float | None = None,
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> ErrorBudgetReport:
    """Relative hyperfine error from placement offsets at working voltage V.

    dA/A = dz * {q V^2 2c/(a^2+c^2)}
         + dx^2 * {q V^2 (2c^2-a^2)/(a^2+c^2)^2 - l V (2c^4-a^4)/(2c^2(a^2+c^2)^2)}

    Exactly linear in dz and quadratic in dx.  Warns when |dz| > 0.2 c (the
    truncation drops dz^2 terms, which stop being negligible there).
    """
    _require_strip(gate)
    if V < 0:
        raise ValueError("V must be non-negative")
    if abs(err.dz) > 0.2 * gate.c:
        warnings.warn(
            "dz exceeds 0.2 c: dropped dz^2 terms are no longer negligible",
            stacklevel=2,
        )
    dz_term = err.dz * dz_coefficient(gate, V, coefficients, mat, pc)
    dx2_term = err.dx**2 * dx2_bracket(gate, V, coefficients, mat, pc)
    bound = admissible_voltage_error(gate, V, line_width, A0_Hz, mat, pc)
    return ErrorBudgetReport(
        dA_over_A=dz_term + dx2_term,
        dz_term=dz_term,
        dx2_term=dx2_term,
        nulling_V=nulling_voltage(gate, coefficients, mat, pc),
        admissible_dV=bound.dV,
        coefficients=coefficients,
    )


def dz_for_target(
    gate: GateGeometry,
    V: float,
    target: float,
    coefficients: str = "published",
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """Depth offset dz producing the target relative error (dx = 0)."""
    coeff = dz_coefficient(gate, V, coefficients, mat, pc)
    if coeff == 0.0:
        return math.inf
    return target / coeff


def find_nulling_parameters(
    target: float,
    ranges: dict,
    coefficients: str = "published",
    grid_points: int = 101,
    min_dz: float = 1e-9,
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> list[NullingResult]:
    """Search (a, c, V) space for configurations nulling the dx^2 bracket.

    ``ranges`` maps "a", "c", "V" to (lo, hi) intervals (meters / volts);
    zero-width intervals pin the value.  A bracketing scan over a
    ``grid_points`` grid per axis finds sign changes of the dx^2 bracket in
    V, each refined by bisection to 1e-12 relative.  A configuration
    qualifies when the dz admitted by ``target`` at the nulling voltage is at
    least ``min_dz`` (with target = inf every sign change qualifies).  The
    trivial root V = 0 is skipped.  Results are ordered deterministically by
    (|bracket residual|, a, c, V); no sign change anywhere gives an empty
    list, not an error.
    """
    for key in ("a", "c", "V"):
        if key not in ranges:
            raise ValueError(f"ranges must contain {key!r}")

    d_fixed = ranges.get("D")

    def axis(key):
        lo, hi = ranges[key]
        if hi < lo:
            raise ValueError(f"empty interval for {key!r}")
        if hi == lo:
            return [lo]
        return [lo + (hi - lo) * i / (grid_points - 1) for i in range(grid_points)]

    results: list[NullingResult] = []
    for a in axis("a"):
        for c in axis("c"):
            D = d_fixed if d_fixed is not None else 100.0 * a
            gate = GateGeometry(kind="strip", a=a, c=c, D=D)

            def g(v):
                return dx2_bracket(gate, v, coefficients, mat, pc)

            vgrid = axis("V")
            for v0, v1 in zip(vgrid, vgrid[1:]):
                g0, g1 = g(v0), g(v1)
                if g0 == 0.0 and v0 == 0.0:
                    continue  # trivial root, both error terms vanish there
                if g0 == 0.0:
                    root = v0
                elif g0 * g1 < 0.0:
                    lo, hi, glo = v0, v1, g0
                    while hi - lo > 1e-12 * max(abs(hi), 1.0):
                        mid = 0.5 * (lo + hi)
                        gm = g(mid)
                        if gm == 0.0:
                            lo = hi = mid
                        elif glo * gm < 0.0:
                            hi = mid
                        else:
                            lo, glo = mid, gm
                    root = 0.5 * (lo + hi)
                else:
                    continue
                if root <= 0.0:
                    continue
                adm = dz_for_target(gate, root, target, coefficients, mat, pc)
                if adm >= min_dz:
                    results.append(
                        NullingResult(a=a, c=c, V=root, bracket=g(root), admissible_dz=adm)
                    )

    results.sort(key=lambda r: (abs(r.bracket), r.a, r.c, r.V))
    return results


def admissible_voltage_error(
    gate: GateGeometry,
    V: float,
    line_width: float = DEFAULT_LINE_WIDTH,
    A0_Hz: float | None = None,
    mat: MaterialParams = DEFAULT_MATERIAL,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> VoltageErrorBound:
    """Gate-voltage error keeping the hyperfine detuning below the line width.

    Solves |slope| dV + |quad| dV^2 = line_width / A0 for dV, which reduces
    to line_width / (A0 |slope|) away from stationary points and to the
    quadratic bound sqrt(line_width / (A0 |quad|)) at one (flagged).
    """
    if line_width < 0:
        raise ValueError("line_width must be non-negative")
    if A0_Hz is None:
        A0_Hz = hyperfine_constant_A0(mat, pc)[1]
    lin, quad = voltage_polynomial(gate, mat, pc)
    slope = lin + 2.0 * quad * V
    t = line_width / A0_Hz
    if t == 0.0:
        return VoltageErrorBound(dV=0.0, stationary=False, slope=slope, quadratic=quad)
    if quad == 0.0:
        dv = math.inf if slope == 0.0 else t / abs(slope)
        return VoltageErrorBound(dV=dv, stationary=slope == 0.0, slope=slope, quadratic=quad)
    dv = (-abs(slope) + math.sqrt(slope * slope + 4.0 * abs(quad) * t)) / (2.0 * abs(quad))
    stationary = abs(quad) * dv * dv > abs(slope) * dv
    return VoltageErrorBound(dV=dv, stationary=stationary, slope=slope, quadratic=quad)
