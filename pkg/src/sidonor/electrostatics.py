"""Gate electrostatics: closed-form electrode potentials and their Taylor
field coefficients at the donor site.

Geometry: the gate lies in the z = 0 plane of the dielectric surface and the
donor sits on the gate axis at depth z = c.  Two electrode shapes:

* disc of radius a at potential V (exact closed-form potential);
* infinite strip of half-width a over a grounded substrate at distance D,
  modelled as a 2-D line charge with image, phi(r) = V ln(2D/r) / ln(2D/a)
  for r >= a.  This is an approximation (no exact reference expression
  exists for the layered geometry); its field coefficients are good to a
  factor ~2 at D >> a and scale as 1/ln(2D/a).

The Taylor expansion about the donor is
    phi ~= phi0 - E_c (z - c) + E1_c/2 (z - c)^2 - E2_c/2 q^2
with q the transverse offset (radial for the disc, across the strip).
``E2_c`` is the tabulated transverse-gradient coefficient used by the
hyperfine shift pipeline; for the disc it is *not* the geometric Taylor
coefficient of the exact potential (Laplace's equation fixes that one to
E1_c/2), see :func:`taylor_check`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class EdgeSingularityError(ValueError):
    """Potential evaluated exactly on the disc edge ring (field singular)."""


@dataclass(frozen=True)
class GateGeometry:
    """Electrode geometry; lengths in meters."""

    kind: str          # "disc" | "strip"
    a: float           # disc radius or strip half-width
    c: float           # donor depth below the surface
    D: float | None = None  # strip only: distance to the grounded substrate

    def __post_init__(self):
        if self.kind not in ("disc", "strip"):
            raise ValueError(f"gate.kind must be 'disc' or 'strip', got {self.kind!r}")
        if self.a <= 0 or self.c <= 0:
            raise ValueError("gate dimensions a and c must be positive")
        if self.kind == "strip":
            if self.D is None:
                raise ValueError("strip gate requires the substrate distance D")
            if self.D <= self.a:
                raise ValueError("strip model assumes D > a")


@dataclass(frozen=True)
class FieldCoefficients:
    """Field, axial gradient and transverse-gradient coefficient at the donor.

    All entries are exactly proportional to the gate voltage.
    """

    geometry: str      # "disc" | "strip"
    E_c: float         # field at the donor, V/m
    E1_c: float        # axial gradient, V/m^2
    E2_c: float        # transverse-gradient coefficient, V/m^2
    phi0: float        # potential at the nominal donor site, V


def disc_potential(rho: float, z: float, V: float, a: float) -> float:
    """Potential of a charged disc (radius a, potential V) at (rho, z).

    Exact closed form; valid everywhere except the edge ring rho = a, z = 0,
    where the field diverges and an :class:`EdgeSingularityError` is raised.
    On the disc itself (rho < a, z = 0) the conductor value V is returned.
    """
    if a <= 0:
        raise ValueError("disc radius must be positive")
    s = rho * rho + z * z - a * a
    w = math.sqrt(s * s + 4.0 * a * a * z * z)
    denom = s + w
    if denom == 0.0:
        if abs(rho) == a:
            raise EdgeSingularityError("potential evaluated on the disc edge ring")
        return V
    return (2.0 * V / math.pi) * math.atan(math.sqrt(2.0 * a * a / denom))


def disc_field_coeffs(V: float, a: float, c: float) -> FieldCoefficients:
    """Tabulated field coefficients of the disc gate at depth c on the axis.

    E_c  = (2V/pi) a / (a^2 + c^2)
    E1_c = (4V/pi) a c / (a^2 + c^2)^2
    E2_c = (4V/pi) sqrt(2) a c^4 / (a^2 + c^2)^(7/2)
    phi0 = (2V/pi) arctan(a/c)
    """
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be positive")
    s = a * a + c * c
    return FieldCoefficients(
        geometry="disc",
        E_c=(2.0 * V / math.pi) * a / s,
        E1_c=(4.0 * V / math.pi) * a * c / s**2,
        E2_c=(4.0 * V / math.pi) * math.sqrt(2.0) * a * c**4 / s**3.5,
        phi0=(2.0 * V / math.pi) * math.atan(a / c),
    )


def strip_potential(x: float, z: float, V: float, a: float, D: float) -> float:
    """Line-charge-with-image model of the strip gate, phi = V ln(2D/r)/ln(2D/a).

    r = sqrt(x^2 + z^2) measured from the strip axis; inside the electrode
    radius (r <= a) the conductor value V is returned.
    """
    if a <= 0 or D <= a:
        raise ValueError("strip model requires 0 < a < D")
    r = math.hypot(x, z)
    if r <= a:
        return V
    return V * math.log(2.0 * D / r) / math.log(2.0 * D / a)


def strip_field_coeffs(V: float, a: float, c: float, D: float) -> FieldCoefficients:
    """Field coefficients of the strip model at depth c below the strip axis.

    With L = ln(2D/a):  E_c = V/(cL),  E1_c = V/(c^2 L),  E2_c = E1_c exactly
    (the model potential is 2-D harmonic), phi0 = V ln(2D/c)/L.
    """
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be positive")
    if D is None or D <= a:
        raise ValueError("strip model requires D > a")
    L = math.log(2.0 * D / a)
    e1 = V / (c * c * L)
    return FieldCoefficients(
        geometry="strip",
        E_c=V / (c * L),
        E1_c=e1,
        E2_c=e1,
        phi0=V * math.log(2.0 * D / c) / L,
    )


def field_coeffs(gate: GateGeometry, V: float) -> FieldCoefficients:
    """Field coefficients for either gate kind."""
    if gate.kind == "disc":
        return disc_field_coeffs(V, gate.a, gate.c)
    return strip_field_coeffs(V, gate.a, gate.c, gate.D)


def taylor_check(
    gate: GateGeometry,
    V: float,
    order: int = 2,
    probe_radius: float | None = None,
    n: int = 9,
) -> float:
    """Maximum |exact - Taylor| over a probe grid of half-width ``probe_radius``
    around the donor site.

    The order-2 expansion uses the geometric transverse curvature, which
    Laplace's equation ties to the axial one (disc: E1_c/2; strip: E1_c); the
    tabulated disc E2_c is a different, calibration-level quantity and would
    break the O(h^3) remainder scaling this check verifies.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    c = gate.c
    h = 0.1 * c if probe_radius is None else probe_radius
    if h < 0 or h > 0.2 * c:
        raise ValueError("probe radius must lie in [0, 0.2 c]")
    fc = field_coeffs(gate, V)
    transverse = fc.E1_c / 2.0 if gate.kind == "disc" else fc.E1_c

    worst = 0.0
    for i in range(n):
        for j in range(n):
            dx = -h + 2.0 * h * i / (n - 1)
            dz = -h + 2.0 * h * j / (n - 1)
            if gate.kind == "disc":
                exact = disc_potential(abs(dx), c + dz, V, gate.a)
            else:
                exact = strip_potential(dx, c + dz, V, gate.a, gate.D)
            approx = fc.phi0 - fc.E_c * dz
            if order >= 2:
                approx += 0.5 * fc.E1_c * dz * dz - 0.5 * transverse * dx * dx
            worst = max(worst, abs(exact - approx))
    return worst
