"""Mixing coupling constants, gain and phase matching for both beam geometries.

Phase-conjugate (backward) mixing has counter-propagating pumps and sec/tan
mode solutions with a gain threshold at |kappa| L = pi/2.  Forward mixing has
a single pump, cosh/sinh solutions and no threshold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .atomvapor import DriveConfig, Susceptibility
from .errors import AboveThresholdError, PhysicsDomainError

THRESHOLD = np.pi / 2


class Geometry(enum.Enum):
    PHASE_CONJUGATE = "pc"
    FORWARD = "forward"


@dataclass(frozen=True)
class GeometryConfig:
    geometry: Geometry
    theta: float = 0.0     # pump-probe angle (rad)
    length: float = 0.03   # m

    def __post_init__(self):
        if self.length <= 0:
            raise PhysicsDomainError("interaction length must be positive")
        if self.theta < 0:
            raise PhysicsDomainError("pump-probe angle must be non-negative")


@dataclass(frozen=True)
class CouplingStrength:
    """Complex coupling constant (rad/m) and its dimensionless |value| * L."""

    value: complex
    magnitude_l: float
    geometry: Geometry

    def __post_init__(self):
        if self.magnitude_l < 0:
            raise PhysicsDomainError("coupling magnitude must be non-negative")

    @property
    def below_threshold(self) -> bool:
        """False only for phase-conjugate couplings at or past pi/2."""
        if self.geometry is Geometry.PHASE_CONJUGATE:
            return self.magnitude_l < THRESHOLD
        return True

    @property
    def phase(self) -> complex:
        """Unit phase value/|value|; 1 for zero coupling."""
        if self.value == 0:
            return 1.0 + 0.0j
        return self.value / abs(self.value)

    @classmethod
    def from_magnitude(cls, geometry: Geometry, magnitude_l: float,
                       phase: complex = 1.0 + 0.0j) -> "CouplingStrength":
        """Coupling with a directly prescribed |value| L (unit length)."""
        if abs(abs(phase) - 1) > 1e-12:
            raise PhysicsDomainError("phase must be a unit complex number")
        return cls(value=magnitude_l * phase, magnitude_l=magnitude_l,
                   geometry=geometry)


def coupling_pc(susc: Susceptibility, drive: DriveConfig) -> CouplingStrength:
    """Backward-geometry coupling kappa = -(k/2) chi_NL."""
    value = -(drive.wavenumber / 2) * susc.chi_nl
    return CouplingStrength(value=value, magnitude_l=abs(value) * drive.length,
                            geometry=Geometry.PHASE_CONJUGATE)


def coupling_ffwm(susc: Susceptibility, drive: DriveConfig,
                  geom: GeometryConfig) -> CouplingStrength:
    """Forward-geometry coupling nu = -(k / 2 cos(theta)) chi_lin I_p/I_sat.

    Evaluated through chi_NL (identical under the weak-pump identity and the
    correct generalization for velocity-averaged susceptibilities), so
    nu cos(theta) = -kappa holds exactly.
    """
    if geom.geometry is not Geometry.FORWARD:
        raise PhysicsDomainError("forward coupling requires the forward geometry")
    if geom.theta >= np.pi / 2:
        raise PhysicsDomainError("pump-probe angle must be below pi/2")
    value = (drive.wavenumber / (2 * np.cos(geom.theta))) * susc.chi_nl
    return CouplingStrength(value=value, magnitude_l=abs(value) * geom.length,
                            geometry=Geometry.FORWARD)


def pump_phase_delta(susc: Susceptibility, drive: DriveConfig) -> complex:
    """Propagation constant delta = (k/2) chi_lin (1 - 3 I_p/I_sat) (rad/m).

    Written through chi_NL so it stays meaningful for averaged
    susceptibilities: delta = (k/2)(chi_lin + 3 chi_NL).
    """
    return (drive.wavenumber / 2) * (susc.chi_lin + 3 * susc.chi_nl)


def phase_match_angle(susc: Susceptibility, drive: DriveConfig) -> float:
    """Forward phase-matching angle alpha ~ sqrt(chi_lin I_p / I_sat) (rad).

    The radicand is complex; the dispersive (real) part of chi_lin sets the
    phase matching, so alpha = sqrt(|Re chi_lin| I_p / I_sat).
    """
    radicand = abs(susc.chi_lin.real) * drive.pump_intensity / susc.i_sat
    if radicand < 0:
        raise PhysicsDomainError("degenerate geometry: negative radicand")
    return float(np.sqrt(radicand))


def phase_mismatch(susc: Susceptibility, drive: DriveConfig) -> complex:
    """Diagnostic residual wavevector mismatch delta_k = delta + k(1 - cos(alpha))."""
    alpha = phase_match_angle(susc, drive)
    # 2 sin^2(alpha/2) avoids the 1 - cos cancellation at mrad angles
    return pump_phase_delta(susc, drive) + 2 * drive.wavenumber * np.sin(alpha / 2) ** 2


def gain(c: CouplingStrength) -> float:
    """Power gain of the seeded probe: sec^2(|kappa|L) or cosh^2(|nu|L)."""
    if c.geometry is Geometry.PHASE_CONJUGATE:
        if c.magnitude_l >= THRESHOLD:
            raise AboveThresholdError(
                f"|kappa|L = {c.magnitude_l:.6g} at or above the pi/2 threshold")
        return float(1 / np.cos(c.magnitude_l) ** 2)
    return float(np.cosh(c.magnitude_l) ** 2)
