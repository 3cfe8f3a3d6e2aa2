"""
End-to-end NS-gate design: from material data and pulse to crystal length.

Layer B of the crystal is the Kerr medium.  The Kerr rate is estimated with
the bulk quantization volume S*d of that medium; the crystal then only
changes how fast (group velocity) and how much of the time (energy fraction
in layer B) the photons accumulate the Kerr phase.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import bands, fields, physics
from .bands import CrystalSpec, GapInterval
from .errors import BandGapError, NoNonlinearityError, NsGateError, StageError
from .fields import EnergyFractions
from .physics import ROUNDED, Material, PhysicalConstants, PulseSpec

__all__ = [
    "DesignInput",
    "NsGateDesign",
    "SMALLNESS_WARNING_LEVEL",
    "time_of_flight",
    "homogeneous_length",
    "crystal_length",
    "layer_counts",
    "design_ns_gate",
]

SMALLNESS_WARNING_LEVEL = 1e-2


@dataclass(frozen=True)
class DesignInput:
    """Inputs of the design chain; give exactly one of ``n2`` [m^2/W] or ``chi3`` [m C/V^3]."""

    crystal: CrystalSpec
    pulse: PulseSpec
    n2: Optional[float] = None
    chi3: Optional[float] = None
    constants: PhysicalConstants = ROUNDED

    def __post_init__(self):
        if (self.n2 is None) == (self.chi3 is None):
            raise ValueError("provide exactly one of n2 or chi3")


@dataclass(frozen=True)
class NsGateDesign:
    omega: float
    chi3: float
    d_in_medium: float
    chi: float
    tau_tof: float
    homogeneous_length_l: float
    band: int
    k: float
    v_g: float
    p_a: float
    p_b: float
    crystal_length_l_phc: float
    period_count: int
    layer_count: int
    smallness_ratio: float
    warnings: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["warnings"] = list(self.warnings)
        return out


def time_of_flight(chi: float) -> float:
    """Flight time pi/(2 chi) that gives |chi t| = pi/2."""
    if chi == 0:
        raise NoNonlinearityError("Kerr coupling is zero; no flight time produces a pi/2 phase")
    if chi < 0:
        raise ValueError(f"chi must be > 0, got {chi!r}")
    return math.pi / (2.0 * chi)


def homogeneous_length(tau: float, material: Material, constants: PhysicalConstants = ROUNDED) -> float:
    """Length of bulk ``material`` traversed in time ``tau`` at the phase velocity c/n."""
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    return constants.c * tau / material.refractive_index


def crystal_length(tau: float, v_g: float, fractions: EnergyFractions) -> float:
    """tau * v_g * (P_A + P_B)/P_B: only the time spent in layer B counts."""
    if fractions.p_b == 0:
        raise NoNonlinearityError("photons never occupy the Kerr layer (p_b = 0)")
    if not v_g > 0:
        raise ValueError(f"group velocity must be > 0, got {v_g!r}")
    return tau * (fractions.p_a + fractions.p_b) / fractions.p_b * v_g


def layer_counts(l_phc: float, crystal: CrystalSpec):
    """(periods, layers); periods rounded half-up, two layers per period."""
    if not l_phc > 0:
        raise ValueError(f"crystal length must be > 0, got {l_phc!r}")
    periods = math.floor(l_phc / crystal.period + 0.5)
    return periods, 2 * periods


@contextmanager
def _stage(name):
    try:
        yield
    except BandGapError as exc:
        exc.stage = name
        raise
    except StageError:
        raise
    except (NsGateError, ValueError, ArithmeticError) as exc:
        raise StageError(name, exc) from exc


def design_ns_gate(inp: DesignInput) -> NsGateDesign:
    """Run the full chain and keep every intermediate in the returned record."""
    crystal, pulse, const = inp.crystal, inp.pulse, inp.constants
    kerr_medium = crystal.material_b
    warnings = []

    with _stage("omega_from_lambda"):
        omega = physics.omega_from_lambda(pulse.lambda0, const)
    with _stage("chi3_from_n2"):
        if inp.chi3 is not None:
            chi3 = inp.chi3
        else:
            chi3 = physics.chi3_from_n2(inp.n2, kerr_medium.refractive_index, const)
    with _stage("packet_width_in_medium"):
        d = physics.packet_width_in_medium(pulse.packet_width_d0, kerr_medium, const)
    with _stage("kerr_coupling"):
        chi = physics.kerr_coupling(chi3, omega, kerr_medium, pulse.cross_section_S, d, const)
    with _stage("time_of_flight"):
        tau = time_of_flight(chi)
    with _stage("homogeneous_length"):
        l_hom = homogeneous_length(tau, kerr_medium, const)
    with _stage("solve_k"):
        point = bands.solve_k(omega, crystal, const)
        if isinstance(point, GapInterval):
            raise BandGapError(omega, point.lower_edge, point.upper_edge, point.band_below)
    with _stage("group_velocity"):
        v_g = bands.group_velocity(point, crystal, const)
    with _stage("energy_fractions"):
        fr = fields.point_energy_fractions(point, crystal, const)
    with _stage("crystal_length"):
        l_phc = crystal_length(tau, v_g, fr)
    with _stage("layer_counts"):
        periods, layers = layer_counts(l_phc, crystal)
    with _stage("nonlinearity_smallness"):
        small = physics.nonlinearity_smallness(chi, omega)
    if small >= SMALLNESS_WARNING_LEVEL:
        warnings.append(
            f"nonlinearity ratio (8/9)chi/omega = {small:.3e} >= {SMALLNESS_WARNING_LEVEL:g}; "
            "linear band structure is not a safe approximation"
        )

    return NsGateDesign(
        omega=omega,
        chi3=chi3,
        d_in_medium=d,
        chi=chi,
        tau_tof=tau,
        homogeneous_length_l=l_hom,
        band=point.band,
        k=point.k,
        v_g=v_g,
        p_a=fr.p_a,
        p_b=fr.p_b,
        crystal_length_l_phc=l_phc,
        period_count=periods,
        layer_count=layers,
        smallness_ratio=small,
        warnings=tuple(warnings),
    )
