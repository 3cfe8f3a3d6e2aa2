"""
Physical constants, material records and Kerr-coupling formulas.

All quantities are SI unless a name says otherwise.  The default constant
set uses three-significant-figure values (c = 3.00e8 m/s and so on) so that
hand-calculated design numbers reproduce exactly; ``CODATA`` holds the
precise values for anyone who wants them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "ROUNDED",
    "CODATA",
    "Material",
    "PulseSpec",
    "VACUUM",
    "ESU_PER_SI_CHI3",
    "CM2_PER_W_TO_M2_PER_W",
    "omega_from_lambda",
    "packet_width_in_medium",
    "chi3_from_n2",
    "n2_from_chi3",
    "chi3_si_to_esu",
    "chi3_esu_to_si",
    "kerr_coupling",
    "nonlinearity_smallness",
]

# chi3[esu] = ESU_PER_SI_CHI3 * chi3[m C / V^3]
ESU_PER_SI_CHI3 = 8.1e18
CM2_PER_W_TO_M2_PER_W = 1e-4


@dataclass(frozen=True)
class PhysicalConstants:
    """Universal constants. ``mu0`` is derived as 1/(eps0 c^2)."""

    eps0: float = 8.85e-12
    c: float = 3.00e8
    hbar: float = 1.05e-34

    def __post_init__(self):
        for name in ("eps0", "c", "hbar"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @property
    def mu0(self) -> float:
        return 1.0 / (self.eps0 * self.c**2)


ROUNDED = PhysicalConstants()
CODATA = PhysicalConstants(eps0=8.8541878128e-12, c=299792458.0, hbar=1.054571817e-34)


@dataclass(frozen=True)
class Material:
    """A homogeneous, frequency-independent dielectric.

    ``chi3`` is the scalar third-order susceptibility in m C / V^3 and is
    zero for a linear medium.
    """

    name: str
    eps_rel: float
    mu_rel: float = 1.0
    chi3: float = 0.0

    def __post_init__(self):
        if not self.eps_rel > 0:
            raise ValueError(f"eps_rel must be > 0, got {self.eps_rel!r}")
        if not self.mu_rel > 0:
            raise ValueError(f"mu_rel must be > 0, got {self.mu_rel!r}")
        if not math.isfinite(self.chi3):
            raise ValueError(f"chi3 must be finite, got {self.chi3!r}")

    @property
    def refractive_index(self) -> float:
        return math.sqrt(self.eps_rel * self.mu_rel)


VACUUM = Material("vacuum", 1.0)


@dataclass(frozen=True)
class PulseSpec:
    """Single-photon wave packet: vacuum wavelength, cross section, vacuum length."""

    lambda0: float
    cross_section_S: float
    packet_width_d0: float

    def __post_init__(self):
        for name in ("lambda0", "cross_section_S", "packet_width_d0"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value!r}")


def omega_from_lambda(lambda0: float, constants: PhysicalConstants = ROUNDED) -> float:
    """Angular frequency 2 pi c / lambda0 in rad/s."""
    if not lambda0 > 0:
        raise ValueError(f"wavelength must be > 0, got {lambda0!r}")
    return 2.0 * math.pi * constants.c / lambda0


def packet_width_in_medium(d0: float, material: Material, constants: PhysicalConstants = ROUNDED) -> float:
    """Packet length inside ``material``; it shrinks by the refractive index."""
    if not d0 > 0:
        raise ValueError(f"packet width must be > 0, got {d0!r}")
    return d0 / material.refractive_index


def chi3_from_n2(n2: float, n0: float, constants: PhysicalConstants = ROUNDED) -> float:
    """chi3 [m C/V^3] from the nonlinear refraction coefficient n2 [m^2/W].

    Inverts n2 = chi3 / (n0^2 eps0^2 c).
    """
    if not n0 > 0:
        raise ValueError(f"linear index n0 must be > 0, got {n0!r}")
    return n2 * n0**2 * constants.eps0**2 * constants.c


def n2_from_chi3(chi3: float, n0: float, constants: PhysicalConstants = ROUNDED) -> float:
    if not n0 > 0:
        raise ValueError(f"linear index n0 must be > 0, got {n0!r}")
    return chi3 / (n0**2 * constants.eps0**2 * constants.c)


def chi3_si_to_esu(chi3_si: float) -> float:
    return ESU_PER_SI_CHI3 * chi3_si


def chi3_esu_to_si(chi3_esu: float) -> float:
    return chi3_esu / ESU_PER_SI_CHI3


def kerr_coupling(
    chi3: float,
    omega: float,
    material: Material,
    S: float,
    d: float,
    constants: PhysicalConstants = ROUNDED,
) -> float:
    """Photon-photon Kerr rate chi [1/s] for a packet of volume S*d.

    chi = (9/8) hbar omega^2 chi3 / (eps^2 S d) with eps = eps_rel*eps0; a
    Fock state |n> then picks up the phase exp(i chi n(n-1) t).
    """
    if not (S > 0 and d > 0):
        raise ValueError(f"quantization volume needs S > 0 and d > 0, got S={S!r}, d={d!r}")
    eps = material.eps_rel * constants.eps0
    return 9.0 / 8.0 * constants.hbar * omega**2 * chi3 / (eps**2 * S * d)


def nonlinearity_smallness(chi: float, omega: float) -> float:
    """(8/9) chi/omega, the ratio chi3 E^2 / eps for a two-photon packet."""
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega!r}")
    return 8.0 / 9.0 * chi / omega
