"""
Bloch-mode field coefficients and time-averaged layer energies.

In layer A the field is E_I(z) = C_I+ e^{i K_I z} + C_I- e^{-i K_I z} for
0 <= z < l_A.  Layer B uses its own expression E_II evaluated on [-l_B, 0]
(the cell to the left); the physical field at l_A <= z < L is
e^{ikL} E_II(z - L).  The four continuity conditions give M c = 0 with M
exactly as assembled in :func:`boundary_matrix`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .bands import CrystalSpec, DispersionPoint, layer_wavevectors
from .errors import DegenerateCrossingError, NsGateError
from .physics import ROUNDED, PhysicalConstants

__all__ = [
    "BoundaryMatrix",
    "FieldCoefficients",
    "EnergyFractions",
    "boundary_matrix",
    "null_vector",
    "field_at",
    "field_phasors",
    "layer_energies",
    "energy_fractions",
    "point_energy_fractions",
]

DEGENERACY_THRESHOLD = 1e-6


@dataclass(frozen=True)
class BoundaryMatrix:
    matrix: np.ndarray
    omega: float
    k: float

    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


@dataclass(frozen=True)
class FieldCoefficients:
    c_i_plus: complex
    c_i_minus: complex
    c_ii_plus: complex
    c_ii_minus: complex
    normalization: str = "unit-norm, c_i_plus real >= 0"
    residual: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.c_i_plus, self.c_i_minus, self.c_ii_plus, self.c_ii_minus], dtype=complex)

    def scaled(self, factor: complex) -> "FieldCoefficients":
        a = factor * self.as_array()
        return FieldCoefficients(*(complex(v) for v in a), normalization="rescaled", residual=self.residual)


@dataclass(frozen=True)
class EnergyFractions:
    p_a: float
    p_b: float
    energy_a: float = float("nan")
    energy_b: float = float("nan")

    @property
    def ratio_b_over_a(self) -> float:
        return self.p_b / self.p_a


def boundary_matrix(omega, k, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED) -> BoundaryMatrix:
    """Continuity matrix for (C_I+, C_I-, C_II+, C_II-).

    Derivative rows are divided by max(K_I, K_II) so every entry is O(1).
    """
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega!r}")
    k1, k2 = layer_wavevectors(omega, crystal, constants)
    p = cmath.exp(1j * k1 * crystal.l_a)
    q = cmath.exp(1j * k * crystal.period)
    r = cmath.exp(1j * k2 * crystal.l_b)
    s = max(k1, k2)
    a1, a2 = k1 / s, k2 / s
    m = np.array(
        [
            [1, 1, -1, -1],
            [a1, -a1, -a2, a2],
            [p, 1 / p, -q / r, -q * r],
            [a1 * p, -a1 / p, -a2 * q / r, a2 * q * r],
        ],
        dtype=complex,
    )
    return BoundaryMatrix(m, omega, k)


def null_vector(m: BoundaryMatrix) -> FieldCoefficients:
    """Unit-norm right singular vector of the smallest singular value.

    Raises DegenerateCrossingError when the second-smallest singular value is
    also below 1e-6 (two independent Bloch modes, e.g. a closed gap).
    """
    _, sv, vh = np.linalg.svd(m.matrix)
    if sv[-2] < DEGENERACY_THRESHOLD:
        raise DegenerateCrossingError(
            f"two near-null directions (singular values {sv[-2]:.3e}, {sv[-1]:.3e}) "
            f"at omega={m.omega:.6e}, k={m.k:.6e}",
            directions=(vh[-2].conj(), vh[-1].conj()),
        )
    c = vh[-1].conj()
    pivot = next((x for x in c if abs(x) > 1e-12), c[0])
    c = c * (abs(pivot) / pivot)
    residual = float(np.linalg.norm(m.matrix @ c) / np.linalg.norm(c))
    return FieldCoefficients(*(complex(v) for v in c), residual=residual)


def field_at(z, t, coeffs: FieldCoefficients, omega, crystal: CrystalSpec, k=0.0, constants: PhysicalConstants = ROUNDED):
    """Real (E, B) at position(s) z in [0, L] and time t.

    ``k`` is the Bloch wave vector the coefficients were solved at; it sets
    the e^{ikL} factor carried by the layer-B expression.
    """
    e, b = field_phasors(z, coeffs, omega, crystal, k, constants)
    phase = np.exp(-1j * omega * t)
    return np.real(e * phase), np.real(b * phase)


def field_phasors(z, coeffs: FieldCoefficients, omega, crystal: CrystalSpec, k=0.0, constants: PhysicalConstants = ROUNDED):
    """Complex phasors (E(z), B(z)) on z in [0, L], with B = (1/(i w)) dE/dz."""
    z = np.asarray(z, dtype=float)
    k1, k2 = layer_wavevectors(omega, crystal, constants)
    in_a = z < crystal.l_a
    local = np.where(in_a, z, z - crystal.period)
    kz = np.where(in_a, k1, k2)
    cp = np.where(in_a, coeffs.c_i_plus, coeffs.c_ii_plus)
    cm = np.where(in_a, coeffs.c_i_minus, coeffs.c_ii_minus)
    bloch = np.where(in_a, 1.0, cmath.exp(1j * k * crystal.period))
    fwd = cp * np.exp(1j * kz * local)
    bwd = cm * np.exp(-1j * kz * local)
    return bloch * (fwd + bwd), bloch * kz / omega * (fwd - bwd)


def _layer_density(z, cp, cm, kz, eps_rel, omega, c):
    """Time-averaged (eps_rel/c^2) E^2 + B^2 for one layer's expression."""
    fwd, bwd = cp * np.exp(1j * kz * z), cm * np.exp(-1j * kz * z)
    e = fwd + bwd
    b = kz / omega * (fwd - bwd)
    return 0.5 * (eps_rel / c**2 * np.abs(e) ** 2 + np.abs(b) ** 2)


def layer_energies(coeffs: FieldCoefficients, omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED, nodes: int = 64):
    """Time-averaged energy per layer (common S, w/2pi and eps0 factors dropped).

    Uses ``nodes``-point Gauss-Legendre quadrature on each layer.
    """
    k1, k2 = layer_wavevectors(omega, crystal, constants)
    x, w = np.polynomial.legendre.leggauss(nodes)

    def integrate(a, b, cp, cm, kz, eps_rel):
        half = 0.5 * (b - a)
        z = half * x + 0.5 * (a + b)
        return half * float(np.sum(w * _layer_density(z, cp, cm, kz, eps_rel, omega, constants.c)))

    ea = integrate(0.0, crystal.l_a, coeffs.c_i_plus, coeffs.c_i_minus, k1, crystal.material_a.eps_rel)
    eb = integrate(-crystal.l_b, 0.0, coeffs.c_ii_plus, coeffs.c_ii_minus, k2, crystal.material_b.eps_rel)
    return ea, eb


def energy_fractions(coeffs: FieldCoefficients, omega, k, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED, nodes: int = 64) -> EnergyFractions:
    """Share of the cell's time-averaged field energy in layer A and layer B.

    ``k`` is accepted for interface symmetry; the energy does not depend on
    the Bloch phase.
    """
    ea, eb = layer_energies(coeffs, omega, crystal, constants, nodes)
    total = ea + eb
    if not total > 0:
        raise NsGateError("zero total field energy; coefficients are degenerate")
    p_a = ea / total
    return EnergyFractions(p_a, 1.0 - p_a, ea, eb)


def point_energy_fractions(point: DispersionPoint, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED, nodes: int = 64) -> EnergyFractions:
    """Matrix -> null vector -> energy fractions for a solved dispersion point."""
    m = boundary_matrix(point.omega, point.k, crystal, constants)
    return energy_fractions(null_vector(m), point.omega, point.k, crystal, constants, nodes)
