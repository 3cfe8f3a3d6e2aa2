"""
Kronig-Penney band structure of a two-layer dielectric stack at normal incidence.

The Bloch condition reduces to

    cos(kL) = G(w),
    G = cos(l_A K_I) cos(l_B K_II) - (K_I^2 + K_II^2)/(2 K_I K_II) sin(l_A K_I) sin(l_B K_II)

with K_j = (w/c) sqrt(eps_j/eps0) and L = l_A + l_B.  Internally everything is
done in the normalized variables x = wL/(2 pi c) and kappa = kL, where G only
depends on the two refractive indices and the filling fraction l_A/L.

Band n (counted from 1 at the lowest frequency) lies between the (n-1)-th and
n-th critical points of G; G is strictly monotone on every allowed band, so a
band's edges and all its (k, w) pairs are found by bracketed root-finding on
that interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import EdgeDegeneracyError, NumericalError
from .physics import ROUNDED, Material, PhysicalConstants

__all__ = [
    "CrystalSpec",
    "DispersionPoint",
    "GapInterval",
    "BandTable",
    "layer_wavevectors",
    "dispersion_rhs",
    "dispersion_rhs_derivative",
    "dispersion_residual",
    "solve_k",
    "solve_omega",
    "band_edges",
    "band_slope",
    "group_velocity",
    "band_scan",
    "normalized_frequency",
    "frequency_from_normalized",
]

SCAN_POINTS_PER_SPAN = 256
_XTOL = 1e-15
_RTOL = 4 * np.finfo(float).eps


@dataclass(frozen=True)
class CrystalSpec:
    """Unit cell: layer A (0 <= z < l_a) followed by layer B (l_a <= z < l_a + l_b)."""

    material_a: Material
    material_b: Material
    l_a: float
    l_b: float

    def __post_init__(self):
        if not (self.l_a > 0 and self.l_b > 0):
            raise ValueError(f"layer thicknesses must be > 0, got l_a={self.l_a!r}, l_b={self.l_b!r}")
        # the printed continuity rows match E and dE/dz, valid for non-magnetic layers only
        for m in (self.material_a, self.material_b):
            if m.mu_rel != 1.0:
                raise ValueError(f"material {m.name!r}: only mu_rel = 1 layers are supported")

    @property
    def period(self) -> float:
        return self.l_a + self.l_b

    @property
    def _key(self):
        return (
            math.sqrt(self.material_a.eps_rel),
            math.sqrt(self.material_b.eps_rel),
            self.l_a / self.period,
        )


@dataclass(frozen=True)
class DispersionPoint:
    """A solution (k, omega) of the dispersion relation on band ``band`` (k in 1/m, omega in rad/s)."""

    k: float
    omega: float
    band: int


@dataclass(frozen=True)
class GapInterval:
    """Returned by :func:`solve_k` when omega falls in a stop band."""

    omega: float
    lower_edge: float
    upper_edge: float
    band_below: int


@dataclass(frozen=True)
class BandTable:
    points: tuple
    k_norm: tuple
    bands: int
    period: float
    c: float

    def band(self, index: int):
        """(kL, wL/2pi c) arrays for one band, in grid order."""
        pts = [p for p in self.points if p.band == index]
        k = np.array([p.k * self.period for p in pts])
        w = np.array([p.omega * self.period / (2 * math.pi * self.c) for p in pts])
        return k, w

    def rows(self):
        for p in self.points:
            yield p.k * self.period, p.omega * self.period / (2 * math.pi * self.c), p.band


# --- normalized kernel ----------------------------------------------------


def _phases(x, na, nb, fa):
    return 2 * math.pi * x * na * fa, 2 * math.pi * x * nb * (1 - fa)


def _g(x, na, nb, fa):
    pa, pb = _phases(x, na, nb, fa)
    mix = (na * na + nb * nb) / (2 * na * nb)
    return np.cos(pa) * np.cos(pb) - mix * np.sin(pa) * np.sin(pb)


def _dg(x, na, nb, fa):
    pa, pb = _phases(x, na, nb, fa)
    da, db = 2 * math.pi * na * fa, 2 * math.pi * nb * (1 - fa)
    mix = (na * na + nb * nb) / (2 * na * nb)
    sa, ca, sb, cb = np.sin(pa), np.cos(pa), np.sin(pb), np.cos(pb)
    return -da * sa * cb - db * ca * sb - mix * (da * ca * sb + db * sa * cb)


def _span(na, nb, fa):
    """Typical band width in x, from the cell-averaged index."""
    return 1.0 / (2.0 * (na * fa + nb * (1 - fa)))


@lru_cache(maxsize=256)
def _extrema(na, nb, fa, count):
    """First ``count`` critical points of G on x >= 0, starting with x = 0."""
    span = _span(na, nb, fa)
    step = span / SCAN_POINTS_PER_SPAN
    found = [0.0]
    x0 = step / 2
    limit = 8 * (count + 2) * span
    chunk = SCAN_POINTS_PER_SPAN * 4
    while len(found) < count:
        if x0 > limit:
            raise NumericalError(
                f"critical-point scan exhausted at x={x0:.4g} with {len(found)} of {count} found "
                f"(n_a={na}, n_b={nb}, f_a={fa})"
            )
        xs = x0 + step * np.arange(chunk + 1)
        ds = _dg(xs, na, nb, fa)
        for i in range(chunk):
            d0, d1 = ds[i], ds[i + 1]
            if d0 == 0.0:
                root = xs[i]
            elif d0 * d1 < 0:
                root = brentq(_dg, xs[i], xs[i + 1], args=(na, nb, fa), xtol=_XTOL, rtol=_RTOL)
            else:
                continue
            if root - found[-1] > 1e-9 * span:
                found.append(float(root))
                if len(found) == count:
                    break
        x0 = xs[-1]
    return tuple(found)


def _extrema_covering(x, na, nb, fa):
    count = int(x / _span(na, nb, fa)) + 3
    while True:
        ext = _extrema(na, nb, fa, count)
        if ext[-1] > x:
            return ext
        count *= 2


def _edge(target, a, b, na, nb, fa):
    fa_ = _g(a, na, nb, fa) - target
    fb_ = _g(b, na, nb, fa) - target
    if fa_ == 0.0:
        return a
    if fb_ == 0.0:
        return b
    if fa_ * fb_ > 0:
        # closed gap: G only touches +-1 at the critical point
        return a if abs(fa_) < abs(fb_) else b
    return brentq(lambda x: _g(x, na, nb, fa) - target, a, b, xtol=_XTOL, rtol=_RTOL)


def _band_edges_norm(band, na, nb, fa):
    if band < 1:
        raise ValueError(f"band index must be >= 1, got {band}")
    ext = _extrema(na, nb, fa, band + 1)
    a, b = ext[band - 1], ext[band]
    s_lo = 1.0 if band % 2 else -1.0
    lo = _edge(s_lo, a, b, na, nb, fa)
    hi = _edge(-s_lo, a, b, na, nb, fa)
    return lo, hi


# --- public SI API ----------------------------------------------------------


def normalized_frequency(omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """wL/(2 pi c)."""
    return omega * crystal.period / (2 * math.pi * constants.c)


def frequency_from_normalized(x, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    return 2 * math.pi * constants.c * x / crystal.period


def layer_wavevectors(omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """(K_I, K_II) in 1/m for layers A and B."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega!r}")
    k0 = omega / constants.c
    return k0 * math.sqrt(crystal.material_a.eps_rel), k0 * math.sqrt(crystal.material_b.eps_rel)


def dispersion_rhs(omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """G(omega); |G| <= 1 inside a pass band.  Accepts arrays."""
    return _g(normalized_frequency(omega, crystal, constants), *crystal._key)


def dispersion_rhs_derivative(omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """dG/domega in s/rad."""
    x = normalized_frequency(omega, crystal, constants)
    return _dg(x, *crystal._key) * crystal.period / (2 * math.pi * constants.c)


def dispersion_residual(point: DispersionPoint, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """|cos(kL) - G(omega)|."""
    return abs(math.cos(point.k * crystal.period) - float(dispersion_rhs(point.omega, crystal, constants)))


def solve_k(omega, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """Bloch wave vector for a given frequency.

    Returns a :class:`DispersionPoint` with k in [0, pi/L], or a
    :class:`GapInterval` when omega is in a stop band.
    """
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega!r}")
    key = crystal._key
    x = normalized_frequency(omega, crystal, constants)
    g = float(_g(x, *key))
    ext = _extrema_covering(x, *key)
    band = sum(1 for e in ext if e <= x)
    if abs(g) <= 1.0:
        return DispersionPoint(math.acos(g) / crystal.period, omega, band)
    lo, _ = _band_edges_norm(band, *key)
    if x < lo:
        below = band - 1
    else:
        below = band
    top = _band_edges_norm(below, *key)[1]
    bottom = _band_edges_norm(below + 1, *key)[0]
    return GapInterval(
        omega,
        frequency_from_normalized(top, crystal, constants),
        frequency_from_normalized(bottom, crystal, constants),
        below,
    )


def solve_omega(k, band: int, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED) -> DispersionPoint:
    """Frequency of ``band`` at Bloch wave vector ``k`` (negative k folded by symmetry)."""
    L = crystal.period
    kappa = abs(k) * L
    if kappa > math.pi * (1 + 1e-12):
        raise ValueError(f"k={k!r} lies outside the first Brillouin zone |k| <= pi/L")
    kappa = min(kappa, math.pi)
    key = crystal._key
    lo, hi = _band_edges_norm(band, *key)
    target = math.cos(kappa)
    f_lo = (1.0 if band % 2 else -1.0) - target
    f_hi = -(1.0 if band % 2 else -1.0) - target
    if f_lo == 0.0:
        x = lo
    elif f_hi == 0.0:
        x = hi
    else:
        f = lambda x: _g(x, *key) - target
        v_lo, v_hi = f(lo), f(hi)
        if v_lo * v_hi > 0:
            # rounding at the edge: the root is the endpoint nearest zero
            if min(abs(v_lo), abs(v_hi)) > 1e-12:
                raise NumericalError(
                    f"no bracket for band {band} at kL={kappa!r}: "
                    f"edges x=[{lo!r}, {hi!r}], residuals [{v_lo!r}, {v_hi!r}]"
                )
            x = lo if abs(v_lo) < abs(v_hi) else hi
        else:
            x = brentq(f, lo, hi, xtol=_XTOL, rtol=_RTOL)
    return DispersionPoint(kappa / L, frequency_from_normalized(x, crystal, constants), band)


def band_edges(band: int, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED):
    """(omega_low, omega_high) of a pass band in rad/s."""
    lo, hi = _band_edges_norm(band, *crystal._key)
    return frequency_from_normalized(lo, crystal, constants), frequency_from_normalized(hi, crystal, constants)


def band_slope(point: DispersionPoint, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED) -> float:
    """Signed d(omega)/dk at ``point`` from implicit differentiation of cos(kL) = G(omega).

    Even-numbered bands fall with k on [0, pi/L], so the slope is negative there.
    """
    key = crystal._key
    x = normalized_frequency(point.omega, crystal, constants)
    kappa = point.k * crystal.period
    s = math.sin(kappa)
    dg = float(_dg(x, *key))
    scale = 2 * math.pi / _span(*key)
    if abs(dg) <= 1e-10 * scale and abs(s) <= 1e-10:
        raise EdgeDegeneracyError(
            f"sin(kL)={s!r} and dG/dx={dg!r} both vanish at kL={kappa!r}, band {point.band}"
        )
    if dg == 0.0:
        raise EdgeDegeneracyError(f"dG/dx vanishes at kL={kappa!r}, band {point.band}")
    return -2 * math.pi * constants.c * s / dg


def group_velocity(point: DispersionPoint, crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED) -> float:
    """Group speed |d(omega)/dk| in m/s of the Bloch mode at ``point``."""
    return abs(band_slope(point, crystal, constants))


def band_scan(crystal: CrystalSpec, constants: PhysicalConstants = ROUNDED, bands: int = 4, samples: int = 200) -> BandTable:
    """Sample ``bands`` bands on a uniform grid kL in [0, pi]."""
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    if bands < 1:
        raise ValueError(f"need at least one band, got {bands}")
    L = crystal.period
    kappas = np.linspace(0.0, math.pi, samples)
    points = []
    for b in range(1, bands + 1):
        for kappa in kappas:
            points.append(solve_omega(kappa / L, b, crystal, constants))
    return BandTable(tuple(points), tuple(float(k) for k in kappas), bands, L, constants.c)
