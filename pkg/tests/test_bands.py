import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import C, at_norm, homogeneous
from kerr_nsgate.bands import (
    CrystalSpec,
    DispersionPoint,
    GapInterval,
    band_edges,
    band_scan,
    band_slope,
    dispersion_residual,
    dispersion_rhs,
    dispersion_rhs_derivative,
    group_velocity,
    layer_wavevectors,
    normalized_frequency,
    solve_k,
    solve_omega,
)
from kerr_nsgate.errors import EdgeDegeneracyError
from kerr_nsgate.physics import Material


# --- oracles -------------------------------------------------------------------


def transfer_matrix_half_trace(omega, crystal):
    """Half trace of the one-period 2x2 transfer matrix acting on (E, dE/dz)."""
    total = np.eye(2)
    for mat, thick in ((crystal.material_a, crystal.l_a), (crystal.material_b, crystal.l_b)):
        kz = omega / C * math.sqrt(mat.eps_rel)
        ph = kz * thick
        t = np.array([[math.cos(ph), math.sin(ph) / kz], [-kz * math.sin(ph), math.cos(ph)]])
        total = t @ total
    return 0.5 * np.trace(total)


def brute_force_omega(kappa, band, crystal, x_max=3.0, n=200_001):
    """band-th crossing of G(x) = cos(kappa) on a dense grid, refined by plain bisection."""
    xs = np.linspace(1e-9, x_max, n)
    f = dispersion_rhs(at_norm(xs, crystal), crystal) - math.cos(kappa)
    idx = np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0]
    lo, hi = xs[idx[band - 1]], xs[idx[band - 1] + 1]
    g = lambda x: float(dispersion_rhs(at_norm(x, crystal), crystal)) - math.cos(kappa)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if np.sign(g(mid)) == np.sign(g(lo)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --- layer wavevectors / G --------------------------------------------------------


def test_layer_wavevectors(gaas_crystal):
    vac = homogeneous(1.0)
    k1, _ = layer_wavevectors(2.23e15, vac)
    assert k1 == pytest.approx(7.43e6, rel=1e-3)
    assert layer_wavevectors(0.0, gaas_crystal) == (0.0, 0.0)
    k1, k2 = layer_wavevectors(1e15, gaas_crystal)
    assert k2 == pytest.approx(math.sqrt(13) * k1, rel=1e-15)


@pytest.mark.parametrize("x", [0.01, 0.2, 0.5, 0.843, 1.3, 2.7])
def test_dispersion_rhs_matches_transfer_matrix(gaas_crystal, x):
    w = at_norm(x, gaas_crystal)
    assert float(dispersion_rhs(w, gaas_crystal)) == pytest.approx(
        transfer_matrix_half_trace(w, gaas_crystal), abs=1e-12
    )


def test_dispersion_rhs_homogeneous_and_origin(gaas_crystal):
    h = homogeneous(2.5)
    for w in (1e14, 3e15, 7.7e15):
        expected = math.cos(h.period * w / C * math.sqrt(2.5))
        assert float(dispersion_rhs(w, h)) == pytest.approx(expected, abs=1e-13)
    assert float(dispersion_rhs(0.0, gaas_crystal)) == 1.0
    assert float(dispersion_rhs(1e3, gaas_crystal)) == pytest.approx(1.0, abs=1e-12)


def test_dispersion_rhs_at_reference_point(gaas_crystal):
    g = float(dispersion_rhs(at_norm(0.843, gaas_crystal), gaas_crystal))
    assert g == pytest.approx(math.cos(0.158), abs=2e-3)


def test_derivative_matches_finite_difference(gaas_crystal):
    for x in (0.1, 0.43, 0.843, 1.2):
        w = at_norm(x, gaas_crystal)
        h = w * 1e-6
        fd = (float(dispersion_rhs(w + h, gaas_crystal)) - float(dispersion_rhs(w - h, gaas_crystal))) / (2 * h)
        assert float(dispersion_rhs_derivative(w, gaas_crystal)) == pytest.approx(fd, rel=1e-7)


# --- solve_k ----------------------------------------------------------------------


def test_solve_k_reference_points(gaas_crystal):
    p = solve_k(2 * math.pi * C / 8.47e-7, gaas_crystal)
    assert isinstance(p, DispersionPoint)
    assert p.band == 4
    assert p.k * gaas_crystal.period == pytest.approx(0.158, rel=5e-2)
    p = solve_k(2 * math.pi * C / 8.5e-7, gaas_crystal)
    assert p.k * gaas_crystal.period == pytest.approx(0.295, rel=3e-2)
    p = solve_k(at_norm(0.843, gaas_crystal), gaas_crystal)
    assert p.band == 4
    assert p.k * gaas_crystal.period == pytest.approx(0.158, rel=5e-2)


def test_solve_k_vacuum_is_folded_light_line():
    vac = homogeneous(1.0)
    L = vac.period
    for x in (0.1, 0.3, 0.7, 1.2, 1.9):
        p = solve_k(at_norm(x, vac), vac)
        kappa = 2 * math.pi * x
        folded = abs((kappa + math.pi) % (2 * math.pi) - math.pi)
        assert p.k * L == pytest.approx(folded, abs=1e-7)
        assert p.band == int(2 * x) + 1


def test_solve_k_reports_gap(gaas_crystal):
    top3 = band_edges(3, gaas_crystal)[1]
    bottom4 = band_edges(4, gaas_crystal)[0]
    mid = 0.5 * (top3 + bottom4)
    gap = solve_k(mid, gaas_crystal)
    assert isinstance(gap, GapInterval)
    assert gap.band_below == 3
    assert gap.lower_edge == pytest.approx(top3, rel=1e-12)
    assert gap.upper_edge == pytest.approx(bottom4, rel=1e-12)
    with pytest.raises(ValueError):
        solve_k(0.0, gaas_crystal)


def test_solve_k_gap_just_above_band_top(gaas_crystal):
    top1 = band_edges(1, gaas_crystal)[1]
    gap = solve_k(top1 * (1 + 1e-6), gaas_crystal)
    assert isinstance(gap, GapInterval) and gap.band_below == 1
    gap = solve_k(band_edges(2, gaas_crystal)[0] * (1 - 1e-6), gaas_crystal)
    assert isinstance(gap, GapInterval) and gap.band_below == 1


# --- solve_omega --------------------------------------------------------------------


def test_solve_omega_trivial_points():
    vac = homogeneous(1.0)
    assert solve_omega(0.0, 1, vac).omega == 0.0
    k = 1.0 / vac.period
    assert solve_omega(k, 1, vac).omega == pytest.approx(C * k, rel=1e-12)


def test_solve_omega_reference_point(gaas_crystal):
    L = gaas_crystal.period
    p = solve_omega(0.158 / L, 4, gaas_crystal)
    assert normalized_frequency(p.omega, gaas_crystal) == pytest.approx(0.843, rel=5e-3)


@pytest.mark.parametrize("band", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("kappa", [0.05, 0.9, 2.0, 3.1])
def test_solve_omega_matches_brute_force(gaas_crystal, band, kappa):
    p = solve_omega(kappa / gaas_crystal.period, band, gaas_crystal)
    x = normalized_frequency(p.omega, gaas_crystal)
    assert x == pytest.approx(brute_force_omega(kappa, band, gaas_crystal), abs=1e-10)
    assert dispersion_residual(p, gaas_crystal) <= 1e-9


def test_solve_omega_rejects_outside_zone(gaas_crystal):
    with pytest.raises(ValueError):
        solve_omega(4.0 / gaas_crystal.period, 1, gaas_crystal)
    with pytest.raises(ValueError):
        solve_omega(0.1, 0, gaas_crystal)


def test_negative_k_folds_by_symmetry(gaas_crystal):
    L = gaas_crystal.period
    assert solve_omega(-1.0 / L, 3, gaas_crystal).omega == solve_omega(1.0 / L, 3, gaas_crystal).omega


# --- edges and gaps -------------------------------------------------------------------


def test_band_edges_gaas_crystal(gaas_crystal):
    assert band_edges(1, gaas_crystal)[0] == 0.0
    lo, hi = band_edges(4, gaas_crystal)
    x_lo, x_hi = normalized_frequency(lo, gaas_crystal), normalized_frequency(hi, gaas_crystal)
    assert x_lo < 0.843 < x_hi
    previous_top = 0.0
    for b in range(1, 7):
        lo, hi = band_edges(b, gaas_crystal)
        assert previous_top <= lo < hi
        previous_top = hi


def test_band_edges_homogeneous_gaps_close():
    h = homogeneous(4.0)
    n = 2.0
    for b in range(1, 6):
        lo, hi = band_edges(b, h)
        assert h.period * lo / C * n == pytest.approx((b - 1) * math.pi, abs=1e-9)
        assert h.period * hi / C * n == pytest.approx(b * math.pi, rel=1e-12)


def test_gap_detection_consistency(gaas_crystal):
    edges = [band_edges(b, gaas_crystal) for b in range(1, 7)]
    xs = np.linspace(1e-4, normalized_frequency(edges[-1][1], gaas_crystal), 4001)
    g = dispersion_rhs(at_norm(xs, gaas_crystal), gaas_crystal)
    for x, gx in zip(xs, g):
        w = at_norm(x, gaas_crystal)
        in_band = any(lo <= w <= hi for lo, hi in edges)
        assert (abs(gx) <= 1) == in_band or min(abs(abs(gx) - 1), 1) < 1e-12


# --- group velocity -----------------------------------------------------------------------


def _fd_velocity(kappa, band, crystal):
    L = crystal.period
    h = 1e-6 * math.pi / L
    k = kappa / L
    up, down = solve_omega(k + h, band, crystal).omega, solve_omega(k - h, band, crystal).omega
    return abs(up - down) / (2 * h)


def test_group_velocity_reference_points(gaas_crystal):
    p = solve_k(at_norm(0.843, gaas_crystal), gaas_crystal)
    assert group_velocity(p, gaas_crystal) / C == pytest.approx(0.0995, rel=5e-2)
    p = solve_k(2 * math.pi * C / 8.5e-7, gaas_crystal)
    assert group_velocity(p, gaas_crystal) / C == pytest.approx(0.171, rel=3e-2)


def test_band_four_descends_with_k(gaas_crystal):
    p = solve_k(at_norm(0.843, gaas_crystal), gaas_crystal)
    assert band_slope(p, gaas_crystal) < 0


@pytest.mark.parametrize("band", [1, 2, 3, 4])
@pytest.mark.parametrize("kappa", [0.158, 0.7, 1.6, 2.9])
def test_group_velocity_matches_finite_difference(gaas_crystal, band, kappa):
    p = solve_omega(kappa / gaas_crystal.period, band, gaas_crystal)
    vg = group_velocity(p, gaas_crystal)
    assert vg == pytest.approx(_fd_velocity(kappa, band, gaas_crystal), rel=1e-4)
    assert 0 < vg <= C


def test_group_velocity_vacuum():
    vac = homogeneous(1.0)
    for band in (1, 2, 3):
        for kappa in (0.3, 1.5, 2.8):
            p = solve_omega(kappa / vac.period, band, vac)
            assert group_velocity(p, vac) == pytest.approx(C, rel=1e-9)


def test_group_velocity_degenerate_edge():
    vac = homogeneous(1.0)
    with pytest.raises(EdgeDegeneracyError):
        group_velocity(solve_omega(0.0, 1, vac), vac)
    with pytest.raises(EdgeDegeneracyError):
        group_velocity(solve_omega(0.0, 2, vac), vac)


def test_group_velocity_vanishes_at_open_band_edge(gaas_crystal):
    p = solve_omega(math.pi / gaas_crystal.period, 1, gaas_crystal)
    assert group_velocity(p, gaas_crystal) <= 1e-6 * C


# --- band scan -------------------------------------------------------------------------


def test_band_scan_structure(gaas_crystal):
    table = band_scan(gaas_crystal, bands=4, samples=200)
    assert len(table.points) == 800
    for b in range(1, 5):
        k, w = table.band(b)
        steps = np.diff(w)
        assert np.all(steps > 0) if b % 2 else np.all(steps < 0)
    for b in range(1, 4):
        assert table.band(b)[1].max() < table.band(b + 1)[1].min()
    for p in table.points:
        assert dispersion_residual(p, gaas_crystal) <= 1e-9
    k4, w4 = table.band(4)
    assert np.interp(0.158, k4, w4) == pytest.approx(0.843, rel=5e-3)


def test_band_scan_minimal_grid(gaas_crystal):
    table = band_scan(gaas_crystal, bands=3, samples=2)
    assert len(table.points) == 6
    with pytest.raises(ValueError):
        band_scan(gaas_crystal, samples=1)


def test_band_scan_homogeneous_is_folded_lines():
    h = homogeneous(2.0)
    table = band_scan(h, bands=4, samples=33)
    n = math.sqrt(2.0)
    for kappa, x, b in table.rows():
        m = b // 2
        expected = (2 * math.pi * m + (kappa if b % 2 else -kappa)) / (2 * math.pi * n)
        assert x == pytest.approx(expected, abs=1e-12)


# --- properties -----------------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(
    eps=st.floats(1.0, 16.0),
    frac=st.floats(0.1, 0.9),
    kappa=st.floats(0.0, math.pi),
    band=st.integers(1, 5),
)
def test_homogeneous_limit_equivalence(eps, frac, kappa, band):
    h = homogeneous(eps, l_a=frac * 1e-6, l_b=(1 - frac) * 1e-6)
    w = solve_omega(kappa / h.period, band, h).omega
    m = band // 2
    k_ext = 2 * math.pi * m / h.period + (kappa if band % 2 else -kappa) / h.period
    expected = C * abs(k_ext) / math.sqrt(eps)
    assert w == pytest.approx(expected, rel=1e-9, abs=1e-9 * C / h.period)


@settings(max_examples=100, deadline=None)
@given(kappa=st.floats(0.05, math.pi - 0.05), band=st.integers(1, 5))
def test_round_trip(kappa, band):
    crystal = CrystalSpec(Material("air", 1.0), Material("mqw", 13.0), 3.57e-7, 3.57e-7)
    p = solve_omega(kappa / crystal.period, band, crystal)
    back = solve_k(p.omega, crystal)
    assert back.band == band
    assert back.k == pytest.approx(p.k, rel=1e-9)


@pytest.mark.parametrize("s", [1e-3, 0.37, 5.0, 2e4])
def test_scale_invariance(gaas_crystal, s):
    scaled = CrystalSpec(gaas_crystal.material_a, gaas_crystal.material_b, s * gaas_crystal.l_a, s * gaas_crystal.l_b)
    for band, kappa in [(1, 0.4), (4, 0.158), (3, 2.0)]:
        p = solve_omega(kappa / gaas_crystal.period, band, gaas_crystal)
        q = solve_omega(kappa / scaled.period, band, scaled)
        assert normalized_frequency(q.omega, scaled) == pytest.approx(normalized_frequency(p.omega, gaas_crystal), rel=1e-12)
        assert group_velocity(q, scaled) == pytest.approx(group_velocity(p, gaas_crystal), rel=1e-12)
        r = solve_k(p.omega / s, scaled)
        assert r.k * scaled.period == pytest.approx(p.k * gaas_crystal.period, rel=1e-12)


def test_crystal_validation():
    with pytest.raises(ValueError):
        CrystalSpec(Material("a", 1.0), Material("b", 2.0), 0.0, 1e-7)
    with pytest.raises(ValueError):
        CrystalSpec(Material("a", 1.0, mu_rel=2.0), Material("b", 2.0), 1e-7, 1e-7)
