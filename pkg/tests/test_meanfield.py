import numpy as np
import pytest

from logcrystal import (
    PhasePoint,
    classical_energy,
    landscape_grid,
    locus_reach,
    minimum_locus,
)
from logcrystal.errors import DomainError


def test_classical_energy_examples():
    for gamma in (0.1, 0.75, 2.0):
        assert classical_energy(gamma, PhasePoint(0.0, 0.0)) == pytest.approx(
            -1 + gamma, abs=1e-15)
        for q in (-2.0, 0.3, 3.0):
            assert classical_energy(gamma, PhasePoint(q, 0.5)) == pytest.approx(0.0, abs=1e-15)
            assert classical_energy(gamma, PhasePoint(q, -0.5)) == pytest.approx(0.0, abs=1e-15)
    # cos Q = 1/(2 gamma) at gamma = 3/4 gives the degenerate floor -1/3
    q_star = np.arccos(2.0 / 3.0)
    assert classical_energy(0.75, PhasePoint(q_star, 0.0)) == pytest.approx(
        -1.0 / 3.0, abs=1e-14)
    assert q_star == pytest.approx(0.8411, abs=1e-4)


def test_classical_energy_domain():
    with pytest.raises(DomainError):
        classical_energy(0.75, 0.0, 0.6)
    with pytest.raises(DomainError):
        PhasePoint(0.0, 0.7)


def test_classical_energy_symmetries():
    rng = np.random.default_rng(2)
    for _ in range(30):
        gamma = float(rng.uniform(0.05, 2.0))
        q = float(rng.uniform(-np.pi, np.pi))
        p = float(rng.uniform(-0.5, 0.5))
        e = classical_energy(gamma, q, p)
        assert classical_energy(gamma, -q, p) == e
        assert classical_energy(gamma, q, -p) == e


def test_minimum_locus_single_minimum_below_half():
    pts = minimum_locus(0.25, 64)
    assert len(pts) == 1
    assert (pts[0].q, pts[0].p) == (0.0, 0.0)
    assert locus_reach(0.25) == 0.0


def test_minimum_locus_degenerate_curve():
    gamma = 0.75
    pts = minimum_locus(gamma, 402)  # odd half-count puts P = 0 on the sweep
    assert len(pts) >= 402
    floor = -1.0 / (4.0 * gamma)
    for pt in pts:
        assert classical_energy(gamma, pt) == pytest.approx(floor, abs=1e-10)
    # P = 0 branch crosses at Q = +-arccos(1/(2 gamma))
    qs = np.array([pt.q for pt in pts])
    ps = np.array([pt.p for pt in pts])
    at_zero = np.abs(ps) < 1e-9
    assert np.allclose(np.sort(np.unique(np.round(qs[at_zero], 10))),
                       [-np.arccos(2 / 3), np.arccos(2 / 3)])
    assert np.abs(ps).max() == pytest.approx(locus_reach(gamma), abs=1e-12)
    assert locus_reach(gamma) == pytest.approx(np.sqrt(5) / 6.0, abs=1e-14)


def test_landscape_grid_minima():
    grid = landscape_grid(0.25, 64, 64)
    i, j = np.unravel_index(np.argmin(grid.values), grid.values.shape)
    assert abs(grid.q[i]) < 2 * np.pi / 64 + 1e-12
    assert abs(grid.p[j]) < 1.0 / 63 + 1e-12

    grid = landscape_grid(0.75, 200, 200)
    floor = -1.0 / 3.0
    assert grid.values.min() >= floor - 1e-12
    step = 2 * np.pi / 200
    assert grid.values.min() <= floor + step**2
    # maximum sits at the Q = -pi boundary, P = 0, value 1 + gamma
    assert grid.values.max() == pytest.approx(1.75, abs=step**2 * 4)


def test_landscape_off_locus_strictly_higher():
    gamma = 0.75
    grid = landscape_grid(gamma, 64, 64)
    pts = minimum_locus(gamma, 1024)
    qs = np.array([pt.q for pt in pts])
    ps = np.array([pt.p for pt in pts])
    dq, dp = 2 * np.pi / 64, 1.0 / 63
    floor = -1.0 / (4.0 * gamma)
    for i, q in enumerate(grid.q):
        for j, p in enumerate(grid.p):
            cells = np.maximum(np.abs(qs - q) / dq, np.abs(ps - p) / dp).min()
            if cells > 2.0:
                assert grid.values[i, j] > floor + 1e-12


def test_landscape_grid_validation():
    with pytest.raises(DomainError):
        landscape_grid(0.75, 8, 64)
    with pytest.raises(DomainError):
        minimum_locus(0.75, 1)
