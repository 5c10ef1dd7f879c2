import numpy as np
import pytest

from logcrystal import (
    ModelParams,
    energy_level,
    floor_rule_index,
    gamma_for_integer_minimum,
    gap_to_ground,
    ground_index,
    level_values,
    m1_index,
    m1_offset,
    neighbor_gap,
    quasi_ground_set,
    spectrum,
)
from logcrystal.errors import DomainError, RegimeError


def fock_hamiltonian(n, gamma):
    """Independent oracle: H' = -S_x + (2 gamma/N) S_x^2 in the Fock basis."""
    n1 = np.arange(n, dtype=float)
    sx = np.diag(np.sqrt((n1 + 1.0) * (n - n1)) / 2.0, 1)
    sx = sx + sx.T
    return -sx + (2.0 * gamma / n) * (sx @ sx)


def test_params_validation():
    with pytest.raises(DomainError):
        ModelParams(0, 0.5)
    with pytest.raises(DomainError):
        ModelParams(10, -0.1)
    assert not ModelParams(10, 0.5).degenerate
    assert ModelParams(10, 0.51).degenerate
    assert ModelParams(9, 0.5).spin == 4.5


def test_energy_level_examples():
    assert energy_level(ModelParams(4, 0.0), 1) == -1.0
    assert energy_level(ModelParams(4, 0.75), 2) == pytest.approx(-0.5, abs=1e-15)
    assert energy_level(ModelParams(440, 0.75), 147) == pytest.approx(
        -73.33295454545455, abs=1e-10)
    with pytest.raises(DomainError):
        energy_level(ModelParams(4, 0.75), 3)
    with pytest.raises(DomainError):
        energy_level(ModelParams(4, 0.75), 0.5)  # off the integer grid


def test_energy_gamma_zero_is_minus_m():
    params = ModelParams(12, 0.0)
    for m in level_values(params):
        assert energy_level(params, m) == -m


def test_spectrum_matches_fock_diagonalization():
    for n in range(2, 13):
        for gamma in (0.25, 0.75, 1.5):
            params = ModelParams(n, gamma)
            closed = np.sort([energy_level(params, m) for m in level_values(params)])
            brute = np.sort(np.linalg.eigvalsh(fock_hamiltonian(n, gamma)))
            assert np.abs(closed - brute).max() < 1e-10


def test_spectrum_matches_fock_diagonalization_n440():
    params = ModelParams(440, 0.75)
    closed = np.sort([energy_level(params, m) for m in level_values(params)])
    brute = np.sort(np.linalg.eigvalsh(fock_hamiltonian(440, 0.75)))
    assert np.abs(closed - brute).max() < 1e-9


def test_neighbor_gap_examples():
    assert neighbor_gap(ModelParams(100, 0.0), 50) == -1.0
    assert neighbor_gap(ModelParams(440, 0.75), 147) == pytest.approx(
        -0.5 / 440.0, abs=1e-12)
    gap_top = neighbor_gap(ModelParams(440, 0.75), -219)
    assert gap_top == pytest.approx(-2.4965909090909, abs=1e-10)
    # the magnitude at the band top is 1 + 2 gamma - 2 gamma / N
    assert abs(gap_top) == pytest.approx(1 + 1.5 - 1.5 / 440, abs=1e-12)
    with pytest.raises(DomainError):
        neighbor_gap(ModelParams(440, 0.75), -220)


def test_neighbor_gap_dichotomy_below_half():
    for n in (100, 1000, 10000):
        params = ModelParams(n, 0.25)
        gaps = np.array([neighbor_gap(params, m) for m in level_values(params)[1:]])
        assert gaps.max() <= -(1 - 2 * 0.25)
        assert np.abs(gaps).min() >= 1 - 2 * 0.25


def test_ground_index_examples():
    assert ground_index(ModelParams(100, 0.25)) == 50
    assert ground_index(ModelParams(440, 0.75)) == 147
    assert floor_rule_index(ModelParams(440, 0.75)) == 146
    assert ground_index(ModelParams(100, 1.0)) == 25
    params = ModelParams(440, 0.75)
    e147 = energy_level(params, 147)
    assert e147 < energy_level(params, 146)
    assert e147 < energy_level(params, 148)


def test_ground_index_tie_breaks_upward():
    # N/(4 gamma) = 25.5: E_25 == E_26 exactly, larger m wins
    params = ModelParams(102, 1.0)
    assert energy_level(params, 25) == pytest.approx(energy_level(params, 26), abs=1e-12)
    assert ground_index(params) == 26


def test_ground_index_is_brute_argmin():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 300))
        gamma = float(rng.uniform(0.05, 2.5))
        params = ModelParams(n, gamma)
        m = level_values(params)
        e = np.array([energy_level(params, mi) for mi in m])
        assert energy_level(params, ground_index(params)) == e.min()


def test_gap_to_ground_examples():
    params = ModelParams(100, 1.0)
    assert gap_to_ground(params, 25) == 0.0
    assert gap_to_ground(params, 30) == pytest.approx(0.5, abs=1e-12)
    assert gap_to_ground(params, 26) == pytest.approx(0.02, abs=1e-14)
    assert gap_to_ground(params, 26) == pytest.approx(2 * 1.0 / 100, abs=1e-14)
    for m in level_values(params):
        assert gap_to_ground(params, m) >= 0.0


def test_gap_collapse_above_half():
    # gaps to the two neighbors scale as 1/N; their mean is exactly 2 gamma/N
    gamma = 0.75
    prev = None
    for n in (100, 1000, 10000):
        params = ModelParams(n, gamma)
        m0 = ground_index(params)
        pair = gap_to_ground(params, m0 + 1) + gap_to_ground(params, m0 - 1)
        assert pair / 2.0 == pytest.approx(2 * gamma / n, rel=1e-9)
        assert max(gap_to_ground(params, m0 + 1), gap_to_ground(params, m0 - 1)) \
            <= 2 * (2 * gamma / n) + 1e-15
        if prev is not None:
            assert pair < prev
        prev = pair


def test_quasi_ground_set_examples():
    params = ModelParams(10000, 1.0)
    got = quasi_ground_set(params, 0.25)
    assert got == set(range(2490, 2511))
    assert all(gap_to_ground(params, m) <= 0.02 + 1e-12 for m in got)

    got440 = quasi_ground_set(ModelParams(440, 0.75), 0.25)
    assert got440 == set(range(143, 152))
    assert len(got440) == 9

    # delta near 1/2: radius ~ N^0 = 1, only m0 and its nearest neighbors
    tight = quasi_ground_set(ModelParams(100, 1.0), 0.4999)
    assert 25 in tight
    assert tight <= {24, 25, 26}


def test_quasi_ground_set_errors():
    with pytest.raises(RegimeError):
        quasi_ground_set(ModelParams(100, 0.25), 0.25)
    with pytest.raises(DomainError):
        quasi_ground_set(ModelParams(100, 1.0), 0.6)
    with pytest.raises(DomainError):
        quasi_ground_set(ModelParams(100, 1.0), 0.0)


def test_m1_index_examples():
    params = ModelParams(29240, 0.75)
    assert m1_offset(params) == 53
    assert m1_index(params) == ground_index(params) - 53
    params55 = ModelParams(55, 0.75)
    assert m1_offset(params55) == 3
    assert m1_index(params55) == ground_index(params55) - 3
    # the offset controls the gap: Delta E ~ 2 gamma / log N
    gap = gap_to_ground(params, m1_index(params))
    assert gap == pytest.approx(2 * 0.75 / np.log(29240), rel=0.05)


def test_m1_index_errors_and_log_base():
    with pytest.raises(RegimeError):
        m1_index(ModelParams(1000, 0.4))
    # a log base close to 1 collapses the offset to zero
    with pytest.raises(DomainError):
        m1_offset(ModelParams(55, 0.75), log_base=1.01)
    assert m1_offset(ModelParams(10000, 0.75), log_base=10.0) == 50


def test_spectrum_container():
    params = ModelParams(20, 0.75)
    spec = spectrum(params)
    assert len(spec.m) == 21
    assert spec.energies[np.argmin(spec.energies)] == energy_level(params, spec.m0)
    assert spec.m0_floor_rule == floor_rule_index(params)


def test_thermodynamic_correspondence():
    # 2 E_{m0} / N -> -1/(4 gamma), error within C/N
    gamma = 0.75
    errs = []
    for n in (100, 1000, 10000):
        params = ModelParams(n, gamma)
        e0 = energy_level(params, ground_index(params))
        errs.append(abs(2 * e0 / n + 1 / (4 * gamma)))
    assert all(err <= 5.0 / n for err, n in zip(errs, (100, 1000, 10000)))
    assert errs[2] < errs[0]


def test_gamma_for_integer_minimum():
    g = gamma_for_integer_minimum(29240, 0.75)
    params = ModelParams(29240, g)
    assert 29240 / (4 * g) == pytest.approx(ground_index(params), abs=1e-9)
    assert abs(g - 0.75) < 1e-4
