import numpy as np
import pytest

from logcrystal import (
    ModelParams,
    double_gaussian_state,
    ground_index,
    level_values,
    sx_eigenbasis,
    to_fock,
    to_sx,
    two_level_state,
)
from logcrystal.errors import DomainError, StateValidationError


def test_two_level_state_example():
    params = ModelParams(100, 1.0)
    st = two_level_state(params, 5)
    m = level_values(params)
    amp = st.amplitudes
    assert amp[m == 25] == pytest.approx(1 / np.sqrt(2))
    assert amp[m == 20] == pytest.approx(1 / np.sqrt(2))
    assert np.count_nonzero(amp) == 2
    assert np.sum(np.abs(amp) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_two_level_state_errors():
    params = ModelParams(100, 1.0)
    with pytest.raises(DomainError):
        two_level_state(params, 0)
    with pytest.raises(DomainError):
        two_level_state(params, 200)  # m1 out of range


def test_two_level_negative_offset_allowed():
    params = ModelParams(100, 1.0)
    st = two_level_state(params, -4)
    m = level_values(params)
    assert st.amplitudes[m == 29] == pytest.approx(1 / np.sqrt(2))


def test_double_gaussian_normalization_and_raw_mass():
    # raw coefficients with the 1/sqrt(2 pi sigma) prefactor carry total
    # probability 2/sqrt(2 pi) ~ 0.798 for unit-width, well-separated peaks
    params = ModelParams(29240, 0.75)
    sigma, off = 1.0, 91
    m0 = ground_index(params)
    m = level_values(params)
    raw = (np.exp(-((m - m0) ** 2) / (4 * sigma**2))
           + np.exp(-((m - m0 + off) ** 2) / (4 * sigma**2))) / np.sqrt(2 * np.pi * sigma)
    assert np.sum(raw**2) == pytest.approx(2 / np.sqrt(2 * np.pi), abs=2e-3)

    st = double_gaussian_state(params, sigma, off)
    assert np.sum(np.abs(st.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert np.all(st.amplitudes.real >= 0)
    assert np.all(st.amplitudes.imag == 0)


def test_double_gaussian_narrow_limit_is_two_level():
    params = ModelParams(100, 1.0)
    narrow = double_gaussian_state(params, 1e-3, 5)
    two = two_level_state(params, 5)
    assert np.abs(narrow.amplitudes - two.amplitudes).max() < 1e-12


def test_double_gaussian_validation():
    params = ModelParams(100, 1.0)
    with pytest.raises(StateValidationError):
        double_gaussian_state(params, 2.0, 5)   # sigma > offset/3
    with pytest.raises(StateValidationError):
        double_gaussian_state(params, 0.0, 5)
    with pytest.raises(DomainError):
        double_gaussian_state(params, 1.0, 90)  # m1 out of range


def test_double_gaussian_reflection_symmetry():
    params = ModelParams(200, 1.0)
    sigma, off = 1.5, 9
    st = double_gaussian_state(params, sigma, off)
    m = level_values(params)
    m0 = ground_index(params)
    mid = 2 * m0 - off  # m0 + m1
    amp = st.amplitudes.real
    vals = dict(zip(m.tolist(), amp))
    for mi in m:
        mirror = mid - mi
        if abs(mirror) <= params.spin:
            assert vals[float(mi)] == pytest.approx(vals[float(mirror)], abs=1e-12)


def test_sx_eigenbasis_small_cases():
    # N=1: columns are (|1,0> -+ |0,1>)/sqrt(2) with m = -+1/2
    u1 = sx_eigenbasis(ModelParams(1, 0.75)).matrix
    r = 1 / np.sqrt(2)
    assert np.abs(u1 - np.array([[r, r], [-r, r]])).max() < 1e-12

    # N=2, m=0 column: (|0,2> - |2,0>)/sqrt(2) under the positive-first rule
    u2 = sx_eigenbasis(ModelParams(2, 0.75)).matrix
    assert np.abs(u2[:, 1] - np.array([r, 0.0, -r])).max() < 1e-12


def test_sx_eigenbasis_invariants():
    params = ModelParams(200, 0.75)
    u = sx_eigenbasis(params).matrix
    n = params.n_particles
    assert np.abs(u.T @ u - np.eye(n + 1)).max() < 1e-10
    # columns are eigenvectors of tridiagonal S_x with eigenvalues m
    n1 = np.arange(n, dtype=float)
    sx = np.diag(np.sqrt((n1 + 1.0) * (n - n1)) / 2.0, 1)
    sx = sx + sx.T
    m = level_values(params)
    assert np.abs(sx @ u - u * m).max() < 1e-10
    # sign convention: first non-negligible entry of each column positive
    for k in range(n + 1):
        col = u[:, k]
        nz = np.nonzero(np.abs(col) > 1e-8 * np.abs(col).max())[0][0]
        assert col[nz] > 0


def test_to_fock_small_and_roundtrip():
    params = ModelParams(1, 0.75)
    transform = sx_eigenbasis(params)
    from logcrystal.states import SxBasisState

    plus = SxBasisState(params, np.array([0.0, 1.0], dtype=complex))  # m = +1/2
    f = to_fock(plus, transform)
    assert np.abs(f.amplitudes - np.array([1, 1]) / np.sqrt(2)).max() < 1e-12

    params = ModelParams(40, 0.75)
    transform = sx_eigenbasis(params)
    rng = np.random.default_rng(11)
    amp = rng.normal(size=41) + 1j * rng.normal(size=41)
    amp /= np.linalg.norm(amp)
    st = SxBasisState(params, amp)
    back = to_sx(to_fock(st, transform), transform)
    assert np.abs(back.amplitudes - st.amplitudes).max() < 1e-12


def test_to_fock_single_column():
    params = ModelParams(6, 0.75)
    transform = sx_eigenbasis(params)
    from logcrystal.states import SxBasisState

    amp = np.zeros(7, dtype=complex)
    amp[2] = 1.0
    f = to_fock(SxBasisState(params, amp), transform)
    assert np.abs(f.amplitudes - transform.matrix[:, 2]).max() < 1e-14


def test_to_fock_preserves_inner_products():
    params = ModelParams(60, 0.75)
    transform = sx_eigenbasis(params)
    from logcrystal.states import SxBasisState

    rng = np.random.default_rng(5)
    for _ in range(5):
        a = rng.normal(size=61) + 1j * rng.normal(size=61)
        b = rng.normal(size=61) + 1j * rng.normal(size=61)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        sa, sb = SxBasisState(params, a), SxBasisState(params, b)
        fa, fb = to_fock(sa, transform), to_fock(sb, transform)
        direct = np.vdot(a, b)
        mapped = np.vdot(fa.amplitudes, fb.amplitudes)
        assert abs(direct - mapped) < 1e-12


def test_to_fock_params_mismatch():
    ta = sx_eigenbasis(ModelParams(5, 0.75))
    st = two_level_state(ModelParams(6, 0.75), 1)
    with pytest.raises(DomainError):
        to_fock(st, ta)


def test_state_norm_validation():
    from logcrystal.states import SxBasisState

    params = ModelParams(4, 0.75)
    with pytest.raises(StateValidationError):
        SxBasisState(params, np.ones(5, dtype=complex))
    with pytest.raises(StateValidationError):
        SxBasisState(params, np.ones(4, dtype=complex) / 2.0)  # wrong length
