"""State constructors in the S_x eigenbasis and the Fock <-> S_x transform.

Amplitude vectors are indexed by the level grid of `core.level_values`:
entry k corresponds to m = k - N/2 in the S_x basis, and to the occupation
pair (n1, n2) = (k, N - k) in the Fock basis.

The transform U has columns U[:, k] = <n1, N-n1 | m_k>, the eigenvectors of
the tridiagonal S_x operator (off-diagonal sqrt((n1+1)(N-n1))/2).  The sign
of each column is fixed so that its first non-negligible entry, scanning
n1 = 0 upward, is positive; this makes the matrix reproducible bit-for-bit
across runs.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import ModelParams, ground_index, level_values, m1_offset
from .errors import DomainError, StateValidationError

__all__ = [
    "SxBasisState",
    "FockBasisState",
    "BasisTransform",
    "two_level_state",
    "double_gaussian_state",
    "sx_eigenbasis",
    "to_fock",
    "to_sx",
]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class SxBasisState:
    """Unit-norm amplitudes c_m over the S_x levels m = -N/2 ... N/2."""

    params: ModelParams
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.params.dim,):
            raise StateValidationError(
                f"amplitude length {amp.shape} != N+1 = {self.params.dim}")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise StateValidationError(f"state norm^2 = {norm2!r} is not 1")
        object.__setattr__(self, "amplitudes", amp)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class FockBasisState:
    """Unit-norm amplitudes over occupations |n1, N-n1>, n1 = 0 ... N."""

    params: ModelParams
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.params.dim,):
            raise StateValidationError(
                f"amplitude length {amp.shape} != N+1 = {self.params.dim}")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise StateValidationError(f"state norm^2 = {norm2!r} is not 1")
        object.__setattr__(self, "amplitudes", amp)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class BasisTransform:
    """Orthogonal map U[n1, k] = <n1, N-n1 | m_k> between the two bases."""

    params: ModelParams
    matrix: np.ndarray = field(repr=False)


def _level_to_index(params, m):
    k = m + params.spin
    ki = int(round(k))
    if abs(k - ki) > 1e-9 or ki < 0 or ki >= params.dim:
        raise DomainError(f"level m={m} outside the grid of N={params.n_particles}")
    return ki


def two_level_state(params, m1_offset_):
    """Equal superposition of |m0> and |m1 = m0 - m1_offset_|>."""
    if m1_offset_ == 0:
        raise DomainError("offset 0 would superpose a level with itself")
    m0 = ground_index(params)
    i0 = _level_to_index(params, m0)
    i1 = _level_to_index(params, m0 - m1_offset_)
    amp = np.zeros(params.dim, dtype=complex)
    amp[i0] = amp[i1] = 1.0 / np.sqrt(2.0)
    return SxBasisState(params, amp)


def double_gaussian_state(params, sigma, m1_offset_=None):
    """Two Gaussian amplitude packets of width sigma at m0 and m1, renormalized.

    The raw coefficients exp(-(m-m0)^2/(4 sigma^2)) + exp(-(m-m1)^2/(4 sigma^2))
    do not sum to unit probability on the discrete level grid, so the state is
    normalized numerically; every overlap formula downstream is invariant under
    that global rescaling.  sigma must not exceed |offset|/3 so the two packets
    stay separated inside the slow manifold.
    """
    if m1_offset_ is None:
        m1_offset_ = m1_offset(params)
    if m1_offset_ == 0:
        raise DomainError("offset 0 would merge the two packets")
    if not (sigma > 0):
        raise StateValidationError(f"sigma must be > 0, got {sigma}")
    if sigma > abs(m1_offset_) / 3.0:
        raise StateValidationError(
            f"sigma={sigma} too wide for offset {m1_offset_}: need sigma <= |offset|/3")
    m0 = ground_index(params)
    m1 = m0 - m1_offset_
    _level_to_index(params, m1)  # range check
    m = level_values(params)
    raw = np.exp(-((m - m0) ** 2) / (4.0 * sigma**2)) + np.exp(
        -((m - m1) ** 2) / (4.0 * sigma**2))
    amp = raw / np.linalg.norm(raw)
    return SxBasisState(params, amp.astype(complex))


def sx_eigenbasis(params):
    """Diagonalize the tridiagonal S_x operator in the Fock basis."""
    n = params.n_particles
    n1 = np.arange(n, dtype=float)
    off = np.sqrt((n1 + 1.0) * (n - n1)) / 2.0
    _, vecs = eigh_tridiagonal(np.zeros(n + 1), off)
    # sign convention: first entry above noise scanning n1=0 upward is positive
    for k in range(n + 1):
        col = vecs[:, k]
        nz = np.nonzero(np.abs(col) > 1e-8 * np.abs(col).max())[0][0]
        if col[nz] < 0:
            vecs[:, k] = -col
    return BasisTransform(params, vecs)


def to_fock(state, transform):
    """Map an S_x-basis state to the Fock basis: amplitudes = U @ c."""
    if state.params != transform.params:
        raise DomainError("state and transform belong to different models")
    return FockBasisState(state.params, transform.matrix @ state.amplitudes)


def to_sx(state, transform):
    """Adjoint of `to_fock`: amplitudes = U.T @ f."""
    if state.params != transform.params:
        raise DomainError("state and transform belong to different models")
    return SxBasisState(state.params, transform.matrix.T @ state.amplitudes)
