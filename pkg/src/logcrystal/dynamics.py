"""Diagonal time evolution, overlap dynamics, and S_z correlation functions.

Everything evolves under the diagonal spectrum E_m of `core`: a state
sum_m c_m |m> picks up phases e^{-i E_m t}.  The survival overlap

    <Psi(0)|Psi(t)> = sum_m |c_m|^2 e^{-i (E_m - E_{m0}) t}

is reported with the ground-level phase factored out (the modulus is
convention-free; fixing the phase makes complex outputs reproducible).

Closed form.  For the double-Gaussian state the sum is two chirped Gaussian
lattice sums.  Poisson resummation turns each into a small set of image
terms (n = 0 is the familiar continuum integral; |n| >= 1 are discrete-
lattice revivals that matter once the beat phase advances by order 2*pi
per level step):

    S_c(t) = e^{-i a (x_c^2 - x_0^2)}
             * sum_n exp(-sigma^2 (nu_c - 2 pi n)^2 / (2 (1 + i beta)))
             / (sqrt(1 + i beta) * sum_n e^{-2 pi^2 sigma^2 n^2})

with a = 2 gamma t / N, beta = 2 a sigma^2, x_c the packet center measured
from the continuum minimum N/(4 gamma), and nu_c = 2 a x_c.  The overlap is
(S_0 + S_1)/2.  The reported envelope parameters come from the n = 0 term:
period T(t) = (2 pi / gap) (1 + beta^2), width Sigma(t) with the cross-term
envelope exp(-D/(4 Sigma^2)), and amplitude A(t) = 1/(2 sqrt(1 + i beta))
on the principal branch.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ModelParams,
    energy_level,
    gap_to_ground,
    ground_index,
    level_values,
    m1_offset,
)
from .errors import DomainError, InsufficientDataError, ResourceLimitError
from .states import SxBasisState, double_gaussian_state, two_level_state

__all__ = [
    "EnvelopeParams",
    "OverlapSeries",
    "evolve_phase",
    "overlap_exact",
    "overlap_closed_form",
    "overlap_series",
    "extract_period",
    "sz_correlation_closed_form",
    "sz_correlation_brute",
]

_TIME_CHUNK = 512  # fixed so results do not depend on the worker count


@dataclass(frozen=True)
class EnvelopeParams:
    """Instantaneous period, envelope width, and complex amplitude."""

    period: float
    width: float
    amplitude: complex


@dataclass(frozen=True)
class OverlapSeries:
    params: ModelParams
    sigma: float
    m1_offset: int
    t: np.ndarray = field(repr=False)
    exact: np.ndarray = field(repr=False)
    closed_form: np.ndarray = field(repr=False)
    period: np.ndarray = field(repr=False)
    width: np.ndarray = field(repr=False)
    amplitude: np.ndarray = field(repr=False)


def _spectrum_arrays(params):
    m = level_values(params)
    e = (2.0 * params.gamma / params.n_particles) * m * m - m
    return m, e


def evolve_phase(state, t):
    """Evolve c_m -> c_m e^{-i E_m t}; norm is preserved exactly."""
    if not np.isfinite(t):
        raise DomainError(f"time must be finite, got {t}")
    _, e = _spectrum_arrays(state.params)
    return SxBasisState(state.params, state.amplitudes * np.exp(-1j * e * t))


def _weights(state):
    w = np.abs(state.amplitudes) ** 2
    sup = w > 0.0
    return w, sup


def overlap_exact(state, t, threads=None):
    """Survival overlap sum_m |c_m|^2 e^{-i (E_m - E_{m0}) t}.

    t may be a scalar or an array; arrays are evaluated in fixed-size time
    chunks (optionally across threads) with an m-ordered reduction per
    sample, so results are identical for any worker count.
    """
    _, e = _spectrum_arrays(state.params)
    de = e - energy_level(state.params, ground_index(state.params))
    w, sup = _weights(state)
    wv, dev = w[sup], de[sup]
    tarr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(len(tarr), dtype=complex)

    def run(lo, hi):
        out[lo:hi] = wv @ np.exp(-1j * np.outer(dev, tarr[lo:hi]))

    bounds = [(i, min(i + _TIME_CHUNK, len(tarr))) for i in range(0, len(tarr), _TIME_CHUNK)]
    if threads and threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda b: run(*b), bounds))
    else:
        for b in bounds:
            run(*b)
    return out[0] if np.isscalar(t) or np.asarray(t).ndim == 0 else out


def _closed_form_arrays(params, sigma, offset, t):
    """Vectorized closed form; returns (overlap, period, width, amplitude)."""
    n, gamma = params.n_particles, params.gamma
    m0 = ground_index(params)
    m1 = m0 - offset
    if abs(m1) > params.spin:
        raise DomainError(f"offset {offset} puts the partner level out of range")
    mstar = n / (4.0 * gamma)
    x0, x1 = m0 - mstar, m1 - mstar
    gap = gap_to_ground(params, m1)

    t = np.asarray(t, dtype=float)
    a = 2.0 * gamma * t / n
    beta = 2.0 * a * sigma**2
    amp = 0.5 / np.sqrt(1.0 + 1j * beta)
    with np.errstate(divide="ignore"):
        period = np.where(gap > 0, (2.0 * np.pi / gap) * (1.0 + beta**2), np.inf)
        width = np.sqrt(np.where(a * beta > 0, (1.0 + beta**2) / (4.0 * a * beta), np.inf))

    if sigma == 0.0:  # two-level limit: delta packets, pure beat
        val = 0.5 * (1.0 + np.exp(-1j * a * (x1**2 - x0**2)))
        return val, period, width, amp

    ns = np.arange(-8, 9)
    znorm = np.sum(np.exp(-2.0 * np.pi**2 * sigma**2 * ns**2))
    denom = 2.0 * (1.0 + 1j * beta)
    val = np.zeros(t.shape, dtype=complex)
    for xc in (x0, x1):
        nu = 2.0 * a * xc
        base = np.exp(-1j * a * (xc**2 - x0**2))
        kc = nu / (2.0 * np.pi)
        lo = int(np.floor(kc.min())) - 3 if kc.size else -3
        hi = int(np.ceil(kc.max())) + 3 if kc.size else 3
        img = np.zeros(t.shape, dtype=complex)
        for k in range(lo, hi + 1):
            img += np.exp(-(sigma**2) * (nu - 2.0 * np.pi * k) ** 2 / denom)
        val += base * img / (np.sqrt(1.0 + 1j * beta) * znorm)
    return 0.5 * val, period, width, amp


def overlap_closed_form(params, sigma, m1_offset_, t):
    """Closed-form overlap at time t; returns (value, EnvelopeParams)."""
    if not params.degenerate:
        raise DomainError(f"gamma={params.gamma} <= 1/2: no slow manifold")
    if sigma < 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    val, period, width, amp = _closed_form_arrays(
        params, sigma, m1_offset_, np.atleast_1d(float(t)))
    return complex(val[0]), EnvelopeParams(float(period[0]), float(width[0]), complex(amp[0]))


def overlap_series(params, times, kind="double_gaussian", sigma=1.0,
                   m1_offset_=None, threads=None):
    """Exact and closed-form overlaps over a time grid, as an OverlapSeries."""
    if m1_offset_ is None:
        m1_offset_ = m1_offset(params)
    if kind == "two_level":
        state = two_level_state(params, m1_offset_)
        sig_cf = 0.0
    elif kind == "double_gaussian":
        state = double_gaussian_state(params, sigma, m1_offset_)
        sig_cf = sigma
    else:
        raise DomainError(f"unknown state kind {kind!r}")
    times = np.asarray(times, dtype=float)
    exact = overlap_exact(state, times, threads=threads)
    closed, period, width, amp = _closed_form_arrays(params, sig_cf, m1_offset_, times)
    return OverlapSeries(params, sig_cf, int(m1_offset_), times, exact,
                         closed, period, width, amp)


def extract_period(series, values=None):
    """Mean spacing of successive maxima of |overlap|^2.

    Accepts an OverlapSeries or a pair of (t, y) arrays.  Discrete maxima
    are refined by a three-point parabola; at least three maxima must be
    present.
    """
    if values is None:
        t = np.asarray(series.t, dtype=float)
        y = np.abs(series.exact) ** 2
    else:
        t = np.asarray(series, dtype=float)
        y = np.asarray(values, dtype=float)
    if len(t) < 3:
        raise InsufficientDataError("series shorter than 3 samples")
    idx = np.where((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    if len(idx) < 3:
        raise InsufficientDataError(
            f"need at least 3 interior maxima to measure a period, found {len(idx)}")
    peaks = []
    for i in idx:
        a, b, c = y[i - 1], y[i], y[i + 1]
        curv = a - 2.0 * b + c
        if curv < 0:
            peaks.append(t[i] + 0.5 * (t[i + 1] - t[i]) * (a - c) / curv)
        else:
            peaks.append(t[i])
    return float(np.mean(np.diff(peaks)))


def _ladder_amplitude(params, mj, sign):
    """|<m_j + sign | S_z | m_j>|^2 * 4 = S(S+1) - m_j (m_j + sign)."""
    s = params.spin
    return s * (s + 1.0) - mj * (mj + sign)


def sz_correlation_closed_form(params, m1_offset_, t):
    """Four-line correlation <Sz(0) Sz(-t)> of the two-level crystal state.

    Matches `sz_correlation_brute` on (|m0> + |m1>)/sqrt(2) exactly,
    including the 1/8 prefactor (1/2 from the state normalization, 1/4
    from the S_z ladder matrix elements).  Requires |offset| >= 3 so the
    S_z images of the two levels do not overlap.
    """
    if abs(m1_offset_) < 3:
        raise DomainError("|offset| < 3: S_z ladder images of m0 and m1 overlap")
    m0 = ground_index(params)
    m1 = m0 - m1_offset_
    s = params.spin
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for mj in (m0, m1):
        if mj + 1 > s or mj - 1 < -s:
            raise DomainError(f"S_z ladder at m={mj} leaves the level range")
        up = energy_level(params, mj + 1) - energy_level(params, mj)
        dn = energy_level(params, mj) - energy_level(params, mj - 1)
        out += _ladder_amplitude(params, mj, +1) * np.exp(-1j * up * t)
        out += _ladder_amplitude(params, mj, -1) * np.exp(+1j * dn * t)
    out /= 8.0
    return complex(out[()]) if out.ndim == 0 else out


def sz_correlation_brute(state, transform, t, oracle_bound=2000):
    """Matrix oracle <Psi| S_z e^{-iH't} S_z e^{iH't} |Psi>.

    S_z is transformed into the S_x eigenbasis numerically (it is
    tridiagonal there) and the phases are applied level by level; exact up
    to the transform's floating-point error.  Guarded by an N bound since
    the transform is dense.
    """
    params = state.params
    if params.n_particles > oracle_bound:
        raise ResourceLimitError(
            f"N={params.n_particles} exceeds the oracle bound {oracle_bound}")
    if state.params != transform.params:
        raise DomainError("state and transform belong to different models")
    _, e = _spectrum_arrays(params)
    n1 = np.arange(params.dim, dtype=float)
    zx = transform.matrix.T @ (transform.matrix * (n1 - params.spin)[:, None])
    psi = state.amplitudes
    u = zx @ psi
    tarr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(len(tarr), dtype=complex)
    for lo in range(0, len(tarr), _TIME_CHUNK):
        hi = min(lo + _TIME_CHUNK, len(tarr))
        ph = np.exp(1j * np.outer(e, tarr[lo:hi]))
        w = zx @ (psi[:, None] * ph)
        out[lo:hi] = np.sum(np.conj(u)[:, None] * np.conj(ph) * w, axis=0)
    return out[0] if np.isscalar(t) or np.asarray(t).ndim == 0 else out
