"""Model parameters and the exact single-body spectrum of the two-mode model.

Conventions
-----------
The N-boson two-mode Hamiltonian with hopping strength 1 and dimensionless
coupling gamma maps onto a collective spin S = N/2.  All energies and all
dynamics in this package use the halved generator

    H' = -S_x + (2*gamma/N) * S_x**2,

whose eigenstates are the S_x eigenstates |m>, m = -N/2, ..., N/2 (integer
steps; half-integer values for odd N), with

    E_m = (2*gamma/N) * m**2 - m.

For gamma <= 1/2 the spectrum is monotonic with a finite gap and the ground
state sits at m = N/2.  For gamma > 1/2 the minimum moves to m0 near
N/(4*gamma), the gaps around m0 collapse as 1/N, and the levels within
|m - m0| <~ sqrt(N) form a quasi-degenerate ground manifold.

`ground_index` returns the true argmin of E_m.  The floor rule
floor(N/(4*gamma)) quoted in textbook treatments picks the wrong neighbor
whenever the fractional part of N/(4*gamma) exceeds 1/2 (e.g. N=440,
gamma=3/4); `floor_rule_index` is kept for traceability.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RegimeError

__all__ = [
    "ModelParams",
    "Spectrum",
    "level_values",
    "energy_level",
    "neighbor_gap",
    "ground_index",
    "floor_rule_index",
    "gap_to_ground",
    "quasi_ground_set",
    "m1_offset",
    "m1_index",
    "spectrum",
    "gamma_for_integer_minimum",
]


@dataclass(frozen=True)
class ModelParams:
    """Total boson number N and dimensionless coupling gamma."""

    n_particles: int
    gamma: float

    def __post_init__(self):
        if int(self.n_particles) != self.n_particles or self.n_particles < 1:
            raise DomainError(f"n_particles must be an integer >= 1, got {self.n_particles}")
        if not (self.gamma >= 0):
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        object.__setattr__(self, "n_particles", int(self.n_particles))
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def spin(self):
        return self.n_particles / 2.0

    @property
    def degenerate(self):
        """True in the quasi-degenerate regime gamma > 1/2."""
        return self.gamma > 0.5

    @property
    def dim(self):
        return self.n_particles + 1


def level_values(params):
    """All S_x quantum numbers m = -N/2 ... N/2 in ascending order."""
    return np.arange(params.dim) - params.spin


def _check_level(params, m):
    s = params.spin
    if abs(m) > s + 1e-9:
        raise DomainError(f"m={m} outside [-{s}, {s}]")
    k = m + s
    if abs(k - round(k)) > 1e-9:
        raise DomainError(f"m={m} is not on the level grid of N={params.n_particles}")
    return float(m)


def energy_level(params, m):
    """Energy E_m = (2*gamma/N)*m**2 - m of eigenstate |m>."""
    m = _check_level(params, m)
    return (2.0 * params.gamma / params.n_particles) * m * m - m


def neighbor_gap(params, m):
    """Signed gap E_m - E_{m-1} = (2*gamma/N)*(2m-1) - 1.

    Negative throughout the spectrum for gamma < 1/2 (the energy increases
    as m decreases), and bounded away from zero by 1 - 2*gamma there.
    """
    m = _check_level(params, m)
    if m - 1 < -params.spin - 1e-9:
        raise DomainError(f"m={m} has no lower neighbor")
    return (2.0 * params.gamma / params.n_particles) * (2.0 * m - 1.0) - 1.0


def ground_index(params):
    """The m minimizing E_m; ties (half-integer N/(4*gamma)) break upward."""
    m = level_values(params)
    e = (2.0 * params.gamma / params.n_particles) * m * m - m
    # scan from the top so the largest m wins exact ties
    k = len(e) - 1 - int(np.argmin(e[::-1]))
    return float(m[k])


def floor_rule_index(params):
    """floor(N/(4*gamma)) clipped to the level range; traceability only."""
    s = params.spin
    if params.gamma == 0.0:
        return s
    return float(min(np.floor(params.n_particles / (4.0 * params.gamma)), s))


def gap_to_ground(params, m):
    """Nonnegative excitation energy E_m - E_{m0}."""
    m = _check_level(params, m)
    return energy_level(params, m) - energy_level(params, ground_index(params))


def quasi_ground_set(params, delta):
    """Levels with |m - m0| <= N**(1/2 - delta), the quasi-degenerate manifold.

    Only defined for gamma > 1/2; every member's gap to the ground state
    vanishes as N grows at fixed delta.
    """
    if not (0.0 < delta < 0.5):
        raise DomainError(f"delta must lie in (0, 1/2), got {delta}")
    if not params.degenerate:
        raise RegimeError(f"gamma={params.gamma} <= 1/2: no quasi-degenerate manifold")
    m0 = ground_index(params)
    radius = params.n_particles ** (0.5 - delta)
    m = level_values(params)
    return set(m[np.abs(m - m0) <= radius + 1e-12].tolist())


def m1_offset(params, log_base=None):
    """Default partner-level offset floor(sqrt(N / log N)).

    log_base None means the natural logarithm.  The offset controls the
    gap to the partner level and hence the oscillation period
    2*pi/gap ~ (pi/gamma)*log(N).
    """
    n = params.n_particles
    logn = np.log(n) if log_base is None else np.log(n) / np.log(log_base)
    if logn <= 0:
        raise DomainError(f"log base {log_base} gives nonpositive log({n})")
    off = int(np.floor(np.sqrt(n / logn)))
    if off == 0:
        raise DomainError("offset rounds to 0: superposition would be degenerate")
    return off


def m1_index(params, log_base=None):
    """Partner level m1 = m0 - floor(sqrt(N / log N)) of the crystal state."""
    if not params.degenerate:
        raise RegimeError(f"gamma={params.gamma} <= 1/2: no slow manifold to pair in")
    m1 = ground_index(params) - m1_offset(params, log_base)
    return _check_level(params, m1)


@dataclass(frozen=True)
class Spectrum:
    """All (m, E_m) pairs plus the ground level and the floor-rule value."""

    params: ModelParams
    m: np.ndarray = field(repr=False)
    energies: np.ndarray = field(repr=False)
    m0: float
    m0_floor_rule: float


def spectrum(params):
    m = level_values(params)
    e = (2.0 * params.gamma / params.n_particles) * m * m - m
    return Spectrum(params, m, e, ground_index(params), floor_rule_index(params))


def gamma_for_integer_minimum(n, gamma_target):
    """Nearest coupling to gamma_target for which N/(4*gamma) is an integer.

    With an integer continuum minimum the excitation energies are exactly
    quadratic in (m - m0), which is the regime the closed-form overlap
    describes with no linear correction.
    """
    m0 = round(n / (4.0 * gamma_target))
    if m0 < 1 or m0 > n // 2:
        raise DomainError(f"no integer minimum near gamma={gamma_target} for N={n}")
    return n / (4.0 * m0)
