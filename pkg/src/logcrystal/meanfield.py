"""Classical (thermodynamic-limit) energy landscape of the two-mode model.

Phase-space coordinates: population imbalance P in [-1/2, 1/2] and relative
phase Q in [-pi, pi), a canonically conjugate pair.  The landscape

    H(Q, P) = -sqrt(1 - 4 P^2) cos Q + gamma (1 - 4 P^2) cos^2 Q

depends on the coordinates only through u = sqrt(1 - 4 P^2) cos Q, the
classical counterpart of 2 S_x / N.  For gamma <= 1/2 the single minimum
sits at the origin; for gamma > 1/2 the minimum value -1/(4 gamma) is
attained on the whole curve u = 1/(2 gamma), which seeds the quantum model's
quasi-degenerate ground manifold.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "PhasePoint",
    "LandscapeGrid",
    "classical_energy",
    "minimum_locus",
    "locus_reach",
    "landscape_grid",
]


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float

    def __post_init__(self):
        if abs(self.p) > 0.5 + 1e-12:
            raise DomainError(f"|P|={abs(self.p)} exceeds 1/2")
        if not (-np.pi - 1e-12 <= self.q < np.pi + 1e-12):
            raise DomainError(f"Q={self.q} outside [-pi, pi)")


@dataclass(frozen=True)
class LandscapeGrid:
    gamma: float
    q: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)  # shape (nQ, nP)


def classical_energy(gamma, point_or_q, p=None):
    """Landscape value at a PhasePoint or at (Q, P) scalars/arrays."""
    if p is None:
        q, p = point_or_q.q, point_or_q.p
    else:
        q = point_or_q
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(np.abs(p) > 0.5 + 1e-12):
        raise DomainError("|P| exceeds 1/2")
    u = np.sqrt(np.clip(1.0 - 4.0 * p**2, 0.0, None)) * np.cos(q)
    out = -u + gamma * u * u
    return float(out) if out.ndim == 0 else out


def locus_reach(gamma):
    """Half-width in P of the degenerate minimum curve (0 for gamma <= 1/2)."""
    if gamma <= 0.5:
        return 0.0
    return 0.5 * np.sqrt(1.0 - 1.0 / (4.0 * gamma**2))


def minimum_locus(gamma, n_points):
    """Sample the ground locus sqrt(1-4P^2) cos Q = 1/(2 gamma).

    For gamma <= 1/2 the single minimum (0, 0) is returned.  Otherwise the
    curve is swept uniformly in P over its reachable band, emitting the +Q
    branch followed by the mirrored -Q branch.
    """
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    if gamma <= 0.5:
        return [PhasePoint(0.0, 0.0)]
    pmax = locus_reach(gamma)
    half = max(n_points // 2, 2)
    p = np.linspace(-pmax, pmax, half)
    cosq = 1.0 / (2.0 * gamma * np.sqrt(1.0 - 4.0 * p**2))
    q = np.arccos(np.clip(cosq, -1.0, 1.0))
    pts = [PhasePoint(float(qi), float(pi)) for qi, pi in zip(q, p)]
    pts += [PhasePoint(float(-qi), float(pi)) for qi, pi in zip(q, p)]
    return pts


def landscape_grid(gamma, nq, np_):
    """Uniform landscape samples: Q over [-pi, pi), P over [-1/2, 1/2]."""
    if nq < 16 or np_ < 16:
        raise DomainError("grid resolution must be at least 16 x 16")
    q = -np.pi + 2.0 * np.pi * np.arange(nq) / nq
    p = np.linspace(-0.5, 0.5, np_)
    vals = classical_energy(gamma, q[:, None], p[None, :])
    return LandscapeGrid(float(gamma), q, p, vals)
