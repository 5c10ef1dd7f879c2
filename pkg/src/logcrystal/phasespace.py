"""Phase-space portraits of energy eigenstates via SU(2) coherent states.

A coherent state at (Q, P) fills the two modes with weights 1/2 - P and
1/2 + P and relative phase Q on mode 2:

    amp(n1) = sqrt(C(N, n1)) (1/2 - P)^(n1/2) (1/2 + P)^((N-n1)/2) e^{i Q (N-n1)}.

The Husimi portrait |<Q,P|m>|^2 of an S_x eigenstate concentrates on the
classical contour sqrt(1-4P^2) cos Q = 2m/N, smeared over roughly a
1/sqrt(N) resolution cell.  For levels near the ground index at
gamma > 1/2 that contour is the degenerate minimum curve of `meanfield`.

Amplitudes are assembled in log space so binomial weights stay finite up
to a few thousand particles.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.special import gammaln

from .errors import DomainError
from .meanfield import minimum_locus
from .states import FockBasisState

__all__ = [
    "HusimiGrid",
    "coherent_state",
    "husimi",
    "locus_cell_mask",
    "locus_concentration",
]


@dataclass(frozen=True)
class HusimiGrid:
    params: object
    m: float
    q: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)  # shape (nQ, nP)


def _mode_weights_log(params, p):
    """0.5*log of the binomial occupation probabilities at imbalance p."""
    n = params.n_particles
    n1 = np.arange(n + 1, dtype=float)
    if p >= 0.5:
        r = np.zeros(n + 1)
        r[0] = 1.0  # all particles in mode 2
        return r
    if p <= -0.5:
        r = np.zeros(n + 1)
        r[n] = 1.0
        return r
    lnbin = gammaln(n + 1.0) - gammaln(n1 + 1.0) - gammaln(n - n1 + 1.0)
    logr = 0.5 * (lnbin + n1 * np.log(0.5 - p) + (n - n1) * np.log(0.5 + p))
    return np.exp(logr)


def coherent_state(params, point):
    """SU(2) coherent state at a PhasePoint, as a Fock-basis state."""
    if abs(point.p) > 0.5 + 1e-12:
        raise DomainError(f"|P|={abs(point.p)} exceeds 1/2")
    n = params.n_particles
    n1 = np.arange(n + 1)
    r = _mode_weights_log(params, float(point.p))
    amp = r * np.exp(1j * point.q * (n - n1))
    amp = amp / np.linalg.norm(amp)
    return FockBasisState(params, amp)


def husimi(params, m, transform, nq, np_):
    """Grid of |<Q,P|m>|^2 for the eigenstate with S_x quantum number m.

    The Q dependence of a coherent state is a pure phase ramp e^{i Q n1}
    (up to a global phase), so each P row is evaluated as one matrix-vector
    product against the phase matrix.
    """
    if nq < 16 or np_ < 16:
        raise DomainError("grid resolution must be at least 16 x 16")
    k = int(round(m + params.spin))
    if k < 0 or k >= params.dim:
        raise DomainError(f"level m={m} outside the grid of N={params.n_particles}")
    col = transform.matrix[:, k]
    n1 = np.arange(params.n_particles + 1)
    q = -np.pi + 2.0 * np.pi * np.arange(nq) / nq
    p = np.linspace(-0.5, 0.5, np_)
    phases = np.exp(1j * np.outer(q, n1))
    vals = np.empty((nq, np_))
    for j, pj in enumerate(p):
        g = _mode_weights_log(params, float(pj)) * col
        vals[:, j] = np.abs(phases @ g) ** 2
    return HusimiGrid(params, float(m), q, p, vals)


def locus_cell_mask(grid, gamma, cells=3):
    """Boolean mask of grid nodes within `cells` cells of the minimum locus.

    The locus polyline is rasterized onto the grid and dilated by a
    (2*cells+1)^2 box, i.e. Chebyshev distance in cell units.
    """
    pts = minimum_locus(gamma, 8 * max(len(grid.q), len(grid.p)))
    qs = np.array([pt.q for pt in pts])
    ps = np.array([pt.p for pt in pts])
    nq, np_ = len(grid.q), len(grid.p)
    iq = np.clip(np.round((qs + np.pi) / (2.0 * np.pi / nq)).astype(int), 0, nq - 1)
    ip = np.clip(np.round((ps + 0.5) * (np_ - 1)).astype(int), 0, np_ - 1)
    mask = np.zeros((nq, np_), dtype=bool)
    mask[iq, ip] = True
    size = 2 * cells + 1
    return ndimage.binary_dilation(mask, np.ones((size, size), dtype=bool))


def locus_concentration(grid, gamma, cells=3):
    """Fraction of total grid mass lying within `cells` cells of the locus."""
    mask = locus_cell_mask(grid, gamma, cells)
    total = grid.values.sum()
    return float(grid.values[mask].sum() / total)
