"""Two-copy Hong-Ou-Mandel swap measurement, simulated at state-vector level.

Protocol: two N-particle two-mode copies a and b are prepared in states
psi and phi, a 50:50 beam splitter mixes mode pairs (a1, b1) and (a2, b2),
and the occupations of copy b are read out.  Equal parity of (n_b1, n_b2)
signals swap eigenvalue +1, so the parity average estimates the swap
expectation <V> = |<psi|phi>|^2.

Representation.  Before mixing, the joint state lives on (n_a1, n_b1) with
the partner occupations fixed by the per-copy totals.  Mixing conserves
K = n_a1 + n_b1 per pair, but moves particles between the copies, so the
post-mix state is stored per K sector as a (K+1) x (2N-K+1) block indexed
by the a-mode occupations (n_a1', n_a2'); the b occupations follow from the
sector totals.  Parity bookkeeping marginalizes the a modes.

The 50:50 table on an n-particle pair is the Fock representation of the
mode map a -> (a+b)/sqrt(2), b -> (a-b)/sqrt(2).  That map equals
exp(i pi (h - 1)/2) for the idempotent single-particle mixer h, so the
sector table is (-i)^n exp(i pi T_n / 2) with T_n the tridiagonal second
quantization of h; diagonalizing T_n keeps the construction orthogonal to
~1e-13 up to a few thousand particles (naive column recursions blow up).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError, ResourceLimitError, StateValidationError

__all__ = [
    "CompositeState",
    "PostMixState",
    "BeamSplitterTable",
    "ParityShot",
    "EstimatorResult",
    "compose",
    "beamsplitter_table",
    "apply_hom",
    "parity_distribution",
    "outcome_distribution",
    "parity_value",
    "sample_shots",
    "swap_expectation_exact",
    "swap_via_parity",
]

DEFAULT_SIZE_BOUND = 256

_NORM_TOL = 1e-12

# sector tables are immutable; cache the small ones (repeated time samples
# re-mix the same sector sizes), build large ones on demand to bound memory
_TABLE_CACHE_MAX = 160
_table_cache = {}


@dataclass(frozen=True)
class CompositeState:
    """Pre-mixing product state on (n_a1, n_b1); each copy holds N bosons."""

    params: object
    amplitudes: np.ndarray = field(repr=False)  # (N+1, N+1)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        d = self.params.dim
        if amp.shape != (d, d):
            raise StateValidationError(f"amplitude shape {amp.shape} != ({d}, {d})")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise StateValidationError(f"composite norm^2 = {norm2!r} is not 1")
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True)
class PostMixState:
    """Post-mixing state, block per conserved pair-1 total K.

    blocks[K][x, y] is the amplitude of the outcome with x particles in
    a1, K - x in b1, y in a2, and 2N - K - y in b2.
    """

    params: object
    blocks: tuple = field(repr=False)

    def norm(self):
        return float(np.sqrt(sum(np.sum(np.abs(b) ** 2) for b in self.blocks)))


@dataclass(frozen=True)
class BeamSplitterTable:
    """Orthogonal sector table M[k', k] = <k', n-k'|U|k, n-k>."""

    n_total: int
    coefficients: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class ParityShot:
    n_b1: int
    n_b2: int
    v: int

    def __post_init__(self):
        expected = 1 if (self.n_b1 % 2) == (self.n_b2 % 2) else -1
        if self.v != expected:
            raise StateValidationError(f"v={self.v} inconsistent with parities")


@dataclass(frozen=True)
class EstimatorResult:
    mean: float
    std_error: float
    shots: int
    seed: int


def compose(state_a, state_b):
    """Tensor product of two Fock-basis copies prepared independently."""
    if state_a.params != state_b.params:
        raise DomainError("copies must share the same model parameters")
    amp = np.outer(state_a.amplitudes, state_b.amplitudes)
    return CompositeState(state_a.params, amp)


def beamsplitter_table(n_total):
    """50:50 table for a mode pair carrying n_total particles in total."""
    if n_total < 0:
        raise DomainError(f"n_total must be >= 0, got {n_total}")
    cached = _table_cache.get(n_total)
    if cached is not None:
        return cached
    if n_total == 0:
        table = BeamSplitterTable(0, np.array([[1.0]]))
    else:
        k = np.arange(n_total + 1, dtype=float)
        diag = (2.0 * k - n_total) / np.sqrt(2.0)
        off = np.sqrt((k[:-1] + 1.0) * (n_total - k[:-1])) / np.sqrt(2.0)
        lam, vecs = eigh_tridiagonal(diag, off)
        mat = (vecs * np.exp(1j * np.pi / 2.0 * lam)) @ vecs.T
        mat = ((-1j) ** n_total * mat).real.copy()
        mat.setflags(write=False)
        table = BeamSplitterTable(n_total, mat)
    if n_total <= _TABLE_CACHE_MAX:
        _table_cache[n_total] = table
    return table


def apply_hom(state, size_bound=DEFAULT_SIZE_BOUND):
    """Mix both mode pairs with 50:50 beam splitters, sector by sector.

    Each pair-1 sector K couples only to the pair-2 sector 2N - K; the two
    sector tables are built once per (K, 2N-K) pair and reused for the
    mirror sector, keeping peak memory at two tables.
    """
    params = state.params
    n = params.n_particles
    if n > size_bound:
        raise ResourceLimitError(
            f"N={n} exceeds the exact-composite size bound {size_bound}; "
            "raise size_bound explicitly if you accept the cost")
    psi = state.amplitudes
    blocks = [None] * (2 * n + 1)

    def mix_sector(k, table_k, table_mk):
        lo, hi = max(0, k - n), min(n, k)
        na1 = np.arange(lo, hi + 1)
        v = psi[na1, k - na1]
        if not np.any(v):
            return np.zeros((k + 1, 2 * n - k + 1), dtype=complex)
        left = table_k[:, na1] * v          # (k+1, support), complex
        right = table_mk[:, n - na1]        # (2n-k+1, support)
        return left @ right.T

    for k in range(0, n + 1):
        mk = 2 * n - k
        tab_k = beamsplitter_table(k).coefficients
        tab_mk = tab_k if mk == k else beamsplitter_table(mk).coefficients
        blocks[k] = mix_sector(k, tab_k, tab_mk)
        if mk != k:
            blocks[mk] = mix_sector(mk, tab_mk, tab_k)
    return PostMixState(params, tuple(blocks))


def parity_value(n_b1, n_b2):
    """+1 when the two copy-b occupations share parity, else -1."""
    return 1 if (n_b1 % 2) == (n_b2 % 2) else -1


def parity_distribution(state):
    """Probability of reading equal parities on copy b after mixing.

    In sector K the b occupations are (K - x, 2N - K - y), and 2N is even,
    so equal parity is exactly the condition that x + y is even.
    """
    p_plus = 0.0
    for k, block in enumerate(state.blocks):
        prob = np.abs(block) ** 2
        x = np.arange(block.shape[0])[:, None]
        y = np.arange(block.shape[1])[None, :]
        p_plus += float(prob[(x + y) % 2 == 0].sum())
    return p_plus


def outcome_distribution(state):
    """Joint probability table P[n_b1, n_b2] of the copy-b readout."""
    n = state.params.n_particles
    table = np.zeros((2 * n + 1, 2 * n + 1))
    for k, block in enumerate(state.blocks):
        prob = np.abs(block) ** 2
        nb1 = k - np.arange(block.shape[0])
        nb2 = (2 * n - k) - np.arange(block.shape[1])
        table[np.ix_(nb1, nb2)] += prob
    return table


def _splitmix64(seed, index):
    """Counter-based uniform stream: one double from hash(seed, index)."""
    z = (np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15) * (index + np.uint64(1)))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return z.astype(np.float64) / 18446744073709551616.0


def sample_shots(state, shots, seed):
    """Monte Carlo parity readout of a post-mix state.

    Outcomes are drawn by inverse CDF over the flattened readout table with
    a counter-based stream hash(seed, shot_index), so any partition of the
    shot range over workers reproduces the same draws.
    """
    if shots < 1:
        raise DomainError(f"shots must be >= 1, got {shots}")
    table = outcome_distribution(state)
    flat = table.ravel()
    total = flat.sum()
    cdf = np.cumsum(flat / total)
    idx = np.arange(shots, dtype=np.uint64)
    u = _splitmix64(int(seed) & 0xFFFFFFFFFFFFFFFF, idx)
    picks = np.searchsorted(cdf, u, side="right")
    picks = np.minimum(picks, len(flat) - 1)
    nb1, nb2 = np.unravel_index(picks, table.shape)
    v = np.where((nb1 % 2) == (nb2 % 2), 1.0, -1.0)
    mean = float(v.mean())
    if shots > 1:
        stderr = float(np.sqrt(max(0.0, (1.0 - mean**2)) / (shots - 1)))
    else:
        stderr = 0.0
    return EstimatorResult(mean, stderr, int(shots), int(seed))


def swap_expectation_exact(state_a, state_b):
    """|<psi_a|psi_b>|^2 straight from the amplitudes."""
    if state_a.params != state_b.params:
        raise DomainError("copies must share the same model parameters")
    return float(abs(np.vdot(state_a.amplitudes, state_b.amplitudes)) ** 2)


def swap_via_parity(state_a, state_b, size_bound=DEFAULT_SIZE_BOUND):
    """<V> = 2 P(+1) - 1 through the full mixing + parity pipeline."""
    mixed = apply_hom(compose(state_a, state_b), size_bound=size_bound)
    return 2.0 * parity_distribution(mixed) - 1.0
