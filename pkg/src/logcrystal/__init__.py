"""Two-mode boson (LMG) time-crystal simulator.

Exact spectra and quasi-degenerate manifolds of the collective-spin model
H' = -S_x + (2 gamma / N) S_x^2, construction of slow superposition states
whose survival overlap oscillates with period ~ (pi/gamma) log N, the
classical landscape / phase-space correspondence, and a full state-vector
simulation of the two-copy Hong-Ou-Mandel swap measurement that reads the
overlap out of particle-number parities.
"""

__version__ = "0.1.0"

from .core import (
    ModelParams,
    Spectrum,
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
from .dynamics import (
    EnvelopeParams,
    OverlapSeries,
    evolve_phase,
    extract_period,
    overlap_closed_form,
    overlap_exact,
    overlap_series,
    sz_correlation_brute,
    sz_correlation_closed_form,
)
from .hom import (
    BeamSplitterTable,
    CompositeState,
    EstimatorResult,
    ParityShot,
    PostMixState,
    apply_hom,
    beamsplitter_table,
    compose,
    outcome_distribution,
    parity_distribution,
    parity_value,
    sample_shots,
    swap_expectation_exact,
    swap_via_parity,
)
from .meanfield import (
    LandscapeGrid,
    PhasePoint,
    classical_energy,
    landscape_grid,
    locus_reach,
    minimum_locus,
)
from .phasespace import HusimiGrid, coherent_state, husimi, locus_concentration
from .states import (
    BasisTransform,
    FockBasisState,
    SxBasisState,
    double_gaussian_state,
    sx_eigenbasis,
    to_fock,
    to_sx,
    two_level_state,
)
