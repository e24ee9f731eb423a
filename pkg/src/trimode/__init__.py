"""Three-mode interacting-boson model: exact spectrum, classical limit,
phase diagram, and the microcavity polariton parameter mapping."""

from .classical import (
    ClassicalParams,
    CriticalPoint,
    CriticalPointSet,
    LevelCurve,
    LevelSet,
    OrbitClass,
    PhasePoint,
    classical_ground_energy,
    classify_energy,
    critical_points,
    energy,
    level_set,
    region_fraction,
    rescale,
    separatrix_thresholds,
)
from .exceptions import (
    ComputationError,
    InvalidParameterError,
    NoMagicAngleError,
    NonConvergenceError,
)
from .groundstate import (
    CriticalEstimate,
    GroundReport,
    ScalingPoint,
    SweepTable,
    coupling_sweep,
    critical_coupling,
    finite_difference,
    finite_size_scaling,
    ground_observables,
    jump_statistics,
)
from .model import (
    BasisState,
    ModelParams,
    TridiagonalHamiltonian,
    apply_hamiltonian,
    build_basis,
    build_hamiltonian,
    dense_oracle,
)
from .phasediagram import (
    PhaseDiagram,
    boundary_curves,
    onset_coupling,
    semiclassical_curves,
)
from .polariton import (
    CouplingTable,
    DetuningSweep,
    EffectiveParams,
    MicrocavityParams,
    ModeSet,
    coupling_table,
    default_microcavity,
    detuning_sweep,
    effective_params,
    hopfield_u,
    load_microcavity_config,
    lp_energy,
    magic_wavevector,
    mode_set,
)
from .spectral import (
    SpacingProfile,
    Spectrum,
    StateLabel,
    classify_states,
    cluster_minima,
    detect_degeneracies,
    diagonalize,
    inflection_energies,
    mode_populations,
    spacings,
)

__version__ = "0.1.0"
