"""Two-boson quantum walks on a Bose-Hubbard ring."""

from .lattice import (
    LatticeConfig,
    SymmetrizedBasis,
    HamiltonianMatrix,
    TwoParticleState,
    SymmetryOperator,
    build_basis,
    build_hamiltonian,
    apply_symmetry,
    number_state,
)
from .spectrum import (
    SpectralDecomposition,
    BandStructure,
    RadialProfile,
    diagonalize,
    solve,
    assign_quasimomenta,
    radial_wavefunction,
    spectrum_deviation,
)
from .dynamics import (
    StateSpec,
    CorrelationMap,
    DensityProfile,
    prepare_state,
    evolve,
    evolve_series,
    site_density,
    correlation_map,
    normalize_correlations,
)
from .entanglement import (
    Bipartition,
    EntanglementRecord,
    project_sectors,
    reduced_density,
    entanglement_of_particles,
)
from .projections import (
    eigenprojections,
    projection_profile,
    coefficient_table,
    delta_of_v,
)
from .symmetry import (
    ObservableMatrix,
    check_boost_relation,
    check_invariance_theorem,
    check_correlation_mirror,
    density_observables,
    correlation_observables,
)

__version__ = "0.1.0"
