"""symplex: local statistics of simplicial complexes with finite symmetry.

The package computes, exactly wherever an integer or rational is promised:
canonical rooted forms and ball distances, uniform-root neighborhood
measures with mass-transport checks, induction from subgroups, and the
isotypic Laplacian spectra whose kernels carry homology multiplicities.
"""

__version__ = "0.1.0"

from .actions import (
    GroupAction,
    isotypic_projection,
    orbit_type,
    orbits,
    trivial_action,
)
from .canonical import (
    CanonicalCode,
    DoublyRootedGComplex,
    RootedGComplex,
    canonical_code,
    decode_code,
    doubly_rooted_code,
    root_restrict,
    rooted_distance,
    rooted_isomorphic,
    truncate_code,
)
from .complexes import (
    INFINITE,
    Complex,
    ball,
    betti,
    boundary_matrix,
    laplacian,
    path_distance,
    validate_complex,
)
from .cyclotomic import Cyclotomic, CyclotomicField
from .exact import SparseMatrix
from .generators import (
    cycle_reflection,
    cycle_rotation,
    induced_copies,
    prism_rotation,
    random_gcomplex,
    sierpinski,
)
from .groups import (
    CharacterTable,
    Group,
    OrbitType,
    character_table,
    make_group,
    restriction_multiplicities,
    transitive_gsets,
)
from .induction import (
    SubgroupEmbedding,
    induce_complex,
    induce_ensemble,
    induce_rooted,
    induced_criterion_report,
    moved_set,
)
from .measure import (
    EmpiricalMeasure,
    WeightedEnsemble,
    check_unimodular,
    convergence_report,
    empirical_measure,
    tv_distance,
    uniform_root_ensemble,
)
from .spectra import (
    MultiplicityResult,
    SpectralMeasure,
    fk_determinant,
    l2_betti,
    local_moment,
    moment,
    multiplicity,
    reciprocity_check,
    rho_laplacian,
    spectral_measure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
