"""Bisynchronous games, densities, quantum permutations, and their channels.

A bisynchronous game forces equal answers to equal questions and
distinct answers to distinct questions; bisynchronous densities vanish
accordingly.  With equally many inputs and outputs these densities are
exactly the trace pairings of quantum permutations (magic unitaries),
and each one induces a unital channel that factors through the ancilla
of the permutation.  This package provides the data structures,
constructions, and cross-checkable verification routines for that whole
circle of facts at finite ancilla dimension.
"""

from .densities import (
    Density,
    Infeasible,
    PermutationMixture,
    ResponseMixture,
    compose,
    flip_density,
    from_permutation,
    from_response_function,
    is_bisynchronous_density,
    is_nonsignalling,
    is_perfect_for,
    is_synchronous_density,
    local_bisync_membership,
    local_sync_membership,
    mixture,
    mixture_density,
    noncp_nonsignalling_example,
    separation_margins,
    uniform_density,
    validate,
    validation_report,
    z3_counterexample,
)
from .cpmaps import (
    ChoiMap,
    KrausSet,
    adjoint_map,
    apply_map,
    channel_report,
    choi_from_kraus,
    compose_maps,
    density_from_choi,
    fixed_point_set,
    identity_map,
    is_cp,
    is_schur_closed,
    is_tp,
    is_unital,
    kraus_from_choi,
    min_choi_eigenvalue,
    mixed_permutation_map,
    noncp_spectral_margin,
    phi_from_density,
    preserves_J,
    preserves_sigma,
)
from .games import (
    Game,
    Graph,
    bisync_lift,
    complete_graph,
    cycle_graph,
    empty_graph,
    flip_game,
    graph_complement,
    graph_from_edges,
    has_perfect_deterministic,
    hom_game,
    is_bisynchronous,
    is_synchronous,
    iso_game,
    path_graph,
    relabel_graph,
)
from .linalg import (
    DEFAULT_TOL,
    HermEig,
    hermitian_eig,
    is_projection,
    is_psd,
    joint_commutant,
    kron,
)
from .qperm import (
    FixEquivalence,
    PatternPartition,
    ProjectiveSystem,
    QuantumPermutation,
    block_pair,
    commutation_subspace,
    conjugate,
    direct_sum,
    factorizable_apply,
    fix_equivalence_check,
    fixed_pattern_basis,
    from_permutation as quantum_from_permutation,
    induced_density,
    intertwines,
    random_quantum_permutation,
    transpose_system,
    verify_system,
)
from .vect import (
    VectorStrategy,
    density_from_vectors,
    permutation_strategy,
    vect_from_projective,
    verify_bisync_vect,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
