"""Cartesian factorization and pseudofactorization of weighted graphs."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    ContractViolation,
    DecompositionFormatError,
    DisconnectedGraphError,
    DistanceOverflowError,
    GraphError,
    GraphTooLargeError,
    InvalidEmbeddingError,
    InvalidGraphError,
    InvariantError,
    MalformedProductEdgeError,
    NonMinimalGraphError,
    NotSpanningTreeError,
    SharedEndpointError,
    VerificationError,
    WeightMismatchError,
)
from .graph import (
    DistanceMatrix,
    ProductDistances,
    WeightedGraph,
    apsp,
    cartesian_product,
    graphs_isomorphic,
    is_isometric_subgraph,
    is_minimal,
    minimalize,
    parent_edge,
    product_coordinates,
    product_vertex,
)
from .relations import (
    EdgeRelationGraph,
    EquivalenceClasses,
    build_relation_graph,
    check_spanning_tree,
    class_path_sum,
    equivalence_classes,
    explain,
    factor_classes,
    satisfies_square_property,
    tau_related,
    theta_classes,
    theta_difference,
    theta_related,
    theta_t_related,
)
from .decompose import (
    Decomposition,
    decompose_over,
    factor_multiset_isomorphic,
    factorize,
    is_irreducible,
    is_prime,
    pseudofactorize,
    verify_decomposition,
)
from .treefast import TreeState, find_theta_tree, run_theta_tree
from .embed import (
    CanonicalPartition,
    HammingEmbedding,
    canonical_partition,
    compose_from_pseudofactors,
    count_hypercube_embeddings,
    embeddings_equivalent,
    enumerate_hypercube_embeddings,
    hypercube_embed_bruteforce,
)
