"""Exact x-homotopy theory of finite graphs with loops."""

from .colimits import disjoint_union, glue, glue_embedding, product, projections, pushout, quotient
from .errors import DisconnectedError, GraphError, PreconditionError, SizeGuardError
from .graph import (
    FoldSequence,
    Graph,
    GraphMap,
    all_maps,
    compose,
    constant_map,
    family,
    identity,
    inclusion,
    is_induced_inclusion,
    is_isomorphic,
    make_graph,
    neighborhood,
)
from .homotopy import (
    Homotopy,
    are_homotopic,
    are_x_equivalent,
    find_fold,
    fold,
    homotopy_class,
    homotopy_inverse,
    is_stiff,
    is_unfold,
    is_x_equivalence,
    relative_fold_sequence,
    stiff_core,
    x_equivalence_witness,
)
from .kernel import backend
from .lifting import (
    HEPClass,
    LiftingSquare,
    edge_vertex_surjectivity,
    find_lift,
    find_retraction,
    has_hep,
    has_llp_against,
    has_rlp_against_unfolds,
    hep_classify,
    in_class_c,
    in_class_f,
    section_of,
    unfolds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
