"""Fast word problems, Magnus images, grid flows and geodesics for free solvable groups."""

from .abelian_fox import (
    AbelianDerivativeMap,
    AbelianRingElement,
    derivative_as_ring_element,
    fox_abelian,
    wp_metabelian,
)
from .flows import (
    GridFlow,
    flow_equal,
    flow_to_path,
    is_circulation,
    net_flow,
    path_flow,
)
from .geodesic import (
    Forest,
    GeodesicResult,
    SupportGraph,
    UndecidedError,
    bglp,
    euler_word,
    geodesic,
    geodesic_length,
    minimal_forest,
    support_components,
)
from .magnus import MagnusImage, magnus_image, magnus_is_identity, magnus_multiply
from .rstp import rstp_decide, rstp_encode
from .solvable import (
    PartitionFunction,
    PrefixSet,
    SolvableRingElement,
    abelian_partition,
    collect_similar_terms,
    derivative_difference_is_zero,
    fox_solvable,
    partition,
    prefix_set,
    wp_solvable,
)
from .steiner import ExactLimitError, SteinerResult, steiner_size, steiner_tree
from .words import (
    Word,
    WordError,
    abelianize,
    concat,
    format_word,
    free_reduce,
    invert,
    parse_word,
)

__all__ = [name for name in dir() if not name.startswith("_")]
