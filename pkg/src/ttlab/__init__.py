"""Train track map analysis: legality structure, Whitehead graphs, Nielsen
path detection, and full-irreducibility certification for graph self-maps
representing free-group outer automorphisms."""

from .errors import (
    GrowthCapError,
    InconclusiveSearchError,
    MalformedMapError,
    MalformedPathError,
    PnpNotVerifiedError,
    PrimitivityError,
    RankMismatchError,
    TtlabError,
)
from .graph import Alphabet, MarkedGraph, infer_graph_structure, inverse_path, reduce_path
from .mapcore import (
    DirectionMap,
    GraphMap,
    TransitionMatrix,
    apply_to_path,
    direction_map,
    is_primitive,
    iterate,
    pf_eigenvalue,
    transition_matrix,
)
from .nielsen import (
    NielsenPathRecord,
    PnpCertificate,
    bounded_pnp_oracle,
    find_ipnps,
    is_pnp_free,
    nielsen_classes,
    verify_record,
)
from .traintrack import (
    GateStructure,
    brute_force_local_injectivity,
    gates,
    global_power_bound,
    illegal_turns,
    is_train_track,
    periodic_directions,
)
from .whitehead import (
    IndexList,
    WhiteheadGraph,
    brute_force_taken_turns,
    ideal_whitehead_graph,
    index_list_general,
    index_list_pnp_free,
    local_whitehead_graph,
    stable_whitehead_graph,
    taken_turns,
)
from .wordops import backend_name

__version__ = "0.1.0"
