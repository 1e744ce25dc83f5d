"""evasilab: exact analysis of the edge-probing game on small graph properties.

Bob probes vertex pairs of a hidden n-vertex graph (n <= 6) and wants to
decide a fixed isomorphism-closed property; Alice answers adversarially.
The package enumerates canonical graphs and game positions, solves the
game exactly, classifies whole property spaces by exhaustive sweep, and
lets a human play either side against optimal engine opponents.
"""

from .graphs import (
    ClassTable,
    LabeledGraph,
    aut_order,
    canonical_code,
    class_of,
    complement_graph,
    edge_endpoints,
    edge_index,
    enumerate_classes,
    num_edges,
)
from .positions import (
    ABSENT,
    PRESENT,
    VERDICT_IN,
    VERDICT_OUT,
    VERDICT_UNDETERMINED,
    Position,
    PositionTable,
    build_position_table,
    canonical_position,
    child,
    decided_for,
    position_complement,
    reachable_classes,
)
from .properties import (
    BUILTIN_NAMES,
    ClassOrder,
    Property,
    builtin,
    class_order,
    graph_complement_image,
    is_complement_closed,
    is_monotone,
    labeled_parity,
    parse_property,
    random_monotone,
    set_complement,
)
from .scanner import (
    Finding,
    ScanOptions,
    ScanReport,
    scan_complement_closed,
    scan_full,
    scan_sample,
)
from .solver import (
    SolveReport,
    StrategyLeaf,
    StrategyNode,
    adversary_answer,
    best_move,
    extract_strategy,
    is_evasive,
    play_engine_game,
    replay_verify,
    solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
