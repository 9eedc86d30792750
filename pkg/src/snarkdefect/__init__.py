"""Exact colouring-defect and Fulkerson-cover computations for
bridgeless cubic graphs and multipoles."""

from .graph_core import (
    ConnectorError,
    CubicGraph,
    EXCEEDS_LIMIT,
    EndRef,
    FormatError,
    GraphError,
    Multipole,
    NotCubicError,
    SizeGateError,
    WiringError,
    WiringSpec,
    bipartite_double,
    bridges,
    canonical_form,
    connected_components,
    cyclic_edge_connectivity,
    girth,
    is_connected,
    is_bipartite,
    is_bridgeless,
    is_isomorphic,
    is_two_connected,
    junction,
    parse_edge_list,
    parse_graph6,
    remove_vertices,
    write_edge_list,
    write_graph6,
)
from .colouring import (
    COLOURS,
    ParityReport,
    check_colouring,
    colour_classes,
    enumerate_colourings,
    enumerate_perfect_matchings,
    is_perfect_matching,
    is_snark,
    oddness,
    three_edge_colour,
    two_factor_circuits,
    verify_parity,
)
from .defect_engine import (
    BudgetError,
    CUBIC_SUBDIVISION,
    Core,
    CoreComponent,
    CoverageProfile,
    DefectResult,
    EVEN_ALTERNATING_CIRCUIT,
    NONE_FOUND,
    SearchBudget,
    ThreeArray,
    UNKNOWN,
    check_girth_bound,
    core_of,
    coverage,
    defect,
    enumerate_optimal_arrays,
    is_induced_circuit,
    regular_defect,
    verify_corollary_rdf3,
)
from .fano_flow import (
    CharacteristicFlow,
    FanoPoint,
    FlowCheck,
    IrregularArrayError,
    characteristic_flow,
    fano_lines,
    four_line_catalogue,
    verify_flow,
)
from .fulkerson import (
    ComplementaryPair,
    CoverCheck,
    FulkersonCover,
    GroupFlow,
    check_complementary,
    complementary_to_flows,
    cover_to_complementary,
    find_cover,
    flows_to_cover,
    nz_4flow,
    verify_cover,
    verify_group_flow,
)
from .constructions import (
    find_non_removable_5cycles,
    find_non_removable_pairs,
    five_circuits,
    flower_snark,
    identity_wiring,
    inflate_pair_theorem_check,
    inflate_to_triangle,
    petersen,
    remove_path2,
    superpose,
    trivial_dipole,
    trivial_tripole,
    z_pole,
)

__version__ = "0.1.0"
