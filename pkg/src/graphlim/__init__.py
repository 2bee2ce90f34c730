"""Exact homomorphism densities for step graphons and finite graphs,
twin reduction and weak-isomorphism certificates, kernel spectra, and
seeded W-random sampling."""

from .density import (
    MAX_EXACT_BLOCKS,
    MAX_MOTIF_NODES,
    DensityValue,
    anchored_density,
    density_exact,
    density_graph,
    density_mc,
    mixed_moment,
    product_identity_check,
)
from .graphons import (
    BlackBoxKernel,
    StepGraphon,
    affine_rescale,
    blowup,
    block_of,
    constant,
    evaluate,
    from_graph,
    parse_graphon,
    serialize_graphon,
    step_graphon,
    validate,
)
from .graphs import (
    MAX_ENUM_NODES,
    GraphParseError,
    LabeledMultigraph,
    are_isomorphic,
    edge_power,
    enumerate_simple_graphs,
    multigraph,
    parse_graph,
    product,
    serialize_graph,
    star_multigraph,
    subdivide_edge,
    unlabel,
)
from .reduction import (
    BlockPartition,
    CouplingMatrix,
    WeakIsoVerdict,
    anchor_tags,
    anchored_quotient,
    build_coupling,
    common_quotient,
    find_distinguishing_graph,
    parse_coupling,
    quotient,
    random_anchors,
    render_verdict,
    serialize_coupling,
    twin_partition,
    twin_reduce,
    weak_iso,
)
from .sampling import (
    ConvergenceReport,
    SizeStats,
    convergence_experiment,
    describe_graph,
    sample_wrandom,
    to_csv,
)
from .spectral import (
    MultigraphCheckReport,
    Spectrum,
    cycle_density_spectral,
    eigendecompose,
    kernel_matrix,
    multigraph_from_simple_check,
    path_operator_entry,
    render_report,
)

__version__ = "0.1.0"

__all__ = [
    "BlackBoxKernel",
    "BlockPartition",
    "ConvergenceReport",
    "CouplingMatrix",
    "DensityValue",
    "GraphParseError",
    "LabeledMultigraph",
    "MAX_ENUM_NODES",
    "MAX_EXACT_BLOCKS",
    "MAX_MOTIF_NODES",
    "MultigraphCheckReport",
    "SizeStats",
    "Spectrum",
    "StepGraphon",
    "WeakIsoVerdict",
    "affine_rescale",
    "anchor_tags",
    "anchored_density",
    "anchored_quotient",
    "are_isomorphic",
    "blowup",
    "block_of",
    "build_coupling",
    "common_quotient",
    "constant",
    "convergence_experiment",
    "cycle_density_spectral",
    "density_exact",
    "density_graph",
    "density_mc",
    "describe_graph",
    "edge_power",
    "eigendecompose",
    "enumerate_simple_graphs",
    "evaluate",
    "find_distinguishing_graph",
    "from_graph",
    "kernel_matrix",
    "mixed_moment",
    "multigraph",
    "multigraph_from_simple_check",
    "parse_coupling",
    "parse_graph",
    "parse_graphon",
    "path_operator_entry",
    "product",
    "product_identity_check",
    "quotient",
    "random_anchors",
    "render_report",
    "render_verdict",
    "sample_wrandom",
    "serialize_coupling",
    "serialize_graph",
    "serialize_graphon",
    "star_multigraph",
    "step_graphon",
    "subdivide_edge",
    "to_csv",
    "twin_partition",
    "twin_reduce",
    "unlabel",
    "validate",
    "weak_iso",
]
