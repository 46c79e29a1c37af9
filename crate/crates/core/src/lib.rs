//! Edge-treewidth and its sibling layout widths on multigraphs.

pub mod atlas;
mod bitgraph;
pub mod blocks;
pub mod bounds;
pub mod canonical;
pub mod error;
pub mod graph;
pub mod limits;
pub mod reduction;
pub mod rewrite;
pub mod tree_layout;
pub mod width;

pub use blocks::{block_decomposition, Block, BlockDecomposition, BlockKind, BlockTreeNode};
pub use error::{Error, ParseError, ParseErrorKind};
pub use graph::{
    cut_quantities, graph_metrics, parse_graph, serialize_graph, CutQuantities, GraphFormat,
    GraphMetrics, Multigraph, VertexSubset,
};
pub use limits::Limits;
pub use width::{
    cost_profile, decide_at_most, etw, exact_value, layout_width, width_exact, CostKind, Layout,
    Mode, WidthCertificate,
};
pub use tree_layout::{
    block_tree_layout, exact_rooted_solver, layout_to_tree_layout, tree_cost_profile,
    tree_layout_to_layout, validate_tree_layout, TreeCostKind, TreeCostProfile, TreeLayout,
    TreeLayoutVerdict, Violation,
};
pub use canonical::{canonical_code, CanonicalCode};
pub use rewrite::{apply_step, contains, legal_steps, weak_subdivision, Relation, RewriteStep};
pub use atlas::{
    fixed_obstruction_set, generate, minimality_check, universal_p, AntichainSpec, FamilyId,
    UniversalP,
};
pub use bounds::{
    bound_report, is_biconnected, p_block, verify_structural_bounds, BoundReport,
    CompositionBound, RootedBound, StructuralBounds, Verdict,
};
pub use reduction::{
    bisection_layout, min_bisection_exact, reduce_bisection_to_etw, verify_reduction, Bisection,
    EtwInstance, ReductionVerdict,
};
