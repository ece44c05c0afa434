//! Exact linking numbers of polygonal curves in R³ and a linkless-embedding
//! checker for straight-line spatial graphs.
//!
//! Every decision is made with rational arithmetic. General position is found
//! by walking a fixed sequence of cone apexes or projection directions and
//! rejecting any candidate with a degenerate incidence.

mod curve;
mod cycles;
mod embedding;
pub mod geometry;

pub use curve::{
    admissible_apexes, admissible_directions, apex_candidate, coplanar, crossing_sum_along,
    direction_candidate, linking_number_cone, linking_number_cone_with_apex,
    linking_number_crossings, PolygonalCurve, RETRY_BUDGET,
};
pub use cycles::{
    disjoint_cycle_pairs, simple_cycles, Cycle, CyclePairs, CYCLE_CAP, DEFAULT_PAIR_CAP,
};
pub use embedding::{
    is_linkless, pair_linking_numbers, random_embedding, LinkWitness, LinklessReport,
    LinklessStatus, SpatialEmbedding,
};
pub use geometry::{format_rational, parse_rational, RationalPoint3};
