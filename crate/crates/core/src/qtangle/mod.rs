//! Links presented as words in elementary q-tangles, and their evaluation.

mod checks;
pub mod corpus;
mod generators;
mod horizontal;
mod link;
mod tangle;
mod tree;
mod word;

pub use checks::{hexagon_holds, pentagon_holds, HEXAGONS};
pub use generators::{
    associator, associator_with_sign, cabled_associator, cap_value, crossing_ladder, crossing_value, cup_value,
    generator_value, nu_interval, pad as pad_slice, sqrt_nu_interval, t_chord, ASSOCIATOR_SIGN, MAX_ASSOCIATOR_DEGREE,
};
pub use horizontal::braid_equal;
pub use link::{evaluate, evaluate_range, integrate, linking_matrix, max_truncation, LinkPresentation};
pub use tangle::{Component, Dir, Endpoint, Skeleton, TangleDiagramSum, TangleKey};
pub use tree::{trace_from, validate, Boundary, BoundaryTree, SliceAction};
pub use word::{Generator, QTangleWord, Sign, Slice, Turn};
