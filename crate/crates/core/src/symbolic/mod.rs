//! Itinerary calculus for pullbacks of the involution image `Δ'` of the Siegel disk `Δ`.
//!
//! Sequences use the alphabet `{0, 1}`: `1` for the half-plane containing `Δ`, `0` for the
//! one containing `Δ'`. `Δ` has itinerary `1_∞` and every `Δ'`-pullback is eventually all
//! ones, written `head1*` (so `Δ'` is `01*`). Periodic points are written `(word)^`.

mod itinerary;
mod plan;
mod string;
mod tree;

pub use itinerary::{intersects, shift, Itinerary, PullbackId, Tail, Word};
pub use plan::{common_prefix, plan_construction, CommonPrefix, ConstructionPlan};
pub use string::{
    basic_length, fragments, string_element, string_of, verify_shift_down, PullbackString,
};
pub use tree::{
    build_tree, build_tree_with_budget, same_intersection_pattern, PullbackTree,
    DEFAULT_MAX_ORDER,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("symbol {0} is not binary")]
    InvalidSymbol(u8),
    #[error("periodic tail needs a nonempty word")]
    EmptyPeriod,
    #[error("{0} is not eventually all ones")]
    NotPullback(String),
    #[error("requested {requested} string elements but the source has only {available} zeros")]
    NotEnoughZeros { requested: usize, available: usize },
    #[error("{0} has no zeros")]
    NoZeros(String),
    #[error("need {needed} string elements, have {available}")]
    NotEnoughElements { needed: usize, available: usize },
    #[error("sources coincide: {0}")]
    IdenticalSources(String),
    #[error("strings share only {m} pullbacks; at least 2 are required")]
    PrefixTooShort { m: usize },
    #[error("order {n} exceeds the budget {max}")]
    BudgetExceeded { n: usize, max: usize },
    #[error("trees have different orders {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
}
