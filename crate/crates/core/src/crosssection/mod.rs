//! Cross sections, Kirwan maps, cross-sectional integrals, τ-expansions,
//! flip-flop maps and constructive Kirwan preimages.

mod membership;
mod section;
mod sweep;
mod tau;

pub use membership::{hc_membership, membership_oracle, necessary_generators, Membership};
pub use section::{
    canonical_levels, cross_integral, cross_section, kirwan_map, level_above, level_below, residue_side, CrossSectionClass,
    CrossSectionData,
};
pub use sweep::{flip_flop, kirwan_preimage, lift_upward, restrict, Direction, FlipFlop, Side};
pub use tau::{expand_in_tau, TauExpansion};

use alloc::string::String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CrossError {
    #[error("level {level} equals phi({vertex})")]
    Critical { level: String, vertex: String },
    #[error("tau is not injective on the set")]
    NotInjective,
    #[error("values do not lie in H(Delta, tau): coefficient of x^{index} is {witness}")]
    NonMember { index: usize, witness: String },
    #[error("expansion at {vertex} failed: {source}")]
    Crossing { vertex: String, source: alloc::boxed::Box<CrossError> },
    #[error("no vertex adjacent to the level on the {0} side")]
    NoAdjacentVertex(&'static str),
    #[error("class has {0} values, cross section has {1} edges")]
    Arity(usize, usize),
    #[error("assembled preimage is not a class: {0}")]
    ClassCheck(String),
    #[error("assembled preimage does not map back to the input")]
    RoundTrip,
}
