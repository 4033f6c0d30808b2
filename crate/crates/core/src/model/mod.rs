//! Shared domain model: universes, instances, strategy profiles, allocations
//! and the benefit/utility calculus.

mod calculus;
mod elemset;
mod instance;
mod players;
pub mod rational;

pub(crate) use calculus::set_benefits;
pub use calculus::{
    information_benefit, realized_benefit, social_welfare, utilities, utility_of, utility_vector,
    BenefitVector, UtilityVector,
};
pub use elemset::{ElemSet, Ranks, Subsets};
pub(crate) use instance::participants_of;
pub use instance::{Allocation, SetInstance, StrategyProfile, Universe};
pub use players::PlayerSet;
pub use rational::{ExtValue, Rational};
