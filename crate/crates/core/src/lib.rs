//! Exact information-exchange mechanisms for agents that value both learning
//! and exclusivity, plus an exhaustive checker for their incentive and
//! fairness properties.
//!
//! Every player `i` reports some information `x_i`, a trusted mediator returns a
//! customized output `y_i`, and the player's utility is its own information
//! benefit minus the largest benefit obtained by anybody else. The crate covers
//! set union (two, three and any number of players), one-dimensional search,
//! point averaging, and a general mechanism over an arbitrary monotone
//! coalition value function. All arithmetic is exact.

pub mod average_point;
pub mod cli;
pub mod error;
pub mod general_mechanism;
pub mod interval_search;
pub mod model;
pub mod set_union;
pub mod verifier;

pub use error::{Error, Result};
