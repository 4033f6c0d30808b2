//! Exhaustive property checkers. Each returns a [`PropertyReport`] whose
//! counterexample, if any, can be fed back to the matching `replay_*`
//! function to reproduce the violation.

mod aon;
pub mod controls;
mod families;
pub mod generate;
mod report;
mod sets;

use std::ops::Range;

use rayon::prelude::*;

pub use aon::{
    check_truthful_aon, replay_participation, AonGame, AverageGame, GeneralGame, IntervalGame,
    RewardRule, SetGame, MAX_AON_PLAYERS,
};
pub use families::{
    check_average_delta, check_average_symmetry, check_interval_symmetry, check_phi_inequality,
    check_phi_symmetry, equivalent_in, interval_exchange_violation, replay_contribution,
    replay_delta, MAX_PHI_PLAYERS,
};
pub use report::{Counterexample, PropertyReport, Verdict};
pub use sets::{
    check_pareto, check_strong_dominance, check_symmetry, check_truthful_subsets,
    check_welfare_level, check_welfare_optimal_v, oracle_level, pareto_dominator,
    pareto_structure_violation, pools, replay_dominance, replay_hiding, replay_pareto,
    replay_symmetry, DEFAULT_MAX_UNIVERSE, MAX_PROFILE_PLAYERS, PARETO_ORACLE_MAX_PLAYERS,
    PARETO_ORACLE_MAX_POOL, WELFARE_MAX_PLAYERS, WELFARE_MAX_UNIVERSE,
};

use crate::error::Result;

/// Runs `check` for every seed in parallel and merges the reports in seed
/// order.
pub fn sweep<F>(property: &str, seeds: Range<u64>, check: F) -> Result<PropertyReport>
where
    F: Fn(u64) -> Result<PropertyReport> + Sync + Send,
{
    let parts = seeds
        .into_par_iter()
        .map(|seed| check(seed).map(|report| (seed, report)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport::merge(property, parts))
}
