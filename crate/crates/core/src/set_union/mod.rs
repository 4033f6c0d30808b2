//! Set-union mechanisms: two-party fair exchange, the three-party case
//! analysis with an optional Pareto top-up, and the multiparty
//! all-or-nothing mechanism driven by the recursive uniform level `V`.
//!
//! Sets are [`ElemSet`]s whose bit order is the fixed element order π, so
//! every "select some elements" step takes π-prefixes and is deterministic.

mod multiparty;
mod pareto;
mod three_party;
mod two_party;

pub use multiparty::{
    compute_v, multiparty_allocate, multiparty_aon, ComputeVTrace, MultipartyOutcome,
    MAX_COMPUTE_V_PLAYERS,
};
pub use pareto::pareto_repair;
pub use three_party::{
    three_party, three_party_disjoint, three_party_traced, ThreePartyCase, ThreePartyTrace,
};
pub use two_party::two_party;

use crate::error::{structural, Result};
use crate::model::ElemSet;

/// A set-union mechanism viewed as a map from reports to outputs.
pub trait SetMechanism: Sync {
    fn name(&self) -> &'static str;

    /// Whether the mechanism is defined for `n` players.
    fn supports(&self, n: usize) -> bool;

    /// Outputs for `reports`, one per player, in player order.
    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet>;

    /// Like [`SetMechanism::allocate`] with the player count checked.
    fn run(&self, reports: &[ElemSet]) -> Result<Vec<ElemSet>> {
        if !self.supports(reports.len()) {
            return Err(structural(format!(
                "{} is not defined for {} players",
                self.name(),
                reports.len()
            )));
        }
        Ok(self.allocate(reports))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TwoParty;

impl SetMechanism for TwoParty {
    fn name(&self) -> &'static str {
        "two-party"
    }

    fn supports(&self, n: usize) -> bool {
        n == 2
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        two_party(reports[0], reports[1]).to_vec()
    }
}

/// Three-party mechanism, optionally followed by [`pareto_repair`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ThreeParty {
    pub repair: bool,
}

impl SetMechanism for ThreeParty {
    fn name(&self) -> &'static str {
        if self.repair {
            "three-party+pareto-repair"
        } else {
            "three-party"
        }
    }

    fn supports(&self, n: usize) -> bool {
        n == 3
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let y = three_party([reports[0], reports[1], reports[2]]);
        if self.repair {
            pareto_repair(reports, &y)
        } else {
            y.to_vec()
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MultipartyAon;

impl SetMechanism for MultipartyAon {
    fn name(&self) -> &'static str {
        "multiparty-aon"
    }

    fn supports(&self, n: usize) -> bool {
        (1..=crate::model::PlayerSet::CAPACITY).contains(&n)
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        multiparty_allocate(reports)
            .expect("participant count within capacity")
            .outputs
    }

    fn run(&self, reports: &[ElemSet]) -> Result<Vec<ElemSet>> {
        if !self.supports(reports.len()) {
            return Err(structural(format!(
                "multiparty-aon is not defined for {} players",
                reports.len()
            )));
        }
        Ok(multiparty_allocate(reports)?.outputs)
    }
}
