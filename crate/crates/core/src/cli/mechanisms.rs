//! Mechanism names accepted on the command line.

use crate::average_point::{Averaging, PointMechanism};
use crate::error::{Error, Result};
use crate::general_mechanism::{phi, SubgroupValueFn};
use crate::interval_search::{LengthValue, LinearValue, ReciprocalValue};
use crate::model::{ElemSet, PlayerSet, Rational};
use crate::set_union::{compute_v, MultipartyAon, SetMechanism, ThreeParty, TwoParty};
use crate::verifier::controls::{
    full_reward, full_sharing_level, index_bonus, EchoFirst, FavorFirst, FullSharing, IndexBiased,
    OwnPoint, ReversedForFirst, ShortchangeLast, SmallestTakesAll,
};
use crate::verifier::RewardRule;

use super::scenario::Scenario;

static TWO: TwoParty = TwoParty;
static THREE: ThreeParty = ThreeParty { repair: false };
static THREE_REPAIRED: ThreeParty = ThreeParty { repair: true };
static MULTI: MultipartyAon = MultipartyAon;
static FAVOR: FavorFirst = FavorFirst;
static BIASED: IndexBiased = IndexBiased;
static REVERSED: ReversedForFirst = ReversedForFirst;
static SHORT: ShortchangeLast = ShortchangeLast;
static SHARING: FullSharing = FullSharing;
static SMALLEST: SmallestTakesAll = SmallestTakesAll;
static LINEAR: LinearValue = LinearValue;
static RECIPROCAL: ReciprocalValue = ReciprocalValue;
static AVERAGING: Averaging = Averaging;
static ECHO: EchoFirst = EchoFirst;
static OWN: OwnPoint = OwnPoint;

pub const SET_MECHANISMS: &[&str] = &[
    "two-party",
    "three-party",
    "multiparty-aon",
    "favor-first",
    "index-biased",
    "reversed-for-first",
    "shortchange-last",
    "full-sharing",
    "smallest-takes-all",
];
pub const INTERVAL_MECHANISMS: &[&str] = &[
    "one-dim-search",
    "one-dim-search-reciprocal",
    "greedy-search",
];
pub const AVERAGE_MECHANISMS: &[&str] = &["average", "echo-first", "own-point"];
pub const GENERAL_MECHANISMS: &[&str] = &["general", "full-reward", "index-bonus"];

#[derive(Clone, Copy)]
pub enum Mechanism {
    Set {
        mechanism: &'static dyn SetMechanism,
        /// The level rule `welfare-v` compares against the oracle.
        level: fn(&[ElemSet]) -> u64,
    },
    Interval {
        name: &'static str,
        value: &'static dyn LengthValue,
        greedy: bool,
    },
    Point(&'static dyn PointMechanism),
    General {
        name: &'static str,
        rule: RewardRule,
    },
}

fn phi_rule(v: &SubgroupValueFn, s: PlayerSet, i: usize) -> Result<Rational> {
    phi(v, s, i)
}

fn level_v(reports: &[ElemSet]) -> u64 {
    compute_v(reports).value
}

fn usage(msg: String) -> Error {
    Error::Config(msg)
}

impl Mechanism {
    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::Set { mechanism, .. } => mechanism.name(),
            Mechanism::Interval { name, .. } | Mechanism::General { name, .. } => name,
            Mechanism::Point(m) => m.name(),
        }
    }

    /// Resolves `name` (or the default for the scenario kind) and checks that
    /// it fits the scenario.
    pub fn resolve(scenario: &Scenario, name: Option<&str>, pareto_repair: bool) -> Result<Self> {
        let kind = scenario.kind();
        let known: &[&str] = match scenario {
            Scenario::SetUnion { .. } => SET_MECHANISMS,
            Scenario::Interval { .. } => INTERVAL_MECHANISMS,
            Scenario::Average { .. } => AVERAGE_MECHANISMS,
            Scenario::General { .. } => GENERAL_MECHANISMS,
        };
        let name = name.unwrap_or(
            known[match scenario {
                Scenario::SetUnion { .. } => 2,
                _ => 0,
            }],
        );
        if !known.contains(&name) {
            return Err(usage(format!(
                "mechanism {name} does not apply to {kind} scenarios (expected one of: {})",
                known.join(", ")
            )));
        }
        if pareto_repair && name != "three-party" {
            return Err(usage(
                "--pareto-repair only applies to three-party".to_string(),
            ));
        }
        let mechanism = match name {
            "two-party" => set(&TWO),
            "three-party" if pareto_repair => set(&THREE_REPAIRED),
            "three-party" => set(&THREE),
            "multiparty-aon" => set(&MULTI),
            "favor-first" => set(&FAVOR),
            "index-biased" => set(&BIASED),
            "reversed-for-first" => set(&REVERSED),
            "shortchange-last" => set(&SHORT),
            "full-sharing" => Mechanism::Set {
                mechanism: &SHARING,
                level: full_sharing_level,
            },
            "smallest-takes-all" => set(&SMALLEST),
            "one-dim-search" => interval("one-dim-search", &LINEAR, false),
            "one-dim-search-reciprocal" => {
                interval("one-dim-search-reciprocal", &RECIPROCAL, false)
            }
            "greedy-search" => interval("greedy-search", &LINEAR, true),
            "average" => Mechanism::Point(&AVERAGING),
            "echo-first" => Mechanism::Point(&ECHO),
            "own-point" => Mechanism::Point(&OWN),
            "general" => Mechanism::General {
                name: "general",
                rule: phi_rule,
            },
            "full-reward" => Mechanism::General {
                name: "full-reward",
                rule: full_reward,
            },
            _ => Mechanism::General {
                name: "index-bonus",
                rule: index_bonus,
            },
        };
        if let Mechanism::Set { mechanism, .. } = mechanism {
            let n = scenario.players();
            if !mechanism.supports(n) {
                return Err(usage(format!("{name} is not defined for {n} players")));
            }
        }
        Ok(mechanism)
    }

    /// The properties the mechanism is meant to satisfy; `--properties all`
    /// expands to these.
    pub fn claimed_properties(&self) -> &'static [&'static str] {
        match self {
            Mechanism::Set { mechanism, .. } => match mechanism.name() {
                "two-party" => &[
                    "truthful-aon",
                    "truthful-subsets",
                    "pareto",
                    "symmetry",
                    "strong-dominance",
                ],
                "three-party" => &["truthful-aon", "truthful-subsets"],
                "three-party+pareto-repair" => &["truthful-aon", "truthful-subsets", "pareto"],
                "smallest-takes-all" => &["truthful-subsets"],
                _ => &[
                    "truthful-aon",
                    "pareto",
                    "welfare-v",
                    "symmetry",
                    "strong-dominance",
                ],
            },
            Mechanism::Interval { .. } => &["truthful-aon", "symmetry"],
            Mechanism::Point(_) => &["truthful-aon", "symmetry", "average-delta"],
            Mechanism::General { .. } => &["truthful-aon", "symmetry", "phi-inequality"],
        }
    }
}

fn set(mechanism: &'static dyn SetMechanism) -> Mechanism {
    Mechanism::Set {
        mechanism,
        level: level_v,
    }
}

fn interval(name: &'static str, value: &'static dyn LengthValue, greedy: bool) -> Mechanism {
    Mechanism::Interval {
        name,
        value,
        greedy,
    }
}

/// Properties that can be checked on a scenario kind at all.
pub fn applicable_properties(kind: &str) -> &'static [&'static str] {
    match kind {
        "set-union" => &[
            "truthful-aon",
            "truthful-subsets",
            "pareto",
            "welfare-v",
            "symmetry",
            "strong-dominance",
        ],
        "interval" => &["truthful-aon", "symmetry"],
        "average" => &["truthful-aon", "symmetry", "average-delta"],
        _ => &["truthful-aon", "symmetry", "phi-inequality"],
    }
}
