//! `verify`: property checks on one scenario or a seeded sweep.

use serde::Serialize;

use super::gen::{generate, GenSpec};
use super::mechanisms::{applicable_properties, Mechanism};
use super::scenario::{Profile, Scenario};
use crate::error::{Error, Result};
use crate::model::{Allocation, StrategyProfile};
use crate::verifier::{
    check_average_delta, check_average_symmetry, check_interval_symmetry, check_pareto,
    check_phi_inequality, check_phi_symmetry, check_strong_dominance, check_symmetry,
    check_truthful_aon, check_truthful_subsets, check_welfare_level, controls::GreedySearch, sweep,
    AverageGame, GeneralGame, IntervalGame, PropertyReport, SetGame, DEFAULT_MAX_UNIVERSE,
};

/// Expands `all` and validates the requested property names for `kind`.
pub fn select_properties(
    requested: &[String],
    kind: &str,
    mechanism: &Mechanism,
) -> Result<Vec<String>> {
    let applicable = applicable_properties(kind);
    let mut out: Vec<String> = Vec::new();
    for name in requested {
        let names: Vec<&str> = if name == "all" {
            mechanism.claimed_properties().to_vec()
        } else if applicable.contains(&name.as_str()) {
            vec![name.as_str()]
        } else {
            return Err(Error::Config(format!(
                "property {name} does not apply to {kind} scenarios (expected all or one of: {})",
                applicable.join(", ")
            )));
        };
        for n in names {
            if !out.iter().any(|o| o == n) {
                out.push(n.to_string());
            }
        }
    }
    Ok(out)
}

/// Checks one property of `mechanism` on `scenario`.
pub fn check_property(
    property: &str,
    scenario: &Scenario,
    mechanism: Mechanism,
) -> Result<PropertyReport> {
    match (scenario, mechanism) {
        (
            Scenario::SetUnion {
                instance, profile, ..
            },
            Mechanism::Set { mechanism, level },
        ) => match property {
            "truthful-aon" => check_truthful_aon(&SetGame {
                instance,
                mechanism,
            }),
            "truthful-subsets" => check_truthful_subsets(mechanism, instance, DEFAULT_MAX_UNIVERSE),
            "pareto" => {
                let profile = match profile {
                    Profile::Truthful => StrategyProfile::truthful(instance),
                    Profile::AllOrNothing(p) => StrategyProfile::all_or_nothing(instance, *p),
                    Profile::Reports(r) => r.clone(),
                };
                let alloc = Allocation::new(mechanism.run(profile.reports())?);
                check_pareto(instance, &profile, &alloc)
            }
            "welfare-v" => {
                let active: Vec<_> = instance
                    .true_sets()
                    .iter()
                    .copied()
                    .filter(|x| !x.is_empty())
                    .collect();
                check_welfare_level(&active, level)
            }
            "symmetry" => check_symmetry(mechanism, instance),
            "strong-dominance" => check_strong_dominance(mechanism, instance),
            _ => Err(not_applicable(property, scenario)),
        },
        (Scenario::Interval { instance, .. }, Mechanism::Interval { value, greedy, .. }) => {
            match property {
                "truthful-aon" if greedy => check_truthful_aon(&GreedySearch { instance }),
                "truthful-aon" => check_truthful_aon(&IntervalGame { instance, value }),
                "symmetry" => check_interval_symmetry(instance, value),
                _ => Err(not_applicable(property, scenario)),
            }
        }
        (
            Scenario::Average {
                instance, exponent, ..
            },
            Mechanism::Point(mechanism),
        ) => match property {
            "truthful-aon" => check_truthful_aon(&AverageGame {
                instance,
                mechanism,
                exponent: *exponent,
            }),
            "symmetry" => check_average_symmetry(instance, mechanism),
            "average-delta" => check_average_delta(instance, mechanism),
            _ => Err(not_applicable(property, scenario)),
        },
        (Scenario::General { value, .. }, Mechanism::General { rule, .. }) => match property {
            "truthful-aon" => check_truthful_aon(&GeneralGame { value, rule }),
            "symmetry" => check_phi_symmetry(value, rule),
            "phi-inequality" => check_phi_inequality(value, rule),
            _ => Err(not_applicable(property, scenario)),
        },
        _ => Err(Error::Config(format!(
            "mechanism {} does not apply to {} scenarios",
            mechanism.name(),
            scenario.kind()
        ))),
    }
}

fn not_applicable(property: &str, scenario: &Scenario) -> Error {
    Error::Config(format!(
        "property {property} does not apply to {} scenarios",
        scenario.kind()
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepDoc {
    pub players: usize,
    pub elements: usize,
    pub first_seed: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub mechanism: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepDoc>,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    /// A violation; under `strict` also any skipped property or instance.
    pub fn violated(&self, strict: bool) -> bool {
        self.properties
            .iter()
            .any(|p| p.failed() || (strict && (!p.passed() || p.note.is_some())))
    }
}

pub fn verify_scenario(
    scenario: &Scenario,
    mechanism: Mechanism,
    properties: &[String],
) -> Result<VerifyReport> {
    let reports = properties
        .iter()
        .map(|p| check_property(p, scenario, mechanism))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        kind: scenario.kind().to_string(),
        mechanism: mechanism.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        sweep: None,
        properties: reports,
    })
}

/// Checks every property on the scenarios generated for seeds
/// `first_seed..first_seed + count`; each property reports its smallest
/// failing seed.
pub fn verify_sweep(
    spec: &GenSpec,
    first_seed: u64,
    count: u64,
    mechanism_name: Option<&str>,
    pareto_repair: bool,
    properties: &[String],
) -> Result<VerifyReport> {
    let end = first_seed
        .checked_add(count)
        .ok_or_else(|| Error::Config("seed range overflows".to_string()))?;
    // resolve once up front so usage errors surface before the sweep
    let probe = generate(spec, first_seed)?;
    let mechanism = Mechanism::resolve(&probe, mechanism_name, pareto_repair)?;
    let selected = select_properties(properties, probe.kind(), &mechanism)?;
    let reports = selected
        .iter()
        .map(|property| {
            sweep(property, first_seed..end, |seed| {
                let scenario = generate(spec, seed)?;
                check_property(property, &scenario, mechanism)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        kind: probe.kind().to_string(),
        mechanism: mechanism.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        sweep: Some(SweepDoc {
            players: spec.players,
            elements: spec.elements,
            first_seed,
            count,
        }),
        properties: reports,
    })
}
