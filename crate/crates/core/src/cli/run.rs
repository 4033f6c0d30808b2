//! `run`: execute one mechanism on one scenario.

use serde::Serialize;

use super::mechanisms::Mechanism;
use super::scenario::{Profile, Scenario};
use crate::average_point::run_point_mechanism;
use crate::error::Result;
use crate::general_mechanism::{coverage_allocate, PhiVector};
use crate::interval_search::{one_dim_search_with, IntervalOutput};
use crate::model::rational::{format_rational, int};
use crate::model::{
    information_benefit, utilities, Allocation, PlayerSet, Rational, SetInstance, StrategyProfile,
};
use crate::set_union::{multiparty_allocate, three_party_traced, ThreePartyCase};
use crate::verifier::{controls::GreedySearch, AonGame};

/// What one player received. `Nothing` is the empty answer (or, for
/// interval search, the unrestricted line).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OutputDoc {
    Set(Vec<String>),
    Interval { lo: String, hi: String },
    Point(String),
    Nothing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalitionValue {
    pub members: Vec<usize>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TraceDoc {
    ComputeV {
        value: u64,
        deficits: Vec<u64>,
        /// Labels of the participants, in the order the trace indexes them.
        participants: Vec<usize>,
        /// Sub-coalitions with their levels; members are player labels.
        coalitions: Vec<CoalitionValue>,
    },
    ThreeParty {
        case: String,
        /// Player labels of local players 1, 2 and 3.
        roles: [usize; 3],
    },
    IntervalPair {
        left: usize,
        right: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub kind: String,
    pub mechanism: String,
    pub version: String,
    pub participants: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<OutputDoc>>,
    pub benefits: Vec<String>,
    pub utilities: Vec<String>,
    pub welfare: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn sum(v: &[Rational]) -> Rational {
    v.iter().fold(int(0), |acc, x| acc + x)
}

fn set_outputs(instance: &SetInstance, outputs: &[crate::model::ElemSet]) -> Vec<OutputDoc> {
    outputs
        .iter()
        .map(|&y| OutputDoc::Set(instance.universe().names(y)))
        .collect()
}

fn case_name(case: ThreePartyCase) -> &'static str {
    match case {
        ThreePartyCase::Case1 => "case-1",
        ThreePartyCase::Case2 => "case-2",
        ThreePartyCase::Case3 => "case-3",
    }
}

/// Runs `mechanism` on `scenario`. Reports are fully deterministic.
pub fn run_scenario(scenario: &Scenario, mechanism: Mechanism) -> Result<RunReport> {
    let n = scenario.players();
    let mut report = RunReport {
        kind: scenario.kind().to_string(),
        mechanism: mechanism.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        participants: Vec::new(),
        outputs: None,
        benefits: Vec::new(),
        utilities: Vec::new(),
        welfare: String::new(),
        trace: None,
    };
    let (participants, benefits): (PlayerSet, Vec<Rational>) = match (scenario, mechanism) {
        (
            Scenario::SetUnion {
                instance, profile, ..
            },
            Mechanism::Set { mechanism, .. },
        ) => {
            let profile = match profile {
                Profile::Truthful => StrategyProfile::truthful(instance),
                Profile::AllOrNothing(p) => StrategyProfile::all_or_nothing(instance, *p),
                Profile::Reports(r) => r.clone(),
            };
            let reports = profile.reports();
            let outputs = mechanism.run(reports)?;
            match mechanism.name() {
                "multiparty-aon" => {
                    let outcome = multiparty_allocate(reports)?;
                    let labels: Vec<usize> = outcome.participants.iter().map(|i| i + 1).collect();
                    let coalitions = outcome
                        .trace
                        .coalition_values
                        .iter()
                        .map(|(members, &value)| CoalitionValue {
                            members: members.iter().map(|p| labels[p]).collect(),
                            value,
                        })
                        .collect();
                    report.trace = Some(TraceDoc::ComputeV {
                        value: outcome.trace.value,
                        deficits: outcome.trace.deficits.clone(),
                        participants: labels,
                        coalitions,
                    });
                }
                "three-party" | "three-party+pareto-repair" => {
                    let (_, trace) = three_party_traced([reports[0], reports[1], reports[2]]);
                    report.trace = Some(TraceDoc::ThreeParty {
                        case: case_name(trace.case).to_string(),
                        roles: trace.roles.map(|r| r + 1),
                    });
                }
                _ => {}
            }
            let alloc = Allocation::new(outputs);
            let v = information_benefit(instance, &profile, &alloc)?;
            report.outputs = Some(set_outputs(instance, &alloc.outputs));
            (
                profile.participants(),
                v.0.iter().map(|&b| int(b)).collect(),
            )
        }
        (
            Scenario::Interval {
                instance,
                participation,
                ..
            },
            Mechanism::Interval { value, greedy, .. },
        ) => {
            let participants = participation.unwrap_or(PlayerSet::all(n));
            let out = one_dim_search_with(instance, participants, value)?;
            report.outputs = Some(
                out.outputs
                    .iter()
                    .map(|o| match o {
                        IntervalOutput::Line => OutputDoc::Nothing,
                        IntervalOutput::Bounded(iv) => OutputDoc::Interval {
                            lo: format_rational(iv.lo()),
                            hi: format_rational(iv.hi()),
                        },
                    })
                    .collect(),
            );
            if let Some((j, k)) = out.pair {
                report.trace = Some(TraceDoc::IntervalPair {
                    left: j + 1,
                    right: k + 1,
                });
            }
            let benefits = if greedy {
                GreedySearch { instance }.benefits(participants)?
            } else {
                out.benefits
            };
            (participants, benefits)
        }
        (
            Scenario::Average {
                instance,
                exponent,
                participation,
                ..
            },
            Mechanism::Point(mechanism),
        ) => {
            let participants = participation.unwrap_or(PlayerSet::all(n));
            let out = run_point_mechanism(mechanism, instance, participants, *exponent)?;
            report.outputs = Some(
                out.outputs
                    .iter()
                    .map(|y| {
                        y.as_ref()
                            .map_or(OutputDoc::Nothing, |y| OutputDoc::Point(format_rational(y)))
                    })
                    .collect(),
            );
            (participants, out.benefits.0)
        }
        (
            Scenario::General {
                value,
                coverage,
                participation,
                ..
            },
            Mechanism::General { name, rule },
        ) => {
            let participants = participation.unwrap_or(PlayerSet::all(n));
            let values = (0..n)
                .map(|i| {
                    if participants.contains(i) {
                        rule(value, participants, i)
                    } else {
                        Ok(int(0))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if let (Some(instance), "general") = (coverage, name) {
                let phi = PhiVector {
                    coalition: participants,
                    values: values.clone(),
                };
                let alloc = coverage_allocate(instance, &phi)?;
                report.outputs = Some(set_outputs(instance, &alloc.outputs));
            }
            (participants, values)
        }
        _ => unreachable!("mechanisms are resolved against the scenario kind"),
    };
    report.participants = participants.iter().map(|i| i + 1).collect();
    report.utilities = rationals(&utilities(&benefits));
    report.welfare = format_rational(&sum(&benefits));
    report.benefits = rationals(&benefits);
    Ok(report)
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}
