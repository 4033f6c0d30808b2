//! Scenario documents: JSON text with rationals as `"p/q"` strings and the
//! universe listing doubling as the element order π.

use serde::{Deserialize, Serialize};

use crate::average_point::{LossExponent, PointInstance};
use crate::error::{structural, Error, Result};
use crate::general_mechanism::{make_coverage_value, SubgroupValueFn};
use crate::interval_search::{Interval, IntervalInstance};
use crate::model::rational::{format_rational, parse_rational};
use crate::model::{PlayerSet, Rational, SetInstance, StrategyProfile, Universe};

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scenario {
    SetUnion {
        instance: SetInstance,
        profile: Profile,
        seed: Option<u64>,
    },
    Interval {
        instance: IntervalInstance,
        participation: Option<PlayerSet>,
        seed: Option<u64>,
    },
    Average {
        instance: PointInstance,
        exponent: LossExponent,
        participation: Option<PlayerSet>,
        seed: Option<u64>,
    },
    General {
        value: SubgroupValueFn,
        /// The set instance a coverage table was built from.
        coverage: Option<SetInstance>,
        participation: Option<PlayerSet>,
        seed: Option<u64>,
    },
}

/// Which reports the set-union players submit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    Truthful,
    AllOrNothing(PlayerSet),
    Reports(StrategyProfile),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::SetUnion { .. } => "set-union",
            Scenario::Interval { .. } => "interval",
            Scenario::Average { .. } => "average",
            Scenario::General { .. } => "general",
        }
    }

    pub fn players(&self) -> usize {
        match self {
            Scenario::SetUnion { instance, .. } => instance.players(),
            Scenario::Interval { instance, .. } => instance.players(),
            Scenario::Average { instance, .. } => instance.players(),
            Scenario::General { value, .. } => value.players(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn of(r: &Rational) -> Self {
        Number::Text(format_rational(r))
    }

    fn parse(&self, location: &str) -> Result<Rational> {
        match self {
            Number::Int(n) => Ok(Rational::from_integer((*n).into())),
            Number::Text(text) => parse_rational(text).map_err(|e| at(location, e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Document {
    SetUnion {
        universe: Vec<String>,
        sets: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        participation: Option<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reports: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Interval {
        target: Number,
        intervals: Vec<[Number; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        participation: Option<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Average {
        points: Vec<Number>,
        #[serde(default = "default_exponent")]
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        participation: Option<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    General {
        players: usize,
        value: ValueDocument,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        participation: Option<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

fn default_exponent() -> u32 {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
enum ValueDocument {
    /// `V(S) = |∪_{i ∈ S} S_i|`.
    Coverage {
        universe: Vec<String>,
        sets: Vec<Vec<String>>,
    },
    /// Values of all coalitions in bitmask order: entry `b` is the coalition
    /// of the players whose bit is set in `b` (player 1 is bit 0).
    Table(Vec<Number>),
}

/// Prefixes a validation error with the document position it concerns.
fn at(location: &str, err: Error) -> Error {
    match err {
        Error::Structural(m) => Error::Structural(format!("{location}: {m}")),
        Error::Capacity(m) => Error::Capacity(format!("{location}: {m}")),
        Error::Config(m) => Error::Config(format!("{location}: {m}")),
        Error::Parse {
            location: inner,
            message,
        } => Error::Parse {
            location: format!("{location} ({inner})"),
            message,
        },
    }
}

fn participation(flags: &Option<Vec<bool>>, n: usize) -> Result<Option<PlayerSet>> {
    match flags {
        None => Ok(None),
        Some(f) if f.len() != n => Err(structural(format!(
            "participation: {} flags for {n} players",
            f.len()
        ))),
        Some(f) => Ok(Some(PlayerSet::from_flags(f))),
    }
}

fn set_instance(universe: &[String], sets: &[Vec<String>], location: &str) -> Result<SetInstance> {
    let u = Universe::new(universe.iter().cloned())
        .map_err(|e| at(&format!("{location}universe"), e))?;
    if sets.is_empty() {
        return Err(structural(format!(
            "{location}sets: at least one player is required"
        )));
    }
    let mut true_sets = Vec::with_capacity(sets.len());
    for (i, names) in sets.iter().enumerate() {
        true_sets.push(
            u.set(names)
                .map_err(|e| at(&format!("{location}sets[{i}]"), e))?,
        );
    }
    SetInstance::new(u, true_sets).map_err(|e| at(&format!("{location}sets"), e))
}

fn check_bound(location: &str, n: usize) -> Result<()> {
    if n > PlayerSet::CAPACITY {
        return Err(Error::Capacity(format!(
            "{location}: {n} players, at most {} supported",
            PlayerSet::CAPACITY
        )));
    }
    Ok(())
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    match doc {
        Document::SetUnion {
            universe,
            sets,
            participation: flags,
            reports,
            seed,
        } => {
            check_bound("sets", sets.len())?;
            let instance = set_instance(&universe, &sets, "")?;
            let n = instance.players();
            let profile = match (participation(&flags, n)?, reports) {
                (Some(_), Some(_)) => {
                    return Err(structural(
                        "participation and reports are mutually exclusive",
                    ))
                }
                (Some(p), None) => Profile::AllOrNothing(p),
                (None, Some(reports)) => {
                    if reports.len() != n {
                        return Err(structural(format!(
                            "reports: {} reports for {n} players",
                            reports.len()
                        )));
                    }
                    let mut sets = Vec::with_capacity(n);
                    for (i, names) in reports.iter().enumerate() {
                        sets.push(
                            instance
                                .universe()
                                .set(names)
                                .map_err(|e| at(&format!("reports[{i}]"), e))?,
                        );
                    }
                    Profile::Reports(
                        StrategyProfile::new(&instance, sets).map_err(|e| at("reports", e))?,
                    )
                }
                (None, None) => Profile::Truthful,
            };
            Ok(Scenario::SetUnion {
                instance,
                profile,
                seed,
            })
        }
        Document::Interval {
            target,
            intervals,
            participation: flags,
            seed,
        } => {
            check_bound("intervals", intervals.len())?;
            let t = target.parse("target")?;
            let mut parsed = Vec::with_capacity(intervals.len());
            for (i, [lo, hi]) in intervals.iter().enumerate() {
                let location = format!("intervals[{i}]");
                let iv = Interval::new(lo.parse(&location)?, hi.parse(&location)?)
                    .map_err(|e| at(&location, e))?;
                if !iv.contains(&t) {
                    return Err(structural(format!(
                        "{location}: {iv} does not contain the target {t}"
                    )));
                }
                parsed.push(iv);
            }
            let instance = IntervalInstance::new(t, parsed).map_err(|e| at("intervals", e))?;
            let participation = participation(&flags, instance.players())?;
            Ok(Scenario::Interval {
                instance,
                participation,
                seed,
            })
        }
        Document::Average {
            points,
            p,
            participation: flags,
            seed,
        } => {
            check_bound("points", points.len())?;
            let exponent = LossExponent::new(p).map_err(|e| at("p", e))?;
            let parsed = points
                .iter()
                .enumerate()
                .map(|(i, a)| a.parse(&format!("points[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let instance = PointInstance::new(parsed).map_err(|e| at("points", e))?;
            let participation = participation(&flags, instance.players())?;
            Ok(Scenario::Average {
                instance,
                exponent,
                participation,
                seed,
            })
        }
        Document::General {
            players,
            value,
            participation: flags,
            seed,
        } => {
            let (value, coverage) = match value {
                ValueDocument::Coverage { universe, sets } => {
                    let instance = set_instance(&universe, &sets, "value.coverage.")?;
                    if instance.players() != players {
                        return Err(structural(format!(
                            "value.coverage.sets: {} sets for {players} players",
                            instance.players()
                        )));
                    }
                    let v = make_coverage_value(&instance).map_err(|e| at("value.coverage", e))?;
                    (v, Some(instance))
                }
                ValueDocument::Table(entries) => {
                    let table = entries
                        .iter()
                        .enumerate()
                        .map(|(b, x)| x.parse(&format!("value.table[{b}]")))
                        .collect::<Result<Vec<_>>>()?;
                    let v =
                        SubgroupValueFn::new(players, table).map_err(|e| at("value.table", e))?;
                    (v, None)
                }
            };
            if players == 0 {
                return Err(structural("players: at least one player is required"));
            }
            let participation = participation(&flags, players)?;
            Ok(Scenario::General {
                value,
                coverage,
                participation,
                seed,
            })
        }
    }
}

fn flags(p: &Option<PlayerSet>, n: usize) -> Option<Vec<bool>> {
    p.map(|p| p.to_flags(n))
}

fn set_lists(instance: &SetInstance) -> (Vec<String>, Vec<Vec<String>>) {
    let u = instance.universe();
    (
        u.elements().to_vec(),
        instance.true_sets().iter().map(|&s| u.names(s)).collect(),
    )
}

/// Serializes a scenario; `parse_scenario(&emit_scenario(s)) == s`.
pub fn emit_scenario(scenario: &Scenario) -> String {
    let doc = match scenario {
        Scenario::SetUnion {
            instance,
            profile,
            seed,
        } => {
            let (universe, sets) = set_lists(instance);
            let (participation, reports) = match profile {
                Profile::Truthful => (None, None),
                Profile::AllOrNothing(p) => (Some(p.to_flags(instance.players())), None),
                Profile::Reports(r) => (
                    None,
                    Some(
                        r.reports()
                            .iter()
                            .map(|&s| instance.universe().names(s))
                            .collect(),
                    ),
                ),
            };
            Document::SetUnion {
                universe,
                sets,
                participation,
                reports,
                seed: *seed,
            }
        }
        Scenario::Interval {
            instance,
            participation,
            seed,
        } => Document::Interval {
            target: Number::of(instance.target()),
            intervals: instance
                .intervals()
                .iter()
                .map(|iv| [Number::of(iv.lo()), Number::of(iv.hi())])
                .collect(),
            participation: flags(participation, instance.players()),
            seed: *seed,
        },
        Scenario::Average {
            instance,
            exponent,
            participation,
            seed,
        } => Document::Average {
            points: instance.points().iter().map(Number::of).collect(),
            p: exponent.get(),
            participation: flags(participation, instance.players()),
            seed: *seed,
        },
        Scenario::General {
            value,
            coverage,
            participation,
            seed,
        } => Document::General {
            players: value.players(),
            value: match coverage {
                Some(instance) => {
                    let (universe, sets) = set_lists(instance);
                    ValueDocument::Coverage { universe, sets }
                }
                None => ValueDocument::Table(value.table().iter().map(Number::of).collect()),
            },
            participation: flags(participation, value.players()),
            seed: *seed,
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("scenario documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::{int, ratio};

    #[test]
    fn parses_a_set_union_scenario() {
        let text = r#"{"kind": "set-union", "universe": ["a","b","c","d","e","f"],
                       "sets": [["a"], ["b","c"], ["d","e","f"]]}"#;
        let Scenario::SetUnion {
            instance, profile, ..
        } = parse_scenario(text).unwrap()
        else {
            panic!("wrong kind");
        };
        assert_eq!(instance.players(), 3);
        assert_eq!(instance.universe().rank("d"), Some(3));
        assert_eq!(profile, Profile::Truthful);
    }

    #[test]
    fn interval_outside_target_is_rejected_with_position() {
        let text = r#"{"kind": "interval", "target": "9/2", "intervals": [["0","10"], ["5","6"]]}"#;
        let err = parse_scenario(text).unwrap_err();
        assert!(
            matches!(&err, Error::Structural(m) if m.starts_with("intervals[1]")),
            "{err}"
        );
    }

    #[test]
    fn empty_player_list_is_structural() {
        let text = r#"{"kind": "set-union", "universe": ["a"], "sets": []}"#;
        assert!(matches!(parse_scenario(text), Err(Error::Structural(_))));
    }

    #[test]
    fn syntax_and_kind_errors_carry_positions() {
        let err = parse_scenario("{\"kind\": \"set-union\",\n  \"universe\": [}").unwrap_err();
        assert!(
            matches!(&err, Error::Parse { location, .. } if location.starts_with("line 2")),
            "{err}"
        );
        let err = parse_scenario(r#"{"kind": "auction", "bids": []}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { message, .. } if message.contains("auction")),
            "{err}"
        );
        let err = parse_scenario(r#"{"kind": "average", "points": ["1/0"]}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { location, .. } if location.starts_with("points[0]")),
            "{err}"
        );
    }

    #[test]
    fn unsupported_exponent_is_a_configuration_error() {
        let err = parse_scenario(r#"{"kind": "average", "points": [0, 1], "p": 3}"#).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn round_trips() {
        let docs = [
            r#"{"kind": "set-union", "universe": ["x","y"], "sets": [["x"], ["y"]], "participation": [true, false], "seed": 4}"#,
            r#"{"kind": "set-union", "universe": ["x","y"], "sets": [["x","y"], ["y"]], "reports": [["x"], ["y"]]}"#,
            r#"{"kind": "interval", "target": "1/2", "intervals": [["-1", 3], ["0", "2/3"]]}"#,
            r#"{"kind": "average", "points": ["0", "1", "-5/2"], "p": 1}"#,
            r#"{"kind": "general", "players": 2, "value": {"table": [0, 1, 1, "5/2"]}, "participation": [true, true]}"#,
            r#"{"kind": "general", "players": 2, "value": {"coverage": {"universe": ["a","b","c"], "sets": [["a","b"],["b","c"]]}}}"#,
        ];
        for text in docs {
            let s = parse_scenario(text).unwrap();
            let emitted = emit_scenario(&s);
            assert_eq!(parse_scenario(&emitted).unwrap(), s, "{emitted}");
            assert_eq!(emit_scenario(&parse_scenario(&emitted).unwrap()), emitted);
        }
    }

    #[test]
    fn numbers_may_be_integers_or_strings() {
        let s = parse_scenario(r#"{"kind": "interval", "target": 1, "intervals": [[0, "3/2"]]}"#)
            .unwrap();
        let Scenario::Interval { instance, .. } = s else {
            panic!()
        };
        assert_eq!(instance.target(), &int(1));
        assert_eq!(instance.intervals()[0].hi(), &ratio(3, 2));
    }

    #[test]
    fn general_table_is_validated() {
        let err = parse_scenario(
            r#"{"kind": "general", "players": 2, "value": {"table": [0, 2, 1, 1]}}"#,
        )
        .unwrap_err();
        assert!(
            matches!(&err, Error::Structural(m) if m.starts_with("value.table")),
            "{err}"
        );
    }
}
