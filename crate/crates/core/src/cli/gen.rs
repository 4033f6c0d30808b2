//! Seeded scenario generation.

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scenario::{Profile, Scenario};
use crate::average_point::LossExponent;
use crate::error::{Error, Result};
use crate::general_mechanism::{make_coverage_value, random_monotone, random_totally_monotone};
use crate::verifier::generate::{
    random_interval_instance, random_point_instance, random_set_instance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    SetUnion,
    Interval,
    Average,
    General,
}

/// How `general` scenarios obtain their value table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ValueKind {
    #[default]
    Coverage,
    Monotone,
    TotallyMonotone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: Kind,
    pub players: usize,
    /// Universe size for set-union and coverage scenarios.
    pub elements: usize,
    pub value: ValueKind,
}

/// The scenario for `seed`; the same spec and seed always give the same scenario.
pub fn generate(spec: &GenSpec, seed: u64) -> Result<Scenario> {
    if spec.players == 0 {
        return Err(Error::Config("at least one player is required".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.players;
    Ok(match spec.kind {
        Kind::SetUnion => Scenario::SetUnion {
            instance: random_set_instance(&mut rng, n, spec.elements)?,
            profile: Profile::Truthful,
            seed: Some(seed),
        },
        Kind::Interval => Scenario::Interval {
            instance: random_interval_instance(&mut rng, n)?,
            participation: None,
            seed: Some(seed),
        },
        Kind::Average => Scenario::Average {
            instance: random_point_instance(&mut rng, n)?,
            exponent: LossExponent::SQUARE,
            participation: None,
            seed: Some(seed),
        },
        Kind::General => {
            let (value, coverage) = match spec.value {
                ValueKind::Coverage => {
                    let instance = random_set_instance(&mut rng, n, spec.elements)?;
                    (make_coverage_value(&instance)?, Some(instance))
                }
                ValueKind::Monotone => (random_monotone(n, &mut rng)?, None),
                ValueKind::TotallyMonotone => (random_totally_monotone(n, &mut rng)?, None),
            };
            Scenario::General {
                value,
                coverage,
                participation: None,
                seed: Some(seed),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_sized() {
        for kind in [Kind::SetUnion, Kind::Interval, Kind::Average, Kind::General] {
            for value in [
                ValueKind::Coverage,
                ValueKind::Monotone,
                ValueKind::TotallyMonotone,
            ] {
                let spec = GenSpec {
                    kind,
                    players: 3,
                    elements: 5,
                    value,
                };
                let a = generate(&spec, 11).unwrap();
                assert_eq!(a, generate(&spec, 11).unwrap());
                assert_eq!(a.players(), 3);
            }
        }
    }
}
