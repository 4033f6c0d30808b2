//! Average point: every participant receives the mean of the submitted points
//! and values it by its distance to the mean of all true points.

use num_traits::Zero;

use crate::error::{structural, Error, Result};
use crate::model::rational::{abs, int};
use crate::model::{BenefitVector, ExtValue, PlayerSet, Rational};

/// Points on the rational line with their (cached) true average.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointInstance {
    points: Vec<Rational>,
    mean: Rational,
}

impl PointInstance {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(structural("a point instance needs at least one player"));
        }
        if points.len() > PlayerSet::CAPACITY {
            return Err(Error::Capacity(format!(
                "{} players, at most {} supported",
                points.len(),
                PlayerSet::CAPACITY
            )));
        }
        let mean = mean_of(points.iter());
        Ok(PointInstance { points, mean })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// The true average `ā`.
    pub fn mean(&self) -> &Rational {
        &self.mean
    }

    pub fn players(&self) -> usize {
        self.points.len()
    }
}

fn mean_of<'a>(points: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut sum = Rational::zero();
    let mut count = 0i64;
    for p in points {
        sum += p;
        count += 1;
    }
    sum / int(count)
}

/// Exponent `p` of the loss `|y - ā|^p`; only 1 and 2 keep values rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LossExponent(u32);

impl LossExponent {
    pub const LINEAR: LossExponent = LossExponent(1);
    pub const SQUARE: LossExponent = LossExponent(2);

    pub fn new(p: u32) -> Result<Self> {
        match p {
            1 | 2 => Ok(LossExponent(p)),
            _ => Err(Error::Config(format!(
                "loss exponent {p} is not supported (use 1 or 2)"
            ))),
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn loss(self, y: &Rational, mean: &Rational) -> Rational {
        let d = abs(&(y - mean));
        if self.0 == 1 {
            d
        } else {
            &d * &d
        }
    }
}

impl Default for LossExponent {
    fn default() -> Self {
        LossExponent::SQUARE
    }
}

/// `v(y) = -|y - ā|^p`, bottom for the empty answer.
pub fn point_value(y: Option<&Rational>, mean: &Rational, p: u32) -> Result<ExtValue> {
    Ok(value(y, mean, LossExponent::new(p)?))
}

fn value(y: Option<&Rational>, mean: &Rational, p: LossExponent) -> ExtValue {
    match y {
        Some(y) => ExtValue::Finite(-p.loss(y, mean)),
        None => ExtValue::Bottom,
    }
}

/// Maps submitted points to per-player answers (`None` is the empty answer).
pub trait PointMechanism: Sync {
    fn name(&self) -> &'static str;

    fn outputs(&self, points: &[Rational], participants: PlayerSet) -> Vec<Option<Rational>>;
}

/// Everyone who submitted gets the mean of the submitted points.
#[derive(Clone, Copy, Debug, Default)]
pub struct Averaging;

impl PointMechanism for Averaging {
    fn name(&self) -> &'static str {
        "average"
    }

    fn outputs(&self, points: &[Rational], participants: PlayerSet) -> Vec<Option<Rational>> {
        let answer =
            (!participants.is_empty()).then(|| mean_of(participants.iter().map(|i| &points[i])));
        (0..points.len())
            .map(|i| {
                if participants.contains(i) {
                    answer.clone()
                } else {
                    None
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageOutcome {
    pub outputs: Vec<Option<Rational>>,
    /// `v(y_i) - v(a_i)` for participants, 0 for nonparticipants.
    pub benefits: BenefitVector<Rational>,
}

/// Runs the averaging mechanism on the participants' true points.
pub fn average_mechanism(
    instance: &PointInstance,
    participants: PlayerSet,
    p: LossExponent,
) -> Result<AverageOutcome> {
    run_point_mechanism(&Averaging, instance, participants, p)
}

/// Runs any [`PointMechanism`] and scores its answers against the true mean.
pub fn run_point_mechanism(
    mechanism: &dyn PointMechanism,
    instance: &PointInstance,
    participants: PlayerSet,
    p: LossExponent,
) -> Result<AverageOutcome> {
    let n = instance.players();
    if !participants.is_subset(PlayerSet::all(n)) {
        return Err(structural("participant outside the instance"));
    }
    let outputs = mechanism.outputs(instance.points(), participants);
    if outputs.len() != n {
        return Err(structural("mechanism returned the wrong number of outputs"));
    }
    let benefits = (0..n)
        .map(|i| {
            if !participants.contains(i) {
                return Ok(int(0));
            }
            let own = -p.loss(&instance.points[i], &instance.mean);
            match value(outputs[i].as_ref(), &instance.mean, p) {
                ExtValue::Finite(v) => Ok(v - own),
                ExtValue::Bottom => Err(structural(format!(
                    "participant {} received no answer",
                    i + 1
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AverageOutcome {
        outputs,
        benefits: BenefitVector(benefits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::ratio;
    use crate::model::utilities;

    fn pts(p: &[i64]) -> PointInstance {
        PointInstance::new(p.iter().map(|&a| int(a)).collect()).unwrap()
    }

    #[test]
    fn value_examples() {
        assert_eq!(
            point_value(Some(&int(1)), &int(1), 2).unwrap(),
            ExtValue::Finite(int(0))
        );
        assert_eq!(
            point_value(Some(&int(0)), &int(1), 2).unwrap(),
            ExtValue::Finite(int(-1))
        );
        assert_eq!(
            point_value(Some(&int(3)), &int(1), 1).unwrap(),
            ExtValue::Finite(int(-2))
        );
        assert_eq!(point_value(None, &int(1), 2).unwrap(), ExtValue::Bottom);
        assert!(matches!(
            point_value(None, &int(1), 3),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn three_points_all_participate() {
        let inst = pts(&[0, 1, 2]);
        let out = average_mechanism(&inst, PlayerSet::all(3), LossExponent::SQUARE).unwrap();
        assert_eq!(out.outputs, vec![Some(int(1)); 3]);
        assert_eq!(out.benefits.0, vec![int(1), int(0), int(1)]);
        assert_eq!(utilities(&out.benefits.0), vec![int(0), int(-1), int(0)]);
    }

    #[test]
    fn first_player_drops() {
        let inst = pts(&[0, 1, 2]);
        let out =
            average_mechanism(&inst, PlayerSet::from_bits(0b110), LossExponent::SQUARE).unwrap();
        assert_eq!(out.outputs[0], None);
        assert_eq!(out.outputs[1], Some(ratio(3, 2)));
        // v(3/2) = -1/4; player 2 sat on the mean, player 3 was 1 away
        assert_eq!(out.benefits.0, vec![int(0), ratio(-1, 4), ratio(3, 4)]);
    }

    #[test]
    fn single_participant_learns_its_own_point() {
        let inst = pts(&[0, 4]);
        let out = average_mechanism(&inst, PlayerSet::singleton(1), LossExponent::SQUARE).unwrap();
        assert_eq!(out.outputs, vec![None, Some(int(4))]);
        assert_eq!(out.benefits.0, vec![int(0), int(0)]);
    }

    #[test]
    fn nobody_participates() {
        let inst = pts(&[0, 4]);
        let out = average_mechanism(&inst, PlayerSet::EMPTY, LossExponent::SQUARE).unwrap();
        assert_eq!(out.outputs, vec![None, None]);
        assert_eq!(out.benefits.0, vec![int(0), int(0)]);
    }

    #[test]
    fn mean_is_cached_exactly() {
        let inst = PointInstance::new(vec![ratio(1, 3), ratio(1, 6), int(1)]).unwrap();
        assert_eq!(inst.mean(), &ratio(1, 2));
        assert!(PointInstance::new(vec![]).is_err());
    }
}
