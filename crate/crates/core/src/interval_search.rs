//! One-dimensional search: every player holds an interval known to contain a
//! common target `t`, and the two players pinning down the intersection trade
//! their knowledge so that both gain the same value.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{structural, Result};
use crate::model::rational::int;
use crate::model::{ExtValue, PlayerSet, Rational};

/// A closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(structural(format!("interval [{lo}, {hi}] is reversed")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn is_within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Intervals around a shared target; every interval contains the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalInstance {
    target: Rational,
    intervals: Vec<Interval>,
}

impl IntervalInstance {
    pub fn new(target: Rational, intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(structural("an interval instance needs at least one player"));
        }
        if intervals.len() > PlayerSet::CAPACITY {
            return Err(crate::Error::Capacity(format!(
                "{} players, at most {} supported",
                intervals.len(),
                PlayerSet::CAPACITY
            )));
        }
        for (i, iv) in intervals.iter().enumerate() {
            if !iv.contains(&target) {
                return Err(structural(format!(
                    "interval {iv} of player {} does not contain the target {target}",
                    i + 1
                )));
            }
        }
        Ok(IntervalInstance { target, intervals })
    }

    pub fn target(&self) -> &Rational {
        &self.target
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn players(&self) -> usize {
        self.intervals.len()
    }

    /// `d_i = max(t - lo_i, hi_i - t)`.
    pub fn radius(&self, i: usize) -> Rational {
        let iv = &self.intervals[i];
        let left = &self.target - &iv.lo;
        let right = &iv.hi - &self.target;
        left.max(right)
    }
}

/// Strictly decreasing value of an interval length, with an exact inverse
/// used to equalize the gains of the two trading players.
pub trait LengthValue: Sync {
    fn name(&self) -> &'static str;

    fn value(&self, len: &Rational) -> Rational;

    /// The shrink `s` with `value(len - s) - value(len) = gain`, if it is a
    /// non-negative amount not exceeding `len`.
    fn shrink_for_gain(&self, len: &Rational, gain: &Rational) -> Option<Rational>;
}

/// `v(ℓ) = -ℓ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LinearValue;

impl LengthValue for LinearValue {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn value(&self, len: &Rational) -> Rational {
        -len.clone()
    }

    fn shrink_for_gain(&self, len: &Rational, gain: &Rational) -> Option<Rational> {
        (gain >= &Rational::zero() && gain <= len).then(|| gain.clone())
    }
}

/// `v(ℓ) = 1 / (1 + ℓ)`, a nonlinear choice with a rational inverse.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReciprocalValue;

impl LengthValue for ReciprocalValue {
    fn name(&self) -> &'static str {
        "reciprocal"
    }

    fn value(&self, len: &Rational) -> Rational {
        (Rational::one() + len).recip()
    }

    fn shrink_for_gain(&self, len: &Rational, gain: &Rational) -> Option<Rational> {
        if gain < &Rational::zero() {
            return None;
        }
        let target_value = self.value(len) + gain;
        let new_len = target_value.recip() - Rational::one();
        let shrink = len - new_len;
        (shrink >= Rational::zero() && &shrink <= len).then_some(shrink)
    }
}

/// `v(a, b) = -(b - a)` when the interval contains `t`, bottom otherwise.
pub fn interval_value(iv: &Interval, t: &Rational) -> ExtValue {
    interval_value_with(iv, t, &LinearValue)
}

pub fn interval_value_with(iv: &Interval, t: &Rational, value: &dyn LengthValue) -> ExtValue {
    if iv.contains(t) {
        ExtValue::Finite(value.value(&iv.length()))
    } else {
        ExtValue::Bottom
    }
}

/// What a player receives: an interval, or the whole line for a nonparticipant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntervalOutput {
    Line,
    Bounded(Interval),
}

impl IntervalOutput {
    pub fn interval(&self) -> Option<&Interval> {
        match self {
            IntervalOutput::Line => None,
            IntervalOutput::Bounded(iv) => Some(iv),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub outputs: Vec<IntervalOutput>,
    /// `v(y_i) - v(x_i)` for participants, 0 for nonparticipants.
    pub benefits: Vec<Rational>,
    /// The players with the largest left and the smallest right endpoint,
    /// when they differ.
    pub pair: Option<(usize, usize)>,
}

/// One-dimensional search with the linear value `v(ℓ) = -ℓ`.
pub fn one_dim_search(
    instance: &IntervalInstance,
    participants: PlayerSet,
) -> Result<SearchOutcome> {
    one_dim_search_with(instance, participants, &LinearValue)
}

/// One-dimensional search under an arbitrary [`LengthValue`].
///
/// Among participants, `j` has the largest left endpoint (ties: smaller right
/// endpoint, then smaller index) and `k` the smallest right endpoint (ties:
/// larger left endpoint, then smaller index). When `j != k` they shrink
/// towards `[lo_j, hi_k]` so that both gain `min(G_j, G_k)`, where `G` is the
/// gain of shrinking all the way. Players reporting exactly `j`'s (or `k`'s)
/// interval get the same output as `j` (or `k`); everyone else keeps its report.
pub fn one_dim_search_with(
    instance: &IntervalInstance,
    participants: PlayerSet,
    value: &dyn LengthValue,
) -> Result<SearchOutcome> {
    let n = instance.players();
    if !participants.is_subset(PlayerSet::all(n)) {
        return Err(structural("participant outside the instance"));
    }
    let x = instance.intervals();
    let mut outputs: Vec<IntervalOutput> = (0..n)
        .map(|i| {
            if participants.contains(i) {
                IntervalOutput::Bounded(x[i].clone())
            } else {
                IntervalOutput::Line
            }
        })
        .collect();

    let mut j: Option<usize> = None;
    let mut k: Option<usize> = None;
    for i in participants.iter() {
        let better_j =
            j.is_none_or(|j| x[j].lo < x[i].lo || (x[j].lo == x[i].lo && x[j].hi > x[i].hi));
        if better_j {
            j = Some(i);
        }
        let better_k =
            k.is_none_or(|k| x[k].hi > x[i].hi || (x[k].hi == x[i].hi && x[k].lo < x[i].lo));
        if better_k {
            k = Some(i);
        }
    }

    let mut pair = None;
    if let (Some(j), Some(k)) = (j, k) {
        if j != k {
            let (len_j, len_k) = (x[j].length(), x[k].length());
            let room_j = &x[j].hi - &x[k].hi;
            let room_k = &x[j].lo - &x[k].lo;
            let gain_j = value.value(&(&len_j - &room_j)) - value.value(&len_j);
            let gain_k = value.value(&(&len_k - &room_k)) - value.value(&len_k);
            let gain = gain_j.clone().min(gain_k.clone());
            let shrink_j = if gain == gain_j {
                room_j
            } else {
                value
                    .shrink_for_gain(&len_j, &gain)
                    .ok_or_else(|| structural("value function has no exact inverse here"))?
            };
            let shrink_k = if gain == gain_k {
                room_k
            } else {
                value
                    .shrink_for_gain(&len_k, &gain)
                    .ok_or_else(|| structural("value function has no exact inverse here"))?
            };
            let y_j = Interval::new(x[j].lo.clone(), &x[j].hi - shrink_j)?;
            let y_k = Interval::new(&x[k].lo + shrink_k, x[k].hi.clone())?;
            for i in participants.iter() {
                if x[i] == x[j] {
                    outputs[i] = IntervalOutput::Bounded(y_j.clone());
                } else if x[i] == x[k] {
                    outputs[i] = IntervalOutput::Bounded(y_k.clone());
                }
            }
            pair = Some((j, k));
        }
    }

    let benefits = (0..n)
        .map(|i| match &outputs[i] {
            IntervalOutput::Bounded(y) if participants.contains(i) => {
                value.value(&y.length()) - value.value(&x[i].length())
            }
            _ => int(0),
        })
        .collect();
    Ok(SearchOutcome {
        outputs,
        benefits,
        pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::ratio;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(int(lo), int(hi)).unwrap()
    }

    fn bounded(lo: i64, hi: i64) -> IntervalOutput {
        IntervalOutput::Bounded(iv(lo, hi))
    }

    #[test]
    fn value_examples() {
        assert_eq!(
            interval_value(&iv(0, 10), &int(5)),
            ExtValue::Finite(int(-10))
        );
        assert_eq!(
            interval_value(&iv(4, 5), &ratio(9, 2)),
            ExtValue::Finite(int(-1))
        );
        assert_eq!(interval_value(&iv(0, 1), &int(2)), ExtValue::Bottom);
    }

    #[test]
    fn three_interval_trace() {
        let inst = IntervalInstance::new(ratio(9, 2), vec![iv(0, 10), iv(2, 5), iv(4, 9)]).unwrap();
        let out = one_dim_search(&inst, PlayerSet::all(3)).unwrap();
        assert_eq!(out.pair, Some((2, 1)));
        assert_eq!(
            out.outputs,
            vec![bounded(0, 10), bounded(4, 5), bounded(4, 7)]
        );
        assert_eq!(out.benefits, vec![int(0), int(2), int(2)]);
    }

    #[test]
    fn identical_intervals_exchange_nothing() {
        let inst = IntervalInstance::new(int(1), vec![iv(0, 2); 4]).unwrap();
        let out = one_dim_search(&inst, PlayerSet::all(4)).unwrap();
        assert_eq!(out.pair, None);
        assert!(out.benefits.iter().all(|b| b == &int(0)));
    }

    #[test]
    fn nested_intervals_have_no_partner() {
        let inst = IntervalInstance::new(ratio(7, 2), vec![iv(0, 10), iv(3, 4)]).unwrap();
        let out = one_dim_search(&inst, PlayerSet::all(2)).unwrap();
        assert_eq!(out.pair, None);
        assert_eq!(out.benefits, vec![int(0), int(0)]);
    }

    #[test]
    fn copies_of_the_pair_share_its_output() {
        let inst =
            IntervalInstance::new(ratio(9, 2), vec![iv(4, 9), iv(2, 5), iv(4, 9), iv(0, 10)])
                .unwrap();
        let out = one_dim_search(&inst, PlayerSet::all(4)).unwrap();
        assert_eq!(out.pair, Some((0, 1)));
        assert_eq!(out.outputs[0], out.outputs[2]);
        assert_eq!(out.benefits, vec![int(2), int(2), int(2), int(0)]);
    }

    #[test]
    fn nonparticipants_get_the_line() {
        let inst = IntervalInstance::new(ratio(9, 2), vec![iv(0, 10), iv(2, 5), iv(4, 9)]).unwrap();
        let out = one_dim_search(&inst, PlayerSet::from_bits(0b011)).unwrap();
        assert_eq!(out.outputs[2], IntervalOutput::Line);
        // [0,10] vs [2,5]: j = 1 (lo 2), k = 1 (hi 5)
        assert_eq!(out.pair, None);
    }

    #[test]
    fn containment_promise_is_enforced() {
        assert!(IntervalInstance::new(ratio(9, 2), vec![iv(0, 10), iv(0, 1)]).is_err());
        assert!(Interval::new(int(2), int(1)).is_err());
    }

    #[test]
    fn reciprocal_value_equalizes_gains() {
        let inst = IntervalInstance::new(ratio(9, 2), vec![iv(0, 10), iv(2, 5), iv(4, 9)]).unwrap();
        let out = one_dim_search_with(&inst, PlayerSet::all(3), &ReciprocalValue).unwrap();
        assert_eq!(out.benefits[1], out.benefits[2]);
        assert!(out.benefits[1] > int(0));
        for y in &out.outputs {
            let y = y.interval().unwrap();
            assert!(y.contains(inst.target()));
        }
        // shrinks differ once the value is nonlinear
        let y1 = out.outputs[1].interval().unwrap();
        let y2 = out.outputs[2].interval().unwrap();
        assert_ne!(
            iv(2, 5).length() - y1.length(),
            iv(4, 9).length() - y2.length()
        );
    }

    #[test]
    fn radius_is_derived() {
        let inst = IntervalInstance::new(int(3), vec![iv(0, 10)]).unwrap();
        assert_eq!(inst.radius(0), int(7));
    }
}
