//! Deliberately broken mechanisms. Each one violates the property its
//! checker guards, so a checker that passes them is itself broken.

use super::AonGame;
use crate::average_point::PointMechanism;
use crate::error::Result;
use crate::general_mechanism::{phi, SubgroupValueFn};
use crate::interval_search::{one_dim_search, IntervalInstance};
use crate::model::rational::int;
use crate::model::{ElemSet, PlayerSet, Rational};
use crate::set_union::{compute_v, multiparty_allocate, SetMechanism};

/// Player 1 receives the whole union; nobody else learns anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct FavorFirst;

impl SetMechanism for FavorFirst {
    fn name(&self) -> &'static str {
        "favor-first"
    }

    fn supports(&self, n: usize) -> bool {
        n >= 1
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
        let mut out = reports.to_vec();
        out[0] = union;
        out
    }
}

/// The multiparty mechanism with player `i` (0-based) shorted by `i` elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct IndexBiased;

impl SetMechanism for IndexBiased {
    fn name(&self) -> &'static str {
        "index-biased"
    }

    fn supports(&self, n: usize) -> bool {
        (1..=20).contains(&n)
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let active: Vec<ElemSet> = reports.iter().copied().filter(|x| !x.is_empty()).collect();
        let level = compute_v(&active).value as usize;
        let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
        reports
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if x.is_empty() {
                    return x;
                }
                let pool = union - x;
                x | pool.first(level.saturating_sub(i).min(pool.len()))
            })
            .collect()
    }
}

/// The multiparty mechanism, except that player 1 draws from the end of π.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReversedForFirst;

impl SetMechanism for ReversedForFirst {
    fn name(&self) -> &'static str {
        "reversed-for-first"
    }

    fn supports(&self, n: usize) -> bool {
        (1..=20).contains(&n)
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let mut out = multiparty_allocate(reports)
            .expect("participant count within capacity")
            .outputs;
        let x = reports[0];
        if !x.is_empty() {
            let union = reports.iter().fold(ElemSet::EMPTY, |acc, &r| acc | r);
            let gained = (out[0] - x).len();
            out[0] = x | (union - x).last(gained);
        }
        out
    }
}

/// The multiparty mechanism with the last participant given one element less.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShortchangeLast;

impl SetMechanism for ShortchangeLast {
    fn name(&self) -> &'static str {
        "shortchange-last"
    }

    fn supports(&self, n: usize) -> bool {
        (1..=20).contains(&n)
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let mut out = multiparty_allocate(reports)
            .expect("participant count within capacity")
            .outputs;
        if let Some(last) = (0..reports.len()).rev().find(|&i| !reports[i].is_empty()) {
            let x = reports[last];
            let gained = (out[last] - x).len();
            if gained > 0 {
                out[last] = x | (out[last] - x).first(gained - 1);
            }
        }
        out
    }
}

/// Every participant receives the whole union.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullSharing;

impl SetMechanism for FullSharing {
    fn name(&self) -> &'static str {
        "full-sharing"
    }

    fn supports(&self, n: usize) -> bool {
        n >= 1
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
        reports
            .iter()
            .map(|&x| if x.is_empty() { x } else { union })
            .collect()
    }
}

/// The participant with the smallest report (first on ties) receives the
/// union; hiding elements to become the smallest pays off.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmallestTakesAll;

impl SetMechanism for SmallestTakesAll {
    fn name(&self) -> &'static str {
        "smallest-takes-all"
    }

    fn supports(&self, n: usize) -> bool {
        n >= 1
    }

    fn allocate(&self, reports: &[ElemSet]) -> Vec<ElemSet> {
        let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
        let mut out = reports.to_vec();
        if let Some(i) = (0..reports.len())
            .filter(|&i| !reports[i].is_empty())
            .min_by_key(|&i| reports[i].len())
        {
            out[i] = union;
        }
        out
    }
}

/// Level rule that ignores incentives: everyone learns up to the largest deficit.
pub fn full_sharing_level(reports: &[ElemSet]) -> u64 {
    let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
    if reports.len() <= 1 {
        return 0;
    }
    (0..reports.len())
        .map(|k| {
            let others = (0..reports.len())
                .filter(|&j| j != k)
                .fold(ElemSet::EMPTY, |acc, j| acc | reports[j]);
            ((others - reports[k]).len() as u64).min(union.len() as u64)
        })
        .max()
        .unwrap_or(0)
}

/// Participants all receive the first participant's point.
#[derive(Clone, Copy, Debug, Default)]
pub struct EchoFirst;

impl PointMechanism for EchoFirst {
    fn name(&self) -> &'static str {
        "echo-first"
    }

    fn outputs(&self, points: &[Rational], participants: PlayerSet) -> Vec<Option<Rational>> {
        let answer = participants.iter().next().map(|i| points[i].clone());
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

/// Participants each receive their own point back.
#[derive(Clone, Copy, Debug, Default)]
pub struct OwnPoint;

impl PointMechanism for OwnPoint {
    fn name(&self) -> &'static str {
        "own-point"
    }

    fn outputs(&self, points: &[Rational], participants: PlayerSet) -> Vec<Option<Rational>> {
        (0..points.len())
            .map(|i| participants.contains(i).then(|| points[i].clone()))
            .collect()
    }
}

/// `φ_i(S)` plus the 0-based index `i`, so equivalent players differ.
pub fn index_bonus(value: &SubgroupValueFn, s: PlayerSet, i: usize) -> Result<Rational> {
    Ok(phi(value, s, i)? + int(i as i64))
}

/// Rewards `V(S) - V({i})`: each member's value over going alone, ignoring
/// its marginal contribution.
pub fn full_reward(value: &SubgroupValueFn, s: PlayerSet, i: usize) -> Result<Rational> {
    Ok(value.value(s) - value.value(PlayerSet::singleton(i)))
}

/// Interval search where both extreme players shrink all the way to the
/// common intersection, so their gains differ.
pub struct GreedySearch<'a> {
    pub instance: &'a IntervalInstance,
}

impl AonGame for GreedySearch<'_> {
    type Benefit = Rational;

    fn players(&self) -> usize {
        self.instance.players()
    }

    fn benefits(&self, participants: PlayerSet) -> Result<Vec<Rational>> {
        let out = one_dim_search(self.instance, participants)?;
        let mut v = vec![int(0); self.instance.players()];
        if let Some((j, k)) = out.pair {
            let x = self.instance.intervals();
            v[j] = x[j].hi() - x[k].hi();
            v[k] = x[j].lo() - x[k].lo();
        }
        Ok(v)
    }
}
