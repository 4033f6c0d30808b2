use std::fmt::Display;
use std::ops::Sub;

use num_traits::Zero;

use super::{Counterexample, PropertyReport};
use crate::average_point::{run_point_mechanism, LossExponent, PointInstance, PointMechanism};
use crate::error::{structural, Result};
use crate::general_mechanism::SubgroupValueFn;
use crate::interval_search::{one_dim_search_with, IntervalInstance, LengthValue};
use crate::model::{set_benefits, utility_of, PlayerSet, Rational, SetInstance, StrategyProfile};
use crate::set_union::SetMechanism;

/// A mechanism on a fixed instance, seen as a game where each player only
/// chooses whether to take part.
pub trait AonGame: Sync {
    type Benefit: Clone + Ord + Zero + Sub<Output = Self::Benefit> + Display + Send;

    fn players(&self) -> usize;

    /// Benefits of every player when exactly `participants` take part.
    fn benefits(&self, participants: PlayerSet) -> Result<Vec<Self::Benefit>>;
}

/// Set union with all-or-nothing reports; benefits count elements new to
/// each player's true set.
pub struct SetGame<'a> {
    pub instance: &'a SetInstance,
    pub mechanism: &'a dyn SetMechanism,
}

impl AonGame for SetGame<'_> {
    type Benefit = i64;

    fn players(&self) -> usize {
        self.instance.players()
    }

    fn benefits(&self, participants: PlayerSet) -> Result<Vec<i64>> {
        let profile = StrategyProfile::all_or_nothing(self.instance, participants);
        let outputs = self.mechanism.run(profile.reports())?;
        Ok(set_benefits(self.instance.true_sets(), &outputs))
    }
}

pub struct IntervalGame<'a> {
    pub instance: &'a IntervalInstance,
    pub value: &'a dyn LengthValue,
}

impl AonGame for IntervalGame<'_> {
    type Benefit = Rational;

    fn players(&self) -> usize {
        self.instance.players()
    }

    fn benefits(&self, participants: PlayerSet) -> Result<Vec<Rational>> {
        Ok(one_dim_search_with(self.instance, participants, self.value)?.benefits)
    }
}

pub struct AverageGame<'a> {
    pub instance: &'a PointInstance,
    pub mechanism: &'a dyn PointMechanism,
    pub exponent: LossExponent,
}

impl AonGame for AverageGame<'_> {
    type Benefit = Rational;

    fn players(&self) -> usize {
        self.instance.players()
    }

    fn benefits(&self, participants: PlayerSet) -> Result<Vec<Rational>> {
        Ok(
            run_point_mechanism(self.mechanism, self.instance, participants, self.exponent)?
                .benefits
                .0,
        )
    }
}

/// How a cooperating player's reward is derived from the value table.
pub type RewardRule = fn(&SubgroupValueFn, PlayerSet, usize) -> Result<Rational>;

/// General mechanism where cooperating players receive `rule(V, S, i)`.
pub struct GeneralGame<'a> {
    pub value: &'a SubgroupValueFn,
    pub rule: RewardRule,
}

impl AonGame for GeneralGame<'_> {
    type Benefit = Rational;

    fn players(&self) -> usize {
        self.value.players()
    }

    fn benefits(&self, participants: PlayerSet) -> Result<Vec<Rational>> {
        (0..self.value.players())
            .map(|i| {
                if participants.contains(i) {
                    (self.rule)(self.value, participants, i)
                } else {
                    Ok(Rational::zero())
                }
            })
            .collect()
    }
}

/// Largest player count for the exhaustive participation check.
pub const MAX_AON_PLAYERS: usize = 16;

/// Participation is weakly dominant: for every player and every set of other
/// participants, joining never lowers the player's utility.
pub fn check_truthful_aon<G: AonGame>(game: &G) -> Result<PropertyReport> {
    const NAME: &str = "truthful-aon";
    let n = game.players();
    if n > MAX_AON_PLAYERS {
        return Ok(PropertyReport::skipped(
            NAME,
            format!("{n} players, exhaustive check limited to {MAX_AON_PLAYERS}"),
        ));
    }
    let table = (0..1u32 << n)
        .map(|bits| game.benefits(PlayerSet::from_bits(bits)))
        .collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    for player in 0..n {
        for bits in (0..1u32 << n).filter(|b| b >> player & 1 == 0) {
            let others = PlayerSet::from_bits(bits);
            checked += 1;
            let joining = &table[others.with(player).bits() as usize];
            let abstaining = &table[others.bits() as usize];
            if let Some(cex) = participation_violation(player, others, joining, abstaining) {
                return Ok(PropertyReport::fail(NAME, checked, cex));
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

fn participation_violation<B>(
    player: usize,
    others: PlayerSet,
    joining: &[B],
    abstaining: &[B],
) -> Option<Counterexample>
where
    B: Clone + Ord + Zero + Sub<Output = B> + Display,
{
    let u_in = utility_of(joining, player);
    let u_out = utility_of(abstaining, player);
    (u_in < u_out).then(|| Counterexample::Participation {
        player: player + 1,
        others: others.to_labels(),
        utility_joining: u_in.to_string(),
        utility_abstaining: u_out.to_string(),
    })
}

/// Re-evaluates a participation counterexample; `true` if it still violates.
pub fn replay_participation<G: AonGame>(game: &G, cex: &Counterexample) -> Result<bool> {
    let Counterexample::Participation { player, others, .. } = cex else {
        return Err(structural("not a participation counterexample"));
    };
    let n = game.players();
    if *player == 0 || *player > n || others.iter().any(|&o| o == 0 || o > n || o == *player) {
        return Err(structural("counterexample does not fit the game"));
    }
    let player = player - 1;
    let others = others.iter().fold(PlayerSet::EMPTY, |s, &o| s.with(o - 1));
    let joining = game.benefits(others.with(player))?;
    let abstaining = game.benefits(others)?;
    Ok(participation_violation(player, others, &joining, &abstaining).is_some())
}
