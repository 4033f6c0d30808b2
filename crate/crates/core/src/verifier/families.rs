use super::{Counterexample, PropertyReport};
use crate::average_point::{run_point_mechanism, LossExponent, PointInstance, PointMechanism};
use crate::error::{structural, Result};
use crate::general_mechanism::SubgroupValueFn;
use crate::interval_search::{one_dim_search_with, IntervalInstance, IntervalOutput, LengthValue};
use crate::model::rational::int;
use crate::model::{PlayerSet, Rational};
use crate::verifier::RewardRule;

/// Largest player count for the contribution checks (all coalitions, all pairs).
pub const MAX_PHI_PLAYERS: usize = 8;

fn reward_table(value: &SubgroupValueFn, rule: RewardRule) -> Result<Vec<Vec<Rational>>> {
    let n = value.players();
    (0..1u32 << n)
        .map(|bits| {
            let s = PlayerSet::from_bits(bits);
            (0..n)
                .map(|i| {
                    if s.contains(i) {
                        rule(value, s, i)
                    } else {
                        Ok(int(0))
                    }
                })
                .collect()
        })
        .collect()
}

fn contribution_violation(
    value: &SubgroupValueFn,
    rule: RewardRule,
    s: PlayerSet,
    i: usize,
    j: usize,
) -> Result<Option<Counterexample>> {
    let phi_i = rule(value, s, i)?;
    let phi_j = rule(value, s, j)?;
    let phi_j_without_i = rule(value, s.without(i), j)?;
    Ok(
        (phi_i < &phi_j - &phi_j_without_i).then(|| Counterexample::Contribution {
            coalition: s.to_labels(),
            i: i + 1,
            j: j + 1,
            phi_i: phi_i.to_string(),
            phi_j: phi_j.to_string(),
            phi_j_without_i: phi_j_without_i.to_string(),
        }),
    )
}

/// `φ_i(S) >= φ_j(S) - φ_j(S \ {i})` for every coalition and ordered pair.
pub fn check_phi_inequality(value: &SubgroupValueFn, rule: RewardRule) -> Result<PropertyReport> {
    const NAME: &str = "phi-inequality";
    let n = value.players();
    if n > MAX_PHI_PLAYERS {
        return Ok(PropertyReport::skipped(
            NAME,
            format!("{n} players, limited to {MAX_PHI_PLAYERS}"),
        ));
    }
    let table = reward_table(value, rule)?;
    let mut checked = 0;
    for bits in 0..1u32 << n {
        let s = PlayerSet::from_bits(bits);
        if s.len() < 2 {
            continue;
        }
        for i in s.iter() {
            for j in s.iter().filter(|&j| j != i) {
                checked += 1;
                let rest = &table[s.without(i).bits() as usize][j];
                if table[bits as usize][i] < &table[bits as usize][j] - rest {
                    let cex = contribution_violation(value, rule, s, i, j)?
                        .ok_or_else(|| structural("reward rule is not deterministic"))?;
                    return Ok(PropertyReport::fail(NAME, checked, cex));
                }
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

pub fn replay_contribution(
    value: &SubgroupValueFn,
    rule: RewardRule,
    cex: &Counterexample,
) -> Result<bool> {
    let Counterexample::Contribution {
        coalition, i, j, ..
    } = cex
    else {
        return Err(structural("not a contribution counterexample"));
    };
    let n = value.players();
    let in_range = |l: usize| (1..=n).contains(&l);
    if !coalition.iter().all(|&l| in_range(l)) || !in_range(*i) || !in_range(*j) {
        return Err(structural("counterexample does not fit the value table"));
    }
    let s = coalition
        .iter()
        .fold(PlayerSet::EMPTY, |s, &l| s.with(l - 1));
    if !s.contains(i - 1) || !s.contains(j - 1) {
        return Err(structural("pair outside the coalition"));
    }
    Ok(contribution_violation(value, rule, s, i - 1, j - 1)?.is_some())
}

/// `i` and `j` are interchangeable inside `s`: `V(T ∪ {i}) = V(T ∪ {j})` for
/// every `T ⊆ s \ {i, j}`.
pub fn equivalent_in(value: &SubgroupValueFn, s: PlayerSet, i: usize, j: usize) -> bool {
    s.without(i)
        .without(j)
        .subsets()
        .all(|t| value.value(t.with(i)) == value.value(t.with(j)))
}

/// Interchangeable members of a coalition receive equal rewards.
pub fn check_phi_symmetry(value: &SubgroupValueFn, rule: RewardRule) -> Result<PropertyReport> {
    const NAME: &str = "symmetry";
    let n = value.players();
    if n > MAX_PHI_PLAYERS {
        return Ok(PropertyReport::skipped(
            NAME,
            format!("{n} players, limited to {MAX_PHI_PLAYERS}"),
        ));
    }
    let table = reward_table(value, rule)?;
    let mut checked = 0;
    for bits in 0..1u32 << n {
        let s = PlayerSet::from_bits(bits);
        for i in s.iter() {
            for j in s.iter().filter(|&j| j > i) {
                if !equivalent_in(value, s, i, j) {
                    continue;
                }
                checked += 1;
                let row = &table[bits as usize];
                if row[i] != row[j] {
                    return Ok(PropertyReport::fail(
                        NAME,
                        checked,
                        Counterexample::Symmetry {
                            participants: s.to_labels(),
                            players: [i + 1, j + 1],
                            detail: format!(
                                "equivalent players rewarded {} and {}",
                                row[i], row[j]
                            ),
                        },
                    ));
                }
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

fn delta_violation(
    instance: &PointInstance,
    mechanism: &dyn PointMechanism,
    deviator: usize,
) -> Result<Option<Counterexample>> {
    let n = instance.players();
    let all = PlayerSet::all(n);
    let p = LossExponent::SQUARE;
    let base = run_point_mechanism(mechanism, instance, all, p)?.benefits.0;
    let dev = run_point_mechanism(mechanism, instance, all.without(deviator), p)?
        .benefits
        .0;
    let delta_d = &dev[deviator] - &base[deviator];
    for other in (0..n).filter(|&i| i != deviator) {
        let delta_i = &dev[other] - &base[other];
        if delta_d > delta_i {
            return Ok(Some(Counterexample::Delta {
                deviator: deviator + 1,
                other: other + 1,
                delta_deviator: delta_d.to_string(),
                delta_other: delta_i.to_string(),
            }));
        }
    }
    Ok(None)
}

/// From the all-truthful baseline, a single player dropping out loses at
/// least as much benefit as every remaining participant (square loss).
pub fn check_average_delta(
    instance: &PointInstance,
    mechanism: &dyn PointMechanism,
) -> Result<PropertyReport> {
    const NAME: &str = "average-delta";
    let n = instance.players();
    for deviator in 0..n {
        if let Some(cex) = delta_violation(instance, mechanism, deviator)? {
            return Ok(PropertyReport::fail(NAME, (deviator + 1) as u64, cex));
        }
    }
    Ok(PropertyReport::pass(NAME, n as u64))
}

pub fn replay_delta(
    instance: &PointInstance,
    mechanism: &dyn PointMechanism,
    cex: &Counterexample,
) -> Result<bool> {
    let Counterexample::Delta {
        deviator, other, ..
    } = cex
    else {
        return Err(structural("not a delta counterexample"));
    };
    let n = instance.players();
    if *deviator == 0 || *deviator > n || *other == 0 || *other > n {
        return Err(structural("counterexample does not fit the instance"));
    }
    Ok(delta_violation(instance, mechanism, deviator - 1)?.is_some())
}

/// Every participant receives the same answer, in every participation profile.
pub fn check_average_symmetry(
    instance: &PointInstance,
    mechanism: &dyn PointMechanism,
) -> Result<PropertyReport> {
    const NAME: &str = "symmetry";
    let n = instance.players();
    if n > super::sets::MAX_PROFILE_PLAYERS {
        return Ok(PropertyReport::skipped(NAME, format!("{n} players")));
    }
    let mut checked = 0;
    for bits in 0..1u32 << n {
        let participants = PlayerSet::from_bits(bits);
        let out = mechanism.outputs(instance.points(), participants);
        let members: Vec<usize> = participants.iter().collect();
        for pair in members.windows(2) {
            checked += 1;
            if out[pair[0]] != out[pair[1]] {
                return Ok(PropertyReport::fail(
                    NAME,
                    checked,
                    Counterexample::Symmetry {
                        participants: participants.to_labels(),
                        players: [pair[0] + 1, pair[1] + 1],
                        detail: "participants received different answers".to_string(),
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

/// Participants reporting identical intervals receive identical outputs.
pub fn check_interval_symmetry(
    instance: &IntervalInstance,
    value: &dyn LengthValue,
) -> Result<PropertyReport> {
    const NAME: &str = "symmetry";
    let n = instance.players();
    if n > super::sets::MAX_PROFILE_PLAYERS {
        return Ok(PropertyReport::skipped(NAME, format!("{n} players")));
    }
    let x = instance.intervals();
    let mut checked = 0;
    for bits in 0..1u32 << n {
        let participants = PlayerSet::from_bits(bits);
        let out = one_dim_search_with(instance, participants, value)?;
        for i in participants.iter() {
            for j in participants.iter().filter(|&j| j > i && x[j] == x[i]) {
                checked += 1;
                if out.outputs[i] != out.outputs[j] {
                    return Ok(PropertyReport::fail(
                        NAME,
                        checked,
                        Counterexample::Symmetry {
                            participants: participants.to_labels(),
                            players: [i + 1, j + 1],
                            detail: "identical intervals, different outputs".to_string(),
                        },
                    ));
                }
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

/// With the linear value, in every participation profile: when the two
/// extreme players differ they both gain `g = min(β_j - β_k, α_j - α_k) > 0`
/// and players other than them and their copies gain nothing; every output
/// lies inside its report and still contains the target.
pub fn interval_exchange_violation(
    instance: &IntervalInstance,
    participants: PlayerSet,
) -> Result<Option<String>> {
    let out = one_dim_search_with(instance, participants, &crate::interval_search::LinearValue)?;
    let x = instance.intervals();
    for (i, output) in out.outputs.iter().enumerate() {
        match output {
            IntervalOutput::Line if participants.contains(i) => {
                return Ok(Some(format!("participant {} got no interval", i + 1)))
            }
            IntervalOutput::Bounded(y) => {
                if !participants.contains(i) {
                    return Ok(Some(format!("nonparticipant {} got an interval", i + 1)));
                }
                if !y.is_within(&x[i]) || !y.contains(instance.target()) {
                    return Ok(Some(format!(
                        "output {y} of player {} is not a shrink around the target",
                        i + 1
                    )));
                }
            }
            IntervalOutput::Line => {}
        }
    }
    let v = &out.benefits;
    match out.pair {
        None => {
            if let Some(i) = (0..v.len()).find(|&i| v[i] != int(0)) {
                return Ok(Some(format!(
                    "no exchange but player {} gained {}",
                    i + 1,
                    v[i]
                )));
            }
        }
        Some((j, k)) => {
            let g = (x[j].hi() - x[k].hi()).min(x[j].lo() - x[k].lo());
            if g <= int(0) || v[j] != g || v[k] != g {
                return Ok(Some(format!(
                    "pair ({}, {}) gained {} and {}, expected {g} > 0",
                    j + 1,
                    k + 1,
                    v[j],
                    v[k]
                )));
            }
            for i in 0..v.len() {
                let copy = x[i] == x[j] || x[i] == x[k];
                let expected = if participants.contains(i) && copy {
                    g.clone()
                } else {
                    int(0)
                };
                if v[i] != expected {
                    return Ok(Some(format!(
                        "player {} gained {}, expected {expected}",
                        i + 1,
                        v[i]
                    )));
                }
            }
        }
    }
    Ok(None)
}
