use std::collections::HashMap;

use super::{Counterexample, PropertyReport};
use crate::error::{structural, Result};
use crate::model::{
    information_benefit, participants_of, set_benefits, utilities, utility_of, Allocation, ElemSet,
    PlayerSet, SetInstance, StrategyProfile,
};
use crate::set_union::{compute_v, SetMechanism};

/// Default universe bound for the subset-hiding check.
pub const DEFAULT_MAX_UNIVERSE: usize = 6;

/// Largest player count for checks that enumerate participation profiles.
pub const MAX_PROFILE_PLAYERS: usize = 16;

fn labels_to_set(labels: &[usize], n: usize) -> Result<PlayerSet> {
    labels.iter().try_fold(PlayerSet::EMPTY, |s, &l| {
        if l == 0 || l > n {
            Err(structural(format!("player {l} does not exist")))
        } else {
            Ok(s.with(l - 1))
        }
    })
}

fn player_index(label: usize, n: usize) -> Result<usize> {
    if label == 0 || label > n {
        Err(structural(format!("player {label} does not exist")))
    } else {
        Ok(label - 1)
    }
}

/// Utilities of truthful reporting versus `player` reporting `report`, both
/// measured in elements new to the true sets.
fn hiding_utilities(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    truthful: i64,
    player: usize,
    report: ElemSet,
) -> Result<(i64, i64)> {
    let mut reports = instance.true_sets().to_vec();
    reports[player] = report;
    let outputs = mechanism.run(&reports)?;
    let hiding = utility_of(&set_benefits(instance.true_sets(), &outputs), player);
    Ok((truthful, hiding))
}

/// No player gains by reporting a strict subset of its true set while the
/// others report truthfully.
pub fn check_truthful_subsets(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    max_universe: usize,
) -> Result<PropertyReport> {
    const NAME: &str = "truthful-subsets";
    let m = instance.universe().len();
    if m > max_universe {
        return Ok(PropertyReport::skipped(
            NAME,
            format!("universe of {m} elements exceeds the limit of {max_universe}"),
        ));
    }
    let truth = instance.true_sets();
    let base = utilities(&set_benefits(truth, &mechanism.run(truth)?));
    let mut checked = 0;
    for (player, &own) in truth.iter().enumerate() {
        for report in own.subsets().skip(1) {
            checked += 1;
            let (u_truth, u_hide) =
                hiding_utilities(mechanism, instance, base[player], player, report)?;
            if u_hide > u_truth {
                return Ok(PropertyReport::fail(
                    NAME,
                    checked,
                    Counterexample::Hiding {
                        player: player + 1,
                        report: instance.universe().names(report),
                        utility_truthful: u_truth.to_string(),
                        utility_hiding: u_hide.to_string(),
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

pub fn replay_hiding(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    cex: &Counterexample,
) -> Result<bool> {
    let Counterexample::Hiding { player, report, .. } = cex else {
        return Err(structural("not a hiding counterexample"));
    };
    let player = player_index(*player, instance.players())?;
    let report = instance.universe().set(report)?;
    if !report.is_subset(instance.true_sets()[player]) {
        return Err(structural(
            "the hidden report is not a subset of the true set",
        ));
    }
    let truth = instance.true_sets();
    let truthful = utility_of(&set_benefits(truth, &mechanism.run(truth)?), player);
    let (u_truth, u_hide) = hiding_utilities(mechanism, instance, truthful, player, report)?;
    Ok(u_hide > u_truth)
}

/// `|∪x \ x_i|` for participants, 0 for players with an empty report.
pub fn pools(reports: &[ElemSet]) -> Vec<i64> {
    let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
    reports
        .iter()
        .map(|&x| {
            if x.is_empty() {
                0
            } else {
                (union - x).len() as i64
            }
        })
        .collect()
}

/// The structural Pareto characterization: with `i` a player of largest
/// benefit and `V` the largest benefit among the others, every `j != i` has
/// `v_j = min(V, pool_j)`. Returns the reason when it does not hold.
pub fn pareto_structure_violation(pools: &[i64], benefits: &[i64]) -> Option<String> {
    if pools.len() != benefits.len() {
        return Some("pool and benefit vectors differ in length".to_string());
    }
    for (j, (&v, &p)) in benefits.iter().zip(pools).enumerate() {
        if v < 0 || v > p {
            return Some(format!("player {} has benefit {v} outside 0..={p}", j + 1));
        }
    }
    let top = (0..benefits.len()).max_by_key(|&i| (benefits[i], std::cmp::Reverse(i)))?;
    let level = benefits
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != top)
        .map(|(_, &v)| v)
        .max()
        .unwrap_or(0);
    benefits
        .iter()
        .zip(pools)
        .enumerate()
        .filter(|&(j, _)| j != top)
        .find(|&(_, (&v, &p))| v != level.min(p))
        .map(|(j, (&v, &p))| {
            format!(
                "player {} has benefit {v} but the level is {level} with {p} elements available",
                j + 1
            )
        })
}

/// Bounds of the brute-force Pareto oracle.
pub const PARETO_ORACLE_MAX_PLAYERS: usize = 3;
pub const PARETO_ORACLE_MAX_POOL: i64 = 6;

/// Brute-force search for a feasible benefit vector whose utilities weakly
/// improve on every player's and strictly on someone's. `None` beyond
/// [`PARETO_ORACLE_MAX_PLAYERS`] players or [`PARETO_ORACLE_MAX_POOL`] per pool.
pub fn pareto_dominator(pools: &[i64], benefits: &[i64]) -> Option<Option<Vec<i64>>> {
    if pools.len() > PARETO_ORACLE_MAX_PLAYERS || pools.iter().any(|&p| p > PARETO_ORACLE_MAX_POOL)
    {
        return None;
    }
    let size: u64 = pools.iter().map(|&p| p.max(0) as u64 + 1).product();
    let current = utilities(benefits);
    let mut candidate = vec![0i64; pools.len()];
    for _ in 0..size {
        let u = utilities(&candidate);
        let weakly = u.iter().zip(&current).all(|(a, b)| a >= b);
        if weakly && u != current {
            return Some(Some(candidate));
        }
        // odometer step
        for (c, &p) in candidate.iter_mut().zip(pools) {
            if *c < p {
                *c += 1;
                break;
            }
            *c = 0;
        }
    }
    Some(None)
}

/// Pareto optimality of `alloc` for `profile`, among outcomes that give
/// players with an empty report nothing.
pub fn check_pareto(
    instance: &SetInstance,
    profile: &StrategyProfile,
    alloc: &Allocation,
) -> Result<PropertyReport> {
    const NAME: &str = "pareto";
    let benefits = information_benefit(instance, profile, alloc)?.0;
    let pools = pools(profile.reports());
    if let Some(reason) = pareto_structure_violation(&pools, &benefits) {
        let dominated_by = pareto_dominator(&pools, &benefits).flatten();
        return Ok(PropertyReport::fail(
            NAME,
            1,
            Counterexample::Pareto {
                benefits,
                pools,
                reason,
                dominated_by,
            },
        ));
    }
    match pareto_dominator(&pools, &benefits) {
        None => Ok(PropertyReport::pass(NAME, 1).with_note(
            "beyond the brute-force oracle bounds (3 players, pools of 6); structural check only",
        )),
        Some(None) => Ok(PropertyReport::pass(NAME, 1)),
        Some(Some(better)) => Ok(PropertyReport::fail(
            NAME,
            1,
            Counterexample::Pareto {
                benefits,
                pools,
                reason: "a feasible benefit vector dominates".to_string(),
                dominated_by: Some(better),
            },
        )),
    }
}

/// Re-evaluates a Pareto counterexample from its benefit and pool vectors.
pub fn replay_pareto(cex: &Counterexample) -> Result<bool> {
    let Counterexample::Pareto {
        benefits, pools, ..
    } = cex
    else {
        return Err(structural("not a Pareto counterexample"));
    };
    if benefits.len() != pools.len() {
        return Err(structural("benefit and pool vectors differ in length"));
    }
    Ok(pareto_structure_violation(pools, benefits).is_some()
        || matches!(pareto_dominator(pools, benefits), Some(Some(_))))
}

/// The uniform level by downward search: the largest `V'` not exceeding
/// `max_k d_k` with `min(V', d_k) + V'_{-k} >= V'` for every member `k`,
/// where `V'_{-k}` is the same search on the coalition without `k`.
pub fn oracle_level(reports: &[ElemSet]) -> u64 {
    fn level(mask: u32, reports: &[ElemSet], memo: &mut HashMap<u32, u64>) -> u64 {
        let coalition = PlayerSet::from_bits(mask);
        if coalition.len() <= 1 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let mut deficit = Vec::new();
        let mut rest = Vec::new();
        for k in coalition.iter() {
            let others = coalition
                .without(k)
                .iter()
                .fold(ElemSet::EMPTY, |acc, j| acc | reports[j]);
            deficit.push((others - reports[k]).len() as u64);
            rest.push(level(coalition.without(k).bits(), reports, memo));
        }
        let start = deficit.iter().copied().max().unwrap_or(0);
        let found = (0..=start)
            .rev()
            .find(|&cand| {
                deficit
                    .iter()
                    .zip(&rest)
                    .all(|(&d, &r)| cand.min(d) + r >= cand)
            })
            .unwrap_or(0);
        memo.insert(mask, found);
        found
    }
    let mut memo = HashMap::new();
    level(PlayerSet::all(reports.len()).bits(), reports, &mut memo)
}

/// Oracle bounds for the level comparison.
pub const WELFARE_MAX_PLAYERS: usize = 4;
pub const WELFARE_MAX_UNIVERSE: usize = 8;

/// The recursive closed form agrees with [`oracle_level`].
pub fn check_welfare_optimal_v(reports: &[ElemSet]) -> Result<PropertyReport> {
    check_welfare_level(reports, |r| compute_v(r).value)
}

/// Compares an arbitrary level rule against [`oracle_level`].
pub fn check_welfare_level(
    reports: &[ElemSet],
    level: fn(&[ElemSet]) -> u64,
) -> Result<PropertyReport> {
    const NAME: &str = "welfare-v";
    let universe = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x).len();
    if reports.len() > WELFARE_MAX_PLAYERS || universe > WELFARE_MAX_UNIVERSE {
        return Ok(PropertyReport::skipped(
            NAME,
            format!(
                "{} players over {universe} elements exceeds {WELFARE_MAX_PLAYERS} players / {WELFARE_MAX_UNIVERSE} elements",
                reports.len()
            ),
        ));
    }
    let mechanism = level(reports);
    let oracle = oracle_level(reports);
    if mechanism == oracle {
        Ok(PropertyReport::pass(NAME, 1))
    } else {
        Ok(PropertyReport::fail(
            NAME,
            1,
            Counterexample::Level { mechanism, oracle },
        ))
    }
}

fn enumerate_profiles(
    n: usize,
    name: &str,
) -> std::result::Result<Vec<PlayerSet>, Box<PropertyReport>> {
    if n > MAX_PROFILE_PLAYERS {
        return Err(Box::new(PropertyReport::skipped(
            name,
            format!("{n} players, profile enumeration limited to {MAX_PROFILE_PLAYERS}"),
        )));
    }
    Ok((0..1u32 << n).map(PlayerSet::from_bits).collect())
}

fn aon_run(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    participants: PlayerSet,
) -> Result<(Vec<ElemSet>, Vec<ElemSet>)> {
    let profile = StrategyProfile::all_or_nothing(instance, participants);
    let reports = profile.reports().to_vec();
    let outputs = mechanism.run(&reports)?;
    Ok((reports, outputs))
}

fn symmetry_violation(
    reports: &[ElemSet],
    outputs: &[ElemSet],
    i: usize,
    j: usize,
) -> Option<String> {
    let v = set_benefits(reports, outputs);
    if reports[i].len() == reports[j].len() && v[i] != v[j] {
        return Some(format!(
            "equal report sizes {} but benefits {} and {}",
            reports[i].len(),
            v[i],
            v[j]
        ));
    }
    if reports[i] == reports[j] && outputs[i] != outputs[j] {
        return Some("identical reports but different outputs".to_string());
    }
    None
}

/// Participants with reports of equal size receive equal benefits, and
/// identical reports identical outputs, in every participation profile.
pub fn check_symmetry(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
) -> Result<PropertyReport> {
    const NAME: &str = "symmetry";
    let profiles = match enumerate_profiles(instance.players(), NAME) {
        Ok(p) => p,
        Err(skip) => return Ok(*skip),
    };
    let mut checked = 0;
    for participants in profiles {
        let (reports, outputs) = aon_run(mechanism, instance, participants)?;
        let active = participants_of(&reports);
        for i in active.iter() {
            for j in active.iter().filter(|&j| j > i) {
                checked += 1;
                if let Some(detail) = symmetry_violation(&reports, &outputs, i, j) {
                    return Ok(PropertyReport::fail(
                        NAME,
                        checked,
                        Counterexample::Symmetry {
                            participants: participants.to_labels(),
                            players: [i + 1, j + 1],
                            detail,
                        },
                    ));
                }
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

pub fn replay_symmetry(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    cex: &Counterexample,
) -> Result<bool> {
    let Counterexample::Symmetry {
        participants,
        players,
        ..
    } = cex
    else {
        return Err(structural("not a symmetry counterexample"));
    };
    let n = instance.players();
    let participants = labels_to_set(participants, n)?;
    let (i, j) = (player_index(players[0], n)?, player_index(players[1], n)?);
    let (reports, outputs) = aon_run(mechanism, instance, participants)?;
    Ok(symmetry_violation(&reports, &outputs, i, j).is_some())
}

/// `x_k ⊆ x_i` implies `y_k ⊆ y_i` in every participation profile.
pub fn check_strong_dominance(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
) -> Result<PropertyReport> {
    const NAME: &str = "strong-dominance";
    let n = instance.players();
    let profiles = match enumerate_profiles(n, NAME) {
        Ok(p) => p,
        Err(skip) => return Ok(*skip),
    };
    let mut checked = 0;
    for participants in profiles {
        let (reports, outputs) = aon_run(mechanism, instance, participants)?;
        for k in 0..n {
            for i in (0..n).filter(|&i| i != k && reports[k].is_subset(reports[i])) {
                checked += 1;
                if !outputs[k].is_subset(outputs[i]) {
                    return Ok(PropertyReport::fail(
                        NAME,
                        checked,
                        Counterexample::Dominance {
                            participants: participants.to_labels(),
                            smaller: k + 1,
                            larger: i + 1,
                        },
                    ));
                }
            }
        }
    }
    Ok(PropertyReport::pass(NAME, checked))
}

pub fn replay_dominance(
    mechanism: &dyn SetMechanism,
    instance: &SetInstance,
    cex: &Counterexample,
) -> Result<bool> {
    let Counterexample::Dominance {
        participants,
        smaller,
        larger,
    } = cex
    else {
        return Err(structural("not a dominance counterexample"));
    };
    let n = instance.players();
    let participants = labels_to_set(participants, n)?;
    let (k, i) = (player_index(*smaller, n)?, player_index(*larger, n)?);
    let (reports, outputs) = aon_run(mechanism, instance, participants)?;
    Ok(reports[k].is_subset(reports[i]) && !outputs[k].is_subset(outputs[i]))
}
