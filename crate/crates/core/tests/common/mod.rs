//! Independent reference computations. Nothing here calls into the
//! mechanisms; sets are `BTreeSet`s and values plain integers or rationals.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use info_exchange::interval_search::IntervalInstance;
use info_exchange::model::rational::{int, Rational};
use info_exchange::model::ElemSet;
use num_traits::Zero;

pub type Set = BTreeSet<usize>;

pub fn to_set(x: ElemSet) -> Set {
    x.iter().collect()
}

pub fn union_of(sets: &[Set]) -> Set {
    sets.iter().flatten().copied().collect()
}

pub fn minus(a: &Set, b: &Set) -> Set {
    a.difference(b).copied().collect()
}

/// `u_i = v_i - max_{j != i} v_j`, by a double loop; a lone player keeps `v`.
pub fn naive_utilities<T>(v: &[T]) -> Vec<T>
where
    T: Clone + Ord + Zero + std::ops::Sub<Output = T>,
{
    if v.len() == 1 {
        return v.to_vec();
    }
    (0..v.len())
        .map(|i| {
            let mut rival: Option<T> = None;
            for (j, x) in v.iter().enumerate() {
                if j != i && rival.as_ref().is_none_or(|r| x > r) {
                    rival = Some(x.clone());
                }
            }
            v[i].clone() - rival.unwrap_or_else(T::zero)
        })
        .collect()
}

/// `d_k = |∪_{j != k} x_j \ x_k|` over the listed coalition.
pub fn deficits(sets: &[Set]) -> Vec<u64> {
    (0..sets.len())
        .map(|k| {
            let others: Vec<Set> = (0..sets.len())
                .filter(|&j| j != k)
                .map(|j| sets[j].clone())
                .collect();
            minus(&union_of(&others), &sets[k]).len() as u64
        })
        .collect()
}

fn without(sets: &[Set], k: usize) -> Vec<Set> {
    sets.iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, s)| s.clone())
        .collect()
}

/// `V = min{min_k (d_k + V_{-k}), max_k d_k}`, straight recursion on lists.
pub fn level_by_recursion(sets: &[Set]) -> u64 {
    if sets.len() <= 1 {
        return 0;
    }
    let d = deficits(sets);
    let through = (0..sets.len())
        .map(|k| d[k] + level_by_recursion(&without(sets, k)))
        .min()
        .unwrap();
    through.min(*d.iter().max().unwrap())
}

/// The largest `V' <= max_k d_k` that no member wants to leave:
/// `min(V', d_k) >= V' - V'_{-k}` for every `k`, found by counting up.
pub fn stable_level(sets: &[Set]) -> u64 {
    fn go(mask: u32, sets: &[Set], memo: &mut HashMap<u32, u64>) -> u64 {
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let members: Vec<usize> = (0..sets.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let value = if members.len() <= 1 {
            0
        } else {
            let listed: Vec<Set> = members.iter().map(|&i| sets[i].clone()).collect();
            let d = deficits(&listed);
            let rest: Vec<u64> = members
                .iter()
                .map(|&i| go(mask & !(1 << i), sets, memo))
                .collect();
            let top = *d.iter().max().unwrap();
            let mut best = 0;
            for cand in 0..=top {
                if (0..members.len()).all(|k| cand.min(d[k]) + rest[k] >= cand) {
                    best = cand;
                }
            }
            best
        };
        memo.insert(mask, value);
        value
    }
    go((1u32 << sets.len()) - 1, sets, &mut HashMap::new())
}

/// `φ_i(S)` by a depth-first walk that decides, from the highest player
/// down, whether each other member of `S` joins `T`.
pub fn phi_dfs(table: &[Rational], s: u32, i: usize) -> Rational {
    let others: Vec<usize> = (0..32)
        .rev()
        .filter(|&j| j != i && s >> j & 1 == 1)
        .collect();
    let single = table[1 << i].clone();
    fn walk(
        table: &[Rational],
        others: &[usize],
        i: usize,
        t: u32,
        single: &Rational,
        best: &mut Rational,
    ) {
        match others.split_first() {
            None => {
                let v = &table[t as usize];
                let over_single = v - single;
                let marginal = v - &table[(t & !(1 << i)) as usize];
                let term = over_single.min(marginal);
                if term > *best {
                    *best = term;
                }
            }
            Some((&j, rest)) => {
                walk(table, rest, i, t | 1 << j, single, best);
                walk(table, rest, i, t, single, best);
            }
        }
    }
    let mut best = int(0) - int(1) - table.iter().fold(int(0), |a, x| a + x);
    walk(table, &others, i, 1 << i, &single, &mut best);
    best
}

/// Every monotone 0/1 table on `n` players with `V(∅) = 0`, built from pairs
/// `f0 <= f1` on one player fewer.
pub fn monotone_boolean_tables(n: usize) -> Vec<Vec<bool>> {
    if n == 0 {
        return vec![vec![false], vec![true]];
    }
    let smaller = monotone_boolean_tables(n - 1);
    let mut out = Vec::new();
    for f0 in &smaller {
        for f1 in &smaller {
            if f0.iter().zip(f1).all(|(a, b)| !a || *b) {
                out.push(f0.iter().chain(f1).copied().collect());
            }
        }
    }
    out
}

pub fn zero_based_boolean_tables(n: usize) -> Vec<Vec<Rational>> {
    monotone_boolean_tables(n)
        .into_iter()
        .filter(|t| !t[0])
        .map(|t| t.into_iter().map(|b| int(b as i64)).collect())
        .collect()
}

pub fn mean(points: &[Rational]) -> Rational {
    points.iter().fold(int(0), |a, x| a + x) / int(points.len() as i64)
}

/// `-|y - ā|^p`.
pub fn loss_value(y: &Rational, mean: &Rational, p: u32) -> Rational {
    let d = if y > mean { y - mean } else { mean - y };
    if p == 1 {
        -d
    } else {
        -(&d * &d)
    }
}

/// Averaging benefits for a participation mask, scored against the true mean.
pub fn average_benefits(points: &[Rational], mask: u32, p: u32) -> Vec<Rational> {
    let truth = mean(points);
    let joined: Vec<Rational> = (0..points.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| points[i].clone())
        .collect();
    (0..points.len())
        .map(|i| {
            if mask >> i & 1 == 0 {
                int(0)
            } else {
                loss_value(&mean(&joined), &truth, p) - loss_value(&points[i], &truth, p)
            }
        })
        .collect()
}

/// Expected outcome of one-dimensional search with the linear value.
pub fn interval_oracle(
    inst: &IntervalInstance,
    mask: u32,
) -> (Vec<Option<(Rational, Rational)>>, Vec<Rational>) {
    let x = inst.intervals();
    let members: Vec<usize> = (0..x.len()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut outputs: Vec<Option<(Rational, Rational)>> = vec![None; x.len()];
    let mut benefits = vec![int(0); x.len()];
    for &i in &members {
        outputs[i] = Some((x[i].lo().clone(), x[i].hi().clone()));
    }
    if members.is_empty() {
        return (outputs, benefits);
    }
    let mut j = members[0];
    let mut k = members[0];
    for &i in &members {
        let (a, b) = (x[i].lo(), x[i].hi());
        if a > x[j].lo() || (a == x[j].lo() && b < x[j].hi()) {
            j = i;
        }
        if b < x[k].hi() || (b == x[k].hi() && a > x[k].lo()) {
            k = i;
        }
    }
    if x[j] == x[k] {
        return (outputs, benefits);
    }
    let g = (x[j].hi() - x[k].hi()).min(x[j].lo() - x[k].lo());
    for &i in &members {
        if x[i] == x[j] {
            outputs[i] = Some((x[j].lo().clone(), x[j].hi() - &g));
            benefits[i] = g.clone();
        } else if x[i] == x[k] {
            outputs[i] = Some((x[k].lo() + &g, x[k].hi().clone()));
            benefits[i] = g.clone();
        }
    }
    (outputs, benefits)
}

/// Set utilities of `outputs` against the true sets, counted with `BTreeSet`s.
pub fn set_utilities(truth: &[ElemSet], outputs: &[ElemSet]) -> Vec<i64> {
    let v: Vec<i64> = truth
        .iter()
        .zip(outputs)
        .map(|(&x, &y)| minus(&to_set(y), &to_set(x)).len() as i64)
        .collect();
    naive_utilities(&v)
}

/// First `(player, others mask)` where joining lowers the player's utility,
/// with `run` mapping all-or-nothing reports to outputs.
pub fn set_participation_violation(
    truth: &[ElemSet],
    run: impl Fn(&[ElemSet]) -> Vec<ElemSet>,
) -> Option<(usize, u32)> {
    let n = truth.len();
    let reports = |mask: u32| -> Vec<ElemSet> {
        (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    truth[i]
                } else {
                    ElemSet::EMPTY
                }
            })
            .collect()
    };
    for i in 0..n {
        for others in (0..1u32 << n).filter(|m| m >> i & 1 == 0) {
            let joined = set_utilities(truth, &run(&reports(others | 1 << i)))[i];
            let apart = set_utilities(truth, &run(&reports(others)))[i];
            if joined < apart {
                return Some((i, others));
            }
        }
    }
    None
}
