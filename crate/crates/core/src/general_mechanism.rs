//! General mechanism over a monotone coalition value `V`: each cooperating
//! player is rewarded with its rewardable contribution
//! `φ_i(S) = max_{T ⊆ S, i ∈ T} min{V(T) - V({i}), V(T) - V(T \ {i})}`.

use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{structural, Error, Result};
use crate::model::rational::{int, ratio};
use crate::model::{Allocation, BenefitVector, ElemSet, PlayerSet, Rational, SetInstance};

/// Largest player count for a tabulated value function.
pub const MAX_VALUE_PLAYERS: usize = 16;

/// A monotone value table over all `2^n` coalitions, indexed by coalition bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupValueFn {
    n: usize,
    table: Vec<Rational>,
}

impl SubgroupValueFn {
    /// Validates `V(∅) = 0`, completeness and monotonicity.
    pub fn new(n: usize, table: Vec<Rational>) -> Result<Self> {
        if n > MAX_VALUE_PLAYERS {
            return Err(Error::Capacity(format!(
                "{n} players, value tables support at most {MAX_VALUE_PLAYERS}"
            )));
        }
        if table.len() != 1 << n {
            return Err(structural(format!(
                "value table for {n} players needs {} entries, got {}",
                1usize << n,
                table.len()
            )));
        }
        if !table[0].is_zero() {
            return Err(structural("the empty coalition must have value 0"));
        }
        for mask in 1..table.len() {
            let s = PlayerSet::from_bits(mask as u32);
            for i in s.iter() {
                let below = s.without(i).bits() as usize;
                if table[below] > table[mask] {
                    return Err(structural(format!(
                        "value table is not monotone: V({:?}) > V({:?})",
                        s.without(i),
                        s
                    )));
                }
            }
        }
        Ok(SubgroupValueFn { n, table })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: PlayerSet) -> &Rational {
        &self.table[s.bits() as usize]
    }

    /// Entries in coalition-bit order.
    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn all(&self) -> PlayerSet {
        PlayerSet::all(self.n)
    }
}

/// Rewardable contributions of the members of one coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVector {
    pub coalition: PlayerSet,
    /// One entry per player; 0 outside the coalition.
    pub values: Vec<Rational>,
}

/// `φ_i(S)` by enumerating every `T ⊆ S` that contains `i`.
pub fn phi(v: &SubgroupValueFn, s: PlayerSet, i: usize) -> Result<Rational> {
    if !s.contains(i) {
        return Err(structural(format!(
            "player {} is not in the coalition",
            i + 1
        )));
    }
    if !s.is_subset(v.all()) {
        return Err(structural("coalition outside the value table"));
    }
    let alone = v.value(PlayerSet::singleton(i));
    let best = s
        .without(i)
        .subsets()
        .map(|rest| {
            let t = rest.with(i);
            let vt = v.value(t);
            let over_alone = vt - alone;
            let marginal = vt - v.value(rest);
            over_alone.min(marginal)
        })
        .max()
        .expect("T = {i} is always a candidate");
    Ok(best)
}

pub fn phi_vector(v: &SubgroupValueFn, s: PlayerSet) -> Result<PhiVector> {
    let values = (0..v.players())
        .map(|i| {
            if s.contains(i) {
                phi(v, s, i)
            } else {
                Ok(int(0))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiVector {
        coalition: s,
        values,
    })
}

/// Benefits of the general mechanism: `φ_i(S)` for cooperating players, 0 otherwise.
pub fn general_mechanism(
    v: &SubgroupValueFn,
    cooperating: PlayerSet,
) -> Result<BenefitVector<Rational>> {
    Ok(BenefitVector(phi_vector(v, cooperating)?.values))
}

/// `V(S) = |∪_{i ∈ S} S_i|` over the true sets of `instance`.
pub fn make_coverage_value(instance: &SetInstance) -> Result<SubgroupValueFn> {
    let n = instance.players();
    if n > MAX_VALUE_PLAYERS {
        return Err(Error::Capacity(format!(
            "{n} players, value tables support at most {MAX_VALUE_PLAYERS}"
        )));
    }
    let sets = instance.true_sets();
    let mut unions = vec![ElemSet::EMPTY; 1 << n];
    for mask in 1..unions.len() {
        let low = mask.trailing_zeros() as usize;
        unions[mask] = unions[mask & (mask - 1)] | sets[low];
    }
    SubgroupValueFn::new(n, unions.iter().map(|u| int(u.len() as i64)).collect())
}

/// Realizes coverage rewards: member `i` gets its `φ_i` π-first elements of
/// the coalition's union that it does not hold; others get nothing.
pub fn coverage_allocate(instance: &SetInstance, phi: &PhiVector) -> Result<Allocation> {
    let sets = instance.true_sets();
    if phi.values.len() != sets.len() {
        return Err(structural("reward vector does not match the instance"));
    }
    let union = phi
        .coalition
        .iter()
        .fold(ElemSet::EMPTY, |acc, i| acc | sets[i]);
    let outputs = (0..sets.len())
        .map(|i| {
            if !phi.coalition.contains(i) {
                return Ok(ElemSet::EMPTY);
            }
            let reward = &phi.values[i];
            let pool = union - sets[i];
            let count = reward
                .is_integer()
                .then(|| reward.to_integer().to_usize())
                .flatten()
                .filter(|&c| c <= pool.len())
                .ok_or_else(|| {
                    structural(format!(
                        "reward {reward} of player {} cannot be realized from {} new elements",
                        i + 1,
                        pool.len()
                    ))
                })?;
            Ok(sets[i] | pool.first(count))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Allocation::new(outputs))
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64) -> Rational {
    ratio(rng.gen_range(0..=max_num), rng.gen_range(1..=3))
}

/// `V(S) = Σ_{T ⊆ S} w_T` with random non-negative weights on non-empty `T`;
/// about half the weights are zero.
pub fn random_totally_monotone<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SubgroupValueFn> {
    if n > MAX_VALUE_PLAYERS {
        return Err(Error::Capacity(format!(
            "{n} players, at most {MAX_VALUE_PLAYERS}"
        )));
    }
    let size = 1usize << n;
    let mut table: Vec<Rational> = (0..size)
        .map(|mask| {
            if mask == 0 || rng.gen_bool(0.5) {
                int(0)
            } else {
                small_rational(rng, 4)
            }
        })
        .collect();
    // zeta transform: sum weights over all subsets
    for bit in 0..n {
        for mask in 0..size {
            if mask >> bit & 1 == 1 {
                let lower = table[mask ^ (1 << bit)].clone();
                table[mask] += lower;
            }
        }
    }
    SubgroupValueFn::new(n, table)
}

/// A monotone table built bottom-up: each coalition adds a random
/// non-negative increment to the largest value among its maximal subsets.
pub fn random_monotone<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SubgroupValueFn> {
    if n > MAX_VALUE_PLAYERS {
        return Err(Error::Capacity(format!(
            "{n} players, at most {MAX_VALUE_PLAYERS}"
        )));
    }
    let size = 1usize << n;
    let mut table = vec![int(0); size];
    for mask in 1..size {
        let s = PlayerSet::from_bits(mask as u32);
        let floor = s
            .iter()
            .map(|i| table[s.without(i).bits() as usize].clone())
            .max()
            .unwrap_or_else(|| int(0));
        let bump = if rng.gen_bool(0.3) {
            int(0)
        } else {
            small_rational(rng, 3)
        };
        table[mask] = floor + bump;
    }
    SubgroupValueFn::new(n, table)
}
