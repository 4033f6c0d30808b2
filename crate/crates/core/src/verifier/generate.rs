//! Seeded instance generators and canonical enumerations for sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::average_point::PointInstance;
use crate::error::Result;
use crate::interval_search::{Interval, IntervalInstance};
use crate::model::rational::ratio;
use crate::model::{ElemSet, SetInstance};

/// Elements `e1..em`, each owned by each player independently with probability 1/2.
pub fn random_set_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
) -> Result<SetInstance> {
    let sets = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).collect::<ElemSet>())
        .collect();
    SetInstance::from_sets(m, sets)
}

/// Like [`random_set_instance`], then two random players are tied together:
/// half the time one report becomes a subset of the other, otherwise the two
/// get reports of equal size.
pub fn random_set_instance_with_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
) -> Result<SetInstance> {
    let base = random_set_instance(rng, n, m)?;
    if n < 2 {
        return Ok(base);
    }
    let mut sets = base.true_sets().to_vec();
    let mut pair: Vec<usize> = (0..n).collect();
    pair.shuffle(rng);
    let (a, b) = (pair[0], pair[1]);
    if rng.gen_bool(0.5) {
        sets[a] = sets[b].iter().filter(|_| rng.gen_bool(0.5)).collect();
    } else {
        let mut ranks: Vec<usize> = (0..m).collect();
        ranks.shuffle(rng);
        sets[a] = ranks[..sets[b].len()].iter().copied().collect();
    }
    SetInstance::from_sets(m, sets)
}

/// Target on the half-integer grid in `[-4, 4]`; each side of every interval
/// extends by a multiple of 1/2 up to 4. A quarter of the players (after the
/// first) copy an earlier interval.
pub fn random_interval_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<IntervalInstance> {
    let t = ratio(rng.gen_range(-8..=8), 2);
    let mut intervals: Vec<Interval> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.gen_bool(0.25) {
            let copy = intervals[rng.gen_range(0..i)].clone();
            intervals.push(copy);
            continue;
        }
        let left = ratio(rng.gen_range(0..=8), 2);
        let right = ratio(rng.gen_range(0..=8), 2);
        intervals.push(Interval::new(&t - left, &t + right)?);
    }
    IntervalInstance::new(t, intervals)
}

/// Points `a/b` with `a` in `-12..=12` and `b` in `1..=4`.
pub fn random_point_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<PointInstance> {
    PointInstance::new(
        (0..n)
            .map(|_| ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4)))
            .collect(),
    )
}

/// Every set profile of `n` players over at most `max_m` elements, up to
/// dropping elements nobody owns.
///
/// A profile is determined by the sequence of non-empty owner masks of its
/// elements in π order, so each sequence of length `0..=max_m` over the
/// `2^n - 1` masks is produced exactly once. Element order is kept because
/// the mechanisms select π-prefixes.
pub fn canonical_profiles(n: usize, max_m: usize) -> Vec<Vec<ElemSet>> {
    let masks = (1u32 << n) - 1;
    let mut out = Vec::new();
    for m in 0..=max_m {
        let total = (masks as u64).pow(m as u32);
        for code in 0..total {
            let mut sets = vec![ElemSet::EMPTY; n];
            let mut c = code;
            for rank in 0..m {
                let owners = (c % masks as u64) as u32 + 1;
                c /= masks as u64;
                for (p, set) in sets.iter_mut().enumerate() {
                    if owners >> p & 1 == 1 {
                        set.insert(rank);
                    }
                }
            }
            out.push(sets);
        }
    }
    out
}
