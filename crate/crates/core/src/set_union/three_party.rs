use serde::Serialize;

use super::two_party;
use crate::error::{structural, Result};
use crate::model::ElemSet;

/// Which exchange pattern the three-party mechanism used after the common
/// and pairwise-shared elements were settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ThreePartyCase {
    /// The smallest player trades its whole residual set with both others.
    Case1,
    /// Both pairs trade their shared elements for exclusive ones, then the
    /// disjoint leftovers are exchanged three ways.
    Case2,
    /// Exclusive elements of the two smaller players are traded for shared
    /// ones, then those two finish with a two-party exchange.
    Case3,
}

/// Intermediate sets of one three-party run, in *local* labels.
///
/// `roles[l]` is the original (0-based) index of local player `l + 1`. Local
/// player 1 is the one outside the emptied pairwise intersection and local
/// player 2 holds the larger residual set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartyTrace {
    pub case: ThreePartyCase,
    pub roles: [usize; 3],
    /// `x1 ∩ x2 ∩ x3`.
    pub common: ElemSet,
    /// Size of the emptied pairwise intersection.
    pub shared_round: usize,
    /// Elements each local player received in the shared round.
    pub shared: [ElemSet; 3],
    /// `x'2 = x2 ∩ x1`, `x''2 = x2 \ x1`, `x'3 = x3 ∩ x1`, `x''3 = x3 \ x1`
    /// after the shared round.
    pub x2_shared: ElemSet,
    pub x2_own: ElemSet,
    pub x3_shared: ElemSet,
    pub x3_own: ElemSet,
}

/// Three-party set union. Outputs are returned in the original player order.
pub fn three_party(x: [ElemSet; 3]) -> [ElemSet; 3] {
    three_party_traced(x).0
}

pub fn three_party_traced(x: [ElemSet; 3]) -> ([ElemSet; 3], ThreePartyTrace) {
    let mut y = x;
    let common = x[0] & x[1] & x[2];
    let mut r = x.map(|s| s - common);

    // the pair with the smallest intersection; ties go to the lexicographically first pair
    let (a, b, one) = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        .into_iter()
        .min_by_key(|&(a, b, _)| (r[a] & r[b]).len())
        .expect("three pairs");
    let s = (r[a] & r[b]).len();

    // everyone receives s elements from the intersection of the other two
    let mut shared = [ElemSet::EMPTY; 3];
    shared[one] = r[a] & r[b];
    shared[a] = (r[b] & r[one]).first(s);
    shared[b] = (r[one] & r[a]).first(s);
    let traded = shared[0] | shared[1] | shared[2];
    for i in 0..3 {
        y[i] = y[i] | shared[i];
        r[i] = r[i] - traded;
    }

    let (p2, p3) = if r[a].len() >= r[b].len() {
        (a, b)
    } else {
        (b, a)
    };
    let p1 = one;
    let (x1, x2, x3) = (r[p1], r[p2], r[p3]);
    let x2_shared = x2 & x1;
    let x2_own = x2 - x1;
    let x3_shared = x3 & x1;
    let x3_own = x3 - x1;

    let case = if x2_shared.len() >= x3_own.len() && x2_own.len() >= x3_shared.len() {
        ThreePartyCase::Case1
    } else if x3_own.len() >= x2_shared.len() && x2_own.len() >= x3_shared.len() {
        ThreePartyCase::Case2
    } else {
        ThreePartyCase::Case3
    };

    match case {
        ThreePartyCase::Case1 => {
            let z = x2_shared.first(x3_own.len());
            let w = x2_own.first(x3_shared.len());
            y[p2] = y[p2] | x3;
            y[p3] = y[p3] | z | w;
            y[p1] = y[p1] | w | x3_own;
            let [r1, r2] = two_party(x1 - x3_shared, x2 - w);
            y[p1] = y[p1] | r1;
            y[p2] = y[p2] | r2;
        }
        ThreePartyCase::Case2 => {
            let w = x2_own.first(x3_shared.len());
            let z = x3_own.first(x2_shared.len());
            y[p2] = y[p2] | x3_shared | z;
            y[p3] = y[p3] | x2_shared | w;
            y[p1] = y[p1] | z | w;
            let [r1, r2, r3] =
                disjoint_exchange([x1 - (x2_shared | x3_shared), x2_own - w, x3_own - z]);
            y[p1] = y[p1] | r1;
            y[p2] = y[p2] | r2;
            y[p3] = y[p3] | r3;
        }
        ThreePartyCase::Case3 => {
            let w = x2_shared.first(x3_own.len());
            let z = x3_shared.first(x2_own.len());
            y[p2] = y[p2] | x3_own | z;
            y[p3] = y[p3] | x2_own | w;
            y[p1] = y[p1] | x2_own | x3_own;
            let [r2, r3] = two_party(x2_shared - w, x3_shared - z);
            y[p2] = y[p2] | r2;
            y[p3] = y[p3] | r3;
        }
    }

    let trace = ThreePartyTrace {
        case,
        roles: [p1, p2, p3],
        common,
        shared_round: s,
        shared: [shared[p1], shared[p2], shared[p3]],
        x2_shared,
        x2_own,
        x3_shared,
        x3_own,
    };
    (y, trace)
}

/// Three-way exchange of pairwise-disjoint sets.
///
/// With `m` the smallest set size, every player hands its `m` π-first
/// elements to both others. The exhausted players drop out and the remaining
/// two (if any) finish with [`two_party`] on what is left.
pub fn three_party_disjoint(x: [ElemSet; 3]) -> Result<[ElemSet; 3]> {
    if !(x[0].is_disjoint(x[1]) && x[1].is_disjoint(x[2]) && x[0].is_disjoint(x[2])) {
        return Err(structural(
            "three_party_disjoint needs pairwise disjoint sets",
        ));
    }
    Ok(disjoint_exchange(x))
}

fn disjoint_exchange(x: [ElemSet; 3]) -> [ElemSet; 3] {
    let m = x.iter().map(|s| s.len()).min().unwrap_or(0);
    let given = x.map(|s| s.first(m));
    let pooled = given[0] | given[1] | given[2];
    let mut y = x.map(|s| s | pooled);
    let rest: [ElemSet; 3] = [x[0] - given[0], x[1] - given[1], x[2] - given[2]];
    let live: Vec<usize> = (0..3).filter(|&i| !rest[i].is_empty()).collect();
    if let [i, j] = live[..] {
        let [ri, rj] = two_party(rest[i], rest[j]);
        y[i] = y[i] | ri;
        y[j] = y[j] | rj;
    }
    y
}
