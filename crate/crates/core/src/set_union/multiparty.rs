use std::collections::BTreeMap;

use crate::error::{structural, Error, Result};
use crate::model::{participants_of, Allocation, ElemSet, PlayerSet, SetInstance, StrategyProfile};

/// Largest participant count [`compute_v`] accepts; the recursion tabulates
/// all `2^n` sub-coalitions.
pub const MAX_COMPUTE_V_PLAYERS: usize = 20;

/// Result of the recursive uniform-benefit computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeVTrace {
    /// The uniform benefit level `V` of the full coalition.
    pub value: u64,
    /// `V` of every sub-coalition with at least two members, keyed by the
    /// 0-based positions of its members in the input list.
    pub coalition_values: BTreeMap<PlayerSet, u64>,
    /// `d_k = |z_{-k} \ x_k|`, where `z_{-k}` is the union of everyone else.
    pub deficits: Vec<u64>,
}

impl ComputeVTrace {
    /// `V` of the coalition without member `k`.
    pub fn without(&self, k: usize) -> u64 {
        let n = self.deficits.len();
        let rest = PlayerSet::all(n).without(k);
        self.coalition_values.get(&rest).copied().unwrap_or(0)
    }
}

/// `V(P) = min{ min_k (d_k + V(P \ k)), max_k d_k }` with `V = 0` for at most
/// one member, evaluated over every sub-coalition of `reports`.
///
/// # Panics
/// If more than [`MAX_COMPUTE_V_PLAYERS`] reports are given.
pub fn compute_v(reports: &[ElemSet]) -> ComputeVTrace {
    let n = reports.len();
    assert!(
        n <= MAX_COMPUTE_V_PLAYERS,
        "compute_v supports at most {MAX_COMPUTE_V_PLAYERS} players"
    );
    let deficits_of = |coalition: PlayerSet, unions: &[ElemSet]| -> Vec<(usize, u64)> {
        coalition
            .iter()
            .map(|k| {
                let others = unions[coalition.without(k).bits() as usize];
                (k, (others - reports[k]).len() as u64)
            })
            .collect()
    };

    let size = 1usize << n;
    let mut unions = vec![ElemSet::EMPTY; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        unions[mask] = unions[mask & (mask - 1)] | reports[low];
    }

    // sub-masks are numerically smaller, so ascending order respects the recursion
    let mut table = vec![0u64; size];
    let mut coalition_values = BTreeMap::new();
    for mask in 1..size {
        let coalition = PlayerSet::from_bits(mask as u32);
        if coalition.len() < 2 {
            continue;
        }
        let d = deficits_of(coalition, &unions);
        let stay = d
            .iter()
            .map(|&(k, dk)| dk + table[coalition.without(k).bits() as usize])
            .min()
            .unwrap_or(0);
        let cap = d.iter().map(|&(_, dk)| dk).max().unwrap_or(0);
        table[mask] = stay.min(cap);
        coalition_values.insert(coalition, table[mask]);
    }

    let full = PlayerSet::all(n);
    let deficits = if n == 0 {
        Vec::new()
    } else {
        let mut d = vec![0u64; n];
        for (k, dk) in deficits_of(full, &unions) {
            d[k] = dk;
        }
        d
    };
    ComputeVTrace {
        value: table[size - 1],
        coalition_values,
        deficits,
    }
}

/// Output of the multiparty mechanism together with its `V` computation over
/// the participants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartyOutcome {
    pub outputs: Vec<ElemSet>,
    pub participants: PlayerSet,
    /// Trace over the participants, indexed by their position among participants.
    pub trace: ComputeVTrace,
}

/// Multiparty set union on raw reports; a player with an empty report is a
/// nonparticipant and receives nothing.
///
/// Each participant `i` obtains `v_i = min(V, |u \ x_i|)` new elements, the
/// π-first ones of `u \ x_i`, where `u` is the union of all reports.
pub fn multiparty_allocate(reports: &[ElemSet]) -> Result<MultipartyOutcome> {
    let participants = participants_of(reports);
    if participants.len() > MAX_COMPUTE_V_PLAYERS {
        return Err(Error::Capacity(format!(
            "{} participants, at most {MAX_COMPUTE_V_PLAYERS} supported",
            participants.len()
        )));
    }
    let active: Vec<ElemSet> = participants.iter().map(|i| reports[i]).collect();
    let trace = compute_v(&active);
    let level = trace.value as usize;
    let union = active.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
    let outputs = reports
        .iter()
        .map(|&x| {
            if x.is_empty() {
                x
            } else {
                let pool = union - x;
                x | pool.first(level.min(pool.len()))
            }
        })
        .collect();
    Ok(MultipartyOutcome {
        outputs,
        participants,
        trace,
    })
}

/// Multiparty set union for all-or-nothing players.
pub fn multiparty_aon(instance: &SetInstance, profile: &StrategyProfile) -> Result<Allocation> {
    if profile.reports().len() != instance.players() {
        return Err(structural("profile does not match the instance"));
    }
    if !profile.is_all_or_nothing(instance) {
        return Err(structural(
            "multiparty mechanism needs an all-or-nothing profile",
        ));
    }
    Ok(Allocation::new(
        multiparty_allocate(profile.reports())?.outputs,
    ))
}
