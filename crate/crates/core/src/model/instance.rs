use std::collections::HashMap;

use super::{ElemSet, PlayerSet};
use crate::error::{structural, Error, Result};

/// The element universe. The listing order is the fixed total order π used
/// to resolve every "pick some elements" step deterministically.
#[derive(Clone, Debug)]
pub struct Universe {
    elements: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.len() > ElemSet::CAPACITY {
            return Err(Error::Capacity(format!(
                "universe has {} elements, at most {} supported",
                elements.len(),
                ElemSet::CAPACITY
            )));
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (rank, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), rank).is_some() {
                return Err(structural(format!("duplicate universe element {e:?}")));
            }
        }
        Ok(Universe { elements, index })
    }

    /// Elements named `e1, e2, …, em`.
    pub fn numbered(m: usize) -> Result<Self> {
        Universe::new((1..=m).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::prefix(self.elements.len())
    }

    pub fn rank(&self, element: &str) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        let mut out = ElemSet::EMPTY;
        for name in names {
            let name = name.as_ref();
            let rank = self
                .rank(name)
                .ok_or_else(|| structural(format!("element {name:?} is not in the universe")))?;
            if out.contains(rank) {
                return Err(structural(format!("element {name:?} listed twice")));
            }
            out.insert(rank);
        }
        Ok(out)
    }

    /// Element names of `set`, in π order.
    pub fn names(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|r| self.elements[r].clone()).collect()
    }
}

/// A set-union instance: a universe and the true set `S_i` of every player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetInstance {
    universe: Universe,
    true_sets: Vec<ElemSet>,
}

impl SetInstance {
    pub fn new(universe: Universe, true_sets: Vec<ElemSet>) -> Result<Self> {
        if true_sets.is_empty() {
            return Err(structural("an instance needs at least one player"));
        }
        if true_sets.len() > PlayerSet::CAPACITY {
            return Err(Error::Capacity(format!(
                "{} players, at most {} supported",
                true_sets.len(),
                PlayerSet::CAPACITY
            )));
        }
        let full = universe.full();
        for (i, s) in true_sets.iter().enumerate() {
            if !s.is_subset(full) {
                return Err(structural(format!(
                    "set of player {} is not inside the universe",
                    i + 1
                )));
            }
        }
        Ok(SetInstance {
            universe,
            true_sets,
        })
    }

    /// Builds an instance from element names.
    pub fn from_names<S: AsRef<str>>(universe: Universe, sets: &[Vec<S>]) -> Result<Self> {
        let true_sets = sets
            .iter()
            .map(|s| universe.set(s))
            .collect::<Result<Vec<_>>>()?;
        SetInstance::new(universe, true_sets)
    }

    /// Instance over a numbered universe of size `m` given rank sets.
    pub fn from_sets(m: usize, true_sets: Vec<ElemSet>) -> Result<Self> {
        SetInstance::new(Universe::numbered(m)?, true_sets)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn true_sets(&self) -> &[ElemSet] {
        &self.true_sets
    }

    pub fn players(&self) -> usize {
        self.true_sets.len()
    }
}

/// Reported sets `x_i`; every report is a subset of the reporter's true set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    reports: Vec<ElemSet>,
}

impl StrategyProfile {
    pub fn new(instance: &SetInstance, reports: Vec<ElemSet>) -> Result<Self> {
        if reports.len() != instance.players() {
            return Err(structural(format!(
                "profile has {} reports for {} players",
                reports.len(),
                instance.players()
            )));
        }
        for (i, (x, s)) in reports.iter().zip(instance.true_sets()).enumerate() {
            if !x.is_subset(*s) {
                return Err(structural(format!(
                    "player {} reports elements it does not own",
                    i + 1
                )));
            }
        }
        Ok(StrategyProfile { reports })
    }

    pub fn truthful(instance: &SetInstance) -> Self {
        StrategyProfile {
            reports: instance.true_sets().to_vec(),
        }
    }

    /// Players in `participants` report their full set, the others report nothing.
    pub fn all_or_nothing(instance: &SetInstance, participants: PlayerSet) -> Self {
        let reports = instance
            .true_sets()
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if participants.contains(i) {
                    s
                } else {
                    ElemSet::EMPTY
                }
            })
            .collect();
        StrategyProfile { reports }
    }

    pub fn reports(&self) -> &[ElemSet] {
        &self.reports
    }

    pub fn is_all_or_nothing(&self, instance: &SetInstance) -> bool {
        self.reports
            .iter()
            .zip(instance.true_sets())
            .all(|(x, s)| x.is_empty() || x == s)
    }

    /// Players with a non-empty report.
    pub fn participants(&self) -> PlayerSet {
        participants_of(&self.reports)
    }
}

pub(crate) fn participants_of(reports: &[ElemSet]) -> PlayerSet {
    reports
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_empty())
        .fold(PlayerSet::EMPTY, |p, (i, _)| p.with(i))
}

/// Per-player mechanism outputs `y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation<T = ElemSet> {
    pub outputs: Vec<T>,
}

impl<T> Allocation<T> {
    pub fn new(outputs: Vec<T>) -> Self {
        Allocation { outputs }
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }
}
