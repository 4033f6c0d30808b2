use std::ops::Sub;

use num_traits::Zero;

use super::{Allocation, ElemSet, SetInstance, StrategyProfile};
use crate::error::{structural, Result};

/// Per-player information benefits `v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BenefitVector<T = i64>(pub Vec<T>);

/// Per-player utilities `u_i = v_i - max_{j != i} v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UtilityVector<T = i64>(pub Vec<T>);

impl<T> BenefitVector<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `v_i = |y_i \ x_i|`: elements player `i` receives beyond its own report.
pub fn information_benefit(
    instance: &SetInstance,
    profile: &StrategyProfile,
    alloc: &Allocation,
) -> Result<BenefitVector> {
    let n = instance.players();
    if profile.reports().len() != n || alloc.len() != n {
        return Err(structural(format!(
            "dimension mismatch: {n} players, {} reports, {} outputs",
            profile.reports().len(),
            alloc.len()
        )));
    }
    Ok(BenefitVector(set_benefits(
        profile.reports(),
        &alloc.outputs,
    )))
}

/// Elements each player learns beyond its *true* set, `|y_i \ S_i|`.
///
/// Coincides with [`information_benefit`] on truthful reports. For a player
/// that hid part of its set, elements handed back to it are not new to it.
pub fn realized_benefit(instance: &SetInstance, alloc: &Allocation) -> Result<BenefitVector> {
    if alloc.len() != instance.players() {
        return Err(structural(format!(
            "dimension mismatch: {} players, {} outputs",
            instance.players(),
            alloc.len()
        )));
    }
    Ok(BenefitVector(set_benefits(
        instance.true_sets(),
        &alloc.outputs,
    )))
}

pub(crate) fn set_benefits(base: &[ElemSet], outputs: &[ElemSet]) -> Vec<i64> {
    base.iter()
        .zip(outputs)
        .map(|(x, y)| (*y - *x).len() as i64)
        .collect()
}

/// Exact utilities. A lone player's utility is its own benefit.
pub fn utility_vector<T>(v: &BenefitVector<T>) -> Result<UtilityVector<T>>
where
    T: Clone + Ord + Zero + Sub<Output = T>,
{
    if v.is_empty() {
        return Err(structural("utility of an empty benefit vector"));
    }
    Ok(UtilityVector(utilities(&v.0)))
}

/// Slice form of [`utility_vector`]; returns an empty vector for empty input.
pub fn utilities<T>(v: &[T]) -> Vec<T>
where
    T: Clone + Ord + Zero + Sub<Output = T>,
{
    if v.len() == 1 {
        return vec![v[0].clone()];
    }
    // top two values decide every rival maximum
    let mut best: Option<usize> = None;
    for (i, x) in v.iter().enumerate() {
        if best.is_none_or(|b| *x > v[b]) {
            best = Some(i);
        }
    }
    let Some(best) = best else {
        return Vec::new();
    };
    let second = v
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .map(|(_, x)| x)
        .max()
        .cloned()
        .unwrap_or_else(T::zero);
    v.iter()
        .enumerate()
        .map(|(i, x)| {
            let rival = if i == best {
                second.clone()
            } else {
                v[best].clone()
            };
            x.clone() - rival
        })
        .collect()
}

/// Utility of one player, without building the whole vector.
pub fn utility_of<T>(v: &[T], player: usize) -> T
where
    T: Clone + Ord + Zero + Sub<Output = T>,
{
    if v.len() == 1 {
        return v[0].clone();
    }
    let rival = v
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != player)
        .map(|(_, x)| x)
        .max()
        .cloned()
        .unwrap_or_else(T::zero);
    v[player].clone() - rival
}

/// `Σ_i v_i`.
pub fn social_welfare<T>(v: &BenefitVector<T>) -> T
where
    T: Clone + Zero,
{
    v.0.iter().cloned().fold(T::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::{int, Rational};
    use crate::model::Universe;
    use proptest::prelude::*;

    fn inst(sets: &[&[&str]]) -> SetInstance {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetInstance::from_names(u, &sets).unwrap()
    }

    #[test]
    fn benefit_is_set_difference() {
        let instance = inst(&[&["a"], &["a", "b", "c"], &[]]);
        let u = instance.universe().clone();
        let profile = StrategyProfile::truthful(&instance);
        let alloc = Allocation::new(vec![
            u.set(&["a", "b", "c"]).unwrap(),
            u.set(&["a", "b", "c"]).unwrap(),
            ElemSet::EMPTY,
        ]);
        let v = information_benefit(&instance, &profile, &alloc).unwrap();
        assert_eq!(v.0, vec![2, 0, 0]);
    }

    #[test]
    fn benefit_dimension_mismatch() {
        let instance = inst(&[&["a"], &["b"]]);
        let profile = StrategyProfile::truthful(&instance);
        let alloc = Allocation::new(vec![ElemSet::EMPTY]);
        assert!(information_benefit(&instance, &profile, &alloc).is_err());
        assert!(realized_benefit(&instance, &alloc).is_err());
    }

    #[test]
    fn realized_benefit_ignores_hidden_elements() {
        let instance = inst(&[&["a", "b"], &["c"]]);
        let u = instance.universe().clone();
        let profile = StrategyProfile::new(
            &instance,
            vec![u.set(&["a"]).unwrap(), u.set(&["c"]).unwrap()],
        )
        .unwrap();
        let alloc = Allocation::new(vec![
            u.set(&["a", "b", "c"]).unwrap(),
            u.set(&["a", "c"]).unwrap(),
        ]);
        assert_eq!(
            information_benefit(&instance, &profile, &alloc).unwrap().0,
            vec![2, 1]
        );
        assert_eq!(realized_benefit(&instance, &alloc).unwrap().0, vec![1, 1]);
    }

    #[test]
    fn utility_examples() {
        let u = utility_vector(&BenefitVector(vec![4i64, 4, 3])).unwrap();
        assert_eq!(u.0, vec![0, 0, -1]);
        let u = utility_vector(&BenefitVector(vec![7i64; 5])).unwrap();
        assert_eq!(u.0, vec![0; 5]);
        let u = utility_vector(&BenefitVector(vec![int(1), int(0), int(1)])).unwrap();
        assert_eq!(u.0, vec![int(0), int(-1), int(0)]);
        assert_eq!(
            utility_vector(&BenefitVector(vec![5i64])).unwrap().0,
            vec![5]
        );
        assert!(utility_vector::<i64>(&BenefitVector(vec![])).is_err());
    }

    #[test]
    fn welfare_examples() {
        assert_eq!(social_welfare(&BenefitVector(vec![4i64, 4, 3])), 11);
        assert_eq!(social_welfare(&BenefitVector(vec![0i64, 0])), 0);
        assert_eq!(social_welfare(&BenefitVector(vec![2i64, 2, 2])), 6);
        let r: Rational = social_welfare(&BenefitVector(vec![int(1), int(2)]));
        assert_eq!(r, int(3));
    }

    proptest! {
        #[test]
        fn utilities_sum_nonpositive_and_match_definition(v in prop::collection::vec(0i64..20, 2..7)) {
            let u = utilities(&v);
            prop_assert!(u.iter().sum::<i64>() <= 0);
            for i in 0..v.len() {
                let rival = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| *x).max().unwrap();
                prop_assert_eq!(u[i], v[i] - rival);
                prop_assert_eq!(utility_of(&v, i), u[i]);
            }
        }

        #[test]
        fn utilities_permutation_equivariant(v in prop::collection::vec(0i64..20, 2..7), rot in 0usize..7) {
            let k = rot % v.len();
            let mut w = v.clone();
            w.rotate_left(k);
            let mut u = utilities(&v);
            u.rotate_left(k);
            prop_assert_eq!(utilities(&w), u);
        }
    }
}
