use serde::{Deserialize, Serialize};

/// Outcome of one property check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The instance exceeded the checker's capacity; nothing was decided.
    Skipped,
}

/// A concrete witness of a violated property. Player indices are 1-based and
/// numbers are exact decimal or `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    /// Joining the other participants made `player` strictly worse off.
    Participation {
        player: usize,
        others: Vec<usize>,
        utility_joining: String,
        utility_abstaining: String,
    },
    /// Reporting `report` instead of its true set made `player` strictly better off.
    Hiding {
        player: usize,
        report: Vec<String>,
        utility_truthful: String,
        utility_hiding: String,
    },
    /// A benefit vector that some feasible vector Pareto-dominates, or that
    /// breaks the structural characterization.
    Pareto {
        benefits: Vec<i64>,
        pools: Vec<i64>,
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dominated_by: Option<Vec<i64>>,
    },
    /// The mechanism's uniform level differs from the oracle's.
    Level { mechanism: u64, oracle: u64 },
    /// Two equivalent players were treated differently.
    Symmetry {
        participants: Vec<usize>,
        players: [usize; 2],
        detail: String,
    },
    /// `x_smaller ⊆ x_larger` but the outputs are not nested.
    Dominance {
        participants: Vec<usize>,
        smaller: usize,
        larger: usize,
    },
    /// `φ_i(S) < φ_j(S) - φ_j(S \ {i})`.
    Contribution {
        coalition: Vec<usize>,
        i: usize,
        j: usize,
        phi_i: String,
        phi_j: String,
        phi_j_without_i: String,
    },
    /// The deviator's benefit change exceeded another participant's.
    Delta {
        deviator: usize,
        other: usize,
        delta_deviator: String,
        delta_other: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    /// Number of elementary comparisons (deviations, pairs, instances) made.
    pub instances_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Seed of the generated instance that failed, for sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn pass(property: &str, checked: u64) -> Self {
        PropertyReport {
            property: property.to_string(),
            verdict: Verdict::Pass,
            instances_checked: checked,
            counterexample: None,
            seed: None,
            note: None,
        }
    }

    pub fn fail(property: &str, checked: u64, counterexample: Counterexample) -> Self {
        PropertyReport {
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            ..PropertyReport::pass(property, checked)
        }
    }

    pub fn skipped(property: &str, note: impl Into<String>) -> Self {
        PropertyReport {
            verdict: Verdict::Skipped,
            note: Some(note.into()),
            ..PropertyReport::pass(property, 0)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// Folds per-seed reports into one. The failure with the smallest seed
    /// wins; the result does not depend on the input order.
    pub fn merge(property: &str, mut parts: Vec<(u64, PropertyReport)>) -> Self {
        parts.sort_by_key(|(seed, _)| *seed);
        let checked = parts.iter().map(|(_, r)| r.instances_checked).sum();
        let skipped = parts
            .iter()
            .filter(|(_, r)| r.verdict == Verdict::Skipped)
            .count();
        if let Some((seed, first)) = parts.iter().find(|(_, r)| r.failed()) {
            let mut merged = first.clone();
            merged.property = property.to_string();
            merged.instances_checked = checked;
            merged.seed = Some(*seed);
            return merged;
        }
        if skipped == parts.len() {
            let mut merged = PropertyReport::skipped(property, "every instance exceeded capacity");
            merged.instances_checked = checked;
            return merged;
        }
        let flagged: Vec<&str> = parts
            .iter()
            .filter(|(_, r)| r.passed())
            .filter_map(|(_, r)| r.note.as_deref())
            .collect();
        let mut notes = Vec::new();
        if skipped > 0 {
            notes.push(format!("{skipped} of {} instances skipped", parts.len()));
        }
        if let Some(first) = flagged.first() {
            notes.push(format!(
                "{} of {} instances flagged ({first})",
                flagged.len(),
                parts.len()
            ));
        }
        let merged = PropertyReport::pass(property, checked);
        if notes.is_empty() {
            merged
        } else {
            merged.with_note(notes.join("; "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_is_order_independent() {
        let cex = |k| Counterexample::Level {
            mechanism: k,
            oracle: 0,
        };
        let parts = vec![
            (5, PropertyReport::fail("p", 2, cex(5))),
            (1, PropertyReport::pass("p", 3)),
            (3, PropertyReport::fail("p", 1, cex(3))),
        ];
        let mut rev = parts.clone();
        rev.reverse();
        let a = PropertyReport::merge("p", parts);
        assert_eq!(a, PropertyReport::merge("p", rev));
        assert_eq!(a.seed, Some(3));
        assert_eq!(a.instances_checked, 6);
        assert_eq!(a.counterexample, Some(cex(3)));
    }

    #[test]
    fn merge_counts_skips() {
        let parts = vec![
            (0, PropertyReport::skipped("p", "big")),
            (1, PropertyReport::pass("p", 4)),
        ];
        let r = PropertyReport::merge("p", parts);
        assert!(r.passed());
        assert_eq!(r.note.as_deref(), Some("1 of 2 instances skipped"));
        let all = PropertyReport::merge("p", vec![(0, PropertyReport::skipped("p", "big"))]);
        assert_eq!(all.verdict, Verdict::Skipped);
    }

    #[test]
    fn serializes_with_tags() {
        let r = PropertyReport::fail(
            "welfare-v",
            1,
            Counterexample::Level {
                mechanism: 5,
                oracle: 4,
            },
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"property":"welfare-v","verdict":"fail","instances_checked":1,"counterexample":{"kind":"level","mechanism":5,"oracle":4}}"#
        );
        let back: PropertyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
