use crate::model::ElemSet;

/// Tops up every participant below the largest benefit `V*`.
///
/// A participant `j` with `v_j < V*` receives the π-first elements of
/// `(∪ x) \ y_j` until `v_j = min(V*, |(∪ x) \ x_j|)`. Players with an empty
/// report did not take part and are left untouched. The result satisfies the
/// Pareto characterization checked by [`crate::verifier::pareto_structure_violation`].
pub fn pareto_repair(reports: &[ElemSet], outputs: &[ElemSet]) -> Vec<ElemSet> {
    assert_eq!(reports.len(), outputs.len(), "one output per report");
    let union = reports.iter().fold(ElemSet::EMPTY, |acc, &x| acc | x);
    let top = reports
        .iter()
        .zip(outputs)
        .map(|(&x, &y)| (y - x).len())
        .max()
        .unwrap_or(0);
    reports
        .iter()
        .zip(outputs)
        .map(|(&x, &y)| {
            if x.is_empty() {
                return y;
            }
            let have = (y - x).len();
            let target = top.min((union - x).len());
            if have >= target {
                y
            } else {
                y | (union - y).first(target - have)
            }
        })
        .collect()
}
