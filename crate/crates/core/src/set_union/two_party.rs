use crate::model::ElemSet;

/// Fair exchange of exclusive elements between two players.
///
/// The player with the larger report (player 2 on ties) receives the whole
/// union; the other one receives as many of the partner's exclusive elements
/// (π-first) as it has exclusive elements of its own. Both benefits equal
/// `min(|x1 \ x2|, |x2 \ x1|)`.
pub fn two_party(x1: ElemSet, x2: ElemSet) -> [ElemSet; 2] {
    let union = x1 | x2;
    if x1.len() <= x2.len() {
        let gain = (x1 - x2).len();
        [x1 | (x2 - x1).first(gain), union]
    } else {
        let gain = (x2 - x1).len();
        [union, x2 | (x1 - x2).first(gain)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: &[usize]) -> ElemSet {
        ElemSet::from_ranks(r.iter().copied())
    }

    #[test]
    fn exchanges_exclusive_elements() {
        // a=0 b=1 c=2 d=3
        let [y1, y2] = two_party(s(&[0, 1]), s(&[1, 2, 3]));
        assert_eq!(y1, s(&[0, 1, 2]));
        assert_eq!(y2, s(&[0, 1, 2, 3]));
    }

    #[test]
    fn identical_and_empty_inputs() {
        assert_eq!(two_party(s(&[0]), s(&[0])), [s(&[0]), s(&[0])]);
        assert_eq!(
            two_party(ElemSet::EMPTY, s(&[0])),
            [ElemSet::EMPTY, s(&[0])]
        );
        assert_eq!(
            two_party(s(&[0]), ElemSet::EMPTY),
            [s(&[0]), ElemSet::EMPTY]
        );
    }

    #[test]
    fn larger_first_player_is_served_symmetrically() {
        let [y1, y2] = two_party(s(&[1, 2, 3]), s(&[0, 1]));
        assert_eq!(y1, s(&[0, 1, 2, 3]));
        assert_eq!(y2, s(&[0, 1, 2]));
    }
}
