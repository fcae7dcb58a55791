//! Lifting closed Young's-lattice walks to games.
//!
//! A closed walk `∅ = λ_0, λ_1, ..., λ_2n = ∅` becomes the game whose trace is
//! `∅, λ_0 ∪ {1}, ..., λ_2n ∪ {1}, ∅`: the extra empty plate keeps the table
//! occupied, so interim returns of the walk never empty the table. The map is
//! injective, which gives `M_n >= (2n-1)!!`.

use crate::error::{Error, Result};
use crate::game::{validate_game, Game};
use crate::partition::{legal_moves, move_between, Move, Partition};

/// Every closed walk of `length` steps at `<>` in Young's lattice, interim
/// returns allowed.
pub fn young_closed_walks(length: usize) -> Vec<Vec<Partition>> {
    fn rec(walk: &mut Vec<Partition>, length: usize, out: &mut Vec<Vec<Partition>>) {
        let remaining = length + 1 - walk.len();
        let current = walk.last().expect("walk starts at the empty table");
        if remaining == 0 {
            if current.is_empty() {
                out.push(walk.clone());
            }
            return;
        }
        for (_, next) in legal_moves(current, false) {
            if next.weight() as usize > remaining - 1 {
                continue;
            }
            walk.push(next);
            rec(walk, length, out);
            walk.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![Partition::empty()], length, &mut out);
    out
}

/// Lifts a closed Young's-lattice walk of length `2n` to a game of length `n`.
pub fn lift_young_walk(walk: &[Partition]) -> Result<Game> {
    let invalid = |step: usize, reason: &str| Error::InvalidWalk {
        step,
        reason: reason.to_string(),
    };
    match (walk.first(), walk.last()) {
        (Some(first), Some(last)) if first.is_empty() && last.is_empty() => {}
        _ => return Err(invalid(0, "walk must start and end at <>")),
    }
    if walk.len() % 2 == 0 {
        return Err(invalid(walk.len() - 1, "closed walks have even length"));
    }

    let mut moves = Vec::with_capacity(walk.len() + 1);
    moves.push(Move::PlateAdd);
    for (idx, pair) in walk.windows(2).enumerate() {
        if move_between(&pair[0], &pair[1], false).is_none() {
            let reason = format!("{} -> {} is not a Young's lattice edge", pair[0], pair[1]);
            return Err(invalid(idx + 1, &reason));
        }
        let lifted = move_between(&pair[0].with_empty_plate(), &pair[1].with_empty_plate(), false)
            .ok_or_else(|| invalid(idx + 1, "edge does not lift"))?;
        moves.push(lifted);
    }
    moves.push(Move::PlateRemoveSimple);
    validate_game(&moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::sequences::double_factorial;
    use std::collections::HashSet;

    fn walk(states: &[&str]) -> Vec<Partition> {
        states.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn shortest_walk_lifts_to_vesuvius() {
        let game = lift_young_walk(&walk(&["<>", "<1>", "<>"])).unwrap();
        assert_eq!(game.to_string(), "P+ P+ P-s P-s");
    }

    #[test]
    fn trivial_walk_lifts_to_empty_game() {
        let game = lift_young_walk(&walk(&["<>"])).unwrap();
        assert_eq!(game.to_string(), "P+ P-s");
    }

    #[test]
    fn lifted_trace() {
        let game = lift_young_walk(&walk(&["<>", "<1>", "<2>", "<1>", "<>"])).unwrap();
        assert_eq!(game.len(), 2);
        let trace: Vec<String> = game.trace().iter().map(|p| p.to_string()).collect();
        assert_eq!(trace, ["<>", "<1>", "<1,1>", "<2,1>", "<1,1>", "<1>", "<>"]);
    }

    #[test]
    fn rejects_bad_walks() {
        assert!(matches!(
            lift_young_walk(&walk(&["<>", "<2>", "<>"])),
            Err(Error::InvalidWalk { step: 1, .. })
        ));
        assert!(lift_young_walk(&walk(&["<1>", "<>"])).is_err());
        assert!(lift_young_walk(&[]).is_err());
        // <2> -> <1,1> keeps the weight, so it is not an edge
        assert!(lift_young_walk(&walk(&["<>", "<1>", "<2>", "<1,1>", "<1>", "<>"])).is_err());
    }

    #[test]
    fn walk_enumeration_counts() {
        for n in 0..=5 {
            assert_eq!(
                young_closed_walks(2 * n).len() as u64,
                u64::try_from(double_factorial(2 * n as i64 - 1)).unwrap()
            );
        }
        assert!(young_closed_walks(3).is_empty());
    }

    #[test]
    fn lift_is_injective() {
        for n in 0..=5 {
            let games: HashSet<String> = young_closed_walks(2 * n)
                .iter()
                .map(|w| lift_young_walk(w).unwrap().to_string())
                .collect();
            assert_eq!(
                games.len() as u64,
                u64::try_from(double_factorial(2 * n as i64 - 1)).unwrap()
            );
        }
    }
}
