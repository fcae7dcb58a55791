//! Games: validation, exhaustive enumeration, skeletons and per-game statistics.
//!
//! A game of length `n` is a sequence of `2n + 2` moves that starts at the
//! empty table and returns to it for the first time at the last move.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{apply_move, legal_moves, Move, MoveKind, Partition};

/// Largest `n` enumerated by default.
pub const DEFAULT_ORACLE_CEILING: usize = 6;

/// A validated game together with the states it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    moves: Vec<Move>,
    trace: Vec<Partition>,
}

impl Game {
    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// The `2n + 3` states visited, starting and ending at the empty table.
    pub fn trace(&self) -> &[Partition] {
        &self.trace
    }

    /// Number of add moves after the opening plate-add.
    pub fn len(&self) -> usize {
        self.moves.len() / 2 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.moves.iter())
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moves = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Move>>>()?;
        validate_game(&moves)
    }
}

fn write_tokens<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (idx, item) in items.enumerate() {
        if idx > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Replays `moves` from the empty table.
///
/// Fails with [`Error::IllegalMove`] on the first move not legal at its
/// state, [`Error::PrematureEmpty`] if the table empties early, and
/// [`Error::NotClosed`] if it never empties.
pub fn validate_game(moves: &[Move]) -> Result<Game> {
    let mut trace = Vec::with_capacity(moves.len() + 1);
    let mut state = Partition::empty();
    trace.push(state.clone());
    for (idx, &mv) in moves.iter().enumerate() {
        state = apply_move(&state, mv)?;
        if state.is_empty() && idx + 1 < moves.len() {
            return Err(Error::PrematureEmpty { step: idx + 1 });
        }
        trace.push(state.clone());
    }
    if moves.is_empty() || !state.is_empty() {
        return Err(Error::NotClosed { state });
    }
    Ok(Game {
        moves: moves.to_vec(),
        trace,
    })
}

/// The move-kind label sequence of a game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Skeleton(Vec<MoveKind>);

impl Skeleton {
    pub fn labels(&self) -> &[MoveKind] {
        &self.0
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.0.iter().filter(|&&k| k == kind).count()
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.0.iter())
    }
}

pub fn skeleton(game: &Game) -> Skeleton {
    Skeleton(game.moves.iter().map(|mv| mv.kind()).collect())
}

/// Move counts over the interior of a game (opening and closing moves excluded).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameStats {
    pub v_f: usize,
    pub v_l: usize,
    pub p_s: usize,
    pub p_c: usize,
}

impl GameStats {
    /// Olive-adds (equivalently olive-removes).
    pub fn v(&self) -> usize {
        self.v_f + self.v_l
    }

    /// Interior plate-removes (equivalently interior plate-adds).
    pub fn p(&self) -> usize {
        self.p_s + self.p_c
    }
}

pub fn game_stats(game: &Game) -> GameStats {
    let mut stats = GameStats::default();
    let interior = &game.moves[1..game.moves.len() - 1];
    for mv in interior {
        match mv.kind() {
            MoveKind::OliveAddFirst => stats.v_f += 1,
            MoveKind::OliveAddLater => stats.v_l += 1,
            MoveKind::PlateRemoveSimple => stats.p_s += 1,
            MoveKind::PlateRemoveComplex => stats.p_c += 1,
            MoveKind::PlateAdd | MoveKind::OliveRemove => {}
        }
    }
    stats
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Self {
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Height of the lower end of each step.
    pub fn heights(&self) -> Vec<i64> {
        let mut level = 0i64;
        self.steps
            .iter()
            .map(|step| match step {
                Step::Up => {
                    level += 1;
                    level - 1
                }
                Step::Down => {
                    level -= 1;
                    level
                }
            })
            .collect()
    }

    /// Never dips below zero and ends at zero.
    pub fn is_valid(&self) -> bool {
        let mut level = 0i64;
        for step in &self.steps {
            level += if *step == Step::Up { 1 } else { -1 };
            if level < 0 {
                return false;
            }
        }
        level == 0
    }
}

/// The olive-count path of a game: one up-step per olive-add, one down-step
/// per olive-remove.
pub fn olive_dyck_path(game: &Game) -> DyckPath {
    let steps = game
        .moves
        .iter()
        .filter_map(|mv| match mv.kind() {
            MoveKind::OliveAddFirst | MoveKind::OliveAddLater => Some(Step::Up),
            MoveKind::OliveRemove => Some(Step::Down),
            _ => None,
        })
        .collect();
    DyckPath::new(steps)
}

/// Depth-first stream of every game of length `n`, in lexicographic order of
/// the move text.
pub fn enumerate_games(n: usize, ceiling: usize) -> Result<GameIter> {
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, ceiling });
    }
    Ok(GameIter::new(n))
}

struct Frame {
    children: Vec<(Move, Partition)>,
    next: usize,
}

pub struct GameIter {
    total: usize,
    stack: Vec<Frame>,
    moves: Vec<Move>,
    trace: Vec<Partition>,
}

impl GameIter {
    fn new(n: usize) -> Self {
        let root = Partition::empty();
        GameIter {
            total: 2 * n + 2,
            stack: vec![Frame {
                children: sorted_moves(&root),
                next: 0,
            }],
            moves: Vec::new(),
            trace: vec![root],
        }
    }
}

fn sorted_moves(p: &Partition) -> Vec<(Move, Partition)> {
    let mut children = legal_moves(p, true);
    children.sort_by_cached_key(|(mv, _)| mv.to_string());
    children
}

impl Iterator for GameIter {
    type Item = Game;

    fn next(&mut self) -> Option<Game> {
        loop {
            let frame = self.stack.last_mut()?;
            let Some((mv, child)) = frame.children.get(frame.next).cloned() else {
                self.stack.pop();
                self.moves.pop();
                self.trace.pop();
                continue;
            };
            frame.next += 1;

            let remaining = self.total - (self.moves.len() + 1);
            if child.is_empty() {
                if remaining == 0 {
                    let mut moves = self.moves.clone();
                    moves.push(mv);
                    let mut trace = self.trace.clone();
                    trace.push(child);
                    return Some(Game { moves, trace });
                }
                continue;
            }
            // every remaining move lowers the weight by at most one
            if remaining == 0 || child.weight() as usize > remaining {
                continue;
            }
            self.stack.push(Frame {
                children: sorted_moves(&child),
                next: 0,
            });
            self.moves.push(mv);
            self.trace.push(child);
        }
    }
}

/// Histogram of [`GameStats`] over all games of length `n`.
pub fn stats_histogram(n: usize, ceiling: usize) -> Result<BTreeMap<GameStats, u64>> {
    let mut histogram = BTreeMap::new();
    for game in enumerate_games(n, ceiling)? {
        *histogram.entry(game_stats(&game)).or_insert(0) += 1;
    }
    Ok(histogram)
}

/// Renders a histogram as CSV with header `v_f,v_l,p_s,p_c,count`.
pub fn histogram_csv(histogram: &BTreeMap<GameStats, u64>) -> String {
    let mut out = String::from("v_f,v_l,p_s,p_c,count\n");
    for (stats, count) in histogram {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            stats.v_f, stats.v_l, stats.p_s, stats.p_c, count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const VESUVIUS: &str = "P+ P+ P-s P-s";
    const ELBRUS: &str = "P+ O+f O-:1 P-s";

    fn game(s: &str) -> Game {
        s.parse().unwrap()
    }

    fn moves(s: &str) -> Vec<Move> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn validates_the_two_games_of_length_one() {
        let v = game(VESUVIUS);
        assert_eq!(v.len(), 1);
        assert_eq!(v.trace().len(), 5);
        let e = game(ELBRUS);
        assert_eq!(e.len(), 1);
        assert_eq!(e.to_string(), ELBRUS);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            validate_game(&moves("P+ P-s P+ P-s")),
            Err(Error::PrematureEmpty { step: 2 })
        );
        assert!(matches!(
            validate_game(&moves("P+ P+ P-s")),
            Err(Error::NotClosed { .. })
        ));
        assert!(matches!(validate_game(&[]), Err(Error::NotClosed { .. })));
        assert!(matches!(
            validate_game(&moves("P+ O+f O+f O-:1 O-:1 P-s")),
            Err(Error::IllegalMove { mv: Move::OliveAddFirst, .. })
        ));
        assert!(matches!(
            validate_game(&moves("P+ O+l:1 O-:1 P-s")),
            Err(Error::IllegalMove { .. })
        ));
    }

    #[test]
    fn skeletons_and_stats() {
        let v = game(VESUVIUS);
        assert_eq!(skeleton(&v).to_string(), "P+ P+ P-s P-s");
        assert_eq!(
            game_stats(&v),
            GameStats { v_f: 0, v_l: 0, p_s: 1, p_c: 0 }
        );
        let e = game(ELBRUS);
        assert_eq!(skeleton(&e).to_string(), "P+ O+f O- P-s");
        assert_eq!(
            game_stats(&e),
            GameStats { v_f: 1, v_l: 0, p_s: 0, p_c: 0 }
        );
        assert_eq!(game_stats(&v).v() + game_stats(&v).p(), 1);
    }

    #[test]
    fn dyck_paths() {
        assert_eq!(olive_dyck_path(&game(ELBRUS)).steps(), &[Step::Up, Step::Down]);
        assert!(olive_dyck_path(&game(VESUVIUS)).steps().is_empty());
        let path = DyckPath::new(vec![Step::Up, Step::Up, Step::Down, Step::Down]);
        assert_eq!(path.heights(), vec![0, 1, 1, 0]);
        assert!(path.is_valid());
        assert!(!DyckPath::new(vec![Step::Down, Step::Up]).is_valid());
    }

    #[test]
    fn enumeration_small_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| enumerate_games(n, DEFAULT_ORACLE_CEILING).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 2, 10, 76, 772]);
        let only: Vec<String> = enumerate_games(0, 6).unwrap().map(|g| g.to_string()).collect();
        assert_eq!(only, vec!["P+ P-s"]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_ceiling_checked() {
        let lines: Vec<String> = enumerate_games(3, 6).unwrap().map(|g| g.to_string()).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(lines, sorted);
        assert_eq!(
            enumerate_games(7, 6).err(),
            Some(Error::CeilingExceeded { n: 7, ceiling: 6 })
        );
    }

    #[test]
    fn histograms() {
        let h1 = stats_histogram(1, 6).unwrap();
        assert_eq!(
            h1,
            BTreeMap::from([
                (GameStats { v_f: 0, v_l: 0, p_s: 1, p_c: 0 }, 1),
                (GameStats { v_f: 1, v_l: 0, p_s: 0, p_c: 0 }, 1),
            ])
        );
        assert_eq!(stats_histogram(2, 6).unwrap().values().sum::<u64>(), 10);
        assert_eq!(stats_histogram(3, 6).unwrap().values().sum::<u64>(), 76);
        assert_eq!(
            histogram_csv(&h1),
            "v_f,v_l,p_s,p_c,count\n0,0,1,0,1\n1,0,0,0,1\n"
        );
    }

    #[test]
    fn invariants_over_all_games_up_to_five() {
        for n in 0..=5 {
            for g in enumerate_games(n, 6).unwrap() {
                let stats = game_stats(&g);
                assert_eq!(stats.v() + stats.p(), n);
                assert!(stats.p_c <= stats.v_f, "{g}");

                let path = olive_dyck_path(&g);
                assert!(path.is_valid());
                assert_eq!(path.semilength(), stats.v());

                // each step's height is the olive count on the table before an
                // olive-add, after an olive-remove
                let olive_moves = g
                    .moves()
                    .iter()
                    .zip(g.trace().windows(2))
                    .filter(|(mv, _)| {
                        matches!(
                            mv.kind(),
                            MoveKind::OliveAddFirst | MoveKind::OliveAddLater | MoveKind::OliveRemove
                        )
                    });
                for (height, (mv, pair)) in path.heights().into_iter().zip(olive_moves) {
                    let olives = if mv.kind() == MoveKind::OliveRemove {
                        pair[1].olive_count()
                    } else {
                        pair[0].olive_count()
                    };
                    assert_eq!(height, olives as i64);
                }

                let sk = skeleton(&g);
                assert_eq!(sk.labels().first(), Some(&MoveKind::PlateAdd));
                assert_eq!(sk.labels().last(), Some(&MoveKind::PlateRemoveSimple));
                assert_eq!(sk.count(MoveKind::OliveAddFirst), stats.v_f);
                assert_eq!(sk.count(MoveKind::OliveRemove), stats.v());
                assert_eq!(sk.count(MoveKind::PlateRemoveComplex), stats.p_c);
            }
        }
    }

    #[test]
    fn emitted_games_round_trip() {
        for g in enumerate_games(3, 6).unwrap() {
            let line = g.to_string();
            let again: Game = line.parse().unwrap();
            assert_eq!(again, g);
            assert_eq!(again.to_string(), line);
        }
    }
}
