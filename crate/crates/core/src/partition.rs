//! Table configurations as integer partitions, and the moves between them.
//!
//! A configuration with `k` plates is stored as the nonincreasing vector
//! `<a_1, ..., a_k>` where part `a_j` is a plate carrying `a_j - 1` olives.
//! The weight of the partition (sum of parts) is plates plus olives, so every
//! move changes it by exactly one.
//!
//! Text grammar (shared by every module and the CLI):
//!
//! * partitions: `<3,2,1>`, empty table `<>`
//! * moves: `P+`, `O+f`, `O+l:i`, `O-:i`, `P-s`, `P-c:i,j` with `i <= j`,
//!   where `i`, `j` are olive counts on the plates involved (all `>= 1`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `t' >= 1` with `t'(t'-1)/2 <= t`.
///
/// With `t` olives on the table at most this many distinct olive counts can
/// occur among the plates.
pub fn w_cap(t: u64) -> u64 {
    // t'(t'-1)/2 <= t  <=>  t' <= (1 + sqrt(1 + 8t)) / 2
    let disc = 1u128 + 8 * t as u128;
    let mut w = ((1 + disc.isqrt()) / 2) as u64;
    while w > 1 && triangular(w) > t {
        w -= 1;
    }
    while triangular(w + 1) <= t {
        w += 1;
    }
    w.max(1)
}

fn triangular(w: u64) -> u64 {
    w * (w - 1) / 2
}

/// A canonical game state: plate sizes in nonincreasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse {
                what: "partition",
                input: format!("{parts:?}"),
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plate_count(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn olive_count(&self) -> u32 {
        self.weight() - self.plate_count()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Olive count `i` mapped to the number of plates holding exactly `i` olives.
    pub fn occupancy(&self) -> BTreeMap<u32, u32> {
        let mut occ = BTreeMap::new();
        for &part in &self.0 {
            *occ.entry(part - 1).or_insert(0) += 1;
        }
        occ
    }

    /// Number of distinct olive counts among the plates, `|{i : a_i != 0}|`.
    pub fn distinct_olive_counts(&self) -> usize {
        let mut distinct = 0;
        let mut prev = 0;
        for &part in &self.0 {
            if part != prev {
                distinct += 1;
                prev = part;
            }
        }
        distinct
    }

    pub fn has_empty_plate(&self) -> bool {
        self.0.last() == Some(&1)
    }

    /// `self ∪ {1}`: the same table with one extra empty plate.
    pub fn with_empty_plate(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.push(1);
        Partition(parts)
    }

    /// Removes one part of each value in `remove`, then inserts `insert`.
    /// Returns `None` if a value to remove is missing.
    fn replaced(&self, remove: &[u32], insert: Option<u32>) -> Option<Partition> {
        let mut parts = self.0.clone();
        for value in remove {
            let pos = parts.iter().position(|p| p == value)?;
            parts.remove(pos);
        }
        if let Some(value) = insert {
            let pos = parts.partition_point(|&p| p >= value);
            parts.insert(pos, value);
        }
        Some(Partition(parts))
    }

    /// All partitions of `weight`, in decreasing lexicographic order.
    pub fn all_of_weight(weight: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                current.push(part);
                rec(rest - part, part, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, weight, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of weight `0..=max_weight`.
    pub fn all_up_to_weight(max_weight: u32) -> Vec<Partition> {
        (0..=max_weight).flat_map(Partition::all_of_weight).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (idx, part) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "partition",
            input: s.to_string(),
        };
        let inner = s
            .strip_prefix('<')
            .and_then(|rest| rest.strip_suffix('>'))
            .ok_or_else(err)?;
        let parts = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|tok| tok.parse::<u32>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?
        };
        let partition = Partition::new(parts).map_err(|_| err())?;
        // the grammar is canonical: nonincreasing, no padding or leading zeros
        if partition.to_string() != s {
            return Err(err());
        }
        Ok(partition)
    }
}

/// The six move kinds. These are also the skeleton labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    PlateAdd,
    OliveAddFirst,
    OliveAddLater,
    OliveRemove,
    PlateRemoveSimple,
    PlateRemoveComplex,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [
        MoveKind::PlateAdd,
        MoveKind::OliveAddFirst,
        MoveKind::OliveAddLater,
        MoveKind::OliveRemove,
        MoveKind::PlateRemoveSimple,
        MoveKind::PlateRemoveComplex,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MoveKind::PlateAdd => "P+",
            MoveKind::OliveAddFirst => "O+f",
            MoveKind::OliveAddLater => "O+l",
            MoveKind::OliveRemove => "O-",
            MoveKind::PlateRemoveSimple => "P-s",
            MoveKind::PlateRemoveComplex => "P-c",
        }
    }

    pub fn is_add(self) -> bool {
        matches!(
            self,
            MoveKind::PlateAdd | MoveKind::OliveAddFirst | MoveKind::OliveAddLater
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveKind::ALL
            .into_iter()
            .find(|kind| kind.label() == s)
            .ok_or_else(|| Error::Parse {
                what: "skeleton label",
                input: s.to_string(),
            })
    }
}

/// A single move, named by the olive counts of the plates it touches.
///
/// Plates are indistinguishable, so "the plate with `i` olives" identifies a
/// move uniquely. `PlateRemoveComplex(i, j)` is an unordered pair and is kept
/// normalized with `i <= j`; see [`Move::plate_remove_complex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    PlateAdd,
    OliveAddFirst,
    OliveAddLater(u32),
    OliveRemove(u32),
    PlateRemoveSimple,
    PlateRemoveComplex(u32, u32),
}

impl Move {
    pub fn plate_remove_complex(i: u32, j: u32) -> Move {
        Move::PlateRemoveComplex(i.min(j), i.max(j))
    }

    pub fn kind(self) -> MoveKind {
        match self {
            Move::PlateAdd => MoveKind::PlateAdd,
            Move::OliveAddFirst => MoveKind::OliveAddFirst,
            Move::OliveAddLater(_) => MoveKind::OliveAddLater,
            Move::OliveRemove(_) => MoveKind::OliveRemove,
            Move::PlateRemoveSimple => MoveKind::PlateRemoveSimple,
            Move::PlateRemoveComplex(..) => MoveKind::PlateRemoveComplex,
        }
    }

    pub fn weight_delta(self) -> i32 {
        if self.kind().is_add() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::OliveAddLater(i) => write!(f, "O+l:{i}"),
            Move::OliveRemove(i) => write!(f, "O-:{i}"),
            Move::PlateRemoveComplex(i, j) => write!(f, "P-c:{},{}", i.min(j), i.max(j)),
            other => f.write_str(other.kind().label()),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "move",
            input: s.to_string(),
        };
        let count = |tok: &str| -> Result<u32> {
            match tok.parse::<u32>() {
                Ok(i) if i >= 1 => Ok(i),
                _ => Err(err()),
            }
        };
        let mv = match s {
            "P+" => Move::PlateAdd,
            "O+f" => Move::OliveAddFirst,
            "P-s" => Move::PlateRemoveSimple,
            _ => {
                if let Some(rest) = s.strip_prefix("O+l:") {
                    Move::OliveAddLater(count(rest)?)
                } else if let Some(rest) = s.strip_prefix("O-:") {
                    Move::OliveRemove(count(rest)?)
                } else if let Some(rest) = s.strip_prefix("P-c:") {
                    let (i, j) = rest.split_once(',').ok_or_else(err)?;
                    Move::plate_remove_complex(count(i)?, count(j)?)
                } else {
                    return Err(err());
                }
            }
        };
        if mv.to_string() != s {
            return Err(err());
        }
        Ok(mv)
    }
}

/// Every legal move at `p` together with its result.
///
/// With `allow_complex = false` the complex plate-removes are left out, which
/// turns the move graph into the Hasse diagram of Young's lattice.
pub fn legal_moves(p: &Partition, allow_complex: bool) -> Vec<(Move, Partition)> {
    let occ = p.occupancy();
    let mut moves = Vec::with_capacity(2 + 2 * occ.len());

    moves.push(Move::PlateAdd);
    if occ.contains_key(&0) {
        moves.push(Move::OliveAddFirst);
        moves.push(Move::PlateRemoveSimple);
    }
    for &i in occ.keys().filter(|&&i| i >= 1) {
        moves.push(Move::OliveAddLater(i));
        moves.push(Move::OliveRemove(i));
    }
    if allow_complex {
        let loaded: Vec<(u32, u32)> = occ
            .iter()
            .filter(|(&i, _)| i >= 1)
            .map(|(&i, &c)| (i, c))
            .collect();
        for (idx, &(i, count)) in loaded.iter().enumerate() {
            if count >= 2 {
                moves.push(Move::PlateRemoveComplex(i, i));
            }
            for &(j, _) in &loaded[idx + 1..] {
                moves.push(Move::PlateRemoveComplex(i, j));
            }
        }
    }

    moves
        .into_iter()
        .map(|mv| {
            let next = apply_move(p, mv).expect("generated move is legal");
            (mv, next)
        })
        .collect()
}

/// Applies `mv` to `p`, or reports [`Error::IllegalMove`].
pub fn apply_move(p: &Partition, mv: Move) -> Result<Partition> {
    let next = match mv {
        Move::PlateAdd => p.replaced(&[], Some(1)),
        Move::OliveAddFirst => p.replaced(&[1], Some(2)),
        Move::OliveAddLater(i) if i >= 1 => p.replaced(&[i + 1], Some(i + 2)),
        Move::OliveRemove(i) if i >= 1 => p.replaced(&[i + 1], Some(i)),
        Move::PlateRemoveSimple => p.replaced(&[1], None),
        Move::PlateRemoveComplex(i, j) if i >= 1 && j >= 1 => {
            p.replaced(&[i + 1, j + 1], Some(i + j + 1))
        }
        _ => None,
    };
    next.ok_or_else(|| Error::IllegalMove {
        state: p.clone(),
        mv,
    })
}

/// The unique Young's-lattice or game move taking `from` to `to`, if any.
pub fn move_between(from: &Partition, to: &Partition, allow_complex: bool) -> Option<Move> {
    legal_moves(from, allow_complex)
        .into_iter()
        .find(|(_, next)| next == to)
        .map(|(mv, _)| mv)
}

/// Number of available moves of each kind at a state (complex removes included).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveProfile {
    pub plate_add: usize,
    pub olive_add_first: usize,
    pub olive_add_later: usize,
    pub olive_remove: usize,
    pub plate_remove_simple: usize,
    pub plate_remove_complex: usize,
}

impl MoveProfile {
    /// The per-kind caps that hold whenever `t` olives are on the table.
    /// Returns the kinds whose count exceeds its cap.
    pub fn cap_violations(&self, t: u32) -> Vec<MoveKind> {
        let w = w_cap(t as u64) as usize;
        let checks = [
            (MoveKind::PlateAdd, self.plate_add, 1),
            (MoveKind::OliveAddFirst, self.olive_add_first, 1),
            (MoveKind::PlateRemoveSimple, self.plate_remove_simple, 1),
            (MoveKind::OliveAddLater, self.olive_add_later, w),
            (MoveKind::OliveRemove, self.olive_remove, w - 1),
            (MoveKind::PlateRemoveComplex, self.plate_remove_complex, w * w),
        ];
        checks
            .into_iter()
            .filter(|&(_, count, cap)| count > cap)
            .map(|(kind, _, _)| kind)
            .collect()
    }

    pub fn total(&self) -> usize {
        self.plate_add
            + self.olive_add_first
            + self.olive_add_later
            + self.olive_remove
            + self.plate_remove_simple
            + self.plate_remove_complex
    }
}

pub fn move_capacity_profile(p: &Partition) -> MoveProfile {
    let mut profile = MoveProfile::default();
    for (mv, _) in legal_moves(p, true) {
        let slot = match mv.kind() {
            MoveKind::PlateAdd => &mut profile.plate_add,
            MoveKind::OliveAddFirst => &mut profile.olive_add_first,
            MoveKind::OliveAddLater => &mut profile.olive_add_later,
            MoveKind::OliveRemove => &mut profile.olive_remove,
            MoveKind::PlateRemoveSimple => &mut profile.plate_remove_simple,
            MoveKind::PlateRemoveComplex => &mut profile.plate_remove_complex,
        };
        *slot += 1;
    }
    profile
}

/// Dense ids for partitions up to a fixed weight.
#[derive(Debug, Clone)]
pub struct PartitionInterner {
    max_weight: u32,
    max_states: usize,
    ids: HashMap<Partition, u32>,
    states: Vec<Partition>,
}

impl PartitionInterner {
    pub fn new(max_weight: u32, max_states: usize) -> Self {
        PartitionInterner {
            max_weight,
            max_states,
            ids: HashMap::new(),
            states: Vec::new(),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn set_max_weight(&mut self, max_weight: u32) {
        self.max_weight = self.max_weight.max(max_weight);
    }

    pub fn intern(&mut self, p: &Partition) -> Result<u32> {
        if let Some(&id) = self.ids.get(p) {
            return Ok(id);
        }
        if p.weight() > self.max_weight {
            return Err(Error::WeightBound {
                state: p.clone(),
                max_weight: self.max_weight,
            });
        }
        if self.states.len() >= self.max_states {
            return Err(Error::ResourceLimit {
                limit: self.max_states,
            });
        }
        let id = self.states.len() as u32;
        self.ids.insert(p.clone(), id);
        self.states.push(p.clone());
        Ok(id)
    }

    pub fn id(&self, p: &Partition) -> Option<u32> {
        self.ids.get(p).copied()
    }

    pub fn get(&self, id: u32) -> &Partition {
        &self.states[id as usize]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}
