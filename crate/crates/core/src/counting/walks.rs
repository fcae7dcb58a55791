//! Layered walk counting over the partition graph.
//!
//! Each layer maps interned partitions to the exact number of walks reaching
//! them. Out-edges are generated from [`legal_moves`] the first time a state
//! is expanded and memoized for the rest of the run, so one [`StateSpace`]
//! can serve many counts.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::partition::{legal_moves, MoveKind, Partition, PartitionInterner};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

/// Layers with fewer states than this are accumulated on one thread.
const PARALLEL_THRESHOLD: usize = 2048;

#[derive(Debug, Clone, Default)]
struct Edges {
    /// Young's lattice edges: plate/olive adds, olive removes, simple plate removes.
    young: Vec<u32>,
    /// Complex plate-remove edges.
    complex: Vec<u32>,
}

/// Interned partitions plus their memoized successor lists.
#[derive(Debug, Clone)]
pub struct StateSpace {
    interner: PartitionInterner,
    edges: Vec<Option<Edges>>,
}

impl Default for StateSpace {
    fn default() -> Self {
        StateSpace::new(DEFAULT_MAX_STATES)
    }
}

impl StateSpace {
    pub fn new(max_states: usize) -> Self {
        StateSpace {
            interner: PartitionInterner::new(0, max_states),
            edges: Vec::new(),
        }
    }

    pub fn interner(&self) -> &PartitionInterner {
        &self.interner
    }

    pub fn len(&self) -> usize {
        self.interner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interner.is_empty()
    }

    /// Raises the weight bound. Successor lists of states on the old boundary
    /// were truncated there, so they are dropped and rebuilt on demand.
    fn grow_to(&mut self, max_weight: u32) {
        let old = self.interner.max_weight();
        if max_weight <= old {
            return;
        }
        for id in 0..self.interner.len() {
            if self.interner.get(id as u32).weight() == old {
                self.edges[id] = None;
            }
        }
        self.interner.set_max_weight(max_weight);
    }

    fn intern(&mut self, p: &Partition) -> Result<u32> {
        let id = self.interner.intern(p)?;
        if id as usize == self.edges.len() {
            self.edges.push(None);
        }
        Ok(id)
    }

    fn expand(&mut self, id: u32) -> Result<()> {
        if self.edges[id as usize].is_some() {
            return Ok(());
        }
        let state = self.interner.get(id).clone();
        let max_weight = self.interner.max_weight();
        let mut edges = Edges::default();
        for (mv, next) in legal_moves(&state, true) {
            if next.weight() > max_weight {
                continue;
            }
            let target = self.intern(&next)?;
            if mv.kind() == MoveKind::PlateRemoveComplex {
                edges.complex.push(target);
            } else {
                edges.young.push(target);
            }
        }
        self.edges[id as usize] = Some(edges);
        Ok(())
    }

    fn successors(&self, id: u32, allow_complex: bool) -> impl Iterator<Item = u32> + '_ {
        let edges = self.edges[id as usize]
            .as_ref()
            .expect("state expanded before use");
        let complex: &[u32] = if allow_complex { &edges.complex } else { &[] };
        edges.young.iter().chain(complex).copied()
    }

    /// Number of walks described by `spec`.
    pub fn count_walks(&mut self, spec: &WalkSpec) -> Result<BigUint> {
        let mut counter = WalkCounter::new(self, spec)?;
        while counter.step_index() < spec.length {
            counter.step()?;
        }
        Ok(counter.count_at(&spec.end))
    }
}

/// Which walks to count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSpec {
    pub start: Partition,
    pub end: Partition,
    pub length: usize,
    /// Include complex plate-remove edges.
    pub allow_complex: bool,
    /// Allow the walk to pass through the empty table strictly between its ends.
    pub allow_interim_empty: bool,
    /// Drop states from which `end` is out of reach in the remaining steps.
    pub prune: bool,
}

impl WalkSpec {
    /// Largest weight any counted state can have.
    fn max_weight(&self) -> u32 {
        let reach = self.start.weight() + self.length as u32;
        if self.prune {
            // weights move by one per step, so the meeting point is bounded
            let (a, b) = (self.start.weight(), self.end.weight());
            reach.min((a + b + self.length as u32) / 2)
        } else {
            reach
        }
    }

    fn admits(&self, state: &Partition, step: usize) -> bool {
        if !self.allow_interim_empty && state.is_empty() && step > 0 && step < self.length {
            return false;
        }
        if self.prune {
            let weight = state.weight() as usize;
            let remaining = self.length - step;
            if weight > self.start.weight() as usize + step
                || weight > self.end.weight() as usize + remaining
            {
                return false;
            }
        }
        true
    }
}

/// One DP layer at a time: interned state id to exact walk count.
pub struct WalkCounter<'a> {
    space: &'a mut StateSpace,
    spec: WalkSpec,
    step: usize,
    layer: Vec<(u32, BigUint)>,
}

impl<'a> WalkCounter<'a> {
    pub fn new(space: &'a mut StateSpace, spec: &WalkSpec) -> Result<Self> {
        space.grow_to(spec.max_weight());
        let start = space.intern(&spec.start)?;
        Ok(WalkCounter {
            space,
            spec: spec.clone(),
            step: 0,
            layer: vec![(start, BigUint::one())],
        })
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    /// Current support, sorted by state id.
    pub fn layer(&self) -> &[(u32, BigUint)] {
        &self.layer
    }

    pub fn count_at(&self, p: &Partition) -> BigUint {
        self.space
            .interner
            .id(p)
            .and_then(|id| self.layer.iter().find(|(s, _)| *s == id))
            .map(|(_, count)| count.clone())
            .unwrap_or_else(BigUint::zero)
    }

    pub fn step(&mut self) -> Result<()> {
        for &(id, _) in &self.layer {
            self.space.expand(id)?;
        }

        let space: &StateSpace = self.space;
        let allow_complex = self.spec.allow_complex;
        let push = |mut acc: HashMap<u32, BigUint>, (id, count): &(u32, BigUint)| {
            for target in space.successors(*id, allow_complex) {
                *acc.entry(target).or_insert_with(BigUint::zero) += count;
            }
            acc
        };
        let merge = |a: HashMap<u32, BigUint>, b: HashMap<u32, BigUint>| {
            let (small, mut large) = if a.len() < b.len() { (a, b) } else { (b, a) };
            for (id, count) in small {
                *large.entry(id).or_insert_with(BigUint::zero) += count;
            }
            large
        };
        let next: HashMap<u32, BigUint> = if self.layer.len() < PARALLEL_THRESHOLD {
            self.layer.iter().fold(HashMap::new(), push)
        } else {
            self.layer
                .par_iter()
                .fold(HashMap::new, push)
                .reduce(HashMap::new, merge)
        };

        self.step += 1;
        let step = self.step;
        let mut layer: Vec<(u32, BigUint)> = next
            .into_iter()
            .filter(|(id, _)| self.spec.admits(self.space.interner.get(*id), step))
            .collect();
        layer.sort_unstable_by_key(|(id, _)| *id);
        self.layer = layer;
        Ok(())
    }
}

/// Reusable counter for the game sequences; keeps one state space across calls.
#[derive(Debug, Clone, Default)]
pub struct Counter {
    space: StateSpace,
}

impl Counter {
    pub fn new(max_states: usize) -> Self {
        Counter {
            space: StateSpace::new(max_states),
        }
    }

    pub fn state_space(&self) -> &StateSpace {
        &self.space
    }

    /// `M_n`: first-return walks of length `2n + 2` at the empty table.
    ///
    /// The opening plate-add and closing simple plate-remove are forced, so
    /// this counts walks `<1> -> <1>` of length `2n` avoiding `<>`.
    pub fn count_games(&mut self, n: usize) -> Result<BigUint> {
        self.count_games_with(n, true)
    }

    /// [`Counter::count_games`] with the reachability prune switchable.
    pub fn count_games_with(&mut self, n: usize, prune: bool) -> Result<BigUint> {
        let one = Partition::new(vec![1])?;
        self.space.count_walks(&WalkSpec {
            start: one.clone(),
            end: one,
            length: 2 * n,
            allow_complex: true,
            allow_interim_empty: false,
            prune,
        })
    }

    /// Closed walks of length `2n + 2` at the empty table, interim returns allowed.
    pub fn count_closed_walks(&mut self, n: usize) -> Result<BigUint> {
        self.space.count_walks(&WalkSpec {
            start: Partition::empty(),
            end: Partition::empty(),
            length: 2 * n + 2,
            allow_complex: true,
            allow_interim_empty: true,
            prune: true,
        })
    }

    /// Closed walks of the given length at `<>` in Young's lattice.
    /// Odd lengths have none.
    pub fn count_young_walks(&mut self, length: usize) -> Result<BigUint> {
        self.space.count_walks(&WalkSpec {
            start: Partition::empty(),
            end: Partition::empty(),
            length,
            allow_complex: false,
            allow_interim_empty: true,
            prune: true,
        })
    }
}

pub fn count_games(n: usize) -> Result<BigUint> {
    Counter::default().count_games(n)
}

pub fn count_closed_walks(n: usize) -> Result<BigUint> {
    Counter::default().count_closed_walks(n)
}

pub fn count_young_walks(length: usize) -> Result<BigUint> {
    Counter::default().count_young_walks(length)
}
