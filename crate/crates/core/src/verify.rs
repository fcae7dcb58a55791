//! Named check suites behind `olives verify`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;

use crate::analysis::nth_root_ratio;
use crate::counting::{
    catalan, count_proper_dyck_paths, count_zigzag_permutations, double_factorial,
    geometric_class_reference, lift_young_walk, tangent_numbers, weighted_dyck_sum_brute,
    weighted_dyck_sum_dp, young_closed_walks, Counter, CATALAN_NUMBERS, CLOSED_WALK_COUNTS,
    GAME_COUNTS, RATIO_AT_18, TANGENT_NUMBERS,
};
use crate::game::{enumerate_games, game_stats, olive_dyck_path, DEFAULT_ORACLE_CEILING};
use crate::partition::{legal_moves, move_capacity_profile, w_cap, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    PaperValues,
    Identities,
    Oracle,
    Bounds,
    Claims,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::PaperValues => "paper-values",
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Bounds => "bounds",
            Suite::Claims => "claims",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// A reported mismatch against a quoted external value; does not fail the suite.
    Note,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Note => "NOTE",
        };
        write!(f, "{tag}  {}/{}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub oracle_ceiling: usize,
    pub max_states: usize,
    /// Largest `n` for the lower-bound comparison.
    pub bound_max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            oracle_ceiling: DEFAULT_ORACLE_CEILING,
            max_states: crate::counting::DEFAULT_MAX_STATES,
            bound_max_n: 18,
        }
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite: suite.name(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Outcome::Pass } else { Outcome::Fail }, detail);
    }

    fn push(&mut self, name: impl Into<String>, outcome: Outcome, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            outcome,
            detail: detail.into(),
        });
    }

    fn result<T>(&mut self, name: &str, value: crate::Result<T>) -> Option<T> {
        match value {
            Ok(v) => Some(v),
            Err(err) => {
                self.check(name, false, err.to_string());
                None
            }
        }
    }
}

fn compare<T: PartialEq + fmt::Display>(got: &[T], want: &[T]) -> (bool, String) {
    let render = |xs: &[T]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    (got == want, format!("got [{}], expected [{}]", render(got), render(want)))
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::PaperValues => paper_values(config),
        Suite::Identities => identities(),
        Suite::Oracle => oracle(config),
        Suite::Bounds => bounds(config),
        Suite::Claims => claims(config),
        Suite::All => [
            Suite::PaperValues,
            Suite::Identities,
            Suite::Oracle,
            Suite::Bounds,
            Suite::Claims,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, config))
        .collect(),
    }
}

fn paper_values(config: &VerifyConfig) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::PaperValues);
    let mut counter = Counter::new(config.max_states);

    let games: Option<Vec<BigUint>> = (0..GAME_COUNTS.len())
        .map(|n| rec.result("game-counts", counter.count_games(n)))
        .collect();
    if let Some(games) = games {
        let (ok, detail) = compare(&games, &GAME_COUNTS.map(BigUint::from));
        rec.check("game-counts", ok, detail);
    }

    for (n, quoted) in CLOSED_WALK_COUNTS {
        let name = format!("closed-walks-n{n}");
        if let Some(got) = rec.result(&name, counter.count_closed_walks(n)) {
            let detail = format!("got {got}, quoted {quoted}");
            if got == BigUint::from(quoted) {
                rec.check(name, true, detail);
            } else {
                // the quoted n = 4 value disagrees with the first-return convolution
                rec.push(name, Outcome::Note, detail);
            }
        }
    }

    let tangents: Vec<BigUint> = (0..TANGENT_NUMBERS.len()).map(tangent_numbers).collect();
    let (ok, detail) = compare(&tangents, &TANGENT_NUMBERS.map(BigUint::from));
    rec.check("tangent-numbers", ok, detail);

    let catalans: Vec<BigUint> = (0..CATALAN_NUMBERS.len() as u64).map(catalan).collect();
    let (ok, detail) = compare(&catalans, &CATALAN_NUMBERS.map(BigUint::from));
    rec.check("catalan-numbers", ok, detail);

    let geometric: Vec<u64> = geometric_class_reference().iter().map(|&(_, g)| g).collect();
    let (ok, detail) = compare(&geometric, &[1, 2, 19, 428, 17746]);
    rec.check("geometric-classes-table", ok, detail);

    if let Some(m18) = rec.result("ratio-n18", counter.count_games(18)) {
        let ratio = nth_root_ratio(&m18, 18);
        let ok = (ratio.to_f64() - RATIO_AT_18).abs() < 1e-5;
        rec.check("ratio-n18", ok, format!("M_18 = {m18}, ratio {}", ratio.to_decimal(8)));
    }
    rec.checks
}

fn identities() -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Identities);

    let bad: Vec<usize> = (0..=12)
        .filter(|&v| weighted_dyck_sum_brute(v) != double_factorial(2 * v as i64 - 1))
        .collect();
    rec.check("weighted-dyck-brute-v<=12", bad.is_empty(), failures(&bad));
    let bad: Vec<usize> = (0..=200)
        .filter(|&v| weighted_dyck_sum_dp(v) != double_factorial(2 * v as i64 - 1))
        .collect();
    rec.check("weighted-dyck-dp-v<=200", bad.is_empty(), failures(&bad));

    let mut counter = Counter::default();
    let mut bad = Vec::new();
    for n in 0..=10 {
        match counter.count_young_walks(2 * n) {
            Ok(c) if c == double_factorial(2 * n as i64 - 1) => {}
            _ => bad.push(n),
        }
    }
    rec.check("young-walks-n<=10", bad.is_empty(), failures(&bad));

    let bad: Vec<usize> = (0..=10)
        .filter(|&n| BigUint::from(count_proper_dyck_paths(n)) != catalan(n as u64))
        .collect();
    rec.check("proper-dyck-paths-n<=10", bad.is_empty(), failures(&bad));

    let bad: Vec<usize> = (0..=3)
        .filter(|&n| BigUint::from(count_zigzag_permutations(2 * n + 2)) != tangent_numbers(n))
        .collect();
    rec.check("zigzag-brute-force-len<=8", bad.is_empty(), failures(&bad));
    rec.checks
}

fn failures(bad: &[usize]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("mismatch at {bad:?}")
    }
}

fn oracle(config: &VerifyConfig) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Oracle);
    let mut counter = Counter::new(config.max_states);
    for n in 0..=config.oracle_ceiling {
        let name = format!("enumeration-vs-dp-n{n}");
        let Some(games) = rec.result(&name, enumerate_games(n, config.oracle_ceiling)) else {
            continue;
        };
        let enumerated = BigUint::from(games.count());
        if let Some(dp) = rec.result(&name, counter.count_games(n)) {
            rec.check(&name, enumerated == dp, format!("enumerated {enumerated}, dp {dp}"));
        }
    }
    let mut unpruned = Counter::new(config.max_states);
    for n in 0..=8 {
        let name = format!("prune-soundness-n{n}");
        let pruned = rec.result(&name, counter.count_games_with(n, true));
        let full = rec.result(&name, unpruned.count_games_with(n, false));
        if let (Some(a), Some(b)) = (pruned, full) {
            rec.check(name, a == b, format!("pruned {a}, unpruned {b}"));
        }
    }
    rec.checks
}

fn bounds(config: &VerifyConfig) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Bounds);
    let mut counter = Counter::new(config.max_states);
    let mut bad = Vec::new();
    for n in 0..=config.bound_max_n {
        if let Some(m) = rec.result("lower-bound", counter.count_games(n)) {
            if m < double_factorial(2 * n as i64 - 1) {
                bad.push(n);
            }
        }
    }
    rec.check(
        format!("lower-bound-n<={}", config.bound_max_n),
        bad.is_empty(),
        failures(&bad),
    );

    for n in 0..=5 {
        let walks = young_closed_walks(2 * n);
        let mut games = HashSet::new();
        let mut invalid = 0;
        for walk in &walks {
            match lift_young_walk(walk) {
                Ok(game) if game.len() == n => {
                    games.insert(game.to_string());
                }
                _ => invalid += 1,
            }
        }
        let want = double_factorial(2 * n as i64 - 1);
        let ok = invalid == 0 && BigUint::from(games.len()) == want && BigUint::from(walks.len()) == want;
        rec.check(
            format!("lift-injective-n{n}"),
            ok,
            format!("{} walks, {} distinct games, {invalid} invalid, (2n-1)!! = {want}", walks.len(), games.len()),
        );
    }
    rec.checks
}

fn claims(config: &VerifyConfig) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Claims);

    let mut eq3 = Vec::new();
    let mut caps = Vec::new();
    let mut simple = Vec::new();
    let states = Partition::all_up_to_weight(20);
    for p in &states {
        let t = p.olive_count();
        if p.distinct_olive_counts() as u64 > w_cap(t as u64) {
            eq3.push(p.to_string());
        }
        if !move_capacity_profile(p).cap_violations(t).is_empty() {
            caps.push(p.to_string());
        }
        let moves = legal_moves(p, true);
        let targets: HashSet<&Partition> = moves.iter().map(|(_, q)| q).collect();
        if targets.len() != moves.len() {
            simple.push(p.to_string());
        }
    }
    let summary = |bad: &[String]| {
        if bad.is_empty() {
            format!("{} partitions", states.len())
        } else {
            format!("violations at {}", bad.join(" "))
        }
    };
    rec.check("distinct-olive-counts-weight<=20", eq3.is_empty(), summary(&eq3));
    rec.check("move-caps-weight<=20", caps.is_empty(), summary(&caps));
    rec.check("simple-graph-weight<=20", simple.is_empty(), summary(&simple));

    for n in 0..=config.oracle_ceiling {
        let name = format!("game-invariants-n{n}");
        let Some(games) = rec.result(&name, enumerate_games(n, config.oracle_ceiling)) else {
            continue;
        };
        let mut total = 0u64;
        let mut bad = 0u64;
        for game in games {
            total += 1;
            let stats = game_stats(&game);
            let path = olive_dyck_path(&game);
            let ok = stats.p_c <= stats.v_f
                && stats.v() + stats.p() == n
                && path.is_valid()
                && path.semilength() == stats.v();
            if !ok {
                bad += 1;
            }
        }
        rec.check(name, bad == 0, format!("{total} games, {bad} violations"));
    }
    rec.checks
}
