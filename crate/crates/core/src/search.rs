//! Backtracking over colorings of `[1, N]`.
//!
//! Integers are colored in increasing order; after `m` is colored only the
//! solutions whose largest coordinate is `m` need checking, so each `m` gets
//! a precomputed list of those solutions, reduced to the set of their other
//! distinct values. Colors are introduced in order (color `t` only after
//! `0..t` have appeared), which removes the `r!` relabelings without losing
//! completeness. The first avoiding coloring reached is therefore the
//! lexicographically least one in first-use normal form.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{verify_avoiding, Color, Coloring};
use crate::equation::{enumerate_solutions, is_regular, LinearEquation, SolutionCursor};
use crate::error::{Error, Exhaustion, Result};

/// Largest `N` the searcher accepts.
pub const MAX_SEARCH_BOUND: u64 = 1 << 24;

/// Default node budget: color attempts across the whole call.
pub const DEFAULT_MAX_NODES: u64 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Color attempts allowed before giving up with
    /// [`Error::BudgetExhausted`].
    pub max_nodes: u64,
    /// Worker threads; `1` is the deterministic sequential search.
    pub threads: usize,
    /// Only count solutions with pairwise distinct values.
    pub distinct_values: bool,
    /// Introduce colors in first-use order. Turning this off explores every
    /// relabeling and exists for cross-checking.
    pub symmetry_breaking: bool,
    /// Record wall time in the statistics.
    pub timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            threads: 1,
            distinct_values: false,
            symmetry_breaking: true,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// An avoiding coloring of `[1, N]`.
    Witness { coloring: Coloring },
    /// The search tree was fully explored: every `r`-coloring of `[1, N]`
    /// has a monochromatic solution.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub equation: LinearEquation,
    pub r: u32,
    #[serde(rename = "N")]
    pub bound: u64,
    pub outcome: Outcome,
    /// The witness is the least avoiding coloring in first-use normal form.
    pub lex_least: bool,
    pub distinct_values: bool,
    pub stats: SearchStats,
}

impl SearchCertificate {
    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, Outcome::Exhausted)
    }

    pub fn witness(&self) -> Option<&Coloring> {
        match &self.outcome {
            Outcome::Witness { coloring } => Some(coloring),
            Outcome::Exhausted => None,
        }
    }

    /// Re-checks a witness with the enumeration code path. Exhaustion claims
    /// cannot be checked cheaply and are accepted as is.
    pub fn verify(&self) -> Result<()> {
        let Some(c) = self.witness() else {
            return Ok(());
        };
        if c.domain_bound() != self.bound || c.num_colors() > self.r {
            return Err(Error::Verification(format!(
                "witness is a {}-coloring of [1, {}], expected at most {} colors on [1, {}]",
                c.num_colors(),
                c.domain_bound(),
                self.r,
                self.bound
            )));
        }
        if self.distinct_values {
            let hit = enumerate_solutions(&self.equation, self.bound, None)?
                .find(|s| s.is_injective() && c.is_monochromatic(&s.values).is_some());
            if let Some(s) = hit {
                return Err(Error::Verification(format!("monochromatic solution {:?}", s.values)));
            }
        } else if let crate::coloring::Verdict::Violated(s) = verify_avoiding(c, &self.equation, self.bound)? {
            return Err(Error::Verification(format!("monochromatic solution {:?}", s.values)));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// Per-`m` constraint lists, grown on demand.
struct Constraints {
    coeffs: Vec<i64>,
    distinct: bool,
    /// `forced[m]`: the all-`m` tuple is a solution, so `m` can never be colored.
    forced: Vec<bool>,
    data: Vec<Vec<u32>>,
    ends: Vec<Vec<u32>>,
}

impl Constraints {
    fn new(eq: &LinearEquation, distinct: bool) -> Result<Self> {
        Ok(Self {
            coeffs: eq.small_coeffs()?,
            distinct,
            forced: vec![false],
            data: vec![Vec::new()],
            ends: vec![Vec::new()],
        })
    }

    fn covered(&self) -> u64 {
        self.forced.len() as u64 - 1
    }

    fn extend_to(&mut self, n: u64) -> Result<()> {
        let start = self.covered() + 1;
        if start > n {
            return Ok(());
        }
        let mut cursor = SolutionCursor::with_max_element(self.coeffs.clone(), n)?;
        let mut set: Vec<u32> = Vec::new();
        let mut sets: Vec<Vec<u32>> = Vec::new();
        for m in start..=n {
            cursor.reset(m)?;
            sets.clear();
            let mut forced = false;
            while let Some(values) = cursor.next_values() {
                if self.distinct && !is_injective(values) {
                    continue;
                }
                set.clear();
                set.extend(values.iter().filter(|&&v| v != m).map(|&v| v as u32));
                set.sort_unstable();
                set.dedup();
                if set.is_empty() {
                    forced = true;
                    break;
                }
                sets.push(set.clone());
            }
            sets.sort_unstable();
            sets.dedup();
            // a superset constraint is implied by any of its subsets
            let mut data = Vec::new();
            let mut ends = Vec::new();
            if !forced {
                for s in sets.iter().filter(|s| s.len() == 1) {
                    data.push(s[0]);
                    ends.push(data.len() as u32);
                }
                let singles: Vec<u32> = data.clone();
                for s in sets.iter().filter(|s| s.len() > 1) {
                    if s.iter().any(|v| singles.binary_search(v).is_ok()) {
                        continue;
                    }
                    data.extend_from_slice(s);
                    ends.push(data.len() as u32);
                }
            }
            self.forced.push(forced);
            self.data.push(data);
            self.ends.push(ends);
        }
        Ok(())
    }

    /// Whether giving `m` the color `k` completes no monochromatic solution.
    #[inline]
    fn allows(&self, colors: &[Color], m: usize, k: Color) -> bool {
        if self.forced[m] {
            return false;
        }
        let data = &self.data[m];
        let mut begin = 0usize;
        for &end in &self.ends[m] {
            let end = end as usize;
            if data[begin..end].iter().all(|&v| colors[v as usize] == k) {
                return false;
            }
            begin = end;
        }
        true
    }
}

fn is_injective(values: &[u64]) -> bool {
    values.iter().enumerate().all(|(i, v)| !values[..i].contains(v))
}

struct Meter<'a> {
    shared: &'a AtomicU64,
    limit: u64,
    local: u64,
}

const FLUSH: u64 = 1024;

impl<'a> Meter<'a> {
    fn new(shared: &'a AtomicU64, limit: u64) -> Self {
        Self { shared, limit, local: 0 }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == FLUSH {
            self.local = 0;
            return self.shared.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH <= self.limit;
        }
        true
    }

    fn flush(&mut self) -> u64 {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        total
    }
}

/// Partial coloring: `colors[1..m)` assigned, `used[t]` the number of
/// distinct colors among `1..=t`.
#[derive(Clone)]
struct State {
    colors: Vec<Color>,
    used: Vec<u32>,
}

impl State {
    fn new(n: usize) -> Self {
        Self {
            colors: vec![0; n + 1],
            used: vec![0; n + 1],
        }
    }

    fn from_prefix(n: usize, prefix: &[Color]) -> Self {
        let mut s = Self::new(n);
        for (i, &c) in prefix.iter().enumerate() {
            s.colors[i + 1] = c;
            s.used[i + 1] = s.used[i].max(c + 1);
        }
        s
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    cons: &'a Constraints,
    r: u32,
    symmetry: bool,
}

impl Searcher<'_> {
    /// Depth-first continuation from position `m`, trying colors from
    /// `start`. Positions `<= floor` are never revisited. On `Found` the
    /// state holds an avoiding coloring of `[1, n]`.
    fn explore(&self, st: &mut State, n: usize, mut m: usize, mut start: Color, floor: usize, meter: &mut Meter) -> Step {
        loop {
            if m > n {
                return Step::Found;
            }
            let limit = if self.symmetry { self.r.min(st.used[m - 1] + 1) } else { self.r };
            let mut placed = false;
            let mut k = start;
            while k < limit {
                if !meter.tick() {
                    return Step::OutOfBudget;
                }
                if self.cons.allows(&st.colors, m, k) {
                    st.colors[m] = k;
                    st.used[m] = st.used[m - 1].max(k + 1);
                    placed = true;
                    break;
                }
                k += 1;
            }
            if placed {
                m += 1;
                start = 0;
            } else {
                if m - 1 <= floor {
                    return Step::Exhausted;
                }
                m -= 1;
                start = st.colors[m] + 1;
            }
        }
    }
}

/// First-use normal form of a coloring: colors renumbered by first appearance.
pub fn normalize_first_use(colors: &[Color]) -> Vec<Color> {
    let mut map: Vec<Option<Color>> = Vec::new();
    let mut next = 0;
    colors
        .iter()
        .map(|&c| {
            let c = c as usize;
            if map.len() <= c {
                map.resize(c + 1, None);
            }
            *map[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn check_args(r: u32, n: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::out_of_range("r", r, 1, u32::MAX as i128));
    }
    if !(1..=MAX_SEARCH_BOUND).contains(&n) {
        return Err(Error::out_of_range("N", n, 1, MAX_SEARCH_BOUND as i128));
    }
    Ok(())
}

/// Shared machinery for one equation and palette across several bounds.
struct Engine {
    eq: LinearEquation,
    r: u32,
    opts: SearchOptions,
    cons: Constraints,
    nodes: AtomicU64,
}

/// Result of one bounded run: the avoiding coloring found, or `None` when
/// the tree is exhausted.
type RunResult = Result<Option<Vec<Color>>>;

impl Engine {
    fn new(eq: &LinearEquation, r: u32, opts: &SearchOptions) -> Result<Self> {
        if opts.threads == 0 {
            return Err(Error::out_of_range("threads", 0, 1, usize::MAX as i128));
        }
        Ok(Self {
            eq: eq.clone(),
            r,
            opts: opts.clone(),
            cons: Constraints::new(eq, opts.distinct_values)?,
            nodes: AtomicU64::new(0),
        })
    }

    fn searcher(&self) -> Searcher<'_> {
        Searcher {
            cons: &self.cons,
            r: self.r,
            symmetry: self.opts.symmetry_breaking,
        }
    }

    fn exhausted_budget(&self, n: u64) -> Error {
        Error::BudgetExhausted(Exhaustion::new(
            "coloring search",
            format!(
                "{} nodes against a budget of {}, at N = {n}, r = {}",
                self.nodes.load(Ordering::Relaxed),
                self.opts.max_nodes,
                self.r
            ),
        ))
    }

    /// Least avoiding coloring of `[1, n]` not below `seed` (which must be
    /// avoiding on its own length and in first-use form).
    fn run(&mut self, n: u64, seed: Option<&[Color]>) -> RunResult {
        self.cons.extend_to(n)?;
        let nu = n as usize;
        let seed = seed.map(|s| &s[..s.len().min(nu)]);
        if self.opts.threads > 1 {
            return self.run_parallel(nu, seed);
        }
        let mut st = State::from_prefix(nu, seed.unwrap_or(&[]));
        let m = seed.map_or(0, <[Color]>::len) + 1;
        let mut meter = Meter::new(&self.nodes, self.opts.max_nodes);
        let step = self.searcher().explore(&mut st, nu, m, 0, 0, &mut meter);
        let total = meter.flush();
        match step {
            Step::Found => Ok(Some(st.colors[1..].to_vec())),
            Step::Exhausted if total <= self.opts.max_nodes => Ok(None),
            _ => Err(self.exhausted_budget(n)),
        }
    }

    /// Splits the tree at a fixed depth and explores the subtrees in
    /// parallel. Subtrees are merged in lexicographic order, so the witness
    /// matches the sequential one.
    fn run_parallel(&self, n: usize, seed: Option<&[Color]>) -> RunResult {
        let threads = self.opts.threads;
        let searcher = self.searcher();
        let seed_len = seed.map_or(0, <[Color]>::len);
        let mut meter = Meter::new(&self.nodes, self.opts.max_nodes);

        // Prefixes of length `depth` in order, starting at the seed's.
        let mut depth = 1usize.max(seed_len.min(n));
        let prefixes = loop {
            let mut out: Vec<Vec<Color>> = Vec::new();
            let mut st = State::from_prefix(n, seed.map_or(&[][..], |s| &s[..s.len().min(depth)]));
            let mut m = seed_len.min(depth) + 1;
            let mut start = 0;
            loop {
                match searcher.explore(&mut st, depth, m, start, 0, &mut meter) {
                    Step::Found => {
                        out.push(st.colors[1..=depth].to_vec());
                        m = depth;
                        start = st.colors[depth] + 1;
                    }
                    Step::Exhausted => break,
                    Step::OutOfBudget => return Err(self.exhausted_budget(n as u64)),
                }
            }
            if out.len() >= threads * 8 || depth >= n || out.is_empty() {
                break out;
            }
            depth += 1;
        };
        meter.flush();
        if prefixes.is_empty() {
            return Ok(None);
        }

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        let limit = self.opts.max_nodes;
        let found = pool.install(|| {
            prefixes.par_iter().enumerate().find_map_first(|(idx, prefix)| {
                let mut meter = Meter::new(&self.nodes, limit);
                let (mut st, m) = match seed {
                    Some(s) if idx == 0 && s.len() > depth => (State::from_prefix(n, s), s.len() + 1),
                    _ => (State::from_prefix(n, prefix), depth + 1),
                };
                let step = searcher.explore(&mut st, n, m, 0, depth, &mut meter);
                let total = meter.flush();
                match step {
                    Step::Found => Some(Ok(st.colors[1..].to_vec())),
                    Step::Exhausted if total <= limit => None,
                    _ => Some(Err(())),
                }
            })
        });
        match found {
            None => Ok(None),
            Some(Ok(colors)) => Ok(Some(colors)),
            Some(Err(())) => Err(self.exhausted_budget(n as u64)),
        }
    }

    fn certificate(&self, n: u64, found: Option<Vec<Color>>, lex_least: bool, started: Instant) -> Result<SearchCertificate> {
        let outcome = match found {
            Some(colors) => Outcome::Witness {
                coloring: Coloring::explicit(self.r, colors)?,
            },
            None => Outcome::Exhausted,
        };
        Ok(SearchCertificate {
            equation: self.eq.clone(),
            r: self.r,
            bound: n,
            outcome,
            lex_least,
            distinct_values: self.opts.distinct_values,
            stats: self.stats(started),
        })
    }

    fn stats(&self, started: Instant) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            wall_ms: self.opts.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
        }
    }

    /// Checks a user seed and puts it in first-use form.
    fn prepare_seed(&mut self, seed: &[Color]) -> Result<Vec<Color>> {
        let seed = if self.opts.symmetry_breaking {
            normalize_first_use(seed)
        } else {
            seed.to_vec()
        };
        if let Some(&c) = seed.iter().find(|&&c| c >= self.r) {
            return Err(Error::Precondition(format!("seed uses color {c}, palette has {} colors", self.r)));
        }
        self.cons.extend_to(seed.len() as u64)?;
        let st = State::from_prefix(seed.len(), &seed);
        if let Some(m) = (1..=seed.len()).find(|&m| !self.cons.allows(&st.colors, m, st.colors[m])) {
            return Err(Error::Precondition(format!(
                "seed coloring has a monochromatic solution with maximum {m}"
            )));
        }
        Ok(seed)
    }
}

/// Searches for an `r`-coloring of `[1, n]` with no monochromatic solution.
///
/// `Exhausted` is returned only after the whole tree has been explored;
/// running out of `max_nodes` is [`Error::BudgetExhausted`].
pub fn search_avoiding(eq: &LinearEquation, r: u32, n: u64, opts: &SearchOptions) -> Result<SearchCertificate> {
    check_args(r, n)?;
    let started = Instant::now();
    let mut engine = Engine::new(eq, r, opts)?;
    let found = engine.run(n, None)?;
    engine.certificate(n, found, true, started)
}

/// [`search_avoiding`] resumed from a known avoiding coloring of a prefix.
///
/// The search starts at `seed` and only moves forward in lexicographic
/// order. A seed that is the least avoiding coloring of its own length
/// (as returned by this module) loses nothing. For any other seed, a
/// witness found this way is still valid, but an exhausted tree proves
/// nothing, so the search then reruns from scratch.
pub fn search_avoiding_from(
    eq: &LinearEquation,
    r: u32,
    n: u64,
    seed: &[Color],
    seed_is_least: bool,
    opts: &SearchOptions,
) -> Result<SearchCertificate> {
    check_args(r, n)?;
    let started = Instant::now();
    let mut engine = Engine::new(eq, r, opts)?;
    let seed = engine.prepare_seed(seed)?;
    match engine.run(n, Some(&seed))? {
        Some(colors) => engine.certificate(n, Some(colors), seed_is_least, started),
        None if seed_is_least => engine.certificate(n, None, true, started),
        None => {
            let found = engine.run(n, None)?;
            engine.certificate(n, found, true, started)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadoValue {
    /// Every `r`-coloring of `[1, value]` has a monochromatic solution and
    /// some coloring of `[1, value - 1]` does not.
    Value { value: u64 },
    /// An avoiding coloring survives up to `max_n`.
    Unknown { max_n: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadoReport {
    pub equation: LinearEquation,
    pub r: u32,
    pub result: RadoValue,
    /// Avoiding coloring of the largest bound that has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coloring>,
    pub stats: SearchStats,
}

impl RadoReport {
    pub fn value(&self) -> Option<u64> {
        match self.result {
            RadoValue::Value { value } => Some(value),
            RadoValue::Unknown { .. } => None,
        }
    }
}

/// Smallest `N` such that every `r`-coloring of `[1, N]` has a monochromatic
/// solution, searched for `N = 1, 2, ..., max_n`. The least witness for `N`
/// seeds the search for `N + 1`. The node budget covers the whole ascent.
pub fn rado_number(eq: &LinearEquation, r: u32, max_n: u64, opts: &SearchOptions) -> Result<RadoReport> {
    check_args(r, max_n)?;
    let engine = Engine::new(eq, r, opts)?;
    ascend(engine, 1, None, true, max_n)
}

/// [`rado_number`] starting from an avoiding coloring `seed` of `[1, L]`,
/// which already shows the value exceeds `L`; the ascent begins at `L + 1`.
/// The seed need not be least: an exhausted tree reached from it is
/// confirmed by a fresh search before it is reported.
pub fn rado_number_from(
    eq: &LinearEquation,
    r: u32,
    max_n: u64,
    seed: &[Color],
    opts: &SearchOptions,
) -> Result<RadoReport> {
    check_args(r, max_n)?;
    let mut engine = Engine::new(eq, r, opts)?;
    let seed = engine.prepare_seed(seed)?;
    if seed.is_empty() {
        return ascend(engine, 1, None, true, max_n);
    }
    let len = seed.len() as u64;
    if len >= max_n {
        let started = Instant::now();
        let witness = Coloring::explicit(r, seed[..max_n as usize].to_vec())?;
        return Ok(RadoReport {
            equation: eq.clone(),
            r,
            result: RadoValue::Unknown { max_n },
            witness: Some(witness),
            stats: engine.stats(started),
        });
    }
    ascend(engine, len + 1, Some(seed), false, max_n)
}

fn ascend(
    mut engine: Engine,
    first: u64,
    mut witness: Option<Vec<Color>>,
    mut least: bool,
    max_n: u64,
) -> Result<RadoReport> {
    let started = Instant::now();
    let report = |engine: &Engine, result, witness: Option<Vec<Color>>| -> Result<RadoReport> {
        Ok(RadoReport {
            equation: engine.eq.clone(),
            r: engine.r,
            result,
            witness: witness.map(|w| Coloring::explicit(engine.r, w)).transpose()?,
            stats: engine.stats(started),
        })
    };
    for n in first..=max_n {
        let mut found = engine.run(n, witness.as_deref())?;
        if found.is_none() && !least {
            found = engine.run(n, None)?;
            least = true;
        }
        match found {
            Some(colors) => witness = Some(colors),
            None => return report(&engine, RadoValue::Value { value: n }, witness),
        }
    }
    report(&engine, RadoValue::Unknown { max_n }, witness)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DorRowStatus {
    /// Finite `r`-color Rado number: the equation is `r`-regular.
    Exhausted { rado_number: u64 },
    /// An avoiding `r`-coloring of `[1, evidence_bound]`.
    Witness { coloring: Coloring },
    BudgetExceeded { searched: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DorRow {
    pub r: u32,
    #[serde(flatten)]
    pub status: DorRowStatus,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DorReport {
    pub equation: LinearEquation,
    pub is_regular: bool,
    pub evidence_bound: u64,
    /// Largest `r` with a finite Rado number found.
    pub certified_lower: Option<u32>,
    /// One less than the smallest `r` whose witness survives to the
    /// evidence bound. Not a proof; absent for regular equations.
    pub evidence_upper: Option<u32>,
    pub rows: Vec<DorRow>,
}

/// Runs [`rado_number`] for `r = 1..=r_max` up to `evidence_bound` and
/// tabulates the bounds on the degree of regularity. Never fails on budget:
/// such rows are marked instead.
pub fn dor_report(eq: &LinearEquation, r_max: u32, evidence_bound: u64, opts: &SearchOptions) -> Result<DorReport> {
    if r_max == 0 {
        return Err(Error::out_of_range("r_max", 0, 1, u32::MAX as i128));
    }
    check_args(1, evidence_bound)?;
    let regular = is_regular(eq).regular;
    let mut rows = Vec::new();
    let mut carried: Option<Coloring> = None;
    for r in 1..=r_max {
        // an avoiding coloring with fewer colors is also an r-coloring
        if let Some(prev) = &carried {
            let colors = prev.expand();
            let crate::coloring::Source::Explicit(colors) = colors.source() else {
                unreachable!("expanded colorings are explicit");
            };
            let coloring = Coloring::explicit(r, colors.clone())?;
            rows.push(DorRow {
                r,
                status: DorRowStatus::Witness { coloring },
                nodes: 0,
            });
            continue;
        }
        let row = match rado_number(eq, r, evidence_bound, opts) {
            Ok(rep) => {
                let nodes = rep.stats.nodes;
                match (rep.result, rep.witness) {
                    (RadoValue::Value { value }, _) => DorRow {
                        r,
                        status: DorRowStatus::Exhausted { rado_number: value },
                        nodes,
                    },
                    (RadoValue::Unknown { .. }, Some(coloring)) => {
                        carried = Some(coloring.clone());
                        DorRow {
                            r,
                            status: DorRowStatus::Witness { coloring },
                            nodes,
                        }
                    }
                    (RadoValue::Unknown { .. }, None) => unreachable!("unknown always carries a witness"),
                }
            }
            Err(Error::BudgetExhausted(ex)) => DorRow {
                r,
                status: DorRowStatus::BudgetExceeded { searched: ex.searched },
                nodes: opts.max_nodes,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    let certified_lower = rows
        .iter()
        .filter(|row| matches!(row.status, DorRowStatus::Exhausted { .. }))
        .map(|row| row.r)
        .max();
    let evidence_upper = if regular {
        None
    } else {
        rows.iter()
            .find(|row| matches!(row.status, DorRowStatus::Witness { .. }))
            .map(|row| row.r - 1)
    };
    Ok(DorReport {
        equation: eq.clone(),
        is_regular: regular,
        evidence_bound,
        certified_lower,
        evidence_upper,
        rows,
    })
}
