//! Witness chains: verification and longest-chain search.
//!
//! Fix an ordered split of the coordinates into nonempty sets `u` and `v`.
//! A chain is a pair of equal-length sequences — `x_m` of `u`-tuples, `y_m`
//! of `v`-tuples — such that `f(x_l ⌢ y_l) ≠ f(x_m ⌢ y_n)` for every index
//! `l` and every pair `m < n`, where `⌢` interleaves the tuples back into a
//! cube point. Chains measure how far the function is from admitting a grid
//! partition; the longest length over all splits is `L_max`.
//!
//! Two structural facts drive the search. Validity is closed under taking
//! prefixes, so depth-first extension visits every maximal chain. And both
//! tuple sequences are forced to be injective — a repeat `y_m = y_n` makes
//! `f(x_m ⌢ y_n)` collide with the diagonal at `l = m`, a repeat of `x`
//! likewise at `l = n` — which caps the length at
//! `min(|u-space|, |v-space|)` and lets the DFS stop early once that bound
//! is reached.

use serde::{Deserialize, Serialize};

use crate::table::FunctionTable;
use crate::{Error, Result};

/// Node-count cap for exact searches, with an optional coarse wall-clock
/// cap. The node cap is what keeps results deterministic; the time cap (off
/// by default) trades that determinism for latency control and is only
/// consulted every 1024 nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap_ms: Option<u64>,
}

impl SearchBudget {
    pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

    pub fn nodes(node_cap: u64) -> Self {
        SearchBudget {
            node_cap: node_cap.max(1),
            time_cap_ms: None,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: Self::DEFAULT_NODE_CAP,
            time_cap_ms: None,
        }
    }
}

/// Ordered split of the coordinate set into nonempty `u` and `v`.
/// `(u, v)` and `(v, u)` are different splits: the chain condition treats
/// the two sides asymmetrically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateSplit {
    u: Vec<usize>,
    v: Vec<usize>,
}

impl CoordinateSplit {
    /// Builds the split with the given `u`; `v` is the complement.
    pub fn new(u: &[usize], arity: usize) -> Result<Self> {
        let mut in_u = vec![false; arity];
        for &i in u {
            if i >= arity {
                return Err(Error::input(format!(
                    "coordinate {i} out of range for arity {arity}"
                )));
            }
            if std::mem::replace(&mut in_u[i], true) {
                return Err(Error::input(format!("coordinate {i} listed twice in u")));
            }
        }
        let u: Vec<usize> = (0..arity).filter(|&i| in_u[i]).collect();
        let v: Vec<usize> = (0..arity).filter(|&i| !in_u[i]).collect();
        if u.is_empty() || v.is_empty() {
            return Err(Error::input("both sides of a split must be nonempty"));
        }
        Ok(CoordinateSplit { u, v })
    }

    /// Split from a bitmask over coordinates: bit `i` set puts `i` in `u`.
    pub fn from_mask(mask: u64, arity: usize) -> Result<Self> {
        if arity >= 64 {
            return Err(Error::input("mask splits support arity < 64"));
        }
        let u: Vec<usize> = (0..arity).filter(|&i| mask >> i & 1 == 1).collect();
        CoordinateSplit::new(&u, arity)
    }

    pub fn mask(&self) -> u64 {
        self.u.iter().fold(0, |m, &i| m | 1 << i)
    }

    /// All `2^d − 2` ordered splits, in ascending mask order.
    pub fn all(arity: usize) -> Vec<CoordinateSplit> {
        if !(2..64).contains(&arity) {
            return Vec::new();
        }
        (1..(1u64 << arity) - 1)
            .map(|mask| CoordinateSplit::from_mask(mask, arity).expect("mask in range"))
            .collect()
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    /// Interleaves a `u`-tuple and a `v`-tuple into a full point.
    pub fn interleave(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        let mut p = vec![0; self.u.len() + self.v.len()];
        for (a, &i) in self.u.iter().enumerate() {
            p[i] = x[a];
        }
        for (b, &i) in self.v.iter().enumerate() {
            p[i] = y[b];
        }
        p
    }
}

/// A candidate or verified chain, in the on-disk shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessChain {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub xs: Vec<Vec<usize>>,
    pub ys: Vec<Vec<usize>>,
}

impl WitnessChain {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The split this chain claims, validated against an arity.
    pub fn split_for(&self, arity: usize) -> Result<CoordinateSplit> {
        let split = CoordinateSplit::new(&self.u, arity)?;
        if split.v() != self.v.as_slice() {
            return Err(Error::input(format!(
                "v should be the complement of u: expected {:?}, got {:?}",
                split.v(),
                self.v
            )));
        }
        Ok(split)
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("chain serialization cannot fail")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(bytes)?)
    }
}

/// First index triple violating the chain condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainViolation {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    /// `f(x_l ⌢ y_l)` — equal to `cross`, which is the violation.
    pub diag: usize,
    /// `f(x_m ⌢ y_n)`.
    pub cross: usize,
}

/// Result of [`verify_chain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub ok: bool,
    pub violation: Option<ChainViolation>,
}

/// Checks the defining inequality for every `l` and `m < n`, reporting the
/// lexicographically first `(l, m, n)` violation.
#[allow(clippy::needless_range_loop)] // l, m, n mirror the definition
pub fn verify_chain(table: &FunctionTable, chain: &WitnessChain) -> Result<ChainCheck> {
    let split = chain.split_for(table.arity)?;
    if chain.xs.len() != chain.ys.len() {
        return Err(Error::input(format!(
            "xs has length {}, ys has length {}",
            chain.xs.len(),
            chain.ys.len()
        )));
    }
    if chain.xs.is_empty() {
        return Err(Error::input("a chain needs at least one index"));
    }
    let len = chain.xs.len();
    let mut diag = Vec::with_capacity(len);
    let mut cross = vec![vec![0usize; len]; len];
    for m in 0..len {
        check_tuple(table, split.u(), &chain.xs[m], "xs", m)?;
        check_tuple(table, split.v(), &chain.ys[m], "ys", m)?;
    }
    for m in 0..len {
        for n in 0..len {
            let p = split.interleave(&chain.xs[m], &chain.ys[n]);
            let val = table.value_at(&p);
            cross[m][n] = val;
            if m == n {
                diag.push(val);
            }
        }
    }
    for l in 0..len {
        for m in 0..len {
            for n in (m + 1)..len {
                if diag[l] == cross[m][n] {
                    return Ok(ChainCheck {
                        ok: false,
                        violation: Some(ChainViolation {
                            l,
                            m,
                            n,
                            diag: diag[l],
                            cross: cross[m][n],
                        }),
                    });
                }
            }
        }
    }
    Ok(ChainCheck {
        ok: true,
        violation: None,
    })
}

pub(crate) fn check_tuple(
    table: &FunctionTable,
    coords: &[usize],
    tuple: &[usize],
    side: &str,
    index: usize,
) -> Result<()> {
    if tuple.len() != coords.len() {
        return Err(Error::input(format!(
            "{side}[{index}] has {} coordinates, split side has {}",
            tuple.len(),
            coords.len()
        )));
    }
    for (&value, &coord) in tuple.iter().zip(coords) {
        if value >= table.domain_sizes[coord] {
            return Err(Error::input(format!(
                "{side}[{index}] is out of range at coordinate {coord}: {value}"
            )));
        }
    }
    Ok(())
}

/// Result of a fixed-split search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestChain {
    pub chain: WitnessChain,
    pub exact: bool,
    pub nodes: u64,
}

/// Longest valid chain for one split, by exact depth-first extension.
/// Candidate `(x, y)` pairs are tried in flat-index order, so the returned
/// chain is the first of its length in that order — deterministic. `exact`
/// is false only when the budget ran out before the search space did.
pub fn longest_chain_for_split(
    table: &FunctionTable,
    split: &CoordinateSplit,
    budget: SearchBudget,
) -> Result<LongestChain> {
    let total: usize = split.u().len() + split.v().len();
    if total != table.arity {
        return Err(Error::input(format!(
            "split covers {total} coordinates, table has arity {}",
            table.arity
        )));
    }
    let mut dfs = ChainDfs::new(table, split, budget);
    dfs.run();
    let chain = WitnessChain {
        u: split.u().to_vec(),
        v: split.v().to_vec(),
        xs: dfs.best_xs.iter().map(|&x| dfs.side_u.tuple(x)).collect(),
        ys: dfs.best_ys.iter().map(|&y| dfs.side_v.tuple(y)).collect(),
    };
    Ok(LongestChain {
        chain,
        exact: !dfs.out_of_budget,
        nodes: dfs.nodes,
    })
}

/// One side of a split, with tuple ranking helpers.
struct Side {
    coords: Vec<usize>,
    sizes: Vec<usize>,
    count: usize,
    /// Contribution of each ranked tuple to the full-table flat index.
    offsets: Vec<usize>,
}

impl Side {
    fn new(table: &FunctionTable, coords: &[usize]) -> Side {
        let sizes: Vec<usize> = coords.iter().map(|&i| table.domain_sizes[i]).collect();
        let count = sizes.iter().product();
        let strides = table.strides();
        let mut offsets = Vec::with_capacity(count);
        for r in 0..count {
            let mut rank = r;
            let mut off = 0;
            for a in (0..coords.len()).rev() {
                off += (rank % sizes[a]) * strides[coords[a]];
                rank /= sizes[a];
            }
            offsets.push(off);
        }
        Side {
            coords: coords.to_vec(),
            sizes,
            count,
            offsets,
        }
    }

    /// Tuple of ranked index `r`, row-major over this side's coordinates.
    fn tuple(&self, mut r: usize) -> Vec<usize> {
        let mut t = vec![0; self.coords.len()];
        for a in (0..self.coords.len()).rev() {
            t[a] = r % self.sizes[a];
            r /= self.sizes[a];
        }
        t
    }
}

struct ChainDfs<'a> {
    values: &'a [usize],
    side_u: Side,
    side_v: Side,
    budget: SearchBudget,
    upper_bound: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
    /// How many chain indices currently carry each diagonal value.
    diag_count: Vec<u32>,
    /// How many strictly-upper (m, n) pairs currently carry each value.
    cross_count: Vec<u32>,
    best_xs: Vec<usize>,
    best_ys: Vec<usize>,
    nodes: u64,
    out_of_budget: bool,
    started: std::time::Instant,
}

impl<'a> ChainDfs<'a> {
    fn new(table: &'a FunctionTable, split: &CoordinateSplit, budget: SearchBudget) -> Self {
        let side_u = Side::new(table, split.u());
        let side_v = Side::new(table, split.v());
        let upper_bound = side_u.count.min(side_v.count);
        ChainDfs {
            values: &table.values,
            side_u,
            side_v,
            budget,
            upper_bound,
            xs: Vec::new(),
            ys: Vec::new(),
            diag_count: vec![0; table.codomain_size],
            cross_count: vec![0; table.codomain_size],
            best_xs: Vec::new(),
            best_ys: Vec::new(),
            nodes: 0,
            out_of_budget: false,
            started: std::time::Instant::now(),
        }
    }

    fn value(&self, x: usize, y: usize) -> usize {
        self.values[self.side_u.offsets[x] + self.side_v.offsets[y]]
    }

    fn spent(&mut self) -> bool {
        if self.nodes >= self.budget.node_cap {
            self.out_of_budget = true;
            return true;
        }
        if let Some(ms) = self.budget.time_cap_ms {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed().as_millis() as u64 >= ms {
                self.out_of_budget = true;
                return true;
            }
        }
        false
    }

    fn run(&mut self) {
        self.extend();
    }

    fn extend(&mut self) {
        if self.xs.len() > self.best_xs.len() {
            self.best_xs = self.xs.clone();
            self.best_ys = self.ys.clone();
        }
        if self.best_xs.len() == self.upper_bound {
            return; // Nothing can be longer; forced injectivity caps us.
        }
        for x in 0..self.side_u.count {
            for y in 0..self.side_v.count {
                if self.spent() {
                    return;
                }
                self.nodes += 1;
                if let Some(new_crosses) = self.admissible(x, y) {
                    let new_diag = self.value(x, y);
                    self.diag_count[new_diag] += 1;
                    for &c in &new_crosses {
                        self.cross_count[c] += 1;
                    }
                    self.xs.push(x);
                    self.ys.push(y);

                    self.extend();

                    self.xs.pop();
                    self.ys.pop();
                    self.diag_count[new_diag] -= 1;
                    for &c in &new_crosses {
                        self.cross_count[c] -= 1;
                    }
                }
                if self.out_of_budget || self.best_xs.len() == self.upper_bound {
                    return;
                }
            }
        }
    }

    /// If appending `(x, y)` keeps the chain valid, returns the new cross
    /// values `f(x_m ⌢ y)` for existing `m`; otherwise `None`.
    ///
    /// The new constraints are exactly: the new diagonal value must avoid
    /// every existing cross value, and every new cross value must avoid all
    /// diagonal values including the new one. Repeated tuples reject
    /// themselves here — a repeated `x` makes one new cross equal the new
    /// diagonal, a repeated `y` makes one equal an old diagonal.
    fn admissible(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let new_diag = self.value(x, y);
        if self.cross_count[new_diag] > 0 {
            return None;
        }
        let mut new_crosses = Vec::with_capacity(self.xs.len());
        for &xm in &self.xs {
            let c = self.value(xm, y);
            if self.diag_count[c] > 0 || c == new_diag {
                return None;
            }
            new_crosses.push(c);
        }
        Some(new_crosses)
    }
}

/// Per-split entry in a full search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub split: CoordinateSplit,
    pub length: usize,
    pub chain: WitnessChain,
    pub exact: bool,
    pub nodes: u64,
}

/// Result of [`longest_chain`] over all splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSearch {
    /// Longest length over all splits; 1 when no split exists (arity 1).
    pub l_max: usize,
    /// Best chain (first split in mask order achieving `l_max`); none for
    /// arity-1 tables.
    pub best: Option<WitnessChain>,
    pub per_split: Vec<SplitResult>,
    pub exact: bool,
    pub nodes: u64,
    /// Arity was 1: no split exists and `l_max` is 1 by convention.
    pub no_split: bool,
}

/// Longest chain over all `2^d − 2` ordered splits. Each split's search
/// gets the full budget independently — this keeps results identical in
/// sequential and parallel mode. Splits are merged in mask order.
pub fn longest_chain(table: &FunctionTable, budget: SearchBudget) -> Result<ChainSearch> {
    longest_chain_with_mode(table, budget, crate::exec::ExecMode::default())
}

/// [`longest_chain`] with an explicit execution mode.
pub fn longest_chain_with_mode(
    table: &FunctionTable,
    budget: SearchBudget,
    mode: crate::exec::ExecMode,
) -> Result<ChainSearch> {
    let splits = CoordinateSplit::all(table.arity);
    if splits.is_empty() {
        return Ok(ChainSearch {
            l_max: 1,
            best: None,
            per_split: Vec::new(),
            exact: true,
            nodes: 0,
            no_split: true,
        });
    }
    let results = crate::exec::map_collect(mode, splits, |split| {
        let found = longest_chain_for_split(table, &split, budget).expect("split fits table");
        SplitResult {
            length: found.chain.len(),
            chain: found.chain,
            exact: found.exact,
            nodes: found.nodes,
            split,
        }
    });
    let exact = results.iter().all(|r| r.exact);
    let nodes = results.iter().map(|r| r.nodes).sum();
    let l_max = results
        .iter()
        .map(|r| r.length)
        .max()
        .expect("at least one split");
    // Ties go to the first split in mask order.
    let best = results
        .iter()
        .find(|r| r.length == l_max)
        .expect("nonempty")
        .chain
        .clone();
    Ok(ChainSearch {
        l_max,
        best: Some(best),
        per_split: results,
        exact,
        nodes,
        no_split: false,
    })
}

/// Seeded greedy chain for one split, after the candidate-set construction
/// in the ultrafilter proof of the dichotomy: keep shrinking pools `B` of
/// `u`-tuples and `C` of `v`-tuples so that future picks cannot collide with
/// the current diagonal value. The pools only protect against one class of
/// collision, so the result is verified and trimmed to its longest valid
/// prefix before being returned.
pub fn greedy_chain(
    table: &FunctionTable,
    split: &CoordinateSplit,
    seed: u64,
) -> Result<WitnessChain> {
    if split.u().len() + split.v().len() != table.arity {
        return Err(Error::input(format!(
            "split covers {} coordinates, table has arity {}",
            split.u().len() + split.v().len(),
            table.arity
        )));
    }
    let side_u = Side::new(table, split.u());
    let side_v = Side::new(table, split.v());
    let value = |x: usize, y: usize| table.values[side_u.offsets[x] + side_v.offsets[y]];

    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut pool_b: Vec<usize> = (0..side_u.count).collect();
    let mut pool_c: Vec<usize> = (0..side_v.count).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    const SAMPLES: usize = 16;

    while !pool_b.is_empty() && !pool_c.is_empty() {
        // Sample a few candidate pairs and keep the one leaving the largest
        // product of surviving pools; first sampled wins ties.
        let mut best: Option<(usize, usize, usize)> = None;
        for _ in 0..SAMPLES {
            let x = pool_b[rng.next_below(pool_b.len())];
            let y = pool_c[rng.next_below(pool_c.len())];
            let diag = value(x, y);
            let b_left = pool_b.iter().filter(|&&xb| value(xb, y) != diag).count();
            let c_left = pool_c.iter().filter(|&&yc| value(x, yc) != diag).count();
            let score = b_left * c_left;
            if best.is_none_or(|(s, _, _)| score > s) {
                best = Some((score, x, y));
            }
        }
        let (_, x, y) = best.expect("pools are nonempty");
        let diag = value(x, y);
        pool_b.retain(|&xb| value(xb, y) != diag);
        pool_c.retain(|&yc| value(x, yc) != diag);
        xs.push(x);
        ys.push(y);
    }

    // Trim to the longest valid prefix (validity is prefix-closed, so the
    // first inadmissible extension ends it).
    let mut diag_count = vec![0u32; table.codomain_size];
    let mut cross_count = vec![0u32; table.codomain_size];
    let mut keep = 0;
    'trim: for i in 0..xs.len() {
        let new_diag = value(xs[i], ys[i]);
        if cross_count[new_diag] > 0 {
            break;
        }
        let mut new_crosses = Vec::with_capacity(i);
        for &xm in &xs[..i] {
            let c = value(xm, ys[i]);
            if diag_count[c] > 0 || c == new_diag {
                break 'trim;
            }
            new_crosses.push(c);
        }
        diag_count[new_diag] += 1;
        for c in new_crosses {
            cross_count[c] += 1;
        }
        keep = i + 1;
    }
    debug_assert!(keep >= 1, "a single pair is always a valid chain");

    Ok(WitnessChain {
        u: split.u().to_vec(),
        v: split.v().to_vec(),
        xs: xs[..keep].iter().map(|&x| side_u.tuple(x)).collect(),
        ys: ys[..keep].iter().map(|&y| side_v.tuple(y)).collect(),
    })
}
