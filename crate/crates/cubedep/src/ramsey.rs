//! Triple colorings and chain extraction from weak patterns.
//!
//! Two patterns on sequences `(x_m, y_m)` are weaker than the chain
//! condition but still force long chains to exist inside them. Writing
//! `F(m, n) = f(x_m ⌢ y_n)`:
//!
//! * pattern (5): for all `l < m < n`, `F(l,l) ≠ F(l,m)` and `F(l,m) = F(l,n)`;
//! * pattern (4): for all `m < n`, `F(m,m) ≠ F(m,n)` and `F(m,m) ≠ F(n,m)`.
//!
//! The extraction argument colors index triples `{l,m,n}_<` with
//! `h = 0` iff `F(l,l) = F(m,n)`; under either pattern no 4-element subset
//! can be 0-homogeneous, so a large homogeneous subset `H` is 1-homogeneous.
//! Refining `H` by equality of the diagonal values `F(i,i)` leaves either a
//! subset with all diagonals equal — whose elements above the minimum
//! already form a chain — or one with all diagonals distinct, where a
//! second 6-coloring `h'` takes over: a 0-homogeneous subset of it, minus
//! its maximum, is a chain. The five positive `h'` colors each name one
//! equality that would break the chain condition for one relative position
//! of `l` against `(m, n)`; color 0 means none holds.
//!
//! Everything here is finite and exact: homogeneous subsets come from a
//! depth-first search over index subsets, not from Ramsey-number bounds.

use crate::table::FunctionTable;
use crate::witness::{check_tuple, verify_chain, CoordinateSplit, SearchBudget, WitnessChain};
use crate::{Error, Result};

/// Which pattern a [`PatternInput`] claims to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    P5,
    P4,
}

/// A sequence pair satisfying its declared pattern (checked on
/// construction, so a value of this type is always valid).
#[derive(Debug, Clone)]
pub struct PatternInput {
    table: FunctionTable,
    split: CoordinateSplit,
    xs: Vec<Vec<usize>>,
    ys: Vec<Vec<usize>>,
    kind: PatternKind,
    /// cross[m][n] = f(x_m ⌢ y_n).
    cross: Vec<Vec<usize>>,
}

impl PatternInput {
    pub fn new(
        table: FunctionTable,
        split: CoordinateSplit,
        xs: Vec<Vec<usize>>,
        ys: Vec<Vec<usize>>,
        kind: PatternKind,
    ) -> Result<Self> {
        // Pattern (4) is checkable from length 2, but the extraction
        // machinery colors triples; gate the type at 3 so every value of it
        // can be fed to `color_h`.
        if xs.len() < 3 {
            return Err(Error::input("pattern inputs need at least 3 indices"));
        }
        let check = match kind {
            PatternKind::P5 => check_pattern5(&table, &split, &xs, &ys)?,
            PatternKind::P4 => check_pattern4(&table, &split, &xs, &ys)?,
        };
        if let Some(v) = check.violation {
            return Err(Error::input(format!(
                "sequences do not satisfy pattern ({}): {v}",
                match kind {
                    PatternKind::P5 => '5',
                    PatternKind::P4 => '4',
                },
            )));
        }
        let cross = cross_matrix(&table, &split, &xs, &ys);
        Ok(PatternInput {
            table,
            split,
            xs,
            ys,
            kind,
            cross,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn table(&self) -> &FunctionTable {
        &self.table
    }

    pub fn split(&self) -> &CoordinateSplit {
        &self.split
    }

    pub fn xs(&self) -> &[Vec<usize>] {
        &self.xs
    }

    pub fn ys(&self) -> &[Vec<usize>] {
        &self.ys
    }

    /// `f(x_m ⌢ y_n)`.
    pub fn value(&self, m: usize, n: usize) -> usize {
        self.cross[m][n]
    }
}

/// One failed pattern constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternViolation {
    /// The indices whose constraint failed: `(l, m, n)` for pattern (5),
    /// `(m, n)` for pattern (4).
    pub indices: Vec<usize>,
    pub detail: String,
}

impl std::fmt::Display for PatternViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at {:?}: {}", self.indices, self.detail)
    }
}

/// Result of a pattern check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCheck {
    pub holds: bool,
    pub violation: Option<PatternViolation>,
}

fn validated_cross(
    table: &FunctionTable,
    split: &CoordinateSplit,
    xs: &[Vec<usize>],
    ys: &[Vec<usize>],
    min_len: usize,
) -> Result<Vec<Vec<usize>>> {
    if split.u().len() + split.v().len() != table.arity {
        return Err(Error::input(format!(
            "split covers {} coordinates, table has arity {}",
            split.u().len() + split.v().len(),
            table.arity
        )));
    }
    if xs.len() != ys.len() {
        return Err(Error::input(format!(
            "xs has length {}, ys has length {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < min_len {
        return Err(Error::input(format!(
            "pattern needs at least {min_len} indices, got {}",
            xs.len()
        )));
    }
    for m in 0..xs.len() {
        check_tuple(table, split.u(), &xs[m], "xs", m)?;
        check_tuple(table, split.v(), &ys[m], "ys", m)?;
    }
    Ok(cross_matrix(table, split, xs, ys))
}

fn cross_matrix(
    table: &FunctionTable,
    split: &CoordinateSplit,
    xs: &[Vec<usize>],
    ys: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    xs.iter()
        .map(|x| {
            ys.iter()
                .map(|y| table.value_at(&split.interleave(x, y)))
                .collect()
        })
        .collect()
}

/// Does pattern (5) hold? `F(l,l) ≠ F(l,m)` and `F(l,m) = F(l,n)` for all
/// `l < m < n`. Reports the first violating triple.
#[allow(clippy::needless_range_loop)] // l, m, n mirror the pattern
pub fn check_pattern5(
    table: &FunctionTable,
    split: &CoordinateSplit,
    xs: &[Vec<usize>],
    ys: &[Vec<usize>],
) -> Result<PatternCheck> {
    let cross = validated_cross(table, split, xs, ys, 3)?;
    let len = xs.len();
    for l in 0..len {
        for m in (l + 1)..len {
            for n in (m + 1)..len {
                if cross[l][l] == cross[l][m] {
                    return Ok(violation(
                        vec![l, m, n],
                        format!("F({l},{l}) = F({l},{m}) = {}", cross[l][l]),
                    ));
                }
                if cross[l][m] != cross[l][n] {
                    return Ok(violation(
                        vec![l, m, n],
                        format!(
                            "F({l},{m}) = {} but F({l},{n}) = {}",
                            cross[l][m], cross[l][n]
                        ),
                    ));
                }
            }
        }
    }
    Ok(PatternCheck {
        holds: true,
        violation: None,
    })
}

/// Does pattern (4) hold? `F(m,m) ≠ F(m,n)` and `F(m,m) ≠ F(n,m)` for all
/// `m < n`. Reports the first violating pair.
#[allow(clippy::needless_range_loop)] // m, n mirror the pattern
pub fn check_pattern4(
    table: &FunctionTable,
    split: &CoordinateSplit,
    xs: &[Vec<usize>],
    ys: &[Vec<usize>],
) -> Result<PatternCheck> {
    let cross = validated_cross(table, split, xs, ys, 2)?;
    let len = xs.len();
    for m in 0..len {
        for n in (m + 1)..len {
            if cross[m][m] == cross[m][n] {
                return Ok(violation(
                    vec![m, n],
                    format!("F({m},{m}) = F({m},{n}) = {}", cross[m][m]),
                ));
            }
            if cross[m][m] == cross[n][m] {
                return Ok(violation(
                    vec![m, n],
                    format!("F({m},{m}) = F({n},{m}) = {}", cross[m][m]),
                ));
            }
        }
    }
    Ok(PatternCheck {
        holds: true,
        violation: None,
    })
}

fn violation(indices: Vec<usize>, detail: String) -> PatternCheck {
    PatternCheck {
        holds: false,
        violation: Some(PatternViolation { indices, detail }),
    }
}

/// Total coloring of the 3-element subsets of `{0, …, n−1}`.
#[derive(Debug, Clone)]
pub struct TripleColoring {
    n: usize,
    color_count: usize,
    /// Dense by (l, m, n); only slots with l < m < n are meaningful. The
    /// index sets here are tiny (n ≤ ~25), so O(n³) storage is fine.
    colors: Vec<u8>,
}

impl TripleColoring {
    /// Builds the coloring by evaluating `f` on every `l < m < n`.
    pub fn from_fn(
        n: usize,
        color_count: usize,
        mut f: impl FnMut(usize, usize, usize) -> u8,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::input("a triple coloring needs at least 3 indices"));
        }
        if color_count == 0 || color_count > u8::MAX as usize {
            return Err(Error::input("color_count must be in 1..=255"));
        }
        let mut colors = vec![0u8; n * n * n];
        for l in 0..n {
            for m in (l + 1)..n {
                for k in (m + 1)..n {
                    let c = f(l, m, k);
                    if usize::from(c) >= color_count {
                        return Err(Error::input(format!(
                            "color {c} at ({l},{m},{k}) outside 0..{color_count}"
                        )));
                    }
                    colors[(l * n + m) * n + k] = c;
                }
            }
        }
        Ok(TripleColoring {
            n,
            color_count,
            colors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    /// Color of `{l, m, k}` with `l < m < k`.
    pub fn color(&self, l: usize, m: usize, k: usize) -> u8 {
        assert!(
            l < m && m < k && k < self.n,
            "({l},{m},{k}) is not an ordered triple"
        );
        self.colors[(l * self.n + m) * self.n + k]
    }
}

/// The 2-coloring `h`: color 0 iff `F(l,l) = F(m,n)`.
pub fn color_h(input: &PatternInput) -> TripleColoring {
    TripleColoring::from_fn(input.len(), 2, |l, m, n| {
        u8::from(input.value(l, l) != input.value(m, n))
    })
    .expect("PatternInput guarantees at least 3 indices")
}

/// The 6-coloring `h'` on triples of `subset` (given by positions into the
/// subset). The five equality cases are tested in order, first match wins;
/// 0 means none holds. Meaningful on index sets with pairwise-distinct
/// diagonal values, where each positive color is mutually exclusive anyway.
pub fn color_hprime(input: &PatternInput, subset: &[usize]) -> Result<TripleColoring> {
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("subset must be strictly increasing"));
    }
    if let Some(&max) = subset.last() {
        if max >= input.len() {
            return Err(Error::input(format!("subset index {max} out of range")));
        }
    }
    TripleColoring::from_fn(subset.len(), 6, |i, j, k| {
        let (l, m, n) = (subset[i], subset[j], subset[k]);
        let f = |a: usize, b: usize| input.value(a, b);
        if f(l, l) == f(m, n) {
            1
        } else if f(l, l) == f(l, m) {
            2
        } else if f(m, m) == f(l, m) {
            3
        } else if f(m, m) == f(l, n) {
            4
        } else if f(n, n) == f(l, m) {
            5
        } else {
            0
        }
    })
}

/// A subset all of whose triples share one color. Subsets of size ≤ 2 are
/// vacuously homogeneous in every color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSet {
    pub indices: Vec<usize>,
    pub color: u8,
    /// False when the node budget cut the search short of a proof of
    /// maximality.
    pub exact: bool,
}

/// Largest subset homogeneous in `want_color` (or in any one color when
/// `None`; ties prefer the smaller color). Exact depth-first search over
/// index subsets in lexicographic order with a tail-size bound, so the
/// returned set is the lexicographically least among maximum ones.
pub fn largest_homogeneous(
    coloring: &TripleColoring,
    want_color: Option<u8>,
    budget: SearchBudget,
) -> Result<HomogeneousSet> {
    let n = coloring.n();
    if n < 3 {
        return Err(Error::input("homogeneous search needs at least 3 indices"));
    }
    if let Some(c) = want_color {
        if usize::from(c) >= coloring.color_count() {
            return Err(Error::input(format!(
                "color {c} outside 0..{}",
                coloring.color_count()
            )));
        }
    }
    let targets: Vec<u8> = match want_color {
        Some(c) => vec![c],
        None => (0..coloring.color_count() as u8).collect(),
    };
    let mut best: Option<HomogeneousSet> = None;
    for color in targets {
        let mut search = HomogeneousDfs {
            coloring,
            color,
            budget,
            current: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            out_of_budget: false,
        };
        search.dfs(0);
        let found = HomogeneousSet {
            indices: search.best,
            color,
            exact: !search.out_of_budget,
        };
        if best
            .as_ref()
            .is_none_or(|b| found.indices.len() > b.indices.len())
        {
            best = Some(found);
        }
    }
    Ok(best.expect("at least one target color"))
}

struct HomogeneousDfs<'a> {
    coloring: &'a TripleColoring,
    color: u8,
    budget: SearchBudget,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    out_of_budget: bool,
}

impl<'a> HomogeneousDfs<'a> {
    fn dfs(&mut self, from: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let n = self.coloring.n();
        for v in from..n {
            // Even taking every remaining index cannot beat the best.
            if self.current.len() + (n - v) <= self.best.len() {
                break;
            }
            if self.nodes >= self.budget.node_cap {
                self.out_of_budget = true;
                return;
            }
            self.nodes += 1;
            if self.compatible(v) {
                self.current.push(v);
                self.dfs(v + 1);
                self.current.pop();
                if self.out_of_budget {
                    return;
                }
            }
        }
    }

    /// Every triple formed by two current members and `v` must have the
    /// target color. `current` is ascending and `v` exceeds all of it.
    fn compatible(&self, v: usize) -> bool {
        for (i, &a) in self.current.iter().enumerate() {
            for &b in &self.current[i + 1..] {
                if self.coloring.color(a, b, v) != self.color {
                    return false;
                }
            }
        }
        true
    }
}

/// Which refinement case the extraction took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionCase {
    /// All diagonal values on the refined set are equal; the minimum index
    /// is dropped.
    AllEqual,
    /// All diagonal values are distinct; `h'` takes over and the maximum
    /// index of its 0-homogeneous set is dropped.
    AllDistinct,
}

/// Extraction pipeline output. `h_homogeneous` is the 1-homogeneous set
/// `H`, `refined` the diagonal-refined `H' ⊆ H`, and for the distinct case
/// `zero_homogeneous` the `h'`-0-homogeneous subset the chain came from.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub chain: WitnessChain,
    pub h_homogeneous: Vec<usize>,
    pub refined: Vec<usize>,
    pub case: ExtractionCase,
    pub zero_homogeneous: Option<Vec<usize>>,
    pub exact: bool,
}

/// Runs the full extraction: largest `h`-1-homogeneous subset, diagonal
/// refinement, case split, endpoint drop, and a mandatory re-verification
/// of the produced chain. The endpoint drops are what make the finite
/// argument close: the extreme index of the set lacks a third triple
/// witness, so it cannot be certified and is removed instead.
///
/// A verification failure here is an internal error by the correctness
/// argument in the case analyses — it is reported, never swallowed.
pub fn extract_chain(input: &PatternInput, budget: SearchBudget) -> Result<Extraction> {
    // Inputs are checked on construction; re-check anyway so the pipeline's
    // own precondition does not depend on where the value came from.
    let recheck = match input.kind() {
        PatternKind::P5 => check_pattern5(&input.table, &input.split, &input.xs, &input.ys)?,
        PatternKind::P4 => check_pattern4(&input.table, &input.split, &input.xs, &input.ys)?,
    };
    if !recheck.holds {
        return Err(Error::input(
            "pattern input no longer satisfies its pattern",
        ));
    }

    let h = color_h(input);
    let h_set = largest_homogeneous(&h, Some(1), budget)?;
    let mut exact = h_set.exact;
    let h_indices = h_set.indices;

    // Refine by diagonal equality. Equality is an equivalence, so the
    // largest all-equal subset is the largest class and the largest
    // all-distinct subset is one representative per class — no search.
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new(); // (diag value, members)
    for &i in &h_indices {
        let d = input.value(i, i);
        match classes.iter_mut().find(|(v, _)| *v == d) {
            Some((_, members)) => members.push(i),
            None => classes.push((d, vec![i])),
        }
    }
    // First class of maximal size wins ties; classes appear in order of
    // first occurrence, so this is deterministic.
    let mut largest_class = &classes[0].1;
    for (_, members) in &classes[1..] {
        if members.len() > largest_class.len() {
            largest_class = members;
        }
    }
    let largest_class = largest_class.clone();
    let mut representatives: Vec<usize> = classes.iter().map(|(_, ms)| ms[0]).collect();
    representatives.sort_unstable();

    // Tie toward the all-equal case: its argument needs no second coloring.
    let (case, refined) = if largest_class.len() >= representatives.len() {
        (ExtractionCase::AllEqual, largest_class)
    } else {
        (ExtractionCase::AllDistinct, representatives)
    };

    let (indices, zero_homogeneous) = match case {
        ExtractionCase::AllEqual => (refined[1..].to_vec(), None),
        ExtractionCase::AllDistinct => {
            let zero_set = if refined.len() >= 3 {
                let hp = color_hprime(input, &refined)?;
                let found = largest_homogeneous(&hp, Some(0), budget)?;
                exact &= found.exact;
                found.indices.iter().map(|&pos| refined[pos]).collect()
            } else {
                refined.clone()
            };
            let kept = zero_set[..zero_set.len() - 1].to_vec();
            (kept, Some(zero_set))
        }
    };
    debug_assert!(!indices.is_empty(), "both cases keep at least one index");

    let chain = WitnessChain {
        u: input.split.u().to_vec(),
        v: input.split.v().to_vec(),
        xs: indices.iter().map(|&i| input.xs[i].clone()).collect(),
        ys: indices.iter().map(|&i| input.ys[i].clone()).collect(),
    };
    let check = verify_chain(&input.table, &chain)?;
    if !check.ok {
        return Err(Error::Internal(format!(
            "extracted chain failed verification at {:?}",
            check.violation
        )));
    }
    Ok(Extraction {
        chain,
        h_homogeneous: h_indices,
        refined,
        case,
        zero_homogeneous,
        exact,
    })
}

/// Seeded valid pattern-(5) instance: an `len × len` table with identity
/// sequences and split `({0}, {1})`. Every row with two or more
/// strictly-upper entries gets a constant upper value differing from its
/// diagonal; all other entries are free and drawn uniformly.
pub fn random_p5_instance(len: usize, codomain: usize, seed: u64) -> Result<PatternInput> {
    if len < 3 || codomain < 2 {
        return Err(Error::input(
            "pattern (5) instances need len >= 3 and codomain >= 2",
        ));
    }
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut values: Vec<usize> = (0..len * len).map(|_| rng.next_below(codomain)).collect();
    for l in 0..len.saturating_sub(2) {
        let diag = rng.next_below(codomain);
        let upper = draw_other(&mut rng, codomain, diag);
        values[l * len + l] = diag;
        for m in (l + 1)..len {
            values[l * len + m] = upper;
        }
    }
    let table = FunctionTable::new(vec![len, len], codomain, values)?;
    identity_input(table, PatternKind::P5)
}

/// Seeded valid pattern-(4) instance: strictly-upper entries avoid their
/// row's diagonal value, strictly-lower entries avoid their column's.
pub fn random_p4_instance(len: usize, codomain: usize, seed: u64) -> Result<PatternInput> {
    if len < 3 || codomain < 2 {
        return Err(Error::input(
            "pattern (4) instances need len >= 3 and codomain >= 2",
        ));
    }
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut values = vec![0usize; len * len];
    for m in 0..len {
        values[m * len + m] = rng.next_below(codomain);
    }
    for m in 0..len {
        for n in 0..len {
            if m < n {
                values[m * len + n] = draw_other(&mut rng, codomain, values[m * len + m]);
            } else if m > n {
                values[m * len + n] = draw_other(&mut rng, codomain, values[n * len + n]);
            }
        }
    }
    let table = FunctionTable::new(vec![len, len], codomain, values)?;
    identity_input(table, PatternKind::P4)
}

/// Uniform draw from `0..m` excluding `avoid`.
fn draw_other(rng: &mut crate::rng::SplitMix64, m: usize, avoid: usize) -> usize {
    let r = rng.next_below(m - 1);
    if r >= avoid {
        r + 1
    } else {
        r
    }
}

/// Wraps a square arity-2 table as a pattern input with identity sequences
/// on the split `({0}, {1})` — the shape every generated instance uses.
/// Fails if the table does not satisfy `kind`.
pub fn identity_input(table: FunctionTable, kind: PatternKind) -> Result<PatternInput> {
    let len = table.domain_sizes[0];
    let split = CoordinateSplit::new(&[0], 2)?;
    let seq: Vec<Vec<usize>> = (0..len).map(|i| vec![i]).collect();
    PatternInput::new(table, split, seq.clone(), seq, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{diagonal_table, triangular_table};

    fn identity_p5(table: FunctionTable) -> PatternInput {
        identity_input(table, PatternKind::P5).unwrap()
    }

    fn split2() -> CoordinateSplit {
        CoordinateSplit::new(&[0], 2).unwrap()
    }

    fn id_seq(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![i]).collect()
    }

    #[test]
    fn pattern5_examples() {
        let tri = triangular_table(5).unwrap();
        assert!(
            check_pattern5(&tri, &split2(), &id_seq(5), &id_seq(5))
                .unwrap()
                .holds
        );

        // Diagonal tables satisfy (5) too: diagonal 0, everything above 1.
        let diag = diagonal_table(5).unwrap();
        assert!(
            check_pattern5(&diag, &split2(), &id_seq(5), &id_seq(5))
                .unwrap()
                .holds
        );

        let constant = FunctionTable::new(vec![3, 3], 2, vec![0; 9]).unwrap();
        let check = check_pattern5(&constant, &split2(), &id_seq(3), &id_seq(3)).unwrap();
        assert!(!check.holds);
        assert_eq!(check.violation.unwrap().indices, vec![0, 1, 2]);

        // Too short to contain a triple.
        assert!(check_pattern5(&tri, &split2(), &id_seq(2), &id_seq(2)).is_err());
    }

    #[test]
    fn pattern4_examples() {
        let diag = diagonal_table(4).unwrap();
        assert!(
            check_pattern4(&diag, &split2(), &id_seq(4), &id_seq(4))
                .unwrap()
                .holds
        );

        // Lower triangle of the triangular table equals its diagonal.
        let tri = triangular_table(4).unwrap();
        let check = check_pattern4(&tri, &split2(), &id_seq(4), &id_seq(4)).unwrap();
        assert!(!check.holds);

        let constant = FunctionTable::new(vec![2, 2], 2, vec![1; 4]).unwrap();
        assert!(
            !check_pattern4(&constant, &split2(), &id_seq(2), &id_seq(2))
                .unwrap()
                .holds
        );

        assert!(check_pattern4(&diag, &split2(), &id_seq(1), &id_seq(1)).is_err());
    }

    #[test]
    fn pattern_input_rejects_violations() {
        let constant = FunctionTable::new(vec![3, 3], 2, vec![0; 9]).unwrap();
        assert!(
            PatternInput::new(constant, split2(), id_seq(3), id_seq(3), PatternKind::P5).is_err()
        );
    }

    #[test]
    fn h_colors_match_definitions() {
        let tri = identity_p5(triangular_table(5).unwrap());
        let h = color_h(&tri);
        for l in 0..5 {
            for m in (l + 1)..5 {
                for n in (m + 1)..5 {
                    assert_eq!(h.color(l, m, n), 1);
                }
            }
        }

        let diag = identity_p5(diagonal_table(5).unwrap());
        let h = color_h(&diag);
        assert_eq!(h.color(0, 1, 2), 1);
        assert_eq!(h.color(2, 3, 4), 1);

        // F(0,0) = F(1,2) = 0 makes {0,1,2} color 0; the rest of the table
        // still satisfies pattern (5) (only row 0 is constrained at len 3).
        let crafted = FunctionTable::new(vec![3, 3], 2, vec![0, 1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        let input = identity_p5(crafted);
        assert_eq!(color_h(&input).color(0, 1, 2), 0);
    }

    #[test]
    fn hprime_case_selection() {
        // All six checked values pairwise distinct where it matters → 0.
        let t = FunctionTable::new(vec![3, 3], 5, vec![0, 1, 1, 0, 2, 4, 0, 0, 3]).unwrap();
        let input = identity_p5(t);
        assert_eq!(color_hprime(&input, &[0, 1, 2]).unwrap().color(0, 1, 2), 0);

        // F(0,0) = F(1,2) → case 1.
        let t = FunctionTable::new(vec![3, 3], 3, vec![0, 1, 1, 0, 2, 0, 0, 0, 1]).unwrap();
        let input = identity_p5(t);
        assert_eq!(color_hprime(&input, &[0, 1, 2]).unwrap().color(0, 1, 2), 1);

        // Only F(2,2) = F(0,1) matches → case 5.
        let t = FunctionTable::new(vec![3, 3], 3, vec![0, 1, 1, 0, 2, 2, 0, 0, 1]).unwrap();
        let input = identity_p5(t);
        assert_eq!(color_hprime(&input, &[0, 1, 2]).unwrap().color(0, 1, 2), 5);

        assert!(color_hprime(&input, &[0, 2, 1]).is_err());
        assert!(color_hprime(&input, &[0, 1, 9]).is_err());
    }

    #[test]
    fn largest_homogeneous_examples() {
        let all_zero = TripleColoring::from_fn(7, 2, |_, _, _| 0).unwrap();
        let best = largest_homogeneous(&all_zero, Some(0), SearchBudget::default()).unwrap();
        assert_eq!(best.indices, (0..7).collect::<Vec<_>>());
        assert!(best.exact);

        // Triples containing index 0 are color 1, the rest color 0.
        let mixed = TripleColoring::from_fn(5, 2, |l, _, _| u8::from(l == 0)).unwrap();
        let best = largest_homogeneous(&mixed, Some(0), SearchBudget::default()).unwrap();
        assert_eq!(best.indices, vec![1, 2, 3, 4]);
        // Free color choice picks the bigger side.
        let any = largest_homogeneous(&mixed, None, SearchBudget::default()).unwrap();
        assert_eq!(any.color, 0);
        assert_eq!(any.indices.len(), 4);

        let tri = identity_p5(triangular_table(10).unwrap());
        let best = largest_homogeneous(&color_h(&tri), Some(1), SearchBudget::default()).unwrap();
        assert_eq!(best.indices.len(), 10);

        let tiny = TripleColoring::from_fn(3, 2, |_, _, _| 1).unwrap();
        assert!(largest_homogeneous(&tiny, Some(7), SearchBudget::default()).is_err());
    }

    #[test]
    fn homogeneous_budget_is_flagged() {
        let all_zero = TripleColoring::from_fn(9, 2, |_, _, _| 0).unwrap();
        let best = largest_homogeneous(&all_zero, Some(0), SearchBudget::nodes(2)).unwrap();
        assert!(!best.exact);
    }

    #[test]
    fn extract_from_triangular() {
        let input = identity_p5(triangular_table(10).unwrap());
        let out = extract_chain(&input, SearchBudget::default()).unwrap();
        assert_eq!(out.case, ExtractionCase::AllEqual);
        assert_eq!(out.h_homogeneous.len(), 10);
        assert_eq!(out.refined.len(), 10);
        assert_eq!(out.chain.len(), 9);
        assert!(verify_chain(input.table(), &out.chain).unwrap().ok);
        assert!(out.exact);
    }

    #[test]
    fn extract_from_diagonal_p4() {
        let input = identity_input(diagonal_table(6).unwrap(), PatternKind::P4).unwrap();
        let out = extract_chain(&input, SearchBudget::default()).unwrap();
        assert_eq!(out.case, ExtractionCase::AllEqual);
        assert_eq!(out.chain.len(), 5);
        assert!(verify_chain(input.table(), &out.chain).unwrap().ok);
    }

    #[test]
    fn extract_from_minimal_input() {
        let input = identity_p5(triangular_table(3).unwrap());
        let out = extract_chain(&input, SearchBudget::default()).unwrap();
        assert!(!out.chain.is_empty());
        assert!(verify_chain(input.table(), &out.chain).unwrap().ok);
    }

    #[test]
    fn random_instances_satisfy_their_patterns() {
        for seed in 0..25 {
            let p5 = random_p5_instance(8, 3, seed).unwrap();
            assert!(
                check_pattern5(p5.table(), p5.split(), p5.xs(), p5.ys())
                    .unwrap()
                    .holds
            );
            let p4 = random_p4_instance(8, 3, seed).unwrap();
            assert!(
                check_pattern4(p4.table(), p4.split(), p4.xs(), p4.ys())
                    .unwrap()
                    .holds
            );
        }
        assert!(random_p5_instance(2, 2, 0).is_err());
        assert!(random_p4_instance(8, 1, 0).is_err());
    }

    #[test]
    fn no_4_subset_is_h_zero_homogeneous() {
        // The displayed-chain argument: a 0-homogeneous quadruple would
        // equate a diagonal with a same-row cross, breaking either pattern.
        for seed in 0..10 {
            for input in [
                random_p5_instance(8, 2, seed).unwrap(),
                random_p5_instance(8, 4, seed).unwrap(),
                random_p4_instance(8, 3, seed).unwrap(),
            ] {
                let h = color_h(&input);
                let n = input.len();
                for a in 0..n {
                    for b in (a + 1)..n {
                        for c in (b + 1)..n {
                            for d in (c + 1)..n {
                                let zero = h.color(a, b, c) == 0
                                    && h.color(a, b, d) == 0
                                    && h.color(a, c, d) == 0
                                    && h.color(b, c, d) == 0;
                                assert!(!zero, "seed {seed}: {{{a},{b},{c},{d}}} 0-homogeneous");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extracted_chains_verify_on_random_inputs() {
        for seed in 0..30 {
            let input = random_p5_instance(8, 3, seed).unwrap();
            let out = extract_chain(&input, SearchBudget::default()).unwrap();
            assert!(
                verify_chain(input.table(), &out.chain).unwrap().ok,
                "seed {seed}"
            );
            let input = random_p4_instance(8, 3, seed + 1000).unwrap();
            let out = extract_chain(&input, SearchBudget::default()).unwrap();
            assert!(
                verify_chain(input.table(), &out.chain).unwrap().ok,
                "p4 seed {seed}"
            );
        }
    }
}
