//! Single-coordinate dependence on boxes and grid-partition search.
//!
//! A *box* is a product of nonempty subsets of the coordinate domains. A
//! function is single-coordinate-dependent on a box if it factors through
//! one coordinate projection there; [`box_dependence`] decides this per
//! coordinate and classifies the box as `Constant`, `Single(j)`, or
//! `Essential` (no coordinate works).
//!
//! A *grid partition* cuts every coordinate domain into at most `k` blocks;
//! the products of one block per coordinate tile the cube into cells.
//! [`verify_grid_partition`] checks that every cell is constant or
//! single-coordinate-dependent, [`find_grid_partition`] searches for a
//! verifying partition with a given block count, and [`min_partition_size`]
//! computes the least such count `k_min`.
//!
//! The exact search walks per-coordinate block assignments in restricted
//! growth form (element 0 of a coordinate is always in block 0; a new label
//! may only follow all smaller labels), which quotients out block
//! relabelling. Pruning rests on a monotonicity fact: a cell that is
//! essential on some subset of its final points stays essential however the
//! remaining elements are assigned, because the violating point pairs
//! survive. Partial assignments are therefore checked as they grow and dead
//! branches cut early.

use serde::{Deserialize, Serialize};

use crate::table::{points, FunctionTable, Point};
use crate::witness::SearchBudget;
use crate::{Error, Result};

/// Product of nonempty element subsets, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCube {
    /// `factors[i]` is the sorted set of coordinate-`i` elements in the box.
    pub factors: Vec<Vec<usize>>,
}

impl SubCube {
    /// Builds a box after sorting/deduplicating, validating against `table`.
    pub fn new(table: &FunctionTable, mut factors: Vec<Vec<usize>>) -> Result<Self> {
        if factors.len() != table.arity {
            return Err(Error::input(format!(
                "box has {} factors, table has arity {}",
                factors.len(),
                table.arity
            )));
        }
        for (i, factor) in factors.iter_mut().enumerate() {
            factor.sort_unstable();
            factor.dedup();
            if factor.is_empty() {
                return Err(Error::input(format!("box factor {i} is empty")));
            }
            if *factor.last().unwrap() >= table.domain_sizes[i] {
                return Err(Error::input(format!(
                    "box factor {i} contains element {} outside 0..{}",
                    factor.last().unwrap(),
                    table.domain_sizes[i]
                )));
            }
        }
        Ok(SubCube { factors })
    }

    /// The full cube of the table.
    pub fn full(table: &FunctionTable) -> Self {
        SubCube {
            factors: table
                .domain_sizes
                .iter()
                .map(|&n| (0..n).collect())
                .collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }

    /// Iterates the box's points in lexicographic factor-position order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let sizes: Vec<usize> = self.factors.iter().map(Vec::len).collect();
        points(&sizes).map(move |pos| {
            pos.iter()
                .enumerate()
                .map(|(i, &p)| self.factors[i][p])
                .collect()
        })
    }
}

/// Outcome of the per-box dependence decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DependenceStatus {
    /// One value on the whole box.
    Constant,
    /// Factors through the projection onto this coordinate (least such).
    Single(usize),
    /// No single coordinate determines the value.
    Essential,
}

/// The factor map `g` certifying a `Constant` or `Single(j)` status:
/// composing it with the coordinate-`j` projection reproduces `f` on the box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorMap {
    pub coord: usize,
    /// `(element, value)` pairs for the coordinate-`coord` elements of the box.
    pub map: Vec<(usize, usize)>,
}

/// Full dependence report for one box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDependence {
    pub status: DependenceStatus,
    /// All coordinates `j` such that `p[j] = q[j]` forces `f(p) = f(q)` on
    /// the box. Empty exactly when the status is `Essential`.
    pub factoring_coords: Vec<usize>,
    /// Present unless the box is essential.
    pub certificate: Option<FactorMap>,
}

/// Decides single-coordinate dependence of `table` restricted to `cube`.
pub fn box_dependence(table: &FunctionTable, cube: &SubCube) -> Result<CellDependence> {
    // Re-validate: SubCube values are public and may have been constructed
    // for a different table.
    let cube = SubCube::new(table, cube.factors.clone())?;
    let d = table.arity;

    // One pass over the box: track constancy and, per coordinate, the first
    // value seen for each element; a second different value kills the coord.
    let mut constant_value: Option<usize> = None;
    let mut is_constant = true;
    let mut violated = vec![false; d];
    let mut first_seen: Vec<Vec<Option<usize>>> =
        table.domain_sizes.iter().map(|&n| vec![None; n]).collect();
    for p in cube.points() {
        let v = table.value_at(&p);
        match constant_value {
            None => constant_value = Some(v),
            Some(c) => is_constant &= c == v,
        }
        for j in 0..d {
            match first_seen[j][p[j]] {
                None => first_seen[j][p[j]] = Some(v),
                Some(w) => violated[j] |= w != v,
            }
        }
    }

    let factoring_coords: Vec<usize> = (0..d).filter(|&j| !violated[j]).collect();
    let certificate_for = |j: usize| FactorMap {
        coord: j,
        map: cube.factors[j]
            .iter()
            .map(|&e| (e, first_seen[j][e].expect("element seen")))
            .collect(),
    };
    let dep = if is_constant {
        debug_assert_eq!(factoring_coords.len(), d);
        CellDependence {
            status: DependenceStatus::Constant,
            factoring_coords,
            certificate: Some(certificate_for(0)),
        }
    } else if let Some(&j) = factoring_coords.first() {
        CellDependence {
            status: DependenceStatus::Single(j),
            certificate: Some(certificate_for(j)),
            factoring_coords,
        }
    } else {
        CellDependence {
            status: DependenceStatus::Essential,
            factoring_coords,
            certificate: None,
        }
    };
    Ok(dep)
}

/// Per-coordinate partition of the domains into `block_count` labelled
/// blocks. Blocks may be empty: the label space is shared across
/// coordinates, and a coordinate needing fewer blocks simply leaves labels
/// unused (the corresponding cells are empty and vacuously fine).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPartition {
    pub block_count: usize,
    /// `assignment[i][e]` is the block label of element `e` of coordinate `i`.
    pub assignment: Vec<Vec<usize>>,
}

impl GridPartition {
    /// Every element in its own block: always verifies (singleton cells).
    pub fn singletons(domain_sizes: &[usize]) -> Self {
        let k = domain_sizes.iter().copied().max().unwrap_or(1).max(1);
        GridPartition {
            block_count: k,
            assignment: domain_sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    /// One block per coordinate.
    pub fn trivial(domain_sizes: &[usize]) -> Self {
        GridPartition {
            block_count: 1,
            assignment: domain_sizes.iter().map(|&n| vec![0; n]).collect(),
        }
    }

    /// Checks shape against a table's domains.
    pub fn validate_for(&self, table: &FunctionTable) -> Result<()> {
        if self.block_count == 0 {
            return Err(Error::input("block_count must be at least 1"));
        }
        if self.assignment.len() != table.arity {
            return Err(Error::input(format!(
                "assignment covers {} coordinates, table has arity {}",
                self.assignment.len(),
                table.arity
            )));
        }
        for (i, labels) in self.assignment.iter().enumerate() {
            if labels.len() != table.domain_sizes[i] {
                return Err(Error::input(format!(
                    "assignment for coordinate {i} has {} entries, domain has {}",
                    labels.len(),
                    table.domain_sizes[i]
                )));
            }
            if let Some(&bad) = labels.iter().find(|&&b| b >= self.block_count) {
                return Err(Error::input(format!(
                    "coordinate {i} uses label {bad} outside 0..{}",
                    self.block_count
                )));
            }
        }
        Ok(())
    }

    /// Elements per block label for one coordinate (empty blocks included).
    pub fn blocks(&self, coord: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (e, &b) in self.assignment[coord].iter().enumerate() {
            out[b].push(e);
        }
        out
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("partition serialization cannot fail")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let part: GridPartition = serde_json::from_slice(bytes)?;
        if part.block_count == 0 {
            return Err(Error::Parse {
                field: "block_count".into(),
                reason: "must be at least 1".into(),
            });
        }
        Ok(part)
    }
}

/// One cell that failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCell {
    /// Block label chosen per coordinate.
    pub labels: Vec<usize>,
    pub status: DependenceStatus,
}

/// Result of [`verify_grid_partition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub ok: bool,
    /// Every essential cell, identified by its label tuple.
    pub failing_cells: Vec<FailedCell>,
}

/// Checks that every nonempty cell of the partition is constant or
/// single-coordinate-dependent.
pub fn verify_grid_partition(
    table: &FunctionTable,
    part: &GridPartition,
) -> Result<PartitionCheck> {
    part.validate_for(table)?;
    let blocks: Vec<Vec<Vec<usize>>> = (0..table.arity).map(|i| part.blocks(i)).collect();
    let nonempty: Vec<Vec<usize>> = blocks
        .iter()
        .map(|bs| {
            bs.iter()
                .enumerate()
                .filter(|(_, b)| !b.is_empty())
                .map(|(label, _)| label)
                .collect()
        })
        .collect();
    let mut failing = Vec::new();
    let counts: Vec<usize> = nonempty.iter().map(Vec::len).collect();
    for combo in points(&counts) {
        let labels: Vec<usize> = combo
            .iter()
            .enumerate()
            .map(|(i, &c)| nonempty[i][c])
            .collect();
        let cube = SubCube {
            factors: labels
                .iter()
                .enumerate()
                .map(|(i, &b)| blocks[i][b].clone())
                .collect(),
        };
        let dep = box_dependence(table, &cube)?;
        if dep.status == DependenceStatus::Essential {
            failing.push(FailedCell {
                labels,
                status: dep.status,
            });
        }
    }
    Ok(PartitionCheck {
        ok: failing.is_empty(),
        failing_cells: failing,
    })
}

/// Result of [`find_grid_partition`]: `exact` means the answer is proven
/// (a verified partition, or an exhausted search when `partition` is none);
/// inexact means the node budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindPartition {
    pub partition: Option<GridPartition>,
    pub exact: bool,
    pub nodes: u64,
}

/// Searches for a verifying `k`-block grid partition by exact backtracking.
///
/// Assignments are explored in element-major slot order (element 0 of every
/// coordinate, then element 1, …) with labels in restricted growth form, so
/// the first solution found — and returned — is the lexicographically least
/// canonical one. `None` with `exact: true` is a proof that no `k`-block
/// partition exists.
pub fn find_grid_partition(
    table: &FunctionTable,
    k: usize,
    budget: SearchBudget,
) -> Result<FindPartition> {
    if k == 0 {
        return Err(Error::input("block count k must be at least 1"));
    }
    let mut search = PartitionDfs::new(table, k, budget);
    let found = search.run();
    let exact = found.is_some() || !search.out_of_budget;
    if let Some(part) = &found {
        // The search checks every cell when it last grows; this re-check
        // guards that bookkeeping. Cheap next to the search itself.
        if !verify_grid_partition(table, part)?.ok {
            return Err(Error::Internal(
                "partition search returned a non-verifying assignment".into(),
            ));
        }
    }
    Ok(FindPartition {
        partition: found,
        exact,
        nodes: search.nodes,
    })
}

/// Slot order: (element, coordinate) pairs, element-major, skipping
/// coordinates shorter than the element index.
fn slot_order(domain_sizes: &[usize]) -> Vec<(usize, usize)> {
    let max_n = domain_sizes.iter().copied().max().unwrap_or(0);
    let mut slots = Vec::new();
    for e in 0..max_n {
        for (i, &n) in domain_sizes.iter().enumerate() {
            if e < n {
                slots.push((i, e));
            }
        }
    }
    slots
}

struct PartitionDfs<'a> {
    table: &'a FunctionTable,
    k: usize,
    budget: SearchBudget,
    slots: Vec<(usize, usize)>,
    /// Current label per (coord, element); usize::MAX = unassigned.
    labels: Vec<Vec<usize>>,
    /// Highest label used so far per coordinate (RGS frontier), or None.
    max_label: Vec<Option<usize>>,
    nodes: u64,
    out_of_budget: bool,
    started: std::time::Instant,
}

impl<'a> PartitionDfs<'a> {
    fn new(table: &'a FunctionTable, k: usize, budget: SearchBudget) -> Self {
        PartitionDfs {
            table,
            k,
            budget,
            slots: slot_order(&table.domain_sizes),
            labels: table
                .domain_sizes
                .iter()
                .map(|&n| vec![usize::MAX; n])
                .collect(),
            max_label: vec![None; table.arity],
            nodes: 0,
            out_of_budget: false,
            started: std::time::Instant::now(),
        }
    }

    fn run(&mut self) -> Option<GridPartition> {
        if self.dfs(0) {
            Some(GridPartition {
                block_count: self.k,
                assignment: self.labels.clone(),
            })
        } else {
            None
        }
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

    fn dfs(&mut self, slot: usize) -> bool {
        if slot == self.slots.len() {
            return true;
        }
        let (coord, elem) = self.slots[slot];
        // Restricted growth: may reuse any existing label of this coordinate
        // or open exactly the next fresh one.
        let ceiling = match self.max_label[coord] {
            Some(m) => (m + 1).min(self.k - 1),
            None => 0,
        };
        for label in 0..=ceiling {
            if self.spent() {
                return false;
            }
            self.nodes += 1;
            let prev_max = self.max_label[coord];
            self.labels[coord][elem] = label;
            if prev_max.is_none_or(|m| label > m) {
                self.max_label[coord] = Some(label);
            }
            if self.consistent_after(coord, label) && self.dfs(slot + 1) {
                return true;
            }
            self.labels[coord][elem] = usize::MAX;
            self.max_label[coord] = prev_max;
        }
        false
    }

    /// Checks every currently-assigned cell whose coordinate-`coord` block is
    /// `label`. Essential sub-cells are permanent (monotonicity), so a hit
    /// here kills the whole branch.
    fn consistent_after(&self, coord: usize, label: usize) -> bool {
        let d = self.table.arity;
        // Assigned elements per block, per coordinate.
        let mut blocks: Vec<Vec<Vec<usize>>> = Vec::with_capacity(d);
        for i in 0..d {
            let mut per = vec![Vec::new(); self.k];
            for (e, &b) in self.labels[i].iter().enumerate() {
                if b != usize::MAX {
                    per[b].push(e);
                }
            }
            blocks.push(per);
        }
        let used: Vec<Vec<usize>> = (0..d)
            .map(|i| {
                if i == coord {
                    vec![label]
                } else {
                    (0..self.k).filter(|&b| !blocks[i][b].is_empty()).collect()
                }
            })
            .collect();
        let counts: Vec<usize> = used.iter().map(Vec::len).collect();
        for combo in points(&counts) {
            let cube = SubCube {
                factors: combo
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| blocks[i][used[i][c]].clone())
                    .collect(),
            };
            // At least two factors of size ≥ 2 are needed for essentiality.
            if cube.factors.iter().filter(|f| f.len() >= 2).count() < 2 {
                continue;
            }
            let dep = box_dependence(self.table, &cube).expect("in-range box");
            if dep.status == DependenceStatus::Essential {
                return false;
            }
        }
        true
    }
}

/// Result of [`min_partition_size`]. When `exact` is false some inner search
/// hit its budget and `k_min` is only an upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPartition {
    pub k_min: usize,
    pub certificate: GridPartition,
    pub exact: bool,
    pub nodes: u64,
}

/// Least `k` admitting a verifying grid partition. Always terminates with a
/// certificate: singletons verify, so `k_min ≤ max nᵢ`. The node budget
/// applies to each inner fixed-`k` search separately.
pub fn min_partition_size(table: &FunctionTable, budget: SearchBudget) -> MinPartition {
    let max_n = table.domain_sizes.iter().copied().max().unwrap_or(1);
    let mut nodes = 0u64;
    let mut exact = true;
    for k in 1..=max_n {
        if k == max_n {
            // Singletons are guaranteed; skip the (possibly huge) search.
            return MinPartition {
                k_min: k,
                certificate: GridPartition::singletons(&table.domain_sizes),
                exact,
                nodes,
            };
        }
        let found = find_grid_partition(table, k, budget).expect("k >= 1");
        nodes += found.nodes;
        match found.partition {
            Some(certificate) => {
                return MinPartition {
                    k_min: k,
                    certificate,
                    exact,
                    nodes,
                }
            }
            None => exact &= found.exact,
        }
    }
    unreachable!("loop returns at k = max_n")
}

/// Heuristic upper bound: start from singletons and repeatedly apply the
/// first block merge (coordinate order, then label pairs lexicographically)
/// that keeps every affected cell non-essential. Deterministic; the result
/// always verifies but its block count may exceed `k_min`.
pub fn greedy_partition(table: &FunctionTable) -> GridPartition {
    let d = table.arity;
    // Per-coordinate element labels, kept contiguous after every merge.
    let mut labels: Vec<Vec<usize>> = table
        .domain_sizes
        .iter()
        .map(|&n| (0..n).collect())
        .collect();

    'merge: loop {
        let counts: Vec<usize> = labels
            .iter()
            .map(|ls| ls.iter().copied().max().unwrap_or(0) + 1)
            .collect();
        for coord in 0..d {
            for a in 0..counts[coord] {
                for b in (a + 1)..counts[coord] {
                    if merge_is_legal(table, &labels, coord, a, b) {
                        // Merge b into a, compact labels above b.
                        for l in labels[coord].iter_mut() {
                            if *l == b {
                                *l = a;
                            } else if *l > b {
                                *l -= 1;
                            }
                        }
                        continue 'merge;
                    }
                }
            }
        }
        break;
    }

    let block_count = labels
        .iter()
        .map(|ls| ls.iter().copied().max().unwrap_or(0) + 1)
        .max()
        .unwrap_or(1);
    let part = GridPartition {
        block_count,
        assignment: labels,
    };
    let check = verify_grid_partition(table, &part).expect("shape is valid");
    assert!(
        check.ok,
        "greedy merges only ever leave verifying partitions"
    );
    part
}

/// Would merging labels `a` and `b` of `coord` leave every cell that touches
/// the merged block non-essential?
fn merge_is_legal(
    table: &FunctionTable,
    labels: &[Vec<usize>],
    coord: usize,
    a: usize,
    b: usize,
) -> bool {
    let d = table.arity;
    let merged: Vec<usize> = labels[coord]
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == a || l == b)
        .map(|(e, _)| e)
        .collect();
    let other_blocks: Vec<Vec<Vec<usize>>> = (0..d)
        .map(|i| {
            let count = labels[i].iter().copied().max().unwrap_or(0) + 1;
            let mut per = vec![Vec::new(); count];
            for (e, &l) in labels[i].iter().enumerate() {
                per[l].push(e);
            }
            per
        })
        .collect();
    let counts: Vec<usize> = (0..d)
        .map(|i| if i == coord { 1 } else { other_blocks[i].len() })
        .collect();
    for combo in points(&counts) {
        let cube = SubCube {
            factors: (0..d)
                .map(|i| {
                    if i == coord {
                        merged.clone()
                    } else {
                        other_blocks[i][combo[i]].clone()
                    }
                })
                .collect(),
        };
        let dep = box_dependence(table, &cube).expect("in-range box");
        if dep.status == DependenceStatus::Essential {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{diagonal_table, random_table};

    fn projection_table() -> FunctionTable {
        // f(x, y) = x on 2×2.
        FunctionTable::new(vec![2, 2], 2, vec![0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn box_dependence_constant() {
        let t = FunctionTable::new(vec![2, 2], 2, vec![1, 1, 1, 1]).unwrap();
        let dep = box_dependence(&t, &SubCube::full(&t)).unwrap();
        assert_eq!(dep.status, DependenceStatus::Constant);
        assert_eq!(dep.factoring_coords, vec![0, 1]);
        assert_eq!(dep.certificate.unwrap().map, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn box_dependence_projection() {
        let t = projection_table();
        let dep = box_dependence(&t, &SubCube::full(&t)).unwrap();
        assert_eq!(dep.status, DependenceStatus::Single(0));
        let cert = dep.certificate.unwrap();
        assert_eq!(cert.coord, 0);
        assert_eq!(cert.map, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn box_dependence_essential() {
        let t = diagonal_table(2).unwrap();
        let dep = box_dependence(&t, &SubCube::full(&t)).unwrap();
        assert_eq!(dep.status, DependenceStatus::Essential);
        assert!(dep.factoring_coords.is_empty());
        assert!(dep.certificate.is_none());
    }

    #[test]
    fn boxes_with_one_wide_factor_always_factor() {
        // Fixing all but one coordinate leaves a function of that coordinate.
        let t = diagonal_table(3).unwrap();
        let cube = SubCube::new(&t, vec![vec![1], vec![0, 1, 2]]).unwrap();
        let dep = box_dependence(&t, &cube).unwrap();
        assert_eq!(dep.status, DependenceStatus::Single(1));
    }

    #[test]
    fn bad_boxes_are_rejected() {
        let t = diagonal_table(2).unwrap();
        assert!(SubCube::new(&t, vec![vec![0], vec![]]).is_err());
        assert!(SubCube::new(&t, vec![vec![0, 5], vec![0]]).is_err());
        assert!(SubCube::new(&t, vec![vec![0]]).is_err());
    }

    #[test]
    fn singletons_always_verify() {
        for seed in 0..20 {
            let t = random_table(&[3, 4], 3, seed).unwrap();
            let part = GridPartition::singletons(&t.domain_sizes);
            assert!(verify_grid_partition(&t, &part).unwrap().ok);
        }
    }

    #[test]
    fn no_two_block_partition_verifies_diagonal_3() {
        // Brute force over every pair of 2-block label vectors, independent
        // of the search code.
        let t = diagonal_table(3).unwrap();
        for rows in 0..(1 << 3) {
            for cols in 0..(1 << 3) {
                let part = GridPartition {
                    block_count: 2,
                    assignment: vec![
                        (0..3).map(|e| (rows >> e) & 1).collect(),
                        (0..3).map(|e| (cols >> e) & 1).collect(),
                    ],
                };
                assert!(!verify_grid_partition(&t, &part).unwrap().ok);
            }
        }
    }

    #[test]
    fn verify_reports_failing_cells() {
        let t = diagonal_table(2).unwrap();
        let check = verify_grid_partition(&t, &GridPartition::trivial(&t.domain_sizes)).unwrap();
        assert!(!check.ok);
        assert_eq!(
            check.failing_cells,
            vec![FailedCell {
                labels: vec![0, 0],
                status: DependenceStatus::Essential,
            }]
        );
    }

    #[test]
    fn verify_rejects_mismatched_shapes() {
        let t = diagonal_table(2).unwrap();
        let part = GridPartition {
            block_count: 2,
            assignment: vec![vec![0, 1]],
        };
        assert!(verify_grid_partition(&t, &part).is_err());
        let part = GridPartition {
            block_count: 1,
            assignment: vec![vec![0, 1], vec![0, 0]],
        };
        assert!(verify_grid_partition(&t, &part).is_err());
    }

    #[test]
    fn find_rejects_k_zero() {
        let t = diagonal_table(2).unwrap();
        assert!(find_grid_partition(&t, 0, SearchBudget::default()).is_err());
    }

    #[test]
    fn find_on_diagonal_3() {
        let t = diagonal_table(3).unwrap();
        let none = find_grid_partition(&t, 2, SearchBudget::default()).unwrap();
        assert!(none.partition.is_none());
        assert!(none.exact, "k=2 nonexistence is proven, not budgeted out");
        let some = find_grid_partition(&t, 3, SearchBudget::default()).unwrap();
        let part = some
            .partition
            .expect("singleton-equivalent partition exists");
        assert!(verify_grid_partition(&t, &part).unwrap().ok);
    }

    #[test]
    fn find_reports_budget_exhaustion() {
        let t = diagonal_table(5).unwrap();
        let out = find_grid_partition(&t, 3, SearchBudget::nodes(1)).unwrap();
        assert!(out.partition.is_none());
        assert!(!out.exact);
    }

    #[test]
    fn min_partition_small_cases() {
        let constant = FunctionTable::new(vec![3, 3], 2, vec![0; 9]).unwrap();
        assert_eq!(
            min_partition_size(&constant, SearchBudget::default()).k_min,
            1
        );

        let proj = projection_table();
        assert_eq!(min_partition_size(&proj, SearchBudget::default()).k_min, 1);

        let diag3 = diagonal_table(3).unwrap();
        let out = min_partition_size(&diag3, SearchBudget::default());
        assert_eq!(out.k_min, 3);
        assert!(out.exact);
        assert!(verify_grid_partition(&diag3, &out.certificate).unwrap().ok);
    }

    #[test]
    fn diagonal_4_admits_a_three_block_partition() {
        // Splitting rows {0,1},{2},{3} against columns {2,3},{0},{1} leaves
        // every cell with at most one factor of size ≥ 2, so k = 3 suffices
        // even though the 4×4 diagonal "looks" like it needs 4 blocks.
        let t = diagonal_table(4).unwrap();
        let part = GridPartition {
            block_count: 3,
            assignment: vec![vec![0, 0, 1, 2], vec![1, 2, 0, 0]],
        };
        assert!(verify_grid_partition(&t, &part).unwrap().ok);
        let out = min_partition_size(&t, SearchBudget::default());
        assert_eq!(out.k_min, 3);
    }

    #[test]
    fn greedy_matches_expectations() {
        let constant = FunctionTable::new(vec![3, 3], 2, vec![1; 9]).unwrap();
        assert_eq!(greedy_partition(&constant).block_count, 1);

        let proj = FunctionTable::new(vec![3, 3], 3, vec![0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(greedy_partition(&proj).block_count, 1);

        // Rows merge freely (each cell keeps a single wide factor) but no
        // column merge survives afterwards, so greedy lands on 4 > k_min = 3.
        let diag4 = diagonal_table(4).unwrap();
        assert_eq!(greedy_partition(&diag4).block_count, 4);
    }

    #[test]
    fn greedy_never_beats_exact_minimum() {
        for seed in 0..30 {
            let t = random_table(&[3, 3], 2, seed).unwrap();
            let greedy = greedy_partition(&t).block_count;
            let exact = min_partition_size(&t, SearchBudget::default());
            assert!(exact.exact);
            assert!(
                greedy >= exact.k_min,
                "seed {seed}: {greedy} < {}",
                exact.k_min
            );
        }
    }

    #[test]
    fn partition_json_round_trip() {
        let part = GridPartition {
            block_count: 3,
            assignment: vec![vec![0, 1, 2], vec![0, 1, 2]],
        };
        let bytes = part.to_json();
        assert_eq!(
            String::from_utf8(bytes.clone()).unwrap(),
            r#"{"block_count":3,"assignment":[[0,1,2],[0,1,2]]}"#
        );
        assert_eq!(GridPartition::from_json(&bytes).unwrap(), part);
        assert!(GridPartition::from_json(br#"{"block_count":0,"assignment":[]}"#).is_err());
        assert!(GridPartition::from_json(br#"{"block_count":1,"assignment":[],"x":0}"#).is_err());
    }
}
