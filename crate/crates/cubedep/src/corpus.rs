//! Generators for the structured instance families used in tests and scans.
//!
//! The three named 2-D families pin down the interesting corners of the
//! dichotomy: `diagonal` (equality indicator — long chains, no small
//! partition), `russell` (paired-element indicator — the classic source of
//! counterexamples under weak choice, here just a useful hard instance), and
//! `triangular` (order indicator — the canonical input whose identity chain
//! satisfies pattern (5)). `single_coordinate` and `patchwork` build
//! guaranteed partition-side instances; `random` and `enumerate` supply bulk
//! spaces for scans.

use std::collections::HashMap;

use crate::dependence::{verify_grid_partition, GridPartition};
use crate::rng::SplitMix64;
use crate::table::FunctionTable;
use crate::{Error, Result};

/// Largest table space `enumerate_tables` agrees to walk.
pub const ENUMERATION_CAP: u64 = 1 << 24;

/// `f(x, y) = 0` iff `x = y`, on an `n × n` square with codomain 2.
pub fn diagonal_table(n: usize) -> Result<FunctionTable> {
    if n < 1 {
        return Err(Error::input("diagonal_table needs n >= 1"));
    }
    let values = (0..n)
        .flat_map(|x| (0..n).map(move |y| usize::from(x != y)))
        .collect();
    FunctionTable::new(vec![n, n], 2, values)
}

/// `f(x, y) = 0` iff `{x, y}` is one of the `p` pairs `{2t, 2t+1}`, on a
/// `2p × 2p` square. Diagonal entries are 1: a singleton is never a pair.
pub fn russell_table(p: usize) -> Result<FunctionTable> {
    if p < 1 {
        return Err(Error::input("russell_table needs at least one pair"));
    }
    let n = 2 * p;
    let values = (0..n)
        .flat_map(|x| (0..n).map(move |y| usize::from(!(x != y && x / 2 == y / 2))))
        .collect();
    FunctionTable::new(vec![n, n], 2, values)
}

/// `f(x, y) = 0` iff `y ≤ x`, on an `n × n` square. The identity chain on
/// this table satisfies pattern (5): every strictly-upper value is 1 while
/// the diagonal is 0.
pub fn triangular_table(n: usize) -> Result<FunctionTable> {
    if n < 3 {
        return Err(Error::input("triangular_table needs n >= 3"));
    }
    let values = (0..n)
        .flat_map(|x| (0..n).map(move |y| usize::from(y > x)))
        .collect();
    FunctionTable::new(vec![n, n], 2, values)
}

/// `f = g ∘ π_j`: the table depends on coordinate `j` alone through the
/// element-indexed map `g`.
pub fn single_coordinate_table(
    sizes: &[usize],
    j: usize,
    g: &[usize],
    codomain: usize,
) -> Result<FunctionTable> {
    if j >= sizes.len() {
        return Err(Error::input(format!(
            "coordinate {j} out of range for arity {}",
            sizes.len()
        )));
    }
    if g.len() != sizes[j] {
        return Err(Error::input(format!(
            "factor map has {} entries, coordinate {j} has {} elements",
            g.len(),
            sizes[j]
        )));
    }
    let values = crate::table::points(sizes).map(|p| g[p[j]]).collect();
    FunctionTable::new(sizes.to_vec(), codomain, values)
}

/// How one cell of a patchwork is filled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellSpec {
    Constant(usize),
    /// Depend on `coord` through `g`, indexed by raw element value.
    Single {
        coord: usize,
        g: Vec<usize>,
    },
}

/// Builds a table that verifies under `partition` by construction: each
/// nonempty cell (keyed by its block-label tuple) is filled per its spec.
/// Every nonempty cell must have a spec; the output is re-verified and a
/// failure is an internal error, since the construction cannot produce one.
pub fn patchwork_table(
    sizes: &[usize],
    partition: &GridPartition,
    codomain: usize,
    specs: &HashMap<Vec<usize>, CellSpec>,
) -> Result<FunctionTable> {
    let d = sizes.len();
    if partition.assignment.len() != d
        || partition
            .assignment
            .iter()
            .zip(sizes)
            .any(|(ls, &n)| ls.len() != n)
    {
        return Err(Error::input("partition shape disagrees with sizes"));
    }
    for (labels, spec) in specs {
        if labels.len() != d || labels.iter().any(|&b| b >= partition.block_count) {
            return Err(Error::input(format!("cell key {labels:?} out of range")));
        }
        match spec {
            CellSpec::Constant(c) if *c >= codomain => {
                return Err(Error::input(format!(
                    "cell {labels:?}: constant {c} outside codomain"
                )));
            }
            CellSpec::Single { coord, g } => {
                if *coord >= d {
                    return Err(Error::input(format!(
                        "cell {labels:?}: coordinate out of range"
                    )));
                }
                if g.len() != sizes[*coord] || g.iter().any(|&v| v >= codomain) {
                    return Err(Error::input(format!(
                        "cell {labels:?}: malformed factor map"
                    )));
                }
            }
            CellSpec::Constant(_) => {}
        }
    }

    let mut values = Vec::with_capacity(sizes.iter().product());
    for p in crate::table::points(sizes) {
        let labels: Vec<usize> = p
            .iter()
            .enumerate()
            .map(|(i, &e)| partition.assignment[i][e])
            .collect();
        let spec = specs
            .get(&labels)
            .ok_or_else(|| Error::input(format!("no spec for nonempty cell {labels:?}")))?;
        values.push(match spec {
            CellSpec::Constant(c) => *c,
            CellSpec::Single { coord, g } => g[p[*coord]],
        });
    }
    let table = FunctionTable::new(sizes.to_vec(), codomain, values)?;
    if !verify_grid_partition(&table, partition)?.ok {
        return Err(Error::Internal(
            "patchwork output failed its own partition".into(),
        ));
    }
    Ok(table)
}

/// Seeded patchwork: a random `k`-block partition plus a random spec per
/// nonempty cell. Returns the table together with its verifying partition.
pub fn random_patchwork(
    sizes: &[usize],
    k: usize,
    codomain: usize,
    seed: u64,
) -> Result<(FunctionTable, GridPartition)> {
    if k < 1 || codomain < 1 {
        return Err(Error::input(
            "random_patchwork needs k >= 1 and codomain >= 1",
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let assignment: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&n| (0..n).map(|_| rng.next_below(k)).collect())
        .collect();
    let partition = GridPartition {
        block_count: k,
        assignment,
    };

    let mut specs = HashMap::new();
    let label_space: Vec<usize> = vec![k; sizes.len()];
    for labels in crate::table::points(&label_space) {
        let nonempty = labels
            .iter()
            .enumerate()
            .all(|(i, &b)| partition.assignment[i].contains(&b));
        if !nonempty {
            continue;
        }
        let spec = if rng.next_below(2) == 0 {
            CellSpec::Constant(rng.next_below(codomain))
        } else {
            let coord = rng.next_below(sizes.len());
            CellSpec::Single {
                coord,
                g: (0..sizes[coord])
                    .map(|_| rng.next_below(codomain))
                    .collect(),
            }
        };
        specs.insert(labels, spec);
    }
    let table = patchwork_table(sizes, &partition, codomain, &specs)?;
    Ok((table, partition))
}

/// Uniform random table; identical seeds give identical tables. Values are
/// drawn point-by-point in flat-index order from a SplitMix64 stream (see
/// [`crate::rng`] for the exact constants).
pub fn random_table(sizes: &[usize], m: usize, seed: u64) -> Result<FunctionTable> {
    if m < 1 {
        return Err(Error::input("codomain must be at least 1"));
    }
    let len: usize = sizes.iter().product();
    let mut rng = SplitMix64::new(seed);
    let values = (0..len).map(|_| rng.next_below(m)).collect();
    FunctionTable::new(sizes.to_vec(), m, values)
}

/// All `m^(Π nᵢ)` tables on the given cube, in value-lexicographic order
/// (the all-zero table first). Restartable: see [`TableEnumeration::starting_at`].
pub fn enumerate_tables(sizes: &[usize], m: usize) -> Result<TableEnumeration> {
    let count = enumeration_count(sizes, m)?;
    Ok(TableEnumeration {
        sizes: sizes.to_vec(),
        m,
        count,
        next: 0,
    })
}

/// Number of tables in the space, guarded by [`ENUMERATION_CAP`].
pub fn enumeration_count(sizes: &[usize], m: usize) -> Result<u64> {
    if m < 1 || sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::input(
            "enumeration needs arity >= 1 and all sizes, m >= 1",
        ));
    }
    let len: usize = sizes.iter().product();
    let mut count: u128 = 1;
    for _ in 0..len {
        count = count.saturating_mul(m as u128);
        if count > ENUMERATION_CAP as u128 {
            return Err(Error::input(format!(
                "table space {m}^{len} exceeds the enumeration cap {ENUMERATION_CAP}; \
                 use seeded sampling instead"
            )));
        }
    }
    Ok(count as u64)
}

#[derive(Debug, Clone)]
pub struct TableEnumeration {
    sizes: Vec<usize>,
    m: usize,
    count: u64,
    next: u64,
}

impl TableEnumeration {
    /// Total number of tables in the space.
    pub fn total(&self) -> u64 {
        self.count
    }

    /// Restarts the stream at table index `idx` (lexicographic rank).
    pub fn starting_at(mut self, idx: u64) -> Self {
        self.next = idx;
        self
    }

    /// The table of lexicographic rank `idx`, without advancing the stream.
    pub fn table_at(&self, idx: u64) -> FunctionTable {
        let len: usize = self.sizes.iter().product();
        let mut values = vec![0usize; len];
        let mut t = idx;
        for pos in (0..len).rev() {
            values[pos] = (t % self.m as u64) as usize;
            t /= self.m as u64;
        }
        FunctionTable::new(self.sizes.clone(), self.m, values).expect("generator output is valid")
    }
}

impl Iterator for TableEnumeration {
    type Item = FunctionTable;

    fn next(&mut self) -> Option<FunctionTable> {
        if self.next >= self.count {
            return None;
        }
        let table = self.table_at(self.next);
        self.next += 1;
        Some(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_closed_form() {
        assert_eq!(diagonal_table(1).unwrap().values, vec![0]);
        assert_eq!(diagonal_table(2).unwrap().values, vec![0, 1, 1, 0]);
        assert_eq!(
            diagonal_table(3).unwrap().values,
            vec![0, 1, 1, 1, 0, 1, 1, 1, 0]
        );
        assert!(diagonal_table(0).is_err());
        for n in 1..6 {
            let t = diagonal_table(n).unwrap();
            assert!(t.validate().is_empty());
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(t.value_at(&[x, y]) == 0, x == y);
                }
            }
        }
    }

    #[test]
    fn russell_closed_form() {
        assert_eq!(russell_table(1).unwrap().values, vec![1, 0, 0, 1]);
        let t = russell_table(2).unwrap();
        let zeros: Vec<(usize, usize)> = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|&(x, y)| t.value_at(&[x, y]) == 0)
            .collect();
        assert_eq!(zeros, vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
        // Diagonal entries are all 1.
        for x in 0..4 {
            assert_eq!(t.value_at(&[x, x]), 1);
        }
        assert!(russell_table(0).is_err());
    }

    #[test]
    fn triangular_closed_form() {
        assert_eq!(
            triangular_table(3).unwrap().values,
            vec![0, 1, 1, 0, 0, 1, 0, 0, 0]
        );
        assert!(triangular_table(2).is_err());
        let t = triangular_table(5).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(t.value_at(&[x, y]) == 0, y <= x);
            }
        }
    }

    #[test]
    fn single_coordinate_is_a_projection() {
        let t = single_coordinate_table(&[3, 3], 0, &[0, 1, 2], 3).unwrap();
        assert_eq!(t.values, vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert!(single_coordinate_table(&[3, 3], 2, &[0, 1, 2], 3).is_err());
        assert!(single_coordinate_table(&[3, 3], 0, &[0, 1], 3).is_err());
    }

    #[test]
    fn patchwork_verifies_by_construction() {
        // 4×4, two blocks per coordinate: {0,1} vs {2,3}; per-cell
        // coordinate alternates.
        let partition = GridPartition {
            block_count: 2,
            assignment: vec![vec![0, 0, 1, 1], vec![0, 0, 1, 1]],
        };
        let mut specs = HashMap::new();
        specs.insert(
            vec![0, 0],
            CellSpec::Single {
                coord: 0,
                g: vec![0, 1, 0, 0],
            },
        );
        specs.insert(
            vec![0, 1],
            CellSpec::Single {
                coord: 1,
                g: vec![0, 0, 1, 0],
            },
        );
        specs.insert(vec![1, 0], CellSpec::Constant(1));
        specs.insert(
            vec![1, 1],
            CellSpec::Single {
                coord: 1,
                g: vec![0, 0, 0, 1],
            },
        );
        let t = patchwork_table(&[4, 4], &partition, 2, &specs).unwrap();
        assert!(verify_grid_partition(&t, &partition).unwrap().ok);

        // A missing cell spec is an input error.
        specs.remove(&vec![1, 1]);
        assert!(patchwork_table(&[4, 4], &partition, 2, &specs).is_err());
    }

    #[test]
    fn random_patchwork_verifies() {
        for seed in 0..10 {
            let (t, part) = random_patchwork(&[4, 4], 2, 3, seed).unwrap();
            assert!(verify_grid_partition(&t, &part).unwrap().ok);
        }
    }

    #[test]
    fn random_table_is_deterministic() {
        let a = random_table(&[3, 3, 2], 4, 99).unwrap();
        let b = random_table(&[3, 3, 2], 4, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().is_empty());
        let c = random_table(&[3, 3, 2], 4, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let tables: Vec<_> = enumerate_tables(&[2, 2], 2).unwrap().collect();
        assert_eq!(tables.len(), 16);
        assert_eq!(tables[0].values, vec![0, 0, 0, 0]);
        assert_eq!(tables[1].values, vec![0, 0, 0, 1]);
        assert_eq!(tables[15].values, vec![1, 1, 1, 1]);

        assert_eq!(enumerate_tables(&[3, 3], 2).unwrap().count(), 512);
        assert_eq!(enumeration_count(&[3, 3], 2).unwrap(), 512);
    }

    #[test]
    fn enumeration_restarts_from_an_index() {
        let rest: Vec<_> = enumerate_tables(&[2, 2], 2)
            .unwrap()
            .starting_at(14)
            .collect();
        assert_eq!(rest.len(), 2);
        assert_eq!(rest[0].values, vec![1, 1, 1, 0]);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let err = enumerate_tables(&[4, 4], 3).unwrap_err();
        assert!(err.to_string().contains("sampling"));
    }
}
