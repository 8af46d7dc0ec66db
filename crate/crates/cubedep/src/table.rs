//! Dense encoding of functions on finite combinatorial cubes.
//!
//! A [`FunctionTable`] stores `f : X_0 × … × X_{d-1} → Y` with
//! `X_i = {0, …, n_i − 1}` and `Y = {0, …, m − 1}` as a flat row-major value
//! array. Coordinate 0 is most significant: the flat index of a point
//! `(x_0, …, x_{d-1})` is `Σ_i x_i · Π_{i' > i} n_{i'}`. Only equality of
//! codomain values matters to any check in this crate, so arbitrary value
//! labels are normalized to `0..m` in first-occurrence order on ingestion
//! (see [`FunctionTable::from_labels`]).
//!
//! Tables are immutable after construction and safe to share across threads.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// A point of the cube is a coordinate slice `p` with `p[i] < n_i`;
/// `p[j]` is the projection of the point onto coordinate `j`.
pub type Point = Vec<usize>;

/// Dense table of a function on a finite combinatorial cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionTable {
    /// Number of coordinates `d ≥ 1`.
    pub arity: usize,
    /// Per-coordinate domain sizes `(n_0, …, n_{d-1})`, each ≥ 1.
    pub domain_sizes: Vec<usize>,
    /// Codomain size `m ≥ 1`; stored values lie in `0..m`.
    pub codomain_size: usize,
    /// Row-major flat value array of length `Π n_i`.
    pub values: Vec<usize>,
}

/// One violated table invariant, with its location where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroArity,
    ArityMismatch {
        arity: usize,
        dims: usize,
    },
    EmptyDomain {
        coord: usize,
    },
    ZeroCodomain,
    LengthMismatch {
        expected: usize,
        actual: usize,
    },
    ValueOutOfRange {
        index: usize,
        value: usize,
        codomain: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ZeroArity => write!(f, "arity must be at least 1"),
            Violation::ArityMismatch { arity, dims } => {
                write!(f, "arity {arity} disagrees with {dims} domain sizes")
            }
            Violation::EmptyDomain { coord } => {
                write!(f, "domain size of coordinate {coord} must be at least 1")
            }
            Violation::ZeroCodomain => write!(f, "codomain_size must be at least 1"),
            Violation::LengthMismatch { expected, actual } => {
                write!(f, "values has length {actual}, expected {expected}")
            }
            Violation::ValueOutOfRange {
                index,
                value,
                codomain,
            } => {
                write!(
                    f,
                    "value {value} at index {index} outside codomain 0..{codomain}"
                )
            }
        }
    }
}

impl FunctionTable {
    /// Builds a table and rejects it wholesale if any invariant fails.
    pub fn new(domain_sizes: Vec<usize>, codomain_size: usize, values: Vec<usize>) -> Result<Self> {
        let table = FunctionTable {
            arity: domain_sizes.len(),
            domain_sizes,
            codomain_size,
            values,
        };
        let violations = table.validate();
        if violations.is_empty() {
            Ok(table)
        } else {
            let detail: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            Err(Error::input(format!(
                "invalid table: {}",
                detail.join("; ")
            )))
        }
    }

    /// Builds a table from arbitrary equality-labelled values, normalizing
    /// them to `0..m` in first-occurrence order. The codomain size becomes
    /// the number of distinct labels.
    pub fn from_labels<T: Eq + std::hash::Hash>(
        domain_sizes: Vec<usize>,
        labels: &[T],
    ) -> Result<Self> {
        let mut seen: std::collections::HashMap<&T, usize> = std::collections::HashMap::new();
        let mut values = Vec::with_capacity(labels.len());
        for label in labels {
            let next = seen.len();
            let v = *seen.entry(label).or_insert(next);
            values.push(v);
        }
        let codomain = seen.len().max(1);
        FunctionTable::new(domain_sizes, codomain, values)
    }

    /// Checks every invariant; the returned list is empty iff the table is
    /// valid. Violations are data, one entry per failure with its location.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.arity == 0 {
            out.push(Violation::ZeroArity);
        }
        if self.arity != self.domain_sizes.len() {
            out.push(Violation::ArityMismatch {
                arity: self.arity,
                dims: self.domain_sizes.len(),
            });
        }
        for (coord, &n) in self.domain_sizes.iter().enumerate() {
            if n == 0 {
                out.push(Violation::EmptyDomain { coord });
            }
        }
        if self.codomain_size == 0 {
            out.push(Violation::ZeroCodomain);
        }
        // Only meaningful once the dimensions themselves are sound.
        if out.is_empty() {
            let expected: usize = self.domain_sizes.iter().product();
            if self.values.len() != expected {
                out.push(Violation::LengthMismatch {
                    expected,
                    actual: self.values.len(),
                });
            }
            for (index, &value) in self.values.iter().enumerate() {
                if value >= self.codomain_size {
                    out.push(Violation::ValueOutOfRange {
                        index,
                        value,
                        codomain: self.codomain_size,
                    });
                }
            }
        }
        out
    }

    /// Row-major strides: `stride[i] = Π_{i' > i} n_{i'}`.
    pub fn strides(&self) -> Vec<usize> {
        let d = self.domain_sizes.len();
        let mut s = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.domain_sizes[i + 1];
        }
        s
    }

    /// Flat row-major index of `point`; inverse of [`point_of_index`](Self::point_of_index).
    pub fn flat_index(&self, point: &[usize]) -> Result<usize> {
        if point.len() != self.arity {
            return Err(Error::input(format!(
                "point has {} coordinates, table has arity {}",
                point.len(),
                self.arity
            )));
        }
        let mut idx = 0usize;
        for (i, (&x, &n)) in point.iter().zip(&self.domain_sizes).enumerate() {
            if x >= n {
                return Err(Error::input(format!(
                    "coordinate {i} out of range: {x} >= {n}"
                )));
            }
            idx = idx * n + x;
        }
        Ok(idx)
    }

    /// Point with the given flat index.
    pub fn point_of_index(&self, mut idx: usize) -> Result<Point> {
        if idx >= self.values.len() {
            return Err(Error::input(format!(
                "flat index {idx} out of range 0..{}",
                self.values.len()
            )));
        }
        let d = self.arity;
        let mut coords = vec![0usize; d];
        for i in (0..d).rev() {
            let n = self.domain_sizes[i];
            coords[i] = idx % n;
            idx /= n;
        }
        Ok(coords)
    }

    /// Value at a point. Panics on malformed points; use [`Self::flat_index`]
    /// when the point comes from outside.
    pub fn value_at(&self, point: &[usize]) -> usize {
        let mut idx = 0usize;
        for (&x, &n) in point.iter().zip(&self.domain_sizes) {
            debug_assert!(x < n);
            idx = idx * n + x;
        }
        self.values[idx]
    }

    /// Number of points in the cube.
    pub fn point_count(&self) -> usize {
        self.values.len()
    }
}

/// Serializes a table to its canonical JSON byte form. Key order and spacing
/// are fixed, so these are also the bytes that [`table_hash`] digests.
pub fn save_table(table: &FunctionTable) -> Vec<u8> {
    serde_json::to_vec(table).expect("table serialization cannot fail")
}

/// Parses a table from JSON bytes, rejecting unknown keys and any invariant
/// violation. The error names the offending field.
pub fn load_table(bytes: &[u8]) -> Result<FunctionTable> {
    let table: FunctionTable = serde_json::from_slice(bytes)?;
    let violations = table.validate();
    if let Some(v) = violations.first() {
        let field = match v {
            Violation::ZeroArity | Violation::ArityMismatch { .. } => "arity",
            Violation::EmptyDomain { .. } => "domain_sizes",
            Violation::ZeroCodomain => "codomain_size",
            Violation::LengthMismatch { .. } | Violation::ValueOutOfRange { .. } => "values",
        };
        return Err(Error::Parse {
            field: field.to_string(),
            reason: v.to_string(),
        });
    }
    Ok(table)
}

/// Table identity: lowercase hex SHA-256 of the canonical JSON bytes.
pub fn table_hash(table: &FunctionTable) -> String {
    let digest = Sha256::digest(save_table(table));
    let mut out = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        write!(out, "{byte:02x}").unwrap();
    }
    out
}

/// Iterator over all points of a cube with the given sizes, in flat-index
/// order. Used by the dependence and witness modules for cell enumeration.
/// A cube with an empty factor has no points; the zero-dimensional cube has
/// exactly one, the empty tuple.
pub fn points(sizes: &[usize]) -> PointIter {
    let start = if sizes.contains(&0) {
        None
    } else {
        Some(vec![0; sizes.len()])
    };
    PointIter {
        sizes: sizes.to_vec(),
        next: start,
    }
}

pub struct PointIter {
    sizes: Vec<usize>,
    next: Option<Point>,
}

impl Iterator for PointIter {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer increment, least-significant coordinate last.
        let mut i = self.sizes.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
