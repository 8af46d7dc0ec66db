//! Brute-force oracles for the integration tests.
//!
//! Everything here recomputes the library's answers along a different path:
//! set partitions are enumerated outright instead of searched with pruning,
//! chains are grown with full `O(L³)` revalidation instead of incremental
//! counters, and homogeneous subsets come from subset enumeration. Slow on
//! purpose — these run only on small instances, where slow is still fast.

// Each test binary compiles this module separately and uses its own subset.
#![allow(dead_code)]
#![allow(clippy::needless_range_loop)] // index loops mirror the definitions

use cubedep::ramsey::TripleColoring;
use cubedep::table::FunctionTable;

/// All set partitions of `{0, …, n-1}`, each as an element→block-label map
/// in restricted growth form.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let ceiling = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for label in 0..=ceiling {
            prefix.push(label);
            extend(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

fn value(table: &FunctionTable, point: &[usize]) -> usize {
    let mut idx = 0;
    for (i, &x) in point.iter().enumerate() {
        idx = idx * table.domain_sizes[i] + x;
    }
    table.values[idx]
}

/// All points of the box given by per-coordinate element lists.
fn box_points(factors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pts: Vec<Vec<usize>> = vec![Vec::new()];
    for factor in factors {
        let mut next = Vec::new();
        for p in &pts {
            for &e in factor {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

/// Does `f` restricted to the box depend on at most coordinate `j`? Checked
/// by comparing every pair of points that agree at `j`.
fn depends_only_on(table: &FunctionTable, pts: &[Vec<usize>], j: usize) -> bool {
    for a in pts {
        for b in pts {
            if a[j] == b[j] && value(table, a) != value(table, b) {
                return false;
            }
        }
    }
    true
}

/// Is the box constant or single-coordinate-dependent?
pub fn oracle_box_ok(table: &FunctionTable, factors: &[Vec<usize>]) -> bool {
    let pts = box_points(factors);
    if pts.is_empty() {
        return true;
    }
    let constant = pts.iter().all(|p| value(table, p) == value(table, &pts[0]));
    constant || (0..table.arity).any(|j| depends_only_on(table, &pts, j))
}

/// Minimal block count over every combination of per-coordinate set
/// partitions, by exhaustive enumeration. Exponential in the domain sizes.
pub fn oracle_k_min(table: &FunctionTable) -> usize {
    let per_coord: Vec<Vec<Vec<usize>>> = table
        .domain_sizes
        .iter()
        .map(|&n| set_partitions(n))
        .collect();
    let mut best = usize::MAX;
    let mut combo = vec![0usize; table.arity];
    loop {
        let assignment: Vec<&Vec<usize>> = combo
            .iter()
            .enumerate()
            .map(|(i, &c)| &per_coord[i][c])
            .collect();
        let k = assignment
            .iter()
            .map(|labels| labels.iter().copied().max().unwrap_or(0) + 1)
            .max()
            .unwrap_or(1);
        if k < best && oracle_partition_ok(table, &assignment) {
            best = k;
        }
        // Odometer over partition choices.
        let mut i = table.arity;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            combo[i] += 1;
            if combo[i] < per_coord[i].len() {
                break;
            }
            combo[i] = 0;
        }
    }
}

fn oracle_partition_ok(table: &FunctionTable, assignment: &[&Vec<usize>]) -> bool {
    let blocks: Vec<Vec<Vec<usize>>> = assignment
        .iter()
        .map(|labels| {
            let count = labels.iter().copied().max().unwrap_or(0) + 1;
            let mut bs = vec![Vec::new(); count];
            for (e, &b) in labels.iter().enumerate() {
                bs[b].push(e);
            }
            bs
        })
        .collect();
    let mut choice = vec![0usize; table.arity];
    loop {
        let factors: Vec<Vec<usize>> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| blocks[i][c].clone())
            .collect();
        if !oracle_box_ok(table, &factors) {
            return false;
        }
        let mut i = table.arity;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < blocks[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Is `(xs, ys)` a valid chain for the split `(u, v)`? Full recheck of the
/// defining inequality with direct table lookups.
pub fn oracle_chain_ok(
    table: &FunctionTable,
    u: &[usize],
    v: &[usize],
    xs: &[Vec<usize>],
    ys: &[Vec<usize>],
) -> bool {
    let len = xs.len();
    let interleave = |x: &[usize], y: &[usize]| {
        let mut p = vec![0usize; table.arity];
        for (a, &i) in u.iter().enumerate() {
            p[i] = x[a];
        }
        for (b, &i) in v.iter().enumerate() {
            p[i] = y[b];
        }
        p
    };
    for l in 0..len {
        let diag = value(table, &interleave(&xs[l], &ys[l]));
        for m in 0..len {
            for n in (m + 1)..len {
                if diag == value(table, &interleave(&xs[m], &ys[n])) {
                    return false;
                }
            }
        }
    }
    true
}

fn side_tuples(table: &FunctionTable, coords: &[usize]) -> Vec<Vec<usize>> {
    box_points(
        &coords
            .iter()
            .map(|&i| (0..table.domain_sizes[i]).collect())
            .collect::<Vec<_>>(),
    )
}

/// Longest chain over all splits, by exhaustive extension with full
/// revalidation at every step.
pub fn oracle_l_max(table: &FunctionTable) -> usize {
    let d = table.arity;
    if d < 2 {
        return 1;
    }
    let mut best = 1;
    for mask in 1u64..(1 << d) - 1 {
        let u: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
        let v: Vec<usize> = (0..d).filter(|&i| mask >> i & 1 == 0).collect();
        let xs_all = side_tuples(table, &u);
        let ys_all = side_tuples(table, &v);
        let mut xs: Vec<Vec<usize>> = Vec::new();
        let mut ys: Vec<Vec<usize>> = Vec::new();
        grow(table, &u, &v, &xs_all, &ys_all, &mut xs, &mut ys, &mut best);
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn grow(
    table: &FunctionTable,
    u: &[usize],
    v: &[usize],
    xs_all: &[Vec<usize>],
    ys_all: &[Vec<usize>],
    xs: &mut Vec<Vec<usize>>,
    ys: &mut Vec<Vec<usize>>,
    best: &mut usize,
) {
    for x in xs_all {
        for y in ys_all {
            xs.push(x.clone());
            ys.push(y.clone());
            if oracle_chain_ok(table, u, v, xs, ys) {
                *best = (*best).max(xs.len());
                grow(table, u, v, xs_all, ys_all, xs, ys, best);
            }
            xs.pop();
            ys.pop();
        }
    }
}

/// Size of the largest `color`-homogeneous subset, by subset enumeration.
/// Only sensible for `n <= ~16`.
pub fn oracle_largest_homogeneous(coloring: &TripleColoring, color: u8) -> usize {
    let n = coloring.n();
    let mut best = 0;
    'subset: for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() <= best {
            continue;
        }
        for a in 0..members.len() {
            for b in (a + 1)..members.len() {
                for c in (b + 1)..members.len() {
                    if coloring.color(members[a], members[b], members[c]) != color {
                        continue 'subset;
                    }
                }
            }
        }
        best = members.len();
    }
    best
}
