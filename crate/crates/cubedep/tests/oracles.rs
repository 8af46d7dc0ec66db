//! Search results pinned against the brute-force oracles in `common/`, plus
//! closed-form values for the structured families, frozen here after being
//! derived with those oracles.

mod common;

use common::{
    oracle_box_ok, oracle_k_min, oracle_l_max, oracle_largest_homogeneous, set_partitions,
};
use cubedep::corpus::{
    diagonal_table, enumerate_tables, random_table, russell_table, triangular_table,
};
use cubedep::dependence::{box_dependence, min_partition_size, DependenceStatus, SubCube};
use cubedep::ramsey::{largest_homogeneous, TripleColoring};
use cubedep::rng::SplitMix64;
use cubedep::witness::{longest_chain, SearchBudget};

/// The diagonal family, exhaustively re-derived: k_min grows strictly slower
/// than n once blocks can pair up off-diagonal elements — diagonal(4) packs
/// into 3 blocks (rows {0,1}/{2}/{3} against columns {2,3}/{0}/{1} leave
/// every cell constant or single-coordinate), so the sequence is 2, 3, 3, 4,
/// not n. L_max, by contrast, is exactly n: the identity sequences are a
/// chain, and length is capped by the side sizes.
#[test]
fn diagonal_family_values() {
    let expected_k = [2, 3, 3, 4];
    for (i, n) in (2..=5).enumerate() {
        let t = diagonal_table(n).unwrap();
        assert_eq!(
            oracle_k_min(&t),
            expected_k[i],
            "oracle k_min(diagonal({n}))"
        );
        let found = min_partition_size(&t, SearchBudget::default());
        assert!(found.exact);
        assert_eq!(found.k_min, expected_k[i], "search k_min(diagonal({n}))");

        assert_eq!(oracle_l_max(&t), n, "oracle L_max(diagonal({n}))");
        let chains = longest_chain(&t, SearchBudget::default()).unwrap();
        assert!(chains.exact);
        assert_eq!(chains.l_max, n, "search L_max(diagonal({n}))");
    }
}

#[test]
fn russell_and_triangular_chain_lengths() {
    // One representative per matched pair gives an easy 3-chain, but the
    // maximum is the full 6: list every pair in both orientations —
    // (0,1),(1,0),(2,3),… — and each diagonal hits a pair (value 0) while
    // each cross either mixes two pairs or degenerates to f(a,a), value 1
    // either way. The side sizes cap chains at 6, so this is exact.
    let r = russell_table(3).unwrap();
    assert_eq!(oracle_l_max(&r), 6);
    let chains = longest_chain(&r, SearchBudget::default()).unwrap();
    assert!(chains.exact);
    assert_eq!(chains.l_max, 6);

    for n in 3..=5 {
        let t = triangular_table(n).unwrap();
        assert_eq!(oracle_l_max(&t), n);
        let chains = longest_chain(&t, SearchBudget::default()).unwrap();
        assert!(chains.exact);
        assert_eq!(chains.l_max, n);
    }
}

#[test]
fn searches_agree_with_oracles_on_all_2x2_tables() {
    let tables = enumerate_tables(&[2, 2], 2).unwrap();
    for table in tables {
        let part = min_partition_size(&table, SearchBudget::default());
        assert!(part.exact);
        assert_eq!(
            part.k_min,
            oracle_k_min(&table),
            "k_min on {:?}",
            table.values
        );
        let chains = longest_chain(&table, SearchBudget::default()).unwrap();
        assert!(chains.exact);
        assert_eq!(
            chains.l_max,
            oracle_l_max(&table),
            "l_max on {:?}",
            table.values
        );
    }
}

#[test]
fn searches_agree_with_oracles_on_seeded_3x3_tables() {
    for seed in 0..40 {
        let table = random_table(&[3, 3], 2, seed).unwrap();
        let part = min_partition_size(&table, SearchBudget::default());
        assert!(part.exact);
        assert_eq!(part.k_min, oracle_k_min(&table), "k_min on seed {seed}");
        let chains = longest_chain(&table, SearchBudget::default()).unwrap();
        assert!(chains.exact);
        assert_eq!(chains.l_max, oracle_l_max(&table), "l_max on seed {seed}");
    }
}

#[test]
fn box_dependence_agrees_with_pairwise_oracle() {
    let mut rng = SplitMix64::new(11);
    for seed in 0..60 {
        let table = random_table(&[3, 4], 3, seed).unwrap();
        // A random nonempty element subset per coordinate.
        let factors: Vec<Vec<usize>> = table
            .domain_sizes
            .iter()
            .map(|&n| {
                let mask = 1 + rng.next_below((1 << n) - 1);
                (0..n).filter(|&e| mask >> e & 1 == 1).collect()
            })
            .collect();
        let cube = SubCube::new(&table, factors.clone()).unwrap();
        let dep = box_dependence(&table, &cube).unwrap();
        assert_eq!(
            dep.status != DependenceStatus::Essential,
            oracle_box_ok(&table, &factors),
            "seed {seed}, factors {factors:?}"
        );
    }
}

#[test]
fn homogeneous_search_agrees_with_subset_enumeration() {
    for seed in 0..30u64 {
        let mut rng = SplitMix64::new(seed);
        let n = 4 + (seed as usize % 6); // 4..=9
        let colors = 2 + (seed as usize % 3); // 2..=4
        let raw: Vec<u8> = (0..n * n * n)
            .map(|_| rng.next_below(colors) as u8)
            .collect();
        let coloring =
            TripleColoring::from_fn(n, colors, |l, m, k| raw[(l * n + m) * n + k]).unwrap();
        for color in 0..colors as u8 {
            let found =
                largest_homogeneous(&coloring, Some(color), SearchBudget::default()).unwrap();
            assert!(found.exact);
            assert_eq!(
                found.indices.len(),
                oracle_largest_homogeneous(&coloring, color),
                "seed {seed}, color {color}"
            );
        }
    }
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    // Sanity on the oracle itself.
    assert_eq!(set_partitions(1).len(), 1);
    assert_eq!(set_partitions(3).len(), 5);
    assert_eq!(set_partitions(5).len(), 52);
}
