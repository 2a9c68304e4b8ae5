//! Brute-force cross-checks and seeded input generators.
//!
//! Everything here recomputes a quantity the main code paths also
//! produce, using the dumbest correct method available, so the two can
//! be compared on every case at desk scale. Generators are deterministic
//! functions of their seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::{Gf2Matrix, Gf2Vec};
use crate::graded::{GradedMap, GradedSpace};
use crate::modules::{tor_les, ShortExactSeq, TModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("partition enumeration supports dimensions 1..=20, got {0}")]
    PartitionDim(usize),
    #[error("the exhaustive sweep supports max_dim <= 12, got {0}")]
    SweepDim(usize),
    #[error("random modules support total dimension 1..=16, got {0}")]
    RandomDim(usize),
    #[error("brute-force subgroup counting supports rank <= 4, got {0}")]
    BruteRank(usize),
}

/// All integer partitions of n as descending part lists, ordered with the
/// larger first parts first, so [n] opens and [1,...,1] closes the list.
///
/// # Errors
/// Rejects n outside 1..=20.
pub fn enumerate_jordan_types(n: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    if n == 0 || n > 20 {
        return Err(OracleError::PartitionDim(n));
    }
    Ok(partitions(n))
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=remaining.min(cap)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The direct sum of one cyclic block per part: block i spans degrees
/// bases[i] .. bases[i] + parts[i] - 1, with t shifting along it. Within
/// a degree, blocks are ordered by their index.
///
/// # Panics
/// Panics when the two slices have different lengths.
#[must_use]
pub fn module_from_partition(parts: &[usize], bases: &[usize]) -> TModule {
    assert_eq!(parts.len(), bases.len(), "one base degree per part");
    assert!(parts.iter().all(|&p| p > 0), "parts are positive");
    let alive_at = |d: usize| -> Vec<usize> {
        (0..parts.len())
            .filter(|&i| bases[i] <= d && d < bases[i] + parts[i])
            .collect()
    };
    let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &p) in parts.iter().enumerate() {
        for d in bases[i]..bases[i] + p {
            *dims.entry(d).or_insert(0) += 1;
        }
    }
    let pairs: Vec<(usize, usize)> = dims.iter().map(|(&d, &m)| (d, m)).collect();
    let space = GradedSpace::from_dims(&pairs);
    let mut t = GradedMap::zero(space.clone(), space.clone(), 1);
    for &d in dims.keys() {
        let cur = alive_at(d);
        let nxt = alive_at(d + 1);
        if nxt.is_empty() {
            continue;
        }
        let mut block = Gf2Matrix::zeros(nxt.len(), cur.len());
        for (c, i) in cur.iter().enumerate() {
            if let Some(r) = nxt.iter().position(|j| j == i) {
                block.set(r, c, true);
            }
        }
        t.set_block(d, block);
    }
    TModule::new(space, t).expect("shift-one endomorphism by construction")
}

/// A module with `total` basis vectors spread over degrees 0..=4 and a
/// uniformly random t-action (any degree-raising map is nilpotent here).
pub fn random_tmodule<R: Rng>(rng: &mut R, total: usize) -> TModule {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..total {
        *counts.entry(rng.gen_range(0..5)).or_insert(0) += 1;
    }
    let pairs: Vec<(usize, usize)> = counts.iter().map(|(&d, &m)| (d, m)).collect();
    let space = GradedSpace::from_dims(&pairs);
    let mut t = GradedMap::zero(space.clone(), space.clone(), 1);
    let degrees: Vec<usize> = space.degrees().collect();
    for &d in &degrees {
        let rows = space.dim(d + 1);
        let cols = space.dim(d);
        if rows == 0 {
            continue;
        }
        let mut block = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.5) {
                    block.set(r, c, true);
                }
            }
        }
        t.set_block(d, block);
    }
    TModule::new(space, t).expect("shift-one endomorphism by construction")
}

/// Result of one coker/ker dimension sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LemmaSweep {
    pub max_dim: usize,
    pub seed: u64,
    /// Exhaustive cases: one per partition of each m <= max_dim, the
    /// empty module included.
    pub partition_cases: usize,
    /// Random nilpotent actions, 100 per total dimension.
    pub random_cases: usize,
    pub failures: Vec<String>,
}

impl LemmaSweep {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_block_identity(tm: &TModule, expect_sizes: Option<&[usize]>, label: &str) -> Option<String> {
    let bar = tm.bar().space().total_dim();
    let tau = tm.tau().space().total_dim();
    let jt = tm.jordan_type();
    if bar != jt.block_count() || tau != jt.block_count() {
        return Some(format!(
            "{label}: coker dim {bar}, ker dim {tau}, {} blocks",
            jt.block_count()
        ));
    }
    if let Some(sizes) = expect_sizes {
        let got = jt.sizes_desc();
        if got != sizes {
            return Some(format!("{label}: recovered sizes {got:?}, expected {sizes:?}"));
        }
    }
    None
}

/// Checks coker(t) and ker(t) dimensions against the Jordan block count:
/// exhaustively over all partitions of every m <= max_dim (each run once
/// with all blocks based in degree 0 and once with random bases in 0..=4),
/// then on 100 random actions per dimension.
///
/// # Errors
/// Rejects max_dim > 12.
pub fn exhaustive_block_count_sweep(max_dim: usize, seed: u64) -> Result<LemmaSweep, OracleError> {
    if max_dim > 12 {
        return Err(OracleError::SweepDim(max_dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweep = LemmaSweep {
        max_dim,
        seed,
        partition_cases: 0,
        random_cases: 0,
        failures: Vec::new(),
    };
    for m in 0..=max_dim {
        for parts in partitions(m) {
            let canonical = module_from_partition(&parts, &vec![0; parts.len()]);
            if let Some(f) =
                check_block_identity(&canonical, Some(&parts), &format!("partition {parts:?}"))
            {
                sweep.failures.push(f);
            }
            sweep.partition_cases += 1;

            let bases: Vec<usize> = parts.iter().map(|_| rng.gen_range(0..5)).collect();
            let shifted = module_from_partition(&parts, &bases);
            if let Some(f) = check_block_identity(
                &shifted,
                Some(&parts),
                &format!("partition {parts:?} bases {bases:?}"),
            ) {
                sweep.failures.push(f);
            }
        }
    }
    for m in 1..=max_dim {
        for case in 0..100 {
            let tm = random_tmodule(&mut rng, m);
            if let Some(f) =
                check_block_identity(&tm, None, &format!("random dim {m} case {case}"))
            {
                sweep.failures.push(f);
            }
            sweep.random_cases += 1;
        }
    }
    Ok(sweep)
}

/// A seeded random short exact sequence: random ambient module, a
/// t-closed random submodule, and the induced quotient.
///
/// # Errors
/// Rejects max_dim outside 1..=16.
pub fn random_ses(seed: u64, max_dim: usize) -> Result<ShortExactSeq, OracleError> {
    if max_dim == 0 || max_dim > 16 {
        return Err(OracleError::RandomDim(max_dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = rng.gen_range(1..=max_dim);
    let b = random_tmodule(&mut rng, total);
    let degrees: Vec<usize> = b.space().degrees().collect();
    let mut seeds: Vec<(usize, Gf2Vec)> = Vec::new();
    for _ in 0..rng.gen_range(0..=2usize) {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let dim = b.space().dim(d);
        let mut v = Gf2Vec::zeros(dim);
        for i in 0..dim {
            if rng.gen_bool(0.5) {
                v.set(i, true);
            }
        }
        seeds.push((d, v));
    }
    let sub = b.span_closure(&seeds);
    Ok(ShortExactSeq::from_submodule(&b, &sub).expect("closure is t-stable"))
}

/// Result of a seeded six-term-sequence sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TorSweep {
    pub cases: usize,
    pub max_dim: usize,
    pub seed: u64,
    pub failures: Vec<String>,
}

impl TorSweep {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `cases` seeded random short exact sequences through the six-term
/// construction and records every exactness or well-definedness failure.
///
/// # Errors
/// Same dimension bound as [`random_ses`].
pub fn tor_sweep(cases: usize, max_dim: usize, seed: u64) -> Result<TorSweep, OracleError> {
    let mut sweep = TorSweep {
        cases,
        max_dim,
        seed,
        failures: Vec::new(),
    };
    for i in 0..cases {
        let case_seed = seed.wrapping_add(i as u64);
        let s = random_ses(case_seed, max_dim)?;
        match tor_les(&s) {
            Err(e) => sweep.failures.push(format!("seed {case_seed}: {e}")),
            Ok(seq) => {
                for f in seq.exactness_failures() {
                    sweep
                        .failures
                        .push(format!("seed {case_seed}: not exact at {} degree {}", f.spot, f.degree));
                }
            }
        }
    }
    Ok(sweep)
}

/// Counts subgroups of (Z/2Z)^d per rank by scanning every subset of the
/// nonzero vectors for closure under addition.
///
/// # Errors
/// Rejects d > 4 (the scan is exponential in 2^d).
pub fn count_subgroups_oracle(d: usize) -> Result<Vec<usize>, OracleError> {
    if d > 4 {
        return Err(OracleError::BruteRank(d));
    }
    let n = 1usize << d;
    let mut counts = vec![0usize; d + 1];
    for subset in 0u32..(1u32 << (n - 1)) {
        let has = |v: usize| v == 0 || subset & (1 << (v - 1)) != 0;
        let mut closed = true;
        'scan: for a in 1..n {
            if !has(a) {
                continue;
            }
            for b in (a + 1)..n {
                if has(b) && !has(a ^ b) {
                    closed = false;
                    break 'scan;
                }
            }
        }
        if closed {
            let size = subset.count_ones() as usize + 1;
            debug_assert!(size.is_power_of_two(), "closed sets are subgroups");
            counts[size.trailing_zeros() as usize] += 1;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SubgroupLattice;

    /// Partition counts by the pentagonal-number recurrence, independent
    /// of the enumeration.
    fn partition_count(n: usize) -> i64 {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut total = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > m {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                total += sign * p[m - g1 as usize];
                if g2 as usize <= m {
                    total += sign * p[m - g2 as usize];
                }
                k += 1;
            }
            p[m] = total;
        }
        p[n]
    }

    #[test]
    fn partition_enumeration_matches_the_recurrence() {
        assert_eq!(enumerate_jordan_types(1).unwrap(), vec![vec![1]]);
        assert_eq!(enumerate_jordan_types(4).unwrap().len(), 5);
        assert_eq!(enumerate_jordan_types(10).unwrap().len(), 42);
        for n in 1..=20 {
            let got = enumerate_jordan_types(n).unwrap();
            assert_eq!(got.len() as i64, partition_count(n), "count at n = {n}");
            for parts in &got {
                assert_eq!(parts.iter().sum::<usize>(), n);
                assert!(parts.windows(2).all(|w| w[0] >= w[1]), "descending parts");
            }
        }
        assert!(enumerate_jordan_types(0).is_err());
        assert!(enumerate_jordan_types(21).is_err());
    }

    #[test]
    fn partition_modules_recover_their_partition() {
        let tm = module_from_partition(&[3, 1], &[0, 2]);
        assert_eq!(tm.space().total_dim(), 4);
        let jt = tm.jordan_type();
        assert_eq!(jt.sizes_desc(), vec![3, 1]);
        assert_eq!(jt.base_degrees(), vec![0, 2]);
        assert_eq!(tm.bar().space().total_dim(), 2);
        assert_eq!(tm.tau().space().total_dim(), 2);
    }

    #[test]
    fn sweep_counts_and_passes_at_dim_eight() {
        let sweep = exhaustive_block_count_sweep(8, 11).unwrap();
        assert!(sweep.passed(), "failures: {:?}", sweep.failures);
        // Partitions of 0..=8: 1+1+2+3+5+7+11+15+22.
        assert_eq!(sweep.partition_cases, 67);
        assert_eq!(sweep.random_cases, 800);
        assert!(exhaustive_block_count_sweep(13, 0).is_err());
    }

    #[test]
    fn random_sequences_are_deterministic_and_valid() {
        for seed in [0u64, 1, 42, 1000] {
            let a = random_ses(seed, 10).unwrap();
            let b = random_ses(seed, 10).unwrap();
            assert_eq!(a.b.space().dims(), b.b.space().dims());
            assert_eq!(a.inj.to_flat().to_bits(), b.inj.to_flat().to_bits());
            assert_eq!(a.surj.to_flat().to_bits(), b.surj.to_flat().to_bits());
            a.validate().expect("generated sequences are exact");
        }
        assert!(random_ses(3, 0).is_err());
        assert!(random_ses(3, 17).is_err());
    }

    #[test]
    fn tor_sweep_passes_on_a_small_batch() {
        let sweep = tor_sweep(25, 8, 7).unwrap();
        assert!(sweep.passed(), "failures: {:?}", sweep.failures);
        assert_eq!(sweep.cases, 25);
    }

    #[test]
    fn brute_force_subgroup_counts_match_the_lattice() {
        assert_eq!(count_subgroups_oracle(1).unwrap(), vec![1, 1]);
        assert_eq!(count_subgroups_oracle(2).unwrap(), vec![1, 3, 1]);
        assert_eq!(count_subgroups_oracle(3).unwrap(), vec![1, 7, 7, 1]);
        assert_eq!(count_subgroups_oracle(4).unwrap(), vec![1, 15, 35, 15, 1]);
        assert!(count_subgroups_oracle(5).is_err());

        for d in 0..=4 {
            let oracle = count_subgroups_oracle(d).unwrap();
            let lattice = SubgroupLattice::new(d).unwrap();
            let mut by_rank = vec![0usize; d + 1];
            for s in lattice.subgroups() {
                by_rank[s.rank()] += 1;
            }
            assert_eq!(oracle, by_rank, "rank profile at d = {d}");
        }
    }
}
