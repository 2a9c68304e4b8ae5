//! Randomized invariants of the linear-algebra and module layers.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gysin_core::builtin;
use gysin_core::format;
use gysin_core::gf2::Quotient;
use gysin_core::modules::tor_les;
use gysin_core::oracle;
use gysin_core::{Gf2Matrix, Gf2Vec, Subspace, SubgroupLattice, VerifyOptions};

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..=1, c), r)
            .prop_map(|rows| Gf2Matrix::from_bits(&rows))
    })
}

fn arb_vec(len: usize) -> impl Strategy<Value = Gf2Vec> {
    prop::collection::vec(0u8..=1, len).prop_map(|bits| Gf2Vec::from_bits(&bits))
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_the_column_count(m in arb_matrix(8, 8)) {
        let rank = m.rank();
        let kernel = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), m.ncols());
        prop_assert_eq!(m.image_basis().len(), rank);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        let col_span = Subspace::from_spanning(
            m.nrows(),
            &(0..m.ncols()).map(|c| m.col(c)).collect::<Vec<_>>(),
        );
        for v in m.image_basis() {
            prop_assert!(col_span.contains(&v));
        }
    }

    #[test]
    fn rref_is_idempotent(m in arb_matrix(8, 8)) {
        let once = m.rref();
        prop_assert_eq!(once.rref(), once.clone());
        prop_assert_eq!(once.rank(), m.rank());
    }

    #[test]
    fn solve_finds_actual_solutions(m in arb_matrix(7, 7), seed_bits in prop::collection::vec(0u8..=1, 7)) {
        let x = Gf2Vec::from_bits(&seed_bits[..m.ncols()]);
        let b = m.mul_vec(&x);
        let y = m.solve(&b);
        prop_assert!(y.is_some(), "a constructed right-hand side must be solvable");
        prop_assert_eq!(m.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn solutions_returned_by_solve_are_valid(m in arb_matrix(7, 7), bits in prop::collection::vec(0u8..=1, 7)) {
        let b = Gf2Vec::from_bits(&bits[..m.nrows()]);
        if let Some(y) = m.solve(&b) {
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }

    #[test]
    fn spans_have_a_canonical_basis(vectors in prop::collection::vec(arb_vec(6), 1..5)) {
        let s = Subspace::from_spanning(6, &vectors);
        let mut scrambled: Vec<Gf2Vec> = vectors.iter().rev().cloned().collect();
        if scrambled.len() >= 2 {
            let mut mixed = scrambled[0].clone();
            mixed.xor_assign(&scrambled[1]);
            scrambled.push(mixed);
        }
        let t = Subspace::from_spanning(6, &scrambled);
        prop_assert_eq!(s, t);
    }

    #[test]
    fn coordinates_invert_the_inclusion(vectors in prop::collection::vec(arb_vec(6), 1..5), picks in prop::collection::vec(any::<bool>(), 5)) {
        let s = Subspace::from_spanning(6, &vectors);
        let mut v = Gf2Vec::zeros(6);
        for (i, b) in s.basis().iter().enumerate() {
            if picks[i % picks.len()] {
                v.xor_assign(b);
            }
        }
        let c = s.coordinates(&v);
        prop_assert!(c.is_some());
        prop_assert_eq!(s.inclusion_matrix().mul_vec(&c.unwrap()), v);
    }

    #[test]
    fn quotient_projection_splits(vectors in prop::collection::vec(arb_vec(6), 0..4), bits in prop::collection::vec(0u8..=1, 6)) {
        let s = Subspace::from_spanning(6, &vectors);
        let q = Quotient::by(s.clone());
        for b in s.basis() {
            prop_assert!(q.project(b).is_zero());
        }
        let class = Gf2Vec::from_bits(&bits[..q.dim()]);
        prop_assert_eq!(q.project(&q.lift(&class)), class);
    }

    #[test]
    fn block_structure_matches_coker_and_ker(seed in any::<u64>(), total in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tm = oracle::random_tmodule(&mut rng, total);
        let jt = tm.jordan_type();
        prop_assert_eq!(tm.bar().space().total_dim(), jt.block_count());
        prop_assert_eq!(tm.tau().space().total_dim(), jt.block_count());
        prop_assert_eq!(jt.total(), tm.space().total_dim());
    }

    #[test]
    fn partitions_round_trip_through_modules(mut parts in prop::collection::vec(1usize..=4, 1..4), bases in prop::collection::vec(0usize..=3, 4)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let tm = oracle::module_from_partition(&parts, &bases[..parts.len()]);
        prop_assert_eq!(tm.jordan_type().sizes_desc(), parts);
    }

    #[test]
    fn six_term_sequences_are_exact_on_random_input(seed in any::<u64>()) {
        let ses = oracle::random_ses(seed, 10).expect("dimension bound holds");
        let seq = tor_les(&ses).expect("random submodule sequences are well-posed");
        prop_assert!(seq.exactness_failures().is_empty());
    }

    #[test]
    fn covering_functionals_cut_out_exactly_the_subgroup(d in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let lattice = SubgroupLattice::new(d).unwrap();
        let pair = &lattice.pairs()[pick.index(lattice.pairs().len())];
        let lambda = &pair.quotient_functional;
        for v in pair.sup.elements() {
            prop_assert_eq!(!lambda.evaluate(v), pair.sub.contains_vector(v));
        }
    }

    #[test]
    fn sphere_files_round_trip_exactly(n in 1usize..=6) {
        let f = builtin::sphere(n).unwrap();
        let text = format::to_json(&f).unwrap();
        let back = format::parse_json(&text).unwrap();
        prop_assert_eq!(format::to_json(&back).unwrap(), text);
    }

    #[test]
    fn corrupted_json_is_an_error_not_a_panic(cut in any::<prop::sample::Index>(), junk in "[ \\[\\]{}0-9,\"a-z]{0,12}") {
        let mut text = format::to_json(&builtin::example_2_2_4_1()).unwrap();
        let at = cut.index(text.len());
        if text.is_char_boundary(at) {
            text.truncate(at);
            text.push_str(&junk);
        }
        let _ = format::parse_json(&text);
    }
}

#[test]
fn verification_is_deterministic_across_thread_counts() {
    let f = builtin::product_spheres(&[1, 2]).unwrap();
    let one = f.verify(&VerifyOptions { relax_rho: false, threads: 1 });
    let four = f.verify(&VerifyOptions { relax_rho: false, threads: 4 });
    assert_eq!(one, four);
    let ex = builtin::example_2_2_4_1();
    assert_eq!(
        ex.verify(&VerifyOptions { relax_rho: false, threads: 1 }),
        ex.verify(&VerifyOptions { relax_rho: false, threads: 3 })
    );
}
