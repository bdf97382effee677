mod common;

use ecic::colsearch::SearchLimits;
use ecic::ecic::{
    construct_random, max_delta, min_rank, search_min_length, verify, verify_with, SearchStatus, VerifyCaps,
    VerifyMethod,
};
use ecic::galois::{FieldSpec, FqMatrix};
use ecic::instance::IcsiInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn field(q: u32) -> FieldSpec {
    FieldSpec::from_order(q).unwrap()
}

#[test]
fn span_and_enumeration_agree_with_oracle() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = [2, 3][seed as usize % 2];
        let f = field(q);
        let n = rng.gen_range(1..=6);
        let inst = random_instance(&mut rng, n);
        let len = rng.gen_range(1..=7);
        let l = random_matrix(&mut rng, &f, n, len);
        let delta = rng.gen_range(0..=2);
        let span = verify_with(&inst, &l, delta, Some(VerifyMethod::SpanDistance), VerifyCaps::default()).unwrap();
        let en = verify_with(&inst, &l, delta, Some(VerifyMethod::Enumeration), VerifyCaps::default()).unwrap();
        let oracle = min_weight_over_i(&inst, &l).unwrap();
        assert_eq!((span.ok, span.min_weight), (en.ok, en.min_weight), "seed {seed}");
        assert_eq!(span.min_weight, oracle, "seed {seed}");
        assert_eq!(span.ok, oracle > 2 * delta, "seed {seed}");
        for r in [&span, &en] {
            assert_eq!(r.witness.is_some(), !r.ok);
            if let Some(z) = &r.witness {
                assert_eq!(weight(&combine(&f, z, &l)), r.min_weight, "seed {seed}");
                assert!(i_vectors(&inst, q).contains(z), "seed {seed}: witness outside I");
            }
        }
        if (q as u128).pow(n as u32) <= 243 {
            assert_eq!(span.ok, corrects_by_definition(&inst, &l, delta), "seed {seed}");
        }
    }
}

#[test]
fn zero_errors_is_the_span_condition() {
    for seed in 0..150u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field([2, 3, 4][seed as usize % 3]);
        let n = rng.gen_range(1..=5);
        let inst = random_instance(&mut rng, n);
        let len = rng.gen_range(1..=5);
        let l = random_matrix(&mut rng, &f, n, len);
        let decodable = (0..inst.m()).all(|i| {
            let y = inst.y_set(i).unwrap();
            let ly = l.select_rows(&y);
            let mut with_f = y.clone();
            with_f.push(inst.demand(i));
            let base = if y.is_empty() { 0 } else { ly.rank() };
            l.select_rows(&with_f).rank() > base
        });
        assert_eq!(verify(&inst, &l, 0).unwrap().ok, decodable, "seed {seed}");
    }
}

#[test]
fn shortest_error_free_code_has_min_rank_length() {
    let limits = SearchLimits::default();
    for seed in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field([2, 3][seed as usize % 2]);
        let n = rng.gen_range(1..=4);
        let inst = random_instance(&mut rng, n);
        let kappa = min_rank(&inst, &f, 1 << 30).unwrap().kappa;
        let s = search_min_length(&inst, &f, 0, 8, &limits).unwrap();
        assert_eq!(s.status, SearchStatus::Optimal);
        assert_eq!(s.n_opt, Some(kappa), "seed {seed}");
        assert!(verify(&inst, s.certificate.as_ref().unwrap(), 0).unwrap().ok);
    }
}

fn relabel(inst: &IcsiInstance, perm: &[usize]) -> IcsiInstance {
    IcsiInstance::new(
        inst.n(),
        inst.demands().iter().map(|&d| perm[d]).collect(),
        inst.side_sets().iter().map(|s| s.iter().map(|&j| perm[j]).collect()).collect(),
    )
    .unwrap()
}

#[test]
fn message_and_column_permutations_preserve_verification() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field([2, 3][seed as usize % 2]);
        let n = rng.gen_range(2..=5);
        let inst = random_instance(&mut rng, n);
        let len = rng.gen_range(1..=6);
        let l = random_matrix(&mut rng, &f, n, len);
        let delta = rng.gen_range(0..=1);
        let base = verify(&inst, &l, delta).unwrap();

        let perm = shuffled(&mut rng, &(0..n).collect::<Vec<_>>());
        let mut inverse = vec![0; n];
        for (a, &b) in perm.iter().enumerate() {
            inverse[b] = a;
        }
        let moved = l.select_rows(&inverse);
        let r = verify(&relabel(&inst, &perm), &moved, delta).unwrap();
        assert_eq!((r.ok, r.min_weight), (base.ok, base.min_weight), "seed {seed}");

        let cols = shuffled(&mut rng, &(0..len).collect::<Vec<_>>());
        let r = verify(&inst, &l.select_cols(&cols), delta).unwrap();
        assert_eq!((r.ok, r.min_weight), (base.ok, base.min_weight), "seed {seed}");
    }
}

#[test]
fn optimum_sits_between_singleton_and_kappa_concatenation() {
    let f = field(2);
    let limits = SearchLimits::default();
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + seed);
        let n = rng.gen_range(1..=4);
        let inst = random_instance(&mut rng, n);
        let kappa = min_rank(&inst, &f, 1 << 30).unwrap().kappa;
        let s = search_min_length(&inst, &f, 1, 12, &limits).unwrap();
        let n_opt = s.n_opt.unwrap();
        assert!(n_opt >= kappa + 2, "seed {seed}");
        // repetition code of length 3 on each of the kappa symbols
        assert!(n_opt <= 3 * kappa, "seed {seed}");
        assert!(corrects_by_definition(&inst, s.certificate.as_ref().unwrap(), 1));
    }
}

#[test]
fn max_delta_is_tight() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field([2, 3][seed as usize % 2]);
        let n = rng.gen_range(1..=4);
        let inst = random_instance(&mut rng, n);
        let len = rng.gen_range(1..=8);
        let l = random_matrix(&mut rng, &f, n, len);
        match max_delta(&inst, &l).unwrap() {
            Some(d) => {
                assert!(verify(&inst, &l, d).unwrap().ok);
                assert!(!verify(&inst, &l, d + 1).unwrap().ok);
            }
            None => assert!(!verify(&inst, &l, 0).unwrap().ok),
        }
    }
}

#[test]
fn random_construction_is_seed_deterministic() {
    let inst = ecic::golden::example1();
    let f = field(2);
    let a = construct_random(&inst, &f, 1, 4, 11, 1000).unwrap();
    let b = construct_random(&inst, &f, 1, 4, 11, 1000).unwrap();
    assert_eq!(a.attempts, b.attempts);
    let m: &FqMatrix = a.matrix.as_ref().unwrap();
    assert_eq!(Some(m), b.matrix.as_ref());
    assert!(corrects_by_definition(&inst, m, 1));
}
