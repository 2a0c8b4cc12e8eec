use proptest::prelude::*;
use schubert_fgl::degeneracy::{
    candidate_matrix, essential_sufficiency_check, id_reduction_permutation, random_matrix, satisfies_rank_conditions,
    trial_rng, Conditions, IntMatrix,
};
use schubert_fgl::exec::Strategy;
use schubert_fgl::perm::{essential_set, rank_table, single_condition_permutation, Permutation};

/// Rank by fraction-free elimination over the rationals, kept separate from
/// the library's Bareiss code.
fn oracle_rank(m: &IntMatrix) -> usize {
    use num_rational::BigRational;
    let mut a: Vec<Vec<BigRational>> =
        m.to_rows().iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != BigRational::from_integer(0.into())) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            let f = &a[r][c] / &a[rank][c];
            let pivot = a[rank].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn essential_conditions_imply_all() {
    for n in 2..=4 {
        for w in Permutation::all(n) {
            for trial in 0..200 {
                let m = candidate_matrix(&w, 7, trial);
                assert_eq!(
                    satisfies_rank_conditions(&m, &w, Conditions::All).unwrap(),
                    satisfies_rank_conditions(&m, &w, Conditions::Essential).unwrap(),
                    "{w} trial {trial}: {m}"
                );
            }
        }
    }
}

#[test]
fn sufficiency_reports_are_strategy_independent() {
    let w: Permutation = "[2,4,1,3]".parse().unwrap();
    let a = essential_sufficiency_check(&w, 100, 3, Strategy::Sequential);
    let b = essential_sufficiency_check(&w, 100, 3, Strategy::Parallel);
    assert!(a.passed());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn id_reduction_keeps_length_and_essential_set() {
    for w in Permutation::all(4) {
        let big = id_reduction_permutation(&w);
        assert_eq!(big.n(), 8);
        assert_eq!(big.length(), w.length());
        assert_eq!(essential_set(&big), essential_set(&w));
    }
}

#[test]
fn examples() {
    let w: Permutation = "[1,3,2]".parse().unwrap();
    assert_eq!(essential_set(&w), [(2, 2)].into());
    let m = IntMatrix::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert!(!satisfies_rank_conditions(&m, &w, Conditions::Essential).unwrap());
    assert!(satisfies_rank_conditions(&IntMatrix::permutation(&w), &w, Conditions::All).unwrap());
    assert_eq!(single_condition_permutation(2, 2, 1).unwrap(), w);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_oracle(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let m = random_matrix(&mut trial_rng(seed, 0), rows, cols, 3);
        prop_assert_eq!(m.rank(), oracle_rank(&m));
    }

    #[test]
    fn single_condition_is_one_corner_bound(e in 1usize..4, f in 1usize..4, l in 0usize..4, seed in any::<u64>()) {
        prop_assume!(l <= e.min(f));
        let w = single_condition_permutation(e, f, l).unwrap();
        prop_assert_eq!(rank_table(&w).get(e, f), l);
        let n = w.n();
        for trial in 0..8 {
            let m = candidate_matrix(&w, seed, trial);
            let corner = m.corner_rank(e, f) <= l;
            prop_assert_eq!(satisfies_rank_conditions(&m, &w, Conditions::All).unwrap(), corner);
            let r = random_matrix(&mut trial_rng(seed, trial + 100), n, n, 2);
            prop_assert_eq!(satisfies_rank_conditions(&r, &w, Conditions::All).unwrap(), r.corner_rank(e, f) <= l);
        }
    }
}
