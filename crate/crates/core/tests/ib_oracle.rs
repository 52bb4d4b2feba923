mod common;

use common::*;
use likert_efa::ib::{self, hard_partition, ib_solve, mutual_information, JointDistribution};
use likert_efa::numerics::Matrix;
use rand::Rng;

#[test]
fn mutual_information_matches_entropy_decomposition() {
    let mut r = rng(501);
    for _ in 0..50 {
        let j = random_joint(&mut r, 8, 8);
        let rows = j.probabilities.to_rows();
        let oracle = brute_mi(&rows);
        assert!((mutual_information(&j.probabilities) - oracle).abs() < 1e-12);
        assert!((j.mutual_information() - oracle).abs() < 1e-12);
    }
}

#[test]
fn solver_information_terms_match_oracle() {
    let mut r = rng(502);
    for trial in 0..20 {
        let j = random_joint(&mut r, 8, 8);
        let s = ib_solve(&j, 3, 5.0, trial, 2).unwrap();
        let i_xt = brute_mi(&joint_x_t(&j.p_x(), &s.p_t_given_x));
        let i_ty = brute_mi(&joint_t_y(&s.p_t, &s.p_y_given_t));
        assert!((s.i_xt - i_xt).abs() < 1e-12, "{} vs {i_xt}", s.i_xt);
        assert!((s.i_ty - i_ty).abs() < 1e-12, "{} vs {i_ty}", s.i_ty);
        assert!((s.l_value - (s.i_xt - 5.0 * s.i_ty)).abs() < 1e-10);
    }
}

#[test]
fn functional_never_increases() {
    let mut r = rng(503);
    for trial in 0..50 {
        let nx = r.random_range(3..=8);
        let ny = r.random_range(2..=8);
        let j = random_joint(&mut r, nx, ny);
        let t = r.random_range(1..=nx);
        let beta = r.random_range(0.0..50.0);
        let s = ib_solve(&j, t, beta, trial, 1).unwrap();
        assert!(s.l_history.len() >= 2);
        for w in s.l_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "L rose from {} to {}", w[0], w[1]);
        }
    }
}

#[test]
fn zero_beta_compresses_completely() {
    let mut r = rng(504);
    for trial in 0..20 {
        let j = random_joint(&mut r, 6, 5);
        let s = ib_solve(&j, 3, 0.0, trial, 3).unwrap();
        assert!(s.i_xt <= 1e-6, "I(X;T) = {}", s.i_xt);
    }
}

#[test]
fn no_bottleneck_keeps_all_relevance() {
    let mut r = rng(505);
    for trial in 0..10 {
        let j = duplicate_free_joint(&mut r);
        let s = ib_solve(&j, j.x_count(), 100.0, trial, 10).unwrap();
        let p = hard_partition(&s);
        assert_eq!(p.non_empty_groups(), j.x_count(), "hard readout should be the identity partition");
        assert!((s.i_ty - j.mutual_information()).abs() <= 1e-6);
    }
}

/// Rows concentrated on different respondents so every pair is far apart.
fn duplicate_free_joint(r: &mut rand_chacha::ChaCha8Rng) -> JointDistribution {
    let nx = 5;
    let ny = 10;
    let mut w = Matrix::zeros(nx, ny);
    for x in 0..nx {
        for y in 0..ny {
            w[(x, y)] = if y / 2 == x { r.random_range(4.0..6.0) } else { r.random_range(0.05..0.2) };
        }
    }
    JointDistribution::from_weights(labels("x", nx), labels("y", ny), w).unwrap()
}

#[test]
fn duplicate_rows_co_cluster_and_match_exhaustive_optimum() {
    let mut r = rng(506);
    let beta = 20.0;
    for trial in 0..20 {
        let j = duplicate_row_joint(&mut r, 8);
        let s = ib_solve(&j, 2, beta, trial, 10).unwrap();
        let p = hard_partition(&s);
        assert_eq!(p.group_of("x0"), p.group_of("x1"), "trial {trial}");

        let best = all_two_partitions(6)
            .into_iter()
            .min_by(|a, b| {
                hard_functional(&j.probabilities, a, 2, beta).total_cmp(&hard_functional(&j.probabilities, b, 2, beta))
            })
            .unwrap();
        assert_eq!(best[0], best[1], "exhaustive optimum splits the duplicates");
        let found = partition_assignment(&p, &j.x_labels);
        let found_rel = hard_relevance(&j.probabilities, &found, 2);
        let best_rel = hard_relevance(&j.probabilities, &best, 2);
        assert!((found_rel - best_rel).abs() < 1e-6, "{found_rel} vs {best_rel}");
    }
}

#[test]
fn relevance_grows_with_beta() {
    let mut r = rng(507);
    let j = duplicate_row_joint(&mut r, 8);
    let sweep = ib::beta_sweep(&j, 2, &[0.0, 50.0], 1, 5).unwrap();
    assert!(sweep[1].1.i_ty > sweep[0].1.i_ty);
    let wide = ib::beta_sweep(&j, 2, &[0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0], 1, 5).unwrap();
    for w in wide.windows(2) {
        assert!(w[1].1.i_ty >= w[0].1.i_ty - 1e-3);
    }
}
