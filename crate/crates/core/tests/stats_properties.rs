mod common;

use common::t_cdf_by_quadrature;
use hypolab_core::stats::{
    classify, classify_outcome, paired_t_test, t_cdf, Alpha, ComparisonOutcome,
};
use proptest::prelude::*;

#[test]
fn t_cdf_matches_quadrature_on_full_grid() {
    let mut worst = 0.0f64;
    for df in 1..=100u64 {
        for step in 1..=100 {
            let t = step as f64 * 0.1;
            let err = (t_cdf(t, df).unwrap() - t_cdf_by_quadrature(t, df)).abs();
            worst = worst.max(err);
            assert!(err <= 1e-8, "t = {t}, df = {df}: error {err:e}");
        }
    }
    assert!(worst < 1e-8);
}

#[test]
fn quadrature_oracle_reproduces_cauchy() {
    assert!((t_cdf_by_quadrature(1.0, 1) - 0.75).abs() < 1e-12);
    assert!(
        (t_cdf_by_quadrature(-3.0, 1) - (0.5 + (-3.0f64).atan() / std::f64::consts::PI)).abs()
            < 1e-12
    );
}

fn scores(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..=1.0, len)
}

fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..60).prop_flat_map(|n| (scores(n), scores(n)))
}

fn outcome_at(p: f64, diff: f64, alpha: f64) -> ComparisonOutcome {
    classify(p, diff, Alpha::new(alpha).unwrap())
}

proptest! {
    #[test]
    fn swapping_sides_mirrors_the_test((a, b) in pair(), alpha in 0.001f64..0.5) {
        let ab = paired_t_test(&a, &b).unwrap();
        let ba = paired_t_test(&b, &a).unwrap();
        prop_assert!((ab.mean_diff + ba.mean_diff).abs() < 1e-12);
        if ab.t_stat.is_finite() {
            prop_assert!((ab.t_stat + ba.t_stat).abs() <= 1e-9 * ab.t_stat.abs().max(1.0));
        } else {
            prop_assert_eq!(ab.t_stat, -ba.t_stat);
        }
        prop_assert!((ab.p_value - ba.p_value).abs() < 1e-12);
        let alpha = Alpha::new(alpha).unwrap();
        prop_assert_eq!(classify_outcome(&ab, alpha).mirrored(), classify_outcome(&ba, alpha));
    }

    #[test]
    fn shifting_both_sides_changes_only_means((a, b) in pair(), shift in -5.0f64..5.0) {
        let base = paired_t_test(&a, &b).unwrap();
        let sa: Vec<f64> = a.iter().map(|x| x + shift).collect();
        let sb: Vec<f64> = b.iter().map(|x| x + shift).collect();
        let shifted = paired_t_test(&sa, &sb).unwrap();
        prop_assert!((shifted.mean_diff - base.mean_diff).abs() < 1e-9);
        prop_assert!((shifted.sd_diff - base.sd_diff).abs() < 1e-9);
        prop_assert!((shifted.p_value - base.p_value).abs() < 1e-6);
        prop_assert_eq!(shifted.df, base.df);
        prop_assert!((shifted.mean_a - base.mean_a - shift).abs() < 1e-9);
    }

    #[test]
    fn test_invariants((a, b) in pair()) {
        let t = paired_t_test(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&t.p_value));
        prop_assert!((t.mean_diff - (t.mean_a - t.mean_b)).abs() <= 1e-12);
        prop_assert_eq!(t.df as usize, a.len() - 1);
        if t.sd_diff > 0.0 && t.mean_diff != 0.0 {
            prop_assert_eq!(t.t_stat.signum(), t.mean_diff.signum());
        }
    }

    #[test]
    fn p_decreases_with_t(df in 1u64..200, t1 in 0.0f64..8.0, gap in 0.01f64..4.0) {
        let p = |t: f64| 2.0 * (1.0 - t_cdf(t, df).unwrap());
        prop_assert!(p(t1 + gap) < p(t1));
    }

    #[test]
    fn stricter_alpha_never_adds_significance(
        p in 0.0f64..=1.0,
        diff in -1.0f64..1.0,
        a1 in 0.0001f64..0.9999,
        a2 in 0.0001f64..0.9999,
    ) {
        let (strict, loose) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
        if outcome_at(p, diff, loose) == ComparisonOutcome::Indistinguishable {
            prop_assert_eq!(outcome_at(p, diff, strict), ComparisonOutcome::Indistinguishable);
        }
    }
}
