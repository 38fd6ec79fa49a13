use proptest::collection::vec;
use proptest::prelude::*;

use thinning::{
    acf_sums, default_k_cap, eff, eff_bounds, efford, estimate_acf, fit_ar1_rho, generate_ar1, kopt,
    monotone_theta_bound, nondominated_set, thinning_hurts, upper_bound, AcfSequence, RhoBand, ThetaBound,
    ThinningProblem, DEFAULT_K_LIMIT,
};

/// Nonnegative nonincreasing sequence built from cumulative drops.
fn monotone_acf() -> impl Strategy<Value = AcfSequence> {
    (0.0..0.999f64, vec(0.0..1.0f64, 1..200)).prop_map(|(start, drops)| {
        let total: f64 = drops.iter().sum::<f64>() + 1e-3;
        let mut level = start;
        let values = drops
            .iter()
            .map(|d| {
                let v = level;
                level = (level - start * d / total).max(0.0);
                v
            })
            .collect();
        AcfSequence::truncated(values).unwrap()
    })
}

/// Arbitrary ACF with a positive unthinned variance factor.
fn arbitrary_acf() -> impl Strategy<Value = AcfSequence> {
    vec(-0.3..0.99f64, 1..100).prop_filter_map("variance factor must be positive", |values| {
        let acf = AcfSequence::truncated(values).ok()?;
        let s = acf_sums(&acf, 1).ok()?;
        (1.0 + 2.0 * s.r > 0.0).then_some(acf)
    })
}

#[test]
fn generic_path_matches_ar1_closed_form() {
    for rho in [0.1f64, 0.5, 0.9] {
        // tail below 1e-10 relative
        let len = ((1e-12f64).ln() / rho.ln()).ceil() as usize;
        let acf = AcfSequence::geometric(rho, len).unwrap();
        for theta in [0.1, 1.0, 10.0] {
            let p = ThinningProblem::new(theta, rho).unwrap();
            for k in 1..=50 {
                let a = efford(k, &acf, theta).unwrap();
                let b = eff(k, &p);
                assert!((a - b).abs() <= 1e-8 * b, "rho={rho} theta={theta} k={k}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn estimated_acf_of_white_noise_is_small() {
    let y = generate_ar1(0.0, 100_000, 1.0, 17).unwrap();
    let acf = estimate_acf(&y, 50).unwrap();
    assert!(acf.values().iter().all(|v| v.abs() < 0.02), "{:?}", acf.values());
}

#[test]
fn estimated_acf_of_ar1() {
    let y = generate_ar1(0.9, 1_000_000, 1.0, 23).unwrap();
    let acf = estimate_acf(&y, 1000).unwrap();
    assert!((0.89..=0.91).contains(&acf.values()[0]));
    // the initial positive sequence stops well before max_lag
    assert!(acf.len() < 1000);

    let y = generate_ar1(0.99, 1_000_000, 1.0, 29).unwrap();
    let rho = fit_ar1_rho(&estimate_acf(&y, 1000).unwrap());
    assert!((rho - 0.99).abs() <= 0.01, "{rho}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn hurts_test_matches_efficiency(acf in arbitrary_acf(), k in 1u64..40, theta in 0.0..50.0f64) {
        let e = efford(k, &acf, theta);
        prop_assume!(e.is_ok(), "1 + 2 R_k must be positive");
        let e = e.unwrap();
        prop_assert_eq!(thinning_hurts(k, &acf, theta).unwrap(), e < 1.0);
    }

    #[test]
    fn sums_decompose(acf in arbitrary_acf(), k in 1u64..40) {
        let s = acf_sums(&acf, k).unwrap();
        prop_assert_eq!(s.r_k + s.r_minus_k, s.r);
    }

    #[test]
    fn monotone_bound_guarantees_gain(acf in monotone_acf(), k in 2u64..30, stretch in 0.0..10.0f64) {
        match monotone_theta_bound(&acf, k).unwrap() {
            ThetaBound::Finite(bound) => {
                let theta = bound * (1.0 + stretch);
                prop_assert!(efford(k, &acf, theta).unwrap() >= 1.0 - 1e-12);
            }
            ThetaBound::Unconstrained => {
                prop_assert_eq!(acf_sums(&acf, k).unwrap().r_k, 0.0);
            }
        }
    }

    #[test]
    fn band_sandwich(
        lo in 0.0..0.97f64,
        width in 0.0..0.3f64,
        fractions in vec(0.0..1.0f64, 2000),
        r in 1u64..60,
        s in 1u64..60,
        theta in 0.0..100.0f64,
    ) {
        prop_assume!(r != s);
        let hi = (lo + width).min(0.98);
        let band = RhoBand::new(lo, hi).unwrap();
        let values: Vec<f64> = fractions
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let l = (i + 1) as i32;
                let (a, b) = (lo.powi(l), hi.powi(l));
                a + f * (b - a)
            })
            .collect();
        let acf = AcfSequence::truncated(values).unwrap();
        let ratio = efford(r, &acf, theta).unwrap() / efford(s, &acf, theta).unwrap();
        let (lower, upper) = eff_bounds(r, s, &band, theta).unwrap();
        prop_assert!(lower <= ratio * (1.0 + 1e-12), "{} > {}", lower, ratio);
        prop_assert!(ratio <= upper * (1.0 + 1e-12), "{} > {}", ratio, upper);
    }

    #[test]
    fn band_reciprocity(lo in 0.0..0.99f64, width in 0.0..0.2f64, r in 1u64..500, s in 1u64..500, theta in 0.0..1e3f64) {
        prop_assume!(r != s);
        let band = RhoBand::new(lo, (lo + width).min(0.999)).unwrap();
        let (lower, _) = eff_bounds(r, s, &band, theta).unwrap();
        let upper_rev = upper_bound(s, r, &band, theta).unwrap();
        prop_assert!((lower * upper_rev - 1.0).abs() < 1e-12);
    }

    #[test]
    fn band_degeneracy(rho in 0.0..0.999f64, r in 1u64..500, s in 1u64..500, theta in 0.0..1e3f64) {
        prop_assume!(r != s);
        let band = RhoBand::new(rho, rho).unwrap();
        let (lower, upper) = eff_bounds(r, s, &band, theta).unwrap();
        prop_assert!((upper / lower - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn nondominated_contains_inband_optimum(lo in 0.3..0.99f64, width in 0.0..0.009f64, theta in 0.5..200.0f64, picks in vec(0.0..1.0f64, 50)) {
        let band = RhoBand::new(lo, lo + width).unwrap();
        let set = nondominated_set(&band, theta, default_k_cap(&band, theta).unwrap()).unwrap();
        for t in picks {
            let rho = band.lo() + t * (band.hi() - band.lo());
            let k = kopt(&ThinningProblem::new(theta, rho).unwrap(), DEFAULT_K_LIMIT).unwrap();
            prop_assert!(set.contains(&k), "k={} not in [{}, {}]", k, set[0], set[set.len() - 1]);
        }
    }
}

#[test]
fn degenerate_band_set_is_optimum() {
    for (rho, theta) in [(0.9, 10.0), (0.99, 1.0), (0.5, 100.0), (0.999, 1000.0)] {
        let band = RhoBand::new(rho, rho).unwrap();
        let set = nondominated_set(&band, theta, default_k_cap(&band, theta).unwrap()).unwrap();
        let k = kopt(&ThinningProblem::new(theta, rho).unwrap(), DEFAULT_K_LIMIT).unwrap();
        assert_eq!(set, vec![k], "rho={rho} theta={theta}");
    }
}
