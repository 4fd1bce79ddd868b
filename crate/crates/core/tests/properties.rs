//! Invariants of the criteria, scenario and spectral modules, checked on
//! generated inputs.

mod common;

use gspgate::criteria::{verdict_with_gsee_depth, StrictnessReport};
use gspgate::scenario::{max_depth_curve, sweep, Scenario, ScenarioRecord, SweepSpec, SweepVariable};
use gspgate::spectral::{boost_filter_repeated, ground_state, overlap, FilterSpec, SpectralConfig};
use gspgate::{
    booster_depth_model, max_depth, runtime_total, strictness_order, verdict_general, verdict_with_reps,
    Accuracy, BoosterGspModel, DepthUnit, GseeModel, GspCandidate, Reference,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const UNIT: DepthUnit = DepthUnit::CircuitLayers;

fn model(alpha: f64, beta: f64) -> GseeModel {
    GseeModel::new("m", alpha, beta, UNIT).unwrap()
}

fn cand(depth: f64, gamma: f64, p: f64) -> GspCandidate {
    GspCandidate::new("c", depth, gamma, UNIT)
        .unwrap()
        .with_p_succ(p)
        .unwrap()
}

fn accepted(m: &GseeModel, depth: f64, gamma: f64, p: f64, gamma0: f64, eps: f64) -> bool {
    verdict_with_reps(
        m,
        &cand(depth, gamma, p),
        &Reference::new(gamma0).unwrap(),
        &Accuracy::new(eps).unwrap(),
    )
    .unwrap()
    .accepted
}

fn exponents() -> impl Strategy<Value = (f64, f64)> {
    (0.0..4.0f64, 0.0..4.0f64)
}

fn overlap_amp() -> impl Strategy<Value = f64> {
    1e-3..=1.0f64
}

fn accuracy() -> impl Strategy<Value = f64> {
    (-7.0..-0.5f64).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn runtime_and_ratio_forms_agree(
        (alpha, beta) in exponents(),
        gamma in overlap_amp(),
        gamma0 in overlap_amp(),
        depth in 0.0..1e7f64,
        eps in accuracy(),
    ) {
        let v = verdict_general(
            &model(alpha, beta),
            &cand(depth, gamma, 1.0),
            &Reference::new(gamma0).unwrap(),
            &Accuracy::new(eps).unwrap(),
        ).unwrap();
        let runtime = v.detail.runtime_accepts().unwrap();
        // The forms differ only by rounding, so skip ties within a few ulps.
        let (t, t0) = (v.detail.runtime.unwrap(), v.detail.runtime_ref.unwrap());
        prop_assume!((t - t0).abs() > 1e-12 * t0);
        prop_assert_eq!(runtime, v.accepted);
    }
}

proptest! {
    #[test]
    fn runtime_decreases_in_gamma_and_increases_in_depth(
        (alpha, beta) in exponents(),
        g1 in overlap_amp(),
        g2 in overlap_amp(),
        d1 in 0.0..1e6f64,
        d2 in 0.0..1e6f64,
        eps in accuracy(),
    ) {
        let m = model(alpha, beta);
        let acc = Accuracy::new(eps).unwrap();
        let t = |d: f64, g: f64| runtime_total(&m, &cand(d, g, 1.0), &acc).unwrap();
        let (lo, hi) = (g1.min(g2), g1.max(g2));
        prop_assert!(t(d1, hi) <= t(d1, lo));
        let (dl, dh) = (d1.min(d2), d1.max(d2));
        prop_assert!(t(dl, g1) <= t(dh, g1));
    }

    #[test]
    fn acceptance_monotone_in_gamma_p_and_depth(
        (alpha, beta) in exponents(),
        g1 in overlap_amp(),
        g2 in overlap_amp(),
        p1 in 0.01..=1.0f64,
        p2 in 0.01..=1.0f64,
        d1 in 0.0..1e4f64,
        d2 in 0.0..1e4f64,
        gamma0 in overlap_amp(),
        eps in accuracy(),
    ) {
        let m = model(alpha, beta);
        let (glo, ghi) = (g1.min(g2), g1.max(g2));
        if accepted(&m, d1, glo, p1, gamma0, eps) {
            prop_assert!(accepted(&m, d1, ghi, p1, gamma0, eps));
        }
        let (plo, phi) = (p1.min(p2), p1.max(p2));
        if accepted(&m, d1, g1, plo, gamma0, eps) {
            prop_assert!(accepted(&m, d1, g1, phi, gamma0, eps));
        }
        let (dlo, dhi) = (d1.min(d2), d1.max(d2));
        if accepted(&m, dhi, g1, p1, gamma0, eps) {
            prop_assert!(accepted(&m, dlo, g1, p1, gamma0, eps));
        }
    }

    #[test]
    fn max_depth_non_increasing_in_epsilon(
        (alpha, beta) in exponents(),
        gamma in overlap_amp(),
        gamma0 in overlap_amp(),
        e1 in accuracy(),
        e2 in accuracy(),
        p in 0.01..=1.0f64,
    ) {
        let m = model(alpha, beta);
        let r = Reference::new(gamma0).unwrap();
        let bound = |e: f64| max_depth(&m, gamma, &r, &Accuracy::new(e).unwrap(), p).unwrap().value;
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        prop_assert!(bound(lo) >= bound(hi));
        prop_assert!(bound(lo) >= 0.0);
    }

    #[test]
    fn booster_depth_reproduces_qpe_left_hand_side(
        gamma0 in overlap_amp(),
        frac in 0.0..=1.0f64,
        eps in accuracy(),
        delta in (-3.0..0.0f64).prop_map(|e| 10f64.powf(e)),
    ) {
        let gamma = gamma0 + frac * (1.0 - gamma0);
        let b = BoosterGspModel::new(delta, gamma0).unwrap();
        let v = verdict_general(
            &GseeModel::qpe(),
            &b.candidate(gamma, UNIT).unwrap(),
            &Reference::new(gamma0).unwrap(),
            &Accuracy::new(eps).unwrap(),
        ).unwrap();
        let expected = (eps * gamma * gamma + delta * gamma0) / (delta * gamma0);
        prop_assert!((v.lhs - expected).abs() <= 1e-12 * expected);
        prop_assert_eq!(booster_depth_model(&b), 1.0 / (delta * gamma0));
    }

    #[test]
    fn identical_models_give_identical_outcomes(
        (alpha, beta) in exponents(),
        gamma in overlap_amp(),
        gamma0 in overlap_amp(),
        depth in 0.0..1e4f64,
        eps in accuracy(),
    ) {
        let m = model(alpha, beta);
        let StrictnessReport { a, b, implication_holds, .. } = strictness_order(
            &m, &m, &cand(depth, gamma, 1.0), &Reference::new(gamma0).unwrap(), &Accuracy::new(eps).unwrap(),
        ).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(implication_holds, Some(true));
    }

    #[test]
    fn gamma0_sweep_switches_at_most_once(
        (alpha, beta) in exponents(),
        gamma in overlap_amp(),
        depth in 0.0..1e4f64,
        eps in accuracy(),
    ) {
        let base = ScenarioRecord {
            alpha: Some(alpha),
            beta: Some(beta),
            epsilon: Some(eps),
            gamma: Some(gamma),
            depth: Some(depth),
            ..ScenarioRecord::default()
        };
        // Descending gamma0: once accepted, stays accepted.
        let grid: Vec<f64> = (0..40).map(|k| 1.0 - f64::from(k) * 0.0249).collect();
        let report = sweep(&SweepSpec::values(SweepVariable::Gamma0, grid, base)).unwrap();
        let flags: Vec<bool> = report.rows.iter().map(|r| r.accepted).collect();
        let switches = flags.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert!(switches <= 1, "{:?}", flags);
        prop_assert!(!flags[0] || flags.iter().all(|&f| f));
    }

    #[test]
    fn max_depth_curve_non_increasing(
        gamma in overlap_amp(),
        d_gsee in 0.0..1e9f64,
        fractions in proptest::collection::vec(1e-3..=1.0f64, 1..30),
    ) {
        let mut grid: Vec<f64> = fractions.iter().map(|f| f * gamma).collect();
        grid.sort_by(f64::total_cmp);
        let curve = max_depth_curve(gamma, d_gsee, &grid);
        prop_assert!(curve.errors.is_empty());
        prop_assert!(curve.points.windows(2).all(|w| w[1].d_max <= w[0].d_max));
        prop_assert!(curve.points.iter().all(|p| p.d_max >= 0.0));
    }

    #[test]
    fn report_rows_match_standalone_criteria(
        (alpha, beta) in exponents(),
        gamma in overlap_amp(),
        gamma0 in overlap_amp(),
        depth in 0.0..1e4f64,
        p in 0.01..=1.0f64,
        eps in accuracy(),
        d_gsee in proptest::option::of(1.0..1e8f64),
    ) {
        let rec = ScenarioRecord {
            name: Some("s".into()),
            alpha: Some(alpha),
            beta: Some(beta),
            epsilon: Some(eps),
            gamma: Some(gamma),
            gamma0: Some(gamma0),
            depth: Some(depth),
            p_succ: Some(p),
            d_gsee,
            ..ScenarioRecord::default()
        };
        let row = Scenario::try_from(&rec).unwrap().evaluate("").unwrap();
        let m = model(alpha, beta);
        let c = cand(depth, gamma, p);
        let r = Reference::new(gamma0).unwrap();
        let v = match d_gsee {
            Some(d) => verdict_with_gsee_depth(&m, &c, &r, d).unwrap(),
            None => verdict_with_reps(&m, &c, &r, &Accuracy::new(eps).unwrap()).unwrap(),
        };
        prop_assert_eq!(row.lhs.to_bits(), v.lhs.to_bits());
        prop_assert_eq!(row.rhs.to_bits(), v.rhs.to_bits());
        prop_assert_eq!(row.accepted, v.accepted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn overlap_is_a_probability_amplitude(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = common::random_hamiltonian(&mut rng, 48);
        let state = common::random_state(&mut rng, h.dim());
        let spec = ground_state(&h, &SpectralConfig::default()).unwrap();
        let ov = overlap(&state, &spec).unwrap();
        prop_assert!((0.0..=1.0).contains(&ov.gamma));
        prop_assert_eq!(ov.eta, ov.gamma * ov.gamma);
    }

    #[test]
    fn repeated_filtering_never_lowers_overlap(seed in any::<u64>(), rate in 0.05..5.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = common::random_hamiltonian(&mut rng, 32);
        let state = common::random_state(&mut rng, h.dim());
        let cfg = SpectralConfig::default();
        let filter = FilterSpec::exponential(0.0, rate / h.norm_bound().max(1e-3)).unwrap();
        let mut last = 0.0;
        for repeat in 1..=5 {
            let g = boost_filter_repeated(&h, &state, &filter, repeat, &cfg).unwrap().gamma_after;
            prop_assert!(g >= last - 1e-12, "repeat {}: {} < {}", repeat, g, last);
            last = g;
        }
    }
}

#[test]
fn curve_points_above_gamma_are_reported_and_skipped() {
    let curve = max_depth_curve(0.5, 1e6, &[0.25, 0.75, 0.5]);
    assert_eq!(curve.points.len(), 2);
    assert_eq!(curve.errors.len(), 1);
    assert_eq!(curve.points[1].d_max, 0.0);
}
