use num_complex::Complex64;
use wp_products::transforms::{
    logderiv_n_identity, logderiv_xi_n_sum, modular_period_relations, sigma_n_transform,
    sine_chain, wp_n_identity, wp_prime_n_identity, wp_ratio_identity, xi_n_transform,
    RatioForm, SigmaForm, SineChainExpr, WpNForm,
};
use wp_products::{
    HalfPeriodIndex, Reading, ShiftUnit, Transform, TransformMode, TransformOrder,
    TruncationPolicy, XiIndex,
};

const C: Reading = Reading::Corrected;
const P: Reading = Reading::AsPrinted;
const TWO: ShiftUnit = ShiftUnit::TwoOverN;
const ONE: HalfPeriodIndex = HalfPeriodIndex::ONE;

fn tr(re: f64, im: f64, n: i64) -> Transform<f64> {
    Transform::n_tau(Complex64::new(re, im), n, TruncationPolicy::default()).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

#[test]
fn order_one_is_the_identity() {
    let t = tr(0.2, 1.1, 1);
    let z = Complex64::new(0.4, 0.1);
    for form in [WpNForm::ThetaPrefactor, WpNForm::CotPrefactor] {
        for reading in [C, P] {
            let (l, r) = wp_n_identity(&t, ONE, z, form, reading, ShiftUnit::OneOverN).unwrap();
            assert!(rel(l, r) < 1e-12);
        }
    }
    let e = wp_prime_n_identity(&t, z, C, TWO).unwrap();
    assert!(rel(e.lhs, e.rhs_theta) < 1e-12);
}

#[test]
fn composition_of_two_order_three_steps() {
    // wp(9z, 9 tau) - e1(9 tau) from two tau -> 3 tau steps.
    let tau = Complex64::new(0.1, 0.9);
    let z = Complex64::new(0.07, 0.03);
    let pol = TruncationPolicy::default();
    let step1 = Transform::n_tau(tau, 3, pol).unwrap();
    let step2 = Transform::n_tau(tau * 3.0, 3, pol).unwrap();
    let direct = Transform::n_tau(tau, 9, pol).unwrap();
    // Outer step: wp(9z, 9 tau) - e1 = C2 prod_m [wp(3z + 2m/3, 3 tau) - e1(3 tau)], and each
    // factor is the inner step at z + 2m/9.
    let mut two_steps = Complex64::new(1.0, 0.0);
    for m in 0..3 {
        let zm = z + 2.0 * m as f64 / 9.0;
        let (_, r) = wp_n_identity(&step1, ONE, zm, WpNForm::ThetaPrefactor, C, TWO).unwrap();
        two_steps *= r;
    }
    let pair = |w: &wp_products::Weierstrass64| {
        w.theta_null(wp_products::ThetaIndex::THREE) * w.theta_null(wp_products::ThetaIndex::FOUR)
    };
    let (a, c) = (pair(step2.target()), pair(step2.base()));
    let pref2 = (4.0 / std::f64::consts::PI.powi(2)).powi(2) * a * a / (c * c).powi(3);
    let (lhs9, _) = wp_n_identity(&direct, ONE, z, WpNForm::ThetaPrefactor, C, TWO).unwrap();
    assert!(rel(lhs9, pref2 * two_steps) < 1e-7);
}

#[test]
fn shared_zero_at_a_shifted_half_period() {
    // z = 1 - 2/3 puts z + 2/3 on the half-period 1: both sides vanish.
    let t = tr(0.0, 1.2, 3);
    let z = Complex64::new(1.0 - 2.0 / 3.0, 0.0);
    let (l, r) = wp_n_identity(&t, ONE, z, WpNForm::ThetaPrefactor, C, TWO).unwrap();
    assert!(l.norm() < 1e-10 && r.norm() < 1e-10);
}

#[test]
fn wp_prime_vanishes_when_nz_is_a_half_period() {
    let t = tr(0.3, 1.0, 3);
    let z = Complex64::new(1.0 / 3.0, 0.0);
    let e = wp_prime_n_identity(&t, z, C, TWO).unwrap();
    assert!(e.lhs.norm() < 1e-9);
    assert!(e.rhs_theta.norm() < 1e-9);
}

#[test]
fn ratio_forms_are_even() {
    let t = tr(-0.25, 1.4, 5);
    let z = Complex64::new(0.27, 0.19);
    for form in [RatioForm::HalfRangeSquared, RatioForm::Samples] {
        let (l1, r1) = wp_ratio_identity(&t, ONE, z, form, C, TWO).unwrap();
        let (l2, r2) = wp_ratio_identity(&t, ONE, -z, form, C, TWO).unwrap();
        assert!(rel(l1, l2) < 1e-10 && rel(r1, r2) < 1e-10);
        assert!(rel(l1, r1) < 1e-9);
    }
}

#[test]
fn wp_prime_forms_are_odd() {
    let t = tr(0.35, 1.1, 3);
    let z = Complex64::new(0.22, -0.31);
    let a = wp_prime_n_identity(&t, z, C, TWO).unwrap();
    let b = wp_prime_n_identity(&t, -z, C, TWO).unwrap();
    assert!(rel(a.lhs, -b.lhs) < 1e-10);
    assert!(rel(a.rhs_theta, -b.rhs_theta) < 1e-10);
    assert!(rel(a.rhs_samples, -b.rhs_samples) < 1e-10);
}

#[test]
fn literal_readings_fail() {
    let t = tr(0.13, 1.05, 3);
    let z = Complex64::new(0.31, 0.17);
    let (l, r) = wp_n_identity(&t, ONE, z, WpNForm::ThetaPrefactor, P, ShiftUnit::OneOverN).unwrap();
    assert!(rel(l, r) > 1e-3);
    let (l, r) = wp_n_identity(&t, ONE, z, WpNForm::ThetaPrefactor, C, ShiftUnit::OneOverN).unwrap();
    assert!(rel(l, r) > 1e-3, "m/n shifts are not the n-division points");
    let e = wp_prime_n_identity(&t, z, P, ShiftUnit::TwoPiOverN).unwrap();
    assert!(rel(e.lhs, e.rhs_samples) > 1e-3);
    let p = modular_period_relations(&t, P).unwrap();
    assert!(rel(p.zeros_lhs, p.zeros_rhs) > 1e-3);
    assert!(rel(p.lprime, p.lprime_inverse) > 1e-3);
}

#[test]
fn logderiv_chain_for_j1() {
    let t = tr(0.13, 1.05, 3);
    let z = Complex64::new(0.31, 0.17);
    let d = logderiv_n_identity(&t, ONE, z, C, TWO).unwrap();
    let x = logderiv_xi_n_sum(&t, XiIndex::new(1, 0).unwrap(), z, C).unwrap();
    assert!(rel(d.lhs, d.rhs_sum) < 1e-9);
    assert!(rel(d.lhs / 2.0, x.lhs) < 1e-9);
    assert!(rel(x.lhs, x.shifted_sine.unwrap()) < 1e-9);
    let s = sine_chain(&t, SineChainExpr::Lhs, z, C, TWO).unwrap();
    assert!(rel(-std::f64::consts::PI * s, x.lhs) < 1e-9);
}

#[test]
fn order_one_logderiv_collapses_to_base_values() {
    let t = tr(0.13, 1.05, 1);
    let z = Complex64::new(0.31, 0.17);
    let d = logderiv_n_identity(&t, ONE, z, C, TWO).unwrap();
    let b = t.base();
    let direct = b.wp_prime(z).unwrap() / b.wp_minus_e(ONE, z).unwrap();
    assert!(rel(d.lhs, direct) < 1e-12);
    assert!(rel(d.rhs_theta, direct) < 1e-12);
}

#[test]
fn sigma_quotient_near_origin() {
    let t = tr(0.2, 1.3, 3);
    let u = Complex64::new(1e-4, 0.0);
    for j in 1..=3 {
        let (l, r) = sigma_n_transform(&t, j, u, SigmaForm::Quotient, C, TWO).unwrap();
        assert!(rel(l, r) < 1e-6);
    }
}

#[test]
fn sigma_quotient_squares_to_the_wp_ratio() {
    let t = tr(0.2, 1.3, 3);
    let u = Complex64::new(0.24, 0.13);
    for j in HalfPeriodIndex::ALL {
        let (_, q) = sigma_n_transform(&t, j.get() as u8, u, SigmaForm::Quotient, C, TWO).unwrap();
        let (lhs, _) = wp_n_identity(&t, j, u, WpNForm::ThetaPrefactor, C, TWO).unwrap();
        assert!(rel(q * q, lhs) < 1e-10);
    }
}

#[test]
fn xi_transforms_reciprocal_pairs() {
    let tau = Complex64::new(0.13, 1.05);
    let u = Complex64::new(0.31, 0.17);
    let pol = TruncationPolicy::default();
    for mode in [TransformMode::NTau, TransformMode::TauOverN] {
        let t = Transform::new(tau, TransformOrder::new(3).unwrap(), mode, pol).unwrap();
        let idx = XiIndex::new(2, 3).unwrap();
        let (l1, r1) = xi_n_transform(&t, idx, u, C).unwrap();
        let (l2, r2) = xi_n_transform(&t, idx.swap(), u, C).unwrap();
        assert!(rel(l1 * l2, Complex64::new(1.0, 0.0)) < 1e-10);
        assert!(rel(r1 * r2, Complex64::new(1.0, 0.0)) < 1e-10);
    }
}

#[test]
fn period_relations_at_imaginary_tau() {
    let t = tr(0.0, 1.2, 3);
    let p = modular_period_relations(&t, C).unwrap();
    assert!(rel(p.l, p.l_product) < 1e-8);
    assert!(rel(p.lprime, p.lprime_product) < 1e-8);
    assert!(rel(p.l * p.l + p.lprime * p.lprime, Complex64::new(1.0, 0.0)) < 1e-8);
    assert!(rel(p.zeros_lhs, p.zeros_rhs) < 1e-8);
}

#[test]
fn cot_prefactor_sine_chain_is_inconsistent() {
    // The (4 pi)^{n-1} cot product over k pi/tau does not track the theta2 ratio.
    for (re, im) in [(0.13, 1.05), (-0.3, 1.4)] {
        let t = tr(re, im, 3);
        let z = Complex64::new(0.2, 0.1);
        let lhs = sine_chain(&t, SineChainExpr::Lhs, z, C, TWO).unwrap();
        for reading in [C, P] {
            let v = sine_chain(&t, SineChainExpr::CotProduct, z, reading, ShiftUnit::OneOverN).unwrap();
            assert!(rel(lhs, v) > 1e-3);
        }
    }
}
