//! Reference values checked against oracles that share no code with the
//! theta-backed evaluators: lattice sums, Fourier series, Gamma-function
//! closed forms, the Legendre relation and modular homogeneity.

use std::f64::consts::PI;

use num_complex::Complex64;
use wp_products::products::{e_pairwise_products, wp_minus_e_product, wp_prime_product};
use wp_products::sums::{modular_sine_sum, IndexSet};
use wp_products::xi::{moduli, modulus_from_theta, xi};
use wp_products::{HalfPeriodIndex, Reading, ThetaIndex, TruncationPolicy, Weierstrass64, XiIndex};

fn w(re: f64, im: f64) -> Weierstrass64 {
    Weierstrass64::new(Complex64::new(re, im), TruncationPolicy::default()).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_3;

/// `1/z^2 + sum' [1/(z - w)^2 - 1/w^2]` over the symmetric box
/// `|a|, |b| <= n` of lattice points `w = 2a + 2b tau`.
fn wp_lattice_sum(z: Complex64, tau: Complex64, n: i64) -> Complex64 {
    let mut acc = 1.0 / (z * z);
    for a in -n..=n {
        for b in -n..=n {
            if a == 0 && b == 0 {
                continue;
            }
            let om = 2.0 * a as f64 + 2.0 * b as f64 * tau;
            acc += 1.0 / ((z - om) * (z - om)) - 1.0 / (om * om);
        }
    }
    acc
}

/// `sum_{n>=1} n q^{2n}/(1 - q^{2n})`.
fn lambert(q: Complex64) -> Complex64 {
    let q2 = q * q;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = q2;
    for n in 1..400 {
        acc += n as f64 * p / (1.0 - p);
        p *= q2;
        if p.norm() < 1e-30 {
            break;
        }
    }
    acc
}

#[test]
fn wp_matches_lattice_sum() {
    // [DERIVED] direct lattice sum; the tail is O(1/R^2) so 1e-5 is the honest bound.
    for (tau, z) in [
        (Complex64::new(0.0, 1.0), Complex64::new(0.37, 0.21)),
        (Complex64::new(0.3, 1.2), Complex64::new(-0.52, 0.64)),
    ] {
        let ww = Weierstrass64::new(tau, TruncationPolicy::default()).unwrap();
        let want = wp_lattice_sum(z, tau, 400);
        assert!(rel(ww.wp(z).unwrap(), want) < 1e-5, "tau = {tau}");
    }
}

#[test]
fn wp_matches_fourier_series() {
    // [DERIVED] wp = -eta + (pi/2)^2 csc^2(pi z/2) - 2 pi^2 sum n q^{2n}/(1 - q^{2n}) cos(n pi z),
    // with eta = (pi^2/12) E2 = (pi^2/12)(1 - 24 sum n q^{2n}/(1 - q^{2n})).
    let tau = Complex64::new(-0.4, 0.9);
    let ww = Weierstrass64::new(tau, TruncationPolicy::default()).unwrap();
    let q = (Complex64::i() * PI * tau).exp();
    let eta = PI * PI / 12.0 * (1.0 - 24.0 * lambert(q));
    assert!(rel(ww.eta1(), eta) < 1e-12);
    let z = Complex64::new(0.61, -0.33);
    let q2 = q * q;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = q2;
    for n in 1..200 {
        series += n as f64 * p / (1.0 - p) * (n as f64 * PI * z).cos();
        p *= q2;
    }
    let s = (PI * z / 2.0).sin();
    let want = -eta + PI * PI / 4.0 / (s * s) - 2.0 * PI * PI * series;
    assert!(rel(ww.wp(z).unwrap(), want) < 1e-12);
}

#[test]
fn square_lattice_closed_forms() {
    // [DERIVED] lemniscatic case: e1 = Gamma(1/4)^4/(32 pi), e2 = 0, theta3(0, i) = pi^{1/4}/Gamma(3/4).
    let ww = w(0.0, 1.0);
    let e1 = GAMMA_QUARTER.powi(4) / (32.0 * PI);
    assert!((ww.e(HalfPeriodIndex::ONE) - e1).norm() < 1e-12);
    assert!(ww.e(HalfPeriodIndex::TWO).norm() < 1e-12);
    assert!((ww.theta_null(ThetaIndex::THREE) - 1.086_434_811_213_308).norm() < 1e-14);
    let (k, kp) = moduli(&ww).unwrap();
    assert!((k - 0.5f64.sqrt()).norm() < 1e-13);
    assert!((kp - 0.5f64.sqrt()).norm() < 1e-13);
}

#[test]
fn legendre_relation() {
    // [DERIVED] eta1 omega3 - eta3 omega1 = i pi/2 with omega1 = 1, omega3 = tau, eta3 = zeta(tau).
    for (re, im) in [(0.0, 1.0), (0.45, 0.85), (-0.7, 1.6)] {
        let ww = w(re, im);
        let tau = ww.tau();
        let lhs = ww.eta1() * tau - ww.zeta(tau).unwrap();
        assert!((lhs - Complex64::new(0.0, PI / 2.0)).norm() < 1e-11, "tau = {tau}");
        assert!(rel(ww.eta1(), ww.eta1_theta().unwrap()) < 1e-12);
    }
}

#[test]
fn modular_homogeneity() {
    // [DERIVED] {2m + 2n tau} = tau {2m + 2n(-1/tau)}, so wp(z; tau) = tau^{-2} wp(z/tau; -1/tau);
    // the lattice of tau + 1 is the lattice of tau.
    let tau = Complex64::new(0.23, 1.1);
    let a = Weierstrass64::new(tau, TruncationPolicy::default()).unwrap();
    let b = Weierstrass64::new(-1.0 / tau, TruncationPolicy::default()).unwrap();
    let c = Weierstrass64::new(tau + 1.0, TruncationPolicy::default()).unwrap();
    let z = Complex64::new(0.41, 0.27);
    let wz = a.wp(z).unwrap();
    assert!(rel(wz, b.wp(z / tau).unwrap() / (tau * tau)) < 1e-11);
    assert!(rel(wz, c.wp(z).unwrap()) < 1e-11);
    let e1b = b.e(HalfPeriodIndex::ONE);
    assert!(rel(e1b, tau * tau * a.e(HalfPeriodIndex::THREE)) < 1e-11);
    let d = Weierstrass64::new(-1.0 / (1.0 + tau), TruncationPolicy::default()).unwrap();
    let t1 = 1.0 + tau;
    assert!(rel(d.e(HalfPeriodIndex::ONE), t1 * t1 * a.e(HalfPeriodIndex::TWO)) < 1e-11);
}

#[test]
fn derivatives_by_finite_differences() {
    // [DERIVED] central differences: wp' from wp, -wp from zeta, zeta from log sigma.
    let ww = w(0.1, 1.3);
    let z = Complex64::new(0.55, 0.35);
    let h = 1e-5;
    let d = |f: &dyn Fn(Complex64) -> Complex64| (f(z + h) - f(z - h)) / (2.0 * h);
    assert!(rel(ww.wp_prime(z).unwrap(), d(&|x| ww.wp(x).unwrap())) < 1e-8);
    assert!(rel(-ww.wp(z).unwrap(), d(&|x| ww.zeta(x).unwrap())) < 1e-8);
    assert!(rel(ww.zeta(z).unwrap(), d(&|x| ww.sigma(x).unwrap().ln())) < 1e-8);
}

#[test]
fn theta1_prime_is_product_of_nulls() {
    // [PAPER] theta1'(0) = pi theta2(0) theta3(0) theta4(0).
    let ww = w(-0.3, 0.95);
    let p = ww.theta_null(ThetaIndex::TWO) * ww.theta_null(ThetaIndex::THREE) * ww.theta_null(ThetaIndex::FOUR);
    assert!(rel(ww.theta1_prime0(), PI * p) < 1e-13);
}

#[test]
fn e_values_are_wp_at_half_periods() {
    // [PAPER] e1 = wp(1), e2 = wp(1 + tau), e3 = wp(tau).
    let ww = w(0.2, 1.05);
    for j in HalfPeriodIndex::ALL {
        let om = j.omega(ww.lattice());
        assert!(rel(ww.wp(om).unwrap(), ww.e(j)) < 1e-12);
    }
    let s: Complex64 = HalfPeriodIndex::ALL.iter().map(|&j| ww.e(j)).sum();
    assert!(s.norm() < 1e-12);
}

#[test]
fn products_against_lattice_sum() {
    // [DERIVED] the product forms are checked against the lattice sum, not the theta evaluators.
    let tau = Complex64::new(0.0, 1.0);
    let ww = Weierstrass64::new(tau, TruncationPolicy::default()).unwrap();
    let z = Complex64::new(0.37, 0.21);
    let want = wp_lattice_sum(z, tau, 400);
    for j in HalfPeriodIndex::ALL {
        let v = wp_minus_e_product(&ww, j, z).unwrap() + ww.e(j);
        assert!(rel(v, want) < 1e-5);
    }
}

#[test]
fn wp_prime_product_against_finite_difference_of_lattice_sum() {
    // [DERIVED]
    let tau = Complex64::new(0.3, 1.2);
    let ww = Weierstrass64::new(tau, TruncationPolicy::default()).unwrap();
    let z = Complex64::new(-0.52, 0.64);
    let h = 1e-4;
    let fd = (wp_lattice_sum(z + h, tau, 300) - wp_lattice_sum(z - h, tau, 300)) / (2.0 * h);
    assert!(rel(wp_prime_product(&ww, z).unwrap(), fd) < 1e-4);
}

#[test]
fn pairwise_products_are_derivative_values() {
    // [DERIVED] (e_i - e_j)(e_i - e_k) = wp''(omega_i)/2, and wp'' = 6 wp^2 - g2/2.
    let ww = w(0.15, 1.25);
    let e: Vec<Complex64> = HalfPeriodIndex::ALL.iter().map(|&j| ww.e(j)).collect();
    let g2 = -4.0 * (e[0] * e[1] + e[1] * e[2] + e[2] * e[0]);
    let p = e_pairwise_products(&ww).unwrap();
    for (i, idx) in [0usize, 2, 1].iter().enumerate() {
        let second = 6.0 * e[*idx] * e[*idx] - g2 / 2.0;
        assert!(rel(p[i], second / 2.0) < 1e-11, "product {i}");
    }
}

#[test]
fn modular_sine_sums_give_log_derivatives() {
    // [DERIVED] wp'/(wp - e_alpha) by central difference of log(wp - e_alpha).
    let ww = w(0.05, 1.15);
    let z = Complex64::new(0.33, 0.12);
    let h = 1e-5;
    for a in HalfPeriodIndex::ALL {
        let f = |x: Complex64| ww.wp_minus_e(a, x).unwrap().ln();
        let fd = (f(z + h) - f(z - h)) / (2.0 * h);
        let s = modular_sine_sum(&ww, a, z, IndexSet::All, Reading::Corrected).unwrap();
        assert!(rel(-2.0 * PI * s, fd) < 1e-8, "alpha = {a:?}");
    }
}

#[test]
fn modulus_two_ways() {
    // [DERIVED] k = theta2^2/theta3^2 against the sigma-quotient value at omega3.
    let ww = w(0.31, 0.92);
    let (k, _) = moduli(&ww).unwrap();
    assert!(rel(k, modulus_from_theta(&ww)) < 1e-12);
    let x = xi(&ww, XiIndex::new(2, 1).unwrap(), ww.tau()).unwrap();
    assert_eq!(x, k);
}
