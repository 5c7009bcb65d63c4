//! Dilogarithm and Bloch-Wigner values against oracles that do not share
//! code with the library: slow direct series, block sums of Fourier series
//! and quadrature of the defining integral.

use std::f64::consts::PI;

use proptest::prelude::*;
use yokota_core::numerics::{bloch_wigner, li2};
use yokota_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Kahan-compensated sum, accumulating from the smallest terms.
fn kahan<I: DoubleEndedIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms.rev() {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

/// `sum_{k<N} 1/k^2` plus the Euler-Maclaurin tail `1/N + 1/(2N^2) + 1/(6N^3)`,
/// whose error is below `1/(30 N^5)`.
fn zeta2_oracle() -> f64 {
    let n = 100_000u64;
    let head = kahan((1..n).map(|k| 1.0 / (k as f64 * k as f64)).collect::<Vec<_>>().into_iter());
    let nf = n as f64;
    head + 1.0 / nf + 1.0 / (2.0 * nf * nf) + 1.0 / (6.0 * nf * nf * nf)
}

/// Alternating series `sum (-1)^k / k^2` summed in pairs.
fn alternating_oracle() -> f64 {
    let pairs = 2_000_000u64;
    kahan(
        (0..pairs)
            .map(|j| {
                let a = (2 * j + 1) as f64;
                let b = (2 * j + 2) as f64;
                -1.0 / (a * a) + 1.0 / (b * b)
            })
            .collect::<Vec<_>>()
            .into_iter(),
    )
}

fn half_series_oracle() -> f64 {
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 1..200 {
        pow *= 0.5;
        sum += pow / (k as f64 * k as f64);
    }
    sum
}

/// Catalan's constant `sum_j (-1)^j / (2j+1)^2` = `Im Li2(i)` in blocks of two.
fn catalan_oracle() -> f64 {
    kahan(
        (0..2_000_000u64)
            .map(|j| {
                let a = (4 * j + 1) as f64;
                let b = (4 * j + 3) as f64;
                1.0 / (a * a) - 1.0 / (b * b)
            })
            .collect::<Vec<_>>()
            .into_iter(),
    )
}

/// Clausen sum `sum sin(k pi/3) / k^2` grouped over its period of 6.
fn clausen_third_oracle() -> f64 {
    let h = 3f64.sqrt() / 2.0;
    h * kahan(
        (0..1_000_000u64)
            .map(|j| {
                let b = 6.0 * j as f64;
                let sq = |x: f64| 1.0 / (x * x);
                sq(b + 1.0) + sq(b + 2.0) - sq(b + 4.0) - sq(b + 5.0)
            })
            .collect::<Vec<_>>()
            .into_iter(),
    )
}

/// `-int_0^z log(1 - t)/t dt` along the segment, by composite Gauss-Legendre.
fn quadrature_li2(z: Complex64) -> Complex64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let panels = 400;
    let mut sum = c(0.0, 0.0);
    for p in 0..panels {
        let a = p as f64 / panels as f64;
        let h = 1.0 / panels as f64;
        for (x, w) in NODES {
            let s = a + h * (x + 1.0) / 2.0;
            let t = z * s;
            // log(1 - t)/t dt with dt = z ds
            let f = if s == 0.0 { c(-1.0, 0.0) * z } else { (c(1.0, 0.0) - t).ln() / s };
            sum += f * (w * h / 2.0);
        }
    }
    -sum
}

fn direct_series(z: Complex64, terms: usize) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut pow = c(1.0, 0.0);
    for k in 1..=terms {
        pow *= z;
        sum += pow / (k * k) as f64;
    }
    sum
}

#[test]
fn li2_special_values_against_series() {
    let zeta2 = zeta2_oracle();
    assert!((zeta2 - PI * PI / 6.0).abs() < 1e-13, "oracle itself drifted: {zeta2}");
    assert!((li2(c(1.0, 0.0)).unwrap().re - zeta2).abs() < 1e-13);
    assert!((li2(c(-1.0, 0.0)).unwrap().re - alternating_oracle()).abs() < 1e-13);
    assert!((li2(c(0.5, 0.0)).unwrap().re - half_series_oracle()).abs() < 1e-15);
    assert_eq!(li2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
}

#[test]
fn bloch_wigner_special_values() {
    let catalan = catalan_oracle();
    assert!((catalan - 0.915_965_594_177_219).abs() < 1e-13);
    assert!((bloch_wigner(c(0.0, 1.0)).unwrap() - catalan).abs() < 1e-12);

    let clausen = clausen_third_oracle();
    assert!((clausen - 1.014_941_606_409_653_6).abs() < 1e-12);
    let w = Complex64::from_polar(1.0, PI / 3.0);
    assert!((bloch_wigner(w).unwrap() - clausen).abs() < 1e-12);

    for x in [-7.5, -1.0, -1e-3, 0.25, 0.999, 1.001, 2.0, 1e6] {
        assert_eq!(bloch_wigner(c(x, 0.0)).unwrap(), 0.0);
    }
}

#[test]
fn li2_against_direct_series_inside_disk() {
    let mut worst: f64 = 0.0;
    for i in 0..60 {
        let theta = 0.1 + i as f64 * 0.1;
        for r in [0.55, 0.7, 0.85] {
            let z = Complex64::from_polar(r, theta);
            let got = li2(z).unwrap();
            let want = direct_series(z, 400);
            worst = worst.max((got - want).norm() / want.norm().max(1e-3));
        }
    }
    assert!(worst < 1e-13, "worst relative error {worst}");
}

#[test]
fn li2_against_quadrature() {
    let mut worst: f64 = 0.0;
    for &(re, im) in &[(2.0, 0.5), (3.0, -1.0), (-4.0, 2.0), (0.5, 3.0), (-0.3, -0.8), (1.2, 0.4), (5.0, 4.0)] {
        let z = c(re, im);
        let got = li2(z).unwrap();
        let want = quadrature_li2(z);
        worst = worst.max((got - want).norm() / want.norm());
    }
    assert!(worst < 1e-12, "worst relative error {worst}");
}

#[test]
fn li2_jump_across_cut() {
    for x in [1.5, 2.0, 10.0, 123.0] {
        let eps = 1e-11;
        let above = li2(c(x, eps)).unwrap();
        let below = li2(c(x, -eps)).unwrap();
        assert!((above.im - below.im - 2.0 * PI * f64::ln(x)).abs() < 1e-9, "x = {x}");
        assert!((above.re - below.re).abs() < 1e-9);
    }
}

fn off_axis() -> impl Strategy<Value = Complex64> {
    (-6.0..6.0f64, 0.05..6.0f64, any::<bool>()).prop_map(|(re, im, up)| c(re, if up { im } else { -im }))
}

fn generic_point() -> impl Strategy<Value = Complex64> {
    (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(re, im)| c(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inversion(z in off_axis()) {
        let e = bloch_wigner(z.inv()).unwrap() + bloch_wigner(z).unwrap();
        prop_assert!(e.abs() < 1e-11, "error {}", e);
    }

    #[test]
    fn conjugation(z in off_axis()) {
        let e = bloch_wigner(z.conj()).unwrap() + bloch_wigner(z).unwrap();
        prop_assert!(e.abs() < 1e-11, "error {}", e);
    }

    #[test]
    fn reflection(z in off_axis()) {
        let e = bloch_wigner(c(1.0, 0.0) - z).unwrap() + bloch_wigner(z).unwrap();
        prop_assert!(e.abs() < 1e-11, "error {}", e);
    }

    #[test]
    fn five_term(x in generic_point(), y in generic_point()) {
        let one = c(1.0, 0.0);
        let xy = x * y;
        prop_assume!(x.norm() > 0.05 && y.norm() > 0.05);
        prop_assume!((one - x).norm() > 0.05 && (one - y).norm() > 0.05 && (one - xy).norm() > 0.05);
        prop_assume!(x.im.abs() > 1e-3 || y.im.abs() > 1e-3);
        let args = [x, y, (one - x) / (one - xy), one - xy, (one - y) / (one - xy)];
        let e: f64 = args.iter().map(|a| bloch_wigner(*a).unwrap()).sum();
        prop_assert!(e.abs() < 1e-10, "error {}", e);
    }
}
