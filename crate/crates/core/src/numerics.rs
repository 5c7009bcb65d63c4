//! Complex dilogarithm and the Bloch-Wigner function.
//!
//! All logarithms use the principal branch. Points lying exactly on a
//! branch cut are treated as limits from the upper half plane, so that
//! `li2`, `log1m` and `clog` agree with each other on the real axis.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::Zero;

use crate::{Error, Result};

pub const PI2_6: f64 = PI * PI / 6.0;

const SERIES_CUTOFF: f64 = 1e-17;

/// `B_{2k} / (2k+1)!` for k = 1.., the odd-power coefficients of
/// `Li2(1 - e^{-u})` as a series in `u`.
#[allow(clippy::excessive_precision)]
const BERNOULLI: [f64; 19] = [
    2.777_777_777_777_777_8e-2,
    -2.777_777_777_777_777_8e-4,
    4.724_111_866_969_009_826_2e-6,
    -9.185_773_074_661_963_550_9e-8,
    1.897_886_998_897_099_907_2e-9,
    -4.064_761_645_144_225_526_8e-11,
    8.921_691_020_456_452_555_2e-13,
    -1.993_929_586_072_107_568_7e-14,
    4.518_980_029_619_918_191_7e-16,
    -1.035_651_761_218_124_701_4e-17,
    2.395_218_621_026_186_745_7e-19,
    -5.581_785_874_325_009_336_3e-21,
    1.309_150_755_418_321_285_8e-22,
    -3.087_419_802_426_740_293_2e-24,
    7.315_975_652_702_203_420_4e-26,
    -1.740_845_657_234_000_741e-27,
    4.157_635_644_613_899_719_6e-29,
    -9.962_148_488_284_622_103_2e-31,
    2.394_034_424_896_165_300_5e-32,
];

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal logarithm; the negative real axis maps to `arg = +pi`.
pub fn clog(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new((-z.re).ln(), PI)
    } else {
        z.ln()
    }
}

/// `log(1 - z)` on the principal branch, taking `z` real and `> 1` as the
/// limit from above (so the argument is `-pi`).
pub fn log1m(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 1.0 {
        Complex64::new((z.re - 1.0).ln(), -PI)
    } else {
        (Complex64::new(1.0, 0.0) - z).ln()
    }
}

/// Direct series `sum z^k / k^2`, used for `|z| <= 1/2`.
fn power_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::zero();
    let mut pow = z;
    let mut k = 1.0_f64;
    loop {
        let term = pow / (k * k);
        sum += term;
        if term.norm() < SERIES_CUTOFF * sum.norm().max(1.0) {
            return sum;
        }
        pow *= z;
        k += 1.0;
    }
}

/// `Li2(1 - e^{-u})` from the Bernoulli expansion, valid for `|u| < 2 pi`.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    let mut pow = u * u2;
    for c in BERNOULLI {
        let term = pow * c;
        sum += term;
        if term.norm() < SERIES_CUTOFF * sum.norm().max(1.0) {
            break;
        }
        pow *= u2;
    }
    sum
}

/// `Li2` on the closed unit disk minus the point 1.
fn li2_disk(z: Complex64) -> Complex64 {
    if z.norm() <= 0.5 {
        power_series(z)
    } else if z.re <= 0.5 {
        bernoulli_series(-log1m(z))
    } else {
        // Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        Complex64::new(PI2_6, 0.0) - clog(z) * log1m(z) - bernoulli_series(-clog(z))
    }
}

/// The dilogarithm `Li2(z) = -int_0^z log(1-t)/t dt` on its principal
/// branch, cut along `[1, inf)`.
pub fn li2(z: Complex64) -> Result<Complex64> {
    if !is_finite(z) {
        return Err(Error::NonFinite);
    }
    if z.im == 0.0 {
        let x = z.re;
        if x == 1.0 {
            return Ok(Complex64::new(PI2_6, 0.0));
        }
        if x > 1.0 {
            // limit from the upper half plane
            let re = 2.0 * PI2_6 - 0.5 * x.ln() * x.ln() - li2_disk(Complex64::new(1.0 / x, 0.0)).re;
            return Ok(Complex64::new(re, PI * x.ln()));
        }
    }
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    if z.norm() <= 1.0 {
        return Ok(li2_disk(z));
    }
    // Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
    let l = clog(-z);
    Ok(-li2_disk(z.inv()) - PI2_6 - l * l * 0.5)
}

/// Bloch-Wigner function `D2(z) = Im Li2(z) + log|z| arg(1 - z)`.
///
/// Vanishes identically on the real axis; undefined at 0 and 1.
pub fn bloch_wigner(z: Complex64) -> Result<f64> {
    if !is_finite(z) {
        return Err(Error::NonFinite);
    }
    if z.is_zero() {
        return Err(Error::Singular("0"));
    }
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Singular("1"));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    Ok(li2(z)?.im + z.norm().ln() * log1m(z).im)
}
