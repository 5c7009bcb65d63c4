//! Integer polynomials in one variable and their complex roots.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = alloc::vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(1);
        IntPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        horner(&self.to_f64(), x)
    }
}

fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = alloc::vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers, e.g. `z^3 - 3z^2 + 2z - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let one = BigInt::from(1);
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != one {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Iteration limits and acceptance threshold for [`solve_univariate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub max_iterations: usize,
    /// Bound on `|p(r)| / sum |a_i| |r|^i` for every returned root.
    pub backward_error: f64,
    /// Roots closer than this (relative to `max(1, |r|)`) are one root.
    pub merge_distance: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { max_iterations: 500, backward_error: 1e-12, merge_distance: 1e-7 }
    }
}

fn backward_error(coeffs: &[f64], r: Complex64) -> f64 {
    let scale = horner(&coeffs.iter().map(|c| c.abs()).collect::<Vec<_>>(), Complex64::new(r.norm(), 0.0)).re;
    horner(coeffs, r).norm() / scale
}

/// All distinct complex roots, by Aberth-Ehrlich simultaneous iteration
/// followed by Newton polishing.
pub fn solve_univariate(poly: &IntPolynomial, opts: &RootOptions) -> Result<Vec<Complex64>> {
    let degree = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument(format!("polynomial {poly} has degree < 1"))),
    };
    let coeffs = poly.to_f64();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NoConvergence(format!("{poly} (coefficients overflow f64)")));
    }
    // strip zero roots so the initial circle is sensible
    let zeros = coeffs.iter().take_while(|c| **c == 0.0).count();
    let reduced = &coeffs[zeros..];
    let deriv: Vec<f64> = reduced.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let d = degree - zeros;

    let mut roots: Vec<Complex64> = Vec::with_capacity(degree);
    if d > 0 {
        // Cauchy-style radius from the coefficient geometric mean
        let lead = reduced[d].abs();
        let radius = (reduced[0].abs() / lead).powf(1.0 / d as f64).max(1e-3);
        let mut z: Vec<Complex64> =
            (0..d).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4)).collect();
        for _ in 0..opts.max_iterations {
            let mut max_step: f64 = 0.0;
            for i in 0..d {
                let p = horner(reduced, z[i]);
                let dp = horner(&deriv, z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                    max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
                }
            }
            if max_step < 1e-15 {
                break;
            }
        }
        for r in z.iter_mut() {
            for _ in 0..5 {
                let p = horner(reduced, *r);
                let dp = horner(&deriv, *r);
                let step = p / dp;
                if !step.is_finite() || step.norm() == 0.0 {
                    break;
                }
                let next = *r - step;
                if horner(reduced, next).norm() < p.norm() {
                    *r = next;
                } else {
                    break;
                }
            }
        }
        let worst = z.iter().map(|r| backward_error(reduced, *r)).fold(0.0, f64::max);
        // a multiple root stalls the iteration but still has a tiny backward error
        if worst.is_nan() || worst >= opts.backward_error {
            return Err(Error::NoConvergence(format!("{poly}")));
        }
        roots.extend(z);
    }
    if zeros > 0 {
        roots.push(Complex64::new(0.0, 0.0));
    }
    let mut distinct: Vec<Complex64> = Vec::with_capacity(roots.len());
    for r in roots {
        if !distinct.iter().any(|q| (q - r).norm() < opts.merge_distance * r.norm().max(1.0)) {
            distinct.push(r);
        }
    }
    Ok(distinct)
}
