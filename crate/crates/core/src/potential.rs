//! The potential function `V`, its hyperbolicity equations and `V_0`.
//!
//! `V(z) = sum_m sigma_m (Li2(t_m^sigma_m) - pi^2/6)`. Writing
//! `u_m = t_m^sigma_m`, `d_{m,k}` for the exponent of `z_k` in `u_m` and
//! using `d Li2(u)/du = -log(1-u)/u`,
//!
//! ```text
//! z_k dV/dz_k = sum_m -sigma_m d_{m,k} log(1 - u_m)
//! ```
//!
//! so each hyperbolicity equation is the product
//! `prod_m (1 - u_m)^{eps_{m,k}} = 1` with `eps_{m,k} = -sigma_m d_{m,k}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::diagram::{SideRef, TetraTerm, Triangulation};
use crate::numerics::{clog, li2, log1m, PI2_6};
use crate::{Error, Result};

/// `(term index, exponent)` in a product-form equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub term: usize,
    pub exponent: i32,
}

/// `prod (1 - u_m)^{eps_m} = 1`, equivalent to `exp(z_k dV/dz_k) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicityEquation {
    /// 1-based variable index `k`.
    pub variable: usize,
    pub factors: Vec<Factor>,
}

impl HyperbolicityEquation {
    /// `prod (1 - u_m)^{eps_m} - 1` given the dilogarithm arguments `u`.
    pub fn residual(&self, args: &[Complex64]) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let (num, den) = self.split(args);
        num / den - one
    }

    /// The same equation with denominators cleared: `A - B`, where `A`
    /// collects the factors with exponent +1 and `B` those with -1.
    pub fn cleared(&self, args: &[Complex64]) -> Complex64 {
        let (num, den) = self.split(args);
        num - den
    }

    fn split(&self, args: &[Complex64]) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let mut num = one;
        let mut den = one;
        for f in &self.factors {
            let base = one - args[f.term];
            for _ in 0..f.exponent.unsigned_abs() {
                if f.exponent > 0 {
                    num *= base;
                } else {
                    den *= base;
                }
            }
        }
        (num, den)
    }
}

/// Potential function assembled from a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialFunction {
    triangulation: Triangulation,
}

fn side_value(side: SideRef, z: &[Complex64]) -> Complex64 {
    match side {
        SideRef::Unit => Complex64::new(1.0, 0.0),
        SideRef::Var(k) => z[k - 1],
    }
}

fn ratio(top: SideRef, bottom: SideRef, z: &[Complex64], m: usize) -> Result<Complex64> {
    let a = side_value(top, z);
    let b = side_value(bottom, z);
    if b.norm() == 0.0 || !b.is_finite() || !a.is_finite() {
        return Err(Error::NonEssential(format!("shape t{} has a pole", m + 1)));
    }
    let t = a / b;
    if t.norm() == 0.0 {
        return Err(Error::NonEssential(format!("shape t{} vanishes", m + 1)));
    }
    Ok(t)
}

impl PotentialFunction {
    pub fn assemble(triangulation: Triangulation) -> Self {
        PotentialFunction { triangulation }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn n(&self) -> usize {
        self.triangulation.n()
    }

    pub fn s(&self) -> usize {
        self.triangulation.s()
    }

    pub fn terms(&self) -> &[TetraTerm] {
        self.triangulation.terms()
    }

    /// The additive constant in units of `pi^2/6`: `-sum sigma_m`.
    pub fn constant_sixths(&self) -> i64 {
        -self.terms().iter().map(|t| i64::from(t.sigma.value())).sum::<i64>()
    }

    /// One product-form equation per variable, in order `k = 1..n`.
    pub fn hyperbolicity_equations(&self) -> Result<Vec<HyperbolicityEquation>> {
        (1..=self.n())
            .map(|k| {
                let factors: Vec<Factor> = self
                    .terms()
                    .iter()
                    .enumerate()
                    .filter_map(|(m, t)| {
                        let d = t.degree_in(k);
                        (d != 0).then(|| Factor { term: m, exponent: -t.sigma.value() * d })
                    })
                    .collect();
                if factors.is_empty() {
                    Err(Error::UnusedVariable(k))
                } else {
                    Ok(HyperbolicityEquation { variable: k, factors })
                }
            })
            .collect()
    }

    fn check_dim(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: z.len() });
        }
        Ok(())
    }

    /// Shape parameters `(t_1, ..., t_s)`.
    pub fn shapes(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(z)?;
        self.terms().iter().enumerate().map(|(m, t)| ratio(t.numerator, t.denominator, z, m)).collect()
    }

    /// Dilogarithm arguments `u_m = t_m^sigma_m`.
    pub fn arguments(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(z)?;
        self.terms()
            .iter()
            .enumerate()
            .map(|(m, t)| {
                let (top, bottom) = t.oriented();
                ratio(top, bottom, z, m)
            })
            .collect()
    }

    pub fn eval_v(&self, z: &[Complex64]) -> Result<Complex64> {
        let args = self.arguments(z)?;
        let mut v = Complex64::new(0.0, 0.0);
        for (t, u) in self.terms().iter().zip(&args) {
            let sigma = f64::from(t.sigma.value());
            v += (li2(*u)? - PI2_6) * sigma;
        }
        Ok(v)
    }

    /// `z_k dV/dz_k` for every k, as the closed-form sum of
    /// `-sigma_m d_{m,k} log(1 - u_m)` on principal branches.
    pub fn log_derivatives(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        let args = self.arguments(z)?;
        Ok(self.log_derivatives_at(&args))
    }

    fn log_derivatives_at(&self, args: &[Complex64]) -> Vec<Complex64> {
        let mut w = alloc::vec![Complex64::new(0.0, 0.0); self.n()];
        for (t, u) in self.terms().iter().zip(args) {
            let (top, bottom) = t.oriented();
            let l = log1m(*u) * f64::from(t.sigma.value());
            if let Some(k) = top.var() {
                w[k - 1] -= l;
            }
            if let Some(k) = bottom.var() {
                w[k - 1] += l;
            }
        }
        w
    }

    /// `V_0(z) = V(z) - sum_k (z_k dV/dz_k) log z_k`.
    pub fn eval_v0(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_dim(z)?;
        if let Some(k) = z.iter().position(|zk| zk.norm() == 0.0) {
            return Err(Error::NonEssential(format!("z{} = 0", k + 1)));
        }
        let v = self.eval_v(z)?;
        let w = self.log_derivatives(z)?;
        Ok(z.iter().zip(&w).fold(v, |acc, (zk, wk)| {
            let l = clog(*zk);
            // log z_k = 0 drops the term even where z_k dV/dz_k has a pole
            if l == Complex64::new(0.0, 0.0) {
                acc
            } else {
                acc - wk * l
            }
        }))
    }

    /// `prod (1 - u_m)^{eps} - 1` for each equation.
    pub fn residuals(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        let eqs = self.hyperbolicity_equations()?;
        let args = self.arguments(z)?;
        Ok(eqs.iter().map(|e| e.residual(&args)).collect())
    }

    /// `max_k |exp(z_k dV/dz_k) - 1|` with the exponential taken of the
    /// log-sum, so it measures the log form rather than the product form.
    pub fn log_form_defect(&self, z: &[Complex64]) -> Result<f64> {
        let w = self.log_derivatives(z)?;
        Ok(w.iter().map(|wk| (wk.exp() - 1.0).norm()).fold(0.0, f64::max))
    }

    /// Signed dilogarithm terms as text, e.g. `+Li2(z1/z4)`, in term order.
    pub fn signed_terms(&self) -> Vec<String> {
        self.terms()
            .iter()
            .map(|t| {
                let sign = if t.sigma.value() > 0 { '+' } else { '-' };
                format!("{sign}Li2({})", render_argument(t.oriented()))
            })
            .collect()
    }

    /// Additive constant of `V`.
    pub fn constant(&self) -> f64 {
        self.constant_sixths() as f64 * PI * PI / 6.0
    }
}

fn render_argument((top, bottom): (SideRef, SideRef)) -> String {
    match (top, bottom) {
        (top, SideRef::Unit) => format!("{top}"),
        (top, bottom) => format!("{top}/{bottom}"),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `c * pi^2 / 6` reduced, e.g. `pi^2/3`, `pi^2/2`, `2pi^2`.
pub fn render_constant(sixths: i64) -> Option<String> {
    if sixths == 0 {
        return None;
    }
    let g = gcd(sixths, 6);
    let (num, den) = (sixths.abs() / g, 6 / g);
    let coeff = if num == 1 { String::new() } else { format!("{num}") };
    let body = if den == 1 { format!("{coeff}pi^2") } else { format!("{coeff}pi^2/{den}") };
    Some(body)
}

impl fmt::Display for PotentialFunction {
    /// Terms in triangulation order followed by the aggregated constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.signed_terms().iter().enumerate() {
            let (sign, body) = term.split_at(1);
            match (i, sign) {
                (0, "+") => f.write_str(body)?,
                (0, _) => write!(f, "-{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        if let Some(c) = render_constant(self.constant_sixths()) {
            let sign = if self.constant_sixths() > 0 { '+' } else { '-' };
            write!(f, " {sign} {c}")?;
        }
        Ok(())
    }
}
