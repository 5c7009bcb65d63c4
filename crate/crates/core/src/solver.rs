//! Essential solutions of the hyperbolicity equations.
//!
//! Two routes: an exact elimination for twist knots, where every `z_k` is a
//! rational function of `z_1` and `z_1` is a root of one integer polynomial
//! of degree at most `n + 1`, and a seeded multi-start Newton search that
//! works on any triangulation but promises nothing about completeness.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::twist_knot_triangulation;
use crate::linalg;
use crate::poly::{solve_univariate, IntPolynomial, RootOptions};
use crate::potential::{HyperbolicityEquation, PotentialFunction};
use crate::Result;

pub const DEFAULT_SEED: u64 = 0x5eed_2010_0915;

/// Numerical stand-ins for the exact conditions `t in {0, 1, inf}`,
/// `Im t != 0` and point equality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A shape is degenerate if `|t| < e`, `|t - 1| < e` or `|t| > 1/e`.
    pub essential: f64,
    /// A shape is non-real if `|Im t| > complex`.
    pub complex: f64,
    /// Two solutions coincide if `max_k |z_k - w_k| < dedup`.
    pub dedup: f64,
    /// Largest accepted `max_k |prod (1 - u)^eps - 1|`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { essential: 1e-8, complex: 1e-8, dedup: 1e-8, residual: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Random starts for the generic solver.
    pub attempts: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub max_newton_iterations: usize,
    pub roots: RootOptions,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            attempts: 1000,
            seed: DEFAULT_SEED,
            tolerances: Tolerances::default(),
            max_newton_iterations: 80,
            roots: RootOptions::default(),
        }
    }
}

/// A point `(z_1, ..., z_n)` with its shapes and classification.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub z: Vec<Complex64>,
    /// `max_k |prod (1 - u)^eps - 1|`; infinite when undefined.
    pub residual: f64,
    pub essential: bool,
    pub complex: bool,
    /// `(t_1, ..., t_s)`; NaN where a shape has a pole.
    pub shapes: Vec<Complex64>,
}

impl Solution {
    pub fn classify(potential: &PotentialFunction, z: Vec<Complex64>, tol: &Tolerances) -> Solution {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let one = Complex64::new(1.0, 0.0);
        let big = 1.0 / tol.essential;
        let z_ok = z.iter().all(|zk| zk.is_finite() && zk.norm() >= tol.essential && zk.norm() <= big);
        let shapes: Vec<Complex64> = potential
            .terms()
            .iter()
            .map(|t| {
                let side = |s: crate::SideRef| s.var().map_or(one, |k| z[k - 1]);
                let den = side(t.denominator);
                if den.norm() == 0.0 {
                    nan
                } else {
                    side(t.numerator) / den
                }
            })
            .collect();
        let shapes_ok = shapes.iter().all(|t| {
            t.is_finite() && t.norm() >= tol.essential && (t - one).norm() >= tol.essential && t.norm() <= big
        });
        let essential = z_ok && shapes_ok;
        let residual = potential
            .residuals(&z)
            .ok()
            .map(|r| r.iter().map(|x| x.norm()).fold(0.0, f64::max))
            .filter(|r| r.is_finite())
            .unwrap_or(f64::INFINITY);
        let complex = shapes.iter().any(|t| t.im.abs() > tol.complex);
        Solution { z, residual, essential, complex, shapes }
    }

    /// `max_k |z_k - w_k|`.
    pub fn distance(&self, other: &Solution) -> f64 {
        distance(&self.z, &other.z)
    }
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn sort_key(z: &[Complex64]) -> Vec<f64> {
    // quantised so that rounding noise does not reorder conjugate pairs
    z.iter().flat_map(|c| [(c.re * 1e6).round(), (c.im * 1e6).round()]).collect()
}

/// Deduplicated solutions ordered lexicographically by
/// `(Re z_1, Im z_1, Re z_2, ...)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolutionSet {
    solutions: Vec<Solution>,
    exhaustive: bool,
}

impl SolutionSet {
    pub fn new(candidates: Vec<Solution>, dedup: f64, exhaustive: bool) -> Self {
        let mut solutions: Vec<Solution> = Vec::with_capacity(candidates.len());
        for c in candidates {
            if !solutions.iter().any(|s| s.distance(&c) < dedup) {
                solutions.push(c);
            }
        }
        solutions.sort_by(|a, b| {
            sort_key(&a.z)
                .iter()
                .zip(&sort_key(&b.z))
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        });
        SolutionSet { solutions, exhaustive }
    }

    pub fn empty() -> Self {
        SolutionSet::default()
    }

    /// Whether the set is known to contain every solution.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn essential(&self) -> impl Iterator<Item = (usize, &Solution)> {
        self.solutions.iter().enumerate().filter(|(_, s)| s.essential)
    }
}

pub fn count_essential(set: &SolutionSet) -> usize {
    set.essential().count()
}

/// Exact elimination data for the twist knot `C(2, n+1)`.
///
/// `1/z_k = p_k(z_1) / q_k(z_1)` for `k = 1..n-1`, and `z_1` is a root of
/// `final_poly`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistReduction {
    pub n: usize,
    p: Vec<IntPolynomial>,
    q: Vec<IntPolynomial>,
    pub final_poly: IntPolynomial,
}

impl TwistReduction {
    /// `p_k`, for `1 <= k <= n - 1`.
    pub fn p(&self, k: usize) -> Option<&IntPolynomial> {
        k.checked_sub(1).and_then(|i| self.p.get(i))
    }

    pub fn q(&self, k: usize) -> Option<&IntPolynomial> {
        k.checked_sub(1).and_then(|i| self.q.get(i))
    }
}

/// Eliminates `z_2, ..., z_n` from the twist-knot equations.
///
/// Summing all equations and using the first one gives
/// `z_n = 1 + (1 - 1/z_1)^2` and `1/z_2 = (z_1^2 - z_1 + 1)/z_1^2`; the
/// telescoped middle equations give `1/z_k = 1 - z_{k-2} + z_n`, i.e.
///
/// ```text
/// p_k = (3z^2 - 2z + 1) p_{k-2} - z^2 q_{k-2},   q_k = z^2 p_{k-2}
/// ```
///
/// starting from `p_1/q_1 = 1/z`. The last equation, `z_n = z_{n-1} - 1`
/// once the spurious branch `z_n = 1` is dropped, leaves
/// `z^2 q_{n-1} - (3z^2 - 2z + 1) p_{n-1} = 0`. For `n = 1` the single
/// equation clears to `z^2 - z + 1`.
pub fn twist_reduce(n: usize) -> Result<TwistReduction> {
    if n < 1 {
        return Err(crate::Error::InvalidArgument(alloc::format!("twist knot needs n >= 1, got {n}")));
    }
    if n == 1 {
        return Ok(TwistReduction {
            n,
            p: Vec::new(),
            q: Vec::new(),
            final_poly: IntPolynomial::from_i64(&[1, -1, 1]),
        });
    }
    let z2 = IntPolynomial::monomial(2);
    let cusp = IntPolynomial::from_i64(&[1, -2, 3]);
    let mut p = alloc::vec![IntPolynomial::one()];
    let mut q = alloc::vec![IntPolynomial::monomial(1)];
    if n >= 3 {
        p.push(IntPolynomial::from_i64(&[1, -1, 1]));
        q.push(z2.clone());
    }
    for k in 3..n {
        let (pk2, qk2) = (&p[k - 3], &q[k - 3]);
        let pk = &(&cusp * pk2) - &(&z2 * qk2);
        let qk = &z2 * pk2;
        p.push(pk);
        q.push(qk);
    }
    let final_poly = &(&z2 * &q[n - 2]) - &(&cusp * &p[n - 2]);
    Ok(TwistReduction { n, p, q, final_poly })
}

/// How far Newton polishing may move a back-substituted point. Rational
/// back-substitution loses a few digits near clustered roots for large `n`.
const POLISH_RADIUS: f64 = 1e-6;

/// Rebuilds `(z_1, ..., z_n)` from a root of the final polynomial and
/// classifies the point against the full system.
pub fn back_substitute(
    root: Complex64,
    red: &TwistReduction,
    potential: &PotentialFunction,
    config: &SolverConfig,
) -> Solution {
    let n = red.n;
    let mut z = Vec::with_capacity(n);
    z.push(root);
    if n >= 2 {
        for k in 2..n {
            // z_k = q_k / p_k
            let num = red.q[k - 1].eval(root);
            let den = red.p[k - 1].eval(root);
            z.push(num / den);
        }
        let r2 = root * root;
        z.push((r2 * 2.0 - root * 2.0 + 1.0) / r2);
    }
    let mut sol = Solution::classify(potential, z, &config.tolerances);
    if sol.essential && sol.residual > 1e-14 {
        if let Ok(eqs) = potential.hyperbolicity_equations() {
            if let Some(polished) = newton(potential, &eqs, sol.z.clone(), 8) {
                let candidate = Solution::classify(potential, polished, &config.tolerances);
                if candidate.essential && candidate.residual < sol.residual && candidate.distance(&sol) < POLISH_RADIUS
                {
                    sol = candidate;
                }
            }
        }
    }
    sol
}

/// Full exact pipeline for `C(2, n+1)`: triangulation, reduction, roots
/// and back-substitution. The returned set is exhaustive.
pub fn solve_twist(n: usize, config: &SolverConfig) -> Result<(PotentialFunction, TwistReduction, SolutionSet)> {
    let potential = PotentialFunction::assemble(twist_knot_triangulation(n)?);
    let red = twist_reduce(n)?;
    let roots = solve_univariate(&red.final_poly, &config.roots)?;
    let sols = roots.into_iter().map(|r| back_substitute(r, &red, &potential, config)).collect();
    let set = SolutionSet::new(sols, config.tolerances.dedup, true);
    Ok((potential, red, set))
}

/// Value and gradient of `prod_i (1 - u_{m_i})` over the listed terms.
fn product_with_gradient(
    potential: &PotentialFunction,
    terms: &[usize],
    args: &[Complex64],
    z: &[Complex64],
) -> (Complex64, Vec<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    let n = z.len();
    let bases: Vec<Complex64> = terms.iter().map(|&m| one - args[m]).collect();
    let value = bases.iter().product();
    let mut grad = alloc::vec![Complex64::new(0.0, 0.0); n];
    for (i, &m) in terms.iter().enumerate() {
        let others: Complex64 = bases.iter().enumerate().filter(|(l, _)| *l != i).map(|(_, b)| b).product();
        let term = &potential.terms()[m];
        for (j, g) in grad.iter_mut().enumerate() {
            let d = term.degree_in(j + 1);
            if d != 0 {
                // d(1 - u)/dz_j = -d u / z_j
                *g -= others * args[m] * f64::from(d) / z[j];
            }
        }
    }
    (value, grad)
}

/// Cleared residual `A_k - B_k` and its Jacobian (row-major).
fn system(
    potential: &PotentialFunction,
    eqs: &[HyperbolicityEquation],
    z: &[Complex64],
) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    let args = potential.arguments(z).ok()?;
    let n = z.len();
    let mut f = Vec::with_capacity(n);
    let mut jac = Vec::with_capacity(n * n);
    for eq in eqs {
        let plus: Vec<usize> = eq.factors.iter().filter(|x| x.exponent > 0).map(|x| x.term).collect();
        let minus: Vec<usize> = eq.factors.iter().filter(|x| x.exponent < 0).map(|x| x.term).collect();
        let (a, ga) = product_with_gradient(potential, &plus, &args, z);
        let (b, gb) = product_with_gradient(potential, &minus, &args, z);
        f.push(a - b);
        jac.extend(ga.iter().zip(&gb).map(|(x, y)| x - y));
    }
    Some((f, jac))
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Damped Newton on the cleared equations. `None` if it stalls or leaves
/// the region where shapes are defined.
fn newton(
    potential: &PotentialFunction,
    eqs: &[HyperbolicityEquation],
    mut z: Vec<Complex64>,
    max_iterations: usize,
) -> Option<Vec<Complex64>> {
    let (mut f, mut jac) = system(potential, eqs, &z)?;
    for _ in 0..max_iterations {
        let fnorm = norm(&f);
        if fnorm < 1e-15 {
            break;
        }
        let rhs: Vec<Complex64> = f.iter().map(|x| -x).collect();
        let step = linalg::solve(jac.clone(), rhs)?;
        let mut lambda = 1.0;
        loop {
            let cand: Vec<Complex64> = z.iter().zip(&step).map(|(a, s)| a + s * lambda).collect();
            if let Some((fc, jc)) = system(potential, eqs, &cand) {
                if norm(&fc) < fnorm * (1.0 - 1e-4 * lambda) {
                    z = cand;
                    f = fc;
                    jac = jc;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                // no descent; converged as far as f64 allows or stuck
                return Some(z);
            }
        }
        if norm(&step) * lambda < 1e-15 * norm(&z).max(1.0) {
            break;
        }
        if z.iter().any(|x| !x.is_finite() || x.norm() > 1e9 || x.norm() < 1e-9) {
            return None;
        }
    }
    Some(z)
}

fn random_start(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            // log-uniform radius in (0.1, 10)
            let r = 10f64.powf(rng.random_range(-1.0..1.0));
            let theta = rng.random_range(0.0..2.0 * PI);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Multi-start damped Newton from random points in `0.1 < |z_k| < 10`.
///
/// Only converged essential points are kept, together with their complex
/// conjugates. Deterministic for a given seed; the result is flagged
/// non-exhaustive.
pub fn solve_generic(potential: &PotentialFunction, config: &SolverConfig) -> Result<SolutionSet> {
    let eqs = potential.hyperbolicity_equations()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tol = &config.tolerances;
    let mut found: Vec<Solution> = Vec::new();
    for _ in 0..config.attempts {
        let start = random_start(&mut rng, potential.n());
        let Some(z) = newton(potential, &eqs, start, config.max_newton_iterations) else {
            continue;
        };
        let conj: Vec<Complex64> = z.iter().map(|x| x.conj()).collect();
        // real coefficients: the conjugate point solves the system as well
        for sol in [Solution::classify(potential, z, tol), Solution::classify(potential, conj, tol)] {
            if sol.essential && sol.residual < tol.residual && !found.iter().any(|s| s.distance(&sol) < tol.dedup) {
                found.push(sol);
            }
        }
    }
    Ok(SolutionSet::new(found, tol.dedup, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_low_order_rational_functions() {
        let red = twist_reduce(5).unwrap();
        assert_eq!(red.p(2).unwrap(), &IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(red.q(2).unwrap(), &IntPolynomial::from_i64(&[0, 0, 1]));
        assert_eq!(red.p(3).unwrap(), &IntPolynomial::from_i64(&[1, -2, 3, -1]));
        assert_eq!(red.q(3).unwrap(), &IntPolynomial::from_i64(&[0, 0, 1]));
        assert!(red.p(5).is_none());
        assert!(red.p(0).is_none());
    }

    #[test]
    fn p2_over_q2_at_two() {
        let red = twist_reduce(3).unwrap();
        let x = Complex64::new(2.0, 0.0);
        let v = red.p(2).unwrap().eval(x) / red.q(2).unwrap().eval(x);
        assert_eq!(v, Complex64::new(0.75, 0.0));
    }

    #[test]
    fn low_order_final_polynomials() {
        assert_eq!(twist_reduce(1).unwrap().final_poly, IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(twist_reduce(2).unwrap().final_poly, IntPolynomial::from_i64(&[-1, 2, -3, 1]));
        assert_eq!(twist_reduce(3).unwrap().final_poly, IntPolynomial::from_i64(&[-1, 3, -6, 5, -2]));
        assert!(twist_reduce(0).is_err());
    }

    #[test]
    fn degree_bounds_of_recursion() {
        for n in 1..=50 {
            let red = twist_reduce(n).unwrap();
            assert!(red.final_poly.degree().unwrap() <= n + 1, "n = {n}");
            for k in 1..n {
                assert!(red.p(k).unwrap().degree().unwrap_or(0) <= k);
                assert!(red.q(k).unwrap().degree().unwrap_or(0) <= k);
            }
        }
    }

    #[test]
    fn root_at_zero_is_not_essential() {
        let red = twist_reduce(3).unwrap();
        let v = PotentialFunction::assemble(twist_knot_triangulation(3).unwrap());
        let sol = back_substitute(Complex64::new(0.0, 0.0), &red, &v, &SolverConfig::default());
        assert!(!sol.essential);
    }

    #[test]
    fn dedup_and_order() {
        let v = PotentialFunction::assemble(twist_knot_triangulation(1).unwrap());
        let tol = Tolerances::default();
        let a = Solution::classify(&v, vec![Complex64::new(0.5, 0.8)], &tol);
        let b = Solution::classify(&v, vec![Complex64::new(0.5, -0.8)], &tol);
        let a2 = Solution::classify(&v, vec![Complex64::new(0.5, 0.8 + 1e-12)], &tol);
        let set = SolutionSet::new(vec![a, a2, b], tol.dedup, false);
        assert_eq!(set.len(), 2);
        assert!(set.solutions()[0].z[0].im < 0.0);
        assert_eq!(count_essential(&SolutionSet::empty()), 0);
    }
}
