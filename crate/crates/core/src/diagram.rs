//! Tetrahedra, sides and triangulations of a (1,1)-tangle diagram.
//!
//! A triangulation is supplied as explicit tetrahedra: each carries a sign
//! and its shape ratio written as `numerator / denominator`, where both
//! sides are either a contributing-side variable `z_k` or the constant 1
//! assigned to non-contributing sides.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// One side of a tetrahedron: a contributing side `z_k` (1-based) or a
/// non-contributing side carrying the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideRef {
    Unit,
    Var(usize),
}

impl SideRef {
    pub fn var(self) -> Option<usize> {
        match self {
            SideRef::Unit => None,
            SideRef::Var(k) => Some(k),
        }
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideRef::Unit => f.write_str("1"),
            SideRef::Var(k) => write!(f, "z{k}"),
        }
    }
}

/// Orientation of a tetrahedron at its crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A signed ideal tetrahedron with shape `t = numerator / denominator`.
///
/// It contributes `sigma * (Li2(t^sigma) - pi^2/6)` to the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TetraTerm {
    pub sigma: Sign,
    pub numerator: SideRef,
    pub denominator: SideRef,
}

impl TetraTerm {
    pub fn new(sigma: Sign, numerator: SideRef, denominator: SideRef) -> Self {
        TetraTerm { sigma, numerator, denominator }
    }

    pub fn plus(numerator: SideRef, denominator: SideRef) -> Self {
        Self::new(Sign::Plus, numerator, denominator)
    }

    pub fn minus(numerator: SideRef, denominator: SideRef) -> Self {
        Self::new(Sign::Minus, numerator, denominator)
    }

    /// Sides of the dilogarithm argument `t^sigma` as `(top, bottom)`.
    pub fn oriented(&self) -> (SideRef, SideRef) {
        match self.sigma {
            Sign::Plus => (self.numerator, self.denominator),
            Sign::Minus => (self.denominator, self.numerator),
        }
    }

    /// Exponent of `z_k` in `t^sigma`: +1, -1 or 0.
    pub fn degree_in(&self, k: usize) -> i32 {
        let (top, bottom) = self.oriented();
        let mut d = 0;
        if top == SideRef::Var(k) {
            d += 1;
        }
        if bottom == SideRef::Var(k) {
            d -= 1;
        }
        d
    }

    fn is_degenerate(&self) -> bool {
        self.numerator == self.denominator
    }
}

/// Ideal triangulation `IT_1, ..., IT_s` over contributing sides `z_1..z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    terms: Vec<TetraTerm>,
}

impl Triangulation {
    /// Validates side indices, rejects ratios that are identically 1 and
    /// requires every variable to occur somewhere.
    pub fn new(n: usize, terms: Vec<TetraTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyTriangulation);
        }
        let mut seen = alloc::vec![false; n + 1];
        for (m, term) in terms.iter().enumerate() {
            if term.is_degenerate() {
                return Err(Error::DegenerateTerm { term: m + 1 });
            }
            for side in [term.numerator, term.denominator] {
                if let SideRef::Var(k) = side {
                    if k == 0 || k > n {
                        return Err(Error::UnknownVariable { term: m + 1, index: k, n });
                    }
                    seen[k] = true;
                }
            }
        }
        if let Some(k) = (1..=n).find(|&k| !seen[k]) {
            return Err(Error::UnusedVariable(k));
        }
        Ok(Triangulation { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[TetraTerm] {
        &self.terms
    }
}

/// Triangulation of the twist knot `C(2, n+1)` with `n` contributing sides.
///
/// Terms follow the potential
/// `Li2(1/z_1) + sum_{k=2}^n [pi^2/6 - Li2(z_{k-1}) + Li2(z_{k-1}/z_k) - Li2(1/z_k)] - Li2(z_n)`
/// with `+Li2(t)` stored as `(+, t)` and `-Li2(u)` as `(-, 1/u)`; there are
/// `3n - 1` of them.
pub fn twist_knot_triangulation(n: usize) -> Result<Triangulation> {
    use SideRef::{Unit, Var};
    if n < 1 {
        return Err(Error::InvalidArgument(alloc::format!("twist knot needs n >= 1, got {n}")));
    }
    let mut terms = Vec::with_capacity(3 * n - 1);
    terms.push(TetraTerm::plus(Unit, Var(1)));
    for k in 2..=n {
        terms.push(TetraTerm::minus(Unit, Var(k - 1)));
        terms.push(TetraTerm::plus(Var(k - 1), Var(k)));
        terms.push(TetraTerm::minus(Var(k), Unit));
    }
    terms.push(TetraTerm::minus(Unit, Var(n)));
    Triangulation::new(n, terms)
}
