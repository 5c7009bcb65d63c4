//! Complex volumes, the geometric solution, Borel regulator components and
//! degree bounds.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigUint;
#[allow(unused_imports)]
use num_traits::Float as _;
use num_traits::One;

use crate::numerics::bloch_wigner;
use crate::potential::PotentialFunction;
use crate::solver::{count_essential, Solution, SolutionSet, Tolerances};
use crate::{Error, Result};

const PI2: f64 = PI * PI;

/// Volume and Chern-Simons invariant, with `cs` reduced into `[-pi^2/2, pi^2/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVolume {
    pub vol: f64,
    pub cs: f64,
}

/// Representative of `x mod pi^2` in `[-pi^2/2, pi^2/2)`.
pub fn reduce_mod_pi2(x: f64) -> f64 {
    // adding 0.0 turns -0.0 into 0.0
    let r = x - PI2 * ((x + PI2 / 2.0) / PI2).floor() + 0.0;
    if r >= PI2 / 2.0 {
        r - PI2
    } else if r < -PI2 / 2.0 {
        r + PI2
    } else {
        r
    }
}

fn require_essential(sol: &Solution) -> Result<()> {
    if sol.essential {
        Ok(())
    } else {
        Err(Error::NonEssential(String::from("solution is not essential")))
    }
}

/// `V_0(z) = i (vol + i cs) mod pi^2`, so `vol = Im V_0` and `cs = -Re V_0`.
pub fn complex_volume(potential: &PotentialFunction, sol: &Solution) -> Result<ComplexVolume> {
    require_essential(sol)?;
    let v0 = potential.eval_v0(&sol.z)?;
    Ok(ComplexVolume { vol: v0.im, cs: reduce_mod_pi2(-v0.re) })
}

/// `sum_m D2(t_m)` over the shapes of a solution.
pub fn bloch_wigner_sum(sol: &Solution) -> Result<f64> {
    sol.shapes.iter().map(|t| bloch_wigner(*t)).sum()
}

/// `|Im V_0(z) - sum_m D2(t_m)|`, which vanishes at every essential solution.
pub fn prop_check(potential: &PotentialFunction, sol: &Solution) -> Result<f64> {
    require_essential(sol)?;
    let v0 = potential.eval_v0(&sol.z)?;
    Ok((v0.im - bloch_wigner_sum(sol)?).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// Every essential solution is real, so the maximum volume is 0.
    NoComplexSolution,
    /// The set holds no essential solution at all.
    NoEssentialSolution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricChoice {
    pub index: usize,
    pub volume: f64,
    pub warning: Option<Warning>,
}

/// Index of the essential solution with the largest `Im V_0`.
///
/// A tie within `1e-9` between two positive maxima is reported as
/// ambiguous. When all volumes vanish the first maximiser is returned with
/// a warning.
pub fn select_geometric(potential: &PotentialFunction, set: &SolutionSet) -> Result<GeometricChoice> {
    const TIE: f64 = 1e-9;
    let mut best: Option<(usize, f64)> = None;
    let mut runner_up: Option<(usize, f64)> = None;
    for (i, sol) in set.essential() {
        let vol = complex_volume(potential, sol)?.vol;
        match best {
            Some((_, b)) if vol <= b => {
                if runner_up.is_none_or(|(_, r)| vol > r) {
                    runner_up = Some((i, vol));
                }
            }
            _ => {
                runner_up = best;
                best = Some((i, vol));
            }
        }
    }
    let (index, volume) = best.ok_or(Error::NotFound)?;
    if volume <= TIE {
        return Ok(GeometricChoice { index, volume, warning: Some(Warning::NoComplexSolution) });
    }
    if let Some((j, r)) = runner_up {
        if volume - r < TIE {
            return Err(Error::Ambiguous(index, j));
        }
    }
    Ok(GeometricChoice { index, volume, warning: None })
}

/// Borel regulator components read off conjugate pairs of essential solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct BorelComponents {
    /// `|Im V_0|` per conjugate pair, descending.
    pub values: Vec<f64>,
    /// Number of conjugate pairs of complex essential solutions.
    pub r1: usize,
    /// Number of real essential solutions.
    pub r2: usize,
}

/// Pairs each complex essential solution with its componentwise conjugate
/// and reports the positive representative of `Im V_0` for every pair.
pub fn borel_components(potential: &PotentialFunction, set: &SolutionSet, tol: &Tolerances) -> Result<BorelComponents> {
    let essential: Vec<(usize, &Solution)> = set.essential().collect();
    let mut paired = alloc::vec![false; essential.len()];
    let mut values = Vec::new();
    let mut r2 = 0;
    for a in 0..essential.len() {
        let (i, sol) = essential[a];
        if !sol.complex {
            r2 += 1;
            continue;
        }
        if paired[a] {
            continue;
        }
        let conj: Vec<_> = sol.z.iter().map(|x| x.conj()).collect();
        let partner = (0..essential.len()).find(|&b| {
            b != a && !paired[b] && essential[b].1.complex && {
                let other = &essential[b].1.z;
                conj.iter().zip(other).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) < tol.dedup
            }
        });
        let Some(b) = partner else {
            return Err(Error::Unpaired(i));
        };
        paired[a] = true;
        paired[b] = true;
        values.push(complex_volume(potential, sol)?.vol.abs());
    }
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(BorelComponents { r1: values.len(), values, r2 })
}

/// Continued-fraction numerator `alpha(a_1, ..., a_m)`:
/// `alpha() = 1`, `alpha(a_1) = a_1`,
/// `alpha(a_1..a_k) = a_k alpha(a_1..a_{k-1}) + alpha(a_1..a_{k-2})`.
pub fn two_bridge_alpha(a: &[u64]) -> BigUint {
    let mut prev = BigUint::one();
    let mut cur = match a.first() {
        Some(&a1) => BigUint::from(a1),
        None => return prev,
    };
    for &ak in &a[1..] {
        let next = &cur * ak + &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Upper bound `floor((alpha - 1) / 2)` on the invariant trace field degree
/// of the 2-bridge link `C(a_1, ..., a_m)`.
pub fn two_bridge_bound(a: &[u64]) -> Result<BigUint> {
    let m = a.len();
    if m < 2 {
        return Err(Error::InvalidArgument(alloc::format!("need at least 2 Conway entries, got {m}")));
    }
    if a[0] < 2 || a[m - 1] < 2 {
        return Err(Error::InvalidArgument(String::from("first and last Conway entries must be >= 2")));
    }
    if a.contains(&0) {
        return Err(Error::InvalidArgument(String::from("Conway entries must be positive")));
    }
    Ok((two_bridge_alpha(a) - 1u32) / 2u32)
}

/// Whether the number of essential solutions reaches a known field degree.
pub fn theorem1_check(set: &SolutionSet, lower: usize) -> bool {
    count_essential(set) >= lower
}

/// Per-solution entry of a [`VolumeReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionEntry {
    pub solution: Solution,
    /// `None` for non-essential points.
    pub volume: Option<ComplexVolume>,
    pub prop_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    pub entries: Vec<SolutionEntry>,
    pub geometric_index: Option<usize>,
    pub borel: Vec<f64>,
    pub r1: usize,
    pub r2: usize,
    pub degree_lower_bound: usize,
    pub two_bridge_bound: Option<BigUint>,
    pub exhaustive: bool,
    pub warnings: Vec<Warning>,
}

impl VolumeReport {
    pub fn build(
        potential: &PotentialFunction,
        set: &SolutionSet,
        two_bridge_bound: Option<BigUint>,
        tol: &Tolerances,
    ) -> Result<VolumeReport> {
        let entries = set
            .solutions()
            .iter()
            .map(|sol| {
                Ok(if sol.essential {
                    SolutionEntry {
                        solution: sol.clone(),
                        volume: Some(complex_volume(potential, sol)?),
                        prop_discrepancy: Some(prop_check(potential, sol)?),
                    }
                } else {
                    SolutionEntry { solution: sol.clone(), volume: None, prop_discrepancy: None }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut warnings = Vec::new();
        let geometric_index = match select_geometric(potential, set) {
            Ok(choice) => {
                warnings.extend(choice.warning);
                Some(choice.index)
            }
            Err(Error::NotFound) => {
                warnings.push(Warning::NoEssentialSolution);
                None
            }
            Err(e) => return Err(e),
        };
        let borel = borel_components(potential, set, tol)?;
        Ok(VolumeReport {
            entries,
            geometric_index,
            borel: borel.values,
            r1: borel.r1,
            r2: borel.r2,
            degree_lower_bound: count_essential(set),
            two_bridge_bound,
            exhaustive: set.is_exhaustive(),
            warnings,
        })
    }

    pub fn geometric_volume(&self) -> Option<ComplexVolume> {
        self.geometric_index.and_then(|i| self.entries[i].volume)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_recursion() {
        assert_eq!(two_bridge_alpha(&[]), BigUint::from(1u32));
        assert_eq!(two_bridge_alpha(&[3]), BigUint::from(3u32));
        assert_eq!(two_bridge_alpha(&[2, 2]), BigUint::from(5u32));
        assert_eq!(two_bridge_alpha(&[2, 3]), BigUint::from(7u32));
        // alpha(2,1,2) = 2 * alpha(2,1) + alpha(2) = 2 * 3 + 2
        assert_eq!(two_bridge_alpha(&[2, 1, 2]), BigUint::from(8u32));
    }

    #[test]
    fn bound_values_and_preconditions() {
        assert_eq!(two_bridge_bound(&[2, 2]).unwrap(), BigUint::from(2u32));
        assert_eq!(two_bridge_bound(&[2, 3]).unwrap(), BigUint::from(3u32));
        assert!(two_bridge_bound(&[1, 2]).is_err());
        assert!(two_bridge_bound(&[2, 1]).is_err());
        assert!(two_bridge_bound(&[2]).is_err());
        assert!(two_bridge_bound(&[2, 0, 2]).is_err());
    }

    #[test]
    fn huge_conway_entries_stay_exact() {
        let a = [u64::MAX, u64::MAX, u64::MAX];
        let alpha = two_bridge_alpha(&a);
        let m = BigUint::from(u64::MAX);
        assert_eq!(alpha, &m * &m * &m + &m + &m);
    }

    #[test]
    fn cs_reduction_interval() {
        for x in [-30.0, -PI2 / 2.0, 0.0, 3.0, PI2 / 2.0, 4.5 * PI2] {
            let r = reduce_mod_pi2(x);
            assert!((-PI2 / 2.0..PI2 / 2.0).contains(&r), "{x} -> {r}");
            let k = ((x - r) / PI2).round();
            assert!((x - r - k * PI2).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_set() {
        let set = SolutionSet::empty();
        assert!(!theorem1_check(&set, 1));
        let v = PotentialFunction::assemble(crate::diagram::twist_knot_triangulation(1).unwrap());
        assert_eq!(select_geometric(&v, &set), Err(Error::NotFound));
    }
}
