//! Serializable reports and their plain-text rendering.
//!
//! JSON floats use the shortest representation that parses back to the
//! same `f64`; non-finite values become `null`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use yokota_core::volume::Warning;
use yokota_core::{Complex64, ComplexVolume, PotentialFunction, SolverConfig, VolumeReport};

pub const BOREL_NOTE: &str =
    "each value is |Im V0| of a conjugate pair; the Borel component itself is plus or minus that value";

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Tolerances {
    pub essential: f64,
    pub complex: f64,
    pub dedup: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Provenance {
    /// `exact-twist` or `generic`.
    pub solver: String,
    /// Random starts and seed; absent for the exact path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
}

impl Provenance {
    pub fn exact(config: &SolverConfig) -> Self {
        Provenance { solver: "exact-twist".into(), attempts: None, seed: None, tolerances: tolerances(config) }
    }

    pub fn generic(config: &SolverConfig) -> Self {
        Provenance {
            solver: "generic".into(),
            attempts: Some(config.attempts),
            seed: Some(config.seed),
            tolerances: tolerances(config),
        }
    }
}

fn tolerances(config: &SolverConfig) -> Tolerances {
    let t = &config.tolerances;
    Tolerances { essential: t.essential, complex: t.complex, dedup: t.dedup, residual: t.residual }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Volume {
    pub vol: f64,
    pub cs: f64,
}

impl From<ComplexVolume> for Volume {
    fn from(v: ComplexVolume) -> Self {
        Volume { vol: v.vol, cs: v.cs }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SolutionRecord {
    /// Coordinates as `[re, im]` pairs.
    pub z: Vec<[f64; 2]>,
    pub residual: f64,
    pub essential: bool,
    pub complex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<Volume>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CrossCheck {
    pub attempts: usize,
    pub seed: u64,
    pub generic_essential: usize,
    /// Exact solutions with no generic point within the dedup distance.
    pub missing: usize,
    /// Generic points with no exact solution within the dedup distance.
    pub extra: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub provenance: Provenance,
    pub n: usize,
    pub s: usize,
    pub potential: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_polynomial: Option<String>,
    pub solutions: Vec<SolutionRecord>,
    pub geometric_index: Option<usize>,
    pub geometric: Option<Volume>,
    pub borel: Vec<f64>,
    pub borel_note: String,
    pub r1: usize,
    pub r2: usize,
    pub degree_lower_bound: usize,
    #[serde(serialize_with = "big_opt")]
    pub two_bridge_bound: Option<BigUint>,
    pub exhaustive: bool,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TwoBridgeReport {
    pub command: String,
    pub conway: Vec<u64>,
    #[serde(serialize_with = "big")]
    pub alpha: BigUint,
    #[serde(serialize_with = "big")]
    pub bound: BigUint,
}

/// Integers that fit in `u64` are JSON numbers, larger ones decimal strings.
fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

fn big_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => big(x, s),
        None => s.serialize_none(),
    }
}

/// Shortest round-trip digits, in exponent form away from unit scale.
fn num(x: f64) -> String {
    if x != 0.0 && x.is_finite() && !(1e-4..1e6).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn warning_text(w: Warning) -> &'static str {
    match w {
        Warning::NoComplexSolution => "no complex essential solution; geometric volume is 0",
        Warning::NoEssentialSolution => "no essential solution found",
    }
}

impl Report {
    pub fn new(command: &str, provenance: Provenance, potential: &PotentialFunction, vr: &VolumeReport) -> Self {
        let solutions = vr
            .entries
            .iter()
            .map(|e| SolutionRecord {
                z: e.solution.z.iter().copied().map(pair).collect(),
                residual: e.solution.residual,
                essential: e.solution.essential,
                complex: e.solution.complex,
                volume: e.volume.map(Volume::from),
                prop_discrepancy: e.prop_discrepancy,
            })
            .collect();
        Report {
            command: command.into(),
            provenance,
            n: potential.n(),
            s: potential.s(),
            potential: potential.to_string(),
            final_polynomial: None,
            solutions,
            geometric_index: vr.geometric_index,
            geometric: vr.geometric_volume().map(Volume::from),
            borel: vr.borel.clone(),
            borel_note: BOREL_NOTE.into(),
            r1: vr.r1,
            r2: vr.r2,
            degree_lower_bound: vr.degree_lower_bound,
            two_bridge_bound: vr.two_bridge_bound.clone(),
            exhaustive: vr.exhaustive,
            warnings: vr.warnings.iter().map(|w| warning_text(*w).to_string()).collect(),
            cross_check: None,
        }
    }

    pub fn essential_count(&self) -> usize {
        self.solutions.iter().filter(|s| s.essential).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The same data as [`Report::to_json`], laid out for reading.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let p = &self.provenance;
        let t = &p.tolerances;
        let _ = writeln!(out, "command      {}", self.command);
        let _ = write!(out, "solver       {}", p.solver);
        if let (Some(a), Some(seed)) = (p.attempts, p.seed) {
            let _ = write!(out, " (attempts {a}, seed {seed})");
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "tolerances   essential {} complex {} dedup {} residual {}",
            num(t.essential),
            num(t.complex),
            num(t.dedup),
            num(t.residual)
        );
        let _ = writeln!(out, "n, s         {}, {}", self.n, self.s);
        let _ = writeln!(out, "V            {}", self.potential);
        if let Some(f) = &self.final_polynomial {
            let _ = writeln!(out, "reduced      {f}");
        }
        out.push('\n');
        let _ =
            writeln!(out, "{:>3}  {:<4} {:<24} {:<24} {:<24} {:<24} z", "#", "kind", "residual", "vol", "cs", "prop");
        for (i, s) in self.solutions.iter().enumerate() {
            let kind = match (s.essential, s.complex) {
                (false, _) => "-",
                (true, false) => "real",
                (true, true) => "cplx",
            };
            let mark = if Some(i) == self.geometric_index { "*" } else { " " };
            let (vol, cs) = s.volume.map_or((String::from("-"), String::from("-")), |v| (num(v.vol), num(v.cs)));
            let prop = s.prop_discrepancy.map_or(String::from("-"), num);
            let z: Vec<String> =
                s.z.iter()
                    .map(|[re, im]| format!("{}{}{}i", num(*re), if *im < 0.0 { "-" } else { "+" }, num(im.abs())))
                    .collect();
            let _ = writeln!(
                out,
                "{:>2}{mark}  {kind:<4} {:<24} {vol:<24} {cs:<24} {prop:<24} ({})",
                i,
                num(s.residual),
                z.join(", ")
            );
        }
        out.push('\n');
        match (&self.geometric_index, &self.geometric) {
            (Some(i), Some(v)) => {
                let _ = writeln!(out, "geometric    #{i}: vol {} cs {}", num(v.vol), num(v.cs));
            }
            _ => out.push_str("geometric    none\n"),
        }
        let borel: Vec<String> = self.borel.iter().copied().map(num).collect();
        let _ = writeln!(out, "borel        [{}] ({})", borel.join(", "), self.borel_note);
        let _ = writeln!(out, "r1, r2       {}, {}", self.r1, self.r2);
        let _ = writeln!(out, "essential    {} (degree lower bound)", self.degree_lower_bound);
        if let Some(b) = &self.two_bridge_bound {
            let _ = writeln!(out, "2-bridge     degree at most {b}");
        }
        let _ = writeln!(out, "exhaustive   {}", self.exhaustive);
        if let Some(c) = &self.cross_check {
            let _ = writeln!(
                out,
                "cross-check  generic (attempts {}, seed {}): {} essential, {} missing, {} extra",
                c.attempts, c.seed, c.generic_essential, c.missing, c.extra
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning      {w}");
        }
        out
    }
}

impl TwoBridgeReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let conway: Vec<String> = self.conway.iter().map(u64::to_string).collect();
        format!("C({})\nalpha        {}\nbound        {}\n", conway.join(","), self.alpha, self.bound)
    }
}
