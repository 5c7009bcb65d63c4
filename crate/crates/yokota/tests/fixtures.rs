use std::path::PathBuf;

use proptest::prelude::*;
use yokota::fixture::{parse, to_toml};
use yokota::run::{run_fixture, run_fixture_str, run_twist, Options, RunError};
use yokota_core::diagram::twist_knot_triangulation;
use yokota_core::{PotentialFunction, SideRef, Sign, TetraTerm, Triangulation};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> Triangulation {
    parse(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

const WORKED_EXAMPLE_V: &str = "Li2(z1/z4) - Li2(z1/z3) + Li2(z1) - Li2(1/z4) + Li2(z2/z4) - Li2(z2) - Li2(1/z2) \
+ Li2(z5/z2) - Li2(z5) - Li2(1/z5) + Li2(z3/z5) - Li2(z3) + pi^2/3";

#[test]
fn worked_example_renders_expected_potential() {
    let tri = load("worked_example.toml");
    assert_eq!((tri.n(), tri.s()), (5, 12));
    let sigma_sum: i32 = tri.terms().iter().map(|t| t.sigma.value()).sum();
    assert_eq!(sigma_sum, -2);
    let v = PotentialFunction::assemble(tri);
    assert_eq!(v.to_string(), WORKED_EXAMPLE_V);
    assert_eq!(v.constant_sixths(), 2);
}

#[test]
fn twist2_fixture_matches_generator() {
    assert_eq!(load("twist2.toml"), twist_knot_triangulation(2).unwrap());
}

#[test]
fn worked_example_pipeline() {
    let report = run_fixture(&fixture_path("worked_example.toml"), &Options::default()).unwrap();
    assert!(!report.exhaustive);
    assert_eq!(report.provenance.solver, "generic");
    assert!(report.essential_count() > 0);
    let geo = report.geometric.unwrap().vol;
    for s in report.solutions.iter().filter(|s| s.essential) {
        assert!(s.prop_discrepancy.unwrap() < 1e-9);
        assert!(s.volume.unwrap().vol.abs() <= geo + 1e-9);
    }
    assert_eq!(report.borel.len(), report.r1);
    assert_eq!(report.borel[0], geo);
}

#[test]
fn twist2_fixture_agrees_with_exact_path() {
    let opts = Options::default();
    let generic = run_fixture(&fixture_path("twist2.toml"), &opts).unwrap();
    let exact = run_twist(2, &opts).unwrap();
    assert_eq!(generic.essential_count(), exact.essential_count());
    for e in exact.solutions.iter().filter(|s| s.essential) {
        let hit = generic
            .solutions
            .iter()
            .any(|g| g.z.iter().zip(&e.z).all(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]) < 1e-8));
        assert!(hit, "exact solution {:?} not found generically", e.z);
    }
}

#[test]
fn fixture_errors_map_to_format_failures() {
    let opts = Options::default();
    let cases = [
        "n = 1\nterms = []\n",
        "n = 1\nterms = [{ sigma = 0, num = \"1\", den = \"z1\" }]\n",
        "n = 1\nterms = [{ sigma = 1, num = \"z2\", den = \"z1\" }]\n",
        "n = 1\nterms = [{ sigma = 1, num = \"1\", den = \"z1\", colour = \"red\" }]\n",
        "n = 1\nterms = [{ sigma = 1, num = \"1\" den = \"z1\" }]\n",
        "n = 1\n",
    ];
    for src in cases {
        match run_fixture_str(src, "inline", &opts) {
            Err(e @ RunError::Format { .. }) => assert_eq!(e.exit_code(), 2),
            other => panic!("{src:?} gave {other:?}"),
        }
    }
    let missing = run_fixture(&fixture_path("no-such-file.toml"), &opts).unwrap_err();
    assert_eq!(missing.exit_code(), 2);
}

#[test]
fn fixture_without_essential_solutions_warns() {
    // V = Li2(z1): the only equation is 1 - z1 = 1
    let opts = Options::default();
    let report =
        run_fixture_str("n = 1\nterms = [{ sigma = 1, num = \"z1\", den = \"1\" }]\n", "inline", &opts).unwrap();
    assert_eq!(report.essential_count(), 0);
    assert_eq!(report.geometric_index, None);
    assert_eq!(report.warnings.len(), 1);
}

fn side(n: usize) -> impl Strategy<Value = SideRef> {
    prop_oneof![Just(SideRef::Unit), (1..=n).prop_map(SideRef::Var)]
}

fn triangulation() -> impl Strategy<Value = Triangulation> {
    (1usize..6)
        .prop_flat_map(|n| {
            let term = (any::<bool>(), side(n), side(n)).prop_filter_map("degenerate", |(plus, a, b)| {
                (a != b).then(|| TetraTerm::new(if plus { Sign::Plus } else { Sign::Minus }, a, b))
            });
            (Just(n), prop::collection::vec(term, 1..16))
        })
        .prop_filter_map("unused variable", |(n, terms)| Triangulation::new(n, terms).ok())
}

proptest! {
    #[test]
    fn round_trip(tri in triangulation()) {
        let text = to_toml(&tri);
        prop_assert_eq!(parse(&text).unwrap(), tri);
    }
}
