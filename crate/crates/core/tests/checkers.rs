mod common;

use common::strategies::*;
use common::*;
use critloc::geom::convex_hull_indexed;
use critloc::poly::RootSet;
use critloc::theorems::*;
use critloc::Complex64;
use proptest::prelude::*;

fn mapped(s: &RootSet, (alpha, beta): (Complex64, Complex64)) -> RootSet {
    s.affine(alpha, beta)
}

fn first_edge(s: &RootSet) -> Option<(usize, usize)> {
    let h = convex_hull_indexed(s, 1e-9).ok()?;
    (h.indices.len() >= 3).then(|| (h.indices[0], h.indices[1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_survive_affine_maps(s in zeros(2, 8), ab in affine()) {
        let t = mapped(&s, ab);
        let pairs = [
            (check_main_theorem(&s, 1e-6).unwrap(), check_main_theorem(&t, 1e-6).unwrap()),
            (check_gauss_lucas(&s, 1e-9).unwrap(), check_gauss_lucas(&t, 1e-9).unwrap()),
        ];
        for (a, b) in pairs {
            prop_assert_eq!(a.verdict, Verdict::Pass);
            prop_assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn real_verdicts_survive_real_affine_maps(s in prop::collection::vec(-1.0..1.0f64, 2..9), a in 0.2..3.0f64, b in -2.0..2.0f64) {
        let s = RootSet::from_real(&s);
        let t = mapped(&s, (c(a, 0.0), c(b, 0.0)));
        let x = check_interlacing(&s, 1e-6).unwrap();
        let y = check_interlacing(&t, 1e-6).unwrap();
        prop_assert_eq!(x.verdict, Verdict::Pass);
        prop_assert_eq!(y.verdict, Verdict::Pass);
    }

    #[test]
    fn triangle_verdicts_survive_affine_maps(v in prop::array::uniform3(disk_point()), ab in affine()) {
        prop_assume!(critloc::geom::cross(v[0], v[1], v[2]).abs() > 1e-2);
        let s = RootSet::new(v.to_vec());
        let t = mapped(&s, ab);
        for (x, y) in [
            (check_bgm(&s, 1e-8).unwrap(), check_bgm(&t, 1e-8).unwrap()),
            (check_poor_mans_siebeck(&s, 360, 1e-6).unwrap(), check_poor_mans_siebeck(&t, 360, 1e-6).unwrap()),
        ] {
            prop_assert_eq!(x.verdict, Verdict::Pass, "{:?}", x);
            prop_assert_eq!(x.verdict, y.verdict, "{:?}", y);
        }
    }

    #[test]
    fn edge_preimage_survives_affine_maps(s in zeros(3, 7), ab in affine()) {
        let edge = first_edge(&s);
        prop_assume!(edge.is_some());
        let edge = edge.unwrap();
        let x = check_edge_preimage(&s, edge, 240, 1e-6).unwrap();
        let y = check_edge_preimage(&mapped(&s, ab), edge, 240, 1e-6).unwrap();
        prop_assert_eq!(x.verdict, y.verdict);
    }

    #[test]
    fn missing_hypotheses_are_never_failures(xs in prop::collection::vec(-1.0..1.0f64, 3..8), ab in affine()) {
        // Collinear zeros.
        let s = RootSet::from_real(&xs).affine(ab.0, ab.1);
        for r in [check_bgm(&s, 1e-8), check_poor_mans_siebeck(&s, 180, 1e-6)].into_iter().flatten() {
            prop_assert_ne!(r.verdict, Verdict::Fail);
        }
        let a = critloc::numlin::ComplexMatrix::identity(3);
        prop_assert_eq!(check_elliptical_range(&a, 90, 1e-6).unwrap().verdict, Verdict::PreconditionsUnmet);
    }
}

#[test]
fn impossible_tolerance_is_a_failure_not_unmet() {
    let s = RootSet::new(vec![c(0.3, 0.1), c(-0.8, 0.4), c(0.1, -0.9), c(0.6, 0.6)]);
    let r = check_main_theorem(&s, 1e-300).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.unmet.is_none());
}

#[test]
fn non_real_zeros_leave_interlacing_unmet() {
    let s = RootSet::new(vec![c(0.0, 1.0), c(1.0, 0.0), c(-1.0, 0.0)]);
    assert_eq!(
        check_interlacing(&s, 1e-9).unwrap().verdict,
        Verdict::PreconditionsUnmet
    );
}

#[test]
fn report_json_round_trips() {
    let s = RootSet::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
    let r = check_bgm(&s, 1e-9).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: CheckReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
