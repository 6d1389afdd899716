use std::f64::consts::PI;

use polya::geometry::{in_region, Region, Triangle, TriangleClass};
use proptest::prelude::*;

fn sorted_angles(t: &Triangle) -> [f64; 3] {
    let d = t.derive().unwrap();
    let mut a = [d.alpha, d.beta, d.gamma];
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    a
}

fn grid(a0: f64, a1: f64, b0: f64, b1: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..=n).flat_map(move |i| {
        (0..=n).map(move |j| (a0 + (a1 - a0) * i as f64 / n as f64, b0 + (b1 - b0) * j as f64 / n as f64))
    })
}

#[test]
fn acute_cases_cover_the_acute_chart() {
    for (a, b) in grid(0.0, 0.5, 0.8, 40.0, 400) {
        if !in_region(a, b, Region::AcuteChart) {
            continue;
        }
        let covered = [Region::AcuteCase1a, Region::AcuteCase1b, Region::AcuteCase2]
            .iter()
            .any(|r| r.contains(a, b));
        assert!(covered, "({a}, {b}) is in no acute case");
    }
}

#[test]
fn obtuse_cases_cover_the_obtuse_region() {
    for (a, b) in grid(0.0, 0.5, 1e-4, 0.5, 400) {
        // strictly obtuse shapes only; the right arc belongs to both charts
        if !in_region(a, b, Region::Obtuse) || b >= (a - a * a).sqrt() {
            continue;
        }
        let covered = [Region::ObtuseCase1, Region::ObtuseCase2, Region::ObtuseCase3]
            .iter()
            .any(|r| r.contains(a, b));
        assert!(covered, "({a}, {b}) is in no obtuse case");
    }
}

#[test]
fn reference_chart_splits_into_acute_and_obtuse() {
    for (a, b) in grid(0.0, 0.5, 1e-3, 0.87, 200) {
        if !in_region(a, b, Region::Reference) {
            continue;
        }
        let t = Triangle::new(a, b).unwrap();
        match t.classify().unwrap() {
            TriangleClass::Obtuse | TriangleClass::IsoscelesObtuse => {
                assert!(Region::Obtuse.contains(a, b), "({a}, {b})");
                assert!(t.to_acute_chart().unwrap().is_none());
            }
            TriangleClass::Acute | TriangleClass::IsoscelesAcute | TriangleClass::Equilateral => {
                let s = t.to_acute_chart().unwrap().unwrap();
                assert!(Region::AcuteChart.contains(s.a, s.b), "({a}, {b}) -> ({}, {})", s.a, s.b);
            }
            TriangleClass::Right | TriangleClass::Degenerate => {}
        }
    }
}

fn any_triangle() -> impl Strategy<Value = Triangle> {
    (-2.0..3.0f64, 0.01..3.0f64).prop_map(|(a, b)| Triangle::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn reference_chart_is_a_similarity(t in any_triangle()) {
        let r = t.to_reference_chart().unwrap();
        prop_assert!(Region::Reference.contains(r.a, r.b), "({}, {})", r.a, r.b);
        let (x, y) = (sorted_angles(&t), sorted_angles(&r));
        for k in 0..3 {
            prop_assert!((x[k] - y[k]).abs() < 1e-9);
        }
        let again = r.to_reference_chart().unwrap();
        prop_assert!((again.a - r.a).abs() < 1e-12 && (again.b - r.b).abs() < 1e-12);
    }

    #[test]
    fn acute_chart_is_a_similarity(t in any_triangle()) {
        let ang = sorted_angles(&t);
        match t.to_acute_chart().unwrap() {
            Some(s) => {
                prop_assert!(ang[2] <= PI / 2.0 + 1e-9);
                prop_assert!(Region::AcuteChart.contains(s.a, s.b));
                let y = sorted_angles(&s);
                for k in 0..3 {
                    prop_assert!((ang[k] - y[k]).abs() < 1e-9);
                }
            }
            None => prop_assert!(ang[2] > PI / 2.0 - 1e-9),
        }
    }

    #[test]
    fn classification_is_chart_invariant(t in any_triangle()) {
        let r = t.to_reference_chart().unwrap();
        let (c, d) = (t.classify().unwrap(), r.classify().unwrap());
        let obtuse = |c| matches!(c, TriangleClass::Obtuse | TriangleClass::IsoscelesObtuse);
        prop_assert_eq!(obtuse(c), obtuse(d));
    }
}
