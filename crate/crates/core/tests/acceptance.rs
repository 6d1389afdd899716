//! Acceptance criteria 1 to 9, one PASS/FAIL line each.
//!
//! Every criterion is evaluated at its stated tolerance. Two sub-claims are
//! known to be false for the true functional values (see `UNATTAINABLE`); the
//! test prints FAIL for them and asserts that they still fail, so a change in
//! either direction is noticed.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polya::bounds::{bessel_zero_minorant, thinning_upper};
use polya::closed_forms::{bessel_first_zero, rect_center_torsion, rect_f, rect_torsion};
use polya::constants::rat;
use polya::geometry::{Rectangle, Triangle};
use polya::harness::{case_function_exact, rect_monotonicity_scan, sweep_triangles, Config, SweepGrid};
use polya::pde_oracle::{altitude_split, spectral, Shape};
use polya::polycert::{
    build_lemma_polynomial, certify_nonpositive, eval_exact, lemma_intervals, taylor_shift, LemmaName, RationalPoly,
};
use polya::Error;

/// Criteria whose full statement is false, with the part that fails.
const UNATTAINABLE: [(u32, &str); 2] = [
    (6, "F(R_{100,1}) = 0.8174 is 0.62% below pi^2/12; the deficit decays like 0.63/a"),
    (7, "F at b = 0.05 is 0.4812; it first drops below 0.48 between b = 0.049 and 0.048"),
];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn criterion_1() -> Outcome {
    let (a, b) = (rat(1, 2), rat(29, 10));
    let t = Instant::now();
    let g = case_function_exact("acute-1a.g", &[a, b]).unwrap();
    let elapsed = t.elapsed();
    let expected = rat(501126, 495785);
    Outcome {
        id: 1,
        pass: g == expected && g > rat(1, 1) && elapsed < Duration::from_millis(1),
        detail: format!("g(1/2, 29/10) = {g} in {elapsed:?}"),
    }
}

fn criterion_2() -> Outcome {
    let jobs = [
        (LemmaName::P2Acute, rat(285, 1000)),
        (LemmaName::NegP1PrimeMono, rat(444, 1000)),
        (LemmaName::NegP1PrimeMonoShifted, rat(444, 1000)),
        (LemmaName::QMgeq3, rat(686, 1000)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, dx) in jobs {
        let p = build_lemma_polynomial(name);
        // upper rounding: the certified polynomial dominates every polynomial
        // in the coefficient enclosure
        let iv = lemma_intervals(name);
        let dominates = (0..p.coeffs().len().max(iv.upper().coeffs().len())).all(|i| p.coeff(i) >= iv.coeff(i).hi);
        let t = Instant::now();
        let cert = certify_nonpositive(&p, &dx, 40);
        let secs = t.elapsed().as_secs_f64();
        let ok = match &cert {
            Ok(c) => c.depth <= 40 && c.recheck(&p),
            Err(_) => false,
        };
        pass &= ok && dominates && secs < 10.0;
        parts.push(format!(
            "{name} on (0, {dx}]: {} depth {} {secs:.2}s{}",
            if ok { "ok" } else { "failed" },
            cert.as_ref().map(|c| c.depth).unwrap_or(0),
            if dominates { "" } else { " NOT upper-rounded" }
        ));
    }
    Outcome {
        id: 2,
        pass,
        detail: parts.join("; "),
    }
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let e = spectral(&Shape::Triangle(Triangle::equilateral()), 7).unwrap();
    let sq = spectral(&Shape::Rectangle(Rectangle::new(0.5, 0.5).unwrap()), 7).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let (l, tt, f, s) = (
        rel(e.lambda1, 16.0 * PI * PI / 3.0),
        rel(e.torsion, 3f64.sqrt() / 320.0),
        rel(e.f, PI * PI / 15.0),
        rel(sq.lambda1, 2.0 * PI * PI),
    );
    Outcome {
        id: 3,
        pass: l < 5e-3 && tt < 5e-3 && f < 1e-2 && s < 2e-3 && secs < 120.0,
        detail: format!(
            "rel. errors lambda1(E) {l:.1e}, T(E) {tt:.1e}, F(E) {f:.1e}, lambda1(unit square) {s:.1e}; {secs:.1}s at level 7"
        ),
    }
}

fn criterion_4() -> Outcome {
    let r = Rectangle::new(1.0, 1.0).unwrap();
    let series_t = rect_torsion(&r, 64).unwrap();
    let series_f = rect_f(&r, 64).unwrap();
    let fem = spectral(&Shape::Rectangle(r), 7).unwrap();
    let agree = rel(fem.torsion, series_t.value);
    let band = 0.690..=0.698;
    Outcome {
        id: 4,
        pass: agree < 1e-3 && band.contains(&series_f.value) && band.contains(&fem.f),
        detail: format!(
            "T series {:.8} vs FEM {:.8} (rel {agree:.1e}); F series {:.6}, FEM {:.6}",
            series_t.value, fem.torsion, series_f.value, fem.f
        ),
    }
}

fn criterion_5() -> Outcome {
    let cfg = Config {
        b_min: 0.02,
        level: 6,
        ..Config::default()
    };
    let grid = SweepGrid::from_config(&cfg);
    let t = Instant::now();
    let rows = sweep_triangles(&grid);
    let secs = t.elapsed().as_secs_f64();
    let (lo, hi) = (PI * PI / 24.0, PI * PI / 12.0);
    let errors = rows.iter().filter(|r| r.error.is_some()).count();
    let outside = rows.iter().filter(|r| !(r.f > lo && r.f < hi)).count();
    let violations: Vec<String> = rows
        .iter()
        .flat_map(|r| r.bound_violations(1e-3).into_iter().map(move |g| format!("{} at ({}, {})", g.name, r.a, r.b)))
        .collect();
    let worst_low = rows.iter().map(|r| r.margin_low).fold(f64::INFINITY, f64::min);
    Outcome {
        id: 5,
        pass: !rows.is_empty() && errors == 0 && outside == 0 && violations.is_empty(),
        detail: format!(
            "{} rows ({}x{}, level {}, {secs:.0}s): {errors} oracle errors, {outside} outside (pi^2/24, pi^2/12), {} bound violations{}; smallest F - pi^2/24 = {worst_low:.4}",
            rows.len(),
            cfg.na,
            cfg.nb,
            cfg.level,
            violations.len(),
            violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    }
}

fn criterion_6() -> Outcome {
    let a: Vec<f64> = (0..=18).map(|i| 1.0 + 0.5 * i as f64).collect();
    let scan = rect_monotonicity_scan(&a, 64).unwrap();
    let far = rect_f(&Rectangle::new(100.0, 1.0).unwrap(), 512).unwrap();
    let limit = PI * PI / 12.0;
    let gap = (limit - far.value) / limit;
    let floor = 64.0 / PI.powi(4);
    let floor_ok = scan.floor_ok && far.value >= floor;
    Outcome {
        id: 6,
        pass: scan.nondecreasing && gap.abs() <= 5e-3 && floor_ok,
        detail: format!(
            "nondecreasing on 1..10: {} (worst step {:.2e}); F(R_100,1) = {:.6} +- {:.0e}, {:.3}% from pi^2/12 (needs 0.5%); F >= 64/pi^4: {floor_ok}",
            scan.nondecreasing,
            scan.worst_step,
            far.value,
            far.tail_bound,
            100.0 * gap
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut values = Vec::new();
    let mut below_thinning = true;
    for b in [0.2, 0.1, 0.05] {
        let t = Triangle::new(0.5, b).unwrap();
        let r = spectral(&Shape::Triangle(t), 7).unwrap();
        let d = t.derive().unwrap();
        let up = thinning_upper(d.area, d.perimeter).unwrap().value;
        below_thinning &= r.f < up;
        values.push((b, r.f, up));
    }
    let decreasing = values.windows(2).all(|w| w[1].1 < w[0].1);
    let above_floor = values.iter().all(|v| v.1 > PI * PI / 24.0);
    let last = values[2].1;
    Outcome {
        id: 7,
        pass: decreasing && above_floor && below_thinning && last < 0.48,
        detail: format!(
            "{}; decreasing {decreasing}, above pi^2/24 {above_floor}, below thinning bound {below_thinning}, F(b=0.05) < 0.48: {}",
            values
                .iter()
                .map(|(b, f, u)| format!("F(b={b}) = {f:.5} (bound {u:.5})"))
                .collect::<Vec<_>>()
                .join(", "),
            last < 0.48
        ),
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> RationalPoly {
    let len = rng.gen_range(1..=8);
    let mut c: Vec<BigRational> = (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-30i64..=30)), BigInt::from(rng.gen_range(1i64..=9))))
        .collect();
    // push most constants negative so that a fair share certify
    if rng.gen_bool(0.8) {
        c[0] = -c[0].abs() - BigRational::new(BigInt::from(rng.gen_range(0i64..40)), BigInt::from(8));
    }
    RationalPoly::new(c)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut certified, mut false_positives) = (0usize, 0usize);
    for _ in 0..1000 {
        let p = random_poly(&mut rng);
        let dx = BigRational::new(BigInt::from(rng.gen_range(1i64..=20)), BigInt::from(rng.gen_range(1i64..=8)));
        match certify_nonpositive(&p, &dx, 20) {
            Ok(_) => {
                certified += 1;
                let positive = (1..=400i64).any(|k| eval_exact(&p, &(&dx * rat(k, 400))).is_positive());
                false_positives += positive as usize;
            }
            Err(Error::DepthExhausted(_)) => {}
            Err(e) => panic!("certifier error {e}"),
        }
    }
    let round_trips = (0..200)
        .filter(|_| {
            let p = random_poly(&mut rng);
            let c = BigRational::new(BigInt::from(rng.gen_range(-50i64..=50)), BigInt::from(rng.gen_range(1i64..=17)));
            taylor_shift(&taylor_shift(&p, &c), &-c.clone()) == p
        })
        .count();
    let bessel_ok = (1..=20).all(|nu| {
        let nu = nu as f64;
        bessel_first_zero(nu).unwrap() > bessel_zero_minorant(nu)
    });
    let mut worst_scale = 0f64;
    for (a, b) in [(0.5, 0.866), (0.35, 0.6), (0.25, 0.2)] {
        let t = Triangle::new(a, b).unwrap();
        let base = spectral(&Shape::Triangle(t), 5).unwrap();
        for s in [0.1, 2.5, 40.0] {
            let shape = match altitude_split(&t) {
                Some(Shape::Polygon(v)) => Shape::Polygon(v.iter().map(|p| [p[0] * s, p[1] * s]).collect()),
                _ => Shape::Polygon(t.dilate(s).to_vec()),
            };
            worst_scale = worst_scale.max(rel(spectral(&shape, 5).unwrap().f, base.f));
        }
    }
    Outcome {
        id: 8,
        pass: false_positives == 0 && certified > 0 && round_trips == 200 && bessel_ok && worst_scale < 1e-10,
        detail: format!(
            "{certified}/1000 certified, {false_positives} false positives; {round_trips}/200 shift round trips; Bessel minorant holds for nu = 1..20: {bessel_ok}; dilation changes F by {worst_scale:.1e}"
        ),
    }
}

fn criterion_9() -> Outcome {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = rect_center_torsion(&Rectangle::new(h, h).unwrap(), 64).unwrap();
    let v = 2.0 * u.value;
    Outcome {
        id: 9,
        pass: (v - 0.294685).abs() <= 1e-5,
        detail: format!("2 u(0,0) = {v:.8} (tail {:.0e})", 2.0 * u.tail_bound),
    }
}

#[test]
fn acceptance_criteria() {
    let runs: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let outcomes: Vec<Outcome> = runs.iter().map(|f| f()).collect();
    // written to the raw handle so the lines survive libtest's output capture
    let mut err = std::io::stderr().lock();
    for o in &outcomes {
        writeln!(err, "criterion {}: {}  {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail).unwrap();
    }
    for (id, why) in UNATTAINABLE {
        writeln!(err, "criterion {id} is expected to fail: {why}").unwrap();
    }
    drop(err);
    let known = |id: u32| UNATTAINABLE.iter().any(|(k, _)| *k == id);
    let unexpected: Vec<u32> = outcomes.iter().filter(|o| o.pass == known(o.id)).map(|o| o.id).collect();
    assert!(unexpected.is_empty(), "criteria with an unexpected outcome: {unexpected:?}");
}
