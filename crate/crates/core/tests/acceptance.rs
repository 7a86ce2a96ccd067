//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits nonzero if any of them fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramification::algebra::{FieldDesc, Poly};
use ramification::chi_ring::{
    chi_of, contradiction_certificate, specialize, ChiExpr, ConstructibleSubset, Mode,
};
use ramification::curve_ram::{
    fubini_constraint, fubini_defect, ramification_report, superelliptic_genus, RamReport,
};
use ramification::local_ram::{
    analyze, q, qi, LocalAnalysis, Q, DEFAULT_PRECISION,
};
use ramification::place::Place;
use ramification::surface_rh::{iversen_chi, SurfaceCover};

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_poly(rng: &mut ChaCha8Rng, field: &FieldDesc, deg: usize, bound: i64) -> Poly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while field.is_zero(&field.from_i64(c[deg])) {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    Poly::from_i64(field, &c)
}

/// 200 random maps over each of F_2, F_3, F_5, F_7 and 100 over Q.
fn curve_corpus() -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let f = FieldDesc::prime(p).unwrap();
        for _ in 0..200 {
            let d = rng.gen_range(2..=12);
            out.push(random_poly(&mut rng, &f, d, p as i64 - 1));
        }
    }
    let qf = FieldDesc::rationals();
    for _ in 0..100 {
        let d = rng.gen_range(2..=9);
        out.push(random_poly(&mut rng, &qf, d, 20));
    }
    out
}

fn curve_reports() -> Result<Vec<RamReport>, String> {
    curve_corpus()
        .iter()
        .map(|f| ramification_report(f).map_err(|e| format!("{f}: {e}")))
        .collect()
}

/// Order of vanishing at t = a by repeated division by (t - a).
fn order_at(f: &Poly, a: i64) -> usize {
    let root = Poly::linear_root(f.field(), &f.field().from_i64(a));
    let mut g = f.clone();
    let mut n = 0;
    loop {
        let (q, r) = g.div_rem(&root).unwrap();
        if !r.is_zero() {
            return n;
        }
        g = q;
        n += 1;
    }
}

/// Over F_p, recompute e and the Riemann-Hurwitz degree at every rational
/// affine point by brute force and compare with the report.
fn rational_points_oracle(r: &RamReport) -> Outcome {
    let field = r.f_sep.field();
    let p = field.characteristic();
    if p == 0 {
        return Ok(());
    }
    let fd = r.f_sep.derivative();
    for a in 0..p as i64 {
        let shifted = &r.f_sep - &Poly::constant(field, r.f_sep.eval(&field.from_i64(a)));
        let e = order_at(&shifted, a);
        let e_tilde = 1 + order_at(&fd, a);
        let place = Place::rational(field, a);
        match r.points.iter().find(|pt| pt.place == place) {
            Some(pt) => check(pt.e == e && pt.e_tilde == e_tilde, || {
                format!("{} at {a}: report ({}, {}) vs oracle ({e}, {e_tilde})", r.f, pt.e, pt.e_tilde)
            })?,
            None => check(e_tilde == 1 && e == 1, || {
                format!("{} at {a}: missing ramified point", r.f)
            })?,
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let reports = curve_reports()?;
    for r in &reports {
        let sum: usize = r
            .points
            .iter()
            .map(|p| p.place_degree * (p.e_tilde - 1))
            .sum();
        check(sum + 2 == 2 * r.deg_sep, || {
            format!("{}: sum {} vs deg_sep {}", r.f, sum, r.deg_sep)
        })?;
        rational_points_oracle(r)?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(10), || format!("took {took:?}"))
}

fn criterion_2() -> Outcome {
    for r in curve_reports()? {
        let ch = r.characteristic() as usize;
        let all_tame = r.points.iter().all(|p| ch == 0 || p.e % ch != 0);
        let defect = fubini_defect(&r);
        check((defect == 0) == all_tame, || {
            format!("{}: defect {defect}, tame {all_tame}", r.f)
        })?;
        if ch == 0 {
            check(defect == 0, || format!("{}: defect over Q", r.f))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    // constraints are relations c = 0, so the overall sign is immaterial
    let same = |c: &ChiExpr, want: &ChiExpr| c == want || c == &(-want);
    for p in [3u64, 5, 7] {
        let f = FieldDesc::prime(p).unwrap();
        let t = Poly::var(&f);
        for m in (2..=10usize).filter(|m| *m as u64 % p != 0) {
            let c = fubini_constraint(&ramification_report(&t.pow(m)).unwrap());
            let want = &ChiExpr::u_minus(2) * &ChiExpr::constant(m as i64 - 1);
            check(same(&c, &want), || format!("t^{m} over F_{p}: {c}"))?;
        }
        let as_map = &t.pow(p as usize) - &t;
        let c = fubini_constraint(&ramification_report(&as_map).unwrap());
        let want = &ChiExpr::u_minus(1) * &ChiExpr::constant(p as i64 - 1);
        check(same(&c, &want), || format!("t^{p} - t over F_{p}: {c}"))?;
        let c = fubini_constraint(&ramification_report(&t.pow(p as usize)).unwrap());
        check(c.is_zero(), || format!("t^{p} over F_{p}: {c}"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in [3u64, 5, 7, 11, 13] {
        let start = Instant::now();
        let cert = contradiction_certificate(p).map_err(|e| format!("p = {p}: {e}"))?;
        // expand by hand rather than trusting Certificate::expand
        let mut total = ChiExpr::zero();
        for ((g, _), m) in cert.generators.iter().zip(&cert.multipliers) {
            total = &total + &(m * g);
        }
        check(total == ChiExpr::constant(p as i64 - 1), || {
            format!("p = {p}: expansion {total}")
        })?;
        let took = start.elapsed();
        check(took < Duration::from_secs(1), || format!("p = {p}: took {took:?}"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let cases = [
        (
            "conic double cover",
            r#"{"chi_s2": 3, "degree": 2,
                "components": [{"name": "conic", "chi": 2, "n_i": 1}], "points": []}"#,
            4,
        ),
        (
            "quartic double cover",
            r#"{"chi_s2": 3, "degree": 2,
                "components": [{"name": "quartic", "chi": -4, "n_i": 1}], "points": []}"#,
            10,
        ),
        (
            "cubic surface projection",
            r#"{"chi_s2": 3, "degree": 3,
                "components": [{"name": "sextic", "chi": -6, "n_i": 2}],
                "points": [
                  {"name": "c1", "fiber_size": 1, "branches": {"sextic": 1}},
                  {"name": "c2", "fiber_size": 1, "branches": {"sextic": 1}},
                  {"name": "c3", "fiber_size": 1, "branches": {"sextic": 1}},
                  {"name": "c4", "fiber_size": 1, "branches": {"sextic": 1}},
                  {"name": "c5", "fiber_size": 1, "branches": {"sextic": 1}},
                  {"name": "c6", "fiber_size": 1, "branches": {"sextic": 1}}]}"#,
            9,
        ),
        (
            "(x^2, id) on P1 x P1",
            r#"{"chi_s2": 4, "degree": 2,
                "components": [{"name": "zero", "chi": 2, "n_i": 1},
                               {"name": "infinity", "chi": 2, "n_i": 1}], "points": []}"#,
            4,
        ),
    ];
    for (name, json, want) in cases {
        let cover = SurfaceCover::from_json(json).map_err(|e| format!("{name}: {e}"))?;
        let got = iversen_chi(&cover).map_err(|e| format!("{name}: {e}"))?;
        check(got == want, || format!("{name}: got {got}, want {want}"))?;
    }
    Ok(())
}

fn big(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

const ZETA3: (u64, [i64; 3]) = (3, [3, 3, 1]);
const GAUSS: (u64, [i64; 3]) = (2, [2, 2, 1]);
const ZETA9: (u64, [i64; 7]) = (3, [3, 9, 18, 21, 15, 6, 1]);

fn run_local(p: u64, g: &[i64], precision: u32) -> Result<(LocalAnalysis, Duration), String> {
    let start = Instant::now();
    let a = analyze(p, &big(g), Some(precision), None).map_err(|e| format!("p = {p}: {e}"))?;
    Ok((a, start.elapsed()))
}

fn criterion_6() -> Outcome {
    let ten = Duration::from_secs(10);

    let (a, took) = run_local(ZETA3.0, &ZETA3.1, DEFAULT_PRECISION)?;
    check(a.profile.lower_breaks == vec![qi(0)], || "Q3(zeta3) lower breaks".into())?;
    check(a.profile.eta_at(&qi(1)) == Some(q(1, 2)), || "Q3(zeta3) eta(1)".into())?;
    check(took < ten, || format!("Q3(zeta3) took {took:?}"))?;

    let (a, took) = run_local(GAUSS.0, &GAUSS.1, DEFAULT_PRECISION)?;
    check(a.profile.lower_breaks == vec![qi(1)], || "Q2(i) lower breaks".into())?;
    check(a.profile.eta_at(&qi(2)) == Some(q(3, 2)), || "Q2(i) eta(2)".into())?;
    check(took < ten, || format!("Q2(i) took {took:?}"))?;

    let (a, took) = run_local(ZETA9.0, &ZETA9.1, DEFAULT_PRECISION)?;
    check(a.profile.lower_breaks == vec![qi(0), qi(2)], || {
        format!("Q3(zeta9) lower breaks {:?}", a.profile.lower_breaks)
    })?;
    check(a.profile.upper_breaks == vec![qi(0), qi(1)], || {
        format!("Q3(zeta9) upper breaks {:?}", a.profile.upper_breaks)
    })?;
    check(took < ten, || format!("Q3(zeta9) took {took:?}"))
}

fn all_extensions() -> Vec<(&'static str, u64, Vec<i64>)> {
    vec![
        ("Q3(zeta3)", ZETA3.0, ZETA3.1.to_vec()),
        ("Q2(i)", GAUSS.0, GAUSS.1.to_vec()),
        ("Q3(zeta9)", ZETA9.0, ZETA9.1.to_vec()),
    ]
}

fn criterion_7() -> Outcome {
    let mut exts = all_extensions();
    exts.push(("trivial", 3, vec![3, 1]));
    for (name, p, g) in exts {
        let (a, _) = run_local(p, &g, DEFAULT_PRECISION)?;
        let expect_window = a.profile.upper_breaks.last().cloned().unwrap_or_else(|| qi(0)) + qi(2);
        check(a.window == expect_window, || format!("{name}: window {}", a.window))?;
        check(a.ball_formula, || format!("{name}: ball formula failed"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (name, p, g) in all_extensions() {
        let (a, _) = run_local(p, &g, DEFAULT_PRECISION)?;
        check(a.action_lemma, || format!("{name}: action lemma failed"))?;
    }
    Ok(())
}

fn rationals_of(a: &LocalAnalysis) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |label: &str, xs: &[Q]| {
        out.push(format!("{label}: {}", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
    };
    push("i", &a.i_values);
    push("lower", &a.profile.lower_breaks);
    push("upper", &a.profile.upper_breaks);
    out.push(format!("eta: {}", a.profile.eta));
    out.push(format!("psi: {}", a.profile.psi));
    out.push(format!("N: {}", a.cluster.ball_count));
    out.push(format!("delta: {:?}", a.cluster.delta));
    out.push(format!("window: {}", a.window));
    out.push(format!("checks: {} {}", a.ball_formula, a.action_lemma));
    out
}

fn criterion_9() -> Outcome {
    for (name, p, g) in all_extensions() {
        let (a, _) = run_local(p, &g, DEFAULT_PRECISION)?;
        let (b, _) = run_local(p, &g, 2 * DEFAULT_PRECISION)?;
        let (ra, rb) = (rationals_of(&a), rationals_of(&b));
        check(ra == rb, || format!("{name}: {ra:?} vs {rb:?}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let f = FieldDesc::prime(5).unwrap();
    let mut pool: Vec<Place> = (0..5).map(|a| Place::rational(&f, a)).collect();
    pool.push(Place::Finite(Poly::from_i64(&f, &[-2, 0, 1])));
    pool.push(Place::Finite(Poly::from_i64(&f, &[-3, 0, 1])));
    pool.push(Place::Finite(Poly::from_i64(&f, &[1, 1, 0, 1])));
    pool.push(Place::Infinity);

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
    let random_set = |rng: &mut ChaCha8Rng| {
        let places: BTreeSet<Place> = pool
            .iter()
            .filter(|_| rng.gen_bool(0.4))
            .cloned()
            .collect();
        let mode = if rng.gen_bool(0.5) { Mode::Finite } else { Mode::Cofinite };
        ConstructibleSubset::new(&f, mode, places.into_iter().collect()).unwrap()
    };
    let u = ChiExpr::u();
    for i in 0..1000 {
        let a = random_set(&mut rng);
        let b = random_set(&mut rng);
        let c = random_set(&mut rng);
        let ctx = || format!("operation {i}: {a:?} / {b:?} / {c:?}");
        let uni = a.union(&b).unwrap();
        let int = a.intersection(&b).unwrap();
        match i % 5 {
            0 => check(
                &chi_of(&uni) + &chi_of(&int) == &chi_of(&a) + &chi_of(&b),
                ctx,
            )?,
            1 => check(
                a.complement().complement() == a && &chi_of(&a) + &chi_of(&a.complement()) == u,
                ctx,
            )?,
            2 => check(
                uni.complement() == a.complement().intersection(&b.complement()).unwrap()
                    && int.complement() == a.complement().union(&b.complement()).unwrap(),
                ctx,
            )?,
            3 => check(
                a.difference(&b).unwrap() == a.intersection(&b.complement()).unwrap()
                    && &chi_of(&a.difference(&b).unwrap()) + &chi_of(&int) == chi_of(&a),
                ctx,
            )?,
            _ => check(
                a.intersection(&b.union(&c).unwrap()).unwrap()
                    == a.intersection(&b).unwrap().union(&a.intersection(&c).unwrap()).unwrap()
                    && uni == b.union(&a).unwrap(),
                ctx,
            )?,
        }
    }
    let a1 = chi_of(&ConstructibleSubset::affine_line(&f));
    check(specialize(&a1, 2) == Some(1), || format!("chi(A1) = {a1}"))
}

fn criterion_11() -> Outcome {
    let qf = FieldDesc::rationals();
    for (n, d, want) in [(2u64, 5usize, 2u64), (2, 6, 2), (3, 4, 3)] {
        let g = (1..=d as i64).fold(Poly::one(&qf), |acc, k| &acc * &Poly::from_i64(&qf, &[-k, 1]));
        let got = superelliptic_genus(n, &g).map_err(|e| e.to_string())?;
        check(got.genus == want, || format!("({n}, {d}): genus {}", got.genus))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("curve Riemann-Hurwitz identity on random corpora", criterion_1),
        ("tame iff zero defect", criterion_2),
        ("constraint polynomials of power and Artin-Schreier maps", criterion_3),
        ("contradiction certificate expands to p - 1", criterion_4),
        ("Iversen formula on surface covers", criterion_5),
        ("local-field ramification breaks", criterion_6),
        ("Hasse-Herbrand psi equals the ball-count integral", criterion_7),
        ("action of G_a on root clusters", criterion_8),
        ("stability under doubled precision", criterion_9),
        ("Euler characteristic algebra of constructible sets", criterion_10),
        ("superelliptic genus", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
