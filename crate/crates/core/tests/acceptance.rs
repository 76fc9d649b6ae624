//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urr_core::interface::{
    check_bundle, check_bundle_cert, mutate_bundle_cert, parse_bundle, run_problem, serialize_bundle, Problem, RunOptions,
};
use urr_core::*;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn problem(name: &str) -> Problem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name);
    Problem::parse_named(&std::fs::read_to_string(&path).unwrap(), name).unwrap()
}

fn opts(seed: u64) -> PipelineOptions {
    PipelineOptions { seed, ..PipelineOptions::default() }
}

fn p(s: &str, r: &RingCtx) -> Poly {
    parse_poly(s, r).unwrap()
}

fn eval_frac(f: &(Poly, Poly), pt: &Point) -> Option<Rat> {
    let d = f.1.evaluate(pt).unwrap();
    (!num_traits::Zero::is_zero(&d)).then(|| f.0.evaluate(pt).unwrap() / d)
}

/// Rational points of `x² − 2x + y² = 0` near the origin, `s ↦ (2s², 2s)/(1 + s²)`.
fn translated_circle_points() -> Vec<Point> {
    (2..=12)
        .flat_map(|k| [rat::frac(1, k), rat::frac(-1, k)])
        .map(|s| {
            let d = rat::one() + &s * &s;
            Point::new(vec![rat::int(2) * &s * &s / &d, rat::int(2) * &s / &d])
        })
        .collect()
}

/// `G(p) = expected(p)` at every sample point where both are defined; at
/// least half the samples must be usable.
fn agree_at(g: &[(Poly, Poly)], expected: &[(Poly, Poly)], pts: &[Point]) -> std::result::Result<usize, String> {
    let mut used = 0;
    for pt in pts {
        let a: Option<Vec<Rat>> = g.iter().map(|f| eval_frac(f, pt)).collect();
        let b: Option<Vec<Rat>> = expected.iter().map(|f| eval_frac(f, pt)).collect();
        if let (Some(a), Some(b)) = (a, b) {
            if a != b {
                return Err(format!("values differ at {}", pt.to_text()));
            }
            used += 1;
        }
    }
    if used * 2 < pts.len() {
        return Err(format!("only {used} of {} sample points usable", pts.len()));
    }
    Ok(used)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let pr = problem("circle_uniformize.problem");
    let r = pr.ring.clone();
    let x = pr.variety("X").unwrap();
    let (i, rr) = (pr.map("i").unwrap(), pr.map("r").unwrap());
    let x0 = Point::origin(2);
    let den = p("y2^2 + (2 - y1)^2", &r);
    ensure!(den.evaluate(&x0).unwrap() == rat::int(4), "closed-form denominator at the point is not 4");
    let closed = [(p("y2^2 - (2 - y1)^2", &r), den.clone()), (p("2*y2*(2 - y1)", &r), den.clone())];
    // uniformize lands on X itself, so its germ is the closed form moved by (+1, 0)
    let shifted = [(p("2*y2^2", &r), den.clone()), closed[1].clone()];
    let pts = translated_circle_points();
    let id: Vec<(Poly, Poly)> = (0..2).map(|j| (Poly::var(2, j), Poly::one(2))).collect();
    agree_at(&shifted, &id, &pts)?;
    let seeds = [0u64, 1, 2, 7, 42];
    for &seed in &seeds {
        let res = uniformize(&x, &i, &rr, None, &x0, &opts(seed)).map_err(|e| format!("seed {seed}: {e}"))?;
        let g = res.g.coords();
        for c in &res.g.components {
            ensure!(!num_traits::Zero::is_zero(&c.den.evaluate(&x0).unwrap()), "seed {seed}: denominator vanishes");
        }
        ensure!(res.identity.iter().all(|w| w.check()), "seed {seed}: identity certificate does not replay");
        ensure!(germs_equal_on_x(&g, &shifted, &x, &x0).unwrap().is_equal(), "seed {seed}: germ differs from closed form");
        agree_at(&g, &shifted, &pts).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    // the closed form itself, as the localized stereographic round trip
    let pf = problem("circle.problem");
    let f = pf.map("F").unwrap();
    let y = pf.variety("Y").unwrap();
    for &seed in &seeds {
        let g = localize_map(&x, &y, &f, &x0, &opts(seed)).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(germs_equal_on_x(&g.coords(), &closed, &x, &x0).unwrap().is_equal(), "seed {seed}: localized map differs");
        agree_at(&g.coords(), &closed, &pts)?;
        agree_at(&f.coords, &closed, &pts)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{} seeds, both presentations, {:.2?}", seeds.len(), elapsed))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let pr = problem("line.problem");
    let r = pr.ring.clone();
    let x = pr.variety("X").unwrap();
    let f = pr.map("F").unwrap();
    let x0 = Point::origin(2);
    let expected = [(p("y1 + y2", &r), p("1 + y2", &r))];
    let pts: Vec<Point> = (1..=10).flat_map(|k| [rat::frac(1, k), rat::frac(-1, k + 1)]).map(|s| Point::new(vec![s, rat::zero()])).collect();
    for seed in [0u64, 3, 9] {
        let g = localize_map(&x, &f.target, &f, &x0, &opts(seed)).map_err(|e| e.to_string())?;
        ensure!(germs_equal_on_x(&g.coords(), &expected, &x, &x0).unwrap().is_equal(), "seed {seed}: germ differs");
        agree_at(&g.coords(), &expected, &pts)?;
        agree_at(&f.coords, &expected, &pts)?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("3 seeds, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let pr = problem("short_circuit.problem");
    let x = pr.variety("X").unwrap();
    let f = pr.map("F").unwrap();
    let g = localize_map(&x, &f.target, &f, pr.point.as_ref().unwrap(), &opts(0)).map_err(|e| e.to_string())?;
    ensure!(g.provenance.short_circuit, "short circuit not taken");
    ensure!(g.coords() == f.coords, "G differs from F");
    let pb = problem("parabola.problem");
    let xb = pb.variety("X").unwrap();
    let res = uniformize(&xb, &pb.map("i").unwrap(), &pb.map("r").unwrap(), None, pb.point.as_ref().unwrap(), &opts(0))
        .map_err(|e| e.to_string())?;
    ensure!(res.g.provenance.short_circuit && res.g.coords() == res.f.coords, "parabola: G differs from r∘i");
    Ok("x/(1+x^2) on a parabola, parabola retraction".into())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (name, seeds) in [
        ("circle_uniformize.problem", &[0u64, 1, 7][..]),
        ("unit_circle.problem", &[0, 5][..]),
        ("line_uniformize.problem", &[0, 5][..]),
        ("parabola.problem", &[0][..]),
    ] {
        let pr = problem(name);
        let x = pr.variety("X").unwrap();
        let x0 = pr.point.clone().unwrap();
        for &seed in seeds {
            let res = uniformize(&x, &pr.map("i").unwrap(), &pr.map("r").unwrap(), None, &x0, &opts(seed))
                .map_err(|e| format!("{name}: {e}"))?;
            let dg = res.g.jacobian().unwrap();
            ensure!(dg.mul(&dg) == dg, "{name} seed {seed}: DG is not idempotent");
            ensure!(dg.rank() == x.dim(), "{name} seed {seed}: rank {} ≠ {}", dg.rank(), x.dim());
            let jx = jacobian_at(x.gens(), x.nvars(), &x0).unwrap();
            ensure!(jx.mul(&dg).to_rows().iter().flatten().all(num_traits::Zero::is_zero), "{name}: image leaves T X");
            ensure!(res.g.value().unwrap() == x0.coords().to_vec(), "{name} seed {seed}: G(x0) ≠ x0");
            ensure!(derivative_is_tangent_projection(&x, &res.g).unwrap(), "{name}: library check disagrees");
            count += 1;
        }
    }
    Ok(format!("{count} retractions"))
}

fn criterion_5() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems");
    let mut names: Vec<String> =
        std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut certs, mut mutants) = (0, 0);
    for name in &names {
        let pr = problem(name);
        let bundle = run_problem(&pr, pr.task.unwrap(), &RunOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let text = serialize_bundle(&bundle);
        let back = parse_bundle(&text).map_err(|e| e.to_string())?;
        ensure!(back == bundle && serialize_bundle(&back) == text, "{name}: bundle does not round trip");
        let rep = check_bundle(&back);
        ensure!(rep.all_valid(), "{name}: invalid certificates {:?}", rep.failures());
        for c in &back.certificates {
            certs += 1;
            for _ in 0..5 {
                let m = mutate_bundle_cert(c, &mut rng).map_err(|e| e.to_string())?;
                ensure!(!check_bundle_cert(&m), "{name}: mutant of `{}` accepted", c.label);
                mutants += 1;
            }
        }
    }
    Ok(format!("{} bundles, {certs} certificates replayed, {mutants}/{mutants} mutants rejected", names.len()))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> Poly {
    let terms = rng.gen_range(1..=max_terms);
    let mut f = Poly::zero(n);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        if c != 0 {
            f.add_term(Monomial::from_exponents(e), rat::int(c));
        }
    }
    if f.is_zero() {
        Poly::var(n, 0)
    } else {
        f
    }
}

/// Plain multivariate division; the remainder is zero iff `f` reduces to
/// zero modulo `basis` under a global order.
fn remainder(f: &Poly, basis: &[Poly], order: &OrderSpec) -> Poly {
    let mut f = f.clone();
    let mut rem = Poly::zero(f.nvars());
    while let Some((m, c)) = f.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading_term(order).unwrap().0.divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.leading_term(order).unwrap();
                let q = gm.divide_into(&m).unwrap();
                f.add_scaled(&(-(&c / gc)), &q, g);
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                f.add_term(m, -c);
            }
        }
    }
    rem
}

/// `f ∈ span{m·g : deg(m·g) ≤ d}` by linear algebra.
fn brute_force_member(f: &Poly, gens: &[Poly], d: u32) -> bool {
    let n = f.nvars();
    let mut cols: Vec<Poly> = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap_or(0);
        if dg > d {
            continue;
        }
        for m in monomials(n, d - dg) {
            cols.push(g.mul_term(&m, &rat::one()));
        }
    }
    let rows = monomials(n, d.max(f.total_degree().unwrap_or(0)));
    let a = Matrix::from_rows(rows.iter().map(|m| cols.iter().map(|c| c.coeff(m)).collect()).collect());
    let b: Vec<Rat> = rows.iter().map(|m| f.coeff(m)).collect();
    if cols.is_empty() {
        return f.is_zero();
    }
    a.solve(&b).is_some()
}

fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![vec![0u32; n]];
    for v in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=d - used {
                let mut e2 = e.clone();
                e2[v] = k;
                next.push(e2);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut members, mut non_members) = (0, 0);
    for case in 0..20 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n);
        let gens: Vec<Poly> = (0..k).map(|_| random_poly(&mut rng, n, 3, 4)).collect();
        let dp = OrderSpec::degrevlex(n);
        let b = std_basis(&gens, &dp).map_err(|e| e.to_string())?;
        let mut perm = gens.clone();
        perm.reverse();
        perm.rotate_left(k / 2);
        let bp = std_basis(&perm, &dp).map_err(|e| e.to_string())?;
        ensure!(b.generators() == bp.generators(), "case {case}: basis depends on generator order");
        for i in 0..b.generators().len() {
            for j in i + 1..b.generators().len() {
                let s = s_polynomial(&b.generators()[i], &b.generators()[j], &dp);
                ensure!(remainder(&s, b.generators(), &dp).is_zero(), "case {case}: S-polynomial does not reduce");
            }
        }
        let ds = OrderSpec::local_degrevlex(n);
        let lb = std_basis(&gens, &ds).map_err(|e| e.to_string())?;
        ensure!(lb.s_polynomials_reduce().unwrap(), "case {case}: local S-polynomial does not reduce");
        for _ in 0..5 {
            let f = random_poly(&mut rng, n, 4, 5);
            let w = mora_weak_nf(&f, &lb).map_err(|e| e.to_string())?;
            ensure!(!num_traits::Zero::is_zero(&w.unit.evaluate(&Point::origin(n)).unwrap()), "case {case}: unit vanishes");
            let mut rhs = w.nf.clone();
            for (c, g) in w.cofactors.iter().zip(lb.generators()) {
                rhs = rhs + c * g;
            }
            ensure!(&w.unit * &f == rhs, "case {case}: weak normal form identity fails");
        }
        for t in 0..6 {
            let f = if t < 3 {
                gens.iter().fold(Poly::zero(n), |acc, g| acc + &random_poly(&mut rng, n, 2, 3) * g)
            } else {
                random_poly(&mut rng, n, 4, 5)
            };
            let engine = member(&f, &gens, &dp, None).map_err(|e| e.to_string())?.is_in();
            let oracle = brute_force_member(&f, &gens, 6);
            ensure!(engine == oracle, "case {case}: membership disagrees (engine {engine}, oracle {oracle})");
            if engine {
                members += 1;
            } else {
                non_members += 1;
            }
        }
    }
    Ok(format!("20 ideals; membership agreed on {members} members and {non_members} non-members"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let f = random_poly(&mut rng, n, 6, 6);
        let s = split_difference(&f).map_err(|e| e.to_string())?;
        let shifted: Vec<Poly> = (0..n).map(|j| Poly::var(2 * n, j) + Poly::var(2 * n, n + j)).collect();
        let mut rhs = f.extend_vars(n);
        for (i, part) in s.parts.iter().enumerate() {
            rhs = rhs + &Poly::var(2 * n, n + i) * part;
        }
        ensure!(f.compose(&shifted).unwrap() == rhs, "case {case}: P(v+w) ≠ P(v) + Σ wᵢPᵢ");
        let at_zero: Vec<Poly> = (0..2 * n).map(|j| if j < n { Poly::var(n, j) } else { Poly::zero(n) }).collect();
        for (i, part) in s.parts.iter().enumerate() {
            ensure!(part.compose(&at_zero).unwrap() == f.derivative(i), "case {case}: P_{}(v, 0) ≠ ∂P/∂v_{}", i + 1, i + 1);
        }
    }
    Ok("50 polynomials".into())
}

fn criterion_8() -> Outcome {
    let r = RingCtx::new(&["x", "y"]).unwrap();
    let fixtures = [("circle", "x^2 - 2*x + y^2", "x^2 + y^2"), ("line", "y", "x + y")];
    let mut summary = Vec::new();
    for (name, xg, ig) in fixtures {
        let x = VarietyPresentation::new(&r, vec![p(xg, &r)], 1, true).unwrap();
        let i = Ideal::new(&r, vec![p(ig, &r)]).unwrap();
        let mut ok = 0;
        for seed in 0..100u64 {
            let change = sample_change(2, 1, seed).unwrap();
            let rep = verify_frame(&x, &i, &Point::origin(2), &change).map_err(|e| e.to_string())?;
            if rep.all_green() {
                ok += 1;
                ensure!(rep.only_origin_certs.iter().all(|w| w.check()), "{name} seed {seed}: certificate fails");
            }
        }
        ensure!(ok >= 90, "{name}: only {ok}/100 frames generic");
        summary.push(format!("{name} {ok}/100"));
    }
    Ok(summary.join(", "))
}

fn criterion_9() -> Outcome {
    let r = RingCtx::new(&["x"]).unwrap();
    let ds = OrderSpec::local_degrevlex(1);
    match member(&p("x", &r), &[p("x - x^2", &r)], &ds, Some(&Point::origin(1))).map_err(|e| e.to_string())? {
        Membership::In(c) => {
            ensure!(c.unit == p("1 - x", &r), "unit is {}", c.unit.to_text(&r));
            ensure!(check_certificate(&c, &[p("x - x^2", &r)]), "certificate does not replay");
        }
        Membership::NotIn => return Err("x reported outside (x - x^2)".into()),
    }
    let r2 = RingCtx::new(&["x", "y"]).unwrap();
    let m = member(&p("x", &r2), &[p("x^2", &r2), p("x*y", &r2)], &OrderSpec::local_degrevlex(2), Some(&Point::origin(2)))
        .map_err(|e| e.to_string())?;
    ensure!(!m.is_in(), "x reported inside (x^2, xy)");
    Ok("In with unit 1 - x; NotIn".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("circle flagship", criterion_1),
        ("line fixture", criterion_2),
        ("short circuit", criterion_3),
        ("derivative is a tangent projection", criterion_4),
        ("certificate audit", criterion_5),
        ("engine properties", criterion_6),
        ("split identity", criterion_7),
        ("frame statistics", criterion_8),
        ("local-ring litmus", criterion_9),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{t:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{t:.2?}]", k + 1);
            }
        }
    }
    let t = total.elapsed();
    println!("acceptance: {} of {} criteria passed in {t:.2?}", criteria.len() - failed, criteria.len());
    if failed > 0 || t > Duration::from_secs(300) {
        std::process::exit(1);
    }
}
