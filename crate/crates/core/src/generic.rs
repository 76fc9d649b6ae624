//! Random linear frames in general position with respect to `X` and an
//! ideal `I`, verified exactly.
//!
//! Adapted coordinates are `a = M·(v − x₀)`. The first `n − m` of them form
//! the w-block and carry the new `t` variables later on; the last `m` form
//! the base block, and `W` is the zero set of the base block.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urr_poly::{rat, Matrix, Point, Poly, RingCtx, Witness};

use crate::error::{Error, Result};
use crate::ideal::{finite_over, radical_member, Ideal, RadicalMembership};
use crate::variety::{jacobian_at, smooth_at, tangent_space, VarietyPresentation};

pub const DEFAULT_ENTRY_BOUND: i64 = 5;
pub const DEFAULT_MAX_TRIES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub transversal: bool,
    /// Rank of the base-block forms restricted to `T₀X`.
    pub transversal_rank: usize,
    pub only_origin: bool,
    /// One radical-membership witness per adapted coordinate, as far as
    /// the check got.
    pub only_origin_certs: Vec<Witness>,
    pub noether_finite: bool,
    pub tries_used: usize,
    pub seed: Option<u64>,
}

impl GenericityReport {
    pub fn all_green(&self) -> bool {
        self.transversal && self.only_origin && self.noether_finite
    }

    pub fn failure_reason(&self) -> Option<String> {
        let mut parts = Vec::new();
        if !self.transversal {
            parts.push(format!("not transversal (rank {})", self.transversal_rank));
        }
        if !self.only_origin {
            parts.push("W meets Z(I) outside the point".to_string());
        }
        if !self.noether_finite {
            parts.push("not finite over the base block".to_string());
        }
        (!parts.is_empty()).then(|| parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaFrame {
    pub change: Matrix,
    pub change_inv: Matrix,
    /// The base point `x₀`, moved to the origin before the change.
    pub translation: Point,
    pub x: VarietyPresentation,
    /// Generators of `I` in the original coordinates.
    pub i_gens: Vec<Poly>,
    pub x_adapted: VarietyPresentation,
    pub i_adapted: Ideal,
    pub report: GenericityReport,
}

impl SigmaFrame {
    /// Number of w-block coordinates, `n − m`.
    pub fn codim(&self) -> usize {
        self.x.nvars() - self.x.dim()
    }
}

/// Matrix with entries uniform in `{−bound, …, bound}`, redrawn until
/// invertible. Returns the matrix and the number of draws.
pub fn sample_change_with(n: usize, rng: &mut ChaCha8Rng, bound: i64) -> (Matrix, usize) {
    let mut draws = 0;
    loop {
        draws += 1;
        let rows: Vec<Vec<urr_poly::Rat>> =
            (0..n).map(|_| (0..n).map(|_| rat::int(rng.gen_range(-bound..=bound))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if !m.det().is_zero() {
            return (m, draws);
        }
    }
}

/// Deterministic invertible change for `seed`.
pub fn sample_change(n: usize, m: usize, seed: u64) -> Result<Matrix> {
    if m == 0 || m > n {
        return Err(Error::PreconditionViolated(format!("need 0 < m ≤ n, got m = {m}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_change_with(n, &mut rng, DEFAULT_ENTRY_BOUND).0)
}

fn adapted_ring(n: usize) -> RingCtx {
    let names: Vec<String> = (1..=n).map(|i| format!("$a{i}")).collect();
    RingCtx::with_reserved(&names).expect("reserved names")
}

/// `g(M⁻¹·a + x₀)`.
fn to_adapted(g: &Poly, x0: &Point, change_inv: &Matrix) -> Result<Poly> {
    Ok(g.translate(x0)?.linear_change(change_inv)?)
}

fn check_preconditions(x: &VarietyPresentation, i: &Ideal, x0: &Point) -> Result<()> {
    if x.dim() == 0 {
        return Err(Error::PreconditionViolated("variety has dimension 0".into()));
    }
    if !x.contains_point(x0)? {
        return Err(Error::PreconditionViolated("point is not on X".into()));
    }
    if !smooth_at(x, x0)? {
        return Err(Error::PreconditionViolated("X is not smooth at the point".into()));
    }
    if i.is_zero() {
        return Err(Error::PreconditionViolated("the ideal I must be nonzero".into()));
    }
    for g in i.gens() {
        if !g.evaluate(x0)?.is_zero() {
            return Err(Error::PreconditionViolated("generators of I must vanish at the point".into()));
        }
    }
    Ok(())
}

struct Adapted {
    change_inv: Matrix,
    x: VarietyPresentation,
    i: Ideal,
}

fn adapt(x: &VarietyPresentation, i: &Ideal, x0: &Point, change: &Matrix) -> Result<Adapted> {
    let n = x.nvars();
    let change_inv = change.inverse().ok_or(urr_poly::PolyError::SingularMatrix)?;
    let ring = adapted_ring(n);
    let xg = x.gens().iter().map(|g| to_adapted(g, x0, &change_inv)).collect::<Result<Vec<_>>>()?;
    let ig = i.gens().iter().map(|g| to_adapted(g, x0, &change_inv)).collect::<Result<Vec<_>>>()?;
    let xi = Ideal::new(&ring, xg)?.with_limits(x.limits().clone());
    Ok(Adapted {
        change_inv,
        x: VarietyPresentation::from_parts(xi, x.dim(), x.assume_prime()),
        i: Ideal::new(&ring, ig)?.with_limits(x.limits().clone()),
    })
}

fn report_for(x: &VarietyPresentation, x0: &Point, change: &Matrix, ad: &Adapted) -> Result<GenericityReport> {
    let n = x.nvars();
    let m = x.dim();
    let k = n - m;
    // (a) base-block rows of M applied to a tangent basis
    let tangent = tangent_space(x, x0)?;
    let base_rows: Vec<Vec<urr_poly::Rat>> = (k..n).map(|r| change.row(r).to_vec()).collect();
    let transversal_rank = if tangent.is_empty() {
        0
    } else {
        let t = Matrix::from_cols(&tangent, n);
        Matrix::from_rows(base_rows).mul(&t).rank()
    };
    let transversal = tangent.len() == m && transversal_rank == m;
    // (b) every adapted coordinate vanishes on Z(ℐ(X) + I + base block)
    let base: Vec<Poly> = (k..n).map(|v| Poly::var(n, v)).collect();
    let j = ad.x.ideal().sum(&ad.i)?.with_gens(&base)?;
    let mut certs = Vec::with_capacity(n);
    let mut only_origin = true;
    for v in 0..n {
        match radical_member(&Poly::var(n, v), &j)? {
            RadicalMembership::Yes(w) => certs.push(w),
            RadicalMembership::No => {
                only_origin = false;
                break;
            }
        }
    }
    // (c) Noether position over the base block
    let base_vars: Vec<usize> = (k..n).collect();
    let noether_finite = finite_over(ad.x.ideal(), &base_vars)?;
    Ok(GenericityReport {
        transversal,
        transversal_rank,
        only_origin,
        only_origin_certs: certs,
        noether_finite,
        tries_used: 1,
        seed: None,
    })
}

/// Runs the three exact checks for one change of coordinates.
pub fn verify_frame(x: &VarietyPresentation, i: &Ideal, x0: &Point, change: &Matrix) -> Result<GenericityReport> {
    check_preconditions(x, i, x0)?;
    let ad = adapt(x, i, x0, change)?;
    report_for(x, x0, change, &ad)
}

fn frame_from(x: &VarietyPresentation, i: &Ideal, x0: &Point, change: Matrix, report: GenericityReport) -> Result<SigmaFrame> {
    let ad = adapt(x, i, x0, &change)?;
    Ok(SigmaFrame {
        change,
        change_inv: ad.change_inv,
        translation: x0.clone(),
        x: x.clone(),
        i_gens: i.gens().to_vec(),
        x_adapted: ad.x,
        i_adapted: ad.i,
        report,
    })
}

/// Samples changes from `seed` until one passes every check.
pub fn find_frame(x: &VarietyPresentation, i: &Ideal, x0: &Point, max_tries: usize, seed: u64) -> Result<SigmaFrame> {
    check_preconditions(x, i, x0)?;
    let n = x.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;
    let mut reasons = Vec::new();
    while tries < max_tries {
        let (change, draws) = sample_change_with(n, &mut rng, DEFAULT_ENTRY_BOUND);
        tries += draws;
        if tries > max_tries {
            reasons.push(format!("try {tries}: singular draws exhausted the budget"));
            break;
        }
        let ad = adapt(x, i, x0, &change)?;
        let mut report = report_for(x, x0, &change, &ad)?;
        if let Some(reason) = report.failure_reason() {
            reasons.push(format!("try {tries}: {reason}"));
            continue;
        }
        report.tries_used = tries;
        report.seed = Some(seed);
        return frame_from(x, i, x0, change, report);
    }
    Err(Error::ExhaustedTries { tries: tries.min(max_tries), reasons })
}

/// Frame for a given change (no sampling); fails unless all checks pass.
pub fn frame_for_change(x: &VarietyPresentation, i: &Ideal, x0: &Point, change: Matrix) -> Result<SigmaFrame> {
    let report = verify_frame(x, i, x0, &change)?;
    if let Some(reason) = report.failure_reason() {
        return Err(Error::ExhaustedTries { tries: 1, reasons: vec![reason] });
    }
    frame_from(x, i, x0, change, report)
}

/// Jacobian of the adapted presentation at the origin, for diagnostics.
pub fn adapted_jacobian(frame: &SigmaFrame) -> Result<Matrix> {
    let n = frame.x.nvars();
    jacobian_at(frame.x_adapted.gens(), n, &Point::origin(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use urr_poly::parse_poly;

    fn xy() -> RingCtx {
        RingCtx::new(&["x", "y"]).unwrap()
    }
    fn p(s: &str) -> Poly {
        parse_poly(s, &xy()).unwrap()
    }
    fn circle() -> (VarietyPresentation, Ideal) {
        let r = xy();
        (VarietyPresentation::new(&r, vec![p("x^2 - 2*x + y^2")], 1, true).unwrap(), Ideal::new(&r, vec![p("2*x")]).unwrap())
    }
    fn line() -> (VarietyPresentation, Ideal) {
        let r = xy();
        (VarietyPresentation::new(&r, vec![p("y")], 1, true).unwrap(), Ideal::new(&r, vec![p("x")]).unwrap())
    }
    fn swap() -> Matrix {
        Matrix::from_ints(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn circle_identity_frame_is_green() {
        let (x, i) = circle();
        let r = verify_frame(&x, &i, &Point::origin(2), &Matrix::identity(2)).unwrap();
        assert!(r.all_green(), "{r:?}");
        assert_eq!(r.only_origin_certs.len(), 2);
        assert!(r.only_origin_certs.iter().all(|w| w.check()));
    }

    #[test]
    fn tangent_w_is_not_transversal() {
        let (x, i) = circle();
        let r = verify_frame(&x, &i, &Point::origin(2), &swap()).unwrap();
        assert!(!r.transversal);
        assert!(!r.all_green());
    }

    #[test]
    fn line_swapped_frame_is_green() {
        let (x, i) = line();
        let r = verify_frame(&x, &i, &Point::origin(2), &swap()).unwrap();
        assert!(r.all_green(), "{r:?}");
    }

    #[test]
    fn sampling_is_deterministic_and_invertible() {
        for seed in 0..20 {
            let a = sample_change(3, 1, seed).unwrap();
            assert_eq!(a, sample_change(3, 1, seed).unwrap());
            assert!(!a.det().is_zero());
            assert!(a.to_rows().iter().flatten().all(|v| num_traits::Signed::abs(v) <= rat::int(DEFAULT_ENTRY_BOUND)));
        }
    }

    #[test]
    fn find_frame_succeeds_and_replays() {
        let (x, i) = circle();
        for seed in 0..5 {
            let f = find_frame(&x, &i, &Point::origin(2), DEFAULT_MAX_TRIES, seed).unwrap();
            assert!(f.report.all_green());
            assert_eq!(f.report.seed, Some(seed));
            let again = verify_frame(&x, &i, &Point::origin(2), &f.change).unwrap();
            assert_eq!(
                GenericityReport { tries_used: f.report.tries_used, seed: f.report.seed, ..again },
                f.report
            );
            // base-block projection restricted to T₀X is a bijection
            assert_eq!(f.report.transversal_rank, x.dim());
            assert_eq!(tangent_space(&x, &Point::origin(2)).unwrap().len(), x.dim());
        }
    }

    #[test]
    fn full_dimension_is_trivially_green() {
        let r = xy();
        let x = VarietyPresentation::affine_space(&r);
        let i = Ideal::new(&r, vec![p("x*y")]).unwrap();
        let f = find_frame(&x, &i, &Point::origin(2), 4, 1).unwrap();
        assert_eq!(f.codim(), 0);
        assert!(f.report.all_green());
    }

    #[test]
    fn zero_ideal_is_rejected() {
        let (x, _) = circle();
        let zero = Ideal::new(&xy(), vec![]).unwrap();
        assert!(matches!(
            find_frame(&x, &zero, &Point::origin(2), 4, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // A seed whose first draw fails, with a budget of one try.
        let (x, i) = circle();
        let failing = (0..200u64)
            .find(|s| {
                let m = sample_change(2, 1, *s).unwrap();
                !verify_frame(&x, &i, &Point::origin(2), &m).unwrap().all_green()
            })
            .expect("some seed fails");
        match find_frame(&x, &i, &Point::origin(2), 1, failing) {
            Err(Error::ExhaustedTries { reasons, .. }) => assert!(!reasons.is_empty()),
            other => panic!("expected ExhaustedTries, got {other:?}"),
        }
    }
}
