//! From `(X, Y, F, x₀)` to a regular germ `G` with `G|X = F|X`, and from
//! retraction data `(i, r)` to a local retraction around `x₀`.

use num_traits::Zero;
use urr_poly::{clear_fraction_composition, Cert, Matrix, OrderSpec, Point, Poly, RingCtx, Witness};

use crate::denom::{compose_regular, descend_division, premise_target, DivisionPremise, RegularComposition};
use crate::error::{Error, Result};
use crate::generic::{find_frame, DEFAULT_MAX_TRIES};
use crate::groebner::{member_with, Membership};
use crate::ideal::Ideal;
use crate::lift::{solve_psi, LiftLimits, LiftResult};
use crate::limits::Limits;
use crate::sigma::{build_sigma, SigmaData};
use crate::variety::{
    jacobian_at, jacobian_rank_at, maps_equal_on_x, regular_on_x_at, smooth_at, tangent_space, LocalFrac, MapEquality,
    RationalMap, Regularity, VarietyPresentation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub seed: u64,
    pub max_tries: usize,
    pub lift: LiftLimits,
    pub limits: Limits,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { seed: 0, max_tries: DEFAULT_MAX_TRIES, lift: LiftLimits::default(), limits: Limits::default() }
    }
}

/// A certificate with the generators it refers to and what it proves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledWitness {
    pub label: String,
    /// Names for the variables the certificate is written in.
    pub ring: RingCtx,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    /// True when no denominator vanishes at `x₀` and `G = F`.
    pub short_circuit: bool,
    /// Product of the distinct denominators vanishing at `x₀`.
    pub q: Option<Poly>,
    pub sigma: Option<SigmaData>,
    pub lift: Option<LiftResult>,
    pub compositions: Vec<RegularComposition>,
    /// Whether `g∘G` vanishes identically for each generator `g` of `ℐ(Y)`.
    pub containment_identical: Vec<bool>,
    pub certificates: Vec<LabeledWitness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GermMap {
    pub components: Vec<LocalFrac>,
    pub target: VarietyPresentation,
    pub provenance: Provenance,
}

impl GermMap {
    pub fn coords(&self) -> Vec<(Poly, Poly)> {
        self.components.iter().map(|c| (c.num.clone(), c.den.clone())).collect()
    }

    pub fn point(&self) -> &Point {
        &self.components[0].point
    }

    /// Derivative at the base point, one row per component.
    pub fn jacobian(&self) -> Result<Matrix> {
        let rows = self.components.iter().map(|c| c.gradient()).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn value(&self) -> Result<Vec<urr_poly::Rat>> {
        self.components.iter().map(|c| c.value()).collect()
    }
}

fn check_point(x: &VarietyPresentation, x0: &Point) -> Result<()> {
    if !x.contains_point(x0)? {
        return Err(Error::PointNotOnVariety);
    }
    if !smooth_at(x, x0)? {
        return Err(Error::NotSmoothAtPoint { rank: jacobian_rank_at(x, x0)?, expected: x.nvars() - x.dim() });
    }
    Ok(())
}

/// Distinct (up to a scalar) denominators vanishing at `x₀`.
fn vanishing_factors(f: &RationalMap, x0: &Point) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = Vec::new();
    for (_, q) in &f.coords {
        if !q.evaluate(x0)?.is_zero() {
            continue;
        }
        if !out.iter().any(|g| scalar_ratio(g, q).is_some()) {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// `λ` with `b = λ·a`, if any.
fn scalar_ratio(a: &Poly, b: &Poly) -> Option<urr_poly::Rat> {
    let (m, c) = a.terms().next()?;
    let lambda = b.coeff(m) / c;
    (!lambda.is_zero() && &a.scale(&lambda) == b).then_some(lambda)
}

/// `q / Q` when `Q` is one of the factors of `q` up to a scalar.
fn cofactor_in_q(factors: &[Poly], q_den: &Poly) -> Option<Poly> {
    let pos = factors.iter().position(|g| scalar_ratio(g, q_den).is_some())?;
    let lambda = scalar_ratio(&factors[pos], q_den)?;
    let n = q_den.nvars();
    let mut rest = Poly::one(n);
    for (k, g) in factors.iter().enumerate() {
        if k != pos {
            rest = &rest * g;
        }
    }
    Some(rest.scale(&(urr_poly::rat::one() / lambda)))
}

fn witness(label: impl Into<String>, ring: &RingCtx, w: Witness) -> LabeledWitness {
    LabeledWitness { label: label.into(), ring: ring.clone(), witness: w }
}

/// Adapted coordinates followed by the Rabinowitsch variable.
fn radical_ring(n: usize) -> RingCtx {
    let mut names: Vec<String> = (1..=n).map(|i| format!("$a{i}")).collect();
    names.push("$z".into());
    RingCtx::with_reserved(&names).expect("reserved names")
}

/// Builds the germ `G = F∘ψ` at `x₀`, or `G = F` when no denominator of
/// `F` vanishes there.
pub fn localize_map(
    x: &VarietyPresentation,
    y: &VarietyPresentation,
    f: &RationalMap,
    x0: &Point,
    opts: &PipelineOptions,
) -> Result<GermMap> {
    let n = x.nvars();
    if f.source_nvars() != Some(n) {
        return Err(Error::PreconditionViolated("map source does not match the ambient space of X".into()));
    }
    if f.coords.len() != y.nvars() {
        return Err(Error::PreconditionViolated("map target does not match Y".into()));
    }
    check_point(x, x0)?;
    f.check_denominators(x)?;
    let mut certificates = Vec::new();
    let mut reps = Vec::with_capacity(f.coords.len());
    for (j, (p, q)) in f.coords.iter().enumerate() {
        match regular_on_x_at(p, q, x, x0)? {
            Regularity::Regular { rep, witness: w } => {
                certificates.push(witness(format!("F|X regular at x0, coordinate {}", j + 1), x.ring(), w));
                reps.push(rep);
            }
            Regularity::NotRegular => {
                return Err(Error::NotRegularAtPoint { coord: j + 1, verdict: "not regular".into() })
            }
            Regularity::Undetermined(why) => return Err(Error::LimitExceeded(why)),
        }
    }

    let factors = vanishing_factors(f, x0)?;
    if factors.is_empty() {
        let components = f
            .coords
            .iter()
            .map(|(p, q)| LocalFrac::new(p.clone(), q.clone(), x0.clone()))
            .collect::<Result<Vec<_>>>()?;
        let containment_identical = containment(y, &components)?;
        return Ok(GermMap {
            components,
            target: y.clone(),
            provenance: Provenance {
                short_circuit: true,
                q: None,
                sigma: None,
                lift: None,
                compositions: Vec::new(),
                containment_identical,
                certificates,
            },
        });
    }

    let mut q = Poly::one(n);
    for g in &factors {
        q = &q * g;
    }
    let ideal_q = Ideal::new(x.ring(), vec![q.clone()])?.with_limits(opts.limits.clone());
    let frame = find_frame(x, &ideal_q, x0, opts.max_tries, opts.seed)?;
    for (v, w) in frame.report.only_origin_certs.iter().enumerate() {
        certificates.push(witness(format!("W meets Z(I) only at x0, adapted coordinate {}", v + 1), &radical_ring(n), w.clone()));
    }
    let sigma = build_sigma(&frame)?;
    let lift = solve_psi(&sigma, &opts.lift)?;
    for (i, c) in lift.certs.iter().enumerate() {
        certificates.push(witness(
            format!("psi_{} o sigma - pi_{} in H at (x0, 0)", i + 1, i + 1),
            &sigma.ring,
            Witness { generators: sigma.h_gens.clone(), cert: c.clone() },
        ));
    }

    let k = sigma.k();
    let nk = n + k;
    let base = &sigma.base_point;
    let phi: Vec<LocalFrac> = lift
        .psi
        .iter()
        .map(|p| LocalFrac::new(p.num.compose(&sigma.sigma)?, p.den.compose(&sigma.sigma)?, base.clone()))
        .collect::<Result<Vec<_>>>()?;
    let psi_pairs: Vec<(Poly, Poly)> = lift.psi.iter().map(|p| (p.num.clone(), p.den.clone())).collect();
    let ext: Vec<usize> = (0..n).collect();

    let mut components = Vec::with_capacity(f.coords.len());
    let mut compositions = Vec::with_capacity(f.coords.len());
    for (j, (p, q_den)) in f.coords.iter().enumerate() {
        let q_pi = q_den.embed(nk, &ext);
        let quotient = cofactor_in_q(&factors, q_den).map(|c| c.embed(nk, &ext));
        let q_ext = q.embed(nk, &ext);
        let mut premises = Vec::with_capacity(n);
        for (i, cert) in lift.certs.iter().enumerate() {
            // Σ c_ℓ t_ℓ from the q·t_ℓ generators, and the ℐ(X) part
            let mut s = Poly::zero(nk);
            let mut x_part: Vec<(Poly, usize)> = Vec::new();
            for (c, idx) in &cert.cofactors {
                if *idx < sigma.x_gen_count {
                    x_part.push((c.clone(), *idx));
                } else {
                    let l = (*idx - sigma.x_gen_count) % k.max(1);
                    s = s + c * &Poly::var(nk, n + l);
                }
            }
            let b_sigma = &phi[i].den;
            let (num, den, extra) = match &quotient {
                Some(qq) => (-(qq * &s), &cert.unit * b_sigma, Poly::one(nk)),
                None => (-(&q_ext * &s), &(&q_pi * &cert.unit) * b_sigma, q_pi.clone()),
            };
            let delta = LocalFrac::new(num, den, base.clone())?;
            let target = premise_target(&delta, &q_pi, &phi[i], &sigma.pi[i]);
            let cofactors = x_part.into_iter().map(|(c, idx)| (&(&c * b_sigma) * &extra, idx)).collect();
            let pc = Cert { target, unit: Poly::one(nk), cofactors, point: None };
            premises.push(DivisionPremise {
                delta,
                witness: Witness { generators: sigma.product.gens().to_vec(), cert: pc },
            });
        }
        for (i, pr) in premises.iter().enumerate() {
            certificates.push(witness(
                format!("(phi_{} - pi_{}) = delta * Q_{} o pi on X x W", i + 1, i + 1, j + 1),
                &sigma.ring,
                pr.witness.clone(),
            ));
        }
        let rep = LocalFrac::new(reps[j].num.embed(nk, &ext), reps[j].den.embed(nk, &ext), base.clone())?;
        let comp = compose_regular(p, q_den, &rep, &sigma.pi, &phi, &premises, &sigma.product, base)?;
        certificates.push(witness(format!("closed form of F_{} o phi on X x W", j + 1), &sigma.ring, comp.agreement.clone()));

        let (p_psi, q_psi) = clear_fraction_composition(p, q_den, &psi_pairs)?;
        let (g, w) = descend_division(&p_psi, &q_psi, x0, &opts.limits)?;
        certificates.push(witness(format!("G_{} = F_{} o psi as a germ at x0", j + 1, j + 1), x.ring(), w));
        // G_j∘σ agrees with the closed form upstairs
        let back = &(&g.num.compose(&sigma.sigma)? * &comp.frac.den) - &(&g.den.compose(&sigma.sigma)? * &comp.frac.num);
        let xw_gens = sigma.product.gens().to_vec();
        match member_with(&back, &xw_gens, &OrderSpec::local_degrevlex(nk), Some(base), &opts.limits)? {
            Membership::In(cert) => certificates.push(witness(
                format!("G_{} o sigma agrees with F_{} o phi on X x W", j + 1, j + 1),
                &sigma.ring,
                Witness { generators: xw_gens, cert },
            )),
            Membership::NotIn => {
                return Err(Error::DescentFailed(format!("coordinate {} does not lift back to X x W", j + 1)))
            }
        }
        components.push(g);
        compositions.push(comp);
    }

    let fx: Vec<(Poly, Poly)> = f.coords.clone();
    let gx: Vec<(Poly, Poly)> = components.iter().map(|c| (c.num.clone(), c.den.clone())).collect();
    match maps_equal_on_x(&gx, &fx, x)? {
        MapEquality::Equal(ws) => {
            for (j, w) in ws.into_iter().enumerate() {
                certificates.push(witness(format!("G|X = F|X, coordinate {}", j + 1), x.ring(), w));
            }
        }
        MapEquality::NotEqual(j) => {
            return Err(Error::PropertyCheckFailed(format!("G|X differs from F|X in coordinate {}", j + 1)))
        }
    }
    let containment_identical = containment(y, &components)?;
    Ok(GermMap {
        components,
        target: y.clone(),
        provenance: Provenance {
            short_circuit: false,
            q: Some(q),
            sigma: Some(sigma),
            lift: Some(lift),
            compositions,
            containment_identical,
            certificates,
        },
    })
}

/// For each generator `g` of `ℐ(Y)`: `g∘G` is identically zero after
/// clearing denominators.
fn containment(y: &VarietyPresentation, g: &[LocalFrac]) -> Result<Vec<bool>> {
    let pairs: Vec<(Poly, Poly)> = g.iter().map(|c| (c.num.clone(), c.den.clone())).collect();
    y.gens()
        .iter()
        .map(|h| {
            let (num, _) = clear_fraction_composition(h, &Poly::one(h.nvars()), &pairs)?;
            Ok(num.is_zero())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RetractionResult {
    pub g: GermMap,
    /// `V′ = X ∩ {h_V ≠ 0}`.
    pub h_v: Poly,
    /// `U′ = {h_U ≠ 0, pullback ≠ 0}`; `pullback` is `h_V∘G` with
    /// denominators cleared.
    pub h_u: Poly,
    pub pullback: Poly,
    /// `G|X = id`, one witness per coordinate.
    pub identity: Vec<Witness>,
    /// The composed map `F = r∘i₀`.
    pub f: RationalMap,
}

fn identity_coords(n: usize) -> Vec<(Poly, Poly)> {
    (0..n).map(|j| (Poly::var(n, j), Poly::one(n))).collect()
}

/// Local retraction at `x₀` from a rational retraction `(i, r)` of `X`.
/// `ambient_i` extends `i` to the ambient space; `None` reuses `i`'s
/// representatives.
pub fn uniformize(
    x: &VarietyPresentation,
    i: &RationalMap,
    r: &RationalMap,
    ambient_i: Option<&RationalMap>,
    x0: &Point,
    opts: &PipelineOptions,
) -> Result<RetractionResult> {
    let n = x.nvars();
    let i0 = ambient_i.unwrap_or(i);
    if i0.source_nvars() != Some(n) || r.coords.len() != n || r.source_nvars() != Some(i0.coords.len()) {
        return Err(Error::PreconditionViolated("arity mismatch between i, r and X".into()));
    }
    check_point(x, x0)?;
    if ambient_i.is_some() && !maps_equal_on_x(&i0.coords, &i.coords, x)?.is_equal() {
        return Err(Error::PreconditionViolated("the ambient extension does not restrict to i on X".into()));
    }
    i.check_denominators(x)?;
    let f = r.compose(i0)?;
    if let Err(e) = f.check_denominators(x) {
        return Err(Error::CompositionUndefined(e.to_string()));
    }
    if !maps_equal_on_x(&f.coords, &identity_coords(n), x)?.is_equal() {
        return Err(Error::PreconditionViolated("r∘i is not the identity on X".into()));
    }
    let g = localize_map(x, x, &f, x0, opts)?;
    let identity = match maps_equal_on_x(&g.coords(), &identity_coords(n), x)? {
        MapEquality::Equal(ws) => ws,
        MapEquality::NotEqual(j) => {
            return Err(Error::PropertyCheckFailed(format!("G|X is not the identity in coordinate {}", j + 1)))
        }
    };
    let mut h_u = Poly::one(n);
    for c in &g.components {
        h_u = &h_u * &c.den;
    }
    let mut h_v = h_u.clone();
    if let Some(l) = &g.provenance.lift {
        for p in &l.psi {
            h_v = &h_v * &p.den;
        }
    }
    let (pullback, _) = clear_fraction_composition(&h_v, &Poly::one(n), &g.coords())?;
    for (name, h) in [("h_V", &h_v), ("h_U", &h_u), ("pullback of h_V", &pullback)] {
        if h.evaluate(x0)?.is_zero() {
            return Err(Error::PropertyCheckFailed(format!("{name} vanishes at the point")));
        }
    }
    Ok(RetractionResult { g, h_v, h_u, pullback, identity, f })
}

/// `DG(x₀)` is a projection of rank `dim X` whose image is `T_{x₀}X`.
pub fn derivative_is_tangent_projection(x: &VarietyPresentation, g: &GermMap) -> Result<bool> {
    let x0 = g.point().clone();
    let dg = g.jacobian()?;
    let n = x.nvars();
    if dg.rows() != n || dg.cols() != n || !dg.is_projection() || dg.rank() != x.dim() {
        return Ok(false);
    }
    let jx = jacobian_at(x.gens(), n, &x0)?;
    if jx.rows() > 0 && jx.mul(&dg).to_rows().iter().flatten().any(|v| !v.is_zero()) {
        return Ok(false);
    }
    Ok(tangent_space(x, &x0)?.len() == x.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use urr_poly::{parse_poly, rat};

    fn ring(names: &[&str]) -> RingCtx {
        RingCtx::new(names).unwrap()
    }
    fn p(s: &str, r: &RingCtx) -> Poly {
        parse_poly(s, r).unwrap()
    }
    fn variety(r: &RingCtx, gens: &[&str], dim: usize) -> VarietyPresentation {
        VarietyPresentation::new(r, gens.iter().map(|g| p(g, r)).collect(), dim, true).unwrap()
    }
    fn map(r: &RingCtx, coords: &[(&str, &str)], target: &VarietyPresentation) -> RationalMap {
        RationalMap::new(coords.iter().map(|(a, b)| (p(a, r), p(b, r))).collect(), target.clone()).unwrap()
    }
    fn opts(seed: u64) -> PipelineOptions {
        PipelineOptions { seed, ..PipelineOptions::default() }
    }
    fn replay_all(g: &GermMap) {
        for lw in &g.provenance.certificates {
            assert!(lw.witness.check(), "certificate failed: {}", lw.label);
            assert_eq!(lw.ring.arity(), lw.witness.cert.target.nvars(), "{}", lw.label);
        }
    }

    fn circle_problem() -> (RingCtx, VarietyPresentation, VarietyPresentation, RationalMap) {
        let yr = ring(&["y1", "y2"]);
        let x = variety(&yr, &["y1^2 - 2*y1 + y2^2"], 1);
        let target = variety(&ring(&["z1", "z2"]), &["z1^2 + z2^2 - 1"], 1);
        let f = map(&yr, &[("y1^2 - y2^2", "y1^2 + y2^2"), ("2*y1*y2", "y1^2 + y2^2")], &target);
        (yr, x, target, f)
    }

    #[test]
    fn flagship_matches_closed_form() {
        let (yr, x, target, f) = circle_problem();
        let closed = [
            (p("y2^2 - (2 - y1)^2", &yr), p("y2^2 + (2 - y1)^2", &yr)),
            (p("2*y2*(2 - y1)", &yr), p("y2^2 + (2 - y1)^2", &yr)),
        ];
        for seed in [0, 7, 11] {
            let g = localize_map(&x, &target, &f, &Point::origin(2), &opts(seed)).unwrap();
            assert!(!g.provenance.short_circuit);
            replay_all(&g);
            assert!(g.provenance.containment_identical.iter().all(|&b| b));
            assert!(crate::variety::germs_equal_on_x(&g.coords(), &closed, &x, &Point::origin(2)).unwrap().is_equal());
            assert_eq!(g.value().unwrap(), vec![rat::int(-1), rat::zero()]);
        }
    }

    #[test]
    fn line_fixture() {
        let r = ring(&["y1", "y2"]);
        let x = variety(&r, &["y2"], 1);
        let line = VarietyPresentation::affine_space(&ring(&["t"]));
        let f = map(&r, &[("y1^2 + y2", "y1 + y2")], &line);
        let g = localize_map(&x, &line, &f, &Point::origin(2), &opts(3)).unwrap();
        replay_all(&g);
        let expected = [(p("y1 + y2", &r), p("1 + y2", &r))];
        assert!(crate::variety::germs_equal_on_x(&g.coords(), &expected, &x, &Point::origin(2)).unwrap().is_equal());
    }

    #[test]
    fn line_retraction_derivative() {
        let r = ring(&["y1", "y2"]);
        let x = variety(&r, &["y2"], 1);
        let t = ring(&["t"]);
        let line = VarietyPresentation::affine_space(&t);
        let i = map(&r, &[("y1^2 + y2", "y1 + y2")], &line);
        let rr = map(&t, &[("t", "1"), ("0", "1")], &x);
        let res = uniformize(&x, &i, &rr, None, &Point::origin(2), &opts(5)).unwrap();
        replay_all(&res.g);
        assert!(derivative_is_tangent_projection(&x, &res.g).unwrap());
        assert_eq!(res.identity.len(), 2);
    }

    #[test]
    fn unit_circle_uniformize() {
        let r = ring(&["y1", "y2"]);
        let x = variety(&r, &["y1^2 + y2^2 - 1"], 1);
        let t = ring(&["t"]);
        let i = map(&r, &[("y2", "1 + y1")], &VarietyPresentation::affine_space(&t));
        let rr = map(&t, &[("1 - t^2", "1 + t^2"), ("2*t", "1 + t^2")], &x);
        let x0 = Point::from_ints(&[-1, 0]);
        let res = uniformize(&x, &i, &rr, None, &x0, &opts(7)).unwrap();
        replay_all(&res.g);
        let shifted = [
            (p("y2^2 - (1 - y1)^2", &r), p("y2^2 + (1 - y1)^2", &r)),
            (p("2*y2*(1 - y1)", &r), p("y2^2 + (1 - y1)^2", &r)),
        ];
        assert!(crate::variety::germs_equal_on_x(&res.g.coords(), &shifted, &x, &x0).unwrap().is_equal());
        assert!(derivative_is_tangent_projection(&x, &res.g).unwrap());
        assert!(!res.h_v.evaluate(&x0).unwrap().is_zero());
    }

    #[test]
    fn translated_circle_uniformize() {
        let r = ring(&["y1", "y2"]);
        let x = variety(&r, &["y1^2 - 2*y1 + y2^2"], 1);
        let t = ring(&["t"]);
        let i = map(&r, &[("y2", "y1")], &VarietyPresentation::affine_space(&t));
        let rr = map(&t, &[("2", "1 + t^2"), ("2*t", "1 + t^2")], &x);
        let x0 = Point::origin(2);
        let res = uniformize(&x, &i, &rr, None, &x0, &opts(7)).unwrap();
        replay_all(&res.g);
        let expected = [
            (p("2*y2^2", &r), p("y2^2 + (2 - y1)^2", &r)),
            (p("2*y2*(2 - y1)", &r), p("y2^2 + (2 - y1)^2", &r)),
        ];
        assert!(crate::variety::germs_equal_on_x(&res.g.coords(), &expected, &x, &x0).unwrap().is_equal());
        assert!(derivative_is_tangent_projection(&x, &res.g).unwrap());
        assert_eq!(res.g.value().unwrap(), vec![rat::zero(), rat::zero()]);
    }

    #[test]
    fn parabola_short_circuit() {
        let r = ring(&["y1", "y2"]);
        let x = variety(&r, &["y2 - y1^2"], 1);
        let t = ring(&["t"]);
        let i = map(&r, &[("y1", "1")], &VarietyPresentation::affine_space(&t));
        let rr = map(&t, &[("t", "1"), ("t^2", "1")], &x);
        let x0 = Point::from_ints(&[2, 4]);
        let res = uniformize(&x, &i, &rr, None, &x0, &opts(0)).unwrap();
        assert!(res.g.provenance.short_circuit);
        assert_eq!(res.g.coords(), res.f.coords);
        assert!(derivative_is_tangent_projection(&x, &res.g).unwrap());
    }

    #[test]
    fn precondition_errors() {
        let (_, x, target, f) = circle_problem();
        let off = Point::from_ints(&[1, 2]);
        assert!(matches!(localize_map(&x, &target, &f, &off, &opts(0)), Err(Error::PointNotOnVariety)));
        let r = ring(&["y1", "y2"]);
        let cusp = variety(&r, &["y2^2 - y1^3"], 1);
        let g = map(&r, &[("y1", "1"), ("y2", "1")], &VarietyPresentation::affine_space(&r));
        assert!(matches!(
            localize_map(&cusp, &g.target, &g, &Point::origin(2), &opts(0)),
            Err(Error::NotSmoothAtPoint { .. })
        ));
        let line = variety(&r, &["y2"], 1);
        let bad = map(&r, &[("1", "y1")], &VarietyPresentation::affine_space(&ring(&["t"])));
        assert!(matches!(
            localize_map(&line, &bad.target, &bad, &Point::origin(2), &opts(0)),
            Err(Error::NotRegularAtPoint { coord: 1, .. })
        ));
    }
}
