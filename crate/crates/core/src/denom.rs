//! Denominator reduction: the telescoping split `P(v+w) = P(v) + Σ wᵢPᵢ`,
//! the regular closed form of `P∘φ / Q∘φ` on `X × W`, and the descent of a
//! division from `X × W` to the ambient local ring.

use num_traits::Zero;
use urr_poly::{clear_fraction_composition, Cert, OrderSpec, Point, Poly, Rat, Witness};

use crate::error::{Error, Result};
use crate::groebner::{Membership, MembershipOracle, StdBasis};
use crate::limits::Limits;
use crate::variety::{LocalFrac, VarietyPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub base: Poly,
    /// `P_i(v, w)` over the doubled ring `(v₁…vₙ, w₁…wₙ)`.
    pub parts: Vec<Poly>,
}

impl SplitDecomposition {
    /// Replays `P(v+w) = P(v) + Σ wᵢ·Pᵢ(v,w)`.
    pub fn check(&self) -> Result<bool> {
        let n = self.base.nvars();
        let shifted: Vec<Poly> = (0..n).map(|j| Poly::var(2 * n, j) + Poly::var(2 * n, n + j)).collect();
        let lhs = self.base.compose(&shifted)?;
        let mut rhs = self.base.extend_vars(n);
        for (i, p) in self.parts.iter().enumerate() {
            rhs = rhs + &Poly::var(2 * n, n + i) * p;
        }
        Ok(lhs == rhs)
    }
}

/// `Pᵢ = (P(v + w⁽ⁱ⁾) − P(v + w⁽ⁱ⁻¹⁾)) / wᵢ` with `w⁽ⁱ⁾ = (w₁,…,wᵢ,0,…,0)`.
pub fn split_difference(p: &Poly) -> Result<SplitDecomposition> {
    let n = p.nvars();
    let partial = |i: usize| -> Result<Poly> {
        let images: Vec<Poly> = (0..n)
            .map(|j| if j < i { Poly::var(2 * n, j) + Poly::var(2 * n, n + j) } else { Poly::var(2 * n, j) })
            .collect();
        Ok(p.compose(&images)?)
    };
    let mut prev = partial(0)?;
    let mut parts = Vec::with_capacity(n);
    for i in 1..=n {
        let next = partial(i)?;
        let diff = &next - &prev;
        parts.push(diff.div_by_var(n + i - 1).ok_or_else(|| Error::PropertyCheckFailed("telescoping division not exact".into()))?);
        prev = next;
    }
    Ok(SplitDecomposition { base: p.clone(), parts })
}

/// A germ `δ` on `X × W` with `δ·Q(π) = φ − π`, witnessed by a global
/// certificate that `N·Q(π)·b − (a − π·b)·D ∈ ℐ(X × W)` for
/// `δ = N/D`, `φ = a/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPremise {
    pub delta: LocalFrac,
    pub witness: Witness,
}

pub fn premise_target(delta: &LocalFrac, q_pi: &Poly, phi: &LocalFrac, pi: &Poly) -> Poly {
    let defect = &phi.num - &(pi * &phi.den);
    &(&(&delta.num * q_pi) * &phi.den) - &(&defect * &delta.den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularComposition {
    /// `P∘φ / Q∘φ` as a germ at the base point; the denominator is `1` there.
    pub frac: LocalFrac,
    /// `T·(Q∘φ) − S·(P∘φ) ∈ ℐ(X × W)` after clearing the denominators of `φ`.
    pub agreement: Witness,
}

#[derive(Clone, Debug)]
struct Frac {
    n: Poly,
    d: Poly,
}

impl Frac {
    fn add(&self, o: &Frac, red: &dyn Fn(&Poly) -> Result<Poly>) -> Result<Frac> {
        if self.d == o.d {
            return Ok(Frac { n: red(&(&self.n + &o.n))?, d: self.d.clone() });
        }
        Ok(Frac { n: red(&(&(&self.n * &o.d) + &(&o.n * &self.d)))?, d: red(&(&self.d * &o.d))? })
    }

    fn mul(&self, o: &Frac, red: &dyn Fn(&Poly) -> Result<Poly>) -> Result<Frac> {
        Ok(Frac { n: red(&(&self.n * &o.n))?, d: red(&(&self.d * &o.d))? })
    }
}

/// Closed form of `P∘φ / Q∘φ` on `X × W` from a representation `rep` of
/// `P(π)/Q(π)` and division premises `δᵢ = (φᵢ − πᵢ)/Q(π)`:
///
/// `(rep + Σ δᵢ·Pᵢ(π, φ−π)) / (1 + Σ δᵢ·Qᵢ(π, φ−π))`.
///
/// Numerator and denominator are kept reduced modulo `ℐ(X × W)`.
#[allow(clippy::too_many_arguments)]
pub fn compose_regular(
    p: &Poly,
    q: &Poly,
    rep: &LocalFrac,
    pi: &[Poly],
    phi: &[LocalFrac],
    premises: &[DivisionPremise],
    xw: &VarietyPresentation,
    base_point: &Point,
) -> Result<RegularComposition> {
    let n = p.nvars();
    let nk = xw.nvars();
    if pi.len() != n || phi.len() != n || premises.len() != n {
        return Err(Error::PreconditionViolated("composition needs one φ, π and premise per coordinate".into()));
    }
    let q_pi = q.compose(pi)?;
    for (i, pr) in premises.iter().enumerate() {
        let target = premise_target(&pr.delta, &q_pi, &phi[i], &pi[i]);
        let ok = pr.witness.cert.target == target
            && pr.witness.generators == xw.gens()
            && pr.witness.check()
            && pr.delta.num.evaluate(base_point)?.is_zero()
            && !pr.delta.den.evaluate(base_point)?.is_zero()
            && !phi[i].den.evaluate(base_point)?.is_zero();
        if !ok {
            return Err(Error::PremiseCertMissing(format!("coordinate {}", i + 1)));
        }
    }
    if rep.den.evaluate(base_point)?.is_zero() {
        return Err(Error::PremiseCertMissing("representation of P/Q is not regular at the point".into()));
    }
    let gb: std::sync::Arc<StdBasis> = xw.ideal().basis(&OrderSpec::degrevlex(nk))?;
    let red = |f: &Poly| -> Result<Poly> { gb.normal_form(f) };

    let sp = split_difference(p)?;
    let sq = split_difference(q)?;
    // v ↦ π, w ↦ φ − π
    let mut fracs: Vec<(Poly, Poly)> = pi.iter().map(|x| (x.clone(), Poly::one(nk))).collect();
    for i in 0..n {
        fracs.push((&phi[i].num - &(&pi[i] * &phi[i].den), phi[i].den.clone()));
    }
    let mut num = Frac { n: red(&rep.num)?, d: red(&rep.den)? };
    let mut den = Frac { n: Poly::one(nk), d: Poly::one(nk) };
    for i in 0..n {
        let delta = Frac { n: red(&premises[i].delta.num)?, d: red(&premises[i].delta.den)? };
        if delta.n.is_zero() {
            continue;
        }
        for (parts, acc) in [(&sp.parts, &mut num), (&sq.parts, &mut den)] {
            if parts[i].is_zero() {
                continue;
            }
            let (a, b) = clear_fraction_composition(&parts[i], &Poly::one(2 * n), &fracs)?;
            let term = delta.mul(&Frac { n: red(&a)?, d: red(&b)? }, &red)?;
            *acc = acc.add(&term, &red)?;
        }
    }
    let t = red(&(&num.n * &den.d))?;
    let s = red(&(&num.d * &den.n))?;
    let sv = s.evaluate(base_point)?;
    if sv.is_zero() {
        return Err(Error::PropertyCheckFailed("closed-form denominator vanishes at the base point".into()));
    }
    let inv: Rat = Rat::from_integer(1.into()) / sv;
    let (t, s) = (t.scale(&inv), s.scale(&inv));

    let phi_pairs: Vec<(Poly, Poly)> = phi.iter().map(|f| (f.num.clone(), f.den.clone())).collect();
    let (p_phi, q_phi) = clear_fraction_composition(p, q, &phi_pairs)?;
    let cross = &(&t * &q_phi) - &(&s * &p_phi);
    let oracle = MembershipOracle::new(xw.gens(), &OrderSpec::degrevlex(nk), None, xw.limits())?;
    let cert = match oracle.test(&cross)? {
        Membership::In(c) => c,
        Membership::NotIn => {
            return Err(Error::PropertyCheckFailed("closed form disagrees with P∘φ/Q∘φ on X × W".into()))
        }
    };
    Ok(RegularComposition {
        frac: LocalFrac::new(t, s, base_point.clone())?,
        agreement: Witness { generators: xw.gens().to_vec(), cert },
    })
}

/// `P/Q` as a germ at `p` in the ambient local ring: `u·P = A·Q` with
/// `u(p) ≠ 0`, found by local membership of `P` in `(Q)`.
pub fn descend_division(p_psi: &Poly, q_psi: &Poly, p: &Point, limits: &Limits) -> Result<(LocalFrac, Witness)> {
    let gens = vec![q_psi.clone()];
    if !q_psi.evaluate(p)?.is_zero() {
        let cert = Cert { target: p_psi.clone(), unit: q_psi.clone(), cofactors: vec![(p_psi.clone(), 0)], point: Some(p.clone()) };
        return Ok((LocalFrac::new(p_psi.clone(), q_psi.clone(), p.clone())?, Witness { generators: gens, cert }));
    }
    let oracle = MembershipOracle::new(&gens, &OrderSpec::local_degrevlex(p_psi.nvars()), Some(p), limits)?;
    match oracle.test(p_psi)? {
        Membership::In(cert) => {
            let a = cert.cofactors.first().map(|c| c.0.clone()).unwrap_or_else(|| Poly::zero(p_psi.nvars()));
            let frac = LocalFrac::new(a, cert.unit.clone(), p.clone())?;
            Ok((frac, Witness { generators: gens, cert }))
        }
        Membership::NotIn => Err(Error::DescentFailed("numerator is not divisible by the denominator at the point".into())),
    }
}
