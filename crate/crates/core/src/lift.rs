//! Germs `ψ_i = A_i/B_i` at `x₀` with `ψ_i∘σ − π_i ∈ H` locally at `(x₀, 0)`.
//!
//! Candidates come from linear algebra on jets: with `B(x₀) = 1` and both
//! `A`, `B` of degree at most `D`, the congruence
//! `π_i·B∘σ − A∘σ ≡ 0 mod H + 𝔪^N` is linear in the coefficients once every
//! `σ^γ` is replaced by its truncated normal form against a local standard
//! basis of `H`. Each candidate is then certified by exact local membership.

use std::collections::BTreeMap;

use urr_poly::{rat, Cert, Matrix, Monomial, OrderSpec, Point, Poly, Rat};

use crate::error::{Error, Result};
use crate::groebner::{std_basis_with, BasisOptions, Membership, MembershipOracle, StdBasis};
use crate::sigma::SigmaData;
use crate::variety::LocalFrac;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftLimits {
    pub max_degree: u32,
    pub max_jet_order: u32,
    /// Initial gap between jet order and degree.
    pub slack: u32,
}

impl Default for LiftLimits {
    fn default() -> Self {
        LiftLimits { max_degree: 8, max_jet_order: 12, slack: 2 }
    }
}

/// `A/B` over the target coordinates `y`, with `B(x₀) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCandidate {
    pub a: Poly,
    pub b: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub psi: Vec<LocalFrac>,
    /// `u·(π_i·B_i∘σ − A_i∘σ) = Σ c·h` over the generators of `H`, at `(x₀, 0)`.
    pub certs: Vec<Cert>,
    /// `(D, N)` at which each coordinate was certified.
    pub per_coord: Vec<(u32, u32)>,
    pub degree_used: u32,
    pub jet_order_used: u32,
}

/// Precomputed data shared by all coordinates of one `σ`.
pub struct LiftContext<'a> {
    sigma: &'a SigmaData,
    /// `σ(ũ + x₀, t) − x₀` in centered product coordinates.
    centered_sigma: Vec<Poly>,
    /// Local degree-order basis of the centered `H`.
    local: StdBasis,
    oracle: MembershipOracle,
}

/// Exponent vectors in `n` variables of total degree `≤ d`, graded.
fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut layer = vec![Monomial::one(n)];
    for _ in 0..d {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &layer {
            // extend only at or after the last used variable to avoid repeats
            let last = (0..n).rev().find(|v| m.exp(*v) > 0).unwrap_or(0);
            for v in last..n {
                next.push(m.mul(&Monomial::var(n, v)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl<'a> LiftContext<'a> {
    pub fn new(sigma: &'a SigmaData) -> Result<Self> {
        let n = sigma.n();
        let nk = n + sigma.k();
        let bp = &sigma.base_point;
        let x0 = &sigma.frame.translation;
        let centered_sigma = sigma
            .sigma
            .iter()
            .enumerate()
            .map(|(j, s)| Ok(&s.translate(bp)? - &Poly::constant(nk, x0[j].clone())))
            .collect::<Result<Vec<_>>>()?;
        let h_centered = sigma.h_gens.iter().map(|h| h.translate(bp)).collect::<std::result::Result<Vec<_>, _>>()?;
        let limits = sigma.product.limits().clone();
        let local = std_basis_with(&h_centered, &OrderSpec::local_degrevlex(nk), &BasisOptions::reduced().with_limits(limits.clone()))?;
        let oracle = MembershipOracle::new(&sigma.h_gens, &OrderSpec::local_degrevlex(nk), Some(bp), &limits)?;
        Ok(LiftContext { sigma, centered_sigma, local, oracle })
    }

    pub fn sigma(&self) -> &SigmaData {
        self.sigma
    }

    fn centered_pi(&self, i: usize) -> Poly {
        let nk = self.sigma.n() + self.sigma.k();
        Poly::var(nk, i) + Poly::constant(nk, self.sigma.frame.translation[i].clone())
    }

    /// Solution space of the jet system for coordinate `i` at `(D, N)`:
    /// the particular solution, then the particular solution shifted by
    /// each kernel vector. Empty when the system is inconsistent.
    pub fn jet_solve(&self, i: usize, d: u32, n_order: u32) -> Result<Vec<JetCandidate>> {
        if d < 1 || n_order < d + 1 {
            return Err(Error::PreconditionViolated("jet solve needs D ≥ 1 and N ≥ D + 1".into()));
        }
        let n = self.sigma.n();
        let nk = n + self.sigma.k();
        let gammas = monomials_up_to(n, d);
        // σ̃^γ truncated at order N, built along the graded enumeration
        let mut powers: BTreeMap<Monomial, Poly> = BTreeMap::new();
        powers.insert(Monomial::one(n), Poly::one(nk));
        for g in gammas.iter().skip(1) {
            let v = (0..n).rev().find(|v| g.exp(*v) > 0).expect("nonconstant");
            let mut e = g.exponents().to_vec();
            e[v] -= 1;
            let prev = &powers[&Monomial::from_exponents(e)];
            let p = (prev * &self.centered_sigma[v]).truncate_degree(n_order);
            powers.insert(g.clone(), p);
        }
        let pi = self.centered_pi(i);
        let nf = |f: &Poly| self.local.truncated_normal_form(&f.truncate_degree(n_order), n_order);
        // columns: α_γ for every γ, then β_γ for γ ≠ 1
        let mut cols: Vec<Poly> = Vec::with_capacity(2 * gammas.len());
        for g in &gammas {
            cols.push(-nf(&powers[g])?);
        }
        for g in gammas.iter().skip(1) {
            cols.push(nf(&(&pi * &powers[g]))?);
        }
        let rhs_poly = -nf(&pi)?;
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for c in cols.iter().chain(std::iter::once(&rhs_poly)) {
            for (m, _) in c.terms() {
                let len = rows.len();
                rows.entry(m.clone()).or_insert(len);
            }
        }
        let nrows = rows.len();
        let ncols = cols.len();
        let mut mat = Matrix::zeros(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            for (m, v) in c.terms() {
                mat.set(rows[m], j, v.clone());
            }
        }
        let mut rhs = vec![rat::zero(); nrows];
        for (m, v) in rhs_poly.terms() {
            rhs[rows[m]] = v.clone();
        }
        let Some((particular, kernel)) = (if nrows == 0 {
            Some((vec![rat::zero(); ncols], Matrix::zeros(1, ncols).kernel()))
        } else {
            mat.solve(&rhs)
        }) else {
            return Ok(Vec::new());
        };
        let mut out = vec![self.candidate_from(&gammas, &particular)?];
        for kv in kernel {
            let shifted: Vec<Rat> = particular.iter().zip(&kv).map(|(a, b)| a + b).collect();
            out.push(self.candidate_from(&gammas, &shifted)?);
        }
        Ok(out)
    }

    fn candidate_from(&self, gammas: &[Monomial], x: &[Rat]) -> Result<JetCandidate> {
        let n = self.sigma.n();
        let g = gammas.len();
        let a = Poly::from_terms(n, gammas.iter().cloned().zip(x[..g].iter().cloned()));
        let mut b = Poly::one(n);
        for (m, v) in gammas.iter().skip(1).zip(&x[g..]) {
            b.add_term(m.clone(), v.clone());
        }
        let back = self.sigma.frame.translation.neg();
        Ok(JetCandidate { a: a.translate(&back)?, b: b.translate(&back)? })
    }

    /// `π_i·B∘σ − A∘σ` in the product ring.
    pub fn lift_defect(&self, i: usize, cand: &JetCandidate) -> Result<Poly> {
        let s = &self.sigma.sigma;
        Ok(&(&self.sigma.pi[i] * &cand.b.compose(s)?) - &cand.a.compose(s)?)
    }

    /// Exact local membership of the defect in `H` at `(x₀, 0)`.
    pub fn certify_lift(&self, i: usize, cand: &JetCandidate) -> Result<Option<Cert>> {
        if cand.b.evaluate(&self.sigma.frame.translation)? != rat::one() {
            return Err(Error::PreconditionViolated("candidate denominator must be 1 at the point".into()));
        }
        Ok(match self.oracle.test(&self.lift_defect(i, cand)?)? {
            Membership::In(c) => Some(c),
            Membership::NotIn => None,
        })
    }

    /// True iff the defect vanishes modulo `H + 𝔪^N`.
    pub fn satisfies_jet(&self, i: usize, cand: &JetCandidate, n_order: u32) -> Result<bool> {
        let e = self.lift_defect(i, cand)?.translate(&self.sigma.base_point)?;
        Ok(self.local.truncated_normal_form(&e.truncate_degree(n_order), n_order)?.is_zero())
    }

    /// First certified candidate for coordinate `i`, searching `D` upward
    /// and, for each `D`, `N` from `D + slack`. `Err` carries the last
    /// `(D, N)` tried.
    pub fn solve_coordinate(&self, i: usize, limits: &LiftLimits) -> Result<std::result::Result<CoordinateLift, (u32, u32)>> {
        let mut reached = (0, 0);
        for d in 1..=limits.max_degree {
            let start = d + limits.slack.max(1);
            for n_order in start..=limits.max_jet_order {
                reached = (d, n_order);
                let cands = self.jet_solve(i, d, n_order)?;
                if cands.is_empty() {
                    break;
                }
                for c in cands {
                    if let Some(cert) = self.certify_lift(i, &c)? {
                        return Ok(Ok(CoordinateLift { candidate: c, cert, degree: d, jet_order: n_order }));
                    }
                }
            }
        }
        Ok(Err(reached))
    }
}

pub struct CoordinateLift {
    pub candidate: JetCandidate,
    pub cert: Cert,
    pub degree: u32,
    pub jet_order: u32,
}

/// Solves every coordinate by iterative deepening over `(D, N)`.
pub fn solve_psi(sigma: &SigmaData, limits: &LiftLimits) -> Result<LiftResult> {
    let ctx = LiftContext::new(sigma)?;
    let n = sigma.n();
    let x0: &Point = &sigma.frame.translation;
    let mut psi = Vec::with_capacity(n);
    let mut certs = Vec::with_capacity(n);
    let mut per_coord = Vec::with_capacity(n);
    let mut failed = Vec::new();
    for i in 0..n {
        match ctx.solve_coordinate(i, limits)? {
            Ok(l) => {
                psi.push(LocalFrac::new(l.candidate.a, l.candidate.b, x0.clone())?);
                certs.push(l.cert);
                per_coord.push((l.degree, l.jet_order));
            }
            Err(reached) => failed.push((i, reached)),
        }
    }
    if !failed.is_empty() {
        return Err(Error::LiftLimitsExceeded { reached: failed });
    }
    let degree_used = per_coord.iter().map(|c| c.0).max().unwrap_or(0);
    let jet_order_used = per_coord.iter().map(|c| c.1).max().unwrap_or(0);
    Ok(LiftResult { psi, certs, per_coord, degree_used, jet_order_used })
}
