//! Standard bases for global, local and mixed orders.
//!
//! Buchberger's loop drives everything; the reduction step is Mora's weak
//! normal form, which degenerates to ordinary division for global orders.
//! Optionally every basis element carries its representation in terms of
//! the input generators, so membership answers come with certificates.

mod membership;
mod nf;
mod sorted;
#[cfg(test)]
mod tests;

use std::collections::{BTreeSet, HashSet};

use num_traits::One;
use urr_poly::{Cert, Monomial, OrderSpec, Point, Poly, Rat};

use crate::error::{Error, Result};
use crate::limits::Limits;
pub use membership::{member, member_with, MembershipOracle, Membership};
use nf::{full_nf, weak_nf, Reducers};
use sorted::SortedPoly;

#[derive(Clone, Debug, Default)]
pub struct BasisOptions {
    /// Interreduce global bases into the unique reduced basis.
    pub reduce: bool,
    /// Keep each element's representation in terms of the input.
    pub track: bool,
    pub limits: Limits,
}

impl BasisOptions {
    pub fn reduced() -> Self {
        BasisOptions { reduce: true, ..Default::default() }
    }

    pub fn tracked() -> Self {
        BasisOptions { reduce: true, track: true, ..Default::default() }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

#[derive(Clone, Debug)]
pub struct StdBasis {
    generators: Vec<Poly>,
    order: OrderSpec,
    reduced: bool,
    input: Vec<Poly>,
    /// `generators[k] = Σ_i representation[k][i] · input[i]`.
    representation: Option<Vec<Vec<Poly>>>,
    sorted: Vec<SortedPoly>,
    ecarts: Vec<u32>,
    limits: Limits,
}

/// Result of [`mora_weak_nf`]: `unit·f = Σ cofactors[k]·basis[k] + nf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakNormalForm {
    pub nf: Poly,
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

pub fn std_basis(gens: &[Poly], order: &OrderSpec) -> Result<StdBasis> {
    std_basis_with(gens, order, &BasisOptions::reduced())
}

pub fn std_basis_with(gens: &[Poly], order: &OrderSpec, opts: &BasisOptions) -> Result<StdBasis> {
    let n = order.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(urr_poly::PolyError::ArityMismatch { expected: n, found: g.nvars() }.into());
    }
    let mut b = Builder::new(gens, order, opts);
    b.run()?;
    b.finish()
}

/// Weak normal form of `f` with respect to `basis`, with the unit and the
/// cofactors against the basis elements.
pub fn mora_weak_nf(f: &Poly, basis: &StdBasis) -> Result<WeakNormalForm> {
    basis.weak_nf(f)
}

struct Elem {
    poly: SortedPoly,
    ecart: u32,
    rep: Option<Vec<Poly>>,
}

struct Builder<'a> {
    order: &'a OrderSpec,
    opts: &'a BasisOptions,
    input: Vec<Poly>,
    elems: Vec<Elem>,
    polys: Vec<SortedPoly>,
    ecarts: Vec<u32>,
    queue: BTreeSet<(u32, usize, usize)>,
    pending: HashSet<(usize, usize)>,
    unit_found: bool,
}

impl<'a> Builder<'a> {
    fn new(gens: &[Poly], order: &'a OrderSpec, opts: &'a BasisOptions) -> Self {
        let n = order.nvars();
        let mut b = Builder {
            order,
            opts,
            input: gens.to_vec(),
            elems: Vec::new(),
            polys: Vec::new(),
            ecarts: Vec::new(),
            queue: BTreeSet::new(),
            pending: HashSet::new(),
            unit_found: false,
        };
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let rep = opts.track.then(|| {
                let mut r = vec![Poly::zero(n); gens.len()];
                r[i] = Poly::one(n);
                r
            });
            b.push(SortedPoly::from_poly(g, order), rep);
        }
        b
    }

    fn push(&mut self, poly: SortedPoly, rep: Option<Vec<Poly>>) {
        if poly.lm().is_one() {
            self.unit_found = true;
        }
        let j = self.elems.len();
        for i in 0..j {
            let lcm = self.elems[i].poly.lm().lcm(poly.lm());
            self.queue.insert((lcm.degree(), i, j));
            self.pending.insert((i, j));
        }
        let ecart = poly.ecart();
        self.polys.push(poly.clone());
        self.ecarts.push(ecart);
        self.elems.push(Elem { poly, ecart, rep });
    }

    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..self.elems.len()).any(|k| {
            k != i
                && k != j
                && self.elems[k].poly.lm().divides(lcm)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }

    fn run(&mut self) -> Result<()> {
        let n = self.order.nvars();
        let global = self.order.is_global();
        let limits = &self.opts.limits;
        let mut processed = 0usize;
        while !self.unit_found {
            let Some(&(deg, i, j)) = self.queue.iter().next() else { break };
            self.queue.remove(&(deg, i, j));
            self.pending.remove(&(i, j));
            let (a, b) = (&self.elems[i], &self.elems[j]);
            let lcm = a.poly.lm().lcm(b.poly.lm());
            if global && a.poly.lm().is_coprime(b.poly.lm()) {
                continue;
            }
            if self.chain_criterion(i, j, &lcm) {
                continue;
            }
            processed += 1;
            if processed > limits.max_pairs {
                return Err(Error::LimitExceeded(format!("more than {} critical pairs", limits.max_pairs)));
            }
            let ma = a.poly.lm().divide_into(&lcm).expect("lcm");
            let mb = b.poly.lm().divide_into(&lcm).expect("lcm");
            let ca = Rat::one() / a.poly.lc();
            let cb = Rat::one() / b.poly.lc();
            let s = a.poly.scale_mul(&ca, &ma).sub_scaled(&cb, &mb, &b.poly, self.order);
            if s.is_zero() {
                continue;
            }
            let out = weak_nf(s, &Reducers { polys: &self.polys, ecarts: &self.ecarts }, self.order, self.opts.track, limits)?;
            if out.nf.is_zero() {
                continue;
            }
            if out.nf.total_degree() > limits.degree_cap {
                return Err(Error::LimitExceeded(format!("basis element exceeds total degree {}", limits.degree_cap)));
            }
            if self.elems.len() >= limits.max_basis_size {
                return Err(Error::LimitExceeded(format!("more than {} basis elements", limits.max_basis_size)));
            }
            let rep = if self.opts.track {
                let (ra, rb) = (self.elems[i].rep.as_ref().unwrap(), self.elems[j].rep.as_ref().unwrap());
                let unit = out.unit.as_ref().unwrap();
                let mut r = Vec::with_capacity(self.input.len());
                for col in 0..self.input.len() {
                    let mut s_rep = Poly::zero(n);
                    s_rep.add_scaled(&ca, &ma, &ra[col]);
                    s_rep.add_scaled(&-&cb, &mb, &rb[col]);
                    let mut v = unit * &s_rep;
                    for (k, c) in out.coeffs.iter().enumerate() {
                        if !c.is_zero() {
                            v = v - c * &self.elems[k].rep.as_ref().unwrap()[col];
                        }
                    }
                    r.push(v);
                }
                Some(r)
            } else {
                None
            };
            self.push(out.nf, rep);
        }
        Ok(())
    }

    fn finish(self) -> Result<StdBasis> {
        let order = self.order.clone();
        let mut elems = self.elems;
        if self.unit_found {
            let k = elems.iter().position(|e| e.poly.lm().is_one()).expect("unit element");
            elems = vec![elems.swap_remove(k)];
        }
        // Minimalize: drop elements whose leading monomial is a multiple of
        // another one (for equal leading monomials keep the first).
        let keep: Vec<bool> = (0..elems.len())
            .map(|i| {
                !(0..elems.len()).any(|j| {
                    j != i && elems[j].poly.lm().divides(elems[i].poly.lm())
                        && (elems[j].poly.lm() != elems[i].poly.lm() || j < i)
                })
            })
            .collect();
        let mut elems: Vec<Elem> = elems.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
        let reduce = self.opts.reduce && order.is_global();
        if reduce {
            for i in 0..elems.len() {
                let others: Vec<SortedPoly> =
                    elems.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| e.poly.clone()).collect();
                let idx: Vec<usize> = (0..elems.len()).filter(|k| *k != i).collect();
                let ecarts: Vec<u32> = idx.iter().map(|k| elems[*k].ecart).collect();
                let (rem, coeffs) = full_nf(
                    elems[i].poly.clone(),
                    &Reducers { polys: &others, ecarts: &ecarts },
                    &order,
                    self.opts.track,
                    None,
                    &self.opts.limits,
                )?;
                if self.opts.track {
                    let mut r = elems[i].rep.clone().unwrap();
                    for (pos, c) in coeffs.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let src = elems[idx[pos]].rep.as_ref().unwrap();
                        for (col, v) in r.iter_mut().enumerate() {
                            *v = &*v - &(c * &src[col]);
                        }
                    }
                    elems[i].rep = Some(r);
                }
                elems[i].poly = SortedPoly::from_poly(&rem, &order);
                elems[i].ecart = elems[i].poly.ecart();
            }
        }
        for e in elems.iter_mut() {
            let inv = Rat::one() / e.poly.lc();
            if !inv.is_one() {
                e.poly = e.poly.scale_mul(&inv, &Monomial::one(order.nvars()));
                if let Some(r) = e.rep.as_mut() {
                    for v in r.iter_mut() {
                        *v = v.scale(&inv);
                    }
                }
            }
        }
        if reduce {
            elems.sort_by(|a, b| order.compare(b.poly.lm(), a.poly.lm()));
        }
        let generators = elems.iter().map(|e| e.poly.to_poly()).collect();
        let ecarts = elems.iter().map(|e| e.ecart).collect();
        let representation = if self.opts.track { Some(elems.iter().map(|e| e.rep.clone().unwrap()).collect()) } else { None };
        Ok(StdBasis {
            generators,
            order,
            reduced: reduce,
            input: self.input,
            representation,
            sorted: elems.into_iter().map(|e| e.poly).collect(),
            ecarts,
            limits: self.opts.limits.clone(),
        })
    }
}

impl StdBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn input(&self) -> &[Poly] {
        &self.input
    }

    pub fn representation(&self) -> Option<&[Vec<Poly>]> {
        self.representation.as_deref()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|p| p.lm().clone()).collect()
    }

    /// True iff the ideal is the whole ring (localized, for local orders).
    pub fn is_unit(&self) -> bool {
        self.sorted.iter().any(|p| p.lm().is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    fn reducers(&self) -> Reducers<'_> {
        Reducers { polys: &self.sorted, ecarts: &self.ecarts }
    }

    fn check_arity(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(urr_poly::PolyError::ArityMismatch { expected: self.nvars(), found: f.nvars() }.into());
        }
        Ok(())
    }

    pub fn weak_nf(&self, f: &Poly) -> Result<WeakNormalForm> {
        self.check_arity(f)?;
        let out = weak_nf(SortedPoly::from_poly(f, &self.order), &self.reducers(), &self.order, true, &self.limits)?;
        Ok(WeakNormalForm { nf: out.nf.to_poly(), unit: out.unit.unwrap(), cofactors: out.coeffs })
    }

    /// Membership test without bookkeeping.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.check_arity(f)?;
        let out = weak_nf(SortedPoly::from_poly(f, &self.order), &self.reducers(), &self.order, false, &self.limits)?;
        Ok(out.nf.is_zero())
    }

    /// Fully reduced remainder; only defined for global orders.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check_arity(f)?;
        if !self.order.is_global() {
            return Err(Error::PreconditionViolated("full normal form needs a global order".into()));
        }
        let (rem, _) = full_nf(SortedPoly::from_poly(f, &self.order), &self.reducers(), &self.order, false, None, &self.limits)?;
        Ok(rem)
    }

    /// Normal form modulo `I + 𝔪^n` at the origin, for a degree-local order.
    /// The result is linear in `f` and has no term of degree `>= n`.
    pub fn truncated_normal_form(&self, f: &Poly, n: u32) -> Result<Poly> {
        self.check_arity(f)?;
        if !self.order.is_local_degree() {
            return Err(Error::PreconditionViolated("truncated normal form needs a degree-local order".into()));
        }
        let (rem, _) =
            full_nf(SortedPoly::from_poly(f, &self.order), &self.reducers(), &self.order, false, Some(n), &self.limits)?;
        Ok(rem)
    }

    /// Certificate for `f` in terms of the input generators at the origin
    /// (or without a point for global orders). Needs a tracked basis.
    pub fn certify(&self, f: &Poly) -> Result<Option<Cert>> {
        let rep = self
            .representation
            .as_ref()
            .ok_or_else(|| Error::PreconditionViolated("basis was built without tracking".into()))?;
        let w = self.weak_nf(f)?;
        if !w.nf.is_zero() {
            return Ok(None);
        }
        let n = self.nvars();
        let mut cof = vec![Poly::zero(n); self.input.len()];
        for (k, c) in w.cofactors.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in rep[k].iter().enumerate() {
                if !r.is_zero() {
                    cof[i] = &cof[i] + &(c * r);
                }
            }
        }
        let point = if self.order.is_global() { None } else { Some(Point::origin(n)) };
        Ok(Some(Cert {
            target: f.clone(),
            unit: w.unit,
            cofactors: cof.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (c, i)).collect(),
            point,
        }))
    }

    /// Buchberger's criterion: every S-polynomial of a pair of basis
    /// elements has weak normal form zero.
    pub fn s_polynomials_reduce(&self) -> Result<bool> {
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let s = s_polynomial(&self.generators[i], &self.generators[j], &self.order);
                if !self.contains(&s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn s_polynomial(a: &Poly, b: &Poly, order: &OrderSpec) -> Poly {
    let (Some((la, ca)), Some((lb, cb))) = (a.leading_term(order), b.leading_term(order)) else {
        return Poly::zero(a.nvars());
    };
    let lcm = la.lcm(lb);
    let ma = la.divide_into(&lcm).unwrap();
    let mb = lb.divide_into(&lcm).unwrap();
    let mut s = a.mul_term(&ma, &(Rat::one() / ca));
    s.add_scaled(&-(Rat::one() / cb), &mb, b);
    s
}

