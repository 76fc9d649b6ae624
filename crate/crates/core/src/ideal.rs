//! Ideal operations built on standard bases: elimination, intersection,
//! saturation, radical membership, dimension and finiteness.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use urr_poly::{BlockKind, Block, OrderSpec, Poly, RingCtx, Witness};

use crate::error::{Error, Result};
use crate::groebner::{std_basis_with, BasisOptions, Membership, MembershipOracle, StdBasis};
use crate::limits::Limits;

/// Generators in a named ring plus a per-order cache of reduced bases.
pub struct Ideal {
    ring: RingCtx,
    gens: Vec<Poly>,
    limits: Limits,
    cache: Mutex<HashMap<OrderSpec, Arc<StdBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            limits: self.limits.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache").clone()),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("gens", &self.gens).finish()
    }
}

impl PartialEq for Ideal {
    /// Syntactic equality of ring and generator list.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalMembership {
    /// Certificate for `1 ∈ I + (1 − z·f)` in the ring extended by `$z`.
    Yes(Witness),
    No,
}

impl RadicalMembership {
    pub fn is_yes(&self) -> bool {
        matches!(self, RadicalMembership::Yes(_))
    }
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(ring: &RingCtx, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != ring.arity() {
                return Err(urr_poly::PolyError::ArityMismatch { expected: ring.arity(), found: g.nvars() }.into());
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            limits: Limits::default(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.arity()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced standard basis for `order`, computed once per order.
    pub fn basis(&self, order: &OrderSpec) -> Result<Arc<StdBasis>> {
        if let Some(b) = self.cache.lock().expect("cache").get(order) {
            return Ok(b.clone());
        }
        let opts = BasisOptions { reduce: true, track: false, limits: self.limits.clone() };
        let b = Arc::new(std_basis_with(&self.gens, order, &opts)?);
        self.cache.lock().expect("cache").insert(order.clone(), b.clone());
        Ok(b)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.basis(&OrderSpec::degrevlex(self.nvars()))?.contains(f)
    }

    /// Global membership with a certificate.
    pub fn member(&self, f: &Poly) -> Result<Membership> {
        MembershipOracle::new(&self.gens, &OrderSpec::degrevlex(self.nvars()), None, &self.limits)?.test(f)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis(&OrderSpec::degrevlex(self.nvars()))?.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens)?.with_limits(self.limits.clone()))
    }

    pub fn with_gens(&self, extra: &[Poly]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(Ideal::new(&self.ring, gens)?.with_limits(self.limits.clone()))
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::PreconditionViolated("ideals live in different rings".into()));
        }
        Ok(())
    }

    /// Ideal equality via reduced degrevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        let o = OrderSpec::degrevlex(self.nvars());
        Ok(self.basis(&o)?.generators() == other.basis(&o)?.generators())
    }
}

/// `I ∩ 𝕂[remaining variables]`, kept in the same ring.
pub fn eliminate(i: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let n = i.nvars();
    if let Some(v) = drop.iter().find(|v| **v >= n) {
        return Err(Error::PreconditionViolated(format!("variable index {v} out of range")));
    }
    let order = OrderSpec::elimination(n, drop);
    let b = i.basis(&order)?;
    let kept = b.generators().iter().filter(|g| drop.iter().all(|v| !g.uses_var(*v))).cloned().collect();
    Ok(Ideal::new(&i.ring, kept)?.with_limits(i.limits.clone()))
}

/// Adds one auxiliary variable `name` after the user variables, with a
/// dominating global block, and eliminates it from `gens`.
fn eliminate_aux(i: &Ideal, name: &str, gens: Vec<Poly>) -> Result<Ideal> {
    let n = i.nvars();
    let ring = i.ring.extend_aux(name, 1, false);
    let order = OrderSpec::degrevlex(n).with_leading_aux(1, BlockKind::DegRevLexGlobal);
    let aux = Ideal::new(&ring, gens)?.with_limits(i.limits.clone());
    let b = aux.basis(&order)?;
    let kept = b.generators().iter().filter_map(|g| if g.uses_var(n) { None } else { g.truncate_vars(n) }).collect();
    Ok(Ideal::new(&i.ring, kept)?.with_limits(i.limits.clone()))
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let n = i.nvars();
    let s = Poly::var(n + 1, n);
    let one_minus_s = &Poly::one(n + 1) - &s;
    let mut gens: Vec<Poly> = i.gens.iter().map(|g| &g.extend_vars(1) * &s).collect();
    gens.extend(j.gens.iter().map(|g| &g.extend_vars(1) * &one_minus_s));
    eliminate_aux(i, "$s", gens)
}

/// `I : f^∞`.
pub fn saturate(i: &Ideal, f: &Poly) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::PreconditionViolated("cannot saturate by zero".into()));
    }
    let n = i.nvars();
    let mut gens: Vec<Poly> = i.gens.iter().map(|g| g.extend_vars(1)).collect();
    gens.push(&Poly::one(n + 1) - &(&Poly::var(n + 1, n) * &f.extend_vars(1)));
    eliminate_aux(i, "$z", gens)
}

/// `f ∈ √I` over the algebraic closure, via `1 ∈ I + (1 − z·f)`.
pub fn radical_member(f: &Poly, i: &Ideal) -> Result<RadicalMembership> {
    let n = i.nvars();
    let mut gens: Vec<Poly> = i.gens.iter().map(|g| g.extend_vars(1)).collect();
    gens.push(&Poly::one(n + 1) - &(&Poly::var(n + 1, n) * &f.extend_vars(1)));
    let oracle = MembershipOracle::new(&gens, &OrderSpec::degrevlex(n + 1), None, &i.limits)?;
    Ok(match oracle.test(&Poly::one(n + 1))? {
        Membership::In(cert) => RadicalMembership::Yes(Witness { generators: gens, cert }),
        Membership::NotIn => RadicalMembership::No,
    })
}

/// Krull dimension: largest set of variables containing the support of no
/// leading monomial of a degrevlex basis.
pub fn krull_dim(i: &Ideal) -> Result<usize> {
    let n = i.nvars();
    let b = i.basis(&OrderSpec::degrevlex(n))?;
    if b.is_unit() {
        return Err(Error::DimOfUnitIdeal);
    }
    let supports: Vec<u64> = b
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    if n > 20 {
        return Err(Error::LimitExceeded("dimension search over more than 20 variables".into()));
    }
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// True iff `𝕂[vars]/I` is a finite module over `𝕂[base]`.
pub fn finite_over(i: &Ideal, base: &[usize]) -> Result<bool> {
    let n = i.nvars();
    let rest: Vec<usize> = (0..n).filter(|v| !base.contains(v)).collect();
    let mut blocks = Vec::new();
    if !rest.is_empty() {
        blocks.push(Block { vars: rest.clone(), kind: BlockKind::DegRevLexGlobal });
    }
    if !base.is_empty() {
        blocks.push(Block { vars: base.to_vec(), kind: BlockKind::DegRevLexGlobal });
    }
    let order = OrderSpec::new(n, blocks)?;
    let b = i.basis(&order)?;
    if b.is_unit() {
        return Ok(true);
    }
    let lms = b.leading_monomials();
    Ok(rest.iter().all(|v| lms.iter().any(|m| m.exp(*v) > 0 && m.support().all(|w| w == *v))))
}

pub fn product_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let gens = i.gens.iter().flat_map(|a| j.gens.iter().map(move |b| a * b)).collect();
    Ok(Ideal::new(&i.ring, gens)?.with_limits(i.limits.clone()))
}
