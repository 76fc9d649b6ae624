//! Soundness probes: perturb one coefficient of a certificate so that its
//! identity no longer holds.

use rand::Rng;
use urr_poly::{rat, Cert, Monomial, Poly, Rat};

use super::bundle::{decode_cert, encode_cert, BundleCert};
use crate::error::Result;

enum Slot {
    Target,
    Unit,
    Cofactor(usize),
}

fn bump(p: &Poly, rng: &mut impl Rng) -> Poly {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let delta: Rat = rat::frac(sign * rng.gen_range(1..=9), rng.gen_range(1..=4));
    let terms: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    let m = if terms.is_empty() {
        Monomial::one(p.nvars())
    } else {
        terms[rng.gen_range(0..terms.len())].clone()
    };
    let mut out = p.clone();
    out.add_term(m, delta);
    out
}

/// Changes one coefficient in a slot whose change must break
/// `u·f = Σ cᵢgᵢ`: the target, the unit when the target is nonzero, or a
/// cofactor of a nonzero generator.
pub fn mutate_cert(c: &Cert, generators: &[Poly], rng: &mut impl Rng) -> Cert {
    let mut slots = vec![Slot::Target];
    if !c.target.is_zero() {
        slots.push(Slot::Unit);
    }
    for (k, (_, idx)) in c.cofactors.iter().enumerate() {
        if generators.get(*idx).is_some_and(|g| !g.is_zero()) {
            slots.push(Slot::Cofactor(k));
        }
    }
    let mut out = c.clone();
    match slots.swap_remove(rng.gen_range(0..slots.len())) {
        Slot::Target => out.target = bump(&c.target, rng),
        Slot::Unit => out.unit = bump(&c.unit, rng),
        Slot::Cofactor(k) => out.cofactors[k].0 = bump(&c.cofactors[k].0, rng),
    }
    out
}

pub fn mutate_bundle_cert(c: &BundleCert, rng: &mut impl Rng) -> Result<BundleCert> {
    let (ring, mut w) = decode_cert(c)?;
    w.cert = mutate_cert(&w.cert, &w.generators, rng);
    Ok(encode_cert(&c.label, &ring, &w))
}
