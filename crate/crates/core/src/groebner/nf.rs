//! Reduction primitives: Mora's weak normal form and, for global orders,
//! full (tail) reduction.

use urr_poly::{Monomial, OrderSpec, Poly, Rat};

use super::sorted::SortedPoly;
use crate::error::{Error, Result};
use crate::limits::Limits;

pub(crate) struct Reducers<'a> {
    pub polys: &'a [SortedPoly],
    pub ecarts: &'a [u32],
}

pub(crate) struct NfOutput {
    pub nf: SortedPoly,
    /// Present when tracking: `unit·f = Σ coeffs[k]·polys[k] + nf`.
    pub unit: Option<Poly>,
    pub coeffs: Vec<Poly>,
}

struct Extra {
    poly: SortedPoly,
    ecart: u32,
    unit: Option<Poly>,
    coeffs: Vec<Poly>,
}

enum Pick {
    Basis(usize),
    Extra(usize),
}

fn pick(lm: &Monomial, red: &Reducers, extras: &[Extra]) -> Option<(Pick, u32)> {
    let mut best: Option<(Pick, u32)> = None;
    for (k, g) in red.polys.iter().enumerate() {
        if g.lm().divides(lm) && best.as_ref().is_none_or(|b| red.ecarts[k] < b.1) {
            best = Some((Pick::Basis(k), red.ecarts[k]));
        }
    }
    for (k, e) in extras.iter().enumerate() {
        if e.poly.lm().divides(lm) && best.as_ref().is_none_or(|b| e.ecart < b.1) {
            best = Some((Pick::Extra(k), e.ecart));
        }
    }
    best
}

fn sub_tracked(acc: &mut [Poly], src: &[Poly], c: &Rat, m: &Monomial) {
    for (a, s) in acc.iter_mut().zip(src) {
        if !s.is_zero() {
            a.add_scaled(&-c, m, s);
        }
    }
}

/// Mora's weak normal form. Reducers are chosen by smallest écart, ties by
/// index (basis before intermediate remainders). For global orders no
/// remainder is ever added to the reducer set and the unit stays `1`.
pub(crate) fn weak_nf(
    f: SortedPoly,
    red: &Reducers,
    order: &OrderSpec,
    track: bool,
    limits: &Limits,
) -> Result<NfOutput> {
    let n = f.nvars();
    let global = order.is_global();
    let mut h = f;
    let mut unit = track.then(|| Poly::one(n));
    let mut coeffs = if track { vec![Poly::zero(n); red.polys.len()] } else { Vec::new() };
    let mut extras: Vec<Extra> = Vec::new();
    let mut steps = 0usize;
    while !h.is_zero() {
        let lm = h.lm().clone();
        let Some((choice, ecart_g)) = pick(&lm, red, &extras) else { break };
        steps += 1;
        if steps > limits.max_reduction_steps {
            return Err(Error::LimitExceeded(format!(
                "normal form exceeded {} reduction steps",
                limits.max_reduction_steps
            )));
        }
        let ecart_h = h.ecart();
        if !global && ecart_g > ecart_h {
            extras.push(Extra { poly: h.clone(), ecart: ecart_h, unit: unit.clone(), coeffs: coeffs.clone() });
        }
        let (g, lc_g) = match choice {
            Pick::Basis(k) => (&red.polys[k], red.polys[k].lc().clone()),
            Pick::Extra(k) => (&extras[k].poly, extras[k].poly.lc().clone()),
        };
        let m = g.lm().divide_into(&lm).expect("divisor");
        let c = h.lc() / &lc_g;
        let next = h.sub_scaled(&c, &m, g, order);
        if track {
            match choice {
                Pick::Basis(k) => coeffs[k].add_scaled(&c, &m, &Poly::one(n)),
                Pick::Extra(k) => {
                    let e = &extras[k];
                    sub_tracked(&mut coeffs, &e.coeffs, &c, &m);
                    if let (Some(u), Some(ue)) = (unit.as_mut(), e.unit.as_ref()) {
                        u.add_scaled(&-&c, &m, ue);
                    }
                }
            }
        }
        h = next;
        if h.total_degree() > limits.degree_cap {
            return Err(Error::LimitExceeded(format!(
                "normal form exceeded total degree {}",
                limits.degree_cap
            )));
        }
    }
    Ok(NfOutput { nf: h, unit, coeffs })
}

/// Full reduction for global orders: no term of the remainder is divisible
/// by a reducer's leading monomial. With `trunc = Some(N)` terms of total
/// degree `>= N` are discarded after every step, which makes the loop finite
/// for degree-local orders as well.
pub(crate) fn full_nf(
    f: SortedPoly,
    red: &Reducers,
    order: &OrderSpec,
    track: bool,
    trunc: Option<u32>,
    limits: &Limits,
) -> Result<(Poly, Vec<Poly>)> {
    let n = f.nvars();
    let mut h = f;
    if let Some(t) = trunc {
        h.truncate_degree(t);
    }
    let mut rem = Poly::zero(n);
    let mut coeffs = if track { vec![Poly::zero(n); red.polys.len()] } else { Vec::new() };
    let mut steps = 0usize;
    while let Some((lm, lc)) = h.lead().cloned() {
        let k = red
            .polys
            .iter()
            .enumerate()
            .filter(|(_, g)| g.lm().divides(&lm))
            .min_by_key(|(k, _)| (red.ecarts[*k], *k))
            .map(|(k, _)| k);
        match k {
            None => {
                h.pop_lead();
                rem.add_term(lm, lc);
            }
            Some(k) => {
                steps += 1;
                if steps > limits.max_reduction_steps {
                    return Err(Error::LimitExceeded(format!(
                        "reduction exceeded {} steps",
                        limits.max_reduction_steps
                    )));
                }
                let g = &red.polys[k];
                let m = g.lm().divide_into(&lm).expect("divisor");
                let c = &lc / g.lc();
                h = h.sub_scaled(&c, &m, g, order);
                if let Some(t) = trunc {
                    h.truncate_degree(t);
                }
                if track {
                    coeffs[k].add_scaled(&c, &m, &Poly::one(n));
                }
            }
        }
    }
    Ok((rem, coeffs))
}
