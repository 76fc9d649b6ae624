//! Term vectors kept sorted under a monomial order, leading term last.

use std::cmp::Ordering;

use num_traits::Zero;
use urr_poly::{Monomial, OrderSpec, Poly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    /// Ascending; the leading term is `terms.last()`.
    terms: Vec<(Monomial, Rat)>,
    nvars: usize,
}

impl SortedPoly {
    pub fn from_poly(p: &Poly, order: &OrderSpec) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        SortedPoly { terms, nvars: p.nvars() }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().cloned())
    }


    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }


    pub fn lead(&self) -> Option<&(Monomial, Rat)> {
        self.terms.last()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    pub fn lc(&self) -> &Rat {
        &self.terms.last().expect("nonzero").1
    }

    pub fn pop_lead(&mut self) -> Option<(Monomial, Rat)> {
        self.terms.pop()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `deg f − deg LM(f)`.
    pub fn ecart(&self) -> u32 {
        match self.lead() {
            Some((m, _)) => self.total_degree() - m.degree(),
            None => 0,
        }
    }

    pub fn scale_mul(&self, c: &Rat, m: &Monomial) -> SortedPoly {
        SortedPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
            nvars: self.nvars,
        }
    }

    /// `self − c·m·g`, merged in order.
    pub fn sub_scaled(&self, c: &Rat, m: &Monomial, g: &SortedPoly, order: &OrderSpec) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(k, v)| (k.mul(m), v * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.compare(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (k, v) = b.next().unwrap();
                    out.push((k, -v));
                }
                Ordering::Equal => {
                    let (k, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = x - y;
                    if !v.is_zero() {
                        out.push((k.clone(), v));
                    }
                }
            }
        }
        SortedPoly { terms: out, nvars: self.nvars }
    }

    /// Drops terms of total degree `>= n`.
    pub fn truncate_degree(&mut self, n: u32) {
        self.terms.retain(|(m, _)| m.degree() < n);
    }


    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use urr_poly::{parse_poly, RingCtx};

    #[test]
    fn merge_matches_plain_arithmetic() {
        let r = RingCtx::new(&["x", "y"]).unwrap();
        let o = OrderSpec::local_degrevlex(2);
        let f = parse_poly("x - x^2 + 3*x*y + y^3", &r).unwrap();
        let g = parse_poly("x + y^2", &r).unwrap();
        let m = Monomial::from_exponents(vec![0, 1]);
        let c = urr_poly::rat::frac(2, 3);
        let s = SortedPoly::from_poly(&f, &o).sub_scaled(&c, &m, &SortedPoly::from_poly(&g, &o), &o);
        let expected = &f - &g.mul_term(&m, &c);
        assert_eq!(s.to_poly(), expected);
        assert_eq!(s, SortedPoly::from_poly(&expected, &o));
        assert_eq!(s.lm(), &Monomial::from_exponents(vec![1, 0]));
    }
}
