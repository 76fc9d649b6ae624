use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{check_arity, PolyError};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::order::OrderSpec;
use crate::point::Point;
use crate::rat::{self, Rat};
use crate::ring::RingCtx;

/// Total degree guard applied by parsing and by the checked operations.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// A sparse polynomial with exact rational coefficients.
///
/// Only the arity is stored; variable names live in a [`RingCtx`] that is
/// supplied when printing or parsing. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat::int(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), rat::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(rat::zero)
    }

    /// `Some(c)` if the polynomial is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, c: &Rat, m: &Monomial, other: &Poly) {
        for (k, a) in &other.terms {
            self.add_term(k.mul(m), a * c);
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn checked_pow(&self, k: u32, cap: u32) -> Result<Poly, PolyError> {
        let d = self.total_degree().unwrap_or(0) as u64 * k as u64;
        if d > cap as u64 {
            return Err(PolyError::LimitExceeded(format!("total degree {d} exceeds cap {cap}")));
        }
        Ok(self.pow(k))
    }

    pub fn checked_mul(&self, other: &Poly, cap: u32) -> Result<Poly, PolyError> {
        check_arity(self.nvars, other.nvars)?;
        let d = self.total_degree().unwrap_or(0) + other.total_degree().unwrap_or(0);
        if d > cap {
            return Err(PolyError::LimitExceeded(format!("total degree {d} exceeds cap {cap}")));
        }
        Ok(self * other)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: &OrderSpec) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Terms in descending order under `order`.
    pub fn sorted_terms(&self, order: &OrderSpec) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<(Monomial, Rat)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &OrderSpec) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, p: &Point) -> Result<Rat, PolyError> {
        check_arity(self.nvars, p.arity())?;
        let mut acc = rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(p[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes variable `i` by `images[i]`. All images must share one
    /// arity, which becomes the arity of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        check_arity(self.nvars, images.len())?;
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        for im in images {
            check_arity(target, im.nvars)?;
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|im| vec![Poly::one(target), im.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = out + t;
        }
        Ok(out)
    }

    /// `g(v) = f(v + p)`.
    pub fn translate(&self, p: &Point) -> Result<Poly, PolyError> {
        check_arity(self.nvars, p.arity())?;
        if p.is_origin() {
            return Ok(self.clone());
        }
        let n = self.nvars;
        let images: Vec<Poly> = (0..n)
            .map(|i| Poly::var(n, i) + Poly::constant(n, p[i].clone()))
            .collect();
        self.compose(&images)
    }

    /// `f ∘ A`: variable `i` is replaced by `Σ_j A[i][j] x_j`.
    pub fn linear_change(&self, a: &Matrix) -> Result<Poly, PolyError> {
        let n = self.nvars;
        check_arity(n, a.rows())?;
        check_arity(n, a.cols())?;
        if a.det().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                Poly::from_terms(n, (0..n).map(|j| (Monomial::var(n, j), a.get(i, j).clone())))
            })
            .collect();
        self.compose(&images)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exps_mut()[var] -= 1;
            out.add_term(m2, c * rat::int(e as i64));
        }
        out
    }

    /// Exact division by a variable; `None` if some term is not divisible.
    pub fn div_by_var(&self, var: usize) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exp(var) == 0 {
                return None;
            }
            let mut m2 = m.clone();
            m2.exps_mut()[var] -= 1;
            terms.insert(m2, c.clone());
        }
        Some(Poly { nvars: self.nvars, terms })
    }

    /// Re-embeds into a ring of arity `nvars`, sending variable `i` to
    /// `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        debug_assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Appends `k` unused variables.
    pub fn extend_vars(&self, k: usize) -> Poly {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.embed(self.nvars + k, &map)
    }

    /// Drops trailing variables; `None` if a dropped variable occurs.
    pub fn truncate_vars(&self, nvars: usize) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponents()[nvars..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(Monomial::from_exponents(m.exponents()[..nvars].to_vec()), c.clone());
        }
        Some(Poly { nvars, terms })
    }

    /// Drops all terms of total degree `>= n`.
    pub fn truncate_degree(&self, n: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() < n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Canonical text under the given names: terms in descending degree
    /// reverse-lexicographic order, coefficients as `a/b`, explicit `*` and `^`.
    pub fn to_text(&self, ring: &RingCtx) -> String {
        assert_eq!(ring.arity(), self.nvars, "ring arity does not match polynomial");
        self.to_text_with(ring.names())
    }

    pub fn to_text_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = OrderSpec::degrevlex(self.nvars);
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let mono = monomial_text(&m, names);
            if mono.is_empty() {
                out.push_str(&rat::to_text(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&rat::to_text(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Formatter using the supplied ring.
    pub fn display<'a>(&'a self, ring: &'a RingCtx) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Poly, &'a RingCtx);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.to_text(self.1))
            }
        }
        D(self, ring)
    }
}

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "Poly({})", self.to_text_with(&names))
    }
}

/// Clears denominators of `num(y)/den(y)` after substituting
/// `y_i = a_i / b_i`. Returns `(N, D)` with `N / D = num∘(a/b) / den∘(a/b)`,
/// both multiplied by `Π b_i^{e_i}` where `e_i` is the largest exponent of
/// `y_i` in `num` or `den`.
pub fn clear_fraction_composition(
    num: &Poly,
    den: &Poly,
    fracs: &[(Poly, Poly)],
) -> Result<(Poly, Poly), PolyError> {
    check_arity(num.nvars, fracs.len())?;
    check_arity(den.nvars, fracs.len())?;
    let target = fracs.first().map(|f| f.0.nvars).unwrap_or(0);
    let exps: Vec<u32> = (0..num.nvars).map(|i| num.degree_in(i).max(den.degree_in(i))).collect();
    let mut cache: BTreeMap<(usize, u32, u32), Poly> = BTreeMap::new();
    let mut term_image = |m: &Monomial| -> Poly {
        let mut t = Poly::one(target);
        for (i, &e) in m.exponents().iter().enumerate() {
            if exps[i] == 0 {
                continue;
            }
            let key = (i, e, exps[i] - e);
            let f = cache
                .entry(key)
                .or_insert_with(|| &fracs[i].0.pow(e) * &fracs[i].1.pow(exps[i] - e))
                .clone();
            t = &t * &f;
        }
        t
    };
    let mut n = Poly::zero(target);
    for (m, c) in num.terms() {
        n = n + term_image(m).scale(c);
    }
    let mut d = Poly::zero(target);
    for (m, c) in den.terms() {
        d = d + term_image(m).scale(c);
    }
    Ok((n, d))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in addition");
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(mut self, rhs: Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in subtraction");
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in multiplication");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order (arity, then term maps); used only for deterministic
/// sorting and deduplication.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}
