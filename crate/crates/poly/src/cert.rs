//! Cofactor certificates and their checker.
//!
//! A certificate claims `u·f = Σ cᵢ·g_{kᵢ}` for a target `f`, a unit witness
//! `u` and cofactors `cᵢ` attached to generator indices `kᵢ`. With a point
//! `p` it also claims `u(p) ≠ 0`, which places `f` in the ideal localized at
//! `p`; without one `u` must be exactly `1`.
//!
//! [`check_certificate`] replays that claim with multiplication, addition and
//! evaluation only.

use num_traits::Zero;

use crate::point::Point;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cert {
    pub target: Poly,
    pub unit: Poly,
    pub cofactors: Vec<(Poly, usize)>,
    pub point: Option<Point>,
}

impl Cert {
    /// Global certificate (`u = 1`) with one cofactor per generator.
    pub fn global(target: Poly, cofactors: Vec<Poly>) -> Cert {
        let n = target.nvars();
        Cert {
            target,
            unit: Poly::one(n),
            cofactors: cofactors.into_iter().enumerate().map(|(i, c)| (c, i)).collect(),
            point: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.target.nvars()
    }
}

/// Replays `cert` against `generators`. Returns `false` on any mismatch:
/// arity, index range, the polynomial identity, or the unit condition.
pub fn check_certificate(cert: &Cert, generators: &[Poly]) -> bool {
    let n = cert.target.nvars();
    if cert.unit.nvars() != n || generators.iter().any(|g| g.nvars() != n) {
        return false;
    }
    let mut rhs = Poly::zero(n);
    for (c, k) in &cert.cofactors {
        let Some(g) = generators.get(*k) else { return false };
        if c.nvars() != n {
            return false;
        }
        rhs = rhs + c * g;
    }
    if &cert.unit * &cert.target != rhs {
        return false;
    }
    match &cert.point {
        None => cert.unit.is_one(),
        Some(p) => match cert.unit.evaluate(p) {
            Ok(v) => !v.is_zero(),
            Err(_) => false,
        },
    }
}

/// A certificate together with the generators it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub generators: Vec<Poly>,
    pub cert: Cert,
}

impl Witness {
    pub fn check(&self) -> bool {
        check_certificate(&self.cert, &self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_poly, RingCtx};

    fn ring() -> RingCtx {
        RingCtx::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    /// P − xQ = (1+x)(1−x²−y²) for the stereographic round trip on the circle.
    fn circle_cert() -> (Cert, Vec<Poly>) {
        let target = p("((1+x)^2 - y^2) - x*((1+x)^2 + y^2)");
        let gens = vec![p("x^2 + y^2 - 1")];
        (Cert::global(target, vec![p("-(1+x)")]), gens)
    }

    #[test]
    fn circle_identity_replays() {
        let (c, g) = circle_cert();
        assert!(check_certificate(&c, &g));
    }

    #[test]
    fn tampered_cofactor_rejected() {
        let (mut c, g) = circle_cert();
        c.cofactors[0].0 = &c.cofactors[0].0 + &p("1/1000");
        assert!(!check_certificate(&c, &g));
    }

    #[test]
    fn unit_vanishing_at_point_rejected() {
        // x·(1−x) = x − x², but the unit 1−x vanishes at x = 1
        let target = p("x");
        let gens = vec![p("x - x^2")];
        let mut cert = Cert {
            target,
            unit: p("1 - x"),
            cofactors: vec![(p("1"), 0)],
            point: Some(Point::from_ints(&[0, 0])),
        };
        assert!(check_certificate(&cert, &gens));
        cert.point = Some(Point::from_ints(&[1, 0]));
        assert!(!check_certificate(&cert, &gens));
        cert.point = None;
        assert!(!check_certificate(&cert, &gens), "global certificates need u = 1");
    }

    #[test]
    fn bad_index_rejected() {
        let (mut c, g) = circle_cert();
        c.cofactors[0].1 = 3;
        assert!(!check_certificate(&c, &g));
    }
}
