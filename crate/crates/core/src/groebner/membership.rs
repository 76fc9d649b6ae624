//! Ideal membership with certificates, globally or localized at a point.

use urr_poly::{Cert, OrderSpec, Point, Poly};

use super::{std_basis_with, BasisOptions, StdBasis};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    In(Cert),
    NotIn,
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }

    pub fn cert(&self) -> Option<&Cert> {
        match self {
            Membership::In(c) => Some(c),
            Membership::NotIn => None,
        }
    }

    pub fn into_cert(self) -> Option<Cert> {
        match self {
            Membership::In(c) => Some(c),
            Membership::NotIn => None,
        }
    }
}

/// A tracked standard basis of a fixed generator list, answering repeated
/// membership queries. With a point, the generators are translated so the
/// point sits at the origin and certificates are translated back.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    gens: Vec<Poly>,
    point: Option<Point>,
    basis: StdBasis,
}

impl MembershipOracle {
    pub fn new(gens: &[Poly], order: &OrderSpec, point: Option<&Point>, limits: &Limits) -> Result<Self> {
        let opts = BasisOptions { reduce: true, track: true, limits: limits.clone() };
        let basis = match point {
            None => std_basis_with(gens, order, &opts)?,
            Some(p) => {
                if order.is_global() {
                    return Err(Error::PreconditionViolated(
                        "membership at a point needs a local or mixed order".into(),
                    ));
                }
                let moved = gens.iter().map(|g| g.translate(p)).collect::<std::result::Result<Vec<_>, _>>()?;
                std_basis_with(&moved, order, &opts)?
            }
        };
        Ok(MembershipOracle { gens: gens.to_vec(), point: point.cloned(), basis })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn basis(&self) -> &StdBasis {
        &self.basis
    }

    pub fn test(&self, f: &Poly) -> Result<Membership> {
        let moved = match &self.point {
            Some(p) => f.translate(p)?,
            None => f.clone(),
        };
        let Some(cert) = self.basis.certify(&moved)? else {
            return Ok(Membership::NotIn);
        };
        let cert = match &self.point {
            None => cert,
            Some(p) => {
                let back = p.neg();
                Cert {
                    target: f.clone(),
                    unit: cert.unit.translate(&back)?,
                    cofactors: cert
                        .cofactors
                        .iter()
                        .map(|(c, i)| Ok((c.translate(&back)?, *i)))
                        .collect::<Result<Vec<_>>>()?,
                    point: Some(p.clone()),
                }
            }
        };
        Ok(Membership::In(cert))
    }
}

/// Membership of `f` in the ideal generated by `gens`; localized at `p`
/// when a point is given.
pub fn member(f: &Poly, gens: &[Poly], order: &OrderSpec, p: Option<&Point>) -> Result<Membership> {
    member_with(f, gens, order, p, &Limits::default())
}

pub fn member_with(
    f: &Poly,
    gens: &[Poly],
    order: &OrderSpec,
    p: Option<&Point>,
    limits: &Limits,
) -> Result<Membership> {
    MembershipOracle::new(gens, order, p, limits)?.test(f)
}
