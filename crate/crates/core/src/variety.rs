//! Affine varieties given by generators of their ideal, germs of regular
//! functions, and rational maps.

use num_traits::Zero;
use urr_poly::{clear_fraction_composition, Cert, Matrix, OrderSpec, Point, Poly, Rat, RingCtx, Witness};

use crate::error::{Error, Result};
use crate::groebner::{Membership, MembershipOracle};
use crate::ideal::{krull_dim, Ideal};
use crate::limits::Limits;

/// `X ⊂ 𝕂ⁿ` presented by generators of `ℐ(X)` and its dimension.
///
/// Primality of the ideal is not computed; `assume_prime` records that the
/// caller vouches for it. Rational-function identities on `X` rely on it.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyPresentation {
    ideal: Ideal,
    dim: usize,
    assume_prime: bool,
}

impl VarietyPresentation {
    /// Checks that the Krull dimension of the ideal equals `dim`.
    pub fn new(ring: &RingCtx, gens: Vec<Poly>, dim: usize, assume_prime: bool) -> Result<Self> {
        Self::with_limits(ring, gens, dim, assume_prime, &Limits::default())
    }

    pub fn with_limits(ring: &RingCtx, gens: Vec<Poly>, dim: usize, assume_prime: bool, limits: &Limits) -> Result<Self> {
        let ideal = Ideal::new(ring, gens)?.with_limits(limits.clone());
        let actual = match krull_dim(&ideal) {
            Ok(d) => d,
            Err(Error::DimOfUnitIdeal) => return Err(Error::PreconditionViolated("variety is empty".into())),
            Err(e) => return Err(e),
        };
        if actual != dim {
            return Err(Error::PreconditionViolated(format!("claimed dimension {dim}, computed {actual}")));
        }
        Ok(VarietyPresentation { ideal, dim, assume_prime })
    }

    /// All of `𝕂ⁿ`.
    pub fn affine_space(ring: &RingCtx) -> Self {
        VarietyPresentation {
            ideal: Ideal::new(ring, Vec::new()).expect("empty ideal"),
            dim: ring.arity(),
            assume_prime: true,
        }
    }

    pub fn ring(&self) -> &RingCtx {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gens(&self) -> &[Poly] {
        self.ideal.gens()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn assume_prime(&self) -> bool {
        self.assume_prime
    }

    pub fn limits(&self) -> &Limits {
        self.ideal.limits()
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        for g in self.gens() {
            if !g.evaluate(p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_point(&self, p: &Point) -> Result<()> {
        if p.arity() != self.nvars() {
            return Err(urr_poly::PolyError::ArityMismatch { expected: self.nvars(), found: p.arity() }.into());
        }
        if !self.contains_point(p)? {
            return Err(Error::PointNotOnVariety);
        }
        Ok(())
    }

    /// Same generators in a ring with `names` (arity must match); used when
    /// aux or renamed coordinates are attached without changing the ideal.
    pub(crate) fn from_parts(ideal: Ideal, dim: usize, assume_prime: bool) -> Self {
        VarietyPresentation { ideal, dim, assume_prime }
    }
}

/// Jacobian matrix of `polys` evaluated at `p` (rows = polys).
pub fn jacobian_at(polys: &[Poly], nvars: usize, p: &Point) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(polys.len());
    for f in polys {
        let mut row = Vec::with_capacity(nvars);
        for v in 0..nvars {
            row.push(f.derivative(v).evaluate(p)?);
        }
        rows.push(row);
    }
    Ok(if rows.is_empty() { Matrix::zeros(0, nvars) } else { Matrix::from_rows(rows) })
}

pub fn jacobian_rank_at(x: &VarietyPresentation, p: &Point) -> Result<usize> {
    x.require_point(p)?;
    Ok(jacobian_at(x.gens(), x.nvars(), p)?.rank())
}

pub fn smooth_at(x: &VarietyPresentation, p: &Point) -> Result<bool> {
    Ok(jacobian_rank_at(x, p)? + x.dim() == x.nvars())
}

/// Kernel basis of the Jacobian at `p`.
pub fn tangent_space(x: &VarietyPresentation, p: &Point) -> Result<Vec<Vec<Rat>>> {
    x.require_point(p)?;
    let j = jacobian_at(x.gens(), x.nvars(), p)?;
    if j.rows() == 0 {
        return Ok(Matrix::identity(x.nvars()).to_rows());
    }
    Ok(j.kernel())
}

/// Germ `num/den` of a regular function at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFrac {
    pub num: Poly,
    pub den: Poly,
    pub point: Point,
}

impl LocalFrac {
    pub fn new(num: Poly, den: Poly, point: Point) -> Result<Self> {
        if den.evaluate(&point)?.is_zero() {
            return Err(Error::PreconditionViolated("denominator vanishes at the base point".into()));
        }
        Ok(LocalFrac { num, den, point })
    }

    pub fn poly(num: Poly, point: Point) -> Self {
        let n = num.nvars();
        LocalFrac { num, den: Poly::one(n), point }
    }

    pub fn value(&self) -> Result<Rat> {
        Ok(self.num.evaluate(&self.point)? / self.den.evaluate(&self.point)?)
    }

    /// Gradient of `num/den` at the base point.
    pub fn gradient(&self) -> Result<Vec<Rat>> {
        let n = self.num.nvars();
        let a = self.num.evaluate(&self.point)?;
        let b = self.den.evaluate(&self.point)?;
        let mut out = Vec::with_capacity(n);
        for v in 0..n {
            let da = self.num.derivative(v).evaluate(&self.point)?;
            let db = self.den.derivative(v).evaluate(&self.point)?;
            out.push((da * &b - &a * db) / (&b * &b));
        }
        Ok(out)
    }

    /// Same germ with numerator and denominator scaled so the denominator
    /// is `1` at the base point.
    pub fn normalized(&self) -> Result<LocalFrac> {
        let b = self.den.evaluate(&self.point)?;
        let inv = Rat::from_integer(1.into()) / b;
        Ok(LocalFrac { num: self.num.scale(&inv), den: self.den.scale(&inv), point: self.point.clone() })
    }
}

/// Coordinates `P_i/Q_i` over a source ring, landing in `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    pub coords: Vec<(Poly, Poly)>,
    pub target: VarietyPresentation,
}

impl RationalMap {
    pub fn new(coords: Vec<(Poly, Poly)>, target: VarietyPresentation) -> Result<Self> {
        if coords.len() != target.nvars() {
            return Err(Error::PreconditionViolated(format!(
                "map has {} coordinates but the target lives in {} variables",
                coords.len(),
                target.nvars()
            )));
        }
        if let Some(n) = coords.first().map(|c| c.0.nvars()) {
            if coords.iter().any(|(p, q)| p.nvars() != n || q.nvars() != n) {
                return Err(Error::PreconditionViolated("coordinates over different rings".into()));
            }
        }
        if coords.iter().any(|(_, q)| q.is_zero()) {
            return Err(Error::PreconditionViolated("zero denominator".into()));
        }
        Ok(RationalMap { coords, target })
    }

    pub fn polynomial(coords: Vec<Poly>, target: VarietyPresentation) -> Result<Self> {
        let c = coords.into_iter().map(|p| {
            let n = p.nvars();
            (p, Poly::one(n))
        });
        RationalMap::new(c.collect(), target)
    }

    pub fn source_nvars(&self) -> Option<usize> {
        self.coords.first().map(|c| c.0.nvars())
    }

    /// Checks that no denominator lies in `ℐ(X)`.
    pub fn check_denominators(&self, x: &VarietyPresentation) -> Result<()> {
        for (i, (_, q)) in self.coords.iter().enumerate() {
            if x.ideal().contains(q)? {
                return Err(Error::PreconditionViolated(format!("denominator of coordinate {} vanishes on X", i + 1)));
            }
        }
        Ok(())
    }

    /// `self ∘ inner`, clearing denominators coordinate by coordinate.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for (p, q) in &self.coords {
            let (n, d) = clear_fraction_composition(p, q, &inner.coords)?;
            if d.is_zero() {
                return Err(Error::CompositionUndefined("composed denominator is identically zero".into()));
            }
            coords.push((n, d));
        }
        Ok(RationalMap { coords, target: self.target.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// `rep` is the germ `A/u`; `witness` certifies `u·P = A·Q + Σ c·g`
    /// against the generators `ℐ(X) ∪ {Q}` at the point.
    Regular { rep: LocalFrac, witness: Witness },
    NotRegular,
    Undetermined(String),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

/// Decides whether `P/Q` restricted to `X` is regular at `p`.
pub fn regular_on_x_at(p_num: &Poly, q_den: &Poly, x: &VarietyPresentation, p: &Point) -> Result<Regularity> {
    x.require_point(p)?;
    let mut gens = x.gens().to_vec();
    gens.push(q_den.clone());
    let qi = gens.len() - 1;
    if !q_den.evaluate(p)?.is_zero() {
        let cert = Cert {
            target: p_num.clone(),
            unit: q_den.clone(),
            cofactors: vec![(p_num.clone(), qi)],
            point: Some(p.clone()),
        };
        let rep = LocalFrac::new(p_num.clone(), q_den.clone(), p.clone())?;
        return Ok(Regularity::Regular { rep, witness: Witness { generators: gens, cert } });
    }
    let oracle = match MembershipOracle::new(&gens, &OrderSpec::local_degrevlex(x.nvars()), Some(p), x.limits()) {
        Ok(o) => o,
        Err(e) if e.is_limit() => return Ok(Regularity::Undetermined(e.to_string())),
        Err(e) => return Err(e),
    };
    match oracle.test(p_num) {
        Ok(Membership::In(cert)) => {
            let a = cert
                .cofactors
                .iter()
                .find(|(_, i)| *i == qi)
                .map(|(c, _)| c.clone())
                .unwrap_or_else(|| Poly::zero(x.nvars()));
            let rep = LocalFrac::new(a, cert.unit.clone(), p.clone())?;
            Ok(Regularity::Regular { rep, witness: Witness { generators: gens, cert } })
        }
        Ok(Membership::NotIn) => Ok(Regularity::NotRegular),
        Err(e) if e.is_limit() => Ok(Regularity::Undetermined(e.to_string())),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapEquality {
    /// One witness per coordinate for `P_F·Q_G − P_G·Q_F ∈ ℐ(X)`.
    Equal(Vec<Witness>),
    /// Index of the first coordinate that differs.
    NotEqual(usize),
}

impl MapEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, MapEquality::Equal(_))
    }
}

fn cross(f: &(Poly, Poly), g: &(Poly, Poly)) -> Poly {
    &(&f.0 * &g.1) - &(&g.0 * &f.1)
}

/// Equality of `F|X` and `G|X` as rational maps, coordinate by coordinate.
pub fn maps_equal_on_x(f: &[(Poly, Poly)], g: &[(Poly, Poly)], x: &VarietyPresentation) -> Result<MapEquality> {
    compare_coords(f, g, x, None)
}

/// Germ version at `p`: the cross products are tested in `ℐ(X)` localized
/// at `p`. For prime `ℐ(X)` this agrees with [`maps_equal_on_x`].
pub fn germs_equal_on_x(f: &[(Poly, Poly)], g: &[(Poly, Poly)], x: &VarietyPresentation, p: &Point) -> Result<MapEquality> {
    compare_coords(f, g, x, Some(p))
}

fn compare_coords(
    f: &[(Poly, Poly)],
    g: &[(Poly, Poly)],
    x: &VarietyPresentation,
    p: Option<&Point>,
) -> Result<MapEquality> {
    if f.len() != g.len() {
        return Err(Error::PreconditionViolated("maps have different numbers of coordinates".into()));
    }
    let order = match p {
        None => OrderSpec::degrevlex(x.nvars()),
        Some(_) => OrderSpec::local_degrevlex(x.nvars()),
    };
    let oracle = MembershipOracle::new(x.gens(), &order, p, x.limits())?;
    let mut out = Vec::with_capacity(f.len());
    for (i, (a, b)) in f.iter().zip(g).enumerate() {
        match oracle.test(&cross(a, b))? {
            Membership::In(cert) => out.push(Witness { generators: x.gens().to_vec(), cert }),
            Membership::NotIn => return Ok(MapEquality::NotEqual(i)),
        }
    }
    Ok(MapEquality::Equal(out))
}

pub fn fracs_of(map: &[LocalFrac]) -> Vec<(Poly, Poly)> {
    map.iter().map(|f| (f.num.clone(), f.den.clone())).collect()
}
