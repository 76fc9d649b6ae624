//! The map `σ: X × 𝕂^{n−m} → 𝕂ⁿ`, `σ(x, v) = x + v` in adapted
//! coordinates, stored in the original coordinates.

use num_traits::Zero;
use urr_poly::{Matrix, Point, Poly, RingCtx};

use crate::error::{Error, Result};
use crate::generic::SigmaFrame;
use crate::ideal::Ideal;
use crate::variety::{jacobian_at, tangent_space, VarietyPresentation};

/// `X × 𝕂^extra` in the ring extended by `$t1, …`.
pub fn product_presentation(x: &VarietyPresentation, extra: usize) -> Result<VarietyPresentation> {
    if extra == 0 {
        return Ok(x.clone());
    }
    let ring = x.ring().extend_aux("t", extra, true);
    let gens = x.gens().iter().map(|g| g.extend_vars(extra)).collect();
    let ideal = Ideal::new(&ring, gens)?.with_limits(x.limits().clone());
    Ok(VarietyPresentation::from_parts(ideal, x.dim() + extra, x.assume_prime()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaData {
    pub frame: SigmaFrame,
    /// Ring `(u₁…uₙ, $t1…$tk)`, with the user's names for the `u`.
    pub ring: RingCtx,
    /// `σ_j(u, t)`, one polynomial per ambient coordinate.
    pub sigma: Vec<Poly>,
    pub product: VarietyPresentation,
    /// `ℐ(X)` generators followed by `g·t_ℓ` for every `I`-generator `g`.
    pub h_gens: Vec<Poly>,
    /// Number of leading `h_gens` that come from `ℐ(X)`.
    pub x_gen_count: usize,
    /// Projections `π_i = u_i`.
    pub pi: Vec<Poly>,
    /// `(x₀, 0)`.
    pub base_point: Point,
}

impl SigmaData {
    pub fn n(&self) -> usize {
        self.frame.x.nvars()
    }

    pub fn k(&self) -> usize {
        self.frame.codim()
    }

    /// `H` as an ideal of the product ring.
    pub fn h_ideal(&self) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, self.h_gens.clone())?.with_limits(self.product.limits().clone()))
    }
}

/// Builds `σ` and `H` for an accepted frame and checks `σ(u, 0) = u` and
/// that `Dσ` maps `T(X) ⊕ 𝕂^{n−m}` isomorphically onto `𝕂ⁿ` at `(x₀, 0)`.
pub fn build_sigma(frame: &SigmaFrame) -> Result<SigmaData> {
    let x = &frame.x;
    let n = x.nvars();
    let k = frame.codim();
    let nk = n + k;
    let product = product_presentation(x, k)?;
    let ring = product.ring().clone();
    let sigma: Vec<Poly> = (0..n)
        .map(|j| {
            let mut s = Poly::var(nk, j);
            for l in 0..k {
                s = s + Poly::var(nk, n + l).scale(frame.change_inv.get(j, l));
            }
            s
        })
        .collect();
    let pi: Vec<Poly> = (0..n).map(|j| Poly::var(nk, j)).collect();

    // property (1): σ(u, 0) = u
    let at_zero: Vec<Poly> = (0..nk).map(|v| if v < n { Poly::var(nk, v) } else { Poly::zero(nk) }).collect();
    for (j, s) in sigma.iter().enumerate() {
        if s.compose(&at_zero)? != pi[j] {
            return Err(Error::PropertyCheckFailed(format!("σ(u,0) ≠ u in coordinate {}", j + 1)));
        }
    }
    // property (2): Dσ on T(X) ⊕ 𝕂^k has full rank
    let base_point = frame.translation.extended(k);
    let d = jacobian_at(&sigma, nk, &base_point)?;
    let mut cols: Vec<Vec<urr_poly::Rat>> = tangent_space(x, &frame.translation)?
        .into_iter()
        .map(|t| {
            let mut v = t;
            v.extend(std::iter::repeat_with(urr_poly::rat::zero).take(k));
            v
        })
        .collect();
    for l in 0..k {
        let mut e = vec![urr_poly::rat::zero(); nk];
        e[n + l] = urr_poly::rat::one();
        cols.push(e);
    }
    if cols.len() != n || d.mul(&Matrix::from_cols(&cols, nk)).det().is_zero() {
        return Err(Error::PropertyCheckFailed("Dσ is not an isomorphism at the base point".into()));
    }

    let mut h_gens: Vec<Poly> = product.gens().to_vec();
    let x_gen_count = h_gens.len();
    for g in &frame.i_gens {
        let g = g.extend_vars(k);
        for l in 0..k {
            h_gens.push(&g * &Poly::var(nk, n + l));
        }
    }
    Ok(SigmaData { frame: frame.clone(), ring, sigma, product, h_gens, x_gen_count, pi, base_point })
}
