//! Exact engine for regular germ retractions of nonsingular varieties.
//!
//! Given a variety `X ⊂ 𝕂ⁿ`, a rational map `F` whose restriction to `X` is
//! regular at a point `x₀`, the pipeline produces a germ `G` at `x₀`,
//! regular on all of `𝕂ⁿ`, with `G|X = F|X`. Every claim along the way is
//! backed by a cofactor certificate that [`check_certificate`] replays with
//! plain polynomial arithmetic.
//!
//! The arithmetic layer is re-exported from `urr-poly`.
//!
//! ```
//! use urr_core::*;
//!
//! # fn main() -> urr_core::Result<()> {
//! let r = RingCtx::new(&["y1", "y2"])?;
//! let p = |s: &str| parse_poly(s, &r);
//! let x = VarietyPresentation::new(&r, vec![p("y1^2 - 2*y1 + y2^2")?], 1, true)?;
//! let t = RingCtx::new(&["t"])?;
//! let i = RationalMap::new(vec![(p("y2")?, p("y1")?)], VarietyPresentation::affine_space(&t))?;
//! let q = |s: &str| parse_poly(s, &t);
//! let r_map = RationalMap::new(
//!     vec![(q("2")?, q("1 + t^2")?), (q("2*t")?, q("1 + t^2")?)],
//!     x.clone(),
//! )?;
//! let res = uniformize(&x, &i, &r_map, None, &Point::origin(2), &PipelineOptions::default())?;
//! assert!(derivative_is_tangent_projection(&x, &res.g)?);
//! # Ok(())
//! # }
//! ```

pub mod denom;
pub mod error;
pub mod generic;
pub mod groebner;
pub mod ideal;
pub mod interface;
pub mod limits;
pub mod pipeline;
pub mod lift;
pub mod sigma;
pub mod variety;

pub use urr_poly::*;
pub use urr_poly as poly;

pub use error::{Error, Result};
pub use groebner::{
    member, member_with, mora_weak_nf, s_polynomial, std_basis, std_basis_with, BasisOptions, Membership,
    MembershipOracle, StdBasis, WeakNormalForm,
};
pub use limits::Limits;
pub use ideal::{
    eliminate, finite_over, intersect, krull_dim, product_ideal, radical_member, saturate, Ideal, RadicalMembership,
};
pub use variety::{
    germs_equal_on_x, jacobian_at, jacobian_rank_at, maps_equal_on_x, regular_on_x_at, smooth_at, tangent_space,
    LocalFrac, MapEquality, RationalMap, Regularity, VarietyPresentation,
};
pub use generic::{find_frame, sample_change, verify_frame, GenericityReport, SigmaFrame};
pub use sigma::{build_sigma, product_presentation, SigmaData};
pub use lift::{solve_psi, JetCandidate, LiftContext, LiftLimits, LiftResult};
pub use denom::{compose_regular, descend_division, split_difference, DivisionPremise, RegularComposition, SplitDecomposition};
pub use pipeline::{
    derivative_is_tangent_projection, localize_map, uniformize, GermMap, LabeledWitness, PipelineOptions, Provenance,
    RetractionResult,
};
