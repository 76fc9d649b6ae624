//! Exact multivariate polynomials over ℚ.
//!
//! This crate is the arithmetic floor of the workspace: arbitrary-precision
//! rationals, sparse polynomials, monomial orders (global, local and block
//! mixtures), a small expression language, dense linear algebra over ℚ and
//! the cofactor certificate type together with its checker.
//!
//! The checker lives here on purpose: it depends on nothing but polynomial
//! arithmetic, so no standard-basis code can be involved in replaying a
//! certificate.

mod cert;
mod error;
pub mod linalg;
mod monomial;
mod order;
mod parse;
mod point;
mod poly;
pub mod rat;
mod ring;

pub use cert::{check_certificate, Cert, Witness};
pub use error::PolyError;
pub use linalg::Matrix;
pub use monomial::Monomial;
pub use order::{Block, BlockKind, OrderSpec};
pub use parse::{parse_poly, parse_poly_with_cap};
pub use point::Point;
pub use poly::{clear_fraction_composition, Poly, DEFAULT_DEGREE_CAP};
pub use rat::Rat;
pub use ring::RingCtx;

pub type Result<T> = std::result::Result<T, PolyError>;
