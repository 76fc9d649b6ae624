//! Fixtures shared by the benchmarks.

use urr_core::{parse_poly, Ideal, Poly, RingCtx, VarietyPresentation};

pub fn ring(names: &[&str]) -> RingCtx {
    RingCtx::new(names).expect("valid names")
}

pub fn polys(r: &RingCtx, texts: &[&str]) -> Vec<Poly> {
    texts.iter().map(|t| parse_poly(t, r).expect("valid polynomial")).collect()
}

/// Cyclic 4-roots, a standard Gröbner basis workload.
pub fn cyclic4() -> (RingCtx, Vec<Poly>) {
    let r = ring(&["a", "b", "c", "d"]);
    let g = polys(
        &r,
        &["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"],
    );
    (r, g)
}

/// The circle through the origin and the ideal of the common denominator of
/// the stereographic round trip.
pub fn circle() -> (VarietyPresentation, Ideal) {
    let r = ring(&["y1", "y2"]);
    let x = VarietyPresentation::new(&r, polys(&r, &["y1^2 - 2*y1 + y2^2"]), 1, true).expect("curve");
    let i = Ideal::new(&r, polys(&r, &["y1^2 + y2^2"])).expect("ideal");
    (x, i)
}
