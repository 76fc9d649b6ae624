use urr_poly::DEFAULT_DEGREE_CAP;

/// Resource caps shared by the engine. Exceeding any of them yields
/// `LimitExceeded` rather than unbounded work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub degree_cap: u32,
    pub max_pairs: usize,
    pub max_basis_size: usize,
    pub max_reduction_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: DEFAULT_DEGREE_CAP,
            max_pairs: 50_000,
            max_basis_size: 5_000,
            max_reduction_steps: 5_000_000,
        }
    }
}
