//! Problem files, result bundles and the task runner behind the CLI.
//!
//! The bundle checker only parses polynomials and replays cofactor
//! identities; it never computes a standard basis.

pub mod audit;
pub mod bundle;
pub mod problem;
pub mod run;

pub use audit::{mutate_bundle_cert, mutate_cert};
pub use bundle::{
    check_bundle, check_bundle_cert, parse_bundle, serialize_bundle, BundleCert, CheckReport, ResultBundle, Value,
    BUNDLE_VERSION,
};
pub use problem::{Problem, Task};
pub use run::{run_problem, RunOptions};
