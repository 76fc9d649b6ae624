use std::path::PathBuf;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use urr_core::interface::{
    check_bundle, check_bundle_cert, mutate_bundle_cert, parse_bundle, run_problem, serialize_bundle, Problem, RunOptions,
    Task,
};
use urr_core::*;

fn problem(name: &str) -> Problem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name);
    Problem::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn unit_circle_retraction_for_any_seed(seed in any::<u64>()) {
        let pr = problem("unit_circle.problem");
        let x = pr.variety("X").unwrap();
        let x0 = pr.point.clone().unwrap();
        let opts = PipelineOptions { seed, ..PipelineOptions::default() };
        let res = uniformize(&x, &pr.map("i").unwrap(), &pr.map("r").unwrap(), None, &x0, &opts).unwrap();
        prop_assert_eq!(res.g.value().unwrap(), x0.coords().to_vec());
        prop_assert!(derivative_is_tangent_projection(&x, &res.g).unwrap());
        prop_assert!(res.g.provenance.certificates.iter().all(|c| c.witness.check()));
        prop_assert!(res.identity.iter().all(|w| w.check()));
    }

    #[test]
    fn bundles_round_trip_and_replay(seed in 0u64..1000) {
        let pr = problem("circle.problem");
        let opts = RunOptions { seed: Some(seed), ..RunOptions::default() };
        let b = run_problem(&pr, Task::Retract, &opts).unwrap();
        let text = serialize_bundle(&b);
        let back = parse_bundle(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(serialize_bundle(&back), text.clone());
        prop_assert!(check_bundle(&back).all_valid());
        prop_assert_eq!(serialize_bundle(&run_problem(&pr, Task::Retract, &opts).unwrap()), text);
    }

    #[test]
    fn mutated_certificates_are_rejected(seed in any::<u64>()) {
        let pr = problem("line_uniformize.problem");
        let b = run_problem(&pr, Task::Uniformize, &RunOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in &b.certificates {
            prop_assert!(check_bundle_cert(c));
            prop_assert!(!check_bundle_cert(&mutate_bundle_cert(c, &mut rng).unwrap()));
        }
    }
}
