use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use specrewriter_core::essence::{check_scopes, parse_spec, print_spec, struct_eq};
use specrewriter_core::graph::{decode, encode};
use specrewriter_core::testgen::{check_pair, random_host, random_rule, random_spec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_specs_round_trip(seed: u64) {
        let spec = random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(check_scopes(&spec).is_ok(), "{:?}\n{}", check_scopes(&spec), print_spec(&spec));
        let text = print_spec(&spec);
        let back = parse_spec(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(struct_eq(&spec, &back, false), "{}", text);
        let decoded = decode(&encode(&spec, "spec")).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(struct_eq(&spec, &decoded, false), "{}", text);
    }

    #[test]
    fn random_rules_obey_engine_invariants(seed: u64, plant: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rule = random_rule(&mut rng);
        let host = random_host(&mut rng, plant.then_some(&rule));
        check_pair(&rule, &host, 200).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn planted_hosts_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut matched = 0;
    for _ in 0..100 {
        let rule = random_rule(&mut rng);
        let host = random_host(&mut rng, Some(&rule));
        if check_pair(&rule, &host, 200).unwrap().matches > 0 {
            matched += 1;
        }
    }
    // Planting makes matches common, though extra edges may break dangling.
    assert!(matched > 30, "{matched}");
}
