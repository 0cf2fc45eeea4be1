//! Established identities at seeded random points inside their annuli.

use std::collections::BTreeMap;

use qmock::config::build;
use qmock::suite::{run_suite, Outcome};
use qmock_core::identities::{IdentityId, Verdict};

#[test]
fn all_established_identities_pass_at_twenty_points() {
    let kv: BTreeMap<String, String> =
        [("identities", "4.1, 5.1, 6.1, 7.1"), ("seed", "2024"), ("count", "20")]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
    let run = run_suite(&build(&kv).unwrap()).unwrap();
    assert_eq!(run.entries.len(), 80);
    for e in &run.entries {
        match &e.outcome {
            Outcome::Record(r) => {
                assert_eq!(r.verdict, Verdict::Pass, "{} at point {}: {:?} {:?}", e.identity, e.index, r.rel_residual, r.notes);
                assert!(r.rel_residual.as_ref().unwrap().to_f64() < 1e-30);
            }
            Outcome::Rejection(why) => panic!("{} at point {} rejected: {why}", e.identity, e.index),
        }
    }
    assert_eq!(run.exit_code(), 0);

    // 7.1 covers the beta = 0 degeneration and nonzero beta
    let betas: Vec<f64> = run
        .records()
        .filter(|r| r.identity == IdentityId::I7_1)
        .map(|r| r.inputs.iter().find(|(k, _)| k == "beta").unwrap().1.re.to_f64())
        .collect();
    assert!(betas.iter().any(|b| *b == 0.0));
    assert!(betas.iter().any(|b| *b > 0.0 && *b < 0.9));
}
