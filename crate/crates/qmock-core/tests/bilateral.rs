//! The `n >= 0` half of every complete form is the generalized function.

mod common;

use common::*;
use proptest::prelude::*;
use qmock_core::mocktheta::{eval_complete_parts, eval_generalized, Family};
use qmock_core::qcore::SeriesStatus;

fn valid_point() -> impl Strategy<Value = (f64, f64, u32, i32)> {
    (150u32..500, 300u32..900, 0u32..300, -2i32..3).prop_map(|(q, z, t, a)| (q as f64 / 1e3, z as f64 / 1e3, t, a))
}

/// Limit ratio of successive generalized terms; the `phi` families carry no
/// quadratic power of `q`, so they converge only when this is below 1.
fn limit_ratio(f: Family, q: f64, z: f64, alpha: i32) -> f64 {
    match f {
        Family::Phi0 | Family::Phi1 => z * z * q.powi(1 - 2 * alpha),
        _ => 0.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn positive_half_is_generalized((q, z, t, a) in valid_point()) {
        let p = point(&q.to_string(), &z.to_string(), &format!("{t}e-3"), &a.to_string());
        for f in Family::ALL {
            let g = eval_generalized(f, &p, &tight()).unwrap();
            let lim = limit_ratio(f, q, z, a);
            if lim > 1.0 {
                prop_assert_ne!(g.status, SeriesStatus::Converged, "{} diverges", f.name());
                continue;
            }
            if lim > 0.9 {
                continue;
            }
            let parts = match eval_complete_parts(f, &p, &tight()) {
                Ok(b) => b,
                Err(e) => { prop_assert!(e.is_pole(), "{}: {}", f.name(), e); continue; }
            };
            prop_assert_eq!(g.status, SeriesStatus::Converged);
            prop_assert!(rel(&parts.positive.value, &g.value) <= 1e-40, "{}", f.name());
        }
    }
}

#[test]
fn total_is_the_sum_of_the_halves() {
    let p = point("0.35", "0.7", "0.1", "1");
    for f in Family::ALL {
        let b = eval_complete_parts(f, &p, &tight()).unwrap();
        let sum = &b.positive.value + &b.negative.value;
        assert!(rel(&sum, &b.total.value) <= 1e-45, "{}", f.name());
    }
}
