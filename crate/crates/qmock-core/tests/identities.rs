mod common;

use common::*;
use qmock_core::contfrac::{check_cf_representation, st_prefactors};
use qmock_core::hyper::Param;
use qmock_core::identities::{
    bilateral_generic, check, check_general_5_1, check_general_6_1, check_slater_4_1, phi1_generic, CheckOptions,
    IdentityId, Trust, Variant, Verdict,
};
use qmock_core::qcore::SeriesStatus;

const EXPANSIONS: [IdentityId; 8] = [
    IdentityId::I4_2,
    IdentityId::I4_3,
    IdentityId::I4_4,
    IdentityId::I4_5,
    IdentityId::I5_2,
    IdentityId::I5_3,
    IdentityId::I6_2,
    IdentityId::I6_3,
];

fn opts() -> CheckOptions {
    CheckOptions { policy: tight(), assert_tol: 1e-30 }
}

#[test]
fn established_hold_at_a_complex_point() {
    let mut p = point("0", "0.5", "0", "1");
    p.q = cc("0.3", "0.1");
    p.c1 = cc("0.35", "0.05");
    p.c2 = c("0.45");
    let a = [Param::Finite(c("0.6")), Param::Finite(cc("0.8", "-0.1"))];
    let b = [c("0.1"), cc("0.2", "0.05")];
    for r in [
        check_slater_4_1(&p, &a, &b, &opts()).unwrap(),
        check_general_5_1(&p, &a, &b, &opts()).unwrap(),
        check_general_6_1(&p, &a, &b, &opts()).unwrap(),
    ] {
        assert_eq!(r.verdict, Verdict::Pass, "{} {:?}", r.identity, r.rel_residual);
        assert_eq!(r.identity.trust(), Trust::Established);
    }
}

#[test]
fn established_ids_are_not_specializations() {
    let e = check(IdentityId::I4_1, Variant::Derived, &point("0.3", "0.5", "0", "1"), &opts()).unwrap_err();
    assert!(e.is_usage());
}

#[test]
fn derived_variants_agree_with_the_generic_expansions() {
    for (q, z, alpha) in [("0.3", "0.5", "1"), ("0.2", "0.4", "0"), ("0.4", "0.6", "-1")] {
        let p = point(q, z, "0", alpha);
        for id in EXPANSIONS {
            let r = check(id, Variant::Derived, &p, &opts()).unwrap();
            assert_eq!(r.verdict, Verdict::Report, "{id}");
            assert!(r.rel_residual.as_ref().unwrap().to_f64() < 1e-40, "{id} at {q} {z} {alpha}: {:?}", r.rel_residual);
            let generic = if matches!(id, IdentityId::I4_2 | IdentityId::I4_3 | IdentityId::I4_4 | IdentityId::I4_5) {
                bilateral_generic(id, &p, &tight())
            } else {
                phi1_generic(id, &p, &tight())
            }
            .unwrap();
            assert!(rel(&generic.lhs.value, &generic.rhs.value) < 1e-40, "{id} generic");
            assert!(rel(r.lhs.as_ref().unwrap(), &generic.lhs.value) < 1e-40, "{id} lhs");
        }
    }
}

#[test]
fn printed_variants_are_reported_not_asserted() {
    let p = point("0.3", "0.5", "0", "1");
    for id in EXPANSIONS {
        let r = check(id, Variant::Printed, &p, &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Report, "{id}");
        assert!(r.rel_residual.as_ref().unwrap().to_f64() > 1e-3, "{id}");
    }
}

#[test]
fn nonzero_t_is_replaced_with_a_note() {
    let r = check(IdentityId::I5_2, Variant::Derived, &point("0.3", "0.5", "0.2", "1"), &opts()).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("replaced by 0")), "{:?}", r.notes);
    assert!(r.point.t.is_zero());
}

#[test]
fn equal_c_is_a_pole() {
    let mut p = point("0.3", "0.5", "0", "1");
    p.c2 = p.c1.clone();
    let e = check(IdentityId::I4_2, Variant::Derived, &p, &opts()).unwrap_err();
    assert!(e.is_pole(), "{e}");
}

#[test]
fn divergent_side_is_never_reported_as_converged() {
    // |z^2 q^(1-2 alpha)| = 0.25 / 0.027 > 1: the printed 6.2 series diverges
    let r = check(IdentityId::I6_2, Variant::Printed, &point("0.3", "0.5", "0", "2"), &opts()).unwrap();
    assert_eq!(r.verdict, Verdict::Singular);
    assert!(r.lhs_status == SeriesStatus::Truncated || r.rhs_status == SeriesStatus::Truncated);
}

#[test]
fn continued_fraction_records() {
    let p = point("0.3", "0.5", "0", "1");
    for id in [IdentityId::I7_4, IdentityId::I7_5] {
        for v in Variant::BOTH {
            let r = check_cf_representation(id, v, &p, &opts()).unwrap();
            assert_eq!(r.verdict, Verdict::Report);
            assert_eq!(r.variant, Some(v));
            for key in ["sigma2_over_sigma1", "cf_value", "decomposition", "decomposition_rel_residual"] {
                assert!(r.extras.iter().any(|(k, _)| k == key), "{id} missing {key}");
            }
        }
    }
    let e = check_cf_representation(IdentityId::I5_2, Variant::Derived, &p, &opts()).unwrap_err();
    assert!(e.is_usage());
}

#[test]
fn st_prefactors_guard_small_z() {
    let st = st_prefactors(&point("0.3", "0.5", "0", "1"), &tight()).unwrap();
    for v in [&st.s, &st.t, &st.s1, &st.t1] {
        assert!(!v.is_zero() && v.log2_abs().is_finite());
    }
    assert!(st_prefactors(&point("0.3", "1e-7", "0", "1"), &tight()).unwrap_err().is_pole());
}
