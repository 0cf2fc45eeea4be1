//! Values computed independently with mpmath at 70 digits.

mod common;

use common::*;
use qmock_core::mocktheta::{eval_classical_with, eval_complete_parts, eval_generalized, Family, Psi3Denominator};
use qmock_core::qcore::{qpoch_finite, qpoch_infinite};

const TOL: f64 = 1e-45;

#[test]
fn pochhammer_values() {
    let v = qpoch_infinite(&c("0.3"), &c("0.5"), 1, &tight()).unwrap();
    assert!(rel(&v.value, &c("0.510117826633987571832272217680627945275555432444265565783751")) < TOL);
    let a = cc("0.2", "0.1");
    let v7 = qpoch_finite(&a, &c("0.4"), 1, 7).unwrap();
    assert!(rel(&v7, &cc("0.6906130305289671180688556032", "-0.1362775707012547442926157824")) < TOL);
    let vm3 = qpoch_finite(&a, &c("0.4"), 1, -3).unwrap();
    let expect = cc(
        "0.21015702143313520106875254119150419175589072392495498460764",
        "-0.985358864644039574822358612945071540591298960289647427830161",
    );
    assert!(rel(&vm3, &expect) < TOL);
}

#[test]
fn classical_functions_at_three_tenths() {
    let cases = [
        (Family::Psi0, Psi3Denominator::AsPrinted, "1.06355918995325309847677188674724250625879034777219641592869"),
        (Family::Psi1, Psi3Denominator::AsPrinted, "0.774797150124668406720296829040232831271438595078303074039851"),
        (Family::Psi2, Psi3Denominator::AsPrinted, "1.00439742876660291451118573289345024328755652839502830467909"),
        (Family::Psi3, Psi3Denominator::AsPrinted, "1.82244120515923761032047663006322834105819395504192472881329"),
        (Family::Psi3, Psi3Denominator::NegQ, "1.36891264715637772171011975771420354931096795944064298028823"),
        (Family::Phi0, Psi3Denominator::AsPrinted, "1.92571158328604249264399313246181837936257561283528240489937"),
        (Family::Phi1, Psi3Denominator::AsPrinted, "1.61390410883706922639136400100292280814783889863676798852843"),
    ];
    for (f, d, expect) in cases {
        let v = eval_classical_with(f, &c("0.3"), d, &tight()).unwrap();
        assert!(rel(&v.value, &c(expect)) < TOL, "{} {}: {}", f.name(), d.name(), v.value);
    }
}

#[test]
fn generalized_functions_at_a_complex_base() {
    let mut p = point("0", "0.4", "0.2", "0.5");
    p.q = cc("0.3", "0.1");
    let cases = [
        (Family::Psi0, "1.53423928469730843267267997138596259304870835529495562737366", "0.0545614367229629412014437365366310360046802971810215652220749"),
        (Family::Psi1, "0.91497630254727650148635253108906167479626588108889850427227", "0.145290970651792405926346293603255255482730556949335888392253"),
        (Family::Psi2, "1.35623970485977543410290328814903160683404607072116015358501", "0.0582966339781190766588261505006706107062816572646283220300482"),
        (Family::Psi3, "1.46123598802068781758094129465976333805875843671058619777594", "0.0910780316081590108220285813679897417759504371870749396298177"),
        (Family::Phi0, "2.38549424138042751878476213158720883095505646756295814896759", "-0.153012510192451471942981585702016927823098357771229583821222"),
        (Family::Phi1, "1.71115149013125124301269771321229724894636229512739708802427", "0.0327934554248315579627645677172858565570819784649470478710078"),
    ];
    for (f, re, im) in cases {
        let v = eval_generalized(f, &p, &tight()).unwrap();
        assert!(rel(&v.value, &cc(re, im)) < TOL, "{}: {}", f.name(), v.value);
    }
}

#[test]
fn negative_halves_of_complete_forms() {
    let p = point("0.35", "0.7", "0.1", "1");
    let cases = [
        (Family::Psi0, "7.72787522963759343278058740281481710746375645430161628450855"),
        (Family::Psi1, "5.17601068021284206980980188624943674100615112262774627941516"),
        (Family::Psi3, "64.2025744284596969032077814585420140920667837072641724696766"),
        (Family::Phi0, "0.236865389155996749594064420572970324226312084160715589174733"),
        (Family::Phi1, "0.018905712902491193551730722294991730441527325187365582473106"),
    ];
    for (f, expect) in cases {
        let b = eval_complete_parts(f, &p, &tight()).unwrap();
        assert!(rel(&b.negative.value, &c(expect)) < TOL, "{}: {}", f.name(), b.negative.value);
    }
}
