use super::*;
use crate::modalg::monomials;
use crate::registry::preset;
use crate::residual::CheckEntry;

fn all_pass(entries: &[CheckEntry]) {
    let bad: Vec<_> = entries.iter().filter(|e| !e.passed()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

fn smash_samples(ma: &ModuleAlgebra) -> Vec<SmashElem> {
    ma.spanning_set(1)
}

#[test]
fn balanced_tensor_is_well_defined() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let parent = bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 1).unwrap();
    let bd = xu_twist(parent, &s.twist).unwrap();
    let samples = smash_samples(&s.ma);
    let mut checked = 0;
    for m in samples.iter().step_by(2) {
        for n in samples.iter().step_by(3) {
            for mono in monomials(2, 1).iter().skip(1) {
                let a = s.ma.mono(mono);
                let lhs = bd.normalize(&[bd.total_mul(&bd.target(&a), m), n.clone()]);
                let rhs = bd.normalize(&[m.clone(), bd.total_mul(&bd.source(&a), n)]);
                assert_eq!(lhs, rhs, "m = {m:?}, n = {n:?}, a = {a:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn pure_right_legs_are_fixed_by_normalization() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let bd = bm_bialgebroid_twisted(&s.ma, &s.twist, 1).unwrap();
    let (ft, _) = shift_twist(&bd, &s.twist);
    let raws: Vec<Vec<SmashElem>> = ft
        .terms()
        .map(|(r, m)| vec![m.clone(), bd.pure(&r[0], &TruncSeries::one(2))])
        .collect();
    assert_eq!(bd.normalize_sum(&raws).unwrap(), ft);
}

#[test]
fn undeformed_axioms_hold() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let bd = bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 1).unwrap();
    all_pass(&bd.check_axioms(1));
}

#[test]
fn twisted_smash_product_axioms_hold() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let bd = bm_bialgebroid_twisted(&s.ma, &s.twist, 1).unwrap();
    all_pass(&bd.check_axioms(1));
    all_pass(&bd.check_explicit_forms(1));
}

#[test]
fn twisted_bialgebroid_axioms_hold() {
    let s = preset("heisenberg", Some(2)).unwrap();
    let parent = bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 1).unwrap();
    let bd = xu_twist(parent, &s.twist).unwrap();
    all_pass(&bd.check_axioms(1));
    all_pass(&bd.check_explicit_forms(1));
}

#[test]
fn theorem_holds_at_low_order() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let rep = verify_theorem(&s.ma, &s.twist, 1);
    assert!(rep.passed(), "{:#?}", rep.steps);
    assert_eq!(rep.steps.len(), 6);
}

#[test]
fn wrong_r_is_refused() {
    // the Moyal product is not commutative, so R = 1⊗1 cannot make it braided commutative
    let s = preset("heisenberg", Some(2)).unwrap();
    let err = bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 1).map(|_| ()).and_then(|_| {
        Bialgebroid::smash_product(&s.ma, Some(&s.twist), s.ma.bialg.one(), 1).map(|_| ())
    });
    assert!(matches!(err, Err(Error::NotBraidedCommutative(_))));
}

#[test]
fn shifted_r_keeps_hexagons_and_breaks_intertwining() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let bd = bm_bialgebroid_twisted(&s.ma, &s.twist, 1).unwrap();
    let r = r_matrix_from_twist(&s.ma.bialg, &s.twist);
    let rep = bd.check_qt_shifted(&r, 1).unwrap();
    all_pass(&rep.entries);
    assert!(rep.witness_found);

    let t = preset("trivial", Some(2)).unwrap();
    let bd = bm_bialgebroid_twisted(&t.ma, &t.twist, 1).unwrap();
    let r = r_matrix_from_twist(&t.ma.bialg, &t.twist);
    let rep = bd.check_qt_shifted(&r, 1).unwrap();
    all_pass(&rep.entries);
    assert!(!rep.witness_found);
}

#[test]
fn takeuchi_membership_is_enforced() {
    let s = preset("trivial", Some(2)).unwrap();
    let bd = bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 1).unwrap();
    let one = TruncSeries::one(2);
    let p0 = crate::ncpoly::word_of(s.ma.bialg.rs(), &["P0"]).unwrap();
    let x = TensorOverA::from_pure(2, 2, [(bd.one(), vec![p0.clone()])]);
    assert!(matches!(bd.mul_takeuchi(&x, &x), Err(Error::NotTakeuchi(_))));
    let d = bd.coproduct(&bd.pure(&p0, &one));
    assert!(bd.mul_takeuchi(&d, &d).is_ok());
}

#[test]
fn anchor_is_the_action_on_pure_elements() {
    let s = preset("igl2-abelian", Some(2)).unwrap();
    let bd = bm_bialgebroid_twisted(&s.ma, &s.twist, 1).unwrap();
    let rs = s.ma.bialg.rs();
    let p1 = crate::ncpoly::word_of(rs, &["P1"]).unwrap();
    let x1 = s.ma.coord(1);
    let got = bd.anchor_action(&bd.pure(&p1, &TruncSeries::one(2)), &x1).unwrap();
    assert_eq!(got, s.ma.one());
}
