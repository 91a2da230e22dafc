use std::sync::OnceLock;

use proptest::prelude::*;

use twistoid::hopf::{delta_on_leg, twisted_coproduct};
use twistoid::modalg::monomials;
use twistoid::ncpoly::{normal_form, normal_form_by_rewriting, rewrite_measure, rewrite_step, Strategy as Rewrite, Word};
use twistoid::{preset, GaussRational, Gen, NCPoly, PolyCoord, Setup, SmashElem, TruncSeries};

const N: usize = 3;

fn igl2() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| preset("igl2-abelian", Some(N)).unwrap())
}

fn jordanian() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| preset("pw-jordanian", Some(N)).unwrap())
}

fn scalar() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6).prop_map(|(a, b, c)| {
        &GaussRational::from_frac(a, b) + &(&GaussRational::i() * &GaussRational::from_int(c))
    })
}

fn series() -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(scalar(), N + 1).prop_map(|c| TruncSeries::from_coeffs(c, N))
}

fn word(n_gens: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..n_gens, 0..=max_len).prop_map(|v| v.into_iter().map(|i| Gen::new(0, i)).collect())
}

fn poly(n_gens: u8) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(n_gens, 3), series()), 0..4).prop_map(|ts| {
        let rs = igl2().ma.bialg.rs();
        let mut p = NCPoly::zero(N);
        for (w, c) in ts {
            p.add_assign(&normal_form(&w, rs, N).unwrap().scale(&c));
        }
        p
    })
}

fn smash(s: &'static Setup) -> impl Strategy<Value = SmashElem> {
    let span = s.ma.spanning_set(2);
    prop::collection::vec((0..span.len(), scalar()), 1..3).prop_map(move |picks| {
        let mut u = SmashElem::zero(N);
        for (k, c) in picks {
            u.add_assign(&span[k].scale_scalar(&c));
        }
        u
    })
}

fn mono_poly(s: &'static Setup) -> impl Strategy<Value = PolyCoord> {
    let monos = monomials(s.ma.dim(), 2);
    (0..monos.len(), scalar()).prop_map(move |(k, c)| s.ma.mono(&monos[k]).scale_scalar(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_form_a_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn truncation_commutes_with_products(a in series(), b in series(), k in 0usize..=N) {
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
    }

    #[test]
    fn unit_series_invert(a in series()) {
        let one = TruncSeries::one(N);
        let u = &one + &a.shift_up(1).truncate(N);
        let inv = u.invert().unwrap();
        prop_assert_eq!(&u * &inv, one);
    }

    #[test]
    fn scalars_round_trip_through_text(a in scalar()) {
        let back: GaussRational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rewriting_is_confluent(w in word(6, 5)) {
        let rs = igl2().ma.bialg.rs();
        let l = normal_form_by_rewriting(&w, rs, Rewrite::Leftmost, N).unwrap();
        let r = normal_form_by_rewriting(&w, rs, Rewrite::Rightmost, N).unwrap();
        prop_assert_eq!(&l, &r);
        prop_assert_eq!(l, normal_form(&w, rs, N).unwrap());
    }

    #[test]
    fn rewrite_steps_decrease_the_measure(w in word(6, 6)) {
        let rs = igl2().ma.bialg.rs();
        if let Some(succ) = rewrite_step(&w, rs, Rewrite::Leftmost) {
            for (nw, _) in succ {
                prop_assert!(rewrite_measure(&nw) < rewrite_measure(&w));
            }
        }
    }

    #[test]
    fn enveloping_algebra_is_associative(a in poly(6), b in poly(6), c in poly(6)) {
        let rs = igl2().ma.bialg.rs();
        let ab_c = a.mul(&b, rs).unwrap().mul(&c, rs).unwrap();
        let a_bc = a.mul(&b.mul(&c, rs).unwrap(), rs).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn different_legs_commute(a in poly(6), b in poly(6)) {
        let rs = igl2().ma.bialg.rs();
        let a1 = a.leg_embed(1, 2).unwrap();
        let b2 = b.leg_embed(2, 2).unwrap();
        prop_assert_eq!(a1.mul(&b2, rs).unwrap(), b2.mul(&a1, rs).unwrap());
    }

    #[test]
    fn coproduct_is_coassociative_and_multiplicative(a in poly(6), b in poly(6)) {
        let bialg = &igl2().ma.bialg;
        let rs = bialg.rs();
        let da = bialg.coproduct(&a).unwrap();
        prop_assert_eq!(delta_on_leg(&da, 1), delta_on_leg(&da, 2));
        let db = bialg.coproduct(&b).unwrap();
        prop_assert_eq!(bialg.coproduct(&a.mul(&b, rs).unwrap()).unwrap(), da.mul(&db, rs).unwrap());
    }

    #[test]
    fn twisted_coproduct_is_multiplicative(a in poly(6), b in poly(6)) {
        let s = igl2();
        let rs = s.ma.bialg.rs();
        let lhs = twisted_coproduct(&s.ma.bialg, &s.twist, &a.mul(&b, rs).unwrap()).unwrap();
        let rhs = twisted_coproduct(&s.ma.bialg, &s.twist, &a).unwrap()
            .mul(&twisted_coproduct(&s.ma.bialg, &s.twist, &b).unwrap(), rs).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_product_is_associative(a in mono_poly(jordanian()), b in mono_poly(jordanian()), c in mono_poly(jordanian())) {
        let s = jordanian();
        let f = Some(&s.twist);
        prop_assert_eq!(s.ma.star(f, &s.ma.star(f, &a, &b), &c), s.ma.star(f, &a, &s.ma.star(f, &b, &c)));
    }

    #[test]
    fn phi_is_bijective(u in smash(igl2())) {
        let s = igl2();
        prop_assert_eq!(s.ma.phi_inv(&s.twist, &s.ma.phi(&s.twist, &u)), u.clone());
        prop_assert_eq!(s.ma.phi(&s.twist, &s.ma.phi_inv(&s.twist, &u)), u);
    }

    #[test]
    fn phi_is_multiplicative(u in smash(jordanian()), v in smash(jordanian())) {
        let s = jordanian();
        let f = &s.twist;
        let lhs = s.ma.phi(f, &s.ma.smash_mul(Some(f), &u, &v));
        let rhs = s.ma.smash_mul(None, &s.ma.phi(f, &u), &s.ma.phi(f, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_respects_products(a in mono_poly(igl2()), b in mono_poly(igl2()), w in word(6, 2)) {
        // L⊳(ab) = (L₍₁₎⊳a)(L₍₂₎⊳b) for the primitive coproduct
        let s = igl2();
        let l = normal_form(&w, s.ma.bialg.rs(), N).unwrap();
        let lhs = s.ma.act(&l, &a.mul(&b)).unwrap();
        let mut rhs = PolyCoord::zero(N);
        for (parts, c) in s.ma.bialg.coproduct(&l).unwrap().sweedler(2) {
            rhs.add_assign(&s.ma.rep.act_word(&parts[0], &a).mul(&s.ma.rep.act_word(&parts[1], &b)).scale(&c));
        }
        prop_assert_eq!(lhs, rhs);
    }
}
