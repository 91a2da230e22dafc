use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use twistoid::algebroid::{bm_bialgebroid, verify_theorem, xu_twist};
use twistoid::hopf::check_cocycle;
use twistoid::ncpoly::{normal_form, Gen, Word};
use twistoid::{preset, TruncSeries};

fn kernels(c: &mut Criterion) {
    let s = preset("igl2-abelian", Some(3)).unwrap();
    let j = preset("pw-jordanian", Some(3)).unwrap();
    let rs = s.ma.bialg.rs();

    let a = TruncSeries::from_coeffs((1..=4).map(|k| twistoid::GaussRational::from_frac(k, k + 1)).collect(), 3);
    c.bench_function("series product", |b| b.iter(|| black_box(&a) * black_box(&a)));

    let w: Word = [5u8, 3, 4, 0, 2, 1].iter().map(|&i| Gen::new(0, i)).collect();
    c.bench_function("PBW normal form, length 6", |b| b.iter(|| normal_form(black_box(&w), rs, 3).unwrap()));

    c.bench_function("cocycle check, jordanian N=3", |b| b.iter(|| check_cocycle(&j.ma.bialg, &j.twist)));

    let x = s.ma.mono(&[2, 1]);
    let y = s.ma.mono(&[1, 2]);
    c.bench_function("star product, degree 3 monomials", |b| b.iter(|| s.ma.star(Some(&s.twist), &x, &y)));

    let span = s.ma.spanning_set(2);
    let (u, v) = (&span[20], &span[33]);
    c.bench_function("twisted smash product", |b| b.iter(|| s.ma.smash_mul(Some(&s.twist), u, v)));
    c.bench_function("φ", |b| b.iter(|| s.ma.phi(&s.twist, u)));

    let xu = xu_twist(bm_bialgebroid(&s.ma, &s.ma.bialg.one(), 2).unwrap(), &s.twist).unwrap();
    c.bench_function("twisted bialgebroid coproduct", |b| b.iter(|| xu.coproduct(u)));

    let mut g = c.benchmark_group("end to end");
    g.sample_size(10);
    g.bench_function("isomorphism check, igl2-abelian N=3 d=1", |b| b.iter(|| verify_theorem(&s.ma, &s.twist, 1)));
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
