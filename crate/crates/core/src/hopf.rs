//! Bialgebra layer on `U(g)[[h]]`: primitive coproduct and counit, Drinfeld
//! twists, twisted coproducts and R-matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ncpoly::{Gen, LegWord, NCPoly, RewriteSystem, Sort, Word};
use crate::residual::{entry_for, CheckEntry};
use crate::scalars::{GaussRational, TruncSeries};

/// An enveloping algebra with its primitive bialgebra structure at a fixed
/// truncation order.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    rs: Arc<RewriteSystem>,
    order: usize,
}

impl Bialgebra {
    /// Accepts symmetry and momentum generators only; coordinates belong to
    /// the module algebra.
    pub fn new(rs: Arc<RewriteSystem>, order: usize) -> Result<Self> {
        if let Some(k) = (0..rs.len()).find(|&k| rs.sort(k as u8) == Sort::Coordinate) {
            return Err(Error::InvalidRewriteSystem(format!(
                "coordinate `{}` cannot be a bialgebra generator",
                rs.name(k as u8)
            )));
        }
        Ok(Bialgebra { rs, order })
    }

    pub fn rs(&self) -> &RewriteSystem {
        &self.rs
    }

    pub fn rs_arc(&self) -> &Arc<RewriteSystem> {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.order)
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly> {
        Ok(NCPoly::generator(self.rs.parse_gen(name)?, self.order))
    }

    pub fn mul(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
        p.mul(q, &self.rs)
    }

    /// Unit of the `n`-fold tensor power (the empty word).
    pub fn unit(&self) -> NCPoly {
        self.one()
    }

    /// The primitive coproduct, extended multiplicatively.
    pub fn coproduct(&self, p: &NCPoly) -> Result<NCPoly> {
        if !p.is_single_leg() {
            return Err(Error::NotSingleLeg);
        }
        self.check(p)?;
        Ok(delta_on_leg(p, 0))
    }

    pub fn counit(&self, p: &NCPoly) -> Result<TruncSeries> {
        if !p.is_single_leg() {
            return Err(Error::NotSingleLeg);
        }
        self.check(p)?;
        Ok(p.coeff(&[]))
    }

    fn check(&self, p: &NCPoly) -> Result<()> {
        if p.terms().all(|(w, _)| w.iter().all(|g| (g.idx as usize) < self.rs.len())) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for j in 0..k {
        r = r * (n - j) as i64 / (j + 1) as i64;
    }
    r
}

/// `Δ(w) = Σ w_S ⊗ w_{S^c}` over order-preserving splittings, grouped by runs.
pub fn coproduct_word(w: &[u8]) -> Vec<(LegWord, LegWord, GaussRational)> {
    let mut runs: Vec<(u8, usize)> = Vec::new();
    for &g in w {
        match runs.last_mut() {
            Some((h, m)) if *h == g => *m += 1,
            _ => runs.push((g, 1)),
        }
    }
    let mut acc: Vec<(LegWord, LegWord, i64)> = vec![(LegWord::new(), LegWord::new(), 1)];
    for (g, m) in runs {
        let mut next = Vec::with_capacity(acc.len() * (m + 1));
        for (l, r, c) in &acc {
            for j in 0..=m {
                let mut nl = l.clone();
                let mut nr = r.clone();
                nl.extend(std::iter::repeat_n(g, j));
                nr.extend(std::iter::repeat_n(g, m - j));
                next.push((nl, nr, c * binomial(m, j)));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(l, r, c)| (l, r, GaussRational::from_int(c))).collect()
}

/// Applies the primitive coproduct to tensor leg `leg` (leg 0 meaning a
/// single-leg element, which becomes a two-leg element on legs 1, 2). Legs
/// above `leg` move up by one.
pub fn delta_on_leg(p: &NCPoly, leg: u8) -> NCPoly {
    let (left_leg, right_leg) = if leg == 0 { (1, 2) } else { (leg, leg + 1) };
    let mut out = NCPoly::zero(p.order());
    for (w, c) in p.terms() {
        let part: LegWord = w.iter().filter(|g| g.leg == leg).map(|g| g.idx).collect();
        for (l, r, k) in coproduct_word(&part) {
            let mut nw = Word::with_capacity(w.len());
            nw.extend(w.iter().filter(|g| g.leg < leg).copied());
            nw.extend(l.iter().map(|&i| Gen::new(left_leg, i)));
            nw.extend(r.iter().map(|&i| Gen::new(right_leg, i)));
            nw.extend(w.iter().filter(|g| g.leg > leg).map(|g| Gen::new(g.leg + 1, g.idx)));
            out.add_term(nw, c.scale(&k));
        }
    }
    out
}

/// Applies the counit to leg `leg` of an `n_legs` element. Legs above move
/// down; a result with one remaining leg is returned as a single-leg element.
pub fn counit_on_leg(p: &NCPoly, leg: u8, n_legs: u8) -> NCPoly {
    let mut out = NCPoly::zero(p.order());
    let single = n_legs == 2;
    for (w, c) in p.terms() {
        if w.iter().any(|g| g.leg == leg) {
            continue;
        }
        let nw: Word = w
            .iter()
            .map(|g| {
                let l = if g.leg > leg { g.leg - 1 } else { g.leg };
                Gen::new(if single { 0 } else { l }, g.idx)
            })
            .collect();
        out.add_term(nw, c.clone());
    }
    out
}

/// Places a two-leg element on legs `(a, b)` of a larger tensor power.
pub fn place(p: &NCPoly, a: u8, b: u8) -> NCPoly {
    let mut map = [0u8; 3];
    map[1] = a;
    map[2] = b;
    p.relabel_legs(&map).expect("distinct legs")
}

/// Leg swap `X₁⊗X₂ ↦ X₂⊗X₁`.
pub fn flip(p: &NCPoly) -> NCPoly {
    place(p, 2, 1)
}

/// A normalized two-cocycle twist with its inverse.
pub struct Twist {
    exponent: Option<NCPoly>,
    f: NCPoly,
    f_inv: NCPoly,
    f_split: Vec<Sweedler2>,
    f_inv_split: Vec<Sweedler2>,
    delta_cache: DashMap<LegWord, Arc<NCPoly>>,
    split_cache: DashMap<LegWord, Arc<Vec<Sweedler2>>>,
}

/// One Sweedler term `X₁ ⊗ X₂` with its coefficient.
pub type Sweedler2 = (LegWord, LegWord, TruncSeries);

impl std::fmt::Debug for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Twist").field("f", &self.f).finish()
    }
}

impl Clone for Twist {
    fn clone(&self) -> Self {
        Twist {
            exponent: self.exponent.clone(),
            f: self.f.clone(),
            f_inv: self.f_inv.clone(),
            f_split: self.f_split.clone(),
            f_inv_split: self.f_inv_split.clone(),
            delta_cache: DashMap::new(),
            split_cache: DashMap::new(),
        }
    }
}

fn split2(p: &NCPoly) -> Vec<Sweedler2> {
    p.sweedler(2)
        .into_iter()
        .map(|(mut parts, c)| {
            let r = parts.pop().unwrap_or_default();
            let l = parts.pop().unwrap_or_default();
            (l, r, c)
        })
        .collect()
}

fn is_two_leg(p: &NCPoly) -> bool {
    p.terms().all(|(w, _)| w.iter().all(|g| g.leg == 1 || g.leg == 2))
}

impl Twist {
    pub fn trivial(b: &Bialgebra) -> Self {
        Self::assemble(None, b.one(), b.one())
    }

    /// `F = exp(t)`, `F⁻¹ = exp(−t)` for a two-leg exponent without `h^0` part.
    pub fn from_exponent(b: &Bialgebra, t: &NCPoly) -> Result<Self> {
        if !is_two_leg(t) {
            return Err(Error::InvalidTwist("exponent must live in legs 1 and 2".into()));
        }
        let f = t.exp_truncated(b.rs())?;
        let f_inv = t.neg().exp_truncated(b.rs())?;
        Self::from_parts_inner(b, Some(t.clone()), f, f_inv)
    }

    /// Validates explicit `F`, `F⁻¹` (inverse pair and normalization).
    pub fn from_parts(b: &Bialgebra, f: NCPoly, f_inv: NCPoly) -> Result<Self> {
        Self::from_parts_inner(b, None, f, f_inv)
    }

    fn from_parts_inner(b: &Bialgebra, exponent: Option<NCPoly>, f: NCPoly, f_inv: NCPoly) -> Result<Self> {
        if !is_two_leg(&f) || !is_two_leg(&f_inv) {
            return Err(Error::InvalidTwist("F and F⁻¹ must be two-leg elements".into()));
        }
        let one = b.one();
        if f.mul(&f_inv, b.rs())? != one || f_inv.mul(&f, b.rs())? != one {
            return Err(Error::InvalidTwist("F·F⁻¹ ≠ 1⊗1".into()));
        }
        for (k, x) in [(1u8, &f), (2, &f), (1, &f_inv), (2, &f_inv)] {
            if counit_on_leg(x, k, 2) != one {
                return Err(Error::InvalidTwist(format!("normalization fails on leg {k}")));
            }
        }
        Ok(Self::assemble(exponent, f, f_inv))
    }

    fn assemble(exponent: Option<NCPoly>, f: NCPoly, f_inv: NCPoly) -> Self {
        Twist {
            exponent,
            f_split: split2(&f),
            f_inv_split: split2(&f_inv),
            f,
            f_inv,
            delta_cache: DashMap::new(),
            split_cache: DashMap::new(),
        }
    }

    pub fn exponent(&self) -> Option<&NCPoly> {
        self.exponent.as_ref()
    }

    pub fn f(&self) -> &NCPoly {
        &self.f
    }

    pub fn f_inv(&self) -> &NCPoly {
        &self.f_inv
    }

    /// Sweedler terms `F₁ ⊗ F₂`.
    pub fn f_terms(&self) -> &[Sweedler2] {
        &self.f_split
    }

    /// Sweedler terms `F̄₁ ⊗ F̄₂` of the inverse.
    pub fn f_inv_terms(&self) -> &[Sweedler2] {
        &self.f_inv_split
    }

    pub fn is_trivial(&self) -> bool {
        self.f_split.len() == 1 && self.f_split[0].0.is_empty() && self.f_split[0].1.is_empty()
    }

    /// `Δ^F(w) = F Δ(w) F⁻¹` for a sorted single-leg word.
    pub fn twisted_coproduct_word(&self, b: &Bialgebra, w: &[u8]) -> Arc<NCPoly> {
        let key: LegWord = SmallVec::from_slice(w);
        if let Some(hit) = self.delta_cache.get(&key) {
            return hit.clone();
        }
        let p = NCPoly::from_sorted_word(w.iter().map(|&i| Gen::new(0, i)).collect(), TruncSeries::one(b.order()));
        let d = delta_on_leg(&p, 0);
        let out = Arc::new(self.f.mul_unchecked(&d, b.rs()).mul_unchecked(&self.f_inv, b.rs()));
        self.delta_cache.insert(key, out.clone());
        out
    }

    /// Sweedler terms of `Δ^F(w)`, memoized.
    pub fn twisted_coproduct_terms(&self, b: &Bialgebra, w: &[u8]) -> Arc<Vec<Sweedler2>> {
        if let Some(hit) = self.split_cache.get(w) {
            return hit.clone();
        }
        let out = Arc::new(split2(&self.twisted_coproduct_word(b, w)));
        self.split_cache.insert(SmallVec::from_slice(w), out.clone());
        out
    }
}

/// Which coproduct a construction uses on `H`.
#[derive(Clone, Copy, Debug)]
pub enum Coproduct<'a> {
    Primitive,
    Twisted(&'a Twist),
}

impl<'a> From<Option<&'a Twist>> for Coproduct<'a> {
    fn from(f: Option<&'a Twist>) -> Self {
        match f {
            None => Coproduct::Primitive,
            Some(f) => Coproduct::Twisted(f),
        }
    }
}

impl<'a> Coproduct<'a> {
    pub fn twist(&self) -> Option<&'a Twist> {
        match self {
            Coproduct::Primitive => None,
            Coproduct::Twisted(f) => Some(f),
        }
    }

    /// Coproduct of a single-leg element.
    pub fn apply(&self, b: &Bialgebra, p: &NCPoly) -> Result<NCPoly> {
        match self {
            Coproduct::Primitive => b.coproduct(p),
            Coproduct::Twisted(f) => twisted_coproduct(b, f, p),
        }
    }

    /// Coproduct of a sorted single-leg word, as Sweedler terms.
    pub fn apply_word(&self, b: &Bialgebra, w: &[u8]) -> Arc<Vec<Sweedler2>> {
        match self {
            Coproduct::Primitive => Arc::new(
                coproduct_word(w)
                    .into_iter()
                    .map(|(l, r, c)| (l, r, TruncSeries::constant(c, b.order())))
                    .collect(),
            ),
            Coproduct::Twisted(f) => f.twisted_coproduct_terms(b, w),
        }
    }

    /// Coproduct applied to leg `leg` (≥ 1) of a multi-leg element.
    pub fn apply_on_leg(&self, b: &Bialgebra, p: &NCPoly, leg: u8) -> NCPoly {
        let d = delta_on_leg(p, leg);
        match self {
            Coproduct::Primitive => d,
            Coproduct::Twisted(f) => {
                let fl = place(f.f(), leg, leg + 1);
                let fil = place(f.f_inv(), leg, leg + 1);
                fl.mul_unchecked(&d, b.rs()).mul_unchecked(&fil, b.rs())
            }
        }
    }
}

/// `F Δ(p) F⁻¹`.
pub fn twisted_coproduct(b: &Bialgebra, f: &Twist, p: &NCPoly) -> Result<NCPoly> {
    let d = b.coproduct(p)?;
    Ok(f.f().mul_unchecked(&d, b.rs()).mul_unchecked(f.f_inv(), b.rs()))
}

/// Residuals of the twist conditions.
#[derive(Clone, Debug)]
pub struct CocycleReport {
    /// `F₁₂(Δ⊗id)(F) − F₂₃(id⊗Δ)(F)`
    pub cocycle: NCPoly,
    /// `((Δ⊗id)F⁻¹)F⁻¹₁₂ − ((id⊗Δ)F⁻¹)F⁻¹₂₃`
    pub inverse_cocycle: NCPoly,
    /// `(ε⊗id)F − 1`, `(id⊗ε)F − 1`
    pub normalization: [NCPoly; 2],
    /// Same for `F⁻¹`.
    pub inverse_normalization: [NCPoly; 2],
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.cocycle.is_zero()
            && self.inverse_cocycle.is_zero()
            && self.normalization.iter().chain(&self.inverse_normalization).all(NCPoly::is_zero)
    }

    pub fn entries(&self, rs: &RewriteSystem) -> Vec<CheckEntry> {
        let mut v = vec![
            entry_for("twist cocycle", "coc", &self.cocycle, || self.cocycle.display(rs)),
            entry_for("inverse twist cocycle", "coc1", &self.inverse_cocycle, || self.inverse_cocycle.display(rs)),
        ];
        for (k, r) in self.normalization.iter().enumerate() {
            let name = if k == 0 { "normalization (ε⊗id)F" } else { "normalization (id⊗ε)F" };
            v.push(entry_for(name, "nor", r, || r.display(rs)));
        }
        for (k, r) in self.inverse_normalization.iter().enumerate() {
            let name = if k == 0 { "normalization (ε⊗id)F⁻¹" } else { "normalization (id⊗ε)F⁻¹" };
            v.push(entry_for(name, "nor1", r, || r.display(rs)));
        }
        v
    }
}

pub fn check_cocycle(b: &Bialgebra, f: &Twist) -> CocycleReport {
    let rs = b.rs();
    let one = b.one();
    let (fw, fi) = (f.f(), f.f_inv());
    let f12 = fw.clone();
    let f23 = place(fw, 2, 3);
    let lhs = f12.mul_unchecked(&delta_on_leg(fw, 1), rs);
    let rhs = f23.mul_unchecked(&delta_on_leg(fw, 2), rs);
    let fi12 = fi.clone();
    let fi23 = place(fi, 2, 3);
    let ilhs = delta_on_leg(fi, 1).mul_unchecked(&fi12, rs);
    let irhs = delta_on_leg(fi, 2).mul_unchecked(&fi23, rs);
    CocycleReport {
        cocycle: lhs.sub(&rhs),
        inverse_cocycle: ilhs.sub(&irhs),
        normalization: [counit_on_leg(fw, 1, 2).sub(&one), counit_on_leg(fw, 2, 2).sub(&one)],
        inverse_normalization: [counit_on_leg(fi, 1, 2).sub(&one), counit_on_leg(fi, 2, 2).sub(&one)],
    }
}

/// `R^F = F₂₁ F⁻¹` (the undeformed R-matrix is `1⊗1`).
pub fn r_matrix_from_twist(b: &Bialgebra, f: &Twist) -> NCPoly {
    flip(f.f()).mul_unchecked(f.f_inv(), b.rs())
}

/// Residuals of the quasi-triangularity conditions and the Yang–Baxter equation.
#[derive(Clone, Debug)]
pub struct QuasiTriangularReport {
    /// `RΔ(X)R⁻¹ − Δ^op(X)` per generator name.
    pub intertwining: Vec<(String, NCPoly)>,
    /// `(Δ⊗id)R − R₁₃R₂₃`
    pub hexagon_left: NCPoly,
    /// `(id⊗Δ)R − R₁₃R₁₂`
    pub hexagon_right: NCPoly,
    /// `(ε⊗id)R − 1`, `(id⊗ε)R − 1`
    pub counit: [NCPoly; 2],
    /// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂`
    pub yang_baxter: NCPoly,
}

impl QuasiTriangularReport {
    pub fn holds(&self) -> bool {
        self.intertwining.iter().all(|(_, r)| r.is_zero())
            && self.hexagon_left.is_zero()
            && self.hexagon_right.is_zero()
            && self.counit.iter().all(NCPoly::is_zero)
            && self.yang_baxter.is_zero()
    }

    pub fn entries(&self, rs: &RewriteSystem) -> Vec<CheckEntry> {
        let mut t = crate::residual::Tally::new("R intertwines Δ and Δ^op", "qt");
        for (name, r) in &self.intertwining {
            t.record(r, || format!("X = {name}: {}", r.display(rs)));
        }
        let mut v = vec![t.finish()];
        v.push(entry_for("hexagon (Δ⊗id)R = R₁₃R₂₃", "qt", &self.hexagon_left, || {
            self.hexagon_left.display(rs)
        }));
        v.push(entry_for("hexagon (id⊗Δ)R = R₁₃R₁₂", "qt", &self.hexagon_right, || {
            self.hexagon_right.display(rs)
        }));
        for (k, r) in self.counit.iter().enumerate() {
            let name = if k == 0 { "counit (ε⊗id)R = 1" } else { "counit (id⊗ε)R = 1" };
            v.push(entry_for(name, "qt", r, || r.display(rs)));
        }
        v.push(entry_for("quantum Yang–Baxter", "qyb", &self.yang_baxter, || self.yang_baxter.display(rs)));
        v
    }
}

pub fn check_quasitriangular(b: &Bialgebra, r: &NCPoly, delta: Coproduct<'_>) -> Result<QuasiTriangularReport> {
    let rs = b.rs();
    let r_inv = r.inverse_unipotent(rs)?;
    let mut intertwining = Vec::new();
    for g in 0..rs.len() as u8 {
        let x = NCPoly::generator(Gen::new(0, g), b.order());
        let dx = delta.apply(b, &x)?;
        let lhs = r.mul_unchecked(&dx, rs).mul_unchecked(&r_inv, rs);
        intertwining.push((rs.name(g).to_string(), lhs.sub(&flip(&dx))));
    }
    let r13 = place(r, 1, 3);
    let r23 = place(r, 2, 3);
    let r12 = r.clone();
    let hexagon_left = delta.apply_on_leg(b, r, 1).sub(&r13.mul_unchecked(&r23, rs));
    let hexagon_right = delta.apply_on_leg(b, r, 2).sub(&r13.mul_unchecked(&r12, rs));
    let one = b.one();
    let counit = [counit_on_leg(r, 1, 2).sub(&one), counit_on_leg(r, 2, 2).sub(&one)];
    let ybe_l = r12.mul_unchecked(&r13, rs).mul_unchecked(&r23, rs);
    let ybe_r = r23.mul_unchecked(&r13, rs).mul_unchecked(&r12, rs);
    Ok(QuasiTriangularReport { intertwining, hexagon_left, hexagon_right, counit, yang_baxter: ybe_l.sub(&ybe_r) })
}

/// The classical r-matrix `r` in `R = 1 + h r + O(h²)` and its CYBE residual.
#[derive(Clone, Debug)]
pub struct ClassicalR {
    pub r: NCPoly,
    /// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]`
    pub cybe: NCPoly,
}

pub fn classical_r_extract(b: &Bialgebra, r_matrix: &NCPoly) -> Result<ClassicalR> {
    if r_matrix.h0_part() != b.one() {
        return Err(Error::NotUnipotent);
    }
    let rs = b.rs();
    let r = r_matrix.h_part(1);
    let r12 = r.clone();
    let r13 = place(&r, 1, 3);
    let r23 = place(&r, 2, 3);
    let c = |x: &NCPoly, y: &NCPoly| x.mul_unchecked(y, rs).sub(&y.mul_unchecked(x, rs));
    let mut cybe = c(&r12, &r13);
    cybe.add_assign(&c(&r12, &r23));
    cybe.add_assign(&c(&r13, &r23));
    Ok(ClassicalR { r, cybe })
}

/// Coefficient-wise view of an NCPoly as `word → series`, used by tests.
pub fn as_map(p: &NCPoly) -> BTreeMap<Word, TruncSeries> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::word_of;

    fn q(n: i64) -> GaussRational {
        n.into()
    }

    fn toy(order: usize) -> Bialgebra {
        let rs = RewriteSystem::new(
            vec![("P0".into(), Sort::Momentum), ("P1".into(), Sort::Momentum), ("L".into(), Sort::Symmetry)],
            &[("L".into(), "P1".into(), vec![("P1".into(), q(1))], q(0))],
        )
        .unwrap();
        Bialgebra::new(Arc::new(rs), order).unwrap()
    }

    fn two_leg(b: &Bialgebra, l: &str, r: &str, c: TruncSeries) -> NCPoly {
        let rs = b.rs();
        let mut w = Word::new();
        w.push(Gen::new(1, rs.index(l).unwrap()));
        w.push(Gen::new(2, rs.index(r).unwrap()));
        NCPoly::from_sorted_word(w, c)
    }

    fn ih(order: usize) -> TruncSeries {
        TruncSeries::monomial(GaussRational::i(), 1, order)
    }

    /// Brute-force subset expansion, one term per subset.
    fn coproduct_by_subsets(w: &[u8]) -> BTreeMap<(LegWord, LegWord), i64> {
        let mut m = BTreeMap::new();
        for mask in 0u32..(1 << w.len()) {
            let (mut l, mut r) = (LegWord::new(), LegWord::new());
            for (k, &g) in w.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    l.push(g)
                } else {
                    r.push(g)
                }
            }
            *m.entry((l, r)).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn run_grouped_coproduct_matches_subsets() {
        for w in [vec![], vec![0], vec![0, 0, 1], vec![0, 1, 1, 1, 2, 2]] {
            let fast: BTreeMap<_, _> =
                coproduct_word(&w).into_iter().map(|(l, r, c)| ((l, r), c)).collect();
            let slow = coproduct_by_subsets(&w);
            assert_eq!(fast.len(), slow.len());
            for (k, c) in slow {
                assert_eq!(fast[&k], q(c));
            }
        }
    }

    #[test]
    fn coproduct_is_multiplicative_and_counital() {
        let b = toy(2);
        let rs = b.rs();
        let x = b.gen("L").unwrap();
        let y = b.gen("P1").unwrap().add(&b.gen("P0").unwrap());
        let xy = b.mul(&x, &y).unwrap();
        let lhs = b.coproduct(&xy).unwrap();
        let rhs = b.coproduct(&x).unwrap().mul(&b.coproduct(&y).unwrap(), rs).unwrap();
        assert_eq!(lhs, rhs);
        let d = b.coproduct(&xy).unwrap();
        assert_eq!(counit_on_leg(&d, 1, 2), xy);
        assert_eq!(counit_on_leg(&d, 2, 2), xy);
        assert!(b.counit(&xy).unwrap().is_zero());
    }

    #[test]
    fn abelian_twist_is_a_cocycle_with_expected_r_matrix() {
        let n = 3;
        let b = toy(n);
        let t = two_leg(&b, "P0", "L", ih(n));
        let f = Twist::from_exponent(&b, &t).unwrap();
        assert!(check_cocycle(&b, &f).holds());
        let r = r_matrix_from_twist(&b, &f);
        // commuting legs: F₂₁F⁻¹ = exp(t₂₁ − t)
        let expect = flip(&t).sub(&t).exp_truncated(b.rs()).unwrap();
        assert_eq!(r, expect);
        let qt = check_quasitriangular(&b, &r, Coproduct::Twisted(&f)).unwrap();
        assert!(qt.holds(), "{qt:?}");
        let cr = classical_r_extract(&b, &r).unwrap();
        let i = TruncSeries::constant(GaussRational::i(), n);
        let expect_r = two_leg(&b, "L", "P0", i.clone()).sub(&two_leg(&b, "P0", "L", i));
        assert_eq!(cr.r, expect_r);
        assert!(cr.cybe.is_zero());
    }

    #[test]
    fn non_commuting_exponent_breaks_the_cocycle_condition() {
        let n = 2;
        let b = toy(n);
        let t = two_leg(&b, "P1", "L", ih(n));
        let f = Twist::from_exponent(&b, &t).unwrap();
        let rep = check_cocycle(&b, &f);
        assert!(!rep.cocycle.is_zero());
        assert_eq!(rep.cocycle.valuation(), Some(2));
        assert!(rep.normalization.iter().all(NCPoly::is_zero));
    }

    #[test]
    fn twist_validation_rejects_bad_input() {
        let b = toy(2);
        let t = b.gen("P0").unwrap().scale(&ih(2));
        assert!(Twist::from_exponent(&b, &t).is_err());
        let c = two_leg(&b, "P0", "L", TruncSeries::one(2));
        assert_eq!(Twist::from_exponent(&b, &c).unwrap_err(), Error::ConstantPart);
        let one = b.one();
        let bad = one.add(&two_leg(&b, "P0", "L", ih(2)));
        assert!(Twist::from_parts(&b, bad, one).is_err());
    }

    #[test]
    fn twisted_coproduct_word_cache_agrees_with_direct() {
        let b = toy(3);
        let t = two_leg(&b, "P0", "L", ih(3));
        let f = Twist::from_exponent(&b, &t).unwrap();
        let w = word_of(b.rs(), &["P1", "L"]).unwrap();
        let p = NCPoly::from_sorted_word(in_leg0(&w), TruncSeries::one(3));
        let direct = twisted_coproduct(&b, &f, &p).unwrap();
        assert_eq!(*f.twisted_coproduct_word(&b, &w), direct);
        assert_eq!(*f.twisted_coproduct_word(&b, &w), direct);
    }

    fn in_leg0(w: &[u8]) -> Word {
        crate::ncpoly::in_leg(w, 0)
    }

    #[test]
    fn primitive_r_matrix_is_trivially_quasitriangular() {
        let b = toy(2);
        let qt = check_quasitriangular(&b, &b.one(), Coproduct::Primitive).unwrap();
        assert!(qt.holds());
        assert_eq!(classical_r_extract(&b, &b.one().scale_scalar(&q(2))).unwrap_err(), Error::NotUnipotent);
    }
}
