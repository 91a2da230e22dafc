//! Smash products `A⋊H` and `A_F⋊H^F` on the shared carrier `A⊗H`, and the
//! algebra isomorphism `φ` between them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::hopf::{Coproduct, Twist};
use crate::modalg::{fmt_mono, monomials, Mono, ModuleAlgebra, PolyCoord};
use crate::ncpoly::{in_leg, LegWord, NCPoly, RewriteSystem};
use crate::residual::{CheckEntry, Residual, Tally};
use crate::scalars::{GaussRational, TruncSeries};

/// Element of `A⊗H` in the basis (coordinate monomial) ⋊ (PBW word).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmashElem {
    order: usize,
    terms: BTreeMap<(Mono, LegWord), TruncSeries>,
}

impl SmashElem {
    pub fn zero(order: usize) -> Self {
        SmashElem { order, terms: BTreeMap::new() }
    }

    /// `1_A ⋊ 1_H`.
    pub fn one(dim: usize, order: usize) -> Self {
        Self::basis(Mono::from_elem(0, dim), LegWord::new(), TruncSeries::one(order))
    }

    pub fn basis(m: Mono, w: LegWord, c: TruncSeries) -> Self {
        let mut s = Self::zero(c.order());
        s.add_term(m, w, c);
        s
    }

    /// `a ⋊ w` for a sorted word `w`.
    pub fn from_poly_word(a: &PolyCoord, w: &[u8]) -> Self {
        let mut s = Self::zero(a.order());
        for (m, c) in a.terms() {
            s.add_term(m.clone(), LegWord::from_slice(w), c.clone());
        }
        s
    }

    /// `a ⋊ L` for a single-leg `L`.
    pub fn from_parts(a: &PolyCoord, l: &NCPoly) -> Self {
        let mut s = Self::zero(a.order());
        for (w, c) in l.terms() {
            let lw: LegWord = w.iter().map(|g| g.idx).collect();
            for (m, d) in a.terms() {
                s.add_term(m.clone(), lw.clone(), d * c);
            }
        }
        s
    }

    /// `a ⋊ 1_H`.
    pub fn from_poly(a: &PolyCoord) -> Self {
        Self::from_poly_word(a, &[])
    }

    /// `1_A ⋊ L`.
    pub fn from_h(l: &NCPoly, dim: usize) -> Self {
        Self::from_parts(&PolyCoord::one(dim, l.order()), l)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, LegWord), &TruncSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u8], w: &[u8]) -> TruncSeries {
        self.terms
            .get(&(Mono::from_slice(m), LegWord::from_slice(w)))
            .cloned()
            .unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    pub fn add_term(&mut self, m: Mono, w: LegWord, c: TruncSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, w)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for ((m, w), c) in &other.terms {
            self.add_term(m.clone(), w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, w), c) in &other.terms {
            out.add_term(m.clone(), w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.order).sub(self)
    }

    pub fn scale(&self, c: &TruncSeries) -> Self {
        let mut out = Self::zero(self.order);
        for ((m, w), a) in &self.terms {
            out.add_term(m.clone(), w.clone(), a * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero(self.order);
        for ((m, w), a) in &self.terms {
            out.add_term(m.clone(), w.clone(), a.scale(c));
        }
        out
    }

    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(TruncSeries::valuation).min()
    }

    /// The `A`-part of the `1_H` component.
    pub fn h_trivial_part(&self) -> PolyCoord {
        let mut p = PolyCoord::zero(self.order);
        for ((m, w), c) in &self.terms {
            if w.is_empty() {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    /// Whether every `A`-part is the constant monomial.
    pub fn is_pure_h(&self) -> bool {
        self.terms.keys().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    /// Groups terms by `H`-word: `Σ_w a_w ⋊ w`.
    pub fn by_word(&self) -> BTreeMap<LegWord, PolyCoord> {
        let mut out: BTreeMap<LegWord, PolyCoord> = BTreeMap::new();
        for ((m, w), c) in &self.terms {
            out.entry(w.clone())
                .or_insert_with(|| PolyCoord::zero(self.order))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn display(&self, coords: &[String], rs: &RewriteSystem) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for ((m, w), c) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let ms = fmt_mono(m, coords);
            let ws = rs.fmt_word(&in_leg(w, 0));
            let cs = c.to_string();
            let body = format!("{}⋊{}", if ms.is_empty() { "1" } else { &ms }, ws);
            if cs == "1" {
                s.push_str(&body);
            } else {
                let _ = write!(s, "({cs})·{body}");
            }
        }
        s
    }
}

impl std::fmt::Debug for SmashElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Residual for SmashElem {
    fn is_zero(&self) -> bool {
        SmashElem::is_zero(self)
    }
    fn valuation(&self) -> Option<usize> {
        SmashElem::valuation(self)
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

/// All sorted words of length `≤ d` over `n` generators.
pub fn pbw_words(n: usize, d: usize) -> Vec<LegWord> {
    let mut out = vec![LegWord::new()];
    let mut frontier = vec![LegWord::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for g in start..n as u8 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl ModuleAlgebra {
    /// `(a⋊L)(b⋊J) = a ⋆ (L₍₁₎⊳b) ⋊ L₍₂₎J`, with `Δ^F` and `⋆_F` when a twist
    /// is given and the primitive structures otherwise.
    pub fn smash_mul(&self, f: Option<&Twist>, u: &SmashElem, v: &SmashElem) -> SmashElem {
        let rs = self.bialg.rs();
        let delta = Coproduct::from(f);
        let mut out = SmashElem::zero(u.order());
        let v_by_word = v.by_word();
        for (l, a) in u.by_word() {
            let dl = delta.apply_word(&self.bialg, &l);
            for (l1, l2, k) in dl.iter() {
                for (j, b) in &v_by_word {
                    let lb = self.rep.act_word(l1, b);
                    if lb.is_zero() {
                        continue;
                    }
                    let apart = self.star(f, &a, &lb).scale(k);
                    if apart.is_zero() {
                        continue;
                    }
                    for (w, s) in rs.mul_words(l2, j) {
                        for (m, c) in apart.terms() {
                            out.add_term(m.clone(), w.clone(), c.scale(&s));
                        }
                    }
                }
            }
        }
        out
    }

    /// `φ(a⋊L) = (F̄₁⊳a) ⋊ F̄₂L`.
    pub fn phi(&self, f: &Twist, u: &SmashElem) -> SmashElem {
        self.conjugate_by(f.f_inv_terms(), u)
    }

    /// `φ⁻¹(a⋊L) = (F₁⊳a) ⋊ F₂L`.
    pub fn phi_inv(&self, f: &Twist, u: &SmashElem) -> SmashElem {
        self.conjugate_by(f.f_terms(), u)
    }

    fn conjugate_by(&self, split: &[crate::hopf::Sweedler2], u: &SmashElem) -> SmashElem {
        let rs = self.bialg.rs();
        let mut out = SmashElem::zero(u.order());
        for (l, a) in u.by_word() {
            for (x1, x2, c) in split {
                let xa = self.rep.act_word(x1, &a).scale(c);
                if xa.is_zero() {
                    continue;
                }
                for (w, s) in rs.mul_words(x2, &l) {
                    for (m, d) in xa.terms() {
                        out.add_term(m.clone(), w.clone(), d.scale(&s));
                    }
                }
            }
        }
        out
    }

    /// `(a⋊L)▶b = a ⋆ (L⊳b)`.
    pub fn canonical_action(&self, f: Option<&Twist>, u: &SmashElem, b: &PolyCoord) -> PolyCoord {
        let mut out = PolyCoord::zero(b.order());
        for (l, a) in u.by_word() {
            out.add_assign(&self.star(f, &a, &self.rep.act_word(&l, b)));
        }
        out
    }

    /// Basis elements `x^m ⋊ w` with `deg m + |w| ≤ d`.
    pub fn spanning_set(&self, d: usize) -> Vec<SmashElem> {
        let words = pbw_words(self.bialg.rs().len(), d);
        let monos = monomials(self.dim(), d);
        let mut out = Vec::new();
        for w in &words {
            for m in &monos {
                if crate::modalg::mono_degree(m) + w.len() <= d {
                    out.push(SmashElem::basis(m.clone(), w.clone(), TruncSeries::one(self.order())));
                }
            }
        }
        out
    }

    /// Residuals of `φ(u ⋆_F v) = φ(u)φ(v)` over the proof's case split, the
    /// generator identities, general pairs, and `φ∘φ⁻¹ = φ⁻¹∘φ = id`.
    pub fn verify_phi_homomorphism(&self, f: &Twist, d: usize) -> Vec<CheckEntry> {
        self.verify_phi_homomorphism_with(f, d, &|u| self.phi(f, u))
    }

    /// As [`verify_phi_homomorphism`](Self::verify_phi_homomorphism) with a
    /// caller-supplied map in place of `φ`.
    pub fn verify_phi_homomorphism_with(
        &self,
        f: &Twist,
        d: usize,
        phi: &(dyn Fn(&SmashElem) -> SmashElem + Sync),
    ) -> Vec<CheckEntry> {
        let rs = self.bialg.rs();
        let coords = self.rep.coords();
        let show = |u: &SmashElem| u.display(coords, rs);
        let span = self.spanning_set(d);
        let dim = self.dim();
        let n = self.order();
        let a_side: Vec<SmashElem> = monomials(dim, d)
            .into_iter()
            .map(|m| SmashElem::basis(m, LegWord::new(), TruncSeries::one(n)))
            .collect();
        let h_side: Vec<SmashElem> = pbw_words(rs.len(), d)
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| SmashElem::basis(Mono::from_elem(0, dim), w, TruncSeries::one(n)))
            .collect();
        let hom = |(u, v): &(SmashElem, SmashElem)| {
            let lhs = phi(&self.smash_mul(Some(f), u, v));
            let rhs = self.smash_mul(None, &phi(u), &phi(v));
            lhs.sub(&rhs)
        };
        let pair_desc = |(u, v): &(SmashElem, SmashElem)| format!("u = {}, v = {}", show(u), show(v));
        let pairs = |left: &[SmashElem], right: &[SmashElem]| -> Vec<(SmashElem, SmashElem)> {
            left.iter().flat_map(|u| right.iter().map(move |v| (u.clone(), v.clone()))).collect()
        };

        let mut case_i = Tally::new("φ hom on (a⋊1)⋆_F(b⋊J)", "varp");
        case_i.sweep(&pairs(&a_side, &span), hom, pair_desc);
        let mut case_ii = Tally::new("φ hom on (1⋊L)⋆_F(b⋊J)", "varp");
        case_ii.sweep(&pairs(&h_side, &span), hom, pair_desc);

        let one_a: Vec<SmashElem> = h_side.clone();
        let mut gens = Tally::new("generator products (a⋊1)⋆_F(1⋊J) = a⋊J, (1⋊L)⋆_F(1⋊J) = 1⋊LJ", "m1");
        gens.sweep(
            &pairs(&a_side, &one_a),
            |(u, v)| self.smash_mul(Some(f), u, v).sub(&self.smash_mul(None, u, v)),
            pair_desc,
        );
        gens.sweep(
            &pairs(&h_side, &one_a),
            |(u, v)| self.smash_mul(Some(f), u, v).sub(&self.smash_mul(None, u, v)),
            pair_desc,
        );
        let mut gen_hom = Tally::new("φ hom on remaining generator pairs", "varp");
        gen_hom.sweep(&pairs(&a_side, &one_a), hom, pair_desc);
        gen_hom.sweep(&pairs(&h_side, &one_a), hom, pair_desc);

        let mut general = Tally::new("φ hom on spanning pairs", "varp");
        general.sweep(&pairs(&span, &span), hom, pair_desc);

        let mut unit = Tally::new("φ(1⋊L) = 1⋊L", "nor1");
        unit.sweep(&h_side, |u| phi(u).sub(u), |u| show(u));

        let mut bij = Tally::new("φ∘φ⁻¹ = φ⁻¹∘φ = id", "def_phi");
        bij.sweep(&span, |u| phi(&self.phi_inv(f, u)).sub(u), |u| show(u));
        bij.sweep(&span, |u| self.phi_inv(f, &phi(u)).sub(u), |u| show(u));

        vec![case_i.finish(), case_ii.finish(), gens.finish(), gen_hom.finish(), general.finish(), unit.finish(), bij.finish()]
    }

    /// `(uv)w − u(vw)` for the product selected by `f`, over the given triples.
    pub fn check_smash_associativity(&self, f: Option<&Twist>, triples: &[(SmashElem, SmashElem, SmashElem)]) -> CheckEntry {
        let rs = self.bialg.rs();
        let coords = self.rep.coords();
        let name = if f.is_some() { "A_F⋊H^F associative" } else { "A⋊H associative" };
        let mut t = Tally::new(name, "cr");
        t.sweep(
            triples,
            |(u, v, w)| {
                let l = self.smash_mul(f, &self.smash_mul(f, u, v), w);
                let r = self.smash_mul(f, u, &self.smash_mul(f, v, w));
                l.sub(&r)
            },
            |(u, v, w)| format!("({}, {}, {})", u.display(coords, rs), v.display(coords, rs), w.display(coords, rs)),
        );
        t.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Bialgebra;
    use crate::modalg::{GenAction, RepData};
    use crate::ncpoly::{Gen, RewriteSystem, Sort};
    use std::sync::Arc;

    fn q(n: i64) -> GaussRational {
        n.into()
    }

    fn setup(order: usize) -> (ModuleAlgebra, Twist) {
        let rs = RewriteSystem::new(
            vec![("L".into(), Sort::Symmetry), ("P0".into(), Sort::Momentum), ("P1".into(), Sort::Momentum)],
            &[("L".into(), "P1".into(), vec![("P1".into(), q(1))], q(0))],
        )
        .unwrap();
        let b = Bialgebra::new(Arc::new(rs), order).unwrap();
        let mat = vec![vec![q(0), q(0)], vec![q(0), q(1)]];
        let rep = RepData::new(
            &b,
            vec!["x0".into(), "x1".into()],
            vec![GenAction::Matrix(mat), GenAction::Derivative(0), GenAction::Derivative(1)],
        )
        .unwrap();
        let rs = b.rs();
        let mut t = NCPoly::zero(order);
        t.add_term(
            [Gen::new(1, rs.index("P0").unwrap()), Gen::new(2, rs.index("L").unwrap())].into_iter().collect(),
            TruncSeries::monomial(GaussRational::i(), 1, order),
        );
        let f = Twist::from_exponent(&b, &t).unwrap();
        (ModuleAlgebra::new(b, rep), f)
    }

    #[test]
    fn momentum_moves_past_coordinate() {
        let (ma, _) = setup(2);
        let p0 = SmashElem::from_h(&ma.bialg.gen("P0").unwrap(), 2);
        let x0 = SmashElem::from_poly(&ma.coord(0));
        let prod = ma.smash_mul(None, &p0, &x0);
        let expect = SmashElem::one(2, 2).add(&SmashElem::from_parts(&ma.coord(0), &ma.bialg.gen("P0").unwrap()));
        assert_eq!(prod, expect);
    }

    #[test]
    fn twisted_coordinate_commutator_is_kappa_minkowski() {
        let n = 3;
        let (ma, f) = setup(n);
        let x0 = SmashElem::from_poly(&ma.coord(0));
        let x1 = SmashElem::from_poly(&ma.coord(1));
        let c = ma.smash_mul(Some(&f), &x0, &x1).sub(&ma.smash_mul(Some(&f), &x1, &x0));
        let expect = x1.scale(&TruncSeries::monomial(GaussRational::i(), 1, n));
        assert_eq!(c, expect);
    }

    #[test]
    fn phi_is_an_isomorphism_and_corruption_fails_case_ii() {
        let (ma, f) = setup(2);
        let entries = ma.verify_phi_homomorphism(&f, 1);
        assert!(entries.iter().all(CheckEntry::passed), "{entries:#?}");
        let rs = ma.bialg.rs();
        let corrupted = |u: &SmashElem| {
            // keeps only the first leg of F⁻¹
            let mut out = SmashElem::zero(u.order());
            for (l, a) in u.by_word() {
                for (x1, _x2, c) in f.f_inv_terms() {
                    let xa = ma.rep.act_word(x1, &a).scale(c);
                    for (m, d) in xa.terms() {
                        out.add_term(m.clone(), l.clone(), d.clone());
                    }
                }
            }
            let _ = rs;
            out
        };
        let entries = ma.verify_phi_homomorphism_with(&f, 1, &corrupted);
        assert!(!entries[1].passed());
    }

    #[test]
    fn canonical_action_restricts_to_star_and_action() {
        let (ma, f) = setup(2);
        let x0 = ma.coord(0);
        let x1 = ma.coord(1);
        let u = SmashElem::from_poly(&x0);
        assert_eq!(ma.canonical_action(Some(&f), &u, &x1), ma.star(Some(&f), &x0, &x1));
        let l = ma.bialg.gen("L").unwrap();
        let v = SmashElem::from_h(&l, 2);
        assert_eq!(ma.canonical_action(Some(&f), &v, &x1), ma.act(&l, &x1).unwrap());
        assert_eq!(ma.canonical_action(None, &SmashElem::one(2, 2), &x1), x1);
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(pbw_words(3, 2).len(), 1 + 3 + 6);
        assert_eq!(pbw_words(6, 2).len(), 28);
    }
}
