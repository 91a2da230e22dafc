//! The module algebra `A = Pol[x¹…xᵐ]` with `U(g)` acting by first-order
//! differential operators, and its twisted star products.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::hopf::{coproduct_word, Bialgebra, Twist};
use crate::ncpoly::{LegWord, NCPoly, Sort};
use crate::residual::{CheckEntry, Residual, Tally};
use crate::scalars::{GaussRational, TruncSeries};
use crate::smash::SmashElem;

/// Exponent vector of a coordinate monomial.
pub type Mono = SmallVec<[u8; 4]>;

/// Commutative polynomial in the coordinates with series coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyCoord {
    order: usize,
    terms: BTreeMap<Mono, TruncSeries>,
}

impl PolyCoord {
    pub fn zero(order: usize) -> Self {
        PolyCoord { order, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::monomial(Mono::from_elem(0, dim), TruncSeries::one(order))
    }

    pub fn monomial(m: Mono, c: TruncSeries) -> Self {
        let mut p = Self::zero(c.order());
        p.add_term(m, c);
        p
    }

    /// The coordinate `x^μ`.
    pub fn coord(mu: usize, dim: usize, order: usize) -> Self {
        let mut m = Mono::from_elem(0, dim);
        m[mu] = 1;
        Self::monomial(m, TruncSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &TruncSeries)> {
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

    pub fn coeff(&self, m: &[u8]) -> TruncSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    pub fn add_term(&mut self, m: Mono, c: TruncSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &TruncSeries) -> Self {
        let mut out = Self::zero(self.order);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero(self.order);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.scale(c));
        }
        out
    }

    /// The undeformed (pointwise) product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(mono_mul(m, n), a * b);
            }
        }
        out
    }

    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(TruncSeries::valuation).min()
    }

    /// Highest total coordinate degree.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| mono_degree(m)).max()
    }

    pub fn display(&self, coords: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let ms = fmt_mono(m, coords);
            let cs = c.to_string();
            if ms.is_empty() {
                let _ = write!(s, "({cs})");
            } else if cs == "1" {
                s.push_str(&ms);
            } else {
                let _ = write!(s, "({cs})·{ms}");
            }
        }
        s
    }
}

impl std::fmt::Debug for PolyCoord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Residual for PolyCoord {
    fn is_zero(&self) -> bool {
        PolyCoord::is_zero(self)
    }
    fn valuation(&self) -> Option<usize> {
        PolyCoord::valuation(self)
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

pub fn mono_mul(m: &[u8], n: &[u8]) -> Mono {
    m.iter().zip(n).map(|(a, b)| a + b).collect()
}

pub fn mono_degree(m: &[u8]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

pub fn fmt_mono(m: &[u8], coords: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(coords[k].clone()),
            _ => parts.push(format!("{}^{e}", coords[k])),
        }
    }
    parts.join("·")
}

/// All exponent vectors of total degree `≤ d`, in increasing degree.
pub fn monomials(dim: usize, d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = Mono::from_elem(0, dim);
        fill(&mut out, &mut cur, 0, deg);
    }
    out
}

fn fill(out: &mut Vec<Mono>, cur: &mut Mono, k: usize, left: usize) {
    if k + 1 == cur.len() {
        cur[k] = left as u8;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[k] = e as u8;
        fill(out, cur, k + 1, left - e);
    }
    cur[k] = 0;
}

/// Affine first-order operator `s + Σ_β (c_β + Σ_α M_{βα} x^α) ∂_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineOp {
    pub scalar: GaussRational,
    pub shift: Vec<GaussRational>,
    pub linear: Vec<Vec<GaussRational>>,
}

impl AffineOp {
    pub fn zero(dim: usize) -> Self {
        AffineOp {
            scalar: GaussRational::zero(),
            shift: vec![GaussRational::zero(); dim],
            linear: vec![vec![GaussRational::zero(); dim]; dim],
        }
    }

    fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
            && self.shift.iter().all(GaussRational::is_zero)
            && self.linear.iter().flatten().all(GaussRational::is_zero)
    }

    fn axpy(&mut self, c: &GaussRational, other: &AffineOp) {
        self.scalar += &(c * &other.scalar);
        for (a, b) in self.shift.iter_mut().zip(&other.shift) {
            *a += &(c * b);
        }
        for (ra, rb) in self.linear.iter_mut().zip(&other.linear) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += &(c * b);
            }
        }
    }

    /// Operator commutator; for affine vector fields `V = v·∂`, `W = w·∂`
    /// the bracket has components `V(w_β) − W(v_β)`.
    pub fn commutator(&self, other: &AffineOp) -> AffineOp {
        let n = self.dim();
        let mut out = AffineOp::zero(n);
        for b in 0..n {
            let mut s = GaussRational::zero();
            for g in 0..n {
                s += &(&other.linear[b][g] * &self.shift[g]);
                s -= &(&self.linear[b][g] * &other.shift[g]);
            }
            out.shift[b] = s;
            for a in 0..n {
                let mut s = GaussRational::zero();
                for g in 0..n {
                    s += &(&other.linear[b][g] * &self.linear[g][a]);
                    s -= &(&self.linear[b][g] * &other.linear[g][a]);
                }
                out.linear[b][a] = s;
            }
        }
        out
    }

    /// Applies the operator to a single monomial.
    fn apply(&self, m: &[u8]) -> Vec<(Mono, GaussRational)> {
        let mut out: Vec<(Mono, GaussRational)> = Vec::new();
        if !self.scalar.is_zero() {
            out.push((SmallVec::from_slice(m), self.scalar.clone()));
        }
        for (b, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let eb = GaussRational::from_int(e as i64);
            let mut d: Mono = SmallVec::from_slice(m);
            d[b] -= 1;
            if !self.shift[b].is_zero() {
                out.push((d.clone(), &self.shift[b] * &eb));
            }
            for (a, c) in self.linear[b].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut n = d.clone();
                n[a] += 1;
                out.push((n, c * &eb));
            }
        }
        out
    }
}

/// How each `H`-generator acts on the coordinates.
#[derive(Clone, Debug)]
pub enum GenAction {
    /// `ρ(L)^β_α`, acting as `−Σ ρ(L)^β_α x^α ∂_β`.
    Matrix(Vec<Vec<GaussRational>>),
    /// `∂_ν` for the coordinate with this index.
    Derivative(usize),
}

type ActionCache = DashMap<(LegWord, Mono), Arc<Vec<(Mono, GaussRational)>>>;

/// Representation data for the coordinate action.
pub struct RepData {
    coords: Vec<String>,
    ops: Vec<AffineOp>,
    cache: ActionCache,
}

impl Clone for RepData {
    fn clone(&self) -> Self {
        RepData { coords: self.coords.clone(), ops: self.ops.clone(), cache: DashMap::new() }
    }
}

impl std::fmt::Debug for RepData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RepData").field("coords", &self.coords).field("ops", &self.ops).finish()
    }
}

/// A failed representation-property instance: `op([X, Y]) − [op(X), op(Y)]`.
#[derive(Clone, Debug)]
pub struct RepViolation {
    pub left: String,
    pub right: String,
    pub residual: AffineOp,
}

impl RepData {
    /// Builds and validates the representation property against the bracket
    /// data of `b`. `actions[k]` describes generator `k` of `b`.
    pub fn new(b: &Bialgebra, coords: Vec<String>, actions: Vec<GenAction>) -> Result<Self> {
        let rep = Self::new_unchecked(b, coords, actions)?;
        if let Some(v) = rep.representation_violations(b).first() {
            return Err(Error::InvalidRepresentation(format!(
                "[{}, {}] is not represented by the operator commutator",
                v.left, v.right
            )));
        }
        Ok(rep)
    }

    /// Builds the operators without checking the representation property;
    /// only shapes are validated. Used for negative controls.
    pub fn new_unchecked(b: &Bialgebra, coords: Vec<String>, actions: Vec<GenAction>) -> Result<Self> {
        let rs = b.rs();
        let m = coords.len();
        if actions.len() != rs.len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} generator actions given for {} generators",
                actions.len(),
                rs.len()
            )));
        }
        let mut ops = Vec::with_capacity(actions.len());
        for (k, act) in actions.into_iter().enumerate() {
            let name = rs.name(k as u8);
            let mut op = AffineOp::zero(m);
            match act {
                GenAction::Matrix(mat) => {
                    if mat.len() != m || mat.iter().any(|r| r.len() != m) {
                        return Err(Error::InvalidRepresentation(format!("matrix of `{name}` is not {m}×{m}")));
                    }
                    for (bi, row) in mat.iter().enumerate() {
                        for (ai, c) in row.iter().enumerate() {
                            op.linear[bi][ai] = -c;
                        }
                    }
                }
                GenAction::Derivative(nu) => {
                    if nu >= m {
                        return Err(Error::InvalidRepresentation(format!("`{name}` differentiates a missing coordinate")));
                    }
                    if rs.sort(k as u8) != Sort::Momentum {
                        return Err(Error::InvalidRepresentation(format!("`{name}` is not a momentum")));
                    }
                    op.shift[nu] = GaussRational::one();
                }
            }
            ops.push(op);
        }
        Ok(RepData { coords, ops, cache: DashMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn op(&self, gen: u8) -> &AffineOp {
        &self.ops[gen as usize]
    }

    /// Every generator pair whose bracket is not represented faithfully.
    pub fn representation_violations(&self, b: &Bialgebra) -> Vec<RepViolation> {
        let rs = b.rs();
        let n = rs.len() as u8;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let br = rs.bracket(x, y);
                let mut lhs = AffineOp::zero(self.dim());
                for (k, c) in &br.linear {
                    lhs.axpy(c, &self.ops[*k as usize]);
                }
                lhs.scalar += &br.central;
                let rhs = self.ops[x as usize].commutator(&self.ops[y as usize]);
                let mut diff = lhs;
                diff.axpy(&GaussRational::from_int(-1), &rhs);
                if !diff.is_zero() {
                    out.push(RepViolation {
                        left: rs.name(x).to_string(),
                        right: rs.name(y).to_string(),
                        residual: diff,
                    });
                }
            }
        }
        out
    }

    /// `w ⊳ x^m` for a sorted word, composed right to left, memoized.
    pub fn act_word_mono(&self, w: &[u8], m: &[u8]) -> Arc<Vec<(Mono, GaussRational)>> {
        if w.is_empty() {
            return Arc::new(vec![(SmallVec::from_slice(m), GaussRational::one())]);
        }
        let key = (LegWord::from_slice(w), Mono::from_slice(m));
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let inner = self.act_word_mono(&w[1..], m);
        let op = &self.ops[w[0] as usize];
        let mut acc: BTreeMap<Mono, GaussRational> = BTreeMap::new();
        for (n, c) in inner.iter() {
            for (k, d) in op.apply(n) {
                let e = acc.entry(k).or_insert_with(GaussRational::zero);
                *e += &(c * &d);
            }
        }
        let out: Arc<Vec<_>> = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.cache.insert(key, out.clone());
        out
    }

    /// `w ⊳ a` for a sorted single-leg word.
    pub fn act_word(&self, w: &[u8], a: &PolyCoord) -> PolyCoord {
        if w.is_empty() {
            return a.clone();
        }
        let mut out = PolyCoord::zero(a.order());
        for (m, c) in a.terms() {
            for (n, d) in self.act_word_mono(w, m).iter() {
                out.add_term(n.clone(), c.scale(d));
            }
        }
        out
    }
}

/// A bialgebra together with its action on the coordinate algebra.
#[derive(Clone, Debug)]
pub struct ModuleAlgebra {
    pub bialg: Bialgebra,
    pub rep: RepData,
}

impl ModuleAlgebra {
    pub fn new(bialg: Bialgebra, rep: RepData) -> Self {
        ModuleAlgebra { bialg, rep }
    }

    pub fn order(&self) -> usize {
        self.bialg.order()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn one(&self) -> PolyCoord {
        PolyCoord::one(self.dim(), self.order())
    }

    pub fn coord(&self, mu: usize) -> PolyCoord {
        PolyCoord::coord(mu, self.dim(), self.order())
    }

    pub fn mono(&self, m: &[u8]) -> PolyCoord {
        PolyCoord::monomial(Mono::from_slice(m), TruncSeries::one(self.order()))
    }

    /// `p ⊳ a` for a single-leg `p ∈ H`.
    pub fn act(&self, p: &NCPoly, a: &PolyCoord) -> Result<PolyCoord> {
        if !p.is_single_leg() {
            return Err(Error::NotSingleLeg);
        }
        if p.terms().any(|(w, _)| w.iter().any(|g| g.idx as usize >= self.bialg.rs().len())) {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = PolyCoord::zero(a.order());
        for (w, c) in p.terms() {
            let lw: LegWord = w.iter().map(|g| g.idx).collect();
            out.add_assign(&self.rep.act_word(&lw, a).scale(c));
        }
        Ok(out)
    }

    /// `a ⋆_F b = (F̄₁⊳a)(F̄₂⊳b)`; the pointwise product when `f` is `None`.
    pub fn star(&self, f: Option<&Twist>, a: &PolyCoord, b: &PolyCoord) -> PolyCoord {
        match f {
            None => a.mul(b),
            Some(f) => {
                let mut out = PolyCoord::zero(a.order());
                for (l, r, c) in f.f_inv_terms() {
                    let la = self.rep.act_word(l, a);
                    if la.is_zero() {
                        continue;
                    }
                    let rb = self.rep.act_word(r, b);
                    if rb.is_zero() {
                        continue;
                    }
                    out.add_assign(&la.mul(&rb).scale(c));
                }
                out
            }
        }
    }

    /// Residuals of the module-algebra structure over sampled elements:
    /// Leibniz compatibility, composition `(pq)⊳a = p⊳(q⊳a)`, and degree
    /// bookkeeping per generator.
    pub fn check_module_algebra(&self, d: usize) -> Vec<CheckEntry> {
        let rs = self.bialg.rs();
        let n = rs.len() as u8;
        let mut words: Vec<LegWord> = (0..n).map(|g| LegWord::from_slice(&[g])).collect();
        for x in 0..n {
            for y in x..n {
                words.push(LegWord::from_slice(&[x, y]));
            }
        }
        let monos = monomials(self.dim(), d);
        let coords = self.rep.coords();
        let mut leib = Tally::new("module algebra L⊳(ab) = (L₁⊳a)(L₂⊳b)", "leibniz");
        for w in &words {
            let delta = coproduct_word(w);
            for ma in &monos {
                for mb in &monos {
                    let a = self.mono(ma);
                    let b = self.mono(mb);
                    let lhs = self.rep.act_word(w, &a.mul(&b));
                    let mut rhs = PolyCoord::zero(self.order());
                    for (l, r, c) in &delta {
                        rhs.add_assign(&self.rep.act_word(l, &a).mul(&self.rep.act_word(r, &b)).scale_scalar(c));
                    }
                    let res = lhs.sub(&rhs);
                    leib.record(&res, || {
                        format!("L = {}, a = {}, b = {}", rs.fmt_word(&crate::ncpoly::in_leg(w, 0)), a.display(coords), b.display(coords))
                    });
                }
            }
        }
        let mut comp = Tally::new("action composes (pq)⊳a = p⊳(q⊳a)", "x1");
        for x in 0..n {
            for y in 0..n {
                let prod = rs.mul_words(&[x], &[y]);
                for m in &monos {
                    let a = self.mono(m);
                    let mut lhs = PolyCoord::zero(self.order());
                    for (w, c) in &prod {
                        lhs.add_assign(&self.rep.act_word(w, &a).scale_scalar(c));
                    }
                    let rhs = self.rep.act_word(&[x], &self.rep.act_word(&[y], &a));
                    let res = lhs.sub(&rhs);
                    comp.record(&res, || format!("p = {}, q = {}, a = {}", rs.name(x), rs.name(y), a.display(coords)));
                }
            }
        }
        let mut deg = Tally::new("degree shift per generator", "x3");
        for g in 0..n {
            let shift: i64 = match rs.sort(g) {
                Sort::Momentum => -1,
                _ => 0,
            };
            for m in &monos {
                let out = self.rep.act_word(&[g], &self.mono(m));
                let bad: PolyCoord = {
                    let mut p = PolyCoord::zero(self.order());
                    for (k, c) in out.terms() {
                        if mono_degree(k) as i64 != mono_degree(m) as i64 + shift {
                            p.add_term(k.clone(), c.clone());
                        }
                    }
                    p
                };
                deg.record(&bad, || format!("{} on {}", rs.name(g), fmt_mono(m, coords)));
            }
        }
        vec![leib.finish(), comp.finish(), deg.finish()]
    }

    /// `a ⋆ b − (R₂⊳b) ⋆ (R₁⊳a)` over monomial pairs of degree `≤ d`.
    pub fn check_braided_commutativity(&self, f: Option<&Twist>, r: &NCPoly, d: usize) -> CheckEntry {
        let split = r.sweedler(2);
        let monos = monomials(self.dim(), d);
        let coords = self.rep.coords();
        let mut t = Tally::new("braided commutativity a⋆b = (R₂⊳b)⋆(R₁⊳a)", "bcom");
        for ma in &monos {
            for mb in &monos {
                let res = self.braided_residual(f, &split, &self.mono(ma), &self.mono(mb));
                t.record(&res, || format!("a = {}, b = {}", fmt_mono(ma, coords), fmt_mono(mb, coords)));
            }
        }
        t.finish()
    }

    fn braided_residual(&self, f: Option<&Twist>, split: &[(Vec<LegWord>, TruncSeries)], a: &PolyCoord, b: &PolyCoord) -> PolyCoord {
        let lhs = self.star(f, a, b);
        let mut rhs = PolyCoord::zero(self.order());
        for (parts, c) in split {
            let r1a = self.rep.act_word(&parts[0], a);
            let r2b = self.rep.act_word(&parts[1], b);
            rhs.add_assign(&self.star(f, &r2b, &r1a).scale(c));
        }
        lhs.sub(&rhs)
    }

    /// `x^μ ⋆ x^ν − x^ν ⋆ x^μ` for all coordinate pairs.
    pub fn star_commutator_table(&self, f: Option<&Twist>) -> Vec<Vec<PolyCoord>> {
        let m = self.dim();
        (0..m)
            .map(|mu| {
                (0..m)
                    .map(|nu| {
                        let (a, b) = (self.coord(mu), self.coord(nu));
                        self.star(f, &a, &b).sub(&self.star(f, &b, &a))
                    })
                    .collect()
            })
            .collect()
    }

    /// Right coaction `δ(a) = (R₂⊳a) ⊗ R₁`, stored as `(R₂⊳a) ⋊ R₁`.
    pub fn coaction(&self, r: &NCPoly, a: &PolyCoord) -> SmashElem {
        let mut out = SmashElem::zero(self.order());
        for (parts, c) in r.sweedler(2) {
            let r2a = self.rep.act_word(&parts[1], a).scale(&c);
            out.add_assign(&SmashElem::from_poly_word(&r2a, &parts[0]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{Gen, RewriteSystem};
    use crate::Sort;

    fn q(n: i64) -> GaussRational {
        n.into()
    }

    /// A single dilation `D` with momenta `P0`, `P1` on two coordinates.
    fn dil(order: usize) -> ModuleAlgebra {
        let rs = RewriteSystem::new(
            vec![("D".into(), Sort::Symmetry), ("P0".into(), Sort::Momentum), ("P1".into(), Sort::Momentum)],
            &[
                ("D".into(), "P0".into(), vec![("P0".into(), q(1))], q(0)),
                ("D".into(), "P1".into(), vec![("P1".into(), q(1))], q(0)),
            ],
        )
        .unwrap();
        let b = Bialgebra::new(Arc::new(rs), order).unwrap();
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let rep = RepData::new(
            &b,
            vec!["x0".into(), "x1".into()],
            vec![GenAction::Matrix(id), GenAction::Derivative(0), GenAction::Derivative(1)],
        )
        .unwrap();
        ModuleAlgebra::new(b, rep)
    }

    #[test]
    fn generators_act_as_vector_fields() {
        let ma = dil(2);
        let d = ma.bialg.gen("D").unwrap();
        let p0 = ma.bialg.gen("P0").unwrap();
        let x0 = ma.coord(0);
        assert_eq!(ma.act(&d, &x0).unwrap(), x0.scale_scalar(&q(-1)));
        assert_eq!(ma.act(&p0, &x0).unwrap(), ma.one());
        assert!(ma.act(&p0, &ma.coord(1)).unwrap().is_zero());
        // P0 ⊳ (x0 x1) = x1
        assert_eq!(ma.act(&p0, &x0.mul(&ma.coord(1))).unwrap(), ma.coord(1));
    }

    #[test]
    fn module_algebra_checks_pass_and_corruption_is_caught() {
        let ma = dil(2);
        assert!(ma.check_module_algebra(2).iter().all(CheckEntry::passed));
        let bad = vec![vec![q(2), q(0)], vec![q(0), q(1)]];
        let rep = RepData::new(
            &ma.bialg,
            vec!["x0".into(), "x1".into()],
            vec![GenAction::Matrix(bad.clone()), GenAction::Derivative(0), GenAction::Derivative(1)],
        );
        assert!(matches!(rep, Err(Error::InvalidRepresentation(_))));
        let rep = RepData::new_unchecked(
            &ma.bialg,
            vec!["x0".into(), "x1".into()],
            vec![GenAction::Matrix(bad), GenAction::Derivative(0), GenAction::Derivative(1)],
        )
        .unwrap();
        let broken = ModuleAlgebra::new(ma.bialg.clone(), rep);
        let entries = broken.check_module_algebra(2);
        assert!(entries[0].passed());
        assert!(!entries[1].passed());
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 3).len(), 20);
        assert_eq!(monomials(1, 0), vec![Mono::from_slice(&[0])]);
    }

    #[test]
    fn moyal_like_twist_gives_constant_commutator() {
        let n = 3;
        let ma = dil(n);
        let rs = ma.bialg.rs();
        let (p0, p1) = (rs.index("P0").unwrap(), rs.index("P1").unwrap());
        let c = TruncSeries::monomial(GaussRational::from_frac(-1, 2) * GaussRational::i(), 1, n);
        let mut t = NCPoly::zero(n);
        t.add_term([Gen::new(1, p0), Gen::new(2, p1)].into_iter().collect(), c.clone());
        t.add_term([Gen::new(1, p1), Gen::new(2, p0)].into_iter().collect(), -&c);
        let f = Twist::from_exponent(&ma.bialg, &t).unwrap();
        let table = ma.star_commutator_table(Some(&f));
        let ih = PolyCoord::monomial(Mono::from_slice(&[0, 0]), TruncSeries::monomial(GaussRational::i(), 1, n));
        assert_eq!(table[0][1], ih);
        assert!(table[0][0].is_zero());
        let r = crate::hopf::r_matrix_from_twist(&ma.bialg, &f);
        assert!(ma.check_braided_commutativity(Some(&f), &r, 2).passed());
        assert!(!ma.check_braided_commutativity(Some(&f), &ma.bialg.one(), 2).passed());
    }
}
