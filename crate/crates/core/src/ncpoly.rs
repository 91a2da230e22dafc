//! Noncommutative polynomials in PBW normal form.
//!
//! Elements of an enveloping algebra `U(g)[[h]]` and of its tensor powers are
//! stored as maps from sorted generator words to truncated series. Tensor
//! factors are encoded by a leg tag on every generator: leg 0 holds
//! single-leg elements, legs 1, 2, 3, … hold the factors of `H⊗H⊗…`.
//! Generators sitting in different legs commute exactly; inside one leg the
//! rewrite system reorders adjacent inversions with `X_b X_a = X_a X_b + [X_b, X_a]`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::{GaussRational, TruncSeries};

/// Generator blocks, in the order PBW words list them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Symmetry,
    Momentum,
    Coordinate,
}

impl Sort {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sort::Symmetry => "symmetry",
            Sort::Momentum => "momentum",
            Sort::Coordinate => "coordinate",
        }
    }
}

/// A generator occurrence: its tensor leg and its rank in the total order.
///
/// The derived ordering compares the leg first, then the rank, which is the
/// total order PBW words are sorted by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub leg: u8,
    pub idx: u8,
}

impl Gen {
    pub fn new(leg: u8, idx: u8) -> Self {
        Gen { leg, idx }
    }
}

/// Descriptive view of one generator of a rewrite system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub sort: Sort,
    pub leg: u8,
    pub rank: usize,
}

/// A word in (possibly several legs of) the generator alphabet.
pub type Word = SmallVec<[Gen; 8]>;

/// A word inside a single leg, as generator ranks.
pub type LegWord = SmallVec<[u8; 8]>;

/// A Lie-type correction: a linear combination of generators plus a central
/// multiple of the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElem {
    pub linear: Vec<(u8, GaussRational)>,
    pub central: GaussRational,
}

impl LieElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.central.is_zero() && self.linear.iter().all(|(_, c)| c.is_zero())
    }

    fn normalized(mut self) -> Self {
        let mut acc: BTreeMap<u8, GaussRational> = BTreeMap::new();
        for (g, c) in self.linear.drain(..) {
            *acc.entry(g).or_default() += &c;
        }
        self.linear = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self
    }

    fn neg(&self) -> Self {
        LieElem {
            linear: self.linear.iter().map(|(g, c)| (*g, -c)).collect(),
            central: -&self.central,
        }
    }
}

type GenProduct = Arc<Vec<(LegWord, GaussRational)>>;

/// Lie-type rewrite rules on a fixed, totally ordered alphabet.
///
/// Validated on construction (antisymmetry and Jacobi); immutable afterwards
/// apart from an internal product cache.
pub struct RewriteSystem {
    names: Vec<String>,
    sorts: Vec<Sort>,
    /// `brackets[b * n + a] = [X_b, X_a]`
    brackets: Vec<LieElem>,
    cache: DashMap<(LegWord, u8), GenProduct>,
}

impl fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem").field("names", &self.names).finish()
    }
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            names: self.names.clone(),
            sorts: self.sorts.clone(),
            brackets: self.brackets.clone(),
            cache: DashMap::new(),
        }
    }
}

/// Bracket data keyed by generator names, as supplied by presets and config files.
pub type NamedBracket = (String, String, Vec<(String, GaussRational)>, GaussRational);

impl RewriteSystem {
    /// Builds a rewrite system with generators ranked by sort (symmetry,
    /// momenta, coordinates), each block in declaration order.
    pub fn new(gens: Vec<(String, Sort)>, brackets: &[NamedBracket]) -> Result<Self> {
        let mut gens: Vec<(usize, (String, Sort))> = gens.into_iter().enumerate().collect();
        gens.sort_by_key(|(k, (_, s))| (*s, *k));
        Self::with_order(gens.into_iter().map(|(_, g)| g).collect(), brackets)
    }

    /// Builds a rewrite system keeping the supplied generator order.
    pub fn with_order(gens: Vec<(String, Sort)>, brackets: &[NamedBracket]) -> Result<Self> {
        let n = gens.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidRewriteSystem("too many generators".into()));
        }
        let (names, sorts): (Vec<String>, Vec<Sort>) = gens.into_iter().unzip();
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::InvalidRewriteSystem(format!("duplicate generator `{name}`")));
            }
        }
        let lookup = |s: &str| -> Result<u8> {
            names
                .iter()
                .position(|x| x == s)
                .map(|k| k as u8)
                .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
        };
        let mut table: Vec<Option<LieElem>> = vec![None; n * n];
        for (lhs, rhs, linear, central) in brackets {
            let (b, a) = (lookup(lhs)?, lookup(rhs)?);
            let mut elem = LieElem { linear: Vec::new(), central: central.clone() };
            for (g, c) in linear {
                elem.linear.push((lookup(g)?, c.clone()));
            }
            let elem = elem.normalized();
            if a == b {
                if !elem.is_zero() {
                    return Err(Error::InvalidRewriteSystem(format!("[{lhs}, {lhs}] must vanish")));
                }
                continue;
            }
            let (bi, ai) = (b as usize, a as usize);
            for (slot, value) in [(bi * n + ai, elem.clone()), (ai * n + bi, elem.neg())] {
                match &table[slot] {
                    Some(prev) if *prev != value => {
                        return Err(Error::InvalidRewriteSystem(format!(
                            "bracket [{lhs}, {rhs}] given inconsistently (antisymmetry violated)"
                        )));
                    }
                    _ => table[slot] = Some(value),
                }
            }
        }
        let rs = RewriteSystem {
            names,
            sorts,
            brackets: table.into_iter().map(Option::unwrap_or_default).collect(),
            cache: DashMap::new(),
        };
        if let Some((a, b, c, resid)) = rs.jacobi_violations().into_iter().next() {
            return Err(Error::InvalidRewriteSystem(format!(
                "Jacobi identity fails on ({}, {}, {}): residual {}",
                rs.names[a as usize],
                rs.names[b as usize],
                rs.names[c as usize],
                rs.fmt_lie(&resid)
            )));
        }
        Ok(rs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: u8) -> &str {
        &self.names[idx as usize]
    }

    pub fn sort(&self, idx: u8) -> Sort {
        self.sorts[idx as usize]
    }

    pub fn index(&self, name: &str) -> Result<u8> {
        self.names
            .iter()
            .position(|x| x == name)
            .map(|k| k as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.len())
            .map(|k| Generator {
                name: self.names[k].clone(),
                sort: self.sorts[k],
                leg: 0,
                rank: k,
            })
            .collect()
    }

    /// `[X_b, X_a]`.
    pub fn bracket(&self, b: u8, a: u8) -> &LieElem {
        &self.brackets[b as usize * self.len() + a as usize]
    }

    /// Bracket of two linear combinations of generators (central parts are
    /// ignored since they commute with everything).
    pub fn bracket_lie(&self, x: &LieElem, y: &LieElem) -> LieElem {
        let mut out = LieElem::zero();
        for (b, cb) in &x.linear {
            for (a, ca) in &y.linear {
                let br = self.bracket(*b, *a);
                let c = cb * ca;
                for (g, cg) in &br.linear {
                    out.linear.push((*g, &c * cg));
                }
                out.central += &(&c * &br.central);
            }
        }
        out.normalized()
    }

    /// Triples `a < b < c` whose Jacobi sum does not vanish.
    pub fn jacobi_violations(&self) -> Vec<(u8, u8, u8, LieElem)> {
        let n = self.len() as u8;
        let single = |g: u8| LieElem { linear: vec![(g, GaussRational::one())], central: GaussRational::zero() };
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut total = LieElem::zero();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = self.bracket(y, z).clone();
                        let t = self.bracket_lie(&single(x), &inner);
                        total.linear.extend(t.linear);
                        total.central += &t.central;
                    }
                    let total = total.normalized();
                    if !total.is_zero() {
                        bad.push((a, b, c, total));
                    }
                }
            }
        }
        bad
    }

    fn fmt_lie(&self, e: &LieElem) -> String {
        let mut s = String::new();
        for (g, c) in &e.linear {
            let _ = write!(s, "{}({c})·{}", if s.is_empty() { "" } else { " + " }, self.name(*g));
        }
        if !e.central.is_zero() {
            let _ = write!(s, "{}({})", if s.is_empty() { "" } else { " + " }, e.central);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Normal form of `w·g` for a sorted single-leg word `w`.
    fn mul_gen(&self, w: &[u8], g: u8) -> GenProduct {
        match w.last() {
            None => return Arc::new(vec![(SmallVec::from_slice(&[g]), GaussRational::one())]),
            Some(&l) if l <= g => {
                let mut v: LegWord = SmallVec::from_slice(w);
                v.push(g);
                return Arc::new(vec![(v, GaussRational::one())]);
            }
            _ => {}
        }
        let key: (LegWord, u8) = (SmallVec::from_slice(w), g);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let (prefix, l) = (&w[..w.len() - 1], w[w.len() - 1]);
        let mut acc: BTreeMap<LegWord, GaussRational> = BTreeMap::new();
        // w' l g = (w' g) l + w' [l, g]
        for (t, c) in self.mul_gen(prefix, g).iter() {
            for (u, d) in self.mul_gen(t, l).iter() {
                *acc.entry(u.clone()).or_default() += &(c * d);
            }
        }
        let br = self.bracket(l, g);
        for (k, ck) in &br.linear {
            for (u, d) in self.mul_gen(prefix, *k).iter() {
                *acc.entry(u.clone()).or_default() += &(ck * d);
            }
        }
        if !br.central.is_zero() {
            *acc.entry(SmallVec::from_slice(prefix)).or_default() += &br.central;
        }
        let out: GenProduct = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.cache.insert(key, out.clone());
        out
    }

    /// Normal form of the product of two sorted single-leg words.
    pub fn mul_words(&self, u: &[u8], v: &[u8]) -> Vec<(LegWord, GaussRational)> {
        let mut acc: Vec<(LegWord, GaussRational)> = vec![(SmallVec::from_slice(u), GaussRational::one())];
        for &g in v {
            let mut next: BTreeMap<LegWord, GaussRational> = BTreeMap::new();
            for (w, c) in &acc {
                for (t, d) in self.mul_gen(w, g).iter() {
                    *next.entry(t.clone()).or_default() += &(c * d);
                }
            }
            acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        acc
    }

    /// Normal form of the product of two sorted multi-leg words.
    pub fn mul_multileg(&self, u: &[Gen], v: &[Gen]) -> Vec<(Word, GaussRational)> {
        let mut legs: SmallVec<[u8; 4]> = u.iter().chain(v).map(|g| g.leg).collect();
        legs.sort_unstable();
        legs.dedup();
        let mut acc: Vec<(Word, GaussRational)> = vec![(Word::new(), GaussRational::one())];
        for leg in legs {
            let pick = |w: &[Gen]| -> LegWord { w.iter().filter(|g| g.leg == leg).map(|g| g.idx).collect() };
            let prods = self.mul_words(&pick(u), &pick(v));
            if prods.len() == 1 && prods[0].1.is_one() {
                for (w, _) in acc.iter_mut() {
                    w.extend(prods[0].0.iter().map(|&i| Gen::new(leg, i)));
                }
                continue;
            }
            let mut next = Vec::with_capacity(acc.len() * prods.len());
            for (w, c) in &acc {
                for (t, d) in &prods {
                    let mut nw = w.clone();
                    nw.extend(t.iter().map(|&i| Gen::new(leg, i)));
                    next.push((nw, c * d));
                }
            }
            acc = next;
        }
        acc
    }

    fn check_word(&self, w: &[Gen]) -> Result<()> {
        if w.iter().all(|g| (g.idx as usize) < self.len()) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Parses a generator name, optionally carrying a leg suffix `@k`.
    pub fn parse_gen(&self, s: &str) -> Result<Gen> {
        match s.split_once('@') {
            Some((name, leg)) => {
                let leg: u8 = leg.parse().map_err(|_| Error::Parse(format!("bad leg in `{s}`")))?;
                Ok(Gen::new(leg, self.index(name)?))
            }
            None => Ok(Gen::new(0, self.index(s)?)),
        }
    }

    pub fn fmt_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let legs: Vec<u8> = {
            let mut l: Vec<u8> = w.iter().map(|g| g.leg).collect();
            l.dedup();
            l
        };
        let multi = w.iter().any(|g| g.leg != 0);
        if !multi {
            return fmt_leg_word(self, w.iter().map(|g| g.idx));
        }
        let max_leg = *legs.iter().max().unwrap_or(&1);
        (1..=max_leg)
            .map(|leg| {
                let part: Vec<u8> = w.iter().filter(|g| g.leg == leg).map(|g| g.idx).collect();
                if part.is_empty() {
                    "1".to_string()
                } else {
                    fmt_leg_word(self, part.into_iter())
                }
            })
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

fn fmt_leg_word(rs: &RewriteSystem, it: impl Iterator<Item = u8>) -> String {
    let mut runs: Vec<(u8, usize)> = Vec::new();
    for g in it {
        match runs.last_mut() {
            Some((h, k)) if *h == g => *k += 1,
            _ => runs.push((g, 1)),
        }
    }
    runs.iter()
        .map(|&(g, k)| if k == 1 { rs.name(g).to_string() } else { format!("{}^{k}", rs.name(g)) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Which adjacent inversion the step-by-step rewriter resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn inversions(w: &[Gen]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// Termination measure of the rewriter: word length, then inversion count.
pub fn rewrite_measure(w: &[Gen]) -> (usize, usize) {
    (w.len(), inversions(w))
}

/// Applies one rewrite step to `w`, resolving the adjacent inversion chosen
/// by `strategy`. Returns `None` when `w` is already sorted.
pub fn rewrite_step(w: &[Gen], rs: &RewriteSystem, strategy: Strategy) -> Option<Vec<(Word, GaussRational)>> {
    let mut positions = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
    let i = match strategy {
        Strategy::Leftmost => positions.next()?,
        Strategy::Rightmost => positions.next_back()?,
    };
    let (b, a) = (w[i], w[i + 1]);
    let mut swapped: Word = SmallVec::from_slice(w);
    swapped.swap(i, i + 1);
    let mut out = vec![(swapped, GaussRational::one())];
    if a.leg == b.leg {
        let br = rs.bracket(b.idx, a.idx);
        for (k, c) in &br.linear {
            let mut nw: Word = SmallVec::from_slice(&w[..i]);
            nw.push(Gen::new(a.leg, *k));
            nw.extend_from_slice(&w[i + 2..]);
            out.push((nw, c.clone()));
        }
        if !br.central.is_zero() {
            let mut nw: Word = SmallVec::from_slice(&w[..i]);
            nw.extend_from_slice(&w[i + 2..]);
            out.push((nw, br.central.clone()));
        }
    }
    Some(out)
}

/// Normal form of an arbitrary word by explicit step-by-step rewriting.
///
/// This is the slow reference route; products of normal words go through
/// [`RewriteSystem::mul_multileg`].
pub fn normal_form_by_rewriting(word: &[Gen], rs: &RewriteSystem, strategy: Strategy, order: usize) -> Result<NCPoly> {
    rs.check_word(word)?;
    let mut pending: BTreeMap<Word, GaussRational> = BTreeMap::new();
    pending.insert(SmallVec::from_slice(word), GaussRational::one());
    let mut done: BTreeMap<Word, GaussRational> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        match rewrite_step(&w, rs, strategy) {
            None => *done.entry(w).or_default() += &c,
            Some(succ) => {
                for (nw, d) in succ {
                    debug_assert!(rewrite_measure(&nw) < rewrite_measure(&w));
                    *pending.entry(nw).or_default() += &(&c * &d);
                }
            }
        }
    }
    let mut p = NCPoly::zero(order);
    for (w, c) in done {
        p.add_term(w, TruncSeries::constant(c, order));
    }
    Ok(p)
}

/// PBW normal form of a generator word (fast route).
pub fn normal_form(word: &[Gen], rs: &RewriteSystem, order: usize) -> Result<NCPoly> {
    rs.check_word(word)?;
    let mut acc = NCPoly::one(order);
    for g in word {
        acc = acc.mul(&NCPoly::generator(*g, order), rs)?;
    }
    Ok(acc)
}

/// Element of `U(g)[[h]]^{⊗k}` in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    order: usize,
    terms: BTreeMap<Word, TruncSeries>,
}

impl NCPoly {
    pub fn zero(order: usize) -> Self {
        NCPoly { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::scalar(TruncSeries::one(order))
    }

    pub fn scalar(c: TruncSeries) -> Self {
        let mut p = Self::zero(c.order());
        p.add_term(Word::new(), c);
        p
    }

    pub fn generator(g: Gen, order: usize) -> Self {
        let mut p = Self::zero(order);
        p.add_term(SmallVec::from_slice(&[g]), TruncSeries::one(order));
        p
    }

    /// A single already-sorted word with coefficient `c`.
    pub fn from_sorted_word(w: Word, c: TruncSeries) -> Self {
        debug_assert!(w.windows(2).all(|p| p[0] <= p[1]), "word not sorted");
        let mut p = Self::zero(c.order());
        p.add_term(w, c);
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &TruncSeries)> {
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

    pub fn coeff(&self, w: &[Gen]) -> TruncSeries {
        self.terms.get(w).cloned().unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    /// Adds `c·w` for a sorted word `w`.
    pub fn add_term(&mut self, w: Word, c: TruncSeries) {
        assert_eq!(c.order(), self.order, "series order mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly { order: self.order, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &TruncSeries) -> Self {
        let mut out = Self::zero(self.order);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &GaussRational) -> Self {
        let mut out = Self::zero(self.order);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d.scale(c));
        }
        out
    }

    /// Legs used by any term (0 for single-leg elements).
    pub fn legs(&self) -> Vec<u8> {
        let mut l: Vec<u8> = self.terms.keys().flat_map(|w| w.iter().map(|g| g.leg)).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn is_single_leg(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|g| g.leg == 0))
    }

    fn check_alphabet(&self, rs: &RewriteSystem) -> Result<()> {
        self.terms.keys().try_for_each(|w| rs.check_word(w))
    }

    pub fn mul(&self, other: &Self, rs: &RewriteSystem) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        self.check_alphabet(rs)?;
        other.check_alphabet(rs)?;
        Ok(self.mul_unchecked(other, rs))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self, rs: &RewriteSystem) -> Self {
        let mut out = Self::zero(self.order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a * b;
                if c.is_zero() {
                    continue;
                }
                for (w, s) in rs.mul_multileg(u, v) {
                    let term = if s.is_one() { c.clone() } else { c.scale(&s) };
                    out.add_term(w, term);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self, rs: &RewriteSystem) -> Result<Self> {
        Ok(self.mul(other, rs)?.sub(&other.mul(self, rs)?))
    }

    /// `Σ_{k=0}^{N} t^k / k!`; requires `t` to vanish at order `h^0`.
    pub fn exp_truncated(&self, rs: &RewriteSystem) -> Result<Self> {
        if self.terms.values().any(|c| !c.coeff(0).is_zero()) {
            return Err(Error::ConstantPart);
        }
        self.check_alphabet(rs)?;
        let mut result = Self::one(self.order);
        let mut term = Self::one(self.order);
        for k in 1..=self.order {
            term = term.mul_unchecked(self, rs).scale_scalar(&GaussRational::from_frac(1, k as i64));
            if term.is_zero() {
                break;
            }
            result.add_assign(&term);
        }
        Ok(result)
    }

    /// Inverse of an element whose constant-order part is the unit:
    /// `Σ_k (1 − p)^k`.
    pub fn inverse_unipotent(&self, rs: &RewriteSystem) -> Result<Self> {
        let one = Self::one(self.order);
        let delta = one.sub(&self.h0_part());
        if !delta.is_zero() {
            return Err(Error::NotUnipotent);
        }
        let x = one.sub(self);
        let mut result = one.clone();
        let mut power = one;
        for _ in 1..=self.order {
            power = power.mul_unchecked(&x, rs);
            if power.is_zero() {
                break;
            }
            result.add_assign(&power);
        }
        Ok(result)
    }

    /// The `h^0` component.
    pub fn h0_part(&self) -> Self {
        self.h_part(0)
    }

    /// The coefficient of `h^k`, returned as an element with `h`-free coefficients.
    pub fn h_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        if k > self.order {
            return out;
        }
        for (w, c) in &self.terms {
            out.add_term(w.clone(), TruncSeries::constant(c.coeff(k).clone(), self.order));
        }
        out
    }

    /// Lowest power of `h` carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(TruncSeries::valuation).min()
    }

    /// Moves a single-leg element into `target` of an `n_legs` tensor power.
    pub fn leg_embed(&self, target: usize, n_legs: usize) -> Result<Self> {
        if !self.is_single_leg() {
            return Err(Error::NotSingleLeg);
        }
        if target == 0 || target > n_legs {
            return Err(Error::LegOutOfRange { leg: target, legs: n_legs });
        }
        let mut out = Self::zero(self.order);
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|g| Gen::new(target as u8, g.idx)).collect(), c.clone());
        }
        Ok(out)
    }

    /// Renames legs through an injective map (`map[old] = new`), e.g. `[0, 2, 1]`
    /// swaps the two factors of a two-leg element.
    pub fn relabel_legs(&self, map: &[u8]) -> Result<Self> {
        let mut seen: Vec<u8> = map.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidTwist("leg relabelling must be injective".into()));
        }
        let mut out = Self::zero(self.order);
        for (w, c) in &self.terms {
            let mut nw: Word = Word::with_capacity(w.len());
            for g in w {
                let leg = *map.get(g.leg as usize).ok_or(Error::LegOutOfRange {
                    leg: g.leg as usize,
                    legs: map.len().saturating_sub(1),
                })?;
                nw.push(Gen::new(leg, g.idx));
            }
            // cross-leg generators commute; order within a leg is preserved
            nw.sort_by_key(|g| g.leg);
            out.add_term(nw, c.clone());
        }
        Ok(out)
    }

    /// Leg-wise split of every term, for Sweedler-style iteration.
    /// `parts[k]` is the word sitting in leg `k + 1`.
    pub fn sweedler(&self, n_legs: usize) -> Vec<(Vec<LegWord>, TruncSeries)> {
        self.terms
            .iter()
            .map(|(w, c)| {
                let mut parts = vec![LegWord::new(); n_legs];
                for g in w {
                    parts[(g.leg as usize).saturating_sub(1)].push(g.idx);
                }
                (parts, c.clone())
            })
            .collect()
    }

    pub fn display(&self, rs: &RewriteSystem) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (w, c) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let cs = c.to_string();
            let ws = rs.fmt_word(w);
            if w.is_empty() {
                let _ = write!(s, "({cs})");
            } else if cs == "1" {
                s.push_str(&ws);
            } else {
                let _ = write!(s, "({cs})·{ws}");
            }
        }
        s
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Builds a sorted single-leg word from generator names.
pub fn word_of(rs: &RewriteSystem, names: &[&str]) -> Result<LegWord> {
    let mut w: LegWord = names.iter().map(|n| rs.index(n)).collect::<Result<_>>()?;
    if w.windows(2).any(|p| p[0] > p[1]) {
        w.sort_unstable();
    }
    Ok(w)
}

/// Lifts a single-leg word into `leg`.
pub fn in_leg(w: &[u8], leg: u8) -> Word {
    w.iter().map(|&i| Gen::new(leg, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRational {
        n.into()
    }

    /// gl(1) ⋉ R^2 toy: L acts diagonally as [L, P0] = 0, [L, P1] = P1.
    fn toy() -> RewriteSystem {
        RewriteSystem::new(
            vec![("P0".into(), Sort::Momentum), ("P1".into(), Sort::Momentum), ("L".into(), Sort::Symmetry)],
            &[("L".into(), "P1".into(), vec![("P1".into(), q(1))], q(0))],
        )
        .unwrap()
    }

    fn g(rs: &RewriteSystem, name: &str) -> Gen {
        rs.parse_gen(name).unwrap()
    }

    #[test]
    fn symmetry_sorts_before_momenta() {
        let rs = toy();
        assert_eq!(rs.names(), ["L", "P0", "P1"]);
        assert_eq!(rs.sort(0), Sort::Symmetry);
    }

    #[test]
    fn commuting_momenta_swap() {
        let rs = toy();
        let nf = normal_form(&[g(&rs, "P1"), g(&rs, "P0")], &rs, 2).unwrap();
        assert_eq!(nf.display(&rs), "P0 P1");
    }

    #[test]
    fn lie_correction_appears() {
        let rs = toy();
        // P1 L = L P1 - [L, P1] = L P1 - P1
        let nf = normal_form(&[g(&rs, "P1"), g(&rs, "L")], &rs, 2).unwrap();
        let expect = NCPoly::from_sorted_word(in_leg(&[0, 2], 0), TruncSeries::one(2))
            .sub(&NCPoly::generator(g(&rs, "P1"), 2));
        assert_eq!(nf, expect);
    }

    #[test]
    fn sorted_word_is_fixed() {
        let rs = toy();
        let w = [g(&rs, "L"), g(&rs, "P0"), g(&rs, "P1")];
        let nf = normal_form(&w, &rs, 1).unwrap();
        assert_eq!(nf.len(), 1);
        assert!(nf.coeff(&w).is_one());
    }

    #[test]
    fn unknown_generator_is_reported() {
        let rs = toy();
        assert!(matches!(rs.parse_gen("Q"), Err(Error::UnknownGenerator(_))));
        let bogus = [Gen::new(0, 9)];
        assert!(matches!(normal_form(&bogus, &rs, 1), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn antisymmetry_conflict_rejected() {
        let r = RewriteSystem::new(
            vec![("a".into(), Sort::Symmetry), ("b".into(), Sort::Symmetry)],
            &[
                ("a".into(), "b".into(), vec![("a".into(), q(1))], q(0)),
                ("b".into(), "a".into(), vec![("a".into(), q(1))], q(0)),
            ],
        );
        assert!(matches!(r, Err(Error::InvalidRewriteSystem(_))));
    }

    #[test]
    fn jacobi_failure_rejected() {
        // [a,b] = c, [b,c] = a, [c,a] = c is not a Lie algebra
        let r = RewriteSystem::new(
            vec![("a".into(), Sort::Symmetry), ("b".into(), Sort::Symmetry), ("c".into(), Sort::Symmetry)],
            &[
                ("a".into(), "b".into(), vec![("c".into(), q(1))], q(0)),
                ("b".into(), "c".into(), vec![("a".into(), q(1))], q(0)),
                ("c".into(), "a".into(), vec![("c".into(), q(1))], q(0)),
            ],
        );
        assert!(matches!(r, Err(Error::InvalidRewriteSystem(msg)) if msg.contains("Jacobi")));
    }

    #[test]
    fn exp_examples() {
        let rs = toy();
        let n = 2;
        assert_eq!(NCPoly::zero(n).exp_truncated(&rs).unwrap(), NCPoly::one(n));
        let x = NCPoly::generator(g(&rs, "L"), n).scale(&TruncSeries::monomial(q(1), 1, n));
        let e = x.exp_truncated(&rs).unwrap();
        let mut expect = NCPoly::one(n);
        expect.add_assign(&x);
        expect.add_term(in_leg(&[0, 0], 0), TruncSeries::monomial(GaussRational::from_frac(1, 2), 2, n));
        assert_eq!(e, expect);
        let bad = NCPoly::generator(g(&rs, "L"), n);
        assert!(matches!(bad.exp_truncated(&rs), Err(Error::ConstantPart)));
    }

    #[test]
    fn commutator_examples() {
        let rs = toy();
        let l = NCPoly::generator(g(&rs, "L"), 1);
        let p1 = NCPoly::generator(g(&rs, "P1"), 1);
        assert!(l.commutator(&l, &rs).unwrap().is_zero());
        assert_eq!(l.commutator(&p1, &rs).unwrap(), p1);
    }

    #[test]
    fn leg_embedding() {
        let rs = toy();
        let x = NCPoly::generator(g(&rs, "L"), 1);
        let e = x.leg_embed(2, 3).unwrap();
        assert_eq!(e.legs(), vec![2]);
        assert_eq!(NCPoly::one(1).leg_embed(1, 2).unwrap(), NCPoly::one(1));
        assert!(matches!(x.leg_embed(4, 3), Err(Error::LegOutOfRange { .. })));
        assert!(matches!(e.leg_embed(1, 3), Err(Error::NotSingleLeg)));
    }

    #[test]
    fn cross_leg_relabel_sorts_by_leg() {
        let rs = toy();
        let n = 1;
        let t = NCPoly::generator(Gen::new(1, 2), n).mul(&NCPoly::generator(Gen::new(2, 0), n), &rs).unwrap();
        let flipped = t.relabel_legs(&[0, 2, 1]).unwrap();
        assert_eq!(flipped.display(&rs), "L⊗P1");
    }
}
