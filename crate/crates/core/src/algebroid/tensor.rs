//! Elements of `M ⊗_A M` and `M ⊗_A M ⊗_A M` in right-leg-trivial canonical form.

use std::collections::BTreeMap;

use crate::ncpoly::{in_leg, LegWord, RewriteSystem};
use crate::residual::Residual;
use crate::scalars::TruncSeries;
use crate::smash::SmashElem;

/// `Σ m_J ⊗_A (1⋊J₁) ⊗_A … ⊗_A (1⋊J_k)`, keyed by the pure right words.
///
/// Every class in the balanced tensor product has exactly one such
/// representative, so equality is coefficient comparison.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorOverA {
    legs: usize,
    order: usize,
    terms: BTreeMap<Vec<LegWord>, SmashElem>,
}

impl TensorOverA {
    pub fn zero(legs: usize, order: usize) -> Self {
        assert!(legs >= 2, "a balanced tensor needs at least two legs");
        TensorOverA { legs, order, terms: BTreeMap::new() }
    }

    /// Builds a tensor whose right legs are already pure, e.g. `(1⋊F₁)⊗(1⋊F₂)`.
    pub fn from_pure(legs: usize, order: usize, parts: impl IntoIterator<Item = (SmashElem, Vec<LegWord>)>) -> Self {
        let mut t = Self::zero(legs, order);
        for (left, right) in parts {
            t.add_canonical(right, left);
        }
        t
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LegWord>, &SmashElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.values().map(SmashElem::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_canonical(&mut self, right: Vec<LegWord>, left: SmashElem) {
        debug_assert_eq!(right.len() + 1, self.legs);
        if left.is_zero() {
            return;
        }
        match self.terms.entry(right) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(left);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&left);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.legs, other.legs);
        for (k, v) in &other.terms {
            self.add_canonical(k.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_canonical(k.clone(), v.neg());
        }
        out
    }

    pub fn scale(&self, c: &TruncSeries) -> Self {
        let mut out = Self::zero(self.legs, self.order);
        for (k, v) in &self.terms {
            out.add_canonical(k.clone(), v.scale(c));
        }
        out
    }

    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(SmashElem::valuation).min()
    }

    pub fn display(&self, coords: &[String], rs: &RewriteSystem) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (right, left) in &self.terms {
            let mut s = format!("[{}]", left.display(coords, rs));
            for w in right {
                s.push_str(" ⊗ 1⋊");
                s.push_str(&rs.fmt_word(&in_leg(w, 0)));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl std::fmt::Debug for TensorOverA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Residual for TensorOverA {
    fn is_zero(&self) -> bool {
        TensorOverA::is_zero(self)
    }
    fn valuation(&self) -> Option<usize> {
        TensorOverA::valuation(self)
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}
