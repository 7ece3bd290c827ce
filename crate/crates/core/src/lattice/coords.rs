//! Coordinates of Fock states in a growing monomial basis.

use std::collections::HashMap;

use super::state::{FockState, LatticePoint, Word};
use crate::exact::{Echelon, SparseVec};

/// Assigns column indices to monomials `word · e^γ` on first sight.
#[derive(Default, Clone, Debug)]
pub struct Coordinates {
    index: HashMap<(Word, LatticePoint), usize>,
    monomials: Vec<(Word, LatticePoint)>,
}

impl Coordinates {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&mut self, w: &Word, g: &LatticePoint) -> usize {
        if let Some(&i) = self.index.get(&(w.clone(), g.clone())) {
            return i;
        }
        let i = self.monomials.len();
        self.index.insert((w.clone(), g.clone()), i);
        self.monomials.push((w.clone(), g.clone()));
        i
    }

    pub fn vectorize(&mut self, s: &FockState) -> SparseVec {
        let mut v: SparseVec = s.iter().map(|(c, w, g)| (self.index_of(w, g), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn state(&self, dim: usize, v: &SparseVec) -> FockState {
        let mut s = FockState::zero(dim);
        for (i, c) in v {
            let (w, g) = &self.monomials[*i];
            s.add_term(c.clone(), w.clone(), g.clone());
        }
        s
    }
}

/// Maximal linearly independent subfamily, in input order.
pub fn independent(states: &[FockState]) -> Vec<FockState> {
    let mut coords = Coordinates::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for s in states {
        let v = coords.vectorize(s);
        if ech.insert(&v) {
            out.push(s.clone());
        }
    }
    out
}

/// Dimension of the span.
pub fn span_rank(states: &[FockState]) -> usize {
    independent(states).len()
}
