//! Free-field ambients: Heisenberg generators, Gram matrix, lattice and cocycle.

use num_traits::{One, Zero};

use super::state::{FockState, Gen, LatticePoint};
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, Q};

/// A free-field frame. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    names: Vec<String>,
    gram: Vec<Vec<Q>>,
    lattice_basis: Vec<LatticePoint>,
    /// `odd[i][j]` is set when ε(a_i, a_j) = -1.
    odd: Vec<Vec<bool>>,
    standard_lattice: bool,
    conformal: Option<FockState>,
    charge: Option<LatticePoint>,
}

impl Frame {
    /// Builds a frame. The default cocycle is ε(a_i, a_j) = 1 for i ≤ j and
    /// (-1)^{⟨a_i,a_j⟩ + ⟨a_i,a_i⟩⟨a_j,a_j⟩} for i > j.
    pub fn new(names: Vec<String>, gram: Vec<Vec<Q>>, lattice_basis: Vec<LatticePoint>) -> Result<Self> {
        let n = names.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("gram matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Parse("gram matrix is not symmetric".into()));
                }
            }
        }
        if lattice_basis.iter().any(|b| b.dim() != n) {
            return Err(Error::Parse("lattice basis vector of wrong dimension".into()));
        }
        let mut odd = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..i {
                let s = &gram[i][j] + &gram[i][i] * &gram[j][j];
                if !s.is_integer() {
                    return Err(Error::NonIntegral(format!(
                        "cocycle needs integral pairings between {} and {}",
                        names[i], names[j]
                    )));
                }
                odd[i][j] = s.numer() % 2u32 != 0.into();
            }
        }
        let standard_lattice = lattice_basis.len() == n
            && lattice_basis.iter().enumerate().all(|(i, b)| *b == LatticePoint::unit(n, i));
        Ok(Self { names, gram, lattice_basis, odd, standard_lattice, conformal: None, charge: None })
    }

    /// Replaces the cocycle by an arbitrary bimultiplicative one given by its
    /// sign bits on basis vectors. The commutator rule
    /// ε(a,b)ε(b,a) = (-1)^{⟨a,b⟩ + ⟨a,a⟩⟨b,b⟩} is enforced.
    pub fn with_cocycle_bits(mut self, bits: Vec<Vec<bool>>) -> Result<Self> {
        let n = self.dim();
        if bits.len() != n || bits.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("cocycle table must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let s = &self.gram[i][j] + &self.gram[i][i] * &self.gram[j][j];
                let want = s.numer() % 2u32 != 0.into();
                if (bits[i][j] != bits[j][i]) != (want && i != j) {
                    return Err(Error::Incompatible(format!(
                        "cocycle violates the commutator rule at ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        self.odd = bits;
        Ok(self)
    }

    pub fn cocycle_bits(&self) -> &[Vec<bool>] {
        &self.odd
    }

    pub fn with_conformal(mut self, omega: FockState) -> Self {
        self.conformal = Some(omega);
        self
    }

    pub fn with_charge(mut self, h: LatticePoint) -> Self {
        self.charge = Some(h);
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn lattice_basis(&self) -> &[LatticePoint] {
        &self.lattice_basis
    }

    pub fn conformal(&self) -> Option<&FockState> {
        self.conformal.as_ref()
    }

    pub fn charge_vector(&self) -> Option<&LatticePoint> {
        self.charge.as_ref()
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name)
    }

    /// ⟨a_g, a_h⟩.
    pub fn gen_pairing(&self, g: Gen, h: Gen) -> &Q {
        &self.gram[g][h]
    }

    pub fn pairing(&self, a: &LatticePoint, b: &LatticePoint) -> Q {
        let mut acc = Q::zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() && !self.gram[i][j].is_zero() {
                    acc += x * y * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// ⟨a_g, v⟩.
    pub fn pair_gen(&self, g: Gen, v: &LatticePoint) -> Q {
        let mut acc = Q::zero();
        for (j, y) in v.0.iter().enumerate() {
            if !y.is_zero() && !self.gram[g][j].is_zero() {
                acc += y * &self.gram[g][j];
            }
        }
        acc
    }

    /// Parity of `e^γ`: ⟨γ,γ⟩ mod 2. Errors for non-integral norms.
    pub fn parity(&self, gamma: &LatticePoint) -> Result<bool> {
        let n = self.pairing(gamma, gamma);
        if !n.is_integer() {
            return Err(Error::NonIntegral(format!("norm of {gamma} is {n}")));
        }
        Ok(n.numer() % 2u32 != 0.into())
    }

    /// Coordinates of `v` in the lattice basis, if `v` lies in its ℚ-span.
    pub fn lattice_coords(&self, v: &LatticePoint) -> Option<Vec<Q>> {
        if self.standard_lattice {
            return Some(v.0.clone());
        }
        let cols: Vec<Vec<Q>> = self.lattice_basis.iter().map(|b| b.0.clone()).collect();
        let rows: Vec<Vec<Q>> = (0..self.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        if rows.first().is_none_or(|r| r.is_empty()) {
            return if v.is_zero() { Some(Vec::new()) } else { None };
        }
        MatrixQ::from_rows(&rows).solve(&v.0)
    }

    /// Checks that `γ` may label a field: integral combination of the
    /// lattice basis with integral generator coordinates.
    pub fn check_field_exponent(&self, gamma: &LatticePoint) -> Result<()> {
        match self.lattice_coords(gamma) {
            Some(c) if c.iter().all(|x| x.is_integer()) && gamma.is_integral() => Ok(()),
            Some(_) => Err(Error::NonIntegral(format!("field exponent {gamma}"))),
            None => Err(Error::OutsideLattice(gamma.to_string())),
        }
    }

    pub fn check_module_exponent(&self, delta: &LatticePoint) -> Result<()> {
        if self.lattice_coords(delta).is_some() {
            Ok(())
        } else {
            Err(Error::OutsideLattice(delta.to_string()))
        }
    }

    /// Cocycle sign ε(γ, δ) for integral `γ`. A module exponent `δ` is
    /// reduced to the coset representative with coordinates `⌊δ_j⌋`, so the
    /// sign is bimultiplicative on the integral lattice and consistent on
    /// every coset.
    pub fn cocycle(&self, gamma: &LatticePoint, delta: &LatticePoint) -> Q {
        let mut parity = false;
        for i in 0..self.dim() {
            if gamma.0[i].is_zero() {
                continue;
            }
            let gi = gamma.0[i].numer();
            for j in 0..self.dim() {
                if self.odd[i][j] {
                    let dj = delta.0[j].floor();
                    let prod = gi * dj.numer();
                    if prod % 2 != 0.into() {
                        parity = !parity;
                    }
                }
            }
        }
        if parity {
            -Q::one()
        } else {
            Q::one()
        }
    }

    /// Sign table ε(a_i, a_j) on basis vectors.
    pub fn cocycle_table(&self) -> Vec<Vec<i8>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| if self.odd[i][j] { -1 } else { 1 }).collect())
            .collect()
    }

    /// Vector `Σ c_i a_i` from named coefficients.
    pub fn vector(&self, coeffs: &[(&str, Q)]) -> LatticePoint {
        let mut v = LatticePoint::zero(self.dim());
        for (name, c) in coeffs {
            let g = self.generator(name).unwrap_or_else(|| panic!("unknown generator {name}"));
            v.0[g] += c;
        }
        v
    }

    pub fn same_frame(&self, s: &FockState) -> Result<()> {
        if s.dim() == self.dim() || s.is_zero() {
            Ok(())
        } else {
            Err(Error::FrameMismatch(format!("state of dimension {} in frame of dimension {}", s.dim(), self.dim())))
        }
    }
}
