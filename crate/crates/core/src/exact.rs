//! Exact scalars, truncated bigraded series and sparse linear algebra over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always reduced with positive denominator.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact fraction: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Canonical fraction string: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_int(x: &Q) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Canonical representative of `x mod ℤ` in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn binomial(n: i64, k: i64) -> Q {
    // generalized binomial (n choose k) for integer n, k >= 0
    if k < 0 {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * qi(n - i) / qi(i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Bigraded series
// ---------------------------------------------------------------------------

/// Series `q^offset Σ a_{h,j} q^h z^j`, truncated above `max_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries {
    pub offset: Q,
    pub max_h: usize,
    terms: BTreeMap<(usize, i64), BigInt>,
}

impl BigradedSeries {
    pub fn zero(max_h: usize) -> Self {
        Self { offset: Q::zero(), max_h, terms: BTreeMap::new() }
    }

    pub fn one(max_h: usize) -> Self {
        let mut s = Self::zero(max_h);
        s.add_term(0, 0, BigInt::one());
        s
    }

    /// Polynomial in `q` only, from coefficient list starting at `q^0`.
    pub fn from_q_coeffs(coeffs: &[i64], max_h: usize) -> Self {
        let mut s = Self::zero(max_h);
        for (h, c) in coeffs.iter().enumerate() {
            s.add_term(h, 0, BigInt::from(*c));
        }
        s
    }

    pub fn with_offset(mut self, offset: Q) -> Self {
        self.offset = offset;
        self
    }

    pub fn add_term(&mut self, h: usize, j: i64, c: BigInt) {
        if h > self.max_h || c.is_zero() {
            return;
        }
        let e = self.terms.entry((h, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(h, j));
        }
    }

    pub fn coeff(&self, h: usize, j: i64) -> BigInt {
        self.terms.get(&(h, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `q^h` summed over all charges.
    pub fn q_coeff(&self, h: usize) -> BigInt {
        self.terms.range((h, i64::MIN)..=(h, i64::MAX)).map(|(_, c)| c.clone()).sum()
    }

    pub fn q_coeffs(&self) -> Vec<i64> {
        (0..=self.max_h).map(|h| self.q_coeff(h).to_i64().unwrap_or(i64::MAX)).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn truncate(mut self, max_h: usize) -> Self {
        self.max_h = self.max_h.min(max_h);
        let m = self.max_h;
        self.terms.retain(|(h, _), _| *h <= m);
        self
    }

    /// Truncated equality: offsets equal and coefficients agree up to the
    /// smaller of the two bounds.
    pub fn eq_truncated(&self, other: &Self) -> bool {
        let m = self.max_h.min(other.max_h);
        self.offset == other.offset
            && self.clone().truncate(m).terms == other.clone().truncate(m).terms
    }

    /// `∏_{n≥1} (1 - q^n)^{-k}`.
    pub fn eta_power_inverse(k: usize, max_h: usize) -> Self {
        let mut s = Self::one(max_h);
        for n in 1..=max_h {
            for _ in 0..k {
                s = s.mul_geometric(n, 0);
            }
        }
        s
    }

    /// Multiplies by `1/(1 - q^n z^j)`.
    pub fn mul_geometric(&self, n: usize, j: i64) -> Self {
        assert!(n > 0, "geometric factor needs positive q-degree");
        let mut out = Self::zero(self.max_h).with_offset(self.offset.clone());
        for ((h, c), a) in &self.terms {
            let mut t = 0usize;
            while h + t * n <= self.max_h {
                out.add_term(h + t * n, c + j * t as i64, a.clone());
                t += 1;
            }
        }
        out
    }

    /// Multiplies by `(1 - q^p)`.
    pub fn mul_one_minus(&self, p: usize) -> Self {
        let mut out = self.clone();
        for ((h, c), a) in &self.terms {
            out.add_term(h + p, *c, -a.clone());
        }
        out
    }
}

/// Series product: convolution of coefficients, offsets add, truncation at the
/// smaller bound.
pub fn series_product(a: &BigradedSeries, b: &BigradedSeries) -> BigradedSeries {
    let max_h = a.max_h.min(b.max_h);
    let mut out = BigradedSeries::zero(max_h).with_offset(&a.offset + &b.offset);
    for ((h1, j1), c1) in &a.terms {
        for ((h2, j2), c2) in &b.terms {
            if h1 + h2 <= max_h {
                out.add_term(h1 + h2, j1 + j2, c1 * c2);
            }
        }
    }
    out
}

impl Mul for &BigradedSeries {
    type Output = BigradedSeries;
    fn mul(self, rhs: Self) -> BigradedSeries {
        series_product(self, rhs)
    }
}

impl Add for &BigradedSeries {
    type Output = BigradedSeries;
    fn add(self, rhs: Self) -> BigradedSeries {
        assert_eq!(self.offset, rhs.offset, "adding series with different offsets");
        let mut out = BigradedSeries::zero(self.max_h.min(rhs.max_h)).with_offset(self.offset.clone());
        for (k, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(k.0, k.1, c.clone());
        }
        out
    }
}

impl fmt::Display for BigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) [", fmt_q(&self.offset))?;
        let mut first = true;
        for ((h, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} q^{h} z^{j}")?;
        }
        write!(f, "] + O(q^{})", self.max_h + 1)
    }
}

// ---------------------------------------------------------------------------
// Sparse linear algebra
// ---------------------------------------------------------------------------

/// Sparse vector: sorted `(column, value)` pairs, no explicit zeros.
pub type SparseVec = Vec<(usize, Q)>;

fn axpy(x: &SparseVec, a: &Q, y: &SparseVec) -> SparseVec {
    // x + a*y
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut k) = (0, 0);
    while i < x.len() || k < y.len() {
        if k >= y.len() || (i < x.len() && x[i].0 < y[k].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[k].0 < x[i].0 {
            out.push((y[k].0, a * &y[k].1));
            k += 1;
        } else {
            let v = &x[i].1 + a * &y[k].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

fn lookup(v: &SparseVec, col: usize) -> Option<&Q> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|i| &v[i].1)
}

/// Incremental reduced row echelon form with first-nonzero pivoting.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// rows with leading 1 at their pivot; fully reduced against each other
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows (does not insert).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut idx = 0;
        while idx < v.len() {
            let (col, val) = (v[idx].0, v[idx].1.clone());
            if let Some(&r) = self.pivots.get(&col) {
                v = axpy(&v, &(-val), &self.rows[r]);
                // entries before idx are untouched: pivot rows are reduced
            } else {
                idx += 1;
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pcol, lead) = (r[0].0, r[0].1.clone());
        let inv = lead.recip();
        let r: SparseVec = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Some(x) = lookup(row, pcol).cloned() {
                *row = axpy(row, &(-x), &r);
            }
        }
        self.pivots.insert(pcol, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

/// Exact sparse matrix over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.data[*i].push((j, x.clone()));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        lookup(&self.data[i], j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().fold(Q::zero(), |acc, (j, x)| acc + x * &v[*j]))
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: SparseVec = Vec::new();
            for (k, x) in r {
                acc = axpy(&acc, x, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.data {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the null space. One vector per non-pivot column, with a 1 in
    /// that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let e = self.echelon();
        let pivots = e.pivot_columns();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for row in e.rows() {
                let p = row[0].0;
                if let Some(x) = lookup(row, f) {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        // augmented rows; column `cols` carries b
        let mut e = Echelon::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut row = r.clone();
            if !b[i].is_zero() {
                row.push((self.cols, b[i].clone()));
            }
            e.insert(&row);
        }
        let mut x = vec![Q::zero(); self.cols];
        for row in e.rows() {
            let p = row[0].0;
            if p == self.cols {
                return None;
            }
            if let Some(v) = lookup(row, self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }
}

/// Dense helper used by tests and reports: `M` as rows of rationals.
pub fn to_dense(m: &MatrixQ) -> Vec<Vec<Q>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect()).collect()
}
