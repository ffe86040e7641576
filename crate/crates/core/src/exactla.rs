//! Exact dense and sparse linear algebra over the rationals.
//!
//! Ranks of dense matrices use fraction-free (Bareiss) elimination on an
//! integer scaling of the rows, first in checked `i128` and, on overflow, in
//! `BigInt`. Kernels and linear solves go through a sparse row-echelon form
//! over `Ratio<i64>` with the same overflow fallback to `BigRational`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Writes `p/q` (always with a denominator).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Reads `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{text:?}: zero denominator")));
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect();
        Self::from_rows(data).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major list of entries.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `(row, col, value)` for every nonzero entry.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzeros() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, k, v) in self.nonzeros() {
            for j in 0..other.cols {
                let w = other.get(k, j);
                if !w.is_zero() {
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + v * w;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(x, y)| x + y).collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let entries = self.entries.iter().map(|x| x * s).collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diagonal(blocks: &[&RationalMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (r, c, v) in b.nonzeros() {
                out.set(r0 + r, c0 + c, v.clone());
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Flattens row-major into one vector.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Exact rank by fraction-free elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    let int_rows = integer_rows(m);
    if let Some(small) = to_i128_rows(&int_rows) {
        if let Some(r) = bareiss_rank(small) {
            return r;
        }
    }
    bareiss_rank(int_rows).expect("BigInt elimination cannot overflow")
}

/// Each row scaled by the lcm of its denominators.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

fn to_i128_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|row| row.iter().map(|v| v.to_i128()).collect())
        .collect()
}

trait RingInt: Clone + Zero + One + PartialEq {
    fn mul_sub_div(&self, a: &Self, b: &Self, c: &Self, div: &Self) -> Option<Self>;
}

impl RingInt for i128 {
    /// `(self * a - b * c) / div`, exact.
    fn mul_sub_div(&self, a: &Self, b: &Self, c: &Self, div: &Self) -> Option<Self> {
        let lhs = self.checked_mul(a)?;
        let rhs = b.checked_mul(c)?;
        Some(lhs.checked_sub(rhs)? / div)
    }
}

impl RingInt for BigInt {
    fn mul_sub_div(&self, a: &Self, b: &Self, c: &Self, div: &Self) -> Option<Self> {
        Some((self * a - b * c) / div)
    }
}

fn bareiss_rank<T: RingInt>(mut rows: Vec<Vec<T>>) -> Option<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        let (done, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &done[rank];
        for row in rest {
            let factor = row[col].clone();
            for (c, entry) in pivot_row.iter().enumerate().skip(col + 1) {
                row[c] = row[c].mul_sub_div(&pivot, &factor, entry, &prev)?;
            }
            row[col] = T::zero();
        }
        // Columns left of `col` in the unprocessed rows are already zero.
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Field operations that may overflow.
pub(crate) trait Scalar: Clone + PartialEq + fmt::Debug + Zero {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self>;
    fn div(&self, d: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Scalar for Ratio<i64> {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(&a.checked_mul(b)?)
    }
    fn div(&self, d: &Self) -> Option<Self> {
        self.checked_div(d)
    }
    fn neg(&self) -> Option<Self> {
        Ratio::new_raw(0i64, 1).checked_sub(self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Scalar for BigRational {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self - a * b)
    }
    fn div(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// A sparse row: `(column, value)` pairs with nonzero values, sorted by column.
pub type SparseRow = Vec<(usize, Rational)>;

/// Row-echelon form built one row at a time. Pivot rows are normalized to a
/// leading 1 and reduced against all earlier pivots.
struct Echelon<T: Scalar> {
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<(usize, BTreeMap<usize, T>)>,
}

impl<T: Scalar> Echelon<T> {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivot_of_col: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    /// Reduces `row` against the current pivots. Returns `None` on overflow.
    fn reduce(&self, mut row: BTreeMap<usize, T>) -> Option<BTreeMap<usize, T>> {
        loop {
            let next = row.keys().filter_map(|&c| self.pivot_of_col[c].map(|k| (k, c))).min();
            let Some((k, c)) = next else { return Some(row) };
            let factor = row.remove(&c).expect("present");
            for (&col, val) in &self.rows[k].1 {
                if col == c {
                    continue;
                }
                let cur = row.get(&col).cloned().unwrap_or_else(T::zero);
                let v = cur.sub_mul(&factor, val)?;
                if v.is_zero() {
                    row.remove(&col);
                } else {
                    row.insert(col, v);
                }
            }
        }
    }

    /// Inserts a row; returns whether it increased the rank.
    fn push(&mut self, row: BTreeMap<usize, T>) -> Option<bool> {
        let row = self.reduce(row)?;
        let Some((&lead, lead_val)) = row.iter().next() else {
            return Some(false);
        };
        let lead_val = lead_val.clone();
        let mut normalized = BTreeMap::new();
        for (c, v) in row {
            normalized.insert(c, v.div(&lead_val)?);
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push((lead, normalized));
        Some(true)
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column (with a 1 in that column).
    fn kernel(&self) -> Option<Vec<Vec<T>>> {
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_none()).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x: Vec<T> = vec![T::zero(); self.ncols];
            x[f] = T::from_rational(&Rational::one())?;
            self.back_substitute(&mut x)?;
            basis.push(x);
        }
        Some(basis)
    }

    /// Solves pivot variables given the free ones already placed in `x`;
    /// later pivot rows never involve earlier pivot columns.
    fn back_substitute(&self, x: &mut [T]) -> Option<()> {
        for (lead, row) in self.rows.iter().rev() {
            let mut acc = T::zero();
            for (&c, v) in row {
                if c != *lead && !x[c].is_zero() {
                    acc = acc.sub_mul(v, &x[c])?;
                }
            }
            x[*lead] = acc;
        }
        Some(())
    }
}

fn convert_rows<T: Scalar>(rows: &[SparseRow]) -> Option<Vec<BTreeMap<usize, T>>> {
    rows.iter()
        .map(|row| row.iter().map(|(c, v)| Some((*c, T::from_rational(v)?))).collect())
        .collect()
}

fn sparse_rank_with<T: Scalar>(rows: &[SparseRow], ncols: usize) -> Option<usize> {
    let mut ech = Echelon::<T>::new(ncols);
    for row in convert_rows::<T>(rows)? {
        ech.push(row)?;
    }
    Some(ech.rank())
}

fn sparse_kernel_with<T: Scalar>(rows: &[SparseRow], ncols: usize) -> Option<Vec<Vec<Rational>>> {
    let mut ech = Echelon::<T>::new(ncols);
    for row in convert_rows::<T>(rows)? {
        ech.push(row)?;
    }
    let basis = ech.kernel()?;
    Some(
        basis
            .into_iter()
            .map(|v| v.iter().map(Scalar::to_rational).collect())
            .collect(),
    )
}

/// Rank of a sparse system with `ncols` unknowns.
pub fn sparse_rank(rows: &[SparseRow], ncols: usize) -> usize {
    sparse_rank_with::<Ratio<i64>>(rows, ncols)
        .or_else(|| sparse_rank_with::<BigRational>(rows, ncols))
        .expect("BigRational elimination cannot overflow")
}

/// Basis of `{ v : row · v = 0 for every row }`.
pub fn sparse_kernel(rows: &[SparseRow], ncols: usize) -> Vec<Vec<Rational>> {
    sparse_kernel_with::<Ratio<i64>>(rows, ncols)
        .or_else(|| sparse_kernel_with::<BigRational>(rows, ncols))
        .expect("BigRational elimination cannot overflow")
}

pub fn dense_to_sparse(m: &RationalMatrix) -> Vec<SparseRow> {
    (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect()
}

/// Kernel of a dense matrix as column vectors.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    sparse_kernel(&dense_to_sparse(m), m.cols)
}

fn solve_column<T: Scalar>(a: &[SparseRow], b: &[Rational], ncols: usize) -> Option<Option<Vec<Rational>>> {
    // Augmented column `ncols` carries -b; a pivot there means inconsistency.
    let mut ech = Echelon::<T>::new(ncols + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut r: BTreeMap<usize, T> = BTreeMap::new();
        for (c, v) in row {
            r.insert(*c, T::from_rational(v)?);
        }
        if !rhs.is_zero() {
            r.insert(ncols, T::from_rational(rhs)?.neg()?);
        }
        ech.push(r)?;
    }
    if ech.pivot_of_col[ncols].is_some() {
        return Some(None);
    }
    let mut x: Vec<T> = vec![T::zero(); ncols + 1];
    x[ncols] = T::from_rational(&Rational::one())?;
    ech.back_substitute(&mut x)?;
    Some(Some(x[..ncols].iter().map(Scalar::to_rational).collect()))
}

/// Some `X` with `A X = B`, or `None` when the system is inconsistent.
pub fn solve_consistent(a: &RationalMatrix, b: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows, B has {}",
            a.rows, b.rows
        )));
    }
    let rows = dense_to_sparse(a);
    let mut x = RationalMatrix::zeros(a.cols, b.cols);
    for j in 0..b.cols {
        let rhs: Vec<Rational> = (0..b.rows).map(|i| b.get(i, j).clone()).collect();
        let col = solve_column::<Ratio<i64>>(&rows, &rhs, a.cols)
            .or_else(|| solve_column::<BigRational>(&rows, &rhs, a.cols))
            .expect("BigRational elimination cannot overflow");
        match col {
            None => return Ok(None),
            Some(v) => {
                for (i, val) in v.into_iter().enumerate() {
                    x.set(i, j, val);
                }
            }
        }
    }
    Ok(Some(x))
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let ncols = first.len();
    let rows: Vec<SparseRow> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        })
        .collect();
    sparse_rank(&rows, ncols)
}

/// Largest absolute numerator or denominator; handy in overflow tests.
pub fn max_height(m: &RationalMatrix) -> BigInt {
    m.entries
        .iter()
        .flat_map(|q| [q.numer().abs(), q.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::zero)
}
