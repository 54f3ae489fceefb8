//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers (or rationals when
//! a solve needs them). Smith normal form is the workhorse: it yields saturated
//! kernels and cokernels, which in turn give the class group of a fan.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    fn index(&self, (i, j): (usize, usize)) -> &Int {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows<T: Clone + Into<Int>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_width(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so that
    /// an empty row list still has a well-defined shape.
    pub fn from_rows_with_width<T: Clone + Into<Int>>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<T: Clone + Into<Int>>(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone().into());
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

    pub fn get(&self, i: usize, j: usize) -> Option<&Int> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, value: Int) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self[(i, j)].clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self[(i, j)].clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += s;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub fn rank(&self) -> usize {
        bareiss(self.to_rows(), self.cols).0
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Int::one();
        }
        let (rank, det) = bareiss(self.to_rows(), self.cols);
        if rank < self.rows {
            Int::zero()
        } else {
            det
        }
    }
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square
/// full-rank input, the determinant.
fn bareiss(mut a: Vec<Vec<Int>>, cols: usize) -> (usize, Int) {
    let rows = a.len();
    let mut prev = Int::one();
    let mut sign_flip = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign_flip = !sign_flip;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if sign_flip { -prev } else { prev };
    (r, det)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rat::from_integer(x.clone()))
        .fold(Rat::zero(), |acc, t| acc + t)
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn primitive_i64(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// Clears denominators of a rational vector and returns the primitive
/// integer vector on the same ray. Zero maps to zero.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints).unwrap_or(ints)
}

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// `left * m * right == diag(d_1, d_2, ...)` with `d_i | d_{i+1}`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<Int>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the same shape as the decomposed matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.nrows(), self.right.ncols());
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

fn min_abs_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            // Clear column t below and row t to the right of the pivot.
            let mut residue = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                residue |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                residue |= !a[(t, j)].is_zero();
            }
            if residue {
                // Move the smallest remainder into the pivot slot and go again.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    left.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    right.swap_cols(t, best.1);
                }
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let pivot = a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { left, diag, right }
}

/// Row-style Hermite normal form: echelon rows, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, c)] / &a[(r, c)]);
                a.add_row_multiple(i, r, &q);
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    let kept: Vec<Vec<Int>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows_with_width(&kept, cols)
}

/// Columns form a basis of the saturated integer kernel `{x in Z^n : m x = 0}`,
/// brought to Hermite form so the basis is canonical.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols: Vec<usize> = (rank..m.cols).collect();
    let raw = snf.right.select_columns(&cols);
    if cols.is_empty() {
        return IntMatrix::zeros(m.cols, 0);
    }
    hermite_normal_form(&raw.transpose()).transpose()
}

/// `Z^rows / im(m)`, split into a free part and torsion.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Int>,
    /// `free_rank x rows`; maps the ambient lattice onto the free part.
    pub projection: IntMatrix,
    /// One row per torsion factor; residues are taken modulo that factor.
    pub torsion_projection: IntMatrix,
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let rows = m.rows;
    let free: Vec<Vec<Int>> = (rank..rows).map(|i| snf.left.row(i).to_vec()).collect();
    let projection = hermite_normal_form(&IntMatrix::from_rows_with_width(&free, rows));
    let mut torsion = Vec::new();
    let mut tors_rows = Vec::new();
    for (i, d) in snf.diag.iter().enumerate().take(rank) {
        if d > &Int::one() {
            torsion.push(d.clone());
            tors_rows.push(snf.left.row(i).iter().map(|x| x.mod_floor(d)).collect());
        }
    }
    Cokernel {
        free_rank: rows - rank,
        torsion,
        projection,
        torsion_projection: IntMatrix::from_rows_with_width(&tors_rows, rows),
    }
}

/// Reduced row echelon form over the rationals, zero rows dropped.
pub fn rref(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot).take(cols) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    a
}

/// Solves `sum_j x_j columns[j] = target` over the rationals when the columns
/// are linearly independent. Returns `None` if the target is outside their span.
pub fn solve_independent(columns: &[Vec<Int>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let k = columns.len();
    // Augmented system with one row per coordinate.
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut r: Vec<Rat> = columns
                .iter()
                .map(|c| Rat::from_integer(c[i].clone()))
                .collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let red = rref(&rows, k + 1);
    let mut x = vec![Rat::zero(); k];
    for row in &red {
        let lead = row.iter().position(|v| !v.is_zero())?;
        if lead == k {
            return None;
        }
        x[lead] = row[k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_normal_form(&IntMatrix::identity(2)).diag,
            ints(&[1, 1])
        );
        assert_eq!(
            smith_normal_form(&m(&[&[2, 0], &[0, 3]])).diag,
            ints(&[1, 6])
        );
        assert_eq!(
            smith_normal_form(&m(&[&[0, 0], &[0, 0]])).diag,
            ints(&[0, 0])
        );
    }

    #[test]
    fn snf_reconstructs() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diagonal_matrix());
        assert_eq!(s.diag, ints(&[2, 6, 12]));
        assert_eq!(s.left.determinant().abs(), Int::one());
        assert_eq!(s.right.determinant().abs(), Int::one());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[1, -1]]));
        assert_eq!(k.to_columns(), vec![ints(&[1, 1])]);
        // Rays of P^2 as the columns of a 2x3 map.
        let k = kernel_basis(&m(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(k.to_columns(), vec![ints(&[1, 1, 1])]);
        let k = kernel_basis(&m(&[&[2, 1], &[1, 1]]));
        assert_eq!(k.ncols(), 0);
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&m(&[&[1], &[-1]]));
        assert_eq!(c.free_rank, 1);
        assert!(c.torsion.is_empty());
        assert_eq!(c.projection.to_rows(), vec![ints(&[1, 1])]);

        let p1p1 = m(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let c = cokernel(&p1p1);
        assert_eq!(c.free_rank, 2);
        assert_eq!(
            c.projection.to_columns(),
            vec![ints(&[1, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[0, 1])]
        );

        let c = cokernel(&m(&[&[2, 1], &[1, 1]]));
        assert_eq!(c.free_rank, 0);
        assert!(c.torsion.is_empty());

        let c = cokernel(&m(&[&[2, 0], &[0, 3], &[0, 0]]));
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.torsion, ints(&[6]));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&ints(&[2, 4])).unwrap(), ints(&[1, 2]));
        assert_eq!(primitive(&ints(&[-3, 0, 6])).unwrap(), ints(&[-1, 0, 2]));
        assert_eq!(primitive(&ints(&[1, 1])).unwrap(), ints(&[1, 1]));
        assert!(matches!(primitive(&ints(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = m(&[&[0, 0, 1, 1], &[1, 1, 1, 0]]);
        let b = m(&[&[1, 1, 2, 1], &[-1, -1, -1, 0]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(
            hermite_normal_form(&a).to_rows(),
            vec![ints(&[1, 1, 0, -1]), ints(&[0, 0, 1, 1])]
        );
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), Int::from(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), Int::from(-1));
    }
}
