//! Dense matrices over the integers and over the Laurent ring.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{self, var_names, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    /// Build from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub type IntMatrix = Matrix<BigInt>;

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            cols,
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| BigInt::from((i == j) as i64))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    /// Integer determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let lm = LaurentMatrix::new(0, self.map(|c| LaurentPoly::constant(0, c.clone())));
        Ok(lm.determinant()?.as_constant().unwrap())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.map(|c| c.to_string());
        write_aligned(f, &cells)
    }
}

fn write_aligned(f: &mut fmt::Formatter<'_>, cells: &Matrix<String>) -> fmt::Result {
    let widths: Vec<usize> = (0..cells.cols)
        .map(|j| (0..cells.rows).map(|i| cells[(i, j)].len()).max().unwrap_or(0))
        .collect();
    for i in 0..cells.rows {
        write!(f, "[")?;
        for j in 0..cells.cols {
            if j > 0 {
                write!(f, "  ")?;
            }
            write!(f, "{:>w$}", cells[(i, j)], w = widths[j])?;
        }
        writeln!(f, "]")?;
    }
    Ok(())
}

/// A matrix of Laurent polynomials sharing a variable count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    nvars: usize,
    entries: Matrix<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(nvars: usize, entries: Matrix<LaurentPoly>) -> Self {
        assert!(entries.data.iter().all(|p| p.nvars() == nvars), "entries share nvars");
        LaurentMatrix { nvars, entries }
    }

    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix { nvars, entries: Matrix::filled(rows, cols, LaurentPoly::zero(nvars)) }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let entries = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPoly::one(nvars)
            } else {
                LaurentPoly::zero(nvars)
            }
        });
        LaurentMatrix { nvars, entries }
    }

    pub fn parse_rows(rows: &[&[&str]], nvars: usize) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(s, nvars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentMatrix::new(nvars, Matrix::from_rows(parsed, cols)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.entries.rows
    }

    pub fn cols(&self) -> usize {
        self.entries.cols
    }

    pub fn entries(&self) -> &Matrix<LaurentPoly> {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        self.entries.row(i)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let entries = self.entries.map(f);
        let nvars = entries.data.first().map_or(self.nvars, |p| p.nvars());
        LaurentMatrix::new(nvars, entries)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols(), other.rows());
        let entries = Matrix::from_fn(self.rows(), other.cols(), |i, j| {
            let mut acc = LaurentPoly::zero(self.nvars);
            for k in 0..self.cols() {
                acc = acc + &self[(i, k)] * &other[(k, j)];
            }
            acc
        });
        LaurentMatrix::new(self.nvars, entries)
    }

    /// Value at every variable equal to 1.
    pub fn eval_ones(&self) -> IntMatrix {
        self.entries.map(|p| p.eval_ones())
    }

    pub fn from_int(nvars: usize, m: &IntMatrix) -> Self {
        LaurentMatrix::new(nvars, m.map(|c| LaurentPoly::constant(nvars, c.clone())))
    }

    /// Integer matrix, if every entry is constant.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut out = IntMatrix::zeros(self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out[(i, j)] = self[(i, j)].as_constant()?;
            }
        }
        Some(out)
    }

    pub fn bar(&self) -> Self {
        self.map(|p| p.bar())
    }

    pub fn transpose(&self) -> Self {
        LaurentMatrix::new(self.nvars, self.entries.transpose())
    }

    /// Exact determinant. Each row is first multiplied by a monomial so that
    /// all exponents are nonnegative; fraction-free (Bareiss) elimination
    /// then runs in the polynomial ring and the row monomials are divided
    /// back out at the end.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        let n = self.rows();
        if n != self.cols() {
            return Err(Error::NotSquare(n, self.cols()));
        }
        let nv = self.nvars;
        let mut shift = laurent::Monomial::one(nv);
        let mut m = self.entries.clone();
        for i in 0..n {
            let mut mins = vec![i64::MAX; nv];
            let mut any = false;
            for j in 0..n {
                if !m[(i, j)].is_zero() {
                    any = true;
                    for (lo, e) in mins.iter_mut().zip(&m[(i, j)].min_exponents().0) {
                        *lo = (*lo).min(*e);
                    }
                }
            }
            if !any {
                return Ok(LaurentPoly::zero(nv));
            }
            let mins = laurent::Monomial(mins);
            shift = shift.mul(&mins);
            let inv = mins.inv();
            for j in 0..n {
                m[(i, j)] = m[(i, j)].monomial_mul(&inv);
            }
        }
        let mut sign = 1;
        let mut prev = LaurentPoly::one(nv);
        for k in 0..n {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(LaurentPoly::zero(nv)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(k, k)] * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.div_exact(&prev).ok_or_else(|| {
                        Error::Internal("Bareiss step was not an exact division".into())
                    })?;
                }
                m[(i, k)] = LaurentPoly::zero(nv);
            }
            prev = m[(k, k)].clone();
        }
        let det = if n == 0 { LaurentPoly::one(nv) } else { m[(n - 1, n - 1)].clone() };
        let det = det.monomial_mul(&shift);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Unit-normalized gcd of all `k x k` minors; `0` when they all vanish.
    pub fn minors_gcd(&self, k: usize) -> Result<LaurentPoly> {
        let (r, c) = (self.rows(), self.cols());
        if k > r.min(c) {
            return Err(Error::MinorSize { k, rows: r, cols: c });
        }
        let mut g = LaurentPoly::zero(self.nvars);
        for rs in combinations(r, k) {
            for cs in combinations(c, k) {
                let sub = LaurentMatrix::new(self.nvars, self.entries.select(&rs, &cs));
                let d = sub.determinant()?;
                g = laurent::gcd(&g, &d);
                if g.is_one() {
                    return Ok(g);
                }
            }
        }
        Ok(g.unit_normalize())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        struct W<'a>(&'a Matrix<String>);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_aligned(f, self.0)
            }
        }
        W(&self.entries.map(|p| p.to_string_with(names))).to_string()
    }
}

impl Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, ij: (usize, usize)) -> &LaurentPoly {
        &self.entries[ij]
    }
}

impl IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, ij: (usize, usize)) -> &mut LaurentPoly {
        &mut self.entries[ij]
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&var_names(self.nvars)))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
